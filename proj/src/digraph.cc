/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <hkernel/digraph.hh>

#include <algorithm>
#include <bit>
#include <numeric>

using std::size_t;
using std::span;
using std::string;
using std::uint64_t;
using std::vector;

namespace hkernel
{
    using std::to_string;

    Digraph::Digraph(int n) :
        _n(n),
        _words((n + 63) / 64)
    {
        if (n < 1)
            throw InvalidDigraph{ "a digraph needs at least one vertex, got " + to_string(n) };
        _bits.assign(size_t(_n) * _words, 0);
    }

    auto Digraph::add_arc(int from, int to) -> bool
    {
        if (from < 0 || from >= _n || to < 0 || to >= _n)
            throw InvalidDigraph{ "arc (" + to_string(from) + "," + to_string(to) + ") out of range for "
                + to_string(_n) + " vertices" };
        auto & word = _bits[size_t(from) * _words + (to >> 6)];
        auto bit = uint64_t{ 1 } << (to & 63);
        if (word & bit)
            return false;
        word |= bit;
        return true;
    }

    auto Digraph::remove_arc(int from, int to) -> bool
    {
        auto & word = _bits[size_t(from) * _words + (to >> 6)];
        auto bit = uint64_t{ 1 } << (to & 63);
        if (! (word & bit))
            return false;
        word &= ~bit;
        return true;
    }

    auto Digraph::arcs() const -> vector<Arc>
    {
        vector<Arc> result;
        for (int u = 0 ; u < _n ; ++u)
            for (int v = 0 ; v < _n ; ++v)
                if (has_arc(u, v))
                    result.push_back({ u, v });
        return result;
    }

    auto Digraph::arc_count() const -> int
    {
        int result = 0;
        for (auto w : _bits)
            result += std::popcount(w);
        return result;
    }

    auto Digraph::out_degree(int v) const -> int
    {
        int result = 0;
        for (auto w : out_row(v))
            result += std::popcount(w);
        return result;
    }

    ColouredInstance::ColouredInstance(int n, int colour_count) :
        _d(n),
        _colours(colour_count),
        _colour(size_t(n) * n, -1)
    {
        if (n > max_instance_vertices)
            throw InvalidDigraph{ "instance has " + to_string(n) + " vertices, limit is " + to_string(max_instance_vertices) };
        if (colour_count < 1)
            throw InvalidDigraph{ "colour count must be positive, got " + to_string(colour_count) };
    }

    auto ColouredInstance::add_arc(int from, int to, int colour) -> void
    {
        if (colour < 0 || colour >= _colours)
            throw InvalidDigraph{ "colour " + to_string(colour) + " out of range for " + to_string(_colours) + " colours" };
        if (! _d.add_arc(from, to))
            throw InvalidDigraph{ "duplicate arc (" + to_string(from) + "," + to_string(to) + ")" };
        _colour[size_t(from) * _d.size() + to] = colour;
    }

    VertexPartition::VertexPartition(vector<VertexSet> parts, int n) :
        _parts(std::move(parts)),
        _n(n)
    {
        vector<bool> seen(n, false);
        int covered = 0;
        for (auto & part : _parts) {
            if (part.empty())
                throw InvalidDigraph{ "partition has an empty part" };
            for (auto v : part) {
                if (v < 0 || v >= n)
                    throw InvalidDigraph{ "partition vertex " + to_string(v) + " out of range" };
                if (seen[v])
                    throw InvalidDigraph{ "partition vertex " + to_string(v) + " appears twice" };
                seen[v] = true;
                ++covered;
            }
        }
        if (covered != n)
            throw InvalidDigraph{ "partition covers " + to_string(covered) + " of " + to_string(n) + " vertices" };
    }

    auto VertexPartition::part_of(int v) const -> int
    {
        for (size_t i = 0 ; i < _parts.size() ; ++i)
            if (std::find(_parts[i].begin(), _parts[i].end(), v) != _parts[i].end())
                return int(i);
        return -1;
    }

    auto to_string(PartitionInvalid::Condition c) -> string
    {
        switch (c) {
            case PartitionInvalid::Condition::IncompletePart:   return "incomplete-part";
            case PartitionInvalid::Condition::UnloopedPart:     return "unlooped-part";
            case PartitionInvalid::Condition::PartialCrossArcs: return "partial-cross-arcs";
        }
        return "unknown";
    }

    PartitionInvalid::PartitionInvalid(Condition c, Arc w) :
        std::runtime_error("partition invalid: " + hkernel::to_string(c) + " at pair (" + std::to_string(w.from) + ","
                + std::to_string(w.to) + ")"),
        condition(c),
        witness(w)
    {
    }

    auto complement(const Pattern & h) -> Digraph
    {
        Digraph result(h.size());
        for (int u = 0 ; u < h.size() ; ++u)
            for (int v = 0 ; v < h.size() ; ++v)
                if (u != v && ! h.has_arc(u, v))
                    result.add_arc(u, v);
        return result;
    }

    auto contract(const Pattern & h, const VertexPartition & p) -> Pattern
    {
        if (p.vertex_count() != h.size())
            throw InvalidDigraph{ "partition does not match pattern order" };

        using C = PartitionInvalid::Condition;
        for (auto & part : p.parts())
            for (auto x : part)
                for (auto y : part) {
                    if (x == y && ! h.has_arc(x, x))
                        throw PartitionInvalid{ C::UnloopedPart, { x, x } };
                    if (x != y && ! h.has_arc(x, y))
                        throw PartitionInvalid{ C::IncompletePart, { x, y } };
                }

        auto & parts = p.parts();
        Pattern result{ Digraph(int(parts.size())) };
        for (size_t i = 0 ; i < parts.size() ; ++i)
            for (size_t j = 0 ; j < parts.size() ; ++j) {
                if (i == j) {
                    result.graph.add_arc(int(i), int(i));
                    continue;
                }
                bool any = false, all = true;
                Arc missing{ -1, -1 };
                for (auto x : parts[i])
                    for (auto y : parts[j]) {
                        if (h.has_arc(x, y))
                            any = true;
                        else if (all) {
                            all = false;
                            missing = { x, y };
                        }
                    }
                if (any && ! all)
                    throw PartitionInvalid{ C::PartialCrossArcs, missing };
                if (any)
                    result.graph.add_arc(int(i), int(j));
            }
        return result;
    }

    auto block_partition(span<const int> sizes) -> VertexPartition
    {
        vector<VertexSet> parts;
        int next = 0;
        for (auto s : sizes) {
            VertexSet part(std::max(s, 0));
            std::iota(part.begin(), part.end(), next);
            next += std::max(s, 0);
            parts.push_back(std::move(part));
        }
        return VertexPartition{ std::move(parts), next };
    }

    auto expand(const Pattern & h, span<const int> sizes) -> Pattern
    {
        if (int(sizes.size()) != h.size())
            throw InvalidDigraph{ "expand needs " + to_string(h.size()) + " block sizes, got " + to_string(sizes.size()) };
        for (auto s : sizes)
            if (s < 1)
                throw InvalidDigraph{ "block size must be at least 1, got " + to_string(s) };

        vector<int> start(sizes.size() + 1, 0);
        for (size_t i = 0 ; i < sizes.size() ; ++i)
            start[i + 1] = start[i] + sizes[i];

        Pattern result{ Digraph(start.back()) };
        for (int i = 0 ; i < h.size() ; ++i)
            for (int j = 0 ; j < h.size() ; ++j)
                if (i == j || h.has_arc(i, j))
                    for (int x = start[i] ; x < start[i + 1] ; ++x)
                        for (int y = start[j] ; y < start[j + 1] ; ++y)
                            result.graph.add_arc(x, y);
        return result;
    }

    auto induced_subgraph(const Digraph & d, span<const int> vertices) -> Digraph
    {
        Digraph result(int(vertices.size()));
        for (size_t i = 0 ; i < vertices.size() ; ++i)
            for (size_t j = 0 ; j < vertices.size() ; ++j)
                if (d.has_arc(vertices[i], vertices[j]))
                    result.add_arc(int(i), int(j));
        return result;
    }

    auto relabel(const Digraph & d, span<const int> permutation) -> Digraph
    {
        Digraph result(d.size());
        for (auto [u, v] : d.arcs())
            result.add_arc(permutation[u], permutation[v]);
        return result;
    }

    auto to_mask(const Digraph & d) -> uint64_t
    {
        if (d.size() > 8)
            throw InvalidDigraph{ "mask form needs at most 8 vertices" };
        uint64_t mask = 0;
        for (auto [u, v] : d.arcs())
            mask |= uint64_t{ 1 } << (u * d.size() + v);
        return mask;
    }

    auto from_mask(int n, uint64_t mask) -> Digraph
    {
        Digraph result(n);
        for (int b = 0 ; b < n * n ; ++b)
            if ((mask >> b) & 1)
                result.add_arc(b / n, b % n);
        return result;
    }

    namespace
    {
        auto permuted_mask(int n, uint64_t mask, const vector<int> & perm) -> uint64_t
        {
            uint64_t result = 0;
            while (mask) {
                int b = std::countr_zero(mask);
                mask &= mask - 1;
                result |= uint64_t{ 1 } << (perm[b / n] * n + perm[b % n]);
            }
            return result;
        }

        auto check_limit(const Digraph & d, int limit) -> void
        {
            if (d.size() > limit || d.size() > 8)
                throw InvalidDigraph{ "exhaustive relabelling refused for " + to_string(d.size())
                    + " vertices (limit " + to_string(std::min(limit, 8)) + ")" };
        }
    }

    auto canonicalize(const Digraph & d, int limit) -> CanonicalForm
    {
        check_limit(d, limit);
        int n = d.size();
        uint64_t mask = to_mask(d);

        vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        CanonicalForm best{ n, mask, perm };
        do {
            auto m = permuted_mask(n, mask, perm);
            if (m < best.mask) {
                best.mask = m;
                best.permutation = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }

    auto automorphisms(const Digraph & d, int limit) -> vector<vector<int>>
    {
        check_limit(d, limit);
        int n = d.size();
        uint64_t mask = to_mask(d);

        vector<vector<int>> result;
        vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            if (permuted_mask(n, mask, perm) == mask)
                result.push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return result;
    }

    auto complete_looped(int n) -> Pattern
    {
        Pattern result{ Digraph(n) };
        for (int u = 0 ; u < n ; ++u)
            for (int v = 0 ; v < n ; ++v)
                result.graph.add_arc(u, v);
        return result;
    }

    auto format_set(span<const int> vertices) -> string
    {
        string result = "{";
        for (size_t i = 0 ; i < vertices.size() ; ++i) {
            if (i != 0)
                result += ",";
            result += to_string(vertices[i]);
        }
        return result + "}";
    }
}
