/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <hkernel/recognizer.hh>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>

using std::optional;
using std::size_t;
using std::string;
using std::uint64_t;
using std::vector;

namespace hkernel
{
    using std::to_string;

    namespace
    {
        using Bits = vector<uint64_t>;

        auto test(const Bits & b, int v) -> bool { return (b[v >> 6] >> (v & 63)) & 1; }
        auto set(Bits & b, int v) -> void { b[v >> 6] |= uint64_t{ 1 } << (v & 63); }
        auto any(const Bits & b) -> bool { return std::any_of(b.begin(), b.end(), [] (uint64_t w) { return w != 0; }); }

        template <typename F_>
        auto for_each_bit(const Bits & b, F_ && f) -> void
        {
            for (size_t i = 0 ; i < b.size() ; ++i)
                for (uint64_t w = b[i] ; w ; w &= w - 1)
                    f(int(i * 64) + std::countr_zero(w));
        }

        /// Row-per-vertex bit matrix with word-level access.
        struct Rows
        {
            int n, words;
            vector<uint64_t> bits;

            auto row(int v) const -> const uint64_t * { return bits.data() + size_t(v) * words; }
            auto row(int v) -> uint64_t * { return bits.data() + size_t(v) * words; }
            auto has(int u, int v) const -> bool { return (row(u)[v >> 6] >> (v & 63)) & 1; }

            /// Union of the rows of every vertex in from, restricted to through.
            auto image(const Bits & from, const Bits * through) const -> Bits
            {
                Bits result(words, 0);
                for_each_bit(from, [&] (int v) {
                    if (through && ! test(*through, v))
                        return;
                    auto r = row(v);
                    for (int i = 0 ; i < words ; ++i)
                        result[i] |= r[i];
                });
                return result;
            }
        };

        auto rows_of(const Digraph & d) -> Rows
        {
            Rows r{ d.size(), d.words_per_row(), vector<uint64_t>(size_t(d.size()) * d.words_per_row()) };
            for (int v = 0 ; v < d.size() ; ++v)
                std::copy_n(d.out_row(v).data(), r.words, r.row(v));
            return r;
        }

        auto complement_rows(const Pattern & h) -> Rows
        {
            auto r = rows_of(h.graph);
            int n = h.size();
            for (int v = 0 ; v < n ; ++v) {
                auto row = r.row(v);
                for (int i = 0 ; i < r.words ; ++i) {
                    row[i] = ~row[i];
                    int hi = n - i * 64;
                    if (hi < 64)
                        row[i] &= (uint64_t{ 1 } << hi) - 1;
                }
                row[v >> 6] &= ~(uint64_t{ 1 } << (v & 63));
            }
            return r;
        }

        struct Degrees
        {
            vector<int> out, in;
        };

        auto complement_degrees(const Rows & g) -> Degrees
        {
            Degrees d{ vector<int>(g.n, 0), vector<int>(g.n, 0) };
            for (int v = 0 ; v < g.n ; ++v) {
                auto row = g.row(v);
                for (int i = 0 ; i < g.words ; ++i)
                    for (uint64_t w = row[i] ; w ; w &= w - 1) {
                        ++d.out[v];
                        ++d.in[i * 64 + std::countr_zero(w)];
                    }
            }
            return d;
        }

        auto all_looped(const Pattern & h) -> bool
        {
            for (int v = 0 ; v < h.size() ; ++v)
                if (! h.graph.has_loop(v))
                    return false;
            return true;
        }

        auto is_partition(int n, const VertexSet & x, const VertexSet & y) -> bool
        {
            vector<int> seen(n, 0);
            for (auto part : { &x, &y })
                for (auto v : *part) {
                    if (v < 0 || v >= n || seen[v])
                        return false;
                    seen[v] = 1;
                }
            return int(x.size() + y.size()) == n;
        }

        auto complete_reflexive(const Pattern & h, const VertexSet & part) -> bool
        {
            for (auto a : part)
                for (auto b : part)
                    if (! h.has_arc(a, b))
                        return false;
            return true;
        }

        /// Walks back through BFS levels, picking the smallest predecessor
        /// each time. levels[0] is the start.
        auto trace_back(const Rows & g, const vector<Bits> & levels, int end, const Bits * through) -> VertexSet
        {
            VertexSet path{ end };
            int current = end;
            for (int l = int(levels.size()) - 2 ; l >= 0 ; --l) {
                int pred = -1;
                for_each_bit(levels[l], [&] (int u) {
                    if (pred == -1 && (! through || test(*through, u)) && g.has(u, current))
                        pred = u;
                });
                path.push_back(pred);
                current = pred;
            }
            std::reverse(path.begin(), path.end());
            return path;
        }
    }

    auto bicomplete_split(const Pattern & h) -> optional<BicompleteSplit>
    {
        if (! all_looped(h))
            return std::nullopt;

        auto degrees = complement_degrees(complement_rows(h));
        BicompleteSplit result;
        for (int v = 0 ; v < h.size() ; ++v) {
            if (degrees.out[v] > 0 && degrees.in[v] > 0)
                return std::nullopt;
            if (degrees.in[v] > 0)
                result.y.push_back(v);
            else
                result.x.push_back(v);
        }
        return result;
    }

    auto two_k1_split(const Pattern & h) -> optional<TwoK1Split>
    {
        int n = h.size();
        if (n < 2 || ! all_looped(h))
            return std::nullopt;

        vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&] (int v) {
            while (parent[v] != v)
                v = parent[v] = parent[parent[v]];
            return v;
        };
        for (int u = 0 ; u < n ; ++u) {
            auto row = h.graph.out_row(u);
            for (size_t i = 0 ; i < row.size() ; ++i)
                for (uint64_t w = row[i] ; w ; w &= w - 1) {
                    int a = find(u), b = find(int(i * 64) + std::countr_zero(w));
                    if (a != b)
                        parent[std::max(a, b)] = std::min(a, b);
                }
        }

        TwoK1Split result;
        int second_root = -1;
        for (int v = 0 ; v < n ; ++v) {
            int r = find(v);
            if (r == find(0))
                result.x.push_back(v);
            else if (second_root == -1 || r == second_root) {
                second_root = r;
                result.y.push_back(v);
            }
            else
                return std::nullopt;
        }
        if (result.y.empty())
            return std::nullopt;

        // arcs only inside components, so completeness is an arc count
        long expected = long(result.x.size()) * long(result.x.size()) + long(result.y.size()) * long(result.y.size());
        if (h.graph.arc_count() != expected)
            return std::nullopt;
        return result;
    }

    auto odd_complement_cycle(const Pattern & h) -> optional<OddComplementCycle>
    {
        auto g = complement_rows(h);
        int n = h.size();

        optional<OddComplementCycle> best;
        for (int s = 0 ; s < n ; ++s) {
            if (best && best->cycle.size() == 3)
                break;

            vector<Bits> levels{ Bits(g.words, 0) };
            set(levels[0], s);
            Bits visited[2] = { levels[0], Bits(g.words, 0) };

            for (int length = 1 ; ; ++length) {
                if (best && length >= int(best->cycle.size()))
                    break;
                auto next = g.image(levels.back(), nullptr);
                auto & seen = visited[length & 1];
                for (int i = 0 ; i < g.words ; ++i)
                    next[i] &= ~seen[i];
                if (! any(next))
                    break;
                for (int i = 0 ; i < g.words ; ++i)
                    seen[i] |= next[i];
                levels.push_back(std::move(next));

                if ((length & 1) && test(levels.back(), s)) {
                    auto path = trace_back(g, levels, s, nullptr);
                    path.pop_back();
                    best = OddComplementCycle{ std::move(path) };
                    break;
                }
            }
        }
        return best;
    }

    auto missing_colour_walk(const Pattern & h, long max_length) -> optional<MissingColourWalk>
    {
        int n = h.size();
        if (max_length <= 0)
            max_length = long(n) * n;

        auto rows = rows_of(h.graph);
        Bits missing_some(rows.words, 0);
        vector<int> first_missing(n, -1);
        for (int v = 0 ; v < n ; ++v)
            for (int c = 0 ; c < n ; ++c)
                if (! h.has_arc(v, c)) {
                    set(missing_some, v);
                    first_missing[v] = c;
                    break;
                }

        for (int start = 0 ; start < n ; ++start) {
            if (! test(missing_some, start))
                continue;

            Bits closing(rows.words, 0);
            for (int x = 0 ; x < n ; ++x)
                if (! h.has_arc(x, start))
                    set(closing, x);

            vector<Bits> levels{ Bits(rows.words, 0) };
            set(levels[0], start);
            Bits visited(rows.words, 0);

            for (long length = 1 ; length <= max_length ; ++length) {
                auto next = rows.image(levels.back(), &missing_some);
                for (int i = 0 ; i < rows.words ; ++i)
                    next[i] &= ~visited[i];
                if (! any(next))
                    break;
                for (int i = 0 ; i < rows.words ; ++i)
                    visited[i] |= next[i];
                levels.push_back(next);

                int end = -1;
                for (int i = 0 ; i < rows.words && end == -1 ; ++i)
                    if (auto w = next[i] & closing[i])
                        end = i * 64 + std::countr_zero(w);
                if (end != -1) {
                    MissingColourWalk result;
                    result.walk = trace_back(rows, levels, end, &missing_some);
                    for (size_t j = 0 ; j + 1 < result.walk.size() ; ++j)
                        result.missing.push_back(first_missing[result.walk[j]]);
                    return result;
                }
            }
        }
        return std::nullopt;
    }

    auto recognize(const Pattern & h) -> Verdict
    {
        Verdict verdict;
        if (auto split = bicomplete_split(h)) {
            verdict.certificate = *split;
            return verdict;
        }
        if (auto split = two_k1_split(h)) {
            verdict.certificate = *split;
            return verdict;
        }

        for (int v = 0 ; v < h.size() ; ++v)
            if (! h.graph.has_loop(v))
                verdict.refutations.push_back(UnloopedVertex{ v });
        if (auto cycle = odd_complement_cycle(h))
            verdict.refutations.push_back(*cycle);
        if (auto walk = missing_colour_walk(h))
            verdict.refutations.push_back(*walk);

        auto degrees = complement_degrees(complement_rows(h));
        for (int v = 0 ; v < h.size() ; ++v)
            if (degrees.out[v] > 0 && degrees.in[v] > 0) {
                verdict.refutations.push_back(StructuralFailure{ v });
                break;
            }
        return verdict;
    }

    auto validate(const Pattern & h, const Certificate & certificate) -> bool
    {
        if (auto b = std::get_if<BicompleteSplit>(&certificate)) {
            if (! is_partition(h.size(), b->x, b->y))
                return false;
            if (! complete_reflexive(h, b->x) || ! complete_reflexive(h, b->y))
                return false;
            for (auto y : b->y)
                for (auto x : b->x)
                    if (! h.has_arc(y, x))
                        return false;
            return true;
        }

        auto & t = std::get<TwoK1Split>(certificate);
        if (t.x.empty() || t.y.empty() || ! is_partition(h.size(), t.x, t.y))
            return false;
        if (! complete_reflexive(h, t.x) || ! complete_reflexive(h, t.y))
            return false;
        for (auto x : t.x)
            for (auto y : t.y)
                if (h.has_arc(x, y) || h.has_arc(y, x))
                    return false;
        return true;
    }

    auto validate(const Pattern & h, const Refutation & refutation) -> bool
    {
        int n = h.size();
        auto in_range = [&] (int v) { return v >= 0 && v < n; };

        return std::visit([&] (const auto & r) -> bool {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, UnloopedVertex>) {
                return in_range(r.vertex) && ! h.graph.has_loop(r.vertex);
            }
            else if constexpr (std::is_same_v<T, OddComplementCycle>) {
                auto & c = r.cycle;
                if (c.size() < 3 || c.size() % 2 == 0 || ! std::all_of(c.begin(), c.end(), in_range))
                    return false;
                auto sorted = c;
                std::sort(sorted.begin(), sorted.end());
                if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                    return false;
                for (size_t i = 0 ; i < c.size() ; ++i)
                    if (h.has_arc(c[i], c[(i + 1) % c.size()]))
                        return false;
                return true;
            }
            else if constexpr (std::is_same_v<T, MissingColourWalk>) {
                auto & w = r.walk;
                if (w.size() < 2 || r.missing.size() + 1 != w.size())
                    return false;
                if (! std::all_of(w.begin(), w.end(), in_range) || ! std::all_of(r.missing.begin(), r.missing.end(), in_range))
                    return false;
                for (size_t j = 0 ; j + 1 < w.size() ; ++j)
                    if (! h.has_arc(w[j], w[j + 1]) || h.has_arc(w[j], r.missing[j]))
                        return false;
                return ! h.has_arc(w.back(), w.front());
            }
            else {
                if (! in_range(r.vertex) || two_k1_split(h))
                    return false;
                bool out = false, in = false;
                for (int v = 0 ; v < n ; ++v)
                    if (v != r.vertex) {
                        out = out || ! h.has_arc(r.vertex, v);
                        in = in || ! h.has_arc(v, r.vertex);
                    }
                return out && in;
            }
        }, refutation);
    }

    auto to_string(const Certificate & certificate) -> string
    {
        if (auto b = std::get_if<BicompleteSplit>(&certificate))
            return "bicomplete-split X=" + format_set(b->x) + " Y=" + format_set(b->y);
        auto & t = std::get<TwoK1Split>(certificate);
        return "two-k1-split X=" + format_set(t.x) + " Y=" + format_set(t.y);
    }

    auto to_string(const Refutation & refutation) -> string
    {
        auto join = [] (const VertexSet & vs) {
            string s;
            for (auto v : vs)
                s += " " + std::to_string(v);
            return s;
        };

        return std::visit([&] (const auto & r) -> string {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, UnloopedVertex>)
                return "unlooped-vertex " + std::to_string(r.vertex);
            else if constexpr (std::is_same_v<T, OddComplementCycle>)
                return "odd-complement-cycle" + join(r.cycle);
            else if constexpr (std::is_same_v<T, MissingColourWalk>)
                return "missing-colour-walk" + join(r.walk) + " missing" + join(r.missing);
            else
                return "structural-failure " + std::to_string(r.vertex);
        }, refutation);
    }
}
