/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <hkernel/hwalk.hh>

#include <algorithm>
#include <array>
#include <bit>
#include <deque>
#include <stdexcept>
#include <string>

using std::optional;
using std::size_t;
using std::span;
using std::uint64_t;
using std::vector;

namespace hkernel
{
    using std::to_string;

    ColourCountMismatch::ColourCountMismatch(int instance_colours, int pattern_order) :
        std::invalid_argument("instance is coloured over " + std::to_string(instance_colours)
                + " colours but the pattern has " + std::to_string(pattern_order) + " vertices")
    {
    }

    namespace
    {
        auto check_colours(const ColouredInstance & inst, const Pattern & h) -> void
        {
            if (inst.colour_count() != h.size())
                throw ColourCountMismatch{ inst.colour_count(), h.size() };
        }

        // Start states of u are the heads of its out-arcs, tagged with the arc colour.
        auto start_states(const ColouredInstance & inst, int u) -> vector<int>
        {
            vector<int> result;
            for (int w = 0 ; w < inst.size() ; ++w)
                if (inst.digraph().has_arc(u, w))
                    result.push_back(state_index({ w, inst.colour(u, w) }, inst.colour_count()));
            return result;
        }

        auto reach_row_by_search(const Digraph & product, const ColouredInstance & inst, int u) -> uint64_t
        {
            int k = inst.colour_count();
            vector<bool> seen(product.size(), false);
            std::deque<int> queue;
            for (auto s : start_states(inst, u)) {
                seen[s] = true;
                queue.push_back(s);
            }

            uint64_t row = 0;
            while (! queue.empty()) {
                int s = queue.front();
                queue.pop_front();
                row |= uint64_t{ 1 } << (s / k);
                for (int t = 0 ; t < product.size() ; ++t)
                    if (! seen[t] && product.has_arc(s, t)) {
                        seen[t] = true;
                        queue.push_back(t);
                    }
            }
            return row;
        }
    }

    auto build_product(const ColouredInstance & inst, const Pattern & h) -> Digraph
    {
        check_colours(inst, h);
        int k = h.size();
        Digraph product(inst.size() * k);
        for (auto [v, w] : inst.digraph().arcs()) {
            int next = inst.colour(v, w);
            for (int c = 0 ; c < k ; ++c)
                if (h.has_arc(c, next))
                    product.add_arc(state_index({ v, c }, k), state_index({ w, next }, k));
        }
        return product;
    }

    auto h_reach_reference(const ColouredInstance & inst, const Pattern & h) -> ReachRelation
    {
        auto product = build_product(inst, h);
        ReachRelation result(inst.size());
        for (int u = 0 ; u < inst.size() ; ++u)
            result.row(u) = reach_row_by_search(product, inst, u);
        return result;
    }

    auto pattern_rows(const Pattern & h) -> vector<uint64_t>
    {
        if (h.size() > 64)
            throw std::invalid_argument{ "pattern rows need at most 64 pattern vertices" };
        vector<uint64_t> rows(h.size(), 0);
        for (int c = 0 ; c < h.size() ; ++c)
            rows[c] = h.graph.out_row(c)[0];
        return rows;
    }

    namespace
    {
        // out_by[v * k + c] holds the states (w, c) over arcs v -> w coloured c
        auto rows_from_out_by(int n, int k, const std::array<uint64_t, 64> & out_by,
                span<const uint64_t> h_rows, span<uint64_t> out) -> void
        {
            std::array<uint64_t, 64> succ{};
            for (int v = 0 ; v < n ; ++v)
                for (int c = 0 ; c < k ; ++c) {
                    uint64_t s = 0, allowed = h_rows[c];
                    while (allowed) {
                        int next = std::countr_zero(allowed);
                        allowed &= allowed - 1;
                        s |= out_by[v * k + next];
                    }
                    succ[v * k + c] = s;
                }

            uint64_t colour_block = (k == 64) ? ~uint64_t{ 0 } : ((uint64_t{ 1 } << k) - 1);
            for (int u = 0 ; u < n ; ++u) {
                uint64_t reached = 0;
                for (int c = 0 ; c < k ; ++c)
                    reached |= out_by[u * k + c];

                uint64_t frontier = reached;
                while (frontier) {
                    int s = std::countr_zero(frontier);
                    frontier &= frontier - 1;
                    uint64_t fresh = succ[s] & ~reached;
                    reached |= fresh;
                    frontier |= fresh;
                }

                uint64_t row = 0;
                for (int w = 0 ; w < n ; ++w)
                    if ((reached >> (w * k)) & colour_block)
                        row |= uint64_t{ 1 } << w;
                out[u] = row;
            }
        }
    }

    auto small_h_reach(int n, int k, span<const Arc> arcs, span<const int> colours,
            span<const uint64_t> h_rows, span<uint64_t> out) -> void
    {
        std::array<uint64_t, 64> out_by{};
        for (size_t i = 0 ; i < arcs.size() ; ++i) {
            int c = colours[i];
            out_by[arcs[i].from * k + c] |= uint64_t{ 1 } << (arcs[i].to * k + c);
        }
        rows_from_out_by(n, k, out_by, h_rows, out);
    }

    auto small_h_reach_sets(int n, int k, span<const Arc> arcs, span<const uint64_t> colour_sets,
            span<const uint64_t> h_rows, span<uint64_t> out) -> void
    {
        std::array<uint64_t, 64> out_by{};
        for (size_t i = 0 ; i < arcs.size() ; ++i)
            for (uint64_t cs = colour_sets[i] ; cs ; cs &= cs - 1) {
                int c = std::countr_zero(cs);
                out_by[arcs[i].from * k + c] |= uint64_t{ 1 } << (arcs[i].to * k + c);
            }
        rows_from_out_by(n, k, out_by, h_rows, out);
    }

    auto h_reach(const ColouredInstance & inst, const Pattern & h) -> ReachRelation
    {
        check_colours(inst, h);
        int n = inst.size(), k = h.size();
        ReachRelation result(n);

        if (n * k <= 64) {
            auto arcs = inst.digraph().arcs();
            vector<int> colours;
            colours.reserve(arcs.size());
            for (auto [v, w] : arcs)
                colours.push_back(inst.colour(v, w));
            vector<uint64_t> rows(n);
            small_h_reach(n, k, arcs, colours, pattern_rows(h), rows);
            for (int u = 0 ; u < n ; ++u)
                result.row(u) = rows[u];
            return result;
        }

        auto product = build_product(inst, h);
        vector<uint64_t> rows(n);
#pragma omp parallel for schedule(dynamic, 1) if (n >= 16)
        for (int u = 0 ; u < n ; ++u)
            rows[u] = reach_row_by_search(product, inst, u);
        for (int u = 0 ; u < n ; ++u)
            result.row(u) = rows[u];
        return result;
    }

    auto witness_walk(const ColouredInstance & inst, const Pattern & h, int u, int v) -> optional<vector<int>>
    {
        check_colours(inst, h);
        if (u < 0 || u >= inst.size() || v < 0 || v >= inst.size())
            throw std::out_of_range{ "vertex out of range for witness walk" };

        int k = h.size();
        auto product = build_product(inst, h);
        vector<int> parent(product.size(), -2);
        std::deque<int> queue;
        for (auto s : start_states(inst, u)) {
            parent[s] = -1;
            queue.push_back(s);
        }

        int found = -1;
        while (! queue.empty()) {
            int s = queue.front();
            queue.pop_front();
            if (s / k == v) {
                found = s;
                break;
            }
            for (int t = 0 ; t < product.size() ; ++t)
                if (parent[t] == -2 && product.has_arc(s, t)) {
                    parent[t] = s;
                    queue.push_back(t);
                }
        }
        if (found == -1)
            return std::nullopt;

        vector<int> walk;
        for (int s = found ; s != -1 ; s = parent[s])
            walk.push_back(s / k);
        walk.push_back(u);
        std::reverse(walk.begin(), walk.end());

        if (! is_h_walk(inst, h, walk))
            throw std::logic_error{ "witness walk failed re-validation" };
        return walk;
    }

    auto colour_sequence(const ColouredInstance & inst, span<const int> walk) -> vector<int>
    {
        vector<int> result;
        for (size_t i = 0 ; i + 1 < walk.size() ; ++i)
            result.push_back(inst.colour(walk[i], walk[i + 1]));
        return result;
    }

    auto is_h_walk(const ColouredInstance & inst, const Pattern & h, span<const int> walk) -> bool
    {
        if (walk.size() < 2)
            return false;
        for (auto x : walk)
            if (x < 0 || x >= inst.size())
                return false;
        for (size_t i = 0 ; i + 1 < walk.size() ; ++i)
            if (! inst.digraph().has_arc(walk[i], walk[i + 1]))
                return false;
        auto colours = colour_sequence(inst, walk);
        for (size_t i = 0 ; i + 1 < colours.size() ; ++i)
            if (! h.has_arc(colours[i], colours[i + 1]))
                return false;
        return true;
    }
}
