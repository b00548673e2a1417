/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef HKERNEL_GUARD_HWALK_HH
#define HKERNEL_GUARD_HWALK_HH 1

#include <hkernel/digraph.hh>

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace hkernel
{
    class ColourCountMismatch : public std::invalid_argument
    {
        public:
            ColourCountMismatch(int instance_colours, int pattern_order);
    };

    /// A vertex of the product: where the walk is, and the colour of the arc
    /// that brought it there.
    struct ProductState
    {
        int vertex;
        int colour;

        auto operator<=> (const ProductState &) const = default;
    };

    /// Product states are numbered vertex * colour_count + colour.
    inline auto state_index(ProductState s, int colour_count) -> int
    {
        return s.vertex * colour_count + s.colour;
    }

    /**
     * R(u,v) holds iff an H-walk of length at least one runs from u to v.
     * Rows are bit masks, so instances are limited to 64 vertices.
     */
    class ReachRelation
    {
        private:
            int _n;
            std::vector<std::uint64_t> _rows;

        public:
            explicit ReachRelation(int n) : _n(n), _rows(n, 0) { }

            auto size() const -> int { return _n; }
            auto operator() (int u, int v) const -> bool { return (_rows[u] >> v) & 1; }
            auto set(int u, int v) -> void { _rows[u] |= std::uint64_t{ 1 } << v; }
            auto row(int u) const -> std::uint64_t { return _rows[u]; }
            auto row(int u) -> std::uint64_t & { return _rows[u]; }
            auto rows() const -> std::span<const std::uint64_t> { return _rows; }

            auto operator== (const ReachRelation &) const -> bool = default;
    };

    /// States V(D) x V(H); (v,c) -> (w,c') iff (v,w) is an arc coloured c'
    /// and (c,c') is an arc of the pattern.
    auto build_product(const ColouredInstance & inst, const Pattern & h) -> Digraph;

    /// Breadth-first search over the materialised product. Kept as the
    /// reference for h_reach.
    auto h_reach_reference(const ColouredInstance & inst, const Pattern & h) -> ReachRelation;

    /// Bit-parallel closure when the product fits in 64 states, otherwise
    /// one product search per start vertex, rows computed in parallel.
    auto h_reach(const ColouredInstance & inst, const Pattern & h) -> ReachRelation;

    /// Out-neighbourhood masks of a pattern with at most 64 vertices.
    auto pattern_rows(const Pattern & h) -> std::vector<std::uint64_t>;

    /**
     * Reach rows for an instance given as parallel arc and colour lists,
     * requiring n * k <= 64. Writes n rows into out. This is the inner loop
     * of the falsifier, so it does not allocate.
     */
    auto small_h_reach(int n, int k, std::span<const Arc> arcs, std::span<const int> colours,
            std::span<const std::uint64_t> h_rows, std::span<std::uint64_t> out) -> void;

    /// As small_h_reach, but each arc carries a set of colours (bit c for
    /// colour c) and a walk may use it with any of them.
    auto small_h_reach_sets(int n, int k, std::span<const Arc> arcs, std::span<const std::uint64_t> colour_sets,
            std::span<const std::uint64_t> h_rows, std::span<std::uint64_t> out) -> void;

    /// Shortest H-walk u..v found breadth-first over the product, expanding
    /// states in increasing index order. Re-checked before it is returned.
    auto witness_walk(const ColouredInstance & inst, const Pattern & h, int u, int v) -> std::optional<std::vector<int>>;

    auto colour_sequence(const ColouredInstance & inst, std::span<const int> walk) -> std::vector<int>;

    /// True iff walk has at least one arc, follows arcs of the instance, and
    /// its colour sequence is a walk in h.
    auto is_h_walk(const ColouredInstance & inst, const Pattern & h, std::span<const int> walk) -> bool;
}

#endif
