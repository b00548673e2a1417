/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef HKERNEL_GUARD_REDUCTIONS_HH
#define HKERNEL_GUARD_REDUCTIONS_HH 1

#include <hkernel/digraph.hh>

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hkernel
{
    class P2PreconditionError : public std::invalid_argument
    {
        public:
            using std::invalid_argument::invalid_argument;
    };

    /**
     * Simulating a pattern arc (u,v) that closes the path u -> z -> v.
     * Every vertex y of the original instance with an in-arc coloured u and
     * an out-arc coloured v gets a twin, numbered original.size() + i for the
     * i-th such y in increasing order, joined to y by two arcs coloured z.
     */
    struct P2Transform
    {
        ColouredInstance original;
        ColouredInstance transformed;
        int u, v, z;
        /// twins_of[i] is the original vertex whose twin is original.size() + i.
        VertexSet twins_of;

        auto twin(std::size_t i) const -> int { return original.size() + int(i); }
    };

    /// The pattern with the arc (u,v) added.
    auto with_arc(const Pattern & h, int u, int v) -> Pattern;

    /// Smallest z with (u,z) and (z,v) both arcs of h.
    auto smallest_midpoint(const Pattern & h, int u, int v) -> std::optional<int>;

    /// Throws P2PreconditionError naming the first failed precondition.
    auto p2_transform(const ColouredInstance & inst, const Pattern & h, int u, int v, int z) -> P2Transform;

    /// (K' plus the originals of twins in K') minus all twins.
    auto pullback_kernel(const P2Transform & t, std::span<const int> kernel) -> VertexSet;

    /// Header comment recording u, v, z and the twin mapping.
    auto describe(const P2Transform & t) -> std::string;
}

#endif
