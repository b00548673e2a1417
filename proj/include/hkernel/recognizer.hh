/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef HKERNEL_GUARD_RECOGNIZER_HH
#define HKERNEL_GUARD_RECOGNIZER_HH 1

#include <hkernel/digraph.hh>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hkernel
{
    /// H fully looped, H[X] and H[Y] complete, every arc Y -> X present.
    /// Either side may be empty.
    struct BicompleteSplit
    {
        VertexSet x, y;

        auto operator== (const BicompleteSplit &) const -> bool = default;
    };

    /// Two non-empty complete reflexive parts with no arcs between them.
    struct TwoK1Split
    {
        VertexSet x, y;

        auto operator== (const TwoK1Split &) const -> bool = default;
    };

    using Certificate = std::variant<BicompleteSplit, TwoK1Split>;

    struct UnloopedVertex
    {
        int vertex;

        auto operator== (const UnloopedVertex &) const -> bool = default;
    };

    /// A directed cycle of odd length in the complement, as its vertex sequence.
    struct OddComplementCycle
    {
        VertexSet cycle;

        auto operator== (const OddComplementCycle &) const -> bool = default;
    };

    /**
     * A walk x_0..x_k (k >= 1) in H where each x_j, j < k, misses the colour
     * missing[j], that is (x_j, missing[j]) is not an arc, and (x_k, x_0) is
     * not an arc either.
     */
    struct MissingColourWalk
    {
        VertexSet walk;
        VertexSet missing;

        auto operator== (const MissingColourWalk &) const -> bool = default;
    };

    /// A vertex with both in- and out-arcs in the complement, while no
    /// two-part split exists.
    struct StructuralFailure
    {
        int vertex;

        auto operator== (const StructuralFailure &) const -> bool = default;
    };

    using Refutation = std::variant<UnloopedVertex, OddComplementCycle, MissingColourWalk, StructuralFailure>;

    struct Verdict
    {
        std::optional<Certificate> certificate;
        std::vector<Refutation> refutations;

        auto panchromatic() const -> bool { return certificate.has_value(); }
    };

    auto bicomplete_split(const Pattern & h) -> std::optional<BicompleteSplit>;
    auto two_k1_split(const Pattern & h) -> std::optional<TwoK1Split>;

    /// Shortest odd directed cycle of the complement; ties go to the
    /// smallest start vertex.
    auto odd_complement_cycle(const Pattern & h) -> std::optional<OddComplementCycle>;

    /// max_length of zero means |V(H)|^2.
    auto missing_colour_walk(const Pattern & h, long max_length = 0) -> std::optional<MissingColourWalk>;

    auto recognize(const Pattern & h) -> Verdict;

    /// Checks a certificate or refutation directly against its definition.
    auto validate(const Pattern & h, const Certificate &) -> bool;
    auto validate(const Pattern & h, const Refutation &) -> bool;

    auto to_string(const Certificate &) -> std::string;
    auto to_string(const Refutation &) -> std::string;
}

#endif
