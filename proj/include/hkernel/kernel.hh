/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef HKERNEL_GUARD_KERNEL_HH
#define HKERNEL_GUARD_KERNEL_HH 1

#include <hkernel/digraph.hh>
#include <hkernel/hwalk.hh>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hkernel
{
    /// Largest instance accepted by the subset-enumeration oracle.
    inline constexpr int max_enumeration_vertices = 20;

    struct KernelViolation
    {
        enum class Kind
        {
            Dependent,      ///< an H-walk runs from first to second, both in K
            Unabsorbed,     ///< first is outside K and reaches nothing in K
            Empty
        };

        Kind kind;
        int first = -1, second = -1;

        auto operator== (const KernelViolation &) const -> bool = default;
    };

    auto to_string(const KernelViolation &) -> std::string;

    /// nullopt means K is an H-kernel. Closed walks u..u are ignored.
    auto check_kernel(const ReachRelation & reach, std::span<const int> kernel) -> std::optional<KernelViolation>;
    auto check_kernel(const ColouredInstance & inst, const Pattern & h, std::span<const int> kernel)
        -> std::optional<KernelViolation>;

    /**
     * Lexicographically least kernel, as a bit mask, found by backtracking
     * over vertices in index order with inclusion tried first. Vertices that
     * are blocked by a chosen neighbour are excluded, and a branch is cut as
     * soon as an excluded vertex has no possible absorber left.
     */
    auto find_kernel_mask(std::span<const std::uint64_t> reach_rows, int n) -> std::optional<std::uint64_t>;

    /// Least set that is independent under one relation and absorbent under
    /// another. With independence rows a superset of absorption rows, such a
    /// set is a kernel of every relation in between.
    auto find_kernel_mask(std::span<const std::uint64_t> independence_rows,
            std::span<const std::uint64_t> absorption_rows, int n) -> std::optional<std::uint64_t>;

    auto find_kernel(const ReachRelation & reach) -> std::optional<VertexSet>;
    auto find_h_kernel(const ColouredInstance & inst, const Pattern & h) -> std::optional<VertexSet>;

    /// Every kernel in lexicographic order, by testing all subsets.
    auto enumerate_kernels(const ReachRelation & reach) -> std::vector<VertexSet>;
    auto enumerate_h_kernels(const ColouredInstance & inst, const Pattern & h) -> std::vector<VertexSet>;

    auto mask_to_set(std::uint64_t mask) -> VertexSet;
}

#endif
