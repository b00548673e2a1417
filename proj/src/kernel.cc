/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <hkernel/kernel.hh>

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>

using std::optional;
using std::span;
using std::string;
using std::uint64_t;
using std::vector;

namespace hkernel
{
    using std::to_string;

    auto to_string(const KernelViolation & v) -> string
    {
        switch (v.kind) {
            case KernelViolation::Kind::Dependent:
                return "independence " + std::to_string(v.first) + " " + std::to_string(v.second);
            case KernelViolation::Kind::Unabsorbed:
                return "absorbency " + std::to_string(v.first);
            case KernelViolation::Kind::Empty:
                return "empty";
        }
        return "unknown";
    }

    auto mask_to_set(uint64_t mask) -> VertexSet
    {
        VertexSet result;
        while (mask) {
            result.push_back(std::countr_zero(mask));
            mask &= mask - 1;
        }
        return result;
    }

    auto check_kernel(const ReachRelation & reach, span<const int> kernel) -> optional<KernelViolation>
    {
        uint64_t in_k = 0;
        for (auto v : kernel) {
            if (v < 0 || v >= reach.size())
                throw std::out_of_range{ "kernel vertex " + std::to_string(v) + " out of range" };
            in_k |= uint64_t{ 1 } << v;
        }
        if (! in_k)
            return KernelViolation{ KernelViolation::Kind::Empty };

        for (auto u : mask_to_set(in_k))
            for (auto v : mask_to_set(in_k))
                if (u != v && reach(u, v))
                    return KernelViolation{ KernelViolation::Kind::Dependent, u, v };

        for (int w = 0 ; w < reach.size() ; ++w)
            if (! ((in_k >> w) & 1) && ! (reach.row(w) & in_k))
                return KernelViolation{ KernelViolation::Kind::Unabsorbed, w };

        return std::nullopt;
    }

    auto check_kernel(const ColouredInstance & inst, const Pattern & h, span<const int> kernel) -> optional<KernelViolation>
    {
        return check_kernel(h_reach(inst, h), kernel);
    }

    namespace
    {
        struct Backtracker
        {
            int n;
            std::array<uint64_t, 64> absorb{}, conflict{};
            uint64_t all;

            auto search(int i, uint64_t chosen, uint64_t blocked, uint64_t excluded) -> optional<uint64_t>
            {
                uint64_t open = all & ~((i >= 64) ? all : ((uint64_t{ 1 } << i) - 1)) & ~blocked;
                uint64_t possible = chosen | open;
                for (uint64_t e = excluded ; e ; e &= e - 1)
                    if (! (absorb[std::countr_zero(e)] & possible))
                        return std::nullopt;

                if (i == n)
                    return chosen;

                uint64_t bit = uint64_t{ 1 } << i;
                if (! (blocked & bit))
                    if (auto k = search(i + 1, chosen | bit, blocked | conflict[i], excluded))
                        return k;

                // only excluded vertices not yet absorbed need tracking
                uint64_t still = (absorb[i] & chosen) ? excluded : (excluded | bit);
                return search(i + 1, chosen, blocked, still);
            }
        };
    }

    auto find_kernel_mask(span<const uint64_t> independence_rows, span<const uint64_t> absorption_rows, int n)
        -> optional<uint64_t>
    {
        if (n < 1 || n > 64)
            throw std::invalid_argument{ "kernel search needs 1..64 vertices" };

        Backtracker b;
        b.n = n;
        b.all = (n == 64) ? ~uint64_t{ 0 } : ((uint64_t{ 1 } << n) - 1);
        for (int u = 0 ; u < n ; ++u) {
            uint64_t self = uint64_t{ 1 } << u;
            b.absorb[u] = absorption_rows[u] & b.all & ~self;
            b.conflict[u] |= independence_rows[u] & b.all & ~self;
            for (uint64_t r = independence_rows[u] & b.all & ~self ; r ; r &= r - 1)
                b.conflict[std::countr_zero(r)] |= self;
        }

        return b.search(0, 0, 0, 0);
    }

    auto find_kernel_mask(span<const uint64_t> reach_rows, int n) -> optional<uint64_t>
    {
        return find_kernel_mask(reach_rows, reach_rows, n);
    }

    auto find_kernel(const ReachRelation & reach) -> optional<VertexSet>
    {
        if (auto mask = find_kernel_mask(reach.rows(), reach.size()))
            return mask_to_set(*mask);
        return std::nullopt;
    }

    auto find_h_kernel(const ColouredInstance & inst, const Pattern & h) -> optional<VertexSet>
    {
        return find_kernel(h_reach(inst, h));
    }

    auto enumerate_kernels(const ReachRelation & reach) -> vector<VertexSet>
    {
        int n = reach.size();
        if (n > max_enumeration_vertices)
            throw std::invalid_argument{ "kernel enumeration limited to " + std::to_string(max_enumeration_vertices) + " vertices" };

        vector<VertexSet> result;
        for (uint64_t subset = 1 ; subset < (uint64_t{ 1 } << n) ; ++subset) {
            auto set = mask_to_set(subset);
            if (! check_kernel(reach, set))
                result.push_back(std::move(set));
        }
        std::sort(result.begin(), result.end());
        return result;
    }

    auto enumerate_h_kernels(const ColouredInstance & inst, const Pattern & h) -> vector<VertexSet>
    {
        if (inst.size() > max_enumeration_vertices)
            throw std::invalid_argument{ "kernel enumeration limited to " + std::to_string(max_enumeration_vertices) + " vertices" };
        return enumerate_kernels(h_reach(inst, h));
    }
}
