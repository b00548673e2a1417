/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <hkernel/reductions.hh>

#include <algorithm>

using std::optional;
using std::span;
using std::string;
using std::vector;

namespace hkernel
{
    using std::to_string;

    auto with_arc(const Pattern & h, int u, int v) -> Pattern
    {
        auto result = h;
        result.graph.add_arc(u, v);
        return result;
    }

    auto smallest_midpoint(const Pattern & h, int u, int v) -> optional<int>
    {
        for (int z = 0 ; z < h.size() ; ++z)
            if (h.has_arc(u, z) && h.has_arc(z, v))
                return z;
        return std::nullopt;
    }

    auto p2_transform(const ColouredInstance & inst, const Pattern & h, int u, int v, int z) -> P2Transform
    {
        int k = h.size();
        for (auto [name, x] : { std::pair{ "u", u }, std::pair{ "v", v }, std::pair{ "z", z } })
            if (x < 0 || x >= k)
                throw P2PreconditionError{ string(name) + "=" + to_string(x) + " is not a vertex of the pattern" };
        for (int c = 0 ; c < k ; ++c)
            if (! h.graph.has_loop(c))
                throw P2PreconditionError{ "pattern vertex " + to_string(c) + " has no loop" };
        if (h.has_arc(u, v))
            throw P2PreconditionError{ "(" + to_string(u) + "," + to_string(v) + ") is already an arc of the pattern" };
        if (! h.has_arc(u, z))
            throw P2PreconditionError{ "(" + to_string(u) + "," + to_string(z) + ") is not an arc of the pattern" };
        if (! h.has_arc(z, v))
            throw P2PreconditionError{ "(" + to_string(z) + "," + to_string(v) + ") is not an arc of the pattern" };
        if (inst.colour_count() != k)
            throw P2PreconditionError{ "instance is coloured over " + to_string(inst.colour_count())
                + " colours but the pattern has " + to_string(k) + " vertices" };

        int n = inst.size();
        VertexSet qualifying;
        for (int y = 0 ; y < n ; ++y) {
            bool in_u = false, out_v = false;
            for (int x = 0 ; x < n ; ++x) {
                in_u = in_u || (inst.digraph().has_arc(x, y) && inst.colour(x, y) == u);
                out_v = out_v || (inst.digraph().has_arc(y, x) && inst.colour(y, x) == v);
            }
            if (in_u && out_v)
                qualifying.push_back(y);
        }

        ColouredInstance transformed(n + int(qualifying.size()), k);
        for (auto [a, b] : inst.digraph().arcs())
            transformed.add_arc(a, b, inst.colour(a, b));
        for (std::size_t i = 0 ; i < qualifying.size() ; ++i) {
            int twin = n + int(i);
            transformed.add_arc(qualifying[i], twin, z);
            transformed.add_arc(twin, qualifying[i], z);
        }

        return P2Transform{ inst, std::move(transformed), u, v, z, std::move(qualifying) };
    }

    auto pullback_kernel(const P2Transform & t, span<const int> kernel) -> VertexSet
    {
        int n = t.original.size();
        vector<bool> in(n, false);
        for (auto x : kernel) {
            if (x < 0 || x >= t.transformed.size())
                throw std::out_of_range{ "kernel vertex " + to_string(x) + " out of range" };
            if (x < n)
                in[x] = true;
            else
                in[t.twins_of[x - n]] = true;
        }

        VertexSet result;
        for (int x = 0 ; x < n ; ++x)
            if (in[x])
                result.push_back(x);
        return result;
    }

    auto describe(const P2Transform & t) -> string
    {
        string result = "p2 transform: simulated arc (" + to_string(t.u) + "," + to_string(t.v) + ") via midpoint colour "
            + to_string(t.z) + "\nadded " + to_string(t.twins_of.size());
        for (std::size_t i = 0 ; i < t.twins_of.size() ; ++i)
            result += "\ntwin " + to_string(t.twin(i)) + " of " + to_string(t.twins_of[i]);
        return result;
    }
}
