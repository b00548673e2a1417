/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef HKERNEL_GUARD_DIGRAPH_HH
#define HKERNEL_GUARD_DIGRAPH_HH 1

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hkernel
{
    /// Largest instance digraph accepted by ColouredInstance. Reach
    /// relations and kernel sets are stored as one 64-bit row per vertex.
    inline constexpr int max_instance_vertices = 64;

    /// Default refusal threshold for exhaustive canonicalisation.
    inline constexpr int max_canonical_vertices = 8;

    class InvalidDigraph : public std::invalid_argument
    {
        public:
            using std::invalid_argument::invalid_argument;
    };

    struct Arc
    {
        int from, to;

        auto operator<=> (const Arc &) const = default;
    };

    using VertexSet = std::vector<int>;

    /**
     * A finite digraph on vertices 0..n-1, stored as a dense bit matrix.
     * Loops are ordinary arcs. Vertex count is at least one.
     */
    class Digraph
    {
        private:
            int _n;
            int _words;
            std::vector<std::uint64_t> _bits;

        public:
            explicit Digraph(int n);

            auto size() const -> int { return _n; }

            auto has_arc(int from, int to) const -> bool
            {
                return (_bits[std::size_t(from) * _words + (to >> 6)] >> (to & 63)) & 1;
            }

            /// Returns false if the arc was already present.
            auto add_arc(int from, int to) -> bool;
            auto remove_arc(int from, int to) -> bool;

            auto has_loop(int v) const -> bool { return has_arc(v, v); }

            auto out_row(int v) const -> std::span<const std::uint64_t>
            {
                return { _bits.data() + std::size_t(v) * _words, std::size_t(_words) };
            }

            auto words_per_row() const -> int { return _words; }

            /// Arcs in row-major order.
            auto arcs() const -> std::vector<Arc>;
            auto arc_count() const -> int;
            auto out_degree(int v) const -> int;

            auto operator== (const Digraph &) const -> bool = default;
    };

    /// A digraph whose vertices are read as colours.
    struct Pattern
    {
        Digraph graph;

        auto size() const -> int { return graph.size(); }
        auto has_arc(int from, int to) const -> bool { return graph.has_arc(from, to); }

        auto operator== (const Pattern &) const -> bool = default;
    };

    /**
     * An instance digraph with a total colouring of its arcs by the vertices
     * of some pattern of order colour_count(). Colours are stored in an n*n
     * table, -1 marking absent arcs.
     */
    class ColouredInstance
    {
        private:
            Digraph _d;
            int _colours;
            std::vector<int> _colour;

        public:
            ColouredInstance(int n, int colour_count);

            auto digraph() const -> const Digraph & { return _d; }
            auto size() const -> int { return _d.size(); }
            auto colour_count() const -> int { return _colours; }

            /// Throws InvalidDigraph on a duplicate arc or an out-of-range colour.
            auto add_arc(int from, int to, int colour) -> void;

            auto colour(int from, int to) const -> int { return _colour[std::size_t(from) * _d.size() + to]; }

            auto operator== (const ColouredInstance &) const -> bool = default;
    };

    /// Ordered list of disjoint non-empty parts covering 0..n-1.
    class VertexPartition
    {
        private:
            std::vector<VertexSet> _parts;
            int _n;

        public:
            /// Validates disjointness, totality and non-emptiness over n vertices.
            VertexPartition(std::vector<VertexSet> parts, int n);

            auto parts() const -> const std::vector<VertexSet> & { return _parts; }
            auto vertex_count() const -> int { return _n; }
            auto part_of(int v) const -> int;
    };

    class PartitionInvalid : public std::runtime_error
    {
        public:
            enum class Condition { IncompletePart, UnloopedPart, PartialCrossArcs };

            Condition condition;
            Arc witness;

            PartitionInvalid(Condition c, Arc w);
    };

    auto to_string(PartitionInvalid::Condition) -> std::string;

    struct CanonicalForm
    {
        int n;
        /// Arc bit mask, bit u*n+v set iff (u,v) is an arc, minimised over relabellings.
        std::uint64_t mask;
        /// permutation[v] is the canonical label of original vertex v.
        std::vector<int> permutation;

        auto operator== (const CanonicalForm & other) const -> bool
        {
            return n == other.n && mask == other.mask;
        }
    };

    auto complement(const Pattern & h) -> Digraph;

    /// Quotient by a partition, after checking every part is a complete
    /// reflexive digraph and every pair of parts has all or none of its
    /// cross arcs. Throws PartitionInvalid otherwise.
    auto contract(const Pattern & h, const VertexPartition & p) -> Pattern;

    /// Replaces vertex i by a complete reflexive block of sizes[i] vertices,
    /// blocks laid out consecutively.
    auto expand(const Pattern & h, std::span<const int> sizes) -> Pattern;

    /// The partition into consecutive blocks used by expand.
    auto block_partition(std::span<const int> sizes) -> VertexPartition;

    auto induced_subgraph(const Digraph & d, std::span<const int> vertices) -> Digraph;

    /// Relabels vertex v as permutation[v].
    auto relabel(const Digraph & d, std::span<const int> permutation) -> Digraph;

    auto to_mask(const Digraph & d) -> std::uint64_t;
    auto from_mask(int n, std::uint64_t mask) -> Digraph;

    auto canonicalize(const Digraph & d, int limit = max_canonical_vertices) -> CanonicalForm;

    /// All automorphisms by exhaustive search, identity first.
    auto automorphisms(const Digraph & d, int limit = max_canonical_vertices) -> std::vector<std::vector<int>>;

    auto complete_looped(int n) -> Pattern;

    auto format_set(std::span<const int> vertices) -> std::string;
}

#endif
