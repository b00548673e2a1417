/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef HKERNEL_GUARD_SEARCH_HH
#define HKERNEL_GUARD_SEARCH_HH 1

#include <hkernel/digraph.hh>
#include <hkernel/recognizer.hh>

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hkernel
{
    /// Largest order accepted by enumerate_digraphs.
    inline constexpr int max_enumeration_order = 8;

    struct SearchBounds
    {
        int min_vertices = 1;
        int max_vertices = 3;
        bool allow_loops = false;
        std::optional<int> max_arcs;
        /// Digraphs with more colourings than this are skipped and counted.
        std::optional<std::uint64_t> colouring_cap;
        std::optional<std::chrono::milliseconds> time_budget;
        /// Only visit colourings that are lexicographically least under the
        /// pattern's automorphism group.
        bool symmetry_pruning = true;
        /// Worker count for the parallel falsifier, 0 for the OpenMP default.
        int jobs = 0;
    };

    class ColouringCapExceeded : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    /**
     * One digraph per isomorphism class on n vertices, ordered by arc count
     * and then by canonical arc mask. Loopless unless allow_loops. Classes
     * are found by keeping every labelled mask that is minimal under all
     * relabellings; results are cached per (n, allow_loops).
     */
    auto enumerate_digraphs(int n, bool allow_loops = false, std::optional<int> max_arcs = std::nullopt) -> std::vector<Digraph>;

    /// Canonical masks in enumeration order, shared with enumerate_digraphs.
    auto digraph_class_masks(int n, bool allow_loops) -> const std::vector<std::uint64_t> &;

    struct ColouringOptions
    {
        /// Colour permutations; a colouring is visited only if no permutation
        /// maps it to something lexicographically smaller.
        std::vector<std::vector<int>> symmetries;
        std::optional<std::uint64_t> cap;
    };

    /// k^m, or nullopt on overflow.
    auto colouring_count(int arcs, int colours) -> std::optional<std::uint64_t>;

    /// Visits colour vectors (indexed like d.arcs()) in lexicographic order
    /// until visit returns false. Returns the number visited. Throws
    /// ColouringCapExceeded when k^m is above the cap.
    auto for_each_colouring(const Digraph & d, int colours, const ColouringOptions & options,
            const std::function<bool (std::span<const int>)> & visit) -> std::uint64_t;

    auto enumerate_colourings(const Digraph & d, int colours, const ColouringOptions & options = {})
        -> std::vector<ColouredInstance>;

    auto colour_instance(const Digraph & d, int colours, std::span<const int> colouring) -> ColouredInstance;

    struct Counterexample
    {
        ColouredInstance instance;
        /// Position of the instance's digraph in enumerate_digraphs order.
        std::size_t digraph_index;
    };

    struct FalsifyResult
    {
        std::optional<Counterexample> counterexample;
        /// Largest instance order searched completely.
        int vertices_completed = 0;
        bool budget_exceeded = false;
        std::uint64_t digraphs_searched = 0;
        std::uint64_t colourings_checked = 0;
        std::uint64_t digraphs_skipped = 0;

        auto exhausted() const -> bool { return ! counterexample && ! budget_exceeded; }
    };

    /**
     * First instance in canonical order (order, then digraph class, then
     * colouring) with no H-kernel. Digraph classes of one order are shared
     * among OpenMP workers; the lowest class index holding a counterexample
     * wins, so the result matches falsify_serial.
     */
    auto falsify(const Pattern & h, const SearchBounds & bounds) -> FalsifyResult;

    /// Single-threaded reference for falsify.
    auto falsify_serial(const Pattern & h, const SearchBounds & bounds) -> FalsifyResult;

    struct ClassifyOptions
    {
        /// Instance orders tried in turn for patterns the recognizer rejects.
        std::vector<int> escalation{ 3, 4, 5 };
        /// Exhaustive bound for patterns the recognizer accepts.
        int coherence_vertices = 4;
        SearchBounds bounds;
    };

    enum class RowOutcome
    {
        Consistent,     ///< accepted, no counterexample within bounds
        Witnessed,      ///< rejected, counterexample found
        Unwitnessed,    ///< rejected, no counterexample within bounds
        Fatal,          ///< accepted, yet a counterexample was found
        BudgetExceeded
    };

    auto to_string(RowOutcome) -> std::string;

    struct ClassificationRow
    {
        std::size_t index;
        Pattern pattern;
        Verdict verdict;
        RowOutcome outcome;
        std::optional<Counterexample> counterexample;
        /// Escalation level at which the counterexample turned up, or 0.
        int witnessed_at = 0;
        int searched_up_to = 0;
    };

    /// Every fully looped pattern of order n up to isomorphism.
    auto looped_patterns(int n) -> std::vector<Pattern>;

    auto classify_order(int n, const ClassifyOptions & options,
            const std::function<void (const ClassificationRow &)> & progress = {}) -> std::vector<ClassificationRow>;

    auto counterexample_file_name(const ClassificationRow & row) -> std::string;

    /// Space-separated "u>v" list.
    auto format_arcs(const Digraph & d) -> std::string;

    /// Tab-separated report with a header line and a trailing summary comment.
    auto format_report(int order, const ClassifyOptions & options, std::span<const ClassificationRow> rows) -> std::string;
}

#endif
