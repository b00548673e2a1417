/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <hkernel/search.hh>
#include <hkernel/hwalk.hh>
#include <hkernel/kernel.hh>

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include <omp.h>

using std::optional;
using std::size_t;
using std::span;
using std::string;
using std::uint64_t;
using std::vector;

using steady = std::chrono::steady_clock;

namespace hkernel
{
    using std::to_string;

    namespace
    {
        auto all_permutations(int n) -> vector<vector<int>>
        {
            vector<vector<int>> result;
            vector<int> p(n);
            std::iota(p.begin(), p.end(), 0);
            do
                result.push_back(p);
            while (std::next_permutation(p.begin(), p.end()));
            return result;
        }

        /// Relabels n*n-bit arc masks, a byte at a time.
        class MaskPermuter
        {
            private:
                int _n, _bytes;
                vector<uint64_t> _table;   // [perm][byte][value]
                size_t _perms;

            public:
                explicit MaskPermuter(int n) :
                    _n(n),
                    _bytes((n * n + 7) / 8)
                {
                    auto perms = all_permutations(n);
                    perms.erase(perms.begin());     // identity
                    _perms = perms.size();
                    _table.assign(_perms * _bytes * 256, 0);
                    for (size_t p = 0 ; p < _perms ; ++p)
                        for (int byte = 0 ; byte < _bytes ; ++byte)
                            for (int value = 0 ; value < 256 ; ++value) {
                                uint64_t m = 0;
                                for (int bit = 0 ; bit < 8 ; ++bit) {
                                    int b = byte * 8 + bit;
                                    if (b < n * n && ((value >> bit) & 1))
                                        m |= uint64_t{ 1 } << (perms[p][b / n] * n + perms[p][b % n]);
                                }
                                _table[(p * _bytes + byte) * 256 + value] = m;
                            }
                }

                auto is_minimal(uint64_t mask) const -> bool
                {
                    for (size_t p = 0 ; p < _perms ; ++p) {
                        const uint64_t * t = _table.data() + p * _bytes * 256;
                        uint64_t m = 0;
                        for (int byte = 0 ; byte < _bytes ; ++byte)
                            m |= t[byte * 256 + ((mask >> (byte * 8)) & 0xff)];
                        if (m < mask)
                            return false;
                    }
                    return true;
                }
        };

        auto compute_class_masks(int n, bool allow_loops) -> vector<uint64_t>
        {
            uint64_t allowed = 0;
            for (int u = 0 ; u < n ; ++u)
                for (int v = 0 ; v < n ; ++v)
                    if (allow_loops || u != v)
                        allowed |= uint64_t{ 1 } << (u * n + v);

            vector<uint64_t> result;
            if (n <= 6) {
                MaskPermuter permuter(n);
                for (uint64_t sub = 0 ; ; sub = (sub - allowed) & allowed) {
                    if (permuter.is_minimal(sub))
                        result.push_back(sub);
                    if (sub == allowed)
                        break;
                }
            }
            else {
                for (uint64_t sub = 0 ; ; sub = (sub - allowed) & allowed) {
                    if (canonicalize(from_mask(n, sub)).mask == sub)
                        result.push_back(sub);
                    if (sub == allowed)
                        break;
                }
            }

            std::sort(result.begin(), result.end(), [] (uint64_t a, uint64_t b) {
                return std::pair{ std::popcount(a), a } < std::pair{ std::popcount(b), b };
            });
            return result;
        }

        auto is_representative(span<const int> colouring, const vector<vector<int>> & symmetries, size_t & failed_at) -> bool
        {
            for (auto & sigma : symmetries)
                for (size_t i = 0 ; i < colouring.size() ; ++i) {
                    int mapped = sigma[colouring[i]];
                    if (mapped < colouring[i]) {
                        failed_at = i;
                        return false;
                    }
                    if (mapped > colouring[i])
                        break;
                }
            return true;
        }

        auto non_identity_automorphisms(const Pattern & h) -> vector<vector<int>>
        {
            if (h.size() > max_canonical_vertices)
                return {};
            auto result = automorphisms(h.graph);
            result.erase(result.begin());
            return result;
        }

        struct SearchContext
        {
            const Pattern & h;
            const SearchBounds & bounds;
            vector<uint64_t> h_rows;
            ColouringOptions colourings;
            optional<steady::time_point> deadline;
            std::atomic<bool> out_of_time{ false };

            SearchContext(const Pattern & p, const SearchBounds & b) :
                h(p),
                bounds(b)
            {
                if (h.size() <= 64)
                    h_rows = pattern_rows(h);
                if (bounds.symmetry_pruning)
                    colourings.symmetries = non_identity_automorphisms(h);
                colourings.cap = bounds.colouring_cap;
                if (bounds.time_budget)
                    deadline = steady::now() + *bounds.time_budget;
            }
        };

        struct DigraphOutcome
        {
            optional<vector<int>> colouring;
            uint64_t checked = 0;
            bool skipped = false;
        };

        // Depth-first over colour prefixes in lexicographic order. A prefix is
        // cut when it is dominated under a pattern symmetry, or when one set
        // is independent even if every uncoloured arc could take any colour
        // and absorbent using the coloured arcs alone (plus every arc as a
        // walk of length one): walks only grow as arcs are coloured, so that
        // set is a kernel of every completion.
        constexpr size_t bound_depth = 4;

        struct PrefixSearch
        {
            SearchContext & ctx;
            int n, k;
            vector<Arc> arcs;
            vector<int> colouring;
            vector<uint64_t> colour_sets;
            uint64_t all_colours;
            DigraphOutcome & outcome;
            uint64_t nodes = 0;
            std::array<uint64_t, 64> adjacency{};

            auto dominated(size_t len) const -> bool
            {
                for (auto & sigma : ctx.colourings.symmetries)
                    for (size_t i = 0 ; i < len ; ++i) {
                        int mapped = sigma[colouring[i]];
                        if (mapped < colouring[i])
                            return true;
                        if (mapped > colouring[i])
                            break;
                    }
                return false;
            }

            auto kernel_for_every_completion(size_t fixed) -> bool
            {
                std::array<uint64_t, 64> upper{}, lower{};
                small_h_reach_sets(n, k, arcs, colour_sets, ctx.h_rows, upper);
                small_h_reach(n, k, span{ arcs }.first(fixed), span{ colouring }.first(fixed), ctx.h_rows, lower);
                for (int v = 0 ; v < n ; ++v)
                    lower[v] |= adjacency[v];
                return find_kernel_mask(span{ upper.data(), size_t(n) }, span{ lower.data(), size_t(n) }, n).has_value();
            }

            // false once the search should stop
            auto search(size_t fixed) -> bool
            {
                if ((++nodes & 1023) == 0 && ctx.deadline && steady::now() > *ctx.deadline)
                    ctx.out_of_time = true;
                if (ctx.out_of_time)
                    return false;

                if (fixed == arcs.size()) {
                    ++outcome.checked;
                    std::array<uint64_t, 64> rows{};
                    small_h_reach(n, k, arcs, colouring, ctx.h_rows, rows);
                    if (find_kernel_mask(span{ rows.data(), size_t(n) }, n))
                        return true;
                    outcome.colouring = colouring;
                    return false;
                }

                // the bound rarely cuts with many arcs left, so only the
                // root and the last few levels pay for it
                size_t left = arcs.size() - fixed;
                if ((fixed == 0 || left <= bound_depth) && kernel_for_every_completion(fixed))
                    return true;

                for (int c = 0 ; c < k ; ++c) {
                    colouring[fixed] = c;
                    colour_sets[fixed] = uint64_t{ 1 } << c;
                    if (! dominated(fixed + 1) && ! search(fixed + 1))
                        return false;
                }
                colouring[fixed] = 0;
                colour_sets[fixed] = all_colours;
                return true;
            }
        };

        auto search_digraph(const Digraph & d, SearchContext & ctx) -> DigraphOutcome
        {
            DigraphOutcome outcome;
            int n = d.size(), k = ctx.h.size();

            if (n * k <= 64) {
                int m = d.arc_count();
                auto total = colouring_count(m, k);
                if (! total || (ctx.colourings.cap && *total > *ctx.colourings.cap)) {
                    outcome.skipped = true;
                    return outcome;
                }
                uint64_t all_colours = (k == 64) ? ~uint64_t{ 0 } : ((uint64_t{ 1 } << k) - 1);
                PrefixSearch search{ ctx, n, k, d.arcs(), vector<int>(m, 0), vector<uint64_t>(m, all_colours),
                    all_colours, outcome };
                for (auto [v, w] : search.arcs)
                    search.adjacency[v] |= uint64_t{ 1 } << w;
                search.search(0);
                return outcome;
            }

            auto visit = [&] (span<const int> colouring) -> bool {
                if ((outcome.checked & 1023) == 0 && ctx.deadline && steady::now() > *ctx.deadline)
                    ctx.out_of_time = true;
                if (ctx.out_of_time)
                    return false;
                ++outcome.checked;

                if (! find_h_kernel(colour_instance(d, k, colouring), ctx.h)) {
                    outcome.colouring.emplace(colouring.begin(), colouring.end());
                    return false;
                }
                return true;
            };

            try {
                for_each_colouring(d, k, ctx.colourings, visit);
            }
            catch (const ColouringCapExceeded &) {
                outcome.skipped = true;
            }
            return outcome;
        }

        template <bool parallel_>
        auto falsify_impl(const Pattern & h, const SearchBounds & bounds) -> FalsifyResult
        {
            if (bounds.max_vertices < 1 || bounds.min_vertices < 1)
                throw std::invalid_argument{ "search bounds need at least one vertex" };

            SearchContext ctx(h, bounds);
            FalsifyResult result;
            result.vertices_completed = bounds.min_vertices - 1;

            for (int n = bounds.min_vertices ; n <= bounds.max_vertices ; ++n) {
                auto classes = enumerate_digraphs(n, bounds.allow_loops, bounds.max_arcs);
                long count = long(classes.size());
                vector<optional<vector<int>>> found(classes.size());
                std::atomic<long> best{ std::numeric_limits<long>::max() };
                uint64_t searched = 0, checked = 0, skipped = 0;

                if constexpr (parallel_) {
                    int jobs = bounds.jobs > 0 ? bounds.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs) reduction(+: searched, checked, skipped)
                    for (long i = 0 ; i < count ; ++i) {
                        if (i > best.load() || ctx.out_of_time)
                            continue;
                        auto outcome = search_digraph(classes[i], ctx);
                        ++searched;
                        checked += outcome.checked;
                        skipped += outcome.skipped;
                        if (outcome.colouring) {
                            found[i] = std::move(outcome.colouring);
                            long current = best.load();
                            while (i < current && ! best.compare_exchange_weak(current, i))
                                ;
                        }
                    }
                }
                else {
                    for (long i = 0 ; i < count && ! ctx.out_of_time ; ++i) {
                        auto outcome = search_digraph(classes[i], ctx);
                        ++searched;
                        checked += outcome.checked;
                        skipped += outcome.skipped;
                        if (outcome.colouring) {
                            found[i] = std::move(outcome.colouring);
                            best = i;
                            break;
                        }
                    }
                }

                result.digraphs_searched += searched;
                result.colourings_checked += checked;
                result.digraphs_skipped += skipped;

                // a counterexample at a lower index than any unfinished work is final
                if (long b = best.load() ; b != std::numeric_limits<long>::max() && ! ctx.out_of_time) {
                    result.counterexample = Counterexample{ colour_instance(classes[b], h.size(), *found[b]), size_t(b) };
                    return result;
                }
                if (ctx.out_of_time) {
                    result.budget_exceeded = true;
                    return result;
                }
                result.vertices_completed = n;
            }
            return result;
        }
    }

    auto digraph_class_masks(int n, bool allow_loops) -> const vector<uint64_t> &
    {
        if (n < 1 || n > max_enumeration_order)
            throw std::invalid_argument{ "digraph enumeration supports 1.." + to_string(max_enumeration_order)
                + " vertices, got " + to_string(n) };

        static std::mutex mutex;
        static std::map<std::pair<int, bool>, vector<uint64_t>> cache;
        std::lock_guard lock(mutex);
        auto key = std::pair{ n, allow_loops };
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, compute_class_masks(n, allow_loops)).first;
        return it->second;
    }

    auto enumerate_digraphs(int n, bool allow_loops, optional<int> max_arcs) -> vector<Digraph>
    {
        vector<Digraph> result;
        for (auto mask : digraph_class_masks(n, allow_loops))
            if (! max_arcs || std::popcount(mask) <= *max_arcs)
                result.push_back(from_mask(n, mask));
        return result;
    }

    auto colouring_count(int arcs, int colours) -> optional<uint64_t>
    {
        uint64_t result = 1;
        for (int i = 0 ; i < arcs ; ++i) {
            if (result > std::numeric_limits<uint64_t>::max() / uint64_t(colours))
                return std::nullopt;
            result *= uint64_t(colours);
        }
        return result;
    }

    auto for_each_colouring(const Digraph & d, int colours, const ColouringOptions & options,
            const std::function<bool (span<const int>)> & visit) -> uint64_t
    {
        if (colours < 1)
            throw std::invalid_argument{ "need at least one colour" };
        int m = d.arc_count();
        auto total = colouring_count(m, colours);
        if (! total || (options.cap && *total > *options.cap))
            throw ColouringCapExceeded{ to_string(colours) + "^" + to_string(m) + " colourings exceed the cap" };

        vector<int> colouring(m, 0);
        uint64_t visited = 0;
        while (true) {
            size_t failed_at = 0;
            if (options.symmetries.empty() || is_representative(colouring, options.symmetries, failed_at)) {
                ++visited;
                if (! visit(colouring))
                    return visited;
                failed_at = colouring.size();
            }

            // every colouring sharing the prefix up to failed_at is dominated too
            for (size_t j = failed_at + 1 ; j < colouring.size() ; ++j)
                colouring[j] = colours - 1;

            int pos = m - 1;
            while (pos >= 0 && colouring[pos] == colours - 1)
                colouring[pos--] = 0;
            if (pos < 0)
                return visited;
            ++colouring[pos];
        }
    }

    auto colour_instance(const Digraph & d, int colours, span<const int> colouring) -> ColouredInstance
    {
        ColouredInstance inst(d.size(), colours);
        auto arcs = d.arcs();
        for (size_t i = 0 ; i < arcs.size() ; ++i)
            inst.add_arc(arcs[i].from, arcs[i].to, colouring[i]);
        return inst;
    }

    auto enumerate_colourings(const Digraph & d, int colours, const ColouringOptions & options) -> vector<ColouredInstance>
    {
        vector<ColouredInstance> result;
        for_each_colouring(d, colours, options, [&] (span<const int> c) {
            result.push_back(colour_instance(d, colours, c));
            return true;
        });
        return result;
    }

    auto falsify(const Pattern & h, const SearchBounds & bounds) -> FalsifyResult
    {
        return falsify_impl<true>(h, bounds);
    }

    auto falsify_serial(const Pattern & h, const SearchBounds & bounds) -> FalsifyResult
    {
        return falsify_impl<false>(h, bounds);
    }

    auto to_string(RowOutcome o) -> string
    {
        switch (o) {
            case RowOutcome::Consistent:     return "CONSISTENT";
            case RowOutcome::Witnessed:      return "WITNESSED";
            case RowOutcome::Unwitnessed:    return "UNWITNESSED";
            case RowOutcome::Fatal:          return "FATAL";
            case RowOutcome::BudgetExceeded: return "BUDGET-EXCEEDED";
        }
        return "unknown";
    }

    auto looped_patterns(int n) -> vector<Pattern>
    {
        vector<Pattern> result;
        for (auto & g : enumerate_digraphs(n, false)) {
            Pattern h{ g };
            for (int v = 0 ; v < n ; ++v)
                h.graph.add_arc(v, v);
            result.push_back(std::move(h));
        }
        return result;
    }

    auto classify_order(int n, const ClassifyOptions & options,
            const std::function<void (const ClassificationRow &)> & progress) -> vector<ClassificationRow>
    {
        vector<ClassificationRow> rows;
        auto patterns = looped_patterns(n);
        for (size_t index = 0 ; index < patterns.size() ; ++index) {
            ClassificationRow row{ index, patterns[index], recognize(patterns[index]), RowOutcome::Consistent, std::nullopt };

            auto bounds = options.bounds;
            if (row.verdict.panchromatic()) {
                bounds.min_vertices = 1;
                bounds.max_vertices = options.coherence_vertices;
                auto r = falsify(row.pattern, bounds);
                row.searched_up_to = r.vertices_completed;
                if (r.counterexample) {
                    row.outcome = RowOutcome::Fatal;
                    row.counterexample = std::move(r.counterexample);
                }
                else if (r.budget_exceeded)
                    row.outcome = RowOutcome::BudgetExceeded;
            }
            else {
                row.outcome = RowOutcome::Unwitnessed;
                int from = 1;
                for (auto level : options.escalation) {
                    bounds.min_vertices = from;
                    bounds.max_vertices = level;
                    auto r = falsify(row.pattern, bounds);
                    row.searched_up_to = r.vertices_completed;
                    if (r.counterexample) {
                        row.outcome = RowOutcome::Witnessed;
                        row.counterexample = std::move(r.counterexample);
                        row.witnessed_at = level;
                        break;
                    }
                    if (r.budget_exceeded) {
                        row.outcome = RowOutcome::BudgetExceeded;
                        break;
                    }
                    from = level + 1;
                }
            }

            if (progress)
                progress(row);
            rows.push_back(std::move(row));
        }
        return rows;
    }

    auto counterexample_file_name(const ClassificationRow & row) -> string
    {
        std::ostringstream s;
        s << "cex_" << std::setw(3) << std::setfill('0') << row.index << ".inst";
        return s.str();
    }

    auto format_arcs(const Digraph & d) -> string
    {
        string result;
        for (auto [u, v] : d.arcs()) {
            if (! result.empty())
                result += ' ';
            result += to_string(u) + ">" + to_string(v);
        }
        return result;
    }

    auto format_report(int order, const ClassifyOptions & options, span<const ClassificationRow> rows) -> string
    {
        std::ostringstream out;
        out << "# classification of fully looped patterns of order " << order << "\n";
        out << "# escalation";
        for (auto l : options.escalation)
            out << ' ' << l;
        out << "; coherence bound " << options.coherence_vertices
            << "; loops in instances " << (options.bounds.allow_loops ? "yes" : "no") << "\n";
        out << "#index\tarcs\tverdict\toutcome\twitness\tbounds\n";

        size_t panchromatic = 0, witnessed = 0, unwitnessed = 0, fatal = 0, budget = 0;
        for (auto & row : rows) {
            out << row.index << '\t' << format_arcs(row.pattern.graph) << '\t'
                << (row.verdict.panchromatic() ? "PANCHROMATIC" : "NOT-PANCHROMATIC") << '\t'
                << to_string(row.outcome) << '\t';

            if (row.counterexample)
                out << counterexample_file_name(row);
            else if (row.verdict.certificate)
                out << to_string(*row.verdict.certificate);
            else
                out << '-';
            out << '\t';

            switch (row.outcome) {
                case RowOutcome::Witnessed:
                    out << "found n=" << row.counterexample->instance.size() << " at level " << row.witnessed_at;
                    break;
                case RowOutcome::Fatal:
                    out << "theorem violation n=" << row.counterexample->instance.size();
                    break;
                case RowOutcome::Consistent:
                case RowOutcome::Unwitnessed:
                    out << "no counterexample within n<=" << row.searched_up_to;
                    break;
                case RowOutcome::BudgetExceeded:
                    out << "time budget exceeded after n<=" << row.searched_up_to;
                    break;
            }
            out << '\n';

            panchromatic += row.verdict.panchromatic();
            witnessed += row.outcome == RowOutcome::Witnessed;
            unwitnessed += row.outcome == RowOutcome::Unwitnessed;
            fatal += row.outcome == RowOutcome::Fatal;
            budget += row.outcome == RowOutcome::BudgetExceeded;
        }

        out << "# classes " << rows.size() << " panchromatic " << panchromatic << " witnessed " << witnessed
            << " unwitnessed " << unwitnessed << " fatal " << fatal << " budget-exceeded " << budget << "\n";
        if (unwitnessed) {
            out << "# negatives without a counterexample within bounds (not a membership claim):";
            for (auto & row : rows)
                if (row.outcome == RowOutcome::Unwitnessed)
                    out << ' ' << row.index << "@n<=" << row.searched_up_to;
            out << "\n";
        }
        return out.str();
    }
}
