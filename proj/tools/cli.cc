/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "cli.hh"

#include <hkernel/digraph.hh>
#include <hkernel/hwalk.hh>
#include <hkernel/io.hh>
#include <hkernel/kernel.hh>
#include <hkernel/recognizer.hh>
#include <hkernel/reductions.hh>
#include <hkernel/search.hh>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

using std::optional;
using std::ostream;
using std::string;
using std::vector;

namespace hkernel::cli
{
    using std::to_string;

    namespace
    {
        struct InputError : std::runtime_error
        {
            using std::runtime_error::runtime_error;
        };

        auto load_pattern(const string & path) -> Pattern
        {
            try {
                return parse_pattern(read_file(path));
            }
            catch (const ParseError & e) {
                throw InputError{ path + ": " + e.what() };
            }
        }

        auto load_instance(const string & path) -> ColouredInstance
        {
            try {
                return parse_instance(read_file(path));
            }
            catch (const ParseError & e) {
                throw InputError{ path + ": " + e.what() };
            }
        }

        auto check_colours(const ColouredInstance & inst, const Pattern & h) -> void
        {
            if (inst.colour_count() != h.size())
                throw InputError{ ColourCountMismatch(inst.colour_count(), h.size()).what() };
        }

        auto emit(const string & text, const string & output, ostream & out) -> void
        {
            if (output.empty())
                out << text;
            else
                write_file(output, text);
        }

        auto parse_parts(const string & spec, int n) -> VertexPartition
        {
            vector<VertexSet> parts;
            std::istringstream groups(spec);
            string group;
            while (std::getline(groups, group, '|')) {
                VertexSet part;
                std::istringstream items(group);
                string item;
                while (std::getline(items, item, ','))
                    try {
                        size_t used = 0;
                        part.push_back(std::stoi(item, &used));
                        if (used != item.size())
                            throw std::invalid_argument{ item };
                    }
                    catch (const std::logic_error &) {
                        throw InputError{ "bad vertex '" + item + "' in --parts" };
                    }
                parts.push_back(std::move(part));
            }
            return VertexPartition{ std::move(parts), n };
        }

        struct SearchFlags
        {
            int min_vertices = 1;
            int max_vertices = 3;
            bool loops = false;
            optional<int> max_arcs;
            optional<std::uint64_t> colouring_cap;
            optional<double> time_budget;
            bool no_symmetry = false;
            int jobs = 0;

            auto add_to(CLI::App * app) -> void
            {
                app->add_flag("--loops", loops, "allow loops in instance digraphs");
                app->add_option("--max-arcs", max_arcs, "skip instance digraphs with more arcs")->check(CLI::NonNegativeNumber);
                app->add_option("--colouring-cap", colouring_cap, "skip instance digraphs with more colourings");
                app->add_option("--time-budget", time_budget, "seconds per search before giving up")->check(CLI::PositiveNumber);
                app->add_flag("--no-symmetry", no_symmetry, "visit colourings equivalent under pattern automorphisms");
                app->add_option("--jobs", jobs, "worker threads, 0 for the OpenMP default")->check(CLI::NonNegativeNumber);
            }

            auto bounds() const -> SearchBounds
            {
                SearchBounds b;
                b.min_vertices = min_vertices;
                b.max_vertices = max_vertices;
                b.allow_loops = loops;
                b.max_arcs = max_arcs;
                b.colouring_cap = colouring_cap;
                if (time_budget)
                    b.time_budget = std::chrono::milliseconds(long(*time_budget * 1000.0));
                b.symmetry_pruning = ! no_symmetry;
                b.jobs = jobs;
                return b;
            }
        };

        auto cmd_recognize(const string & pattern_path, ostream & out) -> int
        {
            auto h = load_pattern(pattern_path);
            auto verdict = recognize(h);
            if (verdict.panchromatic()) {
                out << "PANCHROMATIC " << to_string(*verdict.certificate) << '\n';
                return positive;
            }

            out << "NOT-PANCHROMATIC";
            for (size_t i = 0 ; i < verdict.refutations.size() ; ++i)
                out << (i == 0 ? " " : "  ") << to_string(verdict.refutations[i]) << '\n';
            if (verdict.refutations.empty())
                out << '\n';
            return negative;
        }

        auto cmd_kernel(const string & instance_path, const string & pattern_path, ostream & out) -> int
        {
            auto inst = load_instance(instance_path);
            auto h = load_pattern(pattern_path);
            check_colours(inst, h);
            if (auto k = find_h_kernel(inst, h)) {
                out << "KERNEL " << format_set(*k) << '\n';
                return positive;
            }
            out << "NONE\n";
            return negative;
        }

        auto cmd_reach(const string & instance_path, const string & pattern_path, optional<int> from, optional<int> to,
                bool matrix, ostream & out) -> int
        {
            auto inst = load_instance(instance_path);
            auto h = load_pattern(pattern_path);
            check_colours(inst, h);

            if (matrix) {
                auto r = h_reach(inst, h);
                for (int u = 0 ; u < r.size() ; ++u) {
                    for (int v = 0 ; v < r.size() ; ++v)
                        out << (v ? " " : "") << (r(u, v) ? 1 : 0);
                    out << '\n';
                }
                return positive;
            }

            if (! from || ! to)
                throw InputError{ "reach needs --from and --to, or --matrix" };
            for (int x : { *from, *to })
                if (x < 0 || x >= inst.size())
                    throw InputError{ "vertex " + std::to_string(x) + " out of range 0.." + std::to_string(inst.size() - 1) };

            auto walk = witness_walk(inst, h, *from, *to);
            if (! walk) {
                out << "UNREACHABLE\n";
                return negative;
            }
            out << "WALK";
            for (auto x : *walk)
                out << ' ' << x;
            out << " COLOURS";
            for (auto c : colour_sequence(inst, *walk))
                out << ' ' << c;
            out << '\n';
            return positive;
        }

        auto cmd_p2(const string & instance_path, const string & pattern_path, int u, int v, optional<int> z,
                const string & output, ostream & out) -> int
        {
            auto inst = load_instance(instance_path);
            auto h = load_pattern(pattern_path);
            if (u < 0 || u >= h.size() || v < 0 || v >= h.size())
                throw InputError{ "--u and --v must be pattern vertices" };
            if (! z) {
                z = smallest_midpoint(h, u, v);
                if (! z)
                    throw InputError{ "no z with (" + std::to_string(u) + ",z) and (z," + std::to_string(v) + ") in the pattern" };
            }

            P2Transform t = [&] {
                try {
                    return p2_transform(inst, h, u, v, *z);
                }
                catch (const P2PreconditionError & e) {
                    throw InputError{ e.what() };
                }
            }();

            emit(format_instance(t.transformed, describe(t)), output, out);
            if (! output.empty())
                out << "added " << t.twins_of.size() << '\n';
            return positive;
        }

        auto cmd_contract(const string & pattern_path, const string & parts, const string & output,
                ostream & out, ostream & err) -> int
        {
            auto h = load_pattern(pattern_path);
            auto partition = [&] {
                try {
                    return parse_parts(parts, h.size());
                }
                catch (const InvalidDigraph & e) {
                    throw InputError{ e.what() };
                }
            }();
            try {
                emit(format_pattern(contract(h, partition)), output, out);
                return positive;
            }
            catch (const PartitionInvalid & e) {
                err << e.what() << '\n';
                return negative;
            }
        }

        auto cmd_expand(const string & pattern_path, const vector<int> & sizes, const string & output, ostream & out) -> int
        {
            auto h = load_pattern(pattern_path);
            try {
                emit(format_pattern(expand(h, sizes)), output, out);
            }
            catch (const InvalidDigraph & e) {
                throw InputError{ e.what() };
            }
            return positive;
        }

        auto cmd_falsify(const string & pattern_path, const SearchFlags & flags, bool serial, const string & output,
                bool verbose, ostream & out, ostream & err) -> int
        {
            auto h = load_pattern(pattern_path);
            auto bounds = flags.bounds();
            auto result = serial ? falsify_serial(h, bounds) : falsify(h, bounds);

            if (verbose)
                err << "searched " << result.digraphs_searched << " digraphs, " << result.colourings_checked
                    << " colourings, skipped " << result.digraphs_skipped << '\n';

            if (result.counterexample) {
                auto & inst = result.counterexample->instance;
                out << "COUNTEREXAMPLE n=" << inst.size() << " arcs=" << inst.digraph().arc_count()
                    << " digraph=" << result.counterexample->digraph_index << '\n';
                auto text = format_instance(inst, "counterexample: no kernel by walks for pattern " + format_arcs(h.graph));
                if (output.empty())
                    out << text;
                else {
                    write_file(output, text);
                    out << "written " << output << '\n';
                }
                return positive;
            }

            if (result.budget_exceeded) {
                out << "BUDGET-EXCEEDED completed n<=" << result.vertices_completed << '\n';
                return budget_exceeded;
            }

            out << "EXHAUSTED max_vertices=" << bounds.max_vertices;
            if (result.digraphs_skipped)
                out << " skipped_digraphs=" << result.digraphs_skipped;
            out << '\n';
            return negative;
        }

        auto cmd_classify(int order, const vector<int> & levels, int coherence, const SearchFlags & flags,
                const string & out_dir, bool verbose, ostream & out, ostream & err) -> int
        {
            if (order < 1 || order > 4)
                throw InputError{ "--order must be in 1..4" };
            if (levels.empty() || ! std::is_sorted(levels.begin(), levels.end()) || levels.front() < 1)
                throw InputError{ "--levels must be an increasing list of positive orders" };

            ClassifyOptions options;
            options.escalation = levels;
            options.coherence_vertices = coherence;
            options.bounds = flags.bounds();

            auto rows = classify_order(order, options, [&] (const ClassificationRow & row) {
                if (verbose)
                    err << "pattern " << row.index << ": " << to_string(row.outcome) << '\n';
            });

            auto report = format_report(order, options, rows);
            out << report;

            if (! out_dir.empty()) {
                std::filesystem::create_directories(out_dir);
                auto dir = std::filesystem::path(out_dir);
                write_file((dir / "report.tsv").string(), report);
                for (auto & row : rows)
                    if (row.counterexample)
                        write_file((dir / counterexample_file_name(row)).string(),
                                format_instance(row.counterexample->instance,
                                    "counterexample for pattern " + format_arcs(row.pattern.graph)));
            }

            bool budget = std::any_of(rows.begin(), rows.end(), [] (auto & r) { return r.outcome == RowOutcome::BudgetExceeded; });
            bool bad = std::any_of(rows.begin(), rows.end(), [] (auto & r) {
                    return r.outcome == RowOutcome::Fatal || r.outcome == RowOutcome::Unwitnessed; });
            if (budget)
                return budget_exceeded;
            return bad ? negative : positive;
        }
    }

    auto run(const vector<string> & args, ostream & out, ostream & err) -> int
    {
        CLI::App app{ "Kernels by H-walks in arc-coloured digraphs", "hkernel" };
        app.require_subcommand(1);
        bool verbose = false;
        app.add_flag("-v,--verbose", verbose, "progress on standard error");

        string pattern_path, instance_path, output;

        auto recognize_cmd = app.add_subcommand("recognize", "decide whether a pattern is panchromatic");
        recognize_cmd->add_option("pattern", pattern_path)->required();

        auto kernel_cmd = app.add_subcommand("kernel", "find the least kernel by H-walks");
        kernel_cmd->add_option("instance", instance_path)->required();
        kernel_cmd->add_option("pattern", pattern_path)->required();

        optional<int> from, to;
        bool matrix = false;
        auto reach_cmd = app.add_subcommand("reach", "H-walk reachability");
        reach_cmd->add_option("instance", instance_path)->required();
        reach_cmd->add_option("pattern", pattern_path)->required();
        auto from_opt = reach_cmd->add_option("--from", from);
        auto to_opt = reach_cmd->add_option("--to", to);
        auto matrix_opt = reach_cmd->add_flag("--matrix", matrix, "print the whole relation");
        matrix_opt->excludes(from_opt)->excludes(to_opt);

        int u = -1, v = -1;
        optional<int> z;
        auto p2_cmd = app.add_subcommand("p2", "simulate a pattern arc closing a path of length two");
        p2_cmd->add_option("instance", instance_path)->required();
        p2_cmd->add_option("pattern", pattern_path)->required();
        p2_cmd->add_option("--u", u)->required();
        p2_cmd->add_option("--v", v)->required();
        p2_cmd->add_option("--z", z, "midpoint colour, default the smallest valid one");
        p2_cmd->add_option("-o,--output", output);

        string parts;
        auto contract_cmd = app.add_subcommand("contract", "quotient a pattern by a partition");
        contract_cmd->add_option("pattern", pattern_path)->required();
        contract_cmd->add_option("--parts", parts, "parts separated by '|', vertices by ','")->required();
        contract_cmd->add_option("-o,--output", output);

        vector<int> sizes;
        auto expand_cmd = app.add_subcommand("expand", "blow up each pattern vertex into a complete block");
        expand_cmd->add_option("pattern", pattern_path)->required();
        expand_cmd->add_option("--sizes", sizes, "one block size per vertex")->required()->delimiter(',');
        expand_cmd->add_option("-o,--output", output);

        SearchFlags falsify_flags;
        bool serial = false;
        auto falsify_cmd = app.add_subcommand("falsify", "search for an instance with no kernel");
        falsify_cmd->add_option("pattern", pattern_path)->required();
        falsify_cmd->add_option("--max-vertices", falsify_flags.max_vertices)->check(CLI::Range(1, max_enumeration_order));
        falsify_cmd->add_option("--min-vertices", falsify_flags.min_vertices)->check(CLI::Range(1, max_enumeration_order));
        falsify_flags.add_to(falsify_cmd);
        falsify_cmd->add_flag("--serial", serial, "use the single-threaded reference search");
        falsify_cmd->add_option("-o,--output", output, "counterexample file");

        SearchFlags classify_flags;
        int order = 0, coherence = 4;
        vector<int> levels{ 3, 4, 5 };
        string out_dir;
        auto classify_cmd = app.add_subcommand("classify", "classify every fully looped pattern of one order");
        classify_cmd->add_option("--order", order)->required();
        classify_cmd->add_option("--levels", levels, "instance orders tried for rejected patterns")->delimiter(',');
        classify_cmd->add_option("--coherence-vertices", coherence, "instance order checked for accepted patterns")
            ->check(CLI::Range(1, max_enumeration_order));
        classify_flags.add_to(classify_cmd);
        classify_cmd->add_option("--out-dir", out_dir, "directory for report.tsv and counterexample files");

        try {
            vector<string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        }
        catch (const CLI::CallForHelp &) {
            out << app.help();
            return positive;
        }
        catch (const CLI::CallForAllHelp &) {
            out << app.help("", CLI::AppFormatMode::All);
            return positive;
        }
        catch (const CLI::ParseError & e) {
            err << e.what() << '\n';
            return input_error;
        }

        try {
            if (*recognize_cmd)
                return cmd_recognize(pattern_path, out);
            if (*kernel_cmd)
                return cmd_kernel(instance_path, pattern_path, out);
            if (*reach_cmd)
                return cmd_reach(instance_path, pattern_path, from, to, matrix, out);
            if (*p2_cmd)
                return cmd_p2(instance_path, pattern_path, u, v, z, output, out);
            if (*contract_cmd)
                return cmd_contract(pattern_path, parts, output, out, err);
            if (*expand_cmd)
                return cmd_expand(pattern_path, sizes, output, out);
            if (*falsify_cmd) {
                if (falsify_flags.min_vertices > falsify_flags.max_vertices)
                    throw InputError{ "--min-vertices exceeds --max-vertices" };
                return cmd_falsify(pattern_path, falsify_flags, serial, output, verbose, out, err);
            }
            if (*classify_cmd) {
                classify_flags.max_vertices = levels.empty() ? 1 : levels.back();
                return cmd_classify(order, levels, coherence, classify_flags, out_dir, verbose, out, err);
            }
        }
        catch (const InputError & e) {
            err << "error: " << e.what() << '\n';
            return input_error;
        }
        catch (const std::exception & e) {
            err << "error: " << e.what() << '\n';
            return input_error;
        }
        return input_error;
    }
}
