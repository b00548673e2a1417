/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "../tools/cli.hh"

#include <hkernel/io.hh>

#include <doctest.h>

#include <filesystem>
#include <unistd.h>
#include <sstream>

using namespace hkernel;
namespace fs = std::filesystem;

namespace
{
    struct Result
    {
        int code;
        std::string out, err;
    };

    auto run(std::vector<std::string> args) -> Result
    {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return { code, out.str(), err.str() };
    }

    struct Scratch
    {
        fs::path dir;

        Scratch()
        {
            dir = fs::temp_directory_path() / ("hkernel-cli-test-" + std::to_string(::getpid()));
            fs::create_directories(dir);
        }

        ~Scratch()
        {
            std::error_code ignored;
            fs::remove_all(dir, ignored);
        }

        auto file(const std::string & name, const std::string & contents) const -> std::string
        {
            auto path = (dir / name).string();
            write_file(path, contents);
            return path;
        }

        auto path(const std::string & name) const -> std::string
        {
            return (dir / name).string();
        }
    };

    const std::string two_k1 = "pattern 2\n0 0\n1 1\n";
    const std::string unlooped = "pattern 1\n";
    const std::string triangle = "coloured-digraph 3 over 1\n0 1 0\n1 2 0\n2 0 0\n";
    const std::string single_arc = "coloured-digraph 2 over 1\n0 1 0\n";
    const std::string path_ab = "coloured-digraph 3 over 2\n0 1 0\n1 2 1\n";
    const std::string a_then_b = "pattern 2\n0 0\n1 1\n0 1\n";
    const std::string b_then_a = "pattern 2\n0 0\n1 1\n1 0\n";
}

TEST_CASE("recognize")
{
    Scratch s;
    auto r = run({ "recognize", s.file("a.pat", two_k1) });
    CHECK(r.code == cli::positive);
    CHECK(r.out == "PANCHROMATIC two-k1-split X={0} Y={1}\n");

    r = run({ "recognize", s.file("b.pat", unlooped) });
    CHECK(r.code == cli::negative);
    CHECK(r.out == "NOT-PANCHROMATIC unlooped-vertex 0\n");

    r = run({ "recognize", s.file("c.pat", "pattern 3\n0 0\n1 1\n2 2\n0 1\n1 2\n") });
    CHECK(r.code == cli::negative);
    CHECK(r.out == "NOT-PANCHROMATIC odd-complement-cycle 0 2 1\n  missing-colour-walk 0 1 missing 2\n  structural-failure 0\n");

    CHECK(run({ "recognize", s.file("d.pat", "pattern 2\n0 5\n") }).code == cli::input_error);
    CHECK(run({ "recognize", s.path("missing.pat") }).code == cli::input_error);
    CHECK(run({}).code == cli::input_error);
    CHECK(run({ "frobnicate" }).code == cli::input_error);
}

TEST_CASE("kernel")
{
    Scratch s;
    auto any = s.file("any.pat", "pattern 1\n0 0\n");
    auto r = run({ "kernel", s.file("arc.inst", single_arc), any });
    CHECK(r.code == cli::positive);
    CHECK(r.out == "KERNEL {1}\n");

    r = run({ "kernel", s.file("tri.inst", triangle), s.file("u.pat", unlooped) });
    CHECK(r.code == cli::negative);
    CHECK(r.out == "NONE\n");

    CHECK(run({ "kernel", s.file("tri2.inst", triangle), s.file("two.pat", two_k1) }).code == cli::input_error);
}

TEST_CASE("reach")
{
    Scratch s;
    auto inst = s.file("path.inst", path_ab);
    auto r = run({ "reach", inst, s.file("ab.pat", a_then_b), "--from", "0", "--to", "2" });
    CHECK(r.code == cli::positive);
    CHECK(r.out == "WALK 0 1 2 COLOURS 0 1\n");

    r = run({ "reach", inst, s.file("ba.pat", b_then_a), "--from", "0", "--to", "2" });
    CHECK(r.code == cli::negative);
    CHECK(r.out == "UNREACHABLE\n");

    r = run({ "reach", s.file("arc.inst", single_arc), s.file("one.pat", "pattern 1\n0 0\n"), "--matrix" });
    CHECK(r.code == cli::positive);
    CHECK(r.out == "0 1\n0 0\n");

    CHECK(run({ "reach", inst, s.path("ab.pat") }).code == cli::input_error);
    CHECK(run({ "reach", inst, s.path("ab.pat"), "--from", "0", "--to", "3" }).code == cli::input_error);
    CHECK(run({ "reach", inst, s.path("ab.pat"), "--matrix", "--from", "0" }).code == cli::input_error);
}

TEST_CASE("p2")
{
    Scratch s;
    auto h = s.file("h.pat", "pattern 3\n0 0\n1 1\n2 2\n0 2\n2 1\n");
    auto none = s.file("none.inst", "coloured-digraph 2 over 3\n0 1 2\n");
    auto r = run({ "p2", none, h, "--u", "0", "--v", "1" });
    CHECK(r.code == cli::positive);
    CHECK(parse_instance(r.out) == parse_instance(read_file(none)));
    CHECK(r.out.find("# added 0\n") != std::string::npos);

    auto path = s.file("path.inst", "coloured-digraph 3 over 3\n0 1 0\n1 2 1\n");
    r = run({ "p2", path, h, "--u", "0", "--v", "1", "-o", s.path("out.inst") });
    CHECK(r.code == cli::positive);
    CHECK(r.out == "added 1\n");
    auto written = parse_instance(read_file(s.path("out.inst")));
    CHECK(written.size() == 4);
    CHECK(written.colour(1, 3) == 2);

    CHECK(run({ "p2", path, h, "--u", "0", "--v", "2" }).code == cli::input_error);
    CHECK(run({ "p2", path, h, "--u", "1", "--v", "0" }).code == cli::input_error);
}

TEST_CASE("contract and expand")
{
    Scratch s;
    auto r = run({ "expand", s.file("two.pat", two_k1), "--sizes", "2,1", "-o", s.path("big.pat") });
    CHECK(r.code == cli::positive);
    CHECK(read_file(s.path("big.pat")) == "pattern 3\n0 0\n0 1\n1 0\n1 1\n2 2\n");

    r = run({ "contract", s.path("big.pat"), "--parts", "0,1|2" });
    CHECK(r.code == cli::positive);
    CHECK(r.out == two_k1);

    r = run({ "contract", s.path("big.pat"), "--parts", "0,2|1" });
    CHECK(r.code == cli::negative);
    CHECK_FALSE(r.err.empty());

    CHECK(run({ "contract", s.path("big.pat"), "--parts", "0,1" }).code == cli::input_error);
    CHECK(run({ "contract", s.path("big.pat"), "--parts", "0,x|1,2" }).code == cli::input_error);
    CHECK(run({ "expand", s.path("two.pat"), "--sizes", "2" }).code == cli::input_error);
}

TEST_CASE("falsify")
{
    Scratch s;
    auto r = run({ "falsify", s.file("two.pat", two_k1), "--max-vertices", "3" });
    CHECK(r.code == cli::negative);
    CHECK(r.out == "EXHAUSTED max_vertices=3\n");

    r = run({ "falsify", s.file("u.pat", unlooped), "-o", s.path("cex.inst") });
    CHECK(r.code == cli::positive);
    CHECK(r.out.rfind("COUNTEREXAMPLE n=3 arcs=3", 0) == 0);
    auto cex = parse_instance(read_file(s.path("cex.inst")));
    CHECK(cex.digraph().arc_count() == 3);

    auto serial = run({ "falsify", s.path("u.pat"), "--serial" });
    auto parallel = run({ "falsify", s.path("u.pat"), "--jobs", "2" });
    CHECK(serial.out == parallel.out);

    r = run({ "falsify", s.path("two.pat"), "--max-vertices", "6", "--time-budget", "0.001" });
    CHECK(r.code == cli::budget_exceeded);
    CHECK(r.out.rfind("BUDGET-EXCEEDED", 0) == 0);

    CHECK(run({ "falsify", s.path("two.pat"), "--max-vertices", "9" }).code == cli::input_error);
    CHECK(run({ "falsify", s.path("two.pat"), "--min-vertices", "3", "--max-vertices", "2" }).code == cli::input_error);
}

TEST_CASE("classify")
{
    Scratch s;
    auto r = run({ "classify", "--order", "2", "--levels", "3", "--coherence-vertices", "3", "--out-dir", s.path("out") });
    CHECK(r.code == cli::positive);
    CHECK(r.out.find("# classes 3 panchromatic 3 witnessed 0 unwitnessed 0 fatal 0 budget-exceeded 0\n") != std::string::npos);
    CHECK(read_file(s.path("out") + "/report.tsv") == r.out);

    r = run({ "classify", "--order", "3", "--levels", "3", "--coherence-vertices", "3", "--out-dir", s.path("three") });
    CHECK(r.code == cli::negative);
    CHECK(r.out.find("# classes 16 panchromatic 5 ") != std::string::npos);
    CHECK(fs::exists(s.path("three") + "/cex_000.inst"));
    CHECK(r.out.find("# negatives without a counterexample within bounds") != std::string::npos);

    CHECK(run({ "classify", "--order", "5" }).code == cli::input_error);
    CHECK(run({ "classify", "--order", "3", "--levels", "4,3" }).code == cli::input_error);
}

TEST_CASE("outputs repeat byte for byte")
{
    Scratch s;
    auto h = s.file("h.pat", "pattern 3\n0 0\n1 1\n2 2\n0 1\n1 2\n");
    auto inst = s.file("i.inst", "coloured-digraph 4 over 3\n0 1 0\n1 2 1\n2 3 2\n3 0 0\n1 3 1\n");
    std::vector<std::vector<std::string>> commands{
        { "recognize", h },
        { "kernel", inst, h },
        { "reach", inst, h, "--matrix" },
        { "reach", inst, h, "--from", "0", "--to", "3" },
        { "p2", inst, h, "--u", "0", "--v", "2" },
        { "contract", h, "--parts", "0|1|2" },
        { "expand", h, "--sizes", "1,2,1" },
        { "falsify", h, "--max-vertices", "3" },
        { "classify", "--order", "2", "--levels", "3", "--coherence-vertices", "3" }
    };
    for (auto & c : commands) {
        auto first = run(c), second = run(c);
        CHECK(first.code == second.code);
        CHECK(first.out == second.out);
        CHECK(first.err == second.err);
    }
}
