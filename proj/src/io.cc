/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <hkernel/io.hh>

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

using std::string;
using std::string_view;
using std::vector;

namespace hkernel
{
    using std::to_string;

    ParseError::ParseError(int l, const string & message) :
        std::runtime_error("line " + to_string(l) + ": " + message),
        line(l)
    {
    }

    namespace
    {
        struct Line
        {
            int number;
            vector<string_view> tokens;
        };

        auto tokenise(string_view text) -> vector<Line>
        {
            vector<Line> result;
            int number = 0;
            while (! text.empty()) {
                auto eol = text.find('\n');
                auto line = text.substr(0, eol);
                text = (eol == string_view::npos) ? string_view{} : text.substr(eol + 1);
                ++number;

                if (auto hash = line.find('#') ; hash != string_view::npos)
                    line = line.substr(0, hash);

                Line l{ number, {} };
                size_t pos = 0;
                while (pos < line.size()) {
                    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r'))
                        ++pos;
                    auto start = pos;
                    while (pos < line.size() && ! (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r'))
                        ++pos;
                    if (pos > start)
                        l.tokens.push_back(line.substr(start, pos - start));
                }
                if (! l.tokens.empty())
                    result.push_back(std::move(l));
            }
            return result;
        }

        auto to_int(const Line & l, string_view token, const char * what) -> int
        {
            int value = 0;
            auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc{} || ptr != token.data() + token.size())
                throw ParseError{ l.number, string("expected integer ") + what + ", got '" + string(token) + "'" };
            return value;
        }

        auto check_vertex(const Line & l, int v, int n) -> void
        {
            if (v < 0 || v >= n)
                throw ParseError{ l.number, "vertex " + to_string(v) + " out of range 0.." + to_string(n - 1) };
        }

        auto emit_comment(std::ostringstream & out, string_view comment) -> void
        {
            while (! comment.empty()) {
                auto eol = comment.find('\n');
                out << "# " << comment.substr(0, eol) << '\n';
                comment = (eol == string_view::npos) ? string_view{} : comment.substr(eol + 1);
            }
        }
    }

    auto parse_pattern(string_view text) -> Pattern
    {
        auto lines = tokenise(text);
        if (lines.empty())
            throw ParseError{ 1, "empty pattern file, expected 'pattern <n>'" };

        auto & header = lines.front();
        if (header.tokens.size() != 2 || header.tokens[0] != "pattern")
            throw ParseError{ header.number, "malformed header, expected 'pattern <n>'" };
        int n = to_int(header, header.tokens[1], "vertex count");
        if (n < 1)
            throw ParseError{ header.number, "vertex count must be at least 1" };

        Pattern h{ Digraph(n) };
        for (size_t i = 1 ; i < lines.size() ; ++i) {
            auto & l = lines[i];
            if (l.tokens.size() != 2)
                throw ParseError{ l.number, "expected '<u> <v>'" };
            int u = to_int(l, l.tokens[0], "tail"), v = to_int(l, l.tokens[1], "head");
            check_vertex(l, u, n);
            check_vertex(l, v, n);
            if (! h.graph.add_arc(u, v))
                throw ParseError{ l.number, "duplicate arc " + to_string(u) + " " + to_string(v) };
        }
        return h;
    }

    auto parse_instance(string_view text) -> ColouredInstance
    {
        auto lines = tokenise(text);
        if (lines.empty())
            throw ParseError{ 1, "empty instance file, expected 'coloured-digraph <n> over <k>'" };

        auto & header = lines.front();
        if (header.tokens.size() != 4 || header.tokens[0] != "coloured-digraph" || header.tokens[2] != "over")
            throw ParseError{ header.number, "malformed header, expected 'coloured-digraph <n> over <k>'" };
        int n = to_int(header, header.tokens[1], "vertex count");
        int k = to_int(header, header.tokens[3], "colour count");
        if (n < 1 || n > max_instance_vertices)
            throw ParseError{ header.number, "vertex count must be in 1.." + to_string(max_instance_vertices) };
        if (k < 1)
            throw ParseError{ header.number, "colour count must be at least 1" };

        ColouredInstance inst(n, k);
        for (size_t i = 1 ; i < lines.size() ; ++i) {
            auto & l = lines[i];
            if (l.tokens.size() != 3)
                throw ParseError{ l.number, "expected '<u> <v> <c>'" };
            int u = to_int(l, l.tokens[0], "tail"), v = to_int(l, l.tokens[1], "head"), c = to_int(l, l.tokens[2], "colour");
            check_vertex(l, u, n);
            check_vertex(l, v, n);
            if (c < 0 || c >= k)
                throw ParseError{ l.number, "colour " + to_string(c) + " out of range 0.." + to_string(k - 1) };
            if (inst.digraph().has_arc(u, v))
                throw ParseError{ l.number, "duplicate arc " + to_string(u) + " " + to_string(v) };
            inst.add_arc(u, v, c);
        }
        return inst;
    }

    auto format_pattern(const Pattern & h, string_view comment) -> string
    {
        std::ostringstream out;
        emit_comment(out, comment);
        out << "pattern " << h.size() << '\n';
        for (auto [u, v] : h.graph.arcs())
            out << u << ' ' << v << '\n';
        return out.str();
    }

    auto format_instance(const ColouredInstance & inst, string_view comment) -> string
    {
        std::ostringstream out;
        emit_comment(out, comment);
        out << "coloured-digraph " << inst.size() << " over " << inst.colour_count() << '\n';
        for (auto [u, v] : inst.digraph().arcs())
            out << u << ' ' << v << ' ' << inst.colour(u, v) << '\n';
        return out.str();
    }

    auto read_file(const string & path) -> string
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw std::runtime_error{ "cannot open '" + path + "' for reading" };
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }

    auto write_file(const string & path, string_view contents) -> void
    {
        std::ofstream out(path, std::ios::binary);
        if (! out)
            throw std::runtime_error{ "cannot open '" + path + "' for writing" };
        out << contents;
        if (! out)
            throw std::runtime_error{ "failed writing '" + path + "'" };
    }
}
