/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef HKERNEL_GUARD_IO_HH
#define HKERNEL_GUARD_IO_HH 1

#include <hkernel/digraph.hh>

#include <stdexcept>
#include <string>
#include <string_view>

namespace hkernel
{
    class ParseError : public std::runtime_error
    {
        public:
            int line;

            ParseError(int line, const std::string & message);
    };

    /**
     * Pattern files: '#' starts a comment, blank lines are skipped, the first
     * remaining line is "pattern <n>" and every later line is "<u> <v>".
     */
    auto parse_pattern(std::string_view text) -> Pattern;

    /// Instance files: "coloured-digraph <n> over <k>" then "<u> <v> <c>" lines.
    auto parse_instance(std::string_view text) -> ColouredInstance;

    /// Comment lines (without the leading '#') are emitted before the header.
    auto format_pattern(const Pattern & h, std::string_view comment = {}) -> std::string;
    auto format_instance(const ColouredInstance & inst, std::string_view comment = {}) -> std::string;

    auto read_file(const std::string & path) -> std::string;
    auto write_file(const std::string & path, std::string_view contents) -> void;
}

#endif
