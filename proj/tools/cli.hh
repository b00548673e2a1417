/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef HKERNEL_GUARD_TOOLS_CLI_HH
#define HKERNEL_GUARD_TOOLS_CLI_HH 1

#include <iosfwd>
#include <string>
#include <vector>

namespace hkernel::cli
{
    enum ExitCode : int
    {
        positive = 0,
        negative = 1,
        input_error = 2,
        budget_exceeded = 3
    };

    /// Runs one subcommand; args excludes the program name.
    auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;
}

#endif
