#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gptdyn {

/// gptdyn <analyze|solve|verify|mub|theorem|demo> [--builtin NAME | --theory FILE]
///        [--branch LABEL] [--transform FILE] [--labels A,B,..] [--format text|json]
///
/// `args` excludes the program name. Returns the process exit code: 0 on
/// success, 2 on usage, parse or validation errors, 1 when `theorem` or
/// `demo` finds a violated theorem assertion.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace gptdyn
