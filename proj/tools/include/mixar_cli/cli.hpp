#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mixar::cli {

/// Runs the command line in-process. Returns the exit code: 0 on success,
/// 2 for usage errors, otherwise mixar::exit_code of the failing error kind.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mixar::cli
