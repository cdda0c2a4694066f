#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ptrs {

/// Entry point of the `ptrs` binary. Exit codes: 0 = YES or success,
/// 1 = MAYBE, 2 = usage or internal error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ptrs
