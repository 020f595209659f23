#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blowup::cli {

// Exit codes: 0 success (negative mathematical answers included), 2 input error, 3 internal inconsistency.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blowup::cli
