#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace orgrisk {

// Exit codes: 0 success, 1 semantic error (validation, intervention, bind
// or store failure), 2 parse or usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orgrisk
