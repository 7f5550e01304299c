#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nabas {

// Runs the command line; args excludes the program name. Returns the exit
// code: 0 verified or success, 2 partial or mismatch, 1 on errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nabas
