#pragma once

#include <string>
#include <vector>

namespace slantsurf {

// Entry point shared by the binary and the tests. Returns the process exit
// code; every failure path prints a single "error: <Kind>: <message>" line
// to stderr.
int run_cli(const std::vector<std::string>& args);

}  // namespace slantsurf
