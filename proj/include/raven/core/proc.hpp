#pragma once

#include <string>
#include <vector>

namespace raven::core {

struct ProcessResult {
    int exit_code = -1;
    std::string out;  // captured stdout
};

// Runs argv[0] with the given arguments, capturing stdout (stderr passes
// through). Throws std::runtime_error if the process cannot be spawned.
ProcessResult run_process(const std::vector<std::string>& argv);

}  // namespace raven::core
