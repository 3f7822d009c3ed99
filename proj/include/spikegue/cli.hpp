#pragma once

namespace spikegue {

// Full command-line surface (simulate / kernel / measure / verify).
// Returns the process exit code: 0 success, 1 runtime or verification
// failure, 2 usage or configuration error.
int run_cli(int argc, char** argv);

}  // namespace spikegue
