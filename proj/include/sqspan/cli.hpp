#pragma once

namespace sqspan {

/// Entry point of the command line tool (gen / triangulate / analyze /
/// route / svg). Returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace sqspan
