#pragma once

namespace attnkern {

// Entry point behind the attnkern binary. Returns the process exit code:
// 0 success, 2 argument, 3 format, 4 numerical, 5 resource, 6 io, 1 internal.
int run_cli(int argc, char** argv);

} // namespace attnkern
