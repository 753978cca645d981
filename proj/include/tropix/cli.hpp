#pragma once

namespace tropix {

// Full command-line surface. Returns the process exit code: 0 on
// success, 1 on usage errors, 2 on data errors.
int dispatch(int argc, const char* const* argv);

}  // namespace tropix
