#pragma once

#include <iosfwd>

namespace hsc::cli {

// Entry point behind `hsc`; returns the process exit status.
int run_app(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hsc::cli
