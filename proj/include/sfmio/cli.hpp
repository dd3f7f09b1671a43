#pragma once

#include <ostream>

namespace sfmio::cli {

/// Full command-line front end: info, convert, animate, unproject, validate.
/// Diagnostics go to `err`, data (reports, JSON) to `out`.
/// Exit codes: 0 success, 1 usage error, 2 parse or I/O error,
/// 3 representability or empty-input error, 4 validation failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sfmio::cli
