#pragma once

#include <iosfwd>

namespace eqbearing {

/// Entry point of the eqbearing_sim tool. CSV (or per-run metrics for
/// --runs > 1) goes to `out` unless --out is given; diagnostics go to `err`.
/// Returns 0 on success, 1 on configuration or runtime errors and 2 on
/// command-line usage errors.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eqbearing
