#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "whfactor/tolerances.hpp"
#include "whfactor/wiener_hopf.hpp"

namespace whfactor::cli {

// Settings shared by all subcommands. Precedence, lowest first: built-in
// defaults, --config file, WHFACTOR_TOL_* environment variables, flags.
struct JobConfig {
  std::string input;
  std::string command;
  int grid_points = 512;
  int quadrature_order = 256;
  SplitStrategy dsplit = SplitStrategy::kLeftIdentity;
  Side side = Side::kRight;
  Tolerances tol;
  std::string output;  // empty means standard output
};

/// Applies a JSON config object; unknown keys raise InvalidArgument.
void apply_config_json(const std::string& text, JobConfig& config);

/// Reads WHFACTOR_TOL_<NAME> for each tolerance field.
void apply_tolerance_env(Tolerances& tol);

/// Exit codes: 0 success, 2 failed mathematical check, 1 anything else.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace whfactor::cli
