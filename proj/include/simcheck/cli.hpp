#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "simcheck/pmf.hpp"
#include "simcheck/simulatability.hpp"

namespace simcheck::cli {

/// Process exit codes.
enum ExitCode : int { kHolds = 0, kDoesNotHold = 1, kError = 2 };

/// {"x": [...], "y": [...], "z": [...], "p": [[[...]]]} with p indexed
/// [x][y][z]. Entries are JSON numbers or strings such as "6/100"; a table
/// given entirely as strings is kept exactly. Label arrays are optional.
/// Throws Error{ParseError} for schema violations.
JointPMF parse_pmf(const nlohmann::json& doc);
JointPMF load_pmf(const std::string& path);
nlohmann::json pmf_to_json(const JointPMF& p);

nlohmann::json verdict_to_json(const Verdict& v, Direction direction, const CheckOptions& opts);

/// "0.1,0.2,0.3" or an inclusive range "start:stop:step".
std::vector<double> parse_values(std::string_view spec);

/// Positive comma-separated list for the attack cost vector.
Vector parse_cost(std::string_view spec);

struct SweepRow {
  double alpha = 0.0;
  double gamma = 0.0;
  bool holds = false;
};

/// Template file for `sweep`: {"construction": "binary_symmetric_erasure",
/// "direction": "y"}. The direction field is optional.
struct SweepTemplate {
  std::string construction;
  Direction direction = Direction::YFixedZToX;
};
SweepTemplate parse_sweep_template(const nlohmann::json& doc);

/// Throws Error{InvalidArgument} if any value lies outside (0, 1).
std::vector<SweepRow> run_sweep(const SweepTemplate& tmpl, const std::vector<double>& alphas,
                                const std::vector<double>& gammas, const CheckOptions& opts);

/// Entry point behind the `simcheck` executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace simcheck::cli
