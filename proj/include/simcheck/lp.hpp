#pragma once

#include <cstddef>
#include <optional>

#include "simcheck/linalg.hpp"

namespace simcheck::lp {

using linalg::DenseMatrix;
using linalg::Vector;

inline constexpr double kFeasibilityTol = 1e-8;
inline constexpr double kPivotTol = 1e-10;
inline constexpr std::size_t kIterationFactor = 50;

/// min cost^T x  s.t.  constraints * x = rhs,  x >= 0.
struct Problem {
  Vector cost;
  DenseMatrix constraints;
  Vector rhs;

  /// Throws Error{DimensionMismatch} or Error{NonFinite}.
  void validate() const;
};

enum class Status {
  Optimal,
  Infeasible,
  Unbounded,
  // Only with Options::objective_cutoff: a feasible basic solution whose
  // objective is already below the cutoff.
  CutoffReached,
};

const char* to_string(Status s);

/// Result of a solve.
///
/// `solution`/`objective` are set for Optimal and CutoffReached.
/// `certificate` is set for
///   Infeasible: y with y^T B <= 0 componentwise and y^T d > 0;
///   Unbounded:  a ray r with B r = 0, r >= 0, cost^T r < 0.
struct Outcome {
  Status status = Status::Infeasible;
  std::optional<Vector> solution;
  std::optional<double> objective;
  std::optional<Vector> certificate;
  std::size_t iterations = 0;
};

struct Options {
  // Stop phase 2 as soon as the basic solution's objective drops below this.
  std::optional<double> objective_cutoff;
};

/// Dense two-phase simplex with Bland's rule.
///
/// Throws Error{CycleLimitExceeded} after kIterationFactor * (m + n) pivots.
Outcome solve(const Problem& problem, const Options& options = {});

/// Phase-1 objective: the minimal total artificial mass needed to satisfy
/// B x + a = d (after sign-normalizing rows so d >= 0). Zero iff feasible.
struct PhaseOneResult {
  double infeasibility = 0.0;
  std::size_t iterations = 0;
};
PhaseOneResult phase_one(const DenseMatrix& constraints, const Vector& rhs);

/// Rechecks the outcome against the problem data at `tol`.
bool check_certificate(const Problem& problem, const Outcome& outcome,
                       double tol = kFeasibilityTol);

}  // namespace simcheck::lp
