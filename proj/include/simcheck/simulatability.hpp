#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "simcheck/linalg.hpp"
#include "simcheck/pmf.hpp"

namespace simcheck {

using linalg::Index;
using linalg::Vector;

inline constexpr double kVerdictTol = 1e-8;
inline constexpr double kGInverseTol = 1e-10;

/// The stacked system  [A (x) I ; I_|Z| (x) 1^T] q = [vec_t(C) ; 1]
/// whose nonnegative solutions q = vec_t(Q) are exactly the row-stochastic
/// Q with A Q = C.
struct LinearSystem {
  DenseMatrix a_big;  // m x n
  Vector c_vec;       // m
  Index m = 0;        // |Y||X| + |Z|
  Index n = 0;        // |Z||X|
  Alphabets dims;

  /// The |Y| x |Z| and |Y| x |X| blocks the system was built from.
  DenseMatrix a;
  DenseMatrix c;
};

/// Throws Error{DimensionMismatch, NegativeMass, MarginalMismatch}.
LinearSystem build_system(const DenseMatrix& a, const DenseMatrix& c);

struct Consistency {
  bool consistent = false;
  Index rank_a = 0;
  Index rank_aug = 0;
};

/// Rank of the coefficient matrix against the augmented matrix [a_big | c_vec].
/// rel_tol defaults to the per-matrix max(m, n) * eps.
Consistency consistency(const LinearSystem& sys, std::optional<double> rel_tol = std::nullopt);

enum class HStarSign { Zero, Negative };

struct FarkasResult {
  HStarSign sign = HStarSign::Zero;
  double h_star = 0.0;      // achieved optimum of the normalized LP
  Vector witness;           // t >= 0 with (I - G A)^T t = 0 and t^T G c < 0; empty when Zero
  std::size_t iterations = 0;
  Index lp_rows = 0;
  Index lp_cols = 0;
};

struct FarkasOptions {
  double tol_verdict = kVerdictTol;
  // Stop the LP at the first basic solution with objective < -tol_verdict.
  bool early_stop = false;
};

/// Sign of  min t^T (G c)  over  t >= 0, (I - G A)^T t = 0, 1^T t <= 1,
/// for a g-inverse G of the system matrix. Zero means a nonnegative solution
/// exists (given consistency).
///
/// Throws Error{NotAGInverse} if ||A G A - A||_max > kGInverseTol.
FarkasResult farkas_check(const LinearSystem& sys, const DenseMatrix& g_inv,
                          const FarkasOptions& opts = {});

/// Same decision through the null-space parametrization: with s = n - rank
/// and N the last s right singular vectors, decides whether N w <= A^+ c has a
/// solution. The returned witness t satisfies N^T t = 0, which makes it a
/// witness for farkas_check with the pseudoinverse as well.
FarkasResult reduced_farkas_check(const LinearSystem& sys, const FarkasOptions& opts = {},
                                  std::optional<double> rel_tol_rank = std::nullopt);

enum class Direction {
  YFixedZToX,  // is X simulatable by Z with respect to Y
  XFixedZToY,  // is Y simulatable by Z with respect to X
};

enum class EvalPath {
  Auto,     // reduced when s < n / 2, otherwise full
  Full,
  Reduced,
};

enum class VerdictReason { RankMismatch, NegativeHStar, HStarZero };

const char* to_string(VerdictReason r);
const char* to_string(Direction d);

struct CheckOptions {
  std::optional<double> tol_rank;  // relative singular value cutoff
  double tol_verdict = kVerdictTol;
  EvalPath path = EvalPath::Auto;
  bool early_stop = false;
};

struct VerdictTrace {
  std::string g_inverse;  // "moore-penrose"
  bool reduction_used = false;
  std::size_t solver_iterations = 0;
  Index null_dim = 0;  // s = n - rank
  Index lp_rows = 0;
  Index lp_cols = 0;
  double lp_objective = 0.0;  // raw optimum, before the sign decision
};

struct Verdict {
  bool holds = false;
  VerdictReason reason = VerdictReason::RankMismatch;
  std::optional<double> h_star;
  Index rank_a = 0;
  Index rank_aug = 0;
  Index m = 0;
  Index n = 0;
  Vector witness;
  VerdictTrace trace;
};

/// Rank test followed by the Farkas LP, on an already built system.
Verdict check_system(const LinearSystem& sys, const CheckOptions& opts = {});

/// Full pipeline from a joint distribution. Validates p first.
Verdict check_simulatability(const JointPMF& p, Direction direction = Direction::YFixedZToX,
                             const CheckOptions& opts = {});

/// Rescales each row of c to the matching row sum of a. For marginal pairs
/// given with rounded entries, whose P_Y rows disagree in the last digit.
DenseMatrix reconcile_rows(const DenseMatrix& a, const DenseMatrix& c);

}  // namespace simcheck
