#include "simcheck/simulatability.hpp"

#include <cmath>
#include <string>

#include "simcheck/error.hpp"
#include "simcheck/lp.hpp"

namespace simcheck {

namespace {

// min b^T t  s.t.  M t = 0,  1^T t + slack = 1,  t, slack >= 0.
// Always feasible (t = 0) and bounded, so the optimum is finite and <= 0.
FarkasResult normalized_farkas_lp(const DenseMatrix& homogeneous, const Vector& objective,
                                  const FarkasOptions& opts) {
  const Index k = homogeneous.rows();
  const Index nt = homogeneous.cols();
  lp::Problem prob;
  prob.constraints = DenseMatrix::Zero(k + 1, nt + 1);
  prob.constraints.topLeftCorner(k, nt) = homogeneous;
  prob.constraints.row(k).setOnes();
  prob.rhs = Vector::Zero(k + 1);
  prob.rhs(k) = 1.0;
  prob.cost = Vector::Zero(nt + 1);
  prob.cost.head(nt) = objective;

  lp::Options lp_opts;
  if (opts.early_stop) lp_opts.objective_cutoff = -opts.tol_verdict;
  const lp::Outcome out = lp::solve(prob, lp_opts);
  if (out.status != lp::Status::Optimal && out.status != lp::Status::CutoffReached) {
    throw Error(ErrorCode::ConvergenceFailure,
                std::string("normalized Farkas LP returned ") + lp::to_string(out.status));
  }

  FarkasResult res;
  res.h_star = *out.objective;
  res.iterations = out.iterations;
  res.lp_rows = prob.constraints.rows();
  res.lp_cols = prob.constraints.cols();
  if (res.h_star < -opts.tol_verdict) {
    res.sign = HStarSign::Negative;
    res.witness = out.solution->head(nt);
  }
  return res;
}

}  // namespace

LinearSystem build_system(const DenseMatrix& a, const DenseMatrix& c) {
  linalg::require_finite(a, "P_YZ");
  linalg::require_finite(c, "P_YX");
  if (a.rows() != c.rows() || a.rows() == 0 || a.cols() == 0 || c.cols() == 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "P_YZ is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    ", P_YX is " + std::to_string(c.rows()) + "x" + std::to_string(c.cols()));
  }
  if (a.minCoeff() < 0.0 || c.minCoeff() < 0.0) {
    throw Error(ErrorCode::NegativeMass, "marginal tables must be nonnegative");
  }
  for (Index i = 0; i < a.rows(); ++i) {
    const double gap = std::abs(a.row(i).sum() - c.row(i).sum());
    if (gap > kPmfTolerance) {
      throw Error(ErrorCode::MarginalMismatch,
                  "row " + std::to_string(i) + " of P_YZ and P_YX differ by " + std::to_string(gap));
    }
  }

  const Index nx = c.cols();
  const Index ny = a.rows();
  const Index nz = a.cols();
  LinearSystem sys;
  sys.dims = {static_cast<std::size_t>(nx), static_cast<std::size_t>(ny),
              static_cast<std::size_t>(nz)};
  sys.m = ny * nx + nz;
  sys.n = nz * nx;
  sys.a_big.resize(sys.m, sys.n);
  sys.a_big.topRows(ny * nx) = linalg::kron(a, DenseMatrix::Identity(nx, nx));
  sys.a_big.bottomRows(nz) =
      linalg::kron(DenseMatrix::Identity(nz, nz), DenseMatrix::Ones(1, nx));
  sys.c_vec.resize(sys.m);
  sys.c_vec.head(ny * nx) = linalg::vec_t(c);
  sys.c_vec.tail(nz).setOnes();
  sys.a = a;
  sys.c = c;
  return sys;
}

Consistency consistency(const LinearSystem& sys, std::optional<double> rel_tol) {
  DenseMatrix aug(sys.m, sys.n + 1);
  aug << sys.a_big, sys.c_vec;
  Consistency out;
  out.rank_a = linalg::numerical_rank(sys.a_big, rel_tol);
  out.rank_aug = linalg::numerical_rank(aug, rel_tol);
  out.consistent = out.rank_a == out.rank_aug;
  return out;
}

FarkasResult farkas_check(const LinearSystem& sys, const DenseMatrix& g_inv,
                          const FarkasOptions& opts) {
  if (g_inv.rows() != sys.n || g_inv.cols() != sys.m) {
    throw Error(ErrorCode::DimensionMismatch, "g-inverse must be n x m");
  }
  const double residual = linalg::max_abs(sys.a_big * g_inv * sys.a_big - sys.a_big);
  if (!(residual <= kGInverseTol)) {
    throw Error(ErrorCode::NotAGInverse, "||A G A - A||_max = " + std::to_string(residual));
  }
  const DenseMatrix complement = DenseMatrix::Identity(sys.n, sys.n) - g_inv * sys.a_big;
  return normalized_farkas_lp(complement.transpose(), g_inv * sys.c_vec, opts);
}

FarkasResult reduced_farkas_check(const LinearSystem& sys, const FarkasOptions& opts,
                                  std::optional<double> rel_tol_rank) {
  const linalg::SVDResult s = linalg::svd(sys.a_big);
  const Index rank = linalg::numerical_rank(s, rel_tol_rank);
  const DenseMatrix null_basis = s.v.rightCols(sys.n - rank);
  const Vector particular = linalg::pinv(s, rel_tol_rank) * sys.c_vec;
  return normalized_farkas_lp(null_basis.transpose(), particular, opts);
}

const char* to_string(VerdictReason r) {
  switch (r) {
    case VerdictReason::RankMismatch: return "RankMismatch";
    case VerdictReason::NegativeHStar: return "NegativeHStar";
    case VerdictReason::HStarZero: return "HStarZero";
  }
  return "Unknown";
}

const char* to_string(Direction d) {
  return d == Direction::YFixedZToX ? "y" : "x";
}

Verdict check_system(const LinearSystem& sys, const CheckOptions& opts) {
  Verdict v;
  v.m = sys.m;
  v.n = sys.n;
  v.trace.g_inverse = "moore-penrose";

  const Consistency cons = consistency(sys, opts.tol_rank);
  v.rank_a = cons.rank_a;
  v.rank_aug = cons.rank_aug;
  v.trace.null_dim = sys.n - cons.rank_a;
  if (!cons.consistent) {
    v.holds = false;
    v.reason = VerdictReason::RankMismatch;
    return v;
  }

  bool reduce = false;
  switch (opts.path) {
    case EvalPath::Auto: reduce = 2 * v.trace.null_dim < sys.n; break;
    case EvalPath::Full: reduce = false; break;
    case EvalPath::Reduced: reduce = true; break;
  }
  const FarkasOptions fopts{opts.tol_verdict, opts.early_stop};
  const FarkasResult res =
      reduce ? reduced_farkas_check(sys, fopts, opts.tol_rank)
             : farkas_check(sys, linalg::pinv(sys.a_big, opts.tol_rank), fopts);

  v.trace.reduction_used = reduce;
  v.trace.solver_iterations = res.iterations;
  v.trace.lp_rows = res.lp_rows;
  v.trace.lp_cols = res.lp_cols;
  v.trace.lp_objective = res.h_star;
  if (res.sign == HStarSign::Negative) {
    v.holds = false;
    v.reason = VerdictReason::NegativeHStar;
    v.h_star = res.h_star;
    v.witness = res.witness;
  } else {
    v.holds = true;
    v.reason = VerdictReason::HStarZero;
    v.h_star = 0.0;
  }
  return v;
}

Verdict check_simulatability(const JointPMF& p, Direction direction, const CheckOptions& opts) {
  validate_pmf(p);
  const JointPMF oriented = direction == Direction::XFixedZToY ? swap_xy(p) : p;
  const LinearSystem sys = build_system(marginal_yz(oriented), marginal_yx(oriented));
  return check_system(sys, opts);
}

DenseMatrix reconcile_rows(const DenseMatrix& a, const DenseMatrix& c) {
  if (a.rows() != c.rows()) throw Error(ErrorCode::DimensionMismatch, "reconcile_rows");
  DenseMatrix out = c;
  for (Index i = 0; i < c.rows(); ++i) {
    const double cs = c.row(i).sum();
    if (cs > 0.0) out.row(i) *= a.row(i).sum() / cs;
  }
  return out;
}

}  // namespace simcheck
