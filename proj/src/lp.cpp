#include "simcheck/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "simcheck/error.hpp"

namespace simcheck::lp {

namespace {

using linalg::Index;

// Dense simplex tableau over [structural | artificial | rhs] columns with the
// reduced-cost row stored last. T(obj, rhs) holds minus the objective value.
class Tableau {
 public:
  Tableau(const DenseMatrix& b, const Vector& d, std::size_t iteration_cap)
      : m_(b.rows()), n_(b.cols()), t_(DenseMatrix::Zero(m_ + 1, n_ + m_ + 1)),
        basis_(static_cast<std::size_t>(m_)), active_(static_cast<std::size_t>(m_), true),
        sign_(static_cast<std::size_t>(m_), 1.0), cap_(iteration_cap) {
    for (Index i = 0; i < m_; ++i) {
      const double s = d(i) < 0.0 ? -1.0 : 1.0;
      sign_[static_cast<std::size_t>(i)] = s;
      t_.row(i).head(n_) = s * b.row(i);
      t_(i, n_ + i) = 1.0;
      t_(i, rhs_col()) = s * d(i);
      basis_[static_cast<std::size_t>(i)] = n_ + i;
    }
    // Phase-1 reduced costs: cost 1 on each artificial, all of them basic.
    for (Index i = 0; i < m_; ++i) {
      t_.row(m_).head(n_) -= t_.row(i).head(n_);
      t_(m_, rhs_col()) -= t_(i, rhs_col());
    }
  }

  enum class RunResult { Optimal, Unbounded, Cutoff };

  // Bland's rule: lowest-index improving column enters, ties in the ratio
  // test leave by lowest basic index.
  RunResult run(bool allow_artificial, std::optional<double> cutoff) {
    for (;;) {
      Index entering = -1;
      const Index limit = allow_artificial ? n_ + m_ : n_;
      for (Index j = 0; j < limit; ++j) {
        if (t_(m_, j) < -kPivotTol) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return RunResult::Optimal;

      Index leave = -1;
      double best = 0.0;
      for (Index i = 0; i < m_; ++i) {
        if (!active_[static_cast<std::size_t>(i)]) continue;
        const double a = t_(i, entering);
        if (a <= kPivotTol) continue;
        const double ratio = std::max(0.0, t_(i, rhs_col())) / a;
        const double tie = 1e-15 * std::max(1.0, best);
        if (leave < 0 || ratio < best - tie) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + tie &&
                   basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)]) {
          leave = i;
        }
      }
      if (leave < 0) {
        unbounded_column_ = entering;
        return RunResult::Unbounded;
      }
      pivot(leave, entering);
      if (cutoff && -t_(m_, rhs_col()) < *cutoff) return RunResult::Cutoff;
    }
  }

  void pivot(Index r, Index c) {
    if (++iterations_ > cap_) {
      throw Error(ErrorCode::CycleLimitExceeded,
                  "simplex exceeded " + std::to_string(cap_) + " pivots");
    }
    t_.row(r) /= t_(r, c);
    for (Index i = 0; i <= m_; ++i) {
      if (i == r || (i < m_ && !active_[static_cast<std::size_t>(i)])) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    for (Index i = 0; i < m_; ++i) {
      double& rhs = t_(i, rhs_col());
      if (rhs < 0.0 && rhs > -kPivotTol) rhs = 0.0;
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  double phase_one_value() const { return -t_(m_, rhs_col()); }

  // y with y^T B <= 0 and y^T d = phase-1 value, in the caller's row signs.
  Vector farkas_vector() const {
    Vector y(m_);
    for (Index i = 0; i < m_; ++i) {
      y(i) = sign_[static_cast<std::size_t>(i)] * (1.0 - t_(m_, n_ + i));
    }
    return y;
  }

  // Pivots basic artificials out on any usable structural column; rows where
  // none exists are linearly redundant and are dropped.
  void expel_artificials() {
    for (Index i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < n_) continue;
      Index col = -1;
      for (Index j = 0; j < n_; ++j) {
        if (std::abs(t_(i, j)) > kPivotTol) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivot(i, col);
      } else {
        active_[static_cast<std::size_t>(i)] = false;
      }
    }
  }

  void install_cost(const Vector& cost) {
    t_.row(m_).setZero();
    t_.row(m_).head(n_) = cost.transpose();
    for (Index i = 0; i < m_; ++i) {
      if (!active_[static_cast<std::size_t>(i)]) continue;
      const Index b = basis_[static_cast<std::size_t>(i)];
      const double cb = b < n_ ? cost(b) : 0.0;
      if (cb != 0.0) t_.row(m_) -= cb * t_.row(i);
    }
  }

  Vector primal() const {
    Vector x = Vector::Zero(n_);
    for (Index i = 0; i < m_; ++i) {
      const Index b = basis_[static_cast<std::size_t>(i)];
      if (!active_[static_cast<std::size_t>(i)] || b >= n_) continue;
      double v = t_(i, rhs_col());
      if (v < 0.0 && v > -kFeasibilityTol) v = 0.0;
      x(b) = v;
    }
    return x;
  }

  Vector ray() const {
    Vector r = Vector::Zero(n_);
    r(unbounded_column_) = 1.0;
    for (Index i = 0; i < m_; ++i) {
      const Index b = basis_[static_cast<std::size_t>(i)];
      if (!active_[static_cast<std::size_t>(i)] || b >= n_) continue;
      r(b) = -t_(i, unbounded_column_);
    }
    return r;
  }

  std::size_t iterations() const { return iterations_; }

 private:
  Index rhs_col() const { return n_ + m_; }

  Index m_;
  Index n_;
  DenseMatrix t_;
  std::vector<Index> basis_;
  std::vector<bool> active_;
  std::vector<double> sign_;
  std::size_t cap_;
  std::size_t iterations_ = 0;
  Index unbounded_column_ = -1;
};

std::size_t iteration_cap(Index m, Index n) {
  return kIterationFactor * static_cast<std::size_t>(std::max<Index>(1, m + n));
}

}  // namespace

void Problem::validate() const {
  if (cost.size() != constraints.cols() || rhs.size() != constraints.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "LP data: cost " + std::to_string(cost.size()) + ", matrix " +
                    std::to_string(constraints.rows()) + "x" + std::to_string(constraints.cols()) +
                    ", rhs " + std::to_string(rhs.size()));
  }
  if (!cost.allFinite() || !constraints.allFinite() || !rhs.allFinite()) {
    throw Error(ErrorCode::NonFinite, "LP data");
  }
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "Optimal";
    case Status::Infeasible: return "Infeasible";
    case Status::Unbounded: return "Unbounded";
    case Status::CutoffReached: return "CutoffReached";
  }
  return "Unknown";
}

Outcome solve(const Problem& problem, const Options& options) {
  problem.validate();
  const Index m = problem.constraints.rows();
  const Index n = problem.constraints.cols();
  Tableau tab(problem.constraints, problem.rhs, iteration_cap(m, n));

  Outcome out;
  tab.run(/*allow_artificial=*/true, std::nullopt);
  if (tab.phase_one_value() > kFeasibilityTol) {
    out.status = Status::Infeasible;
    out.certificate = tab.farkas_vector();
    out.iterations = tab.iterations();
    return out;
  }

  tab.expel_artificials();
  tab.install_cost(problem.cost);
  const auto result = tab.run(/*allow_artificial=*/false, options.objective_cutoff);
  out.iterations = tab.iterations();
  if (result == Tableau::RunResult::Unbounded) {
    out.status = Status::Unbounded;
    out.certificate = tab.ray();
    return out;
  }
  out.status = result == Tableau::RunResult::Cutoff ? Status::CutoffReached : Status::Optimal;
  out.solution = tab.primal();
  out.objective = problem.cost.dot(*out.solution);
  return out;
}

PhaseOneResult phase_one(const DenseMatrix& constraints, const Vector& rhs) {
  if (rhs.size() != constraints.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "phase_one: rhs length");
  }
  Tableau tab(constraints, rhs, iteration_cap(constraints.rows(), constraints.cols()));
  tab.run(/*allow_artificial=*/true, std::nullopt);
  return {std::max(0.0, tab.phase_one_value()), tab.iterations()};
}

bool check_certificate(const Problem& problem, const Outcome& outcome, double tol) {
  const auto& b = problem.constraints;
  switch (outcome.status) {
    case Status::Optimal:
    case Status::CutoffReached: {
      if (!outcome.solution || outcome.solution->size() != b.cols()) return false;
      const Vector& x = *outcome.solution;
      if (b.rows() > 0 && (b * x - problem.rhs).cwiseAbs().maxCoeff() > tol) return false;
      if (x.size() > 0 && x.minCoeff() < -tol) return false;
      if (outcome.objective &&
          std::abs(*outcome.objective - problem.cost.dot(x)) > tol * std::max(1.0, std::abs(*outcome.objective))) {
        return false;
      }
      return true;
    }
    case Status::Unbounded: {
      if (!outcome.certificate || outcome.certificate->size() != b.cols()) return false;
      const Vector& r = *outcome.certificate;
      if (b.rows() > 0 && (b * r).cwiseAbs().maxCoeff() > tol) return false;
      if (r.size() > 0 && r.minCoeff() < -tol) return false;
      return problem.cost.dot(r) <= -tol;
    }
    case Status::Infeasible: {
      if (!outcome.certificate || outcome.certificate->size() != b.rows()) return false;
      const Vector& y = *outcome.certificate;
      if (b.cols() > 0 && (b.transpose() * y).maxCoeff() > tol) return false;
      return y.dot(problem.rhs) >= tol;
    }
  }
  return false;
}

}  // namespace simcheck::lp
