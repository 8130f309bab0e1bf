#include "simcheck/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "simcheck/error.hpp"

namespace simcheck::linalg {

namespace {

// Extends the orthonormal columns of `basis` (first `filled` of them) to a
// full orthonormal basis of R^m by greedy Gram-Schmidt on the unit vectors.
void complete_basis(DenseMatrix& basis, Index filled) {
  const Index m = basis.rows();
  while (filled < m) {
    double best_norm = -1.0;
    Vector best_vec;
    for (Index k = 0; k < m; ++k) {
      Vector v = Vector::Unit(m, k);
      for (int pass = 0; pass < 2; ++pass) {
        for (Index j = 0; j < filled; ++j) {
          v -= basis.col(j).dot(v) * basis.col(j);
        }
      }
      const double norm = v.norm();
      if (norm > best_norm) {
        best_norm = norm;
        best_vec = std::move(v);
      }
    }
    // The remaining squared norms sum to m - filled, so best_norm >= 1/sqrt(m).
    basis.col(filled) = best_vec / best_norm;
    ++filled;
  }
}

// Hestenes one-sided Jacobi for m >= n.
SVDResult svd_tall(const DenseMatrix& g) {
  const Index m = g.rows();
  const Index n = g.cols();
  DenseMatrix w = g;
  DenseMatrix v = DenseMatrix::Identity(n, n);

  bool converged = (n < 2);
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    bool rotated = false;
    for (Index i = 0; i + 1 < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        const double alpha = w.col(i).squaredNorm();
        const double beta = w.col(j).squaredNorm();
        const double gamma = w.col(i).dot(w.col(j));
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::abs(gamma) <= kJacobiTol * std::sqrt(alpha) * std::sqrt(beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (Index r = 0; r < m; ++r) {
          const double wi = w(r, i);
          const double wj = w(r, j);
          w(r, i) = c * wi - s * wj;
          w(r, j) = s * wi + c * wj;
        }
        for (Index r = 0; r < n; ++r) {
          const double vi = v(r, i);
          const double vj = v(r, j);
          v(r, i) = c * vi - s * vj;
          v(r, j) = s * vi + c * vj;
        }
      }
    }
    converged = !rotated;
  }
  if (!converged) {
    throw Error(ErrorCode::ConvergenceFailure,
                "Jacobi SVD did not converge within " + std::to_string(kMaxSweeps) + " sweeps");
  }

  std::vector<double> norms(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) norms[static_cast<std::size_t>(j)] = w.col(j).norm();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return norms[static_cast<std::size_t>(a)] > norms[static_cast<std::size_t>(b)];
  });

  SVDResult out;
  out.sigma.resize(n);
  out.v.resize(n, n);
  out.u = DenseMatrix::Zero(m, m);
  const double sigma_max = n > 0 ? norms[static_cast<std::size_t>(order[0])] : 0.0;
  // Exactly zero (or underflowed) columns get their U column from the
  // basis completion. Nonzero columns are orthogonal in the relative sense
  // enforced by the sweep criterion, however small they are.
  const double floor = sigma_max * 1e-150;
  Index filled = 0;
  for (Index k = 0; k < n; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    const double sk = norms[static_cast<std::size_t>(src)];
    out.sigma(k) = sk;
    out.v.col(k) = v.col(src);
    if (sk > floor && sk > 0.0) {
      out.u.col(k) = w.col(src) / sk;
      filled = k + 1;
    }
  }
  complete_basis(out.u, filled);
  return out;
}

}  // namespace

DenseMatrix SVDResult::reconstruct() const {
  const Index k = sigma.size();
  return u.leftCols(k) * sigma.asDiagonal() * v.leftCols(k).transpose();
}

void require_finite(const DenseMatrix& g, const char* what) {
  if (!g.allFinite()) {
    throw Error(ErrorCode::NonFinite, std::string(what) + " has non-finite entries");
  }
}

SVDResult svd(const DenseMatrix& g) {
  require_finite(g, "svd input");
  if (g.rows() >= g.cols()) return svd_tall(g);
  SVDResult t = svd_tall(g.transpose());
  return SVDResult{std::move(t.v), std::move(t.sigma), std::move(t.u)};
}

double default_rank_tolerance(Index rows, Index cols) {
  return static_cast<double>(std::max(rows, cols)) * kMachineEpsilon;
}

Index numerical_rank(const SVDResult& s, std::optional<double> rel_tol) {
  if (s.sigma.size() == 0 || s.sigma(0) == 0.0) return 0;
  const double tol = rel_tol.value_or(default_rank_tolerance(s.u.rows(), s.v.rows()));
  const double cutoff = tol * s.sigma(0);
  Index rank = 0;
  for (Index i = 0; i < s.sigma.size(); ++i) {
    if (s.sigma(i) > cutoff) ++rank;
  }
  return rank;
}

Index numerical_rank(const DenseMatrix& g, std::optional<double> rel_tol) {
  return numerical_rank(svd(g), rel_tol);
}

DenseMatrix pinv(const SVDResult& s, std::optional<double> rel_tol) {
  const Index m = s.u.rows();
  const Index n = s.v.rows();
  DenseMatrix out = DenseMatrix::Zero(n, m);
  const Index rank = numerical_rank(s, rel_tol);
  for (Index i = 0; i < rank; ++i) {
    out.noalias() += (1.0 / s.sigma(i)) * s.v.col(i) * s.u.col(i).transpose();
  }
  return out;
}

DenseMatrix pinv(const DenseMatrix& g, std::optional<double> rel_tol) {
  return pinv(svd(g), rel_tol);
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index k = 0; k < a.cols(); ++k) {
      out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
    }
  }
  return out;
}

Vector vec_t(const DenseMatrix& q) {
  Vector out(q.size());
  Index idx = 0;
  for (Index r = 0; r < q.rows(); ++r) {
    for (Index c = 0; c < q.cols(); ++c) out(idx++) = q(r, c);
  }
  return out;
}

DenseMatrix reshape_t(const Vector& v, Index rows, Index cols) {
  if (rows < 0 || cols < 0 || v.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch,
                "reshape_t: length " + std::to_string(v.size()) + " != " + std::to_string(rows) +
                    " x " + std::to_string(cols));
  }
  DenseMatrix out(rows, cols);
  Index idx = 0;
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) out(r, c) = v(idx++);
  }
  return out;
}

double max_abs(const DenseMatrix& g) {
  return g.size() == 0 ? 0.0 : g.cwiseAbs().maxCoeff();
}

}  // namespace simcheck::linalg
