#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>

namespace simcheck::linalg {

using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kMachineEpsilon = 2.22e-16;
inline constexpr int kMaxSweeps = 60;
// A column pair counts as orthogonal once |<gi,gj>| <= kJacobiTol * |gi| |gj|.
inline constexpr double kJacobiTol = 1e-14;

/// Full singular value decomposition G = U * diag(sigma) * V^T.
///
/// `u` is m x m and `v` is n x n, both orthogonal. `sigma` has min(m, n)
/// entries sorted in nonincreasing order.
struct SVDResult {
  DenseMatrix u;
  Vector sigma;
  DenseMatrix v;

  /// U * Sigma * V^T with Sigma the m x n rectangular diagonal.
  DenseMatrix reconstruct() const;
};

/// Throws Error{NonFinite} if any entry is NaN or infinite.
void require_finite(const DenseMatrix& g, const char* what);

/// One-sided (Hestenes) cyclic Jacobi SVD.
///
/// Throws Error{ConvergenceFailure} if the sweeps do not orthogonalize the
/// columns within kMaxSweeps.
SVDResult svd(const DenseMatrix& g);

/// Default relative cutoff max(m, n) * eps for singular values.
double default_rank_tolerance(Index rows, Index cols);

/// Number of singular values strictly above rel_tol * sigma_max.
/// rel_tol defaults to default_rank_tolerance().
Index numerical_rank(const SVDResult& s, std::optional<double> rel_tol = std::nullopt);
Index numerical_rank(const DenseMatrix& g, std::optional<double> rel_tol = std::nullopt);

/// Moore-Penrose pseudoinverse V Sigma^+ U^T. Singular values at or below
/// rel_tol * sigma_max are treated as zero.
DenseMatrix pinv(const SVDResult& s, std::optional<double> rel_tol = std::nullopt);
DenseMatrix pinv(const DenseMatrix& g, std::optional<double> rel_tol = std::nullopt);

/// Kronecker product: block (i, k) of the result is a(i, k) * b.
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

/// Entries of q read row by row (equivalently Vec(q^T)).
Vector vec_t(const DenseMatrix& q);

/// Inverse of vec_t. Throws Error{DimensionMismatch} if v.size() != rows * cols.
DenseMatrix reshape_t(const Vector& v, Index rows, Index cols);

/// Largest absolute entry; 0 for an empty matrix.
double max_abs(const DenseMatrix& g);

}  // namespace simcheck::linalg
