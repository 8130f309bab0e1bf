#include "simcheck/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "simcheck/error.hpp"

namespace simcheck::oracle {

bool feasibility_direct(const LinearSystem& sys) {
  return lp::phase_one(sys.a_big, sys.c_vec).infeasibility <= lp::kFeasibilityTol;
}

GridSearchResult grid_search_best(const DenseMatrix& a, const DenseMatrix& c, int resolution) {
  if (c.cols() != 2 || a.cols() > static_cast<Index>(kGridMaxZ)) {
    throw Error(ErrorCode::AlphabetTooLarge, "grid search needs |X| = 2 and |Z| <= " +
                                                 std::to_string(kGridMaxZ));
  }
  if (resolution < 2) throw Error(ErrorCode::InvalidArgument, "resolution must be >= 2");
  if (a.rows() != c.rows()) throw Error(ErrorCode::DimensionMismatch, "grid search: |Y|");

  const Index nz = a.cols();
  const Vector row_mass = a.rowwise().sum();
  std::vector<int> level(static_cast<std::size_t>(nz), 0);
  std::vector<int> best_level = level;
  double best = std::numeric_limits<double>::infinity();
  Vector first(a.rows());
  for (;;) {
    first.setZero();
    for (Index k = 0; k < nz; ++k) {
      first += a.col(k) * (static_cast<double>(level[static_cast<std::size_t>(k)]) / resolution);
    }
    const double r0 = (first - c.col(0)).cwiseAbs().maxCoeff();
    const double r1 = (row_mass - first - c.col(1)).cwiseAbs().maxCoeff();
    const double residual = std::max(r0, r1);
    if (residual < best) {
      best = residual;
      best_level = level;
    }
    Index k = 0;
    while (k < nz && level[static_cast<std::size_t>(k)] == resolution) {
      level[static_cast<std::size_t>(k)] = 0;
      ++k;
    }
    if (k == nz) break;
    ++level[static_cast<std::size_t>(k)];
  }

  DenseMatrix q(nz, 2);
  for (Index k = 0; k < nz; ++k) {
    const double p = static_cast<double>(best_level[static_cast<std::size_t>(k)]) / resolution;
    q(k, 0) = p;
    q(k, 1) = 1.0 - p;
  }
  return {Channel(std::move(q)), best};
}

std::optional<Channel> grid_search_channel(const DenseMatrix& a, const DenseMatrix& c,
                                           int resolution) {
  GridSearchResult r = grid_search_best(a, c, resolution);
  if (r.residual <= 1.0 / resolution) return std::move(r.channel);
  return std::nullopt;
}

std::vector<Vector> sample_feasible_points(const lp::Problem& problem, const Vector& start,
                                           std::size_t count, std::uint64_t seed) {
  problem.validate();
  const linalg::SVDResult s = linalg::svd(problem.constraints);
  const Index rank = linalg::numerical_rank(s);
  const DenseMatrix null_basis = s.v.rightCols(problem.constraints.cols() - rank);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  std::vector<Vector> out;
  out.reserve(count);
  Vector x = start.cwiseMax(0.0);
  // Walk inside a box around the start so unbounded regions stay at its scale.
  const double span = 10.0 * (1.0 + x.norm());
  for (std::size_t i = 0; i < count; ++i) {
    if (null_basis.cols() > 0) {
      Vector g(null_basis.cols());
      for (Index j = 0; j < g.size(); ++j) g(j) = normal(rng);
      Vector dir = null_basis * g;
      dir.normalize();
      double lo = -std::numeric_limits<double>::infinity();
      double hi = std::numeric_limits<double>::infinity();
      for (Index j = 0; j < dir.size(); ++j) {
        // x_j + t dir_j must stay in [max(0, start_j - span), start_j + span].
        const double floor = std::max(0.0, start(j) - span);
        const double ceil = start(j) + span;
        if (dir(j) > 1e-14) {
          lo = std::max(lo, (floor - x(j)) / dir(j));
          hi = std::min(hi, (ceil - x(j)) / dir(j));
        } else if (dir(j) < -1e-14) {
          hi = std::min(hi, (floor - x(j)) / dir(j));
          lo = std::max(lo, (ceil - x(j)) / dir(j));
        }
      }
      if (hi > lo) {
        x += (lo + (hi - lo) * unit(rng)) * dir;
        x = x.cwiseMax(0.0);
      }
    }
    out.push_back(x);
  }
  return out;
}

Alphabets random_alphabets(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  std::uniform_int_distribution<std::size_t> dist(lo, hi);
  const std::size_t x = dist(rng);
  const std::size_t y = dist(rng);
  const std::size_t z = dist(rng);
  return {x, y, z};
}

JointPMF random_pmf(const Alphabets& dims, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit;
  std::vector<double> probs(dims.x * dims.y * dims.z);
  for (auto& p : probs) p = unit(rng);
  double total = 0.0;
  for (double p : probs) total += p;
  for (auto& p : probs) p /= total;
  return JointPMF(dims, std::move(probs));
}

JointPMF sparse_pmf(const Alphabets& dims, std::mt19937_64& rng, double zero_fraction) {
  std::uniform_real_distribution<double> unit;
  std::vector<double> probs(dims.x * dims.y * dims.z);
  double total = 0.0;
  for (auto& p : probs) {
    p = unit(rng) < zero_fraction ? 0.0 : unit(rng);
    total += p;
  }
  if (total == 0.0) {
    probs[std::uniform_int_distribution<std::size_t>(0, probs.size() - 1)(rng)] = 1.0;
    total = 1.0;
  }
  for (auto& p : probs) p /= total;
  return JointPMF(dims, std::move(probs));
}

DenseMatrix random_stochastic(Index rows, Index cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit;
  DenseMatrix q(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) q(r, c) = unit(rng) + 1e-3;
    q.row(r) /= q.row(r).sum();
  }
  return q;
}

JointPMF planted_pmf(const Alphabets& dims, std::mt19937_64& rng) {
  const auto nx = static_cast<Index>(dims.x);
  const auto ny = static_cast<Index>(dims.y);
  const auto nz = static_cast<Index>(dims.z);
  std::uniform_real_distribution<double> unit;
  DenseMatrix p_yz(ny, nz);
  for (Index y = 0; y < ny; ++y)
    for (Index z = 0; z < nz; ++z) p_yz(y, z) = unit(rng);
  p_yz /= p_yz.sum();
  const DenseMatrix q = random_stochastic(nz, nx, rng);

  std::vector<double> probs(dims.x * dims.y * dims.z);
  for (Index x = 0; x < nx; ++x)
    for (Index y = 0; y < ny; ++y)
      for (Index z = 0; z < nz; ++z)
        probs[(static_cast<std::size_t>(x) * dims.y + static_cast<std::size_t>(y)) * dims.z +
              static_cast<std::size_t>(z)] = p_yz(y, z) * q(z, x);
  return JointPMF(dims, std::move(probs));
}

}  // namespace simcheck::oracle
