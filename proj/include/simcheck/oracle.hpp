#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "simcheck/lp.hpp"
#include "simcheck/pmf.hpp"
#include "simcheck/simulatability.hpp"

// Ground truth for tests, kept off the pseudoinverse/Farkas path.
namespace simcheck::oracle {

/// Phase-1 simplex on a_big q = c_vec, q >= 0. No g-inverse involved.
bool feasibility_direct(const LinearSystem& sys);

struct GridSearchResult {
  Channel channel;
  double residual = 0.0;  // ||A Q - C||_max of the best grid channel
};

inline constexpr std::size_t kGridMaxZ = 6;

/// Exhaustive scan for binary X: row k of Q is (p_k, 1 - p_k) with p_k on
/// {0, 1/res, ..., 1}. Throws Error{AlphabetTooLarge} unless |X| == 2 and
/// |Z| <= kGridMaxZ, Error{InvalidArgument} if resolution < 2.
GridSearchResult grid_search_best(const DenseMatrix& a, const DenseMatrix& c, int resolution);

/// The best grid channel if its residual is at most 1 / resolution.
std::optional<Channel> grid_search_channel(const DenseMatrix& a, const DenseMatrix& c,
                                           int resolution);

/// Hit-and-run walk inside {x >= 0, B x = d}, truncated to the box
/// ||x - start||_inf <= 10 (1 + ||start||), starting from a feasible point.
std::vector<Vector> sample_feasible_points(const lp::Problem& problem, const Vector& start,
                                           std::size_t count, std::uint64_t seed);

// Random instance generators.
Alphabets random_alphabets(std::mt19937_64& rng, std::size_t lo = 1, std::size_t hi = 4);
/// Entries i.i.d. uniform, then normalized.
JointPMF random_pmf(const Alphabets& dims, std::mt19937_64& rng);
/// Like random_pmf with roughly `zero_fraction` of the entries set to zero.
JointPMF sparse_pmf(const Alphabets& dims, std::mt19937_64& rng, double zero_fraction = 0.4);
/// P(x, y, z) = P_YZ(y, z) Q(x | z) for random P_YZ and random stochastic Q,
/// so that P_YX = P_YZ Q and the condition holds by construction.
JointPMF planted_pmf(const Alphabets& dims, std::mt19937_64& rng);
/// Random row-stochastic rows x cols matrix.
DenseMatrix random_stochastic(Index rows, Index cols, std::mt19937_64& rng);

}  // namespace simcheck::oracle
