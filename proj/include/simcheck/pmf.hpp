#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simcheck/linalg.hpp"

namespace simcheck {

using linalg::DenseMatrix;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kPmfTolerance = 1e-9;

/// Dimensions of the alphabets X, Y, Z.
struct Alphabets {
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t z = 0;

  friend bool operator==(const Alphabets&, const Alphabets&) = default;
};

/// Joint probability table P_XYZ over finite alphabets.
///
/// The table is stored in full, indexed (x, y, z). When the table was built
/// from rational inputs the exact values are kept alongside and marginals are
/// summed exactly before the final conversion to double.
///
/// Construction does not validate; call validate_pmf().
class JointPMF {
 public:
  struct Labels {
    std::vector<std::string> x, y, z;
  };

  JointPMF(Alphabets dims, std::vector<double> probs);
  JointPMF(Alphabets dims, std::vector<double> probs, Labels labels);
  /// Exact table; the double table is derived by correctly rounded division.
  JointPMF(Alphabets dims, std::vector<Rational> exact, Labels labels);

  const Alphabets& dims() const noexcept { return dims_; }
  const Labels& labels() const noexcept { return labels_; }
  double at(std::size_t x, std::size_t y, std::size_t z) const { return probs_[index(x, y, z)]; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  const std::optional<std::vector<Rational>>& exact() const noexcept { return exact_; }

  std::size_t index(std::size_t x, std::size_t y, std::size_t z) const noexcept {
    return (x * dims_.y + y) * dims_.z + z;
  }

 private:
  Alphabets dims_;
  std::vector<double> probs_;
  std::optional<std::vector<Rational>> exact_;
  Labels labels_;
};

/// Conditional distribution P(output | input) as a row-per-input matrix.
///
/// Holds any finite matrix; whether it is row-stochastic is a query, so that
/// rounded reference channels can be inspected at a loose tolerance.
class Channel {
 public:
  explicit Channel(DenseMatrix probs);

  std::size_t rows() const noexcept { return static_cast<std::size_t>(probs_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(probs_.cols()); }
  const DenseMatrix& probs() const noexcept { return probs_; }
  double operator()(std::size_t input, std::size_t output) const {
    return probs_(static_cast<linalg::Index>(input), static_cast<linalg::Index>(output));
  }

  /// Entries in [-tol, 1 + tol] and every row sum within tol of 1.
  bool is_row_stochastic(double tol = kPmfTolerance) const;

 private:
  DenseMatrix probs_;
};

/// Throws Error{EmptyAlphabet, NegativeMass, NotNormalized, NonFinite}.
void validate_pmf(const JointPMF& p);

/// |Y| x |Z| matrix of P_YZ.
DenseMatrix marginal_yz(const JointPMF& p);

/// |Y| x |X| matrix of P_YX.
DenseMatrix marginal_yx(const JointPMF& p);

/// Same distribution with the roles of X and Y exchanged.
JointPMF swap_xy(const JointPMF& p);

/// Parses "0.06", "6/100", "-3", "1e-2" as an exact rational.
/// Throws Error{ParseError}.
Rational parse_rational(std::string_view text);

/// Correctly rounded conversion.
double to_double(const Rational& r);

/// P(x, y, z) = P_YX(y, x) * P_YZ(y, z) / P_Y(y): a joint distribution
/// realising the given pair of marginals, with X and Z independent given Y.
/// Throws Error{MarginalMismatch} when the row sums differ beyond kPmfTolerance.
JointPMF joint_from_marginals(const DenseMatrix& p_yz, const DenseMatrix& p_yx);

/// Doubly symmetric binary pair (X, Y) with crossover alpha, observed by Z as
/// the pair itself with probability gamma and as an erasure otherwise.
/// Z's alphabet is (x1,y1), (x2,y1), (x1,y2), (x2,y2), erasure.
JointPMF binary_symmetric_erasure(double alpha, double gamma);

}  // namespace simcheck
