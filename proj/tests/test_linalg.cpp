#include <gtest/gtest.h>

#include <Eigen/QR>
#include <Eigen/SVD>

#include <random>

#include "fixtures.hpp"
#include "simcheck/error.hpp"
#include "simcheck/linalg.hpp"

namespace simcheck::linalg {
namespace {

constexpr double kRecon = 1e-10;

DenseMatrix random_matrix(Index rows, Index cols, std::mt19937_64& rng, double lo = 0.0,
                          double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  DenseMatrix m(rows, cols);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
  return m;
}

DenseMatrix random_rank(Index rows, Index cols, Index rank, std::mt19937_64& rng) {
  if (rank == 0) return DenseMatrix::Zero(rows, cols);
  return random_matrix(rows, rank, rng, -1.0, 1.0) * random_matrix(rank, cols, rng, -1.0, 1.0);
}

void expect_svd_invariants(const DenseMatrix& g, const SVDResult& s) {
  const Index m = g.rows();
  const Index n = g.cols();
  ASSERT_EQ(s.u.rows(), m);
  ASSERT_EQ(s.u.cols(), m);
  ASSERT_EQ(s.v.rows(), n);
  ASSERT_EQ(s.v.cols(), n);
  ASSERT_EQ(s.sigma.size(), std::min(m, n));
  EXPECT_LE(max_abs(s.u.transpose() * s.u - DenseMatrix::Identity(m, m)), kRecon);
  EXPECT_LE(max_abs(s.v.transpose() * s.v - DenseMatrix::Identity(n, n)), kRecon);
  EXPECT_LE(max_abs(s.reconstruct() - g), kRecon);
  for (Index i = 0; i < s.sigma.size(); ++i) {
    EXPECT_GE(s.sigma(i), 0.0);
    if (i > 0) EXPECT_LE(s.sigma(i), s.sigma(i - 1));
  }
}

TEST(Svd, IdentityHasUnitSingularValues) {
  const SVDResult s = svd(DenseMatrix::Identity(3, 3));
  for (Index i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(s.sigma(i), 1.0);
}

TEST(Svd, DiagonalWithZero) {
  DenseMatrix g(2, 2);
  g << 3, 0, 0, 0;
  const SVDResult s = svd(g);
  EXPECT_DOUBLE_EQ(s.sigma(0), 3.0);
  EXPECT_DOUBLE_EQ(s.sigma(1), 0.0);
  expect_svd_invariants(g, s);
}

TEST(Svd, RandomTallReconstructs) {
  std::mt19937_64 rng(7);
  const DenseMatrix g = random_matrix(4, 3, rng);
  const SVDResult s = svd(g);
  expect_svd_invariants(g, s);
}

TEST(Svd, MatchesEigenSingularValuesAcrossShapes) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const Index m = 1 + static_cast<Index>(rng() % 9);
    const Index n = 1 + static_cast<Index>(rng() % 9);
    const Index r = static_cast<Index>(rng() % (std::min(m, n) + 1));
    const DenseMatrix g = random_rank(m, n, r, rng);
    const SVDResult s = svd(g);
    expect_svd_invariants(g, s);
    const Eigen::JacobiSVD<DenseMatrix> ref(g);
    for (Index i = 0; i < s.sigma.size(); ++i) {
      EXPECT_NEAR(s.sigma(i), ref.singularValues()(i), 1e-12);
    }
  }
}

TEST(Svd, RejectsNonFinite) {
  DenseMatrix g = DenseMatrix::Ones(2, 2);
  g(0, 1) = std::numeric_limits<double>::quiet_NaN();
  try {
    svd(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFinite);
  }
}

TEST(Pinv, InvertibleDiagonal) {
  DenseMatrix g(2, 2);
  g << 2, 0, 0, 4;
  DenseMatrix expected(2, 2);
  expected << 0.5, 0, 0, 0.25;
  EXPECT_LE(max_abs(pinv(g) - expected), 1e-15);
}

TEST(Pinv, ExampleOneParticularSolution) {
  const Vector c = (Vector(7) << 0.3, 0.2, 0.45, 0.05, 1, 1, 1).finished();
  const Vector x = pinv(fixtures::example1_big()) * c;
  const auto rounded = fixtures::example1_pinv_c();
  for (Index i = 0; i < 6; ++i) EXPECT_NEAR(x(i), rounded[static_cast<std::size_t>(i)], 1e-3);
  // Cross-check against an independent pseudoinverse.
  const DenseMatrix ref =
      Eigen::CompleteOrthogonalDecomposition<DenseMatrix>(fixtures::example1_big()).pseudoInverse();
  EXPECT_LE((ref * c - x).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Pinv, PenroseConditionsRankTwo) {
  std::mt19937_64 rng(3);
  const DenseMatrix g = random_rank(5, 3, 2, rng);
  const DenseMatrix p = pinv(g);
  EXPECT_LE(max_abs(g * p * g - g), kRecon);
  EXPECT_LE(max_abs(p * g * p - p), kRecon);
  EXPECT_LE(max_abs((g * p).transpose() - g * p), kRecon);
  EXPECT_LE(max_abs((p * g).transpose() - p * g), kRecon);
}

TEST(Pinv, PenroseConditionsRandomized) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Index m = 1 + static_cast<Index>(rng() % 8);
    const Index n = 1 + static_cast<Index>(rng() % 8);
    const Index r = static_cast<Index>(rng() % (std::min(m, n) + 1));
    const DenseMatrix g = random_rank(m, n, r, rng);
    const DenseMatrix p = pinv(g);
    ASSERT_EQ(p.rows(), n);
    ASSERT_EQ(p.cols(), m);
    EXPECT_LE(max_abs(g * p * g - g), kRecon) << m << "x" << n << " rank " << r;
    EXPECT_LE(max_abs(p * g * p - p), kRecon);
    EXPECT_LE(max_abs((g * p).transpose() - g * p), kRecon);
    EXPECT_LE(max_abs((p * g).transpose() - p * g), kRecon);
  }
}

TEST(NumericalRank, ExampleOneSystemHasRankFive) {
  EXPECT_EQ(numerical_rank(fixtures::example1_big()), 5);
}

TEST(NumericalRank, ZeroAndIdentity) {
  EXPECT_EQ(numerical_rank(DenseMatrix::Zero(3, 4)), 0);
  for (Index n = 1; n <= 6; ++n) EXPECT_EQ(numerical_rank(DenseMatrix::Identity(n, n)), n);
}

TEST(NumericalRank, TransposeInvariantAndMatchesConstruction) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Index m = 1 + static_cast<Index>(rng() % 7);
    const Index n = 1 + static_cast<Index>(rng() % 7);
    const Index r = static_cast<Index>(rng() % (std::min(m, n) + 1));
    const DenseMatrix g = random_rank(m, n, r, rng);
    EXPECT_EQ(numerical_rank(g), r);
    EXPECT_EQ(numerical_rank(g), numerical_rank(DenseMatrix(g.transpose())));
  }
}

TEST(Kron, IdentityOneByOneIsNeutral) {
  std::mt19937_64 rng(1);
  const DenseMatrix b = random_matrix(3, 4, rng);
  EXPECT_EQ(kron(DenseMatrix::Identity(1, 1), b), b);
}

TEST(Kron, RowTimesIdentity) {
  DenseMatrix a(1, 2);
  a << 1, 2;
  DenseMatrix expected(2, 4);
  expected << 1, 0, 2, 0, 0, 1, 0, 2;
  EXPECT_EQ(kron(a, DenseMatrix::Identity(2, 2)), expected);
}

TEST(Kron, ElementwiseDefinition) {
  std::mt19937_64 rng(2);
  const DenseMatrix a = random_matrix(2, 3, rng);
  const DenseMatrix b = random_matrix(3, 2, rng);
  const DenseMatrix k = kron(a, b);
  ASSERT_EQ(k.rows(), 6);
  ASSERT_EQ(k.cols(), 6);
  for (Index i = 0; i < 2; ++i)
    for (Index kk = 0; kk < 3; ++kk)
      for (Index j = 0; j < 3; ++j)
        for (Index l = 0; l < 2; ++l) EXPECT_EQ(k(3 * i + j, 2 * kk + l), a(i, kk) * b(j, l));
}

TEST(Kron, MixedProductProperty) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const Index p = 1 + static_cast<Index>(rng() % 3), q = 1 + static_cast<Index>(rng() % 3);
    const Index r = 1 + static_cast<Index>(rng() % 3), s = 1 + static_cast<Index>(rng() % 3);
    const Index t = 1 + static_cast<Index>(rng() % 3), u = 1 + static_cast<Index>(rng() % 3);
    const DenseMatrix a = random_matrix(p, q, rng), c = random_matrix(q, r, rng);
    const DenseMatrix b = random_matrix(s, t, rng), d = random_matrix(t, u, rng);
    EXPECT_LE(max_abs(kron(a, b) * kron(c, d) - kron(a * c, b * d)), 1e-12);
  }
}

TEST(VecT, ReadsRowByRow) {
  DenseMatrix q(2, 2);
  q << 1, 2, 3, 4;
  const Vector v = vec_t(q);
  EXPECT_EQ(v, (Vector(4) << 1, 2, 3, 4).finished());
  EXPECT_EQ(reshape_t(v, 2, 2), q);
}

TEST(VecT, ExampleOneAttackVector) {
  const Vector q = (Vector(6) << 1, 0, 0.5, 0.5, 0.5, 0.5).finished();
  EXPECT_EQ(reshape_t(q, 3, 2), fixtures::example1_channel());
}

TEST(VecT, RoundTripAndDimensionCheck) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const Index m = 1 + static_cast<Index>(rng() % 6), n = 1 + static_cast<Index>(rng() % 6);
    const DenseMatrix q = random_matrix(m, n, rng);
    EXPECT_EQ(reshape_t(vec_t(q), m, n), q);
  }
  try {
    reshape_t(Vector::Ones(5), 2, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

}  // namespace
}  // namespace simcheck::linalg
