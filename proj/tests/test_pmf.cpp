#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "simcheck/error.hpp"
#include "simcheck/oracle.hpp"
#include "simcheck/pmf.hpp"

namespace simcheck {
namespace {

ErrorCode validation_error(const JointPMF& p) {
  try {
    validate_pmf(p);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "validate_pmf accepted the table";
  return ErrorCode::InvalidArgument;
}

TEST(ValidatePmf, AcceptsExampleOne) { EXPECT_NO_THROW(validate_pmf(fixtures::example1())); }

TEST(ValidatePmf, RejectsBadTables) {
  EXPECT_EQ(validation_error(JointPMF({1, 1, 2}, {1.1, -0.1})), ErrorCode::NegativeMass);
  EXPECT_EQ(validation_error(JointPMF({1, 1, 2}, {0.5, 0.49})), ErrorCode::NotNormalized);
  EXPECT_EQ(validation_error(JointPMF({0, 1, 1}, {})), ErrorCode::EmptyAlphabet);
  EXPECT_EQ(validation_error(JointPMF({1, 1, 2}, {std::nan(""), 1.0})), ErrorCode::NonFinite);
}

TEST(ValidatePmf, ToleranceIsOneInABillion) {
  EXPECT_NO_THROW(validate_pmf(JointPMF({1, 1, 2}, {0.5, 0.5 + 5e-10})));
  EXPECT_EQ(validation_error(JointPMF({1, 1, 2}, {0.5, 0.5 + 5e-9})), ErrorCode::NotNormalized);
}

TEST(ValidatePmf, TableSizeMustMatch) {
  try {
    JointPMF({2, 2, 2}, std::vector<double>(7, 1.0 / 7));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Marginals, ExampleOneExact) {
  const JointPMF p = fixtures::example1();
  EXPECT_EQ(marginal_yz(p), fixtures::example1_a());
  EXPECT_EQ(marginal_yx(p), fixtures::example1_c());
}

TEST(Marginals, DirectSummation) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const Alphabets d = oracle::random_alphabets(rng);
    const JointPMF p = oracle::random_pmf(d, rng);
    const DenseMatrix yz = marginal_yz(p);
    const DenseMatrix yx = marginal_yx(p);
    for (std::size_t y = 0; y < d.y; ++y) {
      for (std::size_t z = 0; z < d.z; ++z) {
        double s = 0.0;
        for (std::size_t x = 0; x < d.x; ++x) s += p.at(x, y, z);
        EXPECT_NEAR(yz(static_cast<Index>(y), static_cast<Index>(z)), s, 1e-15);
      }
      for (std::size_t x = 0; x < d.x; ++x) {
        double s = 0.0;
        for (std::size_t z = 0; z < d.z; ++z) s += p.at(x, y, z);
        EXPECT_NEAR(yx(static_cast<Index>(y), static_cast<Index>(x)), s, 1e-15);
      }
      // Both marginals carry the same P_Y.
      EXPECT_NEAR(yz.row(static_cast<Index>(y)).sum(), yx.row(static_cast<Index>(y)).sum(), 1e-12);
    }
  }
}

TEST(SwapXy, IsAnInvolution) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const JointPMF p = oracle::random_pmf(oracle::random_alphabets(rng), rng);
    const JointPMF back = swap_xy(swap_xy(p));
    EXPECT_EQ(back.dims(), p.dims());
    EXPECT_EQ(back.probs(), p.probs());
  }
}

TEST(SwapXy, ExchangesTheRoles) {
  const JointPMF p = fixtures::example1();
  const JointPMF s = swap_xy(p);
  EXPECT_EQ(s.dims(), (Alphabets{2, 2, 3}));
  EXPECT_EQ(s.labels().x, p.labels().y);
  EXPECT_EQ(s.labels().y, p.labels().x);
  // The swapped P_YZ is P_XZ of the original.
  DenseMatrix p_xz = DenseMatrix::Zero(2, 3);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t z = 0; z < 3; ++z)
        p_xz(static_cast<Index>(x), static_cast<Index>(z)) += p.at(x, y, z);
  EXPECT_LE(linalg::max_abs(marginal_yz(s) - p_xz), 1e-15);
  EXPECT_EQ(marginal_yx(s), DenseMatrix(marginal_yx(p).transpose()));
}

TEST(ParseRational, Forms) {
  EXPECT_EQ(parse_rational("0.06"), Rational(6, 100));
  EXPECT_EQ(parse_rational("6/100"), Rational(3, 50));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_EQ(parse_rational("1e-2"), Rational(1, 100));
  EXPECT_EQ(parse_rational("2.5E1"), Rational(25));
  for (const char* bad : {"", "abc", "1/0", "0.1.2", "1/"}) {
    try {
      parse_rational(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << bad;
    }
  }
}

TEST(ParseRational, ToDoubleRoundsCorrectly) {
  EXPECT_EQ(to_double(Rational(1, 10)), 0.1);
  EXPECT_EQ(to_double(Rational(1, 3)), 1.0 / 3.0);
  EXPECT_EQ(to_double(parse_rational("0.15")), 0.15);
}

TEST(JointFromMarginals, ReproducesBothMarginals) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const JointPMF p = oracle::random_pmf(oracle::random_alphabets(rng), rng);
    const DenseMatrix a = marginal_yz(p);
    const DenseMatrix c = marginal_yx(p);
    const JointPMF q = joint_from_marginals(a, c);
    EXPECT_NO_THROW(validate_pmf(q));
    EXPECT_LE(linalg::max_abs(marginal_yz(q) - a), 1e-14);
    EXPECT_LE(linalg::max_abs(marginal_yx(q) - c), 1e-14);
  }
}

TEST(JointFromMarginals, RejectsMismatchedRows) {
  try {
    joint_from_marginals(fixtures::example1_a(), fixtures::example1_c() * 1.01);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MarginalMismatch);
  }
}

TEST(BinarySymmetricErasure, Structure) {
  const double alpha = 0.1;
  const double gamma = 0.5;
  const JointPMF p = binary_symmetric_erasure(alpha, gamma);
  EXPECT_EQ(p.dims(), (Alphabets{2, 2, 5}));
  EXPECT_NO_THROW(validate_pmf(p));
  DenseMatrix yx(2, 2);
  yx << (1 - alpha) / 2, alpha / 2, alpha / 2, (1 - alpha) / 2;
  EXPECT_LE(linalg::max_abs(marginal_yx(p) - yx), 1e-15);
  // Erasure column carries 1 - gamma of every P_Y(y); the pair columns carry gamma.
  const DenseMatrix yz = marginal_yz(p);
  EXPECT_NEAR(yz(0, 4), (1 - gamma) / 2, 1e-15);
  EXPECT_NEAR(yz(1, 4), (1 - gamma) / 2, 1e-15);
  EXPECT_NEAR(yz(0, 0), gamma * (1 - alpha) / 2, 1e-15);
  EXPECT_NEAR(yz(0, 1), gamma * alpha / 2, 1e-15);
  EXPECT_NEAR(yz(0, 2), 0.0, 1e-15);
  EXPECT_NEAR(yz(1, 3), gamma * (1 - alpha) / 2, 1e-15);
  ASSERT_EQ(p.labels().z.size(), 5u);
  EXPECT_EQ(p.labels().z.back(), "erased");
}

TEST(ChannelQuery, RowStochastic) {
  EXPECT_TRUE(Channel(fixtures::example1_channel()).is_row_stochastic());
  EXPECT_TRUE(Channel(fixtures::example3_rounded_channel()).is_row_stochastic(1e-3));
  EXPECT_FALSE(Channel(fixtures::example3_rounded_channel()).is_row_stochastic(1e-9));
  DenseMatrix neg(1, 2);
  neg << 1.5, -0.5;
  EXPECT_FALSE(Channel(neg).is_row_stochastic());
}

}  // namespace
}  // namespace simcheck
