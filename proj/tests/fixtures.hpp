#pragma once

// Reference instances shared by the unit and acceptance suites.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "simcheck/pmf.hpp"

namespace simcheck::fixtures {

/// Builds the |V| x |U| matrix P_UV^T from the compact listing
/// (P_U(u), (P_{V|U=u}(v_1), ..., P_{V|U=u}(v_{|V|-1})))_u; the last
/// conditional is the complement.
inline DenseMatrix from_compact(const std::vector<double>& p_u,
                                const std::vector<std::vector<double>>& conditionals) {
  const auto nu = static_cast<linalg::Index>(p_u.size());
  const auto nv = static_cast<linalg::Index>(conditionals.at(0).size() + 1);
  DenseMatrix out(nv, nu);
  for (linalg::Index u = 0; u < nu; ++u) {
    double rest = 1.0;
    const auto& cond = conditionals[static_cast<std::size_t>(u)];
    for (linalg::Index v = 0; v + 1 < nv; ++v) {
      out(v, u) = p_u[static_cast<std::size_t>(u)] * cond[static_cast<std::size_t>(v)];
      rest -= cond[static_cast<std::size_t>(v)];
    }
    out(nv - 1, u) = p_u[static_cast<std::size_t>(u)] * rest;
  }
  return out;
}

/// Example 1: |X| = 2, |Y| = 2, |Z| = 3, given exactly in hundredths.
inline JointPMF example1() {
  // p[x][y][z]
  const int hundredths[2][2][3] = {{{6, 9, 15}, {36, 9, 0}}, {{4, 6, 10}, {4, 1, 0}}};
  std::vector<Rational> exact;
  for (const auto& plane : hundredths)
    for (const auto& row : plane)
      for (int v : row) exact.emplace_back(Rational(v) / 100);
  return JointPMF({2, 2, 3}, std::move(exact),
                  {{"x1", "x2"}, {"y1", "y2"}, {"z1", "z2", "z3"}});
}

inline DenseMatrix example1_a() {
  DenseMatrix a(2, 3);
  a << 0.1, 0.15, 0.25, 0.4, 0.1, 0.0;
  return a;
}

inline DenseMatrix example1_c() {
  DenseMatrix c(2, 2);
  c << 0.3, 0.2, 0.45, 0.05;
  return c;
}

inline DenseMatrix example1_big() {
  DenseMatrix m(7, 6);
  m << 0.1, 0, 0.15, 0, 0.25, 0,
       0, 0.1, 0, 0.15, 0, 0.25,
       0.4, 0, 0.1, 0, 0, 0,
       0, 0.4, 0, 0.1, 0, 0,
       1, 1, 0, 0, 0, 0,
       0, 0, 1, 1, 0, 0,
       0, 0, 0, 0, 1, 1;
  return m;
}

/// Rounded to four decimals.
inline std::vector<double> example1_pinv_c() {
  return {0.9762, 0.0238, 0.5952, 0.4048, 0.4524, 0.5476};
}

inline DenseMatrix example1_channel() {
  DenseMatrix q(3, 2);
  q << 1.0, 0.0, 0.5, 0.5, 0.5, 0.5;
  return q;
}

/// Example 2 from its compact listings (exact, with the sqrt(3) terms).
inline std::pair<DenseMatrix, DenseMatrix> example2() {
  const double r3 = std::sqrt(3.0);
  DenseMatrix a = from_compact({0.3, 0.3, 0.3, 0.1},
                               {{0.0, 0.0}, {0.5, 0.0}, {0.25, r3 / 4}, {0.25, r3 / 12}});
  DenseMatrix c = from_compact(
      {0.3, 0.3, 0.3, 0.05, 0.05},
      {{0.25, 0.0}, {0.375, r3 / 8}, {0.125, r3 / 8}, {0.24, r3 / 12}, {0.26, r3 / 12}});
  return {std::move(a), std::move(c)};
}

inline DenseMatrix example2_rounded_a() {
  DenseMatrix a(3, 4);
  a << 0, 0.1500, 0.0750, 0.0250,
       0, 0, 0.1299, 0.0144,
       0.3000, 0.1500, 0.0951, 0.0606;
  return a;
}

inline DenseMatrix example2_rounded_c() {
  DenseMatrix c(3, 5);
  c << 0.0750, 0.1125, 0.0375, 0.0120, 0.0130,
       0, 0.0650, 0.0650, 0.0072, 0.0072,
       0.2250, 0.1225, 0.1975, 0.0308, 0.0298;
  return c;
}

inline DenseMatrix example3_rounded_a() {
  DenseMatrix a(4, 6);
  a << 0.0315, 0.0203, 0.0056, 0.0690, 0.0295, 0.0720,
       0.0169, 0.0779, 0.1003, 0.0377, 0.0568, 0.0278,
       0.0673, 0.0555, 0.0133, 0.0352, 0.0085, 0.1113,
       0.0446, 0.0117, 0.0421, 0.0085, 0.0260, 0.0307;
  return a;
}

inline DenseMatrix example3_rounded_c() {
  DenseMatrix c(4, 4);
  c << 0.0464, 0.0335, 0.0502, 0.0979,
       0.0995, 0.0962, 0.0632, 0.0585,
       0.0535, 0.0492, 0.0922, 0.0962,
       0.0609, 0.0392, 0.0300, 0.0335;
  return c;
}

inline DenseMatrix example3_rounded_channel() {
  DenseMatrix q(6, 4);
  q << 0.4979, 0.1504, 0.2038, 0.1479,
       0.0148, 0.3751, 0.5618, 0.0483,
       0.5210, 0.4391, 0.0254, 0.0144,
       0.1302, 0.0917, 0.0301, 0.7481,
       0.5638, 0.2674, 0.0161, 0.1527,
       0.0261, 0.0622, 0.4110, 0.5006;
  return q;
}

}  // namespace simcheck::fixtures
