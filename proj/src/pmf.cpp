#include "simcheck/pmf.hpp"

#include <cmath>
#include <regex>
#include <string>
#include <utility>

#include "simcheck/error.hpp"

namespace simcheck {

namespace {

using linalg::Index;

std::vector<std::string> default_labels(char prefix, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

JointPMF::Labels default_labels(const Alphabets& d) {
  return {default_labels('x', d.x), default_labels('y', d.y), default_labels('z', d.z)};
}

void check_table_size(const Alphabets& d, std::size_t size) {
  if (size != d.x * d.y * d.z) {
    throw Error(ErrorCode::DimensionMismatch,
                "probability table has " + std::to_string(size) + " entries, expected " +
                    std::to_string(d.x * d.y * d.z));
  }
}

void check_labels(const Alphabets& d, const JointPMF::Labels& l) {
  if (l.x.size() != d.x || l.y.size() != d.y || l.z.size() != d.z) {
    throw Error(ErrorCode::DimensionMismatch, "label counts do not match alphabet sizes");
  }
}

Rational pow10(long exponent) {
  Rational out = 1;
  const Rational ten = 10;
  for (long i = 0; i < std::abs(exponent); ++i) out *= ten;
  return exponent < 0 ? Rational(1) / out : out;
}

Rational parse_decimal(const std::string& text) {
  static const std::regex kDecimal(R"(^\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, kDecimal) || (m[2].length() == 0 && m[3].length() == 0)) {
    throw Error(ErrorCode::ParseError, "not a decimal number: '" + text + "'");
  }
  const std::string int_part = m[2].str();
  const std::string frac_part = m[3].str();
  const std::string digits = int_part + frac_part;
  boost::multiprecision::cpp_int mantissa = 0;
  for (char ch : digits) mantissa = mantissa * 10 + (ch - '0');
  long exponent = -static_cast<long>(frac_part.size());
  if (m[4].matched) {
    const long e = std::stol(m[4].str());
    if (std::abs(e) > 400) throw Error(ErrorCode::ParseError, "exponent out of range: " + text);
    exponent += e;
  }
  Rational value = Rational(mantissa) * pow10(exponent);
  return m[1].str() == "-" ? -value : value;
}

}  // namespace

JointPMF::JointPMF(Alphabets dims, std::vector<double> probs)
    : JointPMF(dims, std::move(probs), default_labels(dims)) {}

JointPMF::JointPMF(Alphabets dims, std::vector<double> probs, Labels labels)
    : dims_(dims), probs_(std::move(probs)), labels_(std::move(labels)) {
  check_table_size(dims_, probs_.size());
  check_labels(dims_, labels_);
}

JointPMF::JointPMF(Alphabets dims, std::vector<Rational> exact, Labels labels)
    : dims_(dims), labels_(std::move(labels)) {
  check_table_size(dims_, exact.size());
  check_labels(dims_, labels_);
  probs_.reserve(exact.size());
  for (const auto& r : exact) probs_.push_back(to_double(r));
  exact_ = std::move(exact);
}

Channel::Channel(DenseMatrix probs) : probs_(std::move(probs)) {
  linalg::require_finite(probs_, "channel");
}

bool Channel::is_row_stochastic(double tol) const {
  if (probs_.rows() == 0 || probs_.cols() == 0) return false;
  if (probs_.minCoeff() < -tol || probs_.maxCoeff() > 1.0 + tol) return false;
  for (Index r = 0; r < probs_.rows(); ++r) {
    if (std::abs(probs_.row(r).sum() - 1.0) > tol) return false;
  }
  return true;
}

void validate_pmf(const JointPMF& p) {
  const auto& d = p.dims();
  if (d.x == 0 || d.y == 0 || d.z == 0) {
    throw Error(ErrorCode::EmptyAlphabet, "every alphabet needs at least one symbol");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.probs().size(); ++i) {
    const double v = p.probs()[i];
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "probability table");
    if (v < 0.0) {
      throw Error(ErrorCode::NegativeMass, "entry " + std::to_string(i) + " = " + std::to_string(v));
    }
    sum += v;
  }
  if (p.exact()) {
    Rational total = 0;
    for (const auto& r : *p.exact()) total += r;
    sum = to_double(total);
  }
  if (std::abs(sum - 1.0) > kPmfTolerance) {
    throw Error(ErrorCode::NotNormalized, "entries sum to " + std::to_string(sum));
  }
}

DenseMatrix marginal_yz(const JointPMF& p) {
  const auto& d = p.dims();
  DenseMatrix out = DenseMatrix::Zero(static_cast<Index>(d.y), static_cast<Index>(d.z));
  for (std::size_t y = 0; y < d.y; ++y) {
    for (std::size_t z = 0; z < d.z; ++z) {
      if (p.exact()) {
        Rational s = 0;
        for (std::size_t x = 0; x < d.x; ++x) s += (*p.exact())[p.index(x, y, z)];
        out(static_cast<Index>(y), static_cast<Index>(z)) = to_double(s);
      } else {
        double s = 0.0;
        for (std::size_t x = 0; x < d.x; ++x) s += p.at(x, y, z);
        out(static_cast<Index>(y), static_cast<Index>(z)) = s;
      }
    }
  }
  return out;
}

DenseMatrix marginal_yx(const JointPMF& p) {
  const auto& d = p.dims();
  DenseMatrix out = DenseMatrix::Zero(static_cast<Index>(d.y), static_cast<Index>(d.x));
  for (std::size_t y = 0; y < d.y; ++y) {
    for (std::size_t x = 0; x < d.x; ++x) {
      if (p.exact()) {
        Rational s = 0;
        for (std::size_t z = 0; z < d.z; ++z) s += (*p.exact())[p.index(x, y, z)];
        out(static_cast<Index>(y), static_cast<Index>(x)) = to_double(s);
      } else {
        double s = 0.0;
        for (std::size_t z = 0; z < d.z; ++z) s += p.at(x, y, z);
        out(static_cast<Index>(y), static_cast<Index>(x)) = s;
      }
    }
  }
  return out;
}

JointPMF swap_xy(const JointPMF& p) {
  const auto& d = p.dims();
  const Alphabets swapped{d.y, d.x, d.z};
  JointPMF::Labels labels{p.labels().y, p.labels().x, p.labels().z};
  auto permute = [&](const auto& table) {
    std::remove_cvref_t<decltype(table)> out(table.size());
    for (std::size_t x = 0; x < d.x; ++x)
      for (std::size_t y = 0; y < d.y; ++y)
        for (std::size_t z = 0; z < d.z; ++z) out[(y * d.x + x) * d.z + z] = table[p.index(x, y, z)];
    return out;
  };
  if (p.exact()) return JointPMF(swapped, permute(*p.exact()), std::move(labels));
  return JointPMF(swapped, permute(p.probs()), std::move(labels));
}

Rational parse_rational(std::string_view text) {
  const std::string s(text);
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse_decimal(s);
  const Rational num = parse_decimal(s.substr(0, slash));
  const Rational den = parse_decimal(s.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
  return num / den;
}

double to_double(const Rational& r) {
  using boost::multiprecision::cpp_int;
  static const cpp_int kExact = cpp_int(1) << 53;
  const cpp_int num = boost::multiprecision::numerator(r);
  const cpp_int den = boost::multiprecision::denominator(r);
  if (abs(num) <= kExact && den <= kExact) {
    // Both operands are exact doubles, so IEEE division rounds correctly.
    return num.convert_to<double>() / den.convert_to<double>();
  }
  return r.convert_to<double>();
}

JointPMF joint_from_marginals(const DenseMatrix& p_yz, const DenseMatrix& p_yx) {
  if (p_yz.rows() != p_yx.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "P_YZ and P_YX disagree on |Y|");
  }
  const Alphabets d{static_cast<std::size_t>(p_yx.cols()), static_cast<std::size_t>(p_yx.rows()),
                    static_cast<std::size_t>(p_yz.cols())};
  std::vector<double> probs(d.x * d.y * d.z, 0.0);
  for (Index y = 0; y < p_yz.rows(); ++y) {
    const double py_z = p_yz.row(y).sum();
    const double py_x = p_yx.row(y).sum();
    if (std::abs(py_z - py_x) > kPmfTolerance) {
      throw Error(ErrorCode::MarginalMismatch, "row " + std::to_string(y) + " sums differ");
    }
    if (py_z <= 0.0) continue;
    for (Index x = 0; x < p_yx.cols(); ++x) {
      for (Index z = 0; z < p_yz.cols(); ++z) {
        probs[(static_cast<std::size_t>(x) * d.y + static_cast<std::size_t>(y)) * d.z +
              static_cast<std::size_t>(z)] = p_yx(y, x) * p_yz(y, z) / py_z;
      }
    }
  }
  return JointPMF(d, std::move(probs));
}

JointPMF binary_symmetric_erasure(double alpha, double gamma) {
  if (!(alpha >= 0.0 && alpha <= 1.0) || !(gamma >= 0.0 && gamma <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "alpha and gamma must lie in [0, 1]");
  }
  const Alphabets d{2, 2, 5};
  std::vector<double> probs(20, 0.0);
  JointPMF::Labels labels{{"0", "1"}, {"0", "1"}, {"(0,0)", "(1,0)", "(0,1)", "(1,1)", "erased"}};
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t y = 0; y < 2; ++y) {
      const double pxy = (x == y ? 1.0 - alpha : alpha) / 2.0;
      const std::size_t seen = x + 2 * y;
      probs[(x * 2 + y) * 5 + seen] = pxy * gamma;
      probs[(x * 2 + y) * 5 + 4] = pxy * (1.0 - gamma);
    }
  }
  return JointPMF(d, std::move(probs), std::move(labels));
}

}  // namespace simcheck
