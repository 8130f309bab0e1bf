#pragma once

#include "simcheck/error.hpp"
#include "simcheck/pmf.hpp"
#include "simcheck/simulatability.hpp"

namespace simcheck {

/// Channel synthesis request: min e^T q over nonnegative solutions of the
/// system. e must be strictly positive; an empty e means all ones.
struct AttackRequest {
  LinearSystem system;
  Vector cost_e;
};

struct AttackResult {
  Channel channel;  // |Z| x |X|, entry (z, x) = P(x_bar = x | z)
  double objective = 0.0;
  std::size_t iterations = 0;
};

/// Raised when no row-stochastic Q solves A Q = C.
class NotSimulatable : public Error {
 public:
  explicit NotSimulatable(Vector certificate)
      : Error(ErrorCode::NotSimulatable, "no nonnegative solution exists"),
        certificate_(std::move(certificate)) {}

  /// y with y^T a_big <= 0 componentwise and y^T c_vec > 0.
  const Vector& certificate() const noexcept { return certificate_; }

 private:
  Vector certificate_;
};

/// Throws Error{InvalidCost} for a wrong-length or non-positive e and
/// NotSimulatable when the LP is infeasible.
AttackResult find_attack_channel(const AttackRequest& req);

/// True iff q is row-stochastic within tol and ||A Q - C||_max <= tol.
/// Throws Error{DimensionMismatch} for incompatible shapes.
bool validate_channel(const DenseMatrix& a, const DenseMatrix& c, const Channel& q, double tol);

}  // namespace simcheck
