#include "simcheck/attack.hpp"

#include <string>

#include "simcheck/error.hpp"
#include "simcheck/lp.hpp"

namespace simcheck {

AttackResult find_attack_channel(const AttackRequest& req) {
  const LinearSystem& sys = req.system;
  const Vector cost = req.cost_e.size() == 0 ? Vector::Ones(sys.n) : req.cost_e;
  if (cost.size() != sys.n) {
    throw Error(ErrorCode::InvalidCost, "cost has length " + std::to_string(cost.size()) +
                                            ", expected n = " + std::to_string(sys.n));
  }
  if (!cost.allFinite() || cost.minCoeff() <= 0.0) {
    throw Error(ErrorCode::InvalidCost, "every cost entry must be finite and > 0");
  }

  const lp::Problem prob{cost, sys.a_big, sys.c_vec};
  const lp::Outcome out = lp::solve(prob);
  switch (out.status) {
    case lp::Status::Infeasible:
      throw NotSimulatable(*out.certificate);
    case lp::Status::Unbounded:
    case lp::Status::CutoffReached:
      // Positive cost over a nonnegative orthant is bounded below by zero.
      throw Error(ErrorCode::ConvergenceFailure,
                  std::string("attack LP returned ") + lp::to_string(out.status));
    case lp::Status::Optimal:
      break;
  }
  const auto nz = static_cast<Index>(sys.dims.z);
  const auto nx = static_cast<Index>(sys.dims.x);
  return AttackResult{Channel(linalg::reshape_t(*out.solution, nz, nx)), *out.objective,
                      out.iterations};
}

bool validate_channel(const DenseMatrix& a, const DenseMatrix& c, const Channel& q, double tol) {
  const DenseMatrix& qm = q.probs();
  if (a.cols() != qm.rows() || a.rows() != c.rows() || qm.cols() != c.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "validate_channel: A is " +
                                                  std::to_string(a.rows()) + "x" +
                                                  std::to_string(a.cols()) + ", Q is " +
                                                  std::to_string(qm.rows()) + "x" +
                                                  std::to_string(qm.cols()));
  }
  if (!q.is_row_stochastic(tol)) return false;
  return linalg::max_abs(a * qm - c) <= tol;
}

}  // namespace simcheck
