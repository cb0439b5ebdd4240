#ifndef MONOMEQ_TOLERANCE_HPP
#define MONOMEQ_TOLERANCE_HPP

#include <algorithm>
#include <string>
#include <string_view>

#include "monomeq/errors.hpp"

namespace monomeq {

/// Numerical thresholds shared by every factorization and predicate.
/// Commutator and residual tests are relative to max(1, ||.||_F).
struct ToleranceConfig {
  double commute_tol = 1e-10;
  double cluster_tol = 1e-8;
  double zero_tol = 1e-12;

  void validate() const {
    if (!(commute_tol > 0.0) || !(cluster_tol > 0.0) || !(zero_tol > 0.0))
      throw PreconditionViolation("tolerances must be strictly positive");
    if (!(commute_tol < 1.0)) throw PreconditionViolation("commute_tol must be < 1");
  }

  static ToleranceConfig strict() { return {1e-12, 1e-10, 1e-14}; }
  static ToleranceConfig loose() { return {1e-8, 1e-6, 1e-10}; }

  /// Preset by name: "strict", "default" or "loose".
  static ToleranceConfig profile(std::string_view name) {
    if (name == "strict") return strict();
    if (name == "default" || name.empty()) return {};
    if (name == "loose") return loose();
    throw PreconditionViolation("unknown tolerance profile '" + std::string(name) + "'");
  }
};

inline double rel_scale(double norm) { return std::max(1.0, norm); }

}  // namespace monomeq

#endif  // MONOMEQ_TOLERANCE_HPP
