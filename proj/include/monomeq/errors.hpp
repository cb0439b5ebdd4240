#ifndef MONOMEQ_ERRORS_HPP
#define MONOMEQ_ERRORS_HPP

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace monomeq {

inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  explicit NotHermitian(double defect)
      : Error("matrix is not Hermitian (||H - H*||_F = " + format_real(defect) + ")"), defect(defect) {}
  double defect;
};

class NotUnitary : public Error {
 public:
  explicit NotUnitary(double defect)
      : Error("matrix is not unitary (||U*U - I||_F = " + format_real(defect) + ")"), defect(defect) {}
  double defect;
};

class NotCommuting : public Error {
 public:
  NotCommuting(std::size_t first, std::size_t second, double norm)
      : Error("generators " + std::to_string(first) + " and " + format_real(second) +
              " do not commute (||[A,B]||_F = " + format_real(norm) + ")"),
        first(first),
        second(second),
        norm(norm) {}
  std::size_t first;
  std::size_t second;
  double norm;
};

/// The algebra is not numerically invariant under conjugation by U.
class InvariantViolation : public Error {
 public:
  InvariantViolation(std::size_t subspace, double best_distance)
      : Error("conjugate of subspace " + std::to_string(subspace) +
              " matches no joint eigenspace (best projection distance " + format_real(best_distance) + ")"),
        subspace(subspace),
        best_distance(best_distance) {}
  std::size_t subspace;
  double best_distance;
};

class AmbiguousMatch : public Error {
 public:
  AmbiguousMatch(std::size_t subspace, double best, double second)
      : Error("conjugate of subspace " + std::to_string(subspace) + " matches two joint eigenspaces (" +
              format_real(best) + " vs " + format_real(second) + ")"),
        subspace(subspace),
        best(best),
        second(second) {}
  std::size_t subspace;
  double best;
  double second;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class IllConditioned : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace monomeq

#endif  // MONOMEQ_ERRORS_HPP
