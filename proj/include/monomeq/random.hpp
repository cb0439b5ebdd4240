#ifndef MONOMEQ_RANDOM_HPP
#define MONOMEQ_RANDOM_HPP

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "monomeq/matrix.hpp"

namespace monomeq {

/// Seeded source for all randomized constructions. Output is reproducible
/// for a given seed within one build.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double gaussian() { return normal_(engine_); }
  Complex complex_gaussian() { return {gaussian() * M_SQRT1_2, gaussian() * M_SQRT1_2}; }
  Complex unit_phase() { return std::polar(1.0, uniform(0.0, 2.0 * M_PI)); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
  bool coin(double p = 0.5) { return uniform() < p; }

  std::vector<std::size_t> permutation(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[index(i)]);
    return p;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Haar-distributed unitary: Gram-Schmidt QR of a complex Gaussian matrix.
/// Gram-Schmidt yields a positive real R diagonal, which is the phase fix
/// that makes Q Haar distributed.
inline Matrix random_unitary(std::size_t n, Rng& rng) {
  Matrix z(n);
  for (auto& e : z.data()) e = rng.complex_gaussian();
  Matrix q(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto v = z.column(j);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < j; ++k) {
        const auto qk = q.column(k);
        const Complex p = dot(qk, v);
        for (std::size_t i = 0; i < n; ++i) v[i] -= p * qk[i];
      }
    const double nv = norm2(v);
    for (auto& e : v) e /= nv;
    q.set_column(j, v);
  }
  return q;
}

inline Matrix random_unitary(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(n, rng);
}

inline Matrix random_hermitian(std::size_t n, Rng& rng) {
  Matrix z(n);
  for (auto& e : z.data()) e = rng.complex_gaussian();
  return hermitian_part(z);
}

inline Matrix random_matrix(std::size_t n, Rng& rng) {
  Matrix z(n);
  for (auto& e : z.data()) e = rng.complex_gaussian();
  return z;
}

}  // namespace monomeq

#endif  // MONOMEQ_RANDOM_HPP
