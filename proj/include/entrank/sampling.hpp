#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "entrank/linalg.hpp"
#include "entrank/matrix.hpp"
#include "entrank/scalar.hpp"
#include "entrank/tensor.hpp"

namespace entrank {

// Seeded generator with a hand-rolled Box-Muller transform so that streams
// are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(g_() >> 11) * (1.0 / 9007199254740992.0);
  }

  double gauss() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Standard complex normal: independent N(0, 1/2) parts.
  Complex cgauss() {
    const double re = gauss();
    const double im = gauss();
    return Complex(re * 0.7071067811865476, im * 0.7071067811865476);
  }

  // Integer in [lo, hi], inclusive.
  long uniform_int(long lo, long hi) {
    return lo + static_cast<long>(g_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 g_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

inline Tensor<Complex> random_tensor(const std::vector<int>& shape, Rng& rng) {
  auto t = Tensor<Complex>::zeros(shape);
  std::vector<Complex> d(t.size());
  for (auto& x : d) x = rng.cgauss();
  return Tensor<Complex>(shape, std::move(d));
}

// Entries p + qi with small integer p, q; re-drawn if everything vanishes.
inline Tensor<GaussianRational> random_rational_tensor(const std::vector<int>& shape, Rng& rng,
                                                       long range = 9) {
  for (;;) {
    auto t = Tensor<GaussianRational>::zeros(shape);
    std::vector<GaussianRational> d(t.size());
    bool nonzero = false;
    for (auto& x : d) {
      x = GaussianRational(Rational(rng.uniform_int(-range, range)),
                           Rational(rng.uniform_int(-range, range)));
      if (!x.is_zero()) nonzero = true;
    }
    if (nonzero) return Tensor<GaussianRational>(shape, std::move(d));
  }
}

inline std::vector<Complex> random_unit_vector(int n, Rng& rng) {
  std::vector<Complex> v(static_cast<std::size_t>(n));
  for (;;) {
    for (auto& x : v) x = rng.cgauss();
    if (vec_norm(v) > 1e-3) return vec_unit(v);
  }
}

inline Mat<Complex> random_gl2(Rng& rng) {
  for (;;) {
    Mat<Complex> m(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) m(r, c) = rng.cgauss();
    if (std::abs(det_small(m)) > 1e-2) return m;
  }
}

inline Mat<Complex> random_sl2(Rng& rng) {
  Mat<Complex> m = random_gl2(rng);
  const Complex s = Complex(1.0, 0.0) / std::sqrt(det_small(m));
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) *= s;
  return m;
}

// Product of integer shears: unit determinant holds exactly.
inline Mat<GaussianRational> random_sl2_exact(Rng& rng, long range = 4) {
  auto shear = [&rng, range](bool upper) {
    Mat<GaussianRational> m = Mat<GaussianRational>::identity(2);
    const GaussianRational v(Rational(rng.uniform_int(-range, range)),
                             Rational(rng.uniform_int(-range, range)));
    if (upper)
      m(0, 1) = v;
    else
      m(1, 0) = v;
    return m;
  };
  return shear(true) * shear(false) * shear(true);
}

inline Mat<Complex> random_unitary2(Rng& rng) {
  // Gram-Schmidt on a random invertible pair of columns.
  const std::vector<Complex> c0 = random_unit_vector(2, rng);
  std::vector<Complex> c1 = {rng.cgauss(), rng.cgauss()};
  const Complex proj = vec_inner(c0, c1);
  for (int i = 0; i < 2; ++i) c1[static_cast<std::size_t>(i)] -= proj * c0[static_cast<std::size_t>(i)];
  if (vec_norm(c1) < 1e-6) return random_unitary2(rng);
  c1 = vec_unit(c1);
  return Mat<Complex>(2, 2, {c0[0], c1[0], c0[1], c1[1]});
}

}  // namespace entrank
