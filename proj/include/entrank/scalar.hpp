#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace entrank {

using Complex = std::complex<double>;
using Rational = mpq_class;

// Exact square root of a nonnegative rational, when one exists in Q.
inline std::optional<Rational> rational_sqrt(const Rational& r) {
  if (sgn(r) < 0) return std::nullopt;
  const mpz_class num = r.get_num();
  const mpz_class den = r.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) ||
      !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  return Rational(sn, sd);
}

// Element of Q(i): re + im*i with exact rational parts.  Arithmetic is a
// field; division by zero throws.
class GaussianRational {
 public:
  GaussianRational() : re_(0), im_(0) {}
  GaussianRational(int n) : re_(n), im_(0) {}          // NOLINT(google-explicit-constructor)
  GaussianRational(long n) : re_(n), im_(0) {}         // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)), im_(0) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  Rational norm_sq() const { return re_ * re_ + im_ * im_; }

  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussianRational operator-() const { return {-re_, -im_}; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    if (b.is_zero()) throw std::domain_error("GaussianRational: division by zero");
    Rational n = b.norm_sq();
    return {(a.re_ * b.re_ + a.im_ * b.im_) / n, (a.im_ * b.re_ - a.re_ * b.im_) / n};
  }
  GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
  GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
  GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
  GaussianRational& operator/=(const GaussianRational& b) { return *this = *this / b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
    return !(a == b);
  }

 private:
  Rational re_, im_;
};

// Exact square root in Q(i), when representable there.  For z = a + bi with
// b != 0: w = p + qi with p^2 = (a + |z|)/2 and q = b/(2p); both steps must
// land in Q for the root to exist.
inline std::optional<GaussianRational> exact_sqrt(const GaussianRational& z) {
  if (z.is_zero()) return GaussianRational(0);
  if (z.is_real()) {
    if (sgn(z.re()) > 0) {
      if (auto w = rational_sqrt(z.re())) return GaussianRational(*w);
      return std::nullopt;
    }
    if (auto w = rational_sqrt(-z.re())) return GaussianRational(Rational(0), *w);
    return std::nullopt;
  }
  auto r = rational_sqrt(z.norm_sq());
  if (!r) return std::nullopt;
  auto p = rational_sqrt((z.re() + *r) / 2);
  if (!p || sgn(*p) == 0) return std::nullopt;
  Rational q = z.im() / (2 * *p);
  GaussianRational w(*p, q);
  if (!(w * w == z)) return std::nullopt;
  return w;
}

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Complex> {
  static constexpr bool is_exact = false;
  using real_type = double;
  static Complex conj(const Complex& z) { return std::conj(z); }
  static double abs2(const Complex& z) { return std::norm(z); }
  static bool is_zero(const Complex& z) { return z == Complex(0.0, 0.0); }
  static Complex to_complex(const Complex& z) { return z; }
  static Complex from_int(long n) { return {double(n), 0.0}; }
};

template <>
struct scalar_traits<GaussianRational> {
  static constexpr bool is_exact = true;
  using real_type = Rational;
  static GaussianRational conj(const GaussianRational& z) { return z.conj(); }
  static Rational abs2(const GaussianRational& z) { return z.norm_sq(); }
  static bool is_zero(const GaussianRational& z) { return z.is_zero(); }
  static Complex to_complex(const GaussianRational& z) { return z.to_complex(); }
  static GaussianRational from_int(long n) { return GaussianRational(n); }
};

inline double to_double(const Rational& r) { return r.get_d(); }
inline double to_double(double r) { return r; }

// "p/q" (or plain "p") in base 10.  Rejects zero denominators before
// canonicalizing, since mpq_canonicalize aborts on them.
inline Rational parse_rational(const std::string& s) {
  mpq_class q;
  try {
    q = mpq_class(s, 10);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational: '" + s + "'");
  }
  if (sgn(mpz_class(q.get_den())) == 0)
    throw std::invalid_argument("zero denominator in rational: '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string rational_str(const Rational& r) { return r.get_str(); }

}  // namespace entrank
