#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>
#include <vector>

#include "entrank/matrix.hpp"
#include "entrank/scalar.hpp"
#include "entrank/tolerances.hpp"

namespace entrank {

inline Eigen::MatrixXcd to_eigen(const Mat<Complex>& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
  return e;
}

inline Mat<Complex> from_eigen(const Eigen::MatrixXcd& e) {
  Mat<Complex> m(static_cast<int>(e.rows()), static_cast<int>(e.cols()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) m(r, c) = e(r, c);
  return m;
}

// Laplace expansion; fine for the n <= 4 determinants used here.
template <class S>
S det_small(const Mat<S>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det_small: not square");
  const int n = m.rows();
  if (n == 0) return S(1);
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  S acc(0);
  for (int j = 0; j < n; ++j) {
    if (scalar_traits<S>::is_zero(m(0, j))) continue;
    Mat<S> sub(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c)
        if (c != j) sub(r - 1, cc++) = m(r, c);
    }
    S term = m(0, j) * det_small(sub);
    if (j % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

template <class S>
S det2(const S& a, const S& b, const S& c, const S& d) {
  return a * d - b * c;
}

// Rank over Q(i): fraction-free (Bareiss) elimination with full pivoting.
// Each division is by the previous pivot and stays in the domain.
inline int matrix_rank(const Mat<GaussianRational>& m) {
  const int nr = m.rows(), nc = m.cols();
  if (nr == 0 || nc == 0) return 0;
  Mat<GaussianRational> a = m;
  std::vector<int> col(static_cast<std::size_t>(nc));
  for (int c = 0; c < nc; ++c) col[static_cast<std::size_t>(c)] = c;
  GaussianRational prev(1);
  int rank = 0;
  const int steps = std::min(nr, nc);
  for (int k = 0; k < steps; ++k) {
    int pr = -1, pc = -1;
    for (int r = k; r < nr && pr < 0; ++r)
      for (int c = k; c < nc; ++c)
        if (!a(r, col[static_cast<std::size_t>(c)]).is_zero()) {
          pr = r;
          pc = c;
          break;
        }
    if (pr < 0) break;
    if (pr != k)
      for (int c = 0; c < nc; ++c) std::swap(a(pr, c), a(k, c));
    if (pc != k) std::swap(col[static_cast<std::size_t>(pc)], col[static_cast<std::size_t>(k)]);
    const GaussianRational piv = a(k, col[static_cast<std::size_t>(k)]);
    for (int r = k + 1; r < nr; ++r) {
      const GaussianRational rk = a(r, col[static_cast<std::size_t>(k)]);
      for (int c = k + 1; c < nc; ++c) {
        GaussianRational& arc = a(r, col[static_cast<std::size_t>(c)]);
        arc = (piv * arc - rk * a(k, col[static_cast<std::size_t>(c)])) / prev;
      }
      a(r, col[static_cast<std::size_t>(k)]) = GaussianRational(0);
    }
    prev = piv;
    ++rank;
  }
  return rank;
}

inline std::vector<double> singular_values(const Mat<Complex>& m) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  std::vector<double> s(static_cast<std::size_t>(svd.singularValues().size()));
  for (std::size_t i = 0; i < s.size(); ++i)
    s[i] = svd.singularValues()(static_cast<Eigen::Index>(i));
  return s;
}

// Count of singular values above tol * sigma_max.
inline int matrix_rank(const Mat<Complex>& m, double tol = tol::rank_rel) {
  auto s = singular_values(m);
  if (s.empty() || s[0] <= 0.0) return 0;
  int r = 0;
  for (double x : s)
    if (x > tol * s[0]) ++r;
  return r;
}

struct SchmidtResult {
  Mat<Complex> u;                       // full left unitary, m x m
  std::vector<double> singular_values;  // length min(m,n), nonincreasing
  Mat<Complex> v;                       // full right unitary, n x n; M = U diag(s) V^*
};

inline SchmidtResult schmidt(const Mat<Complex>& m) {
  if (m.rows() == 0 || m.cols() == 0) throw std::invalid_argument("schmidt: empty matrix");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) throw std::runtime_error("schmidt: SVD did not converge");
  SchmidtResult out;
  out.u = from_eigen(svd.matrixU());
  out.v = from_eigen(svd.matrixV());
  out.singular_values.resize(static_cast<std::size_t>(svd.singularValues().size()));
  for (std::size_t i = 0; i < out.singular_values.size(); ++i)
    out.singular_values[i] = svd.singularValues()(static_cast<Eigen::Index>(i));
  return out;
}

// Basis of the right kernel over Q(i), via reduced row echelon form.
inline std::vector<std::vector<GaussianRational>> nullspace(const Mat<GaussianRational>& m) {
  const int nr = m.rows(), nc = m.cols();
  if (nc == 0) return {};
  Mat<GaussianRational> a = m;
  std::vector<int> pivot_col;
  int row = 0;
  for (int c = 0; c < nc && row < nr; ++c) {
    int pr = -1;
    for (int r = row; r < nr; ++r)
      if (!a(r, c).is_zero()) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    if (pr != row)
      for (int cc = 0; cc < nc; ++cc) std::swap(a(pr, cc), a(row, cc));
    const GaussianRational inv = GaussianRational(1) / a(row, c);
    for (int cc = c; cc < nc; ++cc) a(row, cc) *= inv;
    for (int r = 0; r < nr; ++r) {
      if (r == row || a(r, c).is_zero()) continue;
      const GaussianRational f = a(r, c);
      for (int cc = c; cc < nc; ++cc) a(r, cc) -= f * a(row, cc);
    }
    pivot_col.push_back(c);
    ++row;
  }
  std::vector<bool> is_pivot(static_cast<std::size_t>(nc), false);
  for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<std::vector<GaussianRational>> basis;
  for (int c = 0; c < nc; ++c) {
    if (is_pivot[static_cast<std::size_t>(c)]) continue;
    std::vector<GaussianRational> x(static_cast<std::size_t>(nc), GaussianRational(0));
    x[static_cast<std::size_t>(c)] = GaussianRational(1);
    for (std::size_t p = 0; p < pivot_col.size(); ++p)
      x[static_cast<std::size_t>(pivot_col[p])] = -a(static_cast<int>(p), c);
    basis.push_back(std::move(x));
  }
  return basis;
}

// Right singular vectors whose singular values fall at or below tol * sigma_max.
inline std::vector<std::vector<Complex>> nullspace(const Mat<Complex>& m,
                                                   double tol = tol::rank_rel) {
  const int nc = m.cols();
  if (nc == 0) return {};
  if (m.rows() == 0) {
    std::vector<std::vector<Complex>> basis;
    for (int c = 0; c < nc; ++c) {
      std::vector<Complex> x(static_cast<std::size_t>(nc), Complex(0));
      x[static_cast<std::size_t>(c)] = Complex(1);
      basis.push_back(std::move(x));
    }
    return basis;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m), Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  int rank = 0;
  if (smax > 0.0)
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > tol * smax) ++rank;
  std::vector<std::vector<Complex>> basis;
  for (int c = rank; c < nc; ++c) {
    std::vector<Complex> x(static_cast<std::size_t>(nc));
    for (int r = 0; r < nc; ++r) x[static_cast<std::size_t>(r)] = svd.matrixV()(r, c);
    basis.push_back(std::move(x));
  }
  return basis;
}

template <class S>
Mat<S> inverse2(const Mat<S>& m) {
  if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("inverse2: need 2x2");
  const S d = det2(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
  if (scalar_traits<S>::is_zero(d)) throw std::runtime_error("inverse2: singular matrix");
  Mat<S> inv(2, 2);
  inv(0, 0) = m(1, 1) / d;
  inv(0, 1) = (S(0) - m(0, 1)) / d;
  inv(1, 0) = (S(0) - m(1, 0)) / d;
  inv(1, 1) = m(0, 0) / d;
  return inv;
}

// Householder least squares / vector helpers used across the numeric paths.

inline double vec_norm(const std::vector<Complex>& v) {
  double s = 0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

inline Complex vec_inner(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  // <a|b> with conjugation on the first argument.
  if (a.size() != b.size()) throw std::invalid_argument("vec_inner: length mismatch");
  Complex s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline std::vector<Complex> vec_scale(const std::vector<Complex>& v, Complex c) {
  std::vector<Complex> out = v;
  for (auto& x : out) x *= c;
  return out;
}

inline std::vector<Complex> vec_unit(const std::vector<Complex>& v) {
  const double n = vec_norm(v);
  if (n == 0.0) throw std::invalid_argument("vec_unit: zero vector");
  return vec_scale(v, Complex(1.0 / n, 0.0));
}

// Orthogonal complement of a nonzero 2-vector, the (-conj(b), conj(a)) convention.
inline std::vector<Complex> perp2(const std::vector<Complex>& v) {
  if (v.size() != 2) throw std::invalid_argument("perp2: need length 2");
  return {-std::conj(v[1]), std::conj(v[0])};
}

}  // namespace entrank
