#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "entrank/linalg.hpp"
#include "entrank/tensor.hpp"
#include "entrank/tolerances.hpp"

namespace entrank {

// A violated exchange relation: entrywise products u_a*u_b and u_c*u_d that
// should agree but do not.  (c,d) is obtained from (a,b) by swapping the two
// index values on some subset of axes.
struct ExchangeWitness {
  std::vector<int> a, b, c, d;
};

struct ExchangeReport {
  bool pure = true;
  std::optional<ExchangeWitness> witness;
};

namespace detail {

template <class S>
bool products_agree(const S& p, const S& q, double scale2) {
  if constexpr (scalar_traits<S>::is_exact) {
    (void)scale2;
    return p == q;
  } else {
    return std::abs(p - q) <= tol::exchange_rel * scale2;
  }
}

inline std::vector<int> unflatten(std::size_t flat, const std::vector<int>& dims) {
  std::vector<int> idx(dims.size());
  for (std::size_t a = dims.size(); a-- > 0;) {
    idx[a] = static_cast<int>(flat % static_cast<std::size_t>(dims[a]));
    flat /= static_cast<std::size_t>(dims[a]);
  }
  return idx;
}

}  // namespace detail

// Purity via the generating family of exchange relations: all 2x2 minors of
// every single-axis matricization vanish iff t is a pure (rank-one) tensor.
template <class S>
ExchangeReport is_pure_exchange(const Tensor<S>& t) {
  if (t.order() == 1) return {};
  const double scale2 = to_double(norm_sq(t));
  for (int ax = 0; ax < t.order(); ++ax) {
    const Mat<S> m = matricize(t, {ax});
    std::vector<int> cdims;
    for (int a = 0; a < t.order(); ++a)
      if (a != ax) cdims.push_back(t.dim(a));
    for (int r1 = 0; r1 < m.rows(); ++r1)
      for (int r2 = r1 + 1; r2 < m.rows(); ++r2)
        for (int c1 = 0; c1 < m.cols(); ++c1)
          for (int c2 = c1 + 1; c2 < m.cols(); ++c2) {
            const S p = m(r1, c1) * m(r2, c2);
            const S q = m(r1, c2) * m(r2, c1);
            if (!detail::products_agree(p, q, scale2)) {
              auto with_axis = [&](int axval, int colflat) {
                std::vector<int> rest = detail::unflatten(static_cast<std::size_t>(colflat), cdims);
                std::vector<int> idx;
                int k = 0;
                for (int a = 0; a < t.order(); ++a)
                  idx.push_back(a == ax ? axval : rest[static_cast<std::size_t>(k++)]);
                return idx;
              };
              ExchangeReport rep;
              rep.pure = false;
              rep.witness = ExchangeWitness{with_axis(r1, c1), with_axis(r2, c2),
                                            with_axis(r1, c2), with_axis(r2, c1)};
              return rep;
            }
          }
  }
  return {};
}

// Audit variant: the complete quadruple family, every pair of index tuples
// and every axis subset on which their values are exchanged.
template <class S>
ExchangeReport is_pure_exchange_full(const Tensor<S>& t) {
  const double scale2 = to_double(norm_sq(t));
  const int k = t.order();
  const std::vector<int>& dims = t.shape();
  for (std::size_t fa = 0; fa < t.size(); ++fa)
    for (std::size_t fb = fa; fb < t.size(); ++fb) {
      const std::vector<int> a = detail::unflatten(fa, dims);
      const std::vector<int> b = detail::unflatten(fb, dims);
      const S lhs = t[fa] * t[fb];
      for (unsigned mask = 0; mask < (1u << k); ++mask) {
        std::vector<int> c = a, d = b;
        for (int j = 0; j < k; ++j)
          if (mask & (1u << j)) std::swap(c[static_cast<std::size_t>(j)], d[static_cast<std::size_t>(j)]);
        const S rhs = t.at(c) * t.at(d);
        if (!detail::products_agree(lhs, rhs, scale2)) {
          ExchangeReport rep;
          rep.pure = false;
          rep.witness = ExchangeWitness{a, b, c, d};
          return rep;
        }
      }
    }
  return {};
}

inline int bipartite_rank(const Tensor<GaussianRational>& t, const std::vector<int>& row_axes) {
  return matrix_rank(matricize(t, row_axes));
}

inline int bipartite_rank(const Tensor<Complex>& t, const std::vector<int>& row_axes,
                          double tol = tol::rank_rel) {
  return matrix_rank(matricize(t, row_axes), tol);
}

// Frobenius norm of rho^2 - rho, where rho is the reduced density operator
// obtained by tracing the normalized rank-1 projector |t><t| over the axes in
// first_block.  (We work with M^* M, the transpose of that operator; the
// defect and the diagnostic (0,0) entry are transpose-invariant.)
inline double purity_defect(const Tensor<Complex>& t, const std::vector<int>& first_block) {
  const double n2 = to_double(norm_sq(t));
  if (n2 == 0.0) throw std::invalid_argument("purity_defect: zero tensor");
  const Mat<Complex> m = matricize(t, first_block);
  Eigen::MatrixXcd e = to_eigen(m) / std::sqrt(n2);
  Eigen::MatrixXcd rho = e.adjoint() * e;
  return (rho * rho - rho).norm();
}

// Degree-4 hyperdeterminant of a 2x2x2 tensor, evaluated monomial by
// monomial.  Vanishes exactly on the closure of the rank<=2 locus boundary:
// D = 0 iff the slice pencil has a repeated root.
template <class S>
S hyperdet(const Tensor<S>& t) {
  if (t.shape() != std::vector<int>{2, 2, 2}) throw std::invalid_argument("hyperdet: need shape [2,2,2]");
  const S &u000 = t[0], &u001 = t[1], &u010 = t[2], &u011 = t[3];
  const S &u100 = t[4], &u101 = t[5], &u110 = t[6], &u111 = t[7];
  return u000 * u000 * u111 * u111 + u001 * u001 * u110 * u110 +
         u010 * u010 * u101 * u101 + u011 * u011 * u100 * u100 -
         S(2) * (u000 * u001 * u110 * u111 + u000 * u010 * u101 * u111 +
                 u000 * u011 * u100 * u111 + u001 * u010 * u101 * u110 +
                 u001 * u011 * u110 * u100 + u010 * u011 * u101 * u100) +
         S(4) * (u000 * u011 * u101 * u110 + u001 * u010 * u100 * u111);
}

// det of the 4x4 matricization of a 2x2x2x2 tensor with rows over axes
// (perm[0],perm[1]) and columns over (perm[2],perm[3]), both row-major in the
// given order.  Axes are 1-based here, matching the notation Delta(ijkl).
template <class S>
S delta(const Tensor<S>& t, const std::array<int, 4>& perm) {
  if (t.shape() != std::vector<int>{2, 2, 2, 2})
    throw std::invalid_argument("delta: need shape [2,2,2,2]");
  std::array<bool, 4> seen{};
  for (int p : perm) {
    if (p < 1 || p > 4) throw std::invalid_argument("delta: axes must be 1..4");
    if (seen[static_cast<std::size_t>(p - 1)]) throw std::invalid_argument("delta: repeated axis");
    seen[static_cast<std::size_t>(p - 1)] = true;
  }
  Mat<S> m(4, 4);
  std::vector<int> idx(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          idx[static_cast<std::size_t>(perm[0] - 1)] = i;
          idx[static_cast<std::size_t>(perm[1] - 1)] = j;
          idx[static_cast<std::size_t>(perm[2] - 1)] = k;
          idx[static_cast<std::size_t>(perm[3] - 1)] = l;
          m(2 * i + j, 2 * k + l) = t.at(idx);
        }
  return det_small(m);
}

// Dimension-count lower bound on tensor rank: (prod d_j) / (sum d_j - k + 1).
inline Rational rank_lower_bound(const std::vector<int>& dims) {
  if (dims.size() < 2) throw std::invalid_argument("rank_lower_bound: need at least 2 axes");
  Rational num(1);
  long den = 1 - static_cast<long>(dims.size());
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("rank_lower_bound: dimensions must be positive");
    num *= d;
    den += d;
  }
  Rational q = num / Rational(den);
  q.canonicalize();
  return q;
}

inline long rank_lower_bound_ceil(const std::vector<int>& dims) {
  const Rational q = rank_lower_bound(dims);
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return c.get_si();
}

}  // namespace entrank
