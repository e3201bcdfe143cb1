#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "entrank/linalg.hpp"
#include "entrank/sampling.hpp"
#include "entrank/tensor.hpp"
#include "entrank/tolerances.hpp"

namespace entrank {

struct FitReport {
  double residual = 1.0;        // relative Frobenius
  Decomposition<Complex> decomposition;
  double max_factor_norm = 0.0; // largest factor-column norm (weights live in the last axis)
  int iterations = 0;           // iterations spent by the best restart
  bool blowup = false;          // max_factor_norm > als_blowup_factor * ||t||
};

namespace detail {

// Factor matrices F[ax] are d_ax x r; the tensor they encode is
// t[idx] = sum_j prod_ax F[ax](idx_ax, j).  Columns of every axis but the
// last are kept unit norm, so last-axis column norms are the term weights.
struct AlsState {
  std::vector<Eigen::MatrixXcd> f;
};

inline Eigen::MatrixXcd khatri_rao_others(const AlsState& st, int skip,
                                          const std::vector<int>& dims, int r) {
  std::size_t rows = 1;
  for (std::size_t a = 0; a < dims.size(); ++a)
    if (static_cast<int>(a) != skip) rows *= static_cast<std::size_t>(dims[a]);
  Eigen::MatrixXcd k(static_cast<Eigen::Index>(rows), r);
  std::vector<int> idx(dims.size(), 0);
  for (std::size_t row = 0; row < rows; ++row) {
    for (int j = 0; j < r; ++j) {
      Complex v(1.0, 0.0);
      for (std::size_t a = 0; a < dims.size(); ++a)
        if (static_cast<int>(a) != skip) v *= st.f[a](idx[a], j);
      k(static_cast<Eigen::Index>(row), j) = v;
    }
    for (std::size_t a = dims.size(); a-- > 0;) {
      if (static_cast<int>(a) == skip) continue;
      if (++idx[a] < dims[a]) break;
      idx[a] = 0;
    }
  }
  return k;
}

inline Tensor<Complex> als_reconstruct(const AlsState& st, const std::vector<int>& dims, int r) {
  auto t = Tensor<Complex>::zeros(dims);
  std::vector<Complex> d(t.size(), Complex(0));
  std::vector<int> idx(dims.size(), 0);
  for (std::size_t f = 0; f < d.size(); ++f) {
    for (int j = 0; j < r; ++j) {
      Complex v(1.0, 0.0);
      for (std::size_t a = 0; a < dims.size(); ++a) v *= st.f[a](idx[a], j);
      d[f] += v;
    }
    for (std::size_t a = dims.size(); a-- > 0;) {
      if (++idx[a] < dims[a]) break;
      idx[a] = 0;
    }
  }
  return Tensor<Complex>(dims, std::move(d));
}

inline void normalize_columns(AlsState& st, int order, int r) {
  for (int ax = 0; ax + 1 < order; ++ax)
    for (int j = 0; j < r; ++j) {
      const double n = st.f[static_cast<std::size_t>(ax)].col(j).norm();
      if (n > 0) {
        st.f[static_cast<std::size_t>(ax)].col(j) /= n;
        st.f[static_cast<std::size_t>(order - 1)].col(j) *= n;
      }
    }
}

inline double max_column_norm(const AlsState& st, int r) {
  double m = 0.0;
  for (const auto& f : st.f)
    for (int j = 0; j < r; ++j) m = std::max(m, f.col(j).norm());
  return m;
}

inline Decomposition<Complex> state_to_decomposition(const AlsState& st,
                                                     const std::vector<int>& dims, int r) {
  Decomposition<Complex> out;
  const std::size_t last = dims.size() - 1;
  for (int j = 0; j < r; ++j) {
    Term<Complex> term;
    const double w = st.f[last].col(j).norm();
    term.weight = Complex(w, 0.0);
    for (std::size_t a = 0; a < dims.size(); ++a) {
      std::vector<Complex> fac(static_cast<std::size_t>(dims[a]));
      for (int i = 0; i < dims[a]; ++i) fac[static_cast<std::size_t>(i)] = st.f[a](i, j);
      if (a == last) {
        if (w > 0)
          for (auto& x : fac) x /= w;
        else
          fac[0] = Complex(1.0, 0.0);  // zero weight: factor direction is arbitrary
      }
      term.factors.push_back(std::move(fac));
    }
    out.terms.push_back(std::move(term));
  }
  return out;
}

inline AlsState state_from_decomposition(const Decomposition<Complex>& d,
                                         const std::vector<int>& dims, int r, Rng& rng) {
  if (static_cast<int>(d.terms.size()) > r)
    throw std::invalid_argument("als_fit: init decomposition has more than r terms");
  AlsState st;
  st.f.resize(dims.size());
  for (std::size_t a = 0; a < dims.size(); ++a) st.f[a] = Eigen::MatrixXcd(dims[a], r);
  for (int j = 0; j < r; ++j) {
    const bool from_init = j < static_cast<int>(d.terms.size());
    for (std::size_t a = 0; a < dims.size(); ++a) {
      for (int i = 0; i < dims[a]; ++i) {
        Complex v;
        if (from_init) {
          v = d.terms[static_cast<std::size_t>(j)].factors.at(a).at(static_cast<std::size_t>(i));
          if (a + 1 == dims.size()) v *= d.terms[static_cast<std::size_t>(j)].weight;
        } else {
          v = rng.cgauss() * 1e-2;  // small padding terms so the init dominates
        }
        st.f[a](i, j) = v;
      }
    }
  }
  return st;
}

}  // namespace detail

// Best-of-restarts alternating least squares for an r-term fit.  If `init`
// is given it seeds restart 0 (padded with small random terms when it has
// fewer than r).  Deterministic for a given seed.
inline FitReport als_fit(const Tensor<Complex>& t, int r, int restarts, int max_iters,
                         std::uint64_t seed,
                         const std::optional<Decomposition<Complex>>& init = std::nullopt) {
  if (r < 1) throw std::invalid_argument("als_fit: r must be >= 1");
  if (restarts < 1 || max_iters < 1)
    throw std::invalid_argument("als_fit: restarts and max_iters must be >= 1");
  const double tnorm = frobenius_norm(t);
  if (tnorm == 0.0) throw std::invalid_argument("als_fit: zero tensor");
  const std::vector<int>& dims = t.shape();
  const int order = t.order();

  std::vector<Eigen::MatrixXcd> unfold_t(static_cast<std::size_t>(order));
  for (int ax = 0; ax < order; ++ax)
    unfold_t[static_cast<std::size_t>(ax)] = to_eigen(matricize(t, {ax})).transpose();

  Rng rng(seed);
  FitReport best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < restarts; ++restart) {
    detail::AlsState st;
    if (restart == 0 && init) {
      st = detail::state_from_decomposition(*init, dims, r, rng);
    } else {
      st.f.resize(static_cast<std::size_t>(order));
      for (int ax = 0; ax < order; ++ax) {
        st.f[static_cast<std::size_t>(ax)] = Eigen::MatrixXcd(dims[static_cast<std::size_t>(ax)], r);
        for (int j = 0; j < r; ++j) {
          for (int i = 0; i < dims[static_cast<std::size_t>(ax)]; ++i)
            st.f[static_cast<std::size_t>(ax)](i, j) = rng.cgauss();
          st.f[static_cast<std::size_t>(ax)].col(j).normalize();
        }
      }
    }

    double res = 2.0, window_best = 2.0;
    int iters = 0, since_improve = 0;
    for (int it = 0; it < max_iters; ++it) {
      for (int ax = 0; ax < order; ++ax) {
        const Eigen::MatrixXcd k = detail::khatri_rao_others(st, ax, dims, r);
        st.f[static_cast<std::size_t>(ax)] =
            k.completeOrthogonalDecomposition().solve(unfold_t[static_cast<std::size_t>(ax)]).transpose();
      }
      detail::normalize_columns(st, order, r);
      iters = it + 1;
      res = frobenius_distance(detail::als_reconstruct(st, dims, r), t) / tnorm;
      if (res < window_best - tol::als_plateau) {
        window_best = res;
        since_improve = 0;
      } else if (++since_improve >= 10) {
        break;
      }
    }

    if (res < best.residual) {
      best.residual = res;
      best.iterations = iters;
      best.max_factor_norm = detail::max_column_norm(st, r);
      best.decomposition = detail::state_to_decomposition(st, dims, r);
    }
  }
  best.blowup = best.max_factor_norm > tol::als_blowup_factor * tnorm;
  return best;
}

struct RankEstimate {
  int estimate = 0;          // smallest r reaching tol; the cap if none did
  bool reached_tol = false;
  bool blowup = false;       // diagnostic at the reported estimate
  std::vector<FitReport> reports;  // index i holds the fit at r = i+1
};

// Border-rank estimate: ALS residual thresholding undershoots the true rank
// exactly when a factor-norm blow-up occurs (the W-state phenomenon), so the
// caller must read `blowup` alongside `estimate`.
inline RankEstimate numeric_rank_estimate(const Tensor<Complex>& t, double tol, int restarts = 8,
                                          int max_iters = 2000, std::uint64_t seed = 1) {
  std::size_t prod = 1;
  int dmax = 1;
  for (int d : t.shape()) {
    prod *= static_cast<std::size_t>(d);
    dmax = std::max(dmax, d);
  }
  const int cap = static_cast<int>(prod) / dmax;
  RankEstimate out;
  for (int r = 1; r <= cap; ++r) {
    out.reports.push_back(als_fit(t, r, restarts, max_iters, seed + static_cast<std::uint64_t>(r)));
    const FitReport& rep = out.reports.back();
    if (rep.residual < tol) {
      out.estimate = r;
      out.reached_tol = true;
      out.blowup = rep.blowup;
      return out;
    }
  }
  out.estimate = cap;
  out.blowup = out.reports.empty() ? false : out.reports.back().blowup;
  return out;
}

// A decomposition is accepted when it reconstructs t within tol (relative)
// and no term carries a zero factor.
template <class S>
bool verify_decomposition(const Tensor<S>& t, const Decomposition<S>& d, double tol) {
  if (d.terms.empty()) return t.is_zero();
  for (const auto& term : d.terms) {
    if (static_cast<int>(term.factors.size()) != t.order()) return false;
    for (int a = 0; a < t.order(); ++a) {
      const auto& f = term.factors[static_cast<std::size_t>(a)];
      if (static_cast<int>(f.size()) != t.dim(a)) return false;
      bool nonzero = false;
      for (const auto& x : f)
        if (!scalar_traits<S>::is_zero(x)) nonzero = true;
      if (!nonzero) return false;
    }
  }
  const Tensor<S> rec = reconstruct(d);
  if constexpr (scalar_traits<S>::is_exact) {
    (void)tol;
    return sub(rec, t).is_zero();
  } else {
    return frobenius_distance(rec, t) <= tol * frobenius_norm(t);
  }
}

}  // namespace entrank
