#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "entrank/als.hpp"
#include "entrank/homopoly.hpp"
#include "entrank/invariants.hpp"
#include "entrank/linalg.hpp"
#include "entrank/tensor.hpp"
#include "entrank/three_qubit.hpp"
#include "entrank/tolerances.hpp"

namespace entrank {

// The three Delta arguments that determine all 24 by (anti)symmetry.
inline constexpr std::array<std::array<int, 4>, 3> delta_representatives = {
    {{1, 2, 3, 4}, {1, 3, 2, 4}, {1, 4, 2, 3}}};

template <class S>
bool in_s3_closure(const Tensor<S>& t) {
  if (t.shape() != std::vector<int>{2, 2, 2, 2})
    throw std::invalid_argument("in_s3_closure: need shape [2,2,2,2]");
  if constexpr (scalar_traits<S>::is_exact) {
    for (const auto& perm : delta_representatives)
      if (!delta(t, perm).is_zero()) return false;
  } else {
    const double nsq = to_double(norm_sq(t));
    for (const auto& perm : delta_representatives)
      if (std::abs(delta(t, perm)) > tol::invariant_zero_rel * nsq * nsq) return false;
  }
  return true;
}

// Necessary condition for the closure of the rank<=2 stratum: every pairing
// of two axes against the other two flattens to rank <= 2.  Not sufficient;
// callers must label it as a necessary test only.
template <class S>
bool s2_closure_necessary(const Tensor<S>& t) {
  if (t.shape() != std::vector<int>{2, 2, 2, 2})
    throw std::invalid_argument("s2_closure_necessary: need shape [2,2,2,2]");
  for (int other = 1; other <= 3; ++other) {
    int r;
    if constexpr (scalar_traits<S>::is_exact)
      r = matrix_rank(matricize(t, {0, other}));
    else
      r = matrix_rank(matricize(t, {0, other}), tol::rank_rel);
    if (r > 2) return false;
  }
  return true;
}

struct Decompose4Result {
  Decomposition<Complex> decomposition;
  bool certified = false;
  std::string method;  // single-slice | slice-sum | pencil-generic | line-in-Z | als-fallback
  double residual = 0.0;  // relative reconstruction error
};

namespace detail {

inline void require_4q(const Tensor<Complex>& t, const char* who) {
  if (t.shape() != std::vector<int>{2, 2, 2, 2})
    throw std::invalid_argument(std::string(who) + ": need shape [2,2,2,2]");
  if (t.is_zero()) throw std::invalid_argument(std::string(who) + ": zero tensor");
}

inline void lift_into(Decomposition<Complex>& out, const Decomposition<Complex>& d3,
                      const std::vector<Complex>& h) {
  const double hn = vec_norm(h);
  const std::vector<Complex> hu = vec_unit(h);
  for (const auto& term : d3.terms) {
    Term<Complex> t4;
    t4.weight = term.weight * Complex(hn, 0.0);
    t4.factors = {hu, term.factors[0], term.factors[1], term.factors[2]};
    out.terms.push_back(std::move(t4));
  }
}

// Fixed evaluation grid on CP^1 for the pencil quartic; rational plus a few
// complex points so no input-specific geometry can hide all of them.
inline const std::vector<std::pair<Complex, Complex>>& pencil_grid() {
  static const std::vector<std::pair<Complex, Complex>> g = {
      {Complex(0), Complex(1)},
      {Complex(1), Complex(0)},
      {Complex(1), Complex(1)},
      {Complex(1), Complex(-1)},
      {Complex(1), Complex(2)},
      {Complex(1), Complex(-2)},
      {Complex(1), Complex(0.5)},
      {Complex(1), Complex(-0.5)},
      {Complex(1), Complex(3)},
      {Complex(1), Complex(-3)},
      {Complex(1), Complex(1.0 / 3.0)},
      {Complex(1), Complex(0, 1)},
      {Complex(1), Complex(0, -1)},
      {Complex(1), Complex(1, 1)},
      {Complex(1), Complex(1, -1)},
      {Complex(1), Complex(0, 2)},
      {Complex(1), Complex(1, 2)},
  };
  return g;
}

// Coefficients of q(x,y) = D(x v0 + y v1) by interpolation at five pencil
// points (D is quartic along the line).
inline HomPoly<Complex> pencil_quartic(const Tensor<Complex>& v0, const Tensor<Complex>& v1) {
  auto comb = [&](Complex x, Complex y) {
    return hyperdet(add(scale(v0, x), scale(v1, y)));
  };
  const Complex c0 = hyperdet(v0);
  const Complex c4 = hyperdet(v1);
  const Complex s1 = comb(Complex(1), Complex(1));
  const Complex s2 = comb(Complex(1), Complex(-1));
  const Complex s3 = comb(Complex(1), Complex(2));
  const Complex c2 = (s1 + s2) / Complex(2) - c0 - c4;
  const Complex odd = (s1 - s2) / Complex(2);
  const Complex k = s3 - c0 - Complex(4) * c2 - Complex(16) * c4;
  const Complex c3 = (k - Complex(2) * odd) / Complex(6);
  const Complex c1 = odd - c3;
  return HomPoly<Complex>{{c0, c1, c2, c3, c4}};
}

inline std::vector<Complex> unit_point(Complex x, Complex y) {
  return vec_unit({x, y});
}

// Decompose both slices in the (r1, r2) pencil basis and lift; empty result
// means the caller should fall through to the next branch.
inline bool two_point_split(const Tensor<Complex>& t, const std::vector<Complex>& r1,
                            const std::vector<Complex>& r2, int max_terms,
                            Decomposition<Complex>& out) {
  Mat<Complex> qm(2, 2, {r1[0], r1[1], r2[0], r2[1]});
  if (std::abs(det_small(qm)) < 1e-3) return false;
  const Mat<Complex> qinv = inverse2(qm);
  Decomposition<Complex> acc;
  try {
    for (int i = 0; i < 2; ++i) {
      const std::vector<Complex>& r = i == 0 ? r1 : r2;
      std::vector<Complex> h(2);
      for (int j = 0; j < 2; ++j) h[static_cast<std::size_t>(j)] = qinv(j, i);
      const Decomposition<Complex> d3 = decompose3(slice(t, 0, r));
      lift_into(acc, d3, h);
    }
  } catch (const std::exception&) {
    return false;
  }
  if (static_cast<int>(acc.terms.size()) > max_terms) return false;
  out = std::move(acc);
  return true;
}

// Points of the pencil line lying in some biseparable locus of the 3-qubit
// slice space: common roots of the six 2x2-minor quadratics per slice axis.
inline std::vector<ProjectivePoint> y_locus_points(const Tensor<Complex>& v0,
                                                   const Tensor<Complex>& v1, double nsq) {
  std::vector<ProjectivePoint> kept;
  auto consider = [&kept](const ProjectivePoint& p) {
    for (const auto& q : kept)
      if (chordal(p, q) < tol::root_cluster_chordal) return;
    kept.push_back(p);
  };
  for (int j = 0; j < 3; ++j) {
    const Mat<Complex> f0 = matricize(v0, {j});
    const Mat<Complex> f1 = matricize(v1, {j});
    std::vector<HomPoly<Complex>> quads;
    double maxcoef = 0.0;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) {
        const Complex a0 = det2(f0(0, p), f0(0, q), f0(1, p), f0(1, q));
        const Complex a2 = det2(f1(0, p), f1(0, q), f1(1, p), f1(1, q));
        const Complex a1 = det2(f0(0, p), f1(0, q), f0(1, p), f1(1, q)) +
                           det2(f1(0, p), f0(0, q), f1(1, p), f0(1, q));
        quads.push_back(HomPoly<Complex>{{a0, a1, a2}});
        for (const auto& c : quads.back().c) maxcoef = std::max(maxcoef, std::abs(c));
      }
    if (maxcoef <= tol::invariant_zero_rel * nsq) {
      // The whole line sits inside this locus; any basis points do.
      consider({Complex(1), Complex(0), 1});
      consider({Complex(0), Complex(1), 1});
      continue;
    }
    std::size_t pick = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < quads.size(); ++i) {
      double m = 0.0;
      for (const auto& c : quads[i].c) m = std::max(m, std::abs(c));
      if (m > best) {
        best = m;
        pick = i;
      }
    }
    const RootStructure rs = hom_roots(quads[pick], nsq);
    for (const auto& root : rs.roots) {
      const std::vector<Complex> u = unit_point(root.x, root.y);
      bool ok = true;
      for (const auto& quad : quads)
        if (std::abs(eval_hom(quad, u[0], u[1])) > tol::y_locus_verify_rel * nsq) {
          ok = false;
          break;
        }
      if (ok) consider(root);
    }
  }
  return kept;
}

}  // namespace detail

// Constructive decomposition into at most four pure terms.  Each branch's
// candidate is accepted only if it reconstructs within tolerance, so a branch
// that goes numerically bad falls through to the next one; `certified` is
// false only on the least-squares fallback.
inline Decompose4Result decompose4(const Tensor<Complex>& t) {
  detail::require_4q(t, "decompose4");
  const double tnorm = frobenius_norm(t);
  const double nsq = tnorm * tnorm;
  Decompose4Result out;

  auto accept = [&](Decomposition<Complex>&& cand, const char* method) {
    const double res = frobenius_distance(reconstruct(cand), t) / tnorm;
    if (res > tol::decompose_recon_rel) return false;
    out.decomposition = std::move(cand);
    out.certified = true;
    out.method = method;
    out.residual = res;
    return true;
  };

  const Mat<Complex> m0 = matricize(t, {0});
  if (matrix_rank(m0, tol::rank_rel) <= 1) {
    const SchmidtResult sv = schmidt(m0);
    const std::vector<Complex> g = {sv.u(0, 0), sv.u(1, 0)};
    std::vector<Complex> s3(8);
    for (int c = 0; c < 8; ++c)
      s3[static_cast<std::size_t>(c)] =
          Complex(sv.singular_values[0], 0.0) * std::conj(sv.v(c, 0));
    const Tensor<Complex> s3t({2, 2, 2}, std::move(s3));
    try {
      Decomposition<Complex> cand;
      detail::lift_into(cand, decompose3(s3t), g);
      accept(std::move(cand), "single-slice");
    } catch (const std::exception&) {
    }
  }

  const Tensor<Complex> v0 = slice(t, 0, {Complex(1), Complex(0)});
  const Tensor<Complex> v1 = slice(t, 0, {Complex(0), Complex(1)});

  if (out.method.empty()) {
    // Basis slices already cheap enough: their ranks add up within budget.
    try {
      if (classify3(v0).rank + classify3(v1).rank <= 4) {
        Decomposition<Complex> cand;
        detail::lift_into(cand, decompose3(v0), {Complex(1), Complex(0)});
        detail::lift_into(cand, decompose3(v1), {Complex(0), Complex(1)});
        accept(std::move(cand), "slice-sum");
      }
    } catch (const std::exception&) {
    }
  }

  if (out.method.empty()) {
    const HomPoly<Complex> quartic = detail::pencil_quartic(v0, v1);
    const double qthr = tol::invariant_zero_rel * nsq * nsq;
    // Generic pencil: pick the two grid points where the quartic is largest;
    // those slices are hyperdeterminant-nonzero and split into 2+2 terms.
    const auto& grid = detail::pencil_grid();
    std::vector<double> vals(grid.size());
    double vmax = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const std::vector<Complex> u = detail::unit_point(grid[i].first, grid[i].second);
      vals[i] = std::abs(eval_hom(quartic, u[0], u[1]));
      vmax = std::max(vmax, vals[i]);
    }
    if (vmax >= qthr) {
      std::size_t i1 = 0, i2 = grid.size();
      for (std::size_t i = 0; i < grid.size(); ++i)
        if (vals[i] > vals[i1]) i1 = i;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i == i1) continue;
        if (i2 == grid.size() || vals[i] > vals[i2]) i2 = i;
      }
      if (vals[i2] >= qthr) {
        const std::vector<Complex> r1 = detail::unit_point(grid[i1].first, grid[i1].second);
        const std::vector<Complex> r2 = detail::unit_point(grid[i2].first, grid[i2].second);
        Decomposition<Complex> cand;
        if (detail::two_point_split(t, r1, r2, 4, cand))
          accept(std::move(cand), "pencil-generic");
      }
    } else {
      // The whole pencil line lies in the hyperdeterminant hypersurface;
      // look for two points inside biseparable loci.
      const std::vector<ProjectivePoint> pts = detail::y_locus_points(v0, v1, nsq);
      if (pts.size() >= 2) {
        const std::vector<Complex> r1 = detail::unit_point(pts[0].x, pts[0].y);
        const std::vector<Complex> r2 = detail::unit_point(pts[1].x, pts[1].y);
        Decomposition<Complex> cand;
        if (detail::two_point_split(t, r1, r2, 4, cand))
          accept(std::move(cand), "line-in-Z");
      }
    }
  }

  if (out.method.empty()) {
    const FitReport fit = als_fit(t, 4, 12, 3000, 7071);
    out.decomposition = fit.decomposition;
    out.certified = false;
    out.method = "als-fallback";
    out.residual = frobenius_distance(reconstruct(out.decomposition), t) / tnorm;
  }
  return out;
}

struct RankCertificate {
  int claimed_rank = 0;  // decomposition term count (upper bound)
  int lower_bound = 0;
  std::string lower_evidence;
  bool exact = false;           // lower bound meets a certified decomposition
  std::string range_caveat;     // set when lower_bound < claimed_rank
  std::array<Complex, 3> delta_values{};
  std::array<int, 3> flattening_ranks{};
  Decompose4Result upper;
};

inline RankCertificate rank4(const Tensor<Complex>& t) {
  detail::require_4q(t, "rank4");
  const double nsq = to_double(norm_sq(t));
  RankCertificate cert;
  for (std::size_t i = 0; i < 3; ++i)
    cert.delta_values[i] = delta(t, delta_representatives[i]);
  for (int other = 1; other <= 3; ++other)
    cert.flattening_ranks[static_cast<std::size_t>(other - 1)] =
        matrix_rank(matricize(t, {0, other}), tol::rank_rel);

  int nonzero_delta = -1;
  for (std::size_t i = 0; i < 3; ++i)
    if (std::abs(cert.delta_values[i]) > tol::invariant_zero_rel * nsq * nsq) {
      nonzero_delta = static_cast<int>(i);
      break;
    }
  if (nonzero_delta >= 0) {
    cert.lower_bound = 4;
    const auto& p = delta_representatives[static_cast<std::size_t>(nonzero_delta)];
    cert.lower_evidence = "Delta(" + std::to_string(p[0]) + std::to_string(p[1]) +
                          std::to_string(p[2]) + std::to_string(p[3]) + ") is nonzero";
  } else {
    int maxflat = 0;
    for (int r : cert.flattening_ranks) maxflat = std::max(maxflat, r);
    if (maxflat >= 3) {
      cert.lower_bound = 3;
      cert.lower_evidence = "a two-axis flattening has rank >= 3";
    } else if (!is_pure_exchange(t).pure) {
      cert.lower_bound = 2;
      cert.lower_evidence = "entangled: an exchange relation fails";
    } else {
      cert.lower_bound = 1;
      cert.lower_evidence = "pure tensor";
    }
  }

  cert.upper = decompose4(t);
  cert.claimed_rank = static_cast<int>(cert.upper.decomposition.terms.size());
  cert.exact = cert.upper.certified && cert.lower_bound == cert.claimed_rank;
  if (cert.lower_bound < cert.claimed_rank)
    cert.range_caveat =
        "rank lies between " + std::to_string(cert.lower_bound) + " and " +
        std::to_string(cert.claimed_rank) +
        "; vanishing Delta invariants certify only membership in the closure of the "
        "rank-3 stratum (border rank <= 3), not a 3-term decomposition";
  return cert;
}

// Dimension of the tangent stabilizer of u = e0^4 + delta e1^4 + eps (e0+e1)^4:
// tuples (X_0,..,X_3) in gl(2)^4 whose combined action sends u into
// span{e0^4, e1^4}, i.e. the kernel of the 14x16 system over the mixed basis
// indices.
template <class S>
int stabilizer_dimension(const S& delta_param, const S& eps_param) {
  auto is_zero = [](const S& x) { return scalar_traits<S>::is_zero(x); };
  if (is_zero(delta_param) || is_zero(eps_param) || is_zero(delta_param - S(2) * eps_param))
    throw std::invalid_argument(
        "stabilizer_dimension: parameters must satisfy delta != 0, eps != 0, delta != 2*eps");
  std::array<S, 16> u;
  for (auto& x : u) x = eps_param;
  u[0] += S(1);
  u[15] += delta_param;
  Mat<S> m(14, 16);
  int row = 0;
  for (int idx = 1; idx < 15; ++idx, ++row) {
    for (int j = 0; j < 4; ++j) {
      const int bit = (idx >> (3 - j)) & 1;
      for (int q = 0; q < 2; ++q) {
        const int target = (idx & ~(1 << (3 - j))) | (q << (3 - j));
        // Column of X_j[p][q] with p = bit of idx on axis j.
        m(row, 4 * j + 2 * bit + q) += u[static_cast<std::size_t>(target)];
      }
    }
  }
  int rank;
  if constexpr (scalar_traits<S>::is_exact)
    rank = matrix_rank(m);
  else
    rank = matrix_rank(m, tol::rank_rel);
  return 16 - rank;
}

inline int s3_closure_dimension(int stab_dim) { return 18 - (stab_dim + 1); }

}  // namespace entrank
