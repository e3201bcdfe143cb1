#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "entrank/homopoly.hpp"
#include "entrank/invariants.hpp"
#include "entrank/linalg.hpp"
#include "entrank/tensor.hpp"
#include "entrank/tolerances.hpp"

namespace entrank {

enum class Case3 { Pure, Biseparable, Rank2Generic, Rank3Degenerate };

inline const char* case3_name(Case3 c) {
  switch (c) {
    case Case3::Pure: return "Pure";
    case Case3::Biseparable: return "Biseparable";
    case Case3::Rank2Generic: return "Rank2Generic";
    case Case3::Rank3Degenerate: return "Rank3Degenerate";
  }
  return "?";
}

// Verdict plus the certificates it rests on: the hyperdeterminant, the three
// single-axis flattening ranks, and the root structure of the slice pencil.
template <class S>
struct Classification3 {
  Case3 tag = Case3::Pure;
  int biseparable_axis = -1;  // 0-based; set only for Biseparable
  int rank = 1;
  S d_value{};
  std::array<int, 3> deltas{};
  RootStructure pencil_roots;
};

namespace detail {

template <class S>
void require_3q(const Tensor<S>& t, const char* who) {
  if (t.shape() != std::vector<int>{2, 2, 2})
    throw std::invalid_argument(std::string(who) + ": need shape [2,2,2]");
  if (t.is_zero()) throw std::invalid_argument(std::string(who) + ": zero tensor");
}

template <class S>
Mat<S> to_mat2(const Tensor<S>& t) {
  Mat<S> m(t.dim(0), t.dim(1));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) m(r, c) = t.at({r, c});
  return m;
}

inline std::vector<Complex> mat_col(const Mat<Complex>& m, int c) {
  std::vector<Complex> v(static_cast<std::size_t>(m.rows()));
  for (int r = 0; r < m.rows(); ++r) v[static_cast<std::size_t>(r)] = m(r, c);
  return v;
}

}  // namespace detail

// P(x,y) = det(x*T(e0) + y*T(e1)) where T(v) is the axis-0 slice; its
// discriminant equals the hyperdeterminant.
template <class S>
HomPoly<S> pencil_poly(const Tensor<S>& t) {
  detail::require_3q(t, "pencil_poly");
  const Mat<S> a = detail::to_mat2(slice(t, 0, {S(1), S(0)}));
  const Mat<S> b = detail::to_mat2(slice(t, 0, {S(0), S(1)}));
  const S c0 = det_small(a);
  const S c2 = det_small(b);
  Mat<S> ab(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) ab(r, c) = a(r, c) + b(r, c);
  const S c1 = det_small(ab) - c0 - c2;
  return HomPoly<S>{{c0, c1, c2}};
}

namespace detail {

template <class S>
RootStructure pencil_roots_of(const Tensor<S>& t, const HomPoly<S>& p) {
  if constexpr (scalar_traits<S>::is_exact) {
    (void)t;
    return hom_roots(p);
  } else {
    return hom_roots(p, to_double(norm_sq(t)));
  }
}

// The expected pencil root structure per case; a mismatch means the numeric
// certificates straddle a tolerance boundary.
inline RootTag expected_tag(Case3 c, int axis) {
  switch (c) {
    case Case3::Pure: return RootTag::IdenticallyZero;
    case Case3::Biseparable: return axis == 0 ? RootTag::OneDouble : RootTag::IdenticallyZero;
    case Case3::Rank2Generic: return RootTag::TwoDistinct;
    case Case3::Rank3Degenerate: return RootTag::OneDouble;
  }
  return RootTag::GeneralList;
}

}  // namespace detail

template <class S>
Classification3<S> classify3(const Tensor<S>& t) {
  detail::require_3q(t, "classify3");
  Classification3<S> out;
  out.d_value = hyperdet(t);
  for (int j = 0; j < 3; ++j) out.deltas[static_cast<std::size_t>(j)] = bipartite_rank(t, {j});
  const HomPoly<S> p = pencil_poly(t);
  out.pencil_roots = detail::pencil_roots_of(t, p);

  if (is_pure_exchange(t).pure) {
    out.tag = Case3::Pure;
    out.rank = 1;
  } else {
    int ones = 0, axis = -1;
    for (int j = 0; j < 3; ++j)
      if (out.deltas[static_cast<std::size_t>(j)] == 1) {
        ++ones;
        axis = j;
      }
    if (ones >= 2)
      throw std::logic_error("classify3: multiple flattenings of rank 1 on a non-pure tensor");
    if (ones == 1) {
      out.tag = Case3::Biseparable;
      out.biseparable_axis = axis;
      out.rank = 2;
    } else {
      bool d_zero;
      if constexpr (scalar_traits<S>::is_exact) {
        d_zero = out.d_value.is_zero();
      } else {
        const double nsq = to_double(norm_sq(t));
        d_zero = std::abs(out.d_value) <= tol::invariant_zero_rel * nsq * nsq;
      }
      out.tag = d_zero ? Case3::Rank3Degenerate : Case3::Rank2Generic;
      out.rank = d_zero ? 3 : 2;
    }
  }

  if (out.pencil_roots.tag != detail::expected_tag(out.tag, out.biseparable_axis))
    throw std::runtime_error(
        std::string("classify3: pencil root structure (") +
        root_tag_name(out.pencil_roots.tag) + ") contradicts case " + case3_name(out.tag) +
        "; certificates straddle a tolerance boundary");
  return out;
}

namespace detail {

inline Decomposition<Complex> pure_decomp(const Tensor<Complex>& t) {
  std::size_t best = 0;
  double bestabs = -1;
  for (std::size_t f = 0; f < t.size(); ++f)
    if (std::abs(t[f]) > bestabs) {
      bestabs = std::abs(t[f]);
      best = f;
    }
  std::vector<int> anchor = unflatten(best, t.shape());
  Term<Complex> term;
  for (int j = 0; j < t.order(); ++j) {
    std::vector<int> idx = anchor;
    std::vector<Complex> fiber(static_cast<std::size_t>(t.dim(j)));
    for (int i = 0; i < t.dim(j); ++i) {
      idx[static_cast<std::size_t>(j)] = i;
      fiber[static_cast<std::size_t>(i)] = t.at(idx);
    }
    term.factors.push_back(vec_unit(fiber));
  }
  const Tensor<Complex> unit = pure(term.factors);
  Complex w(0);
  for (std::size_t f = 0; f < t.size(); ++f) w += std::conj(unit[f]) * t[f];
  term.weight = w;
  return {{term}};
}

// t = v (x) core on the biseparable axis; Schmidt-split the 2x2 core.
inline Decomposition<Complex> bisep_decomp(const Tensor<Complex>& t, int axis) {
  const Mat<Complex> m = matricize(t, {axis});
  const SchmidtResult sv = schmidt(m);
  const std::vector<Complex> v = mat_col(sv.u, 0);
  std::vector<Complex> core_flat(static_cast<std::size_t>(m.cols()), Complex(0));
  for (int c = 0; c < m.cols(); ++c)
    for (int r = 0; r < m.rows(); ++r)
      core_flat[static_cast<std::size_t>(c)] += std::conj(v[static_cast<std::size_t>(r)]) * m(r, c);
  Mat<Complex> core(2, 2, std::move(core_flat));
  const SchmidtResult cs = schmidt(core);
  const int p = axis == 0 ? 1 : 0;
  const int q = axis == 2 ? 1 : 2;
  Decomposition<Complex> out;
  for (int k = 0; k < 2; ++k) {
    Term<Complex> term;
    term.weight = Complex(cs.singular_values[static_cast<std::size_t>(k)], 0.0);
    term.factors.resize(3);
    term.factors[static_cast<std::size_t>(axis)] = v;
    term.factors[static_cast<std::size_t>(p)] = mat_col(cs.u, k);
    std::vector<Complex> vq = mat_col(cs.v, k);
    for (auto& x : vq) x = std::conj(x);
    term.factors[static_cast<std::size_t>(q)] = vq;
    out.terms.push_back(std::move(term));
  }
  return out;
}

// Unit 2-vector from a normalized projective point.
inline std::vector<Complex> point_vec(const ProjectivePoint& p) {
  return vec_unit({p.x, p.y});
}

// Leading rank-1 part of a 2x2 matrix: m ~ sigma * u (x) w.
struct RankOnePart {
  double sigma;
  std::vector<Complex> u, w;
};

inline RankOnePart rank1_of(const Mat<Complex>& m) {
  const SchmidtResult sv = schmidt(m);
  std::vector<Complex> w = mat_col(sv.v, 0);
  for (auto& x : w) x = std::conj(x);
  return {sv.singular_values[0], mat_col(sv.u, 0), std::move(w)};
}

// Case I: the two pencil roots give an axis-0 basis in which both slices are
// rank one.
inline Decomposition<Complex> rank2_decomp(const Tensor<Complex>& t, const RootStructure& roots) {
  const std::vector<Complex> r1 = point_vec(roots.roots.at(0));
  const std::vector<Complex> r2 = point_vec(roots.roots.at(1));
  Mat<Complex> qm(2, 2, {r1[0], r1[1], r2[0], r2[1]});
  if (std::abs(det_small(qm)) < tol::root_cluster_chordal)
    throw std::runtime_error(
        "decompose3: pencil roots nearly coincide while the hyperdeterminant is not "
        "numerically zero; rerun in exact mode if the input is rational");
  const Mat<Complex> qinv = inverse2(qm);
  Decomposition<Complex> out;
  for (int i = 0; i < 2; ++i) {
    const std::vector<Complex> h = detail::mat_col(qinv, i);
    const RankOnePart s = rank1_of(to_mat2(slice(t, 0, i == 0 ? r1 : r2)));
    Term<Complex> term;
    term.weight = Complex(s.sigma * vec_norm(h), 0.0);
    term.factors = {vec_unit(h), s.u, s.w};
    out.terms.push_back(std::move(term));
  }
  return out;
}

// Case II: structured three-term form t = v1(x)v2(x)v3 + w1(x)(v2(x)w3 + w2(x)v3),
// assembled at the pencil's double root.
struct Rank3Parts {
  std::vector<Complex> v1, v2, v3, w1, w2, w3;
};

inline Rank3Parts rank3_parts(const Tensor<Complex>& t, const RootStructure& roots) {
  const std::vector<Complex> r0 = point_vec(roots.roots.at(0));
  const std::vector<Complex> rc = perp2(r0);
  // Unitary basis (r0, rc) of the slice space; h-columns reproduce t from the
  // two slices.
  Mat<Complex> qm(2, 2, {r0[0], r0[1], rc[0], rc[1]});
  const Mat<Complex> qinv = qm.adjoint();
  const std::vector<Complex> h0 = mat_col(qinv, 0);
  const std::vector<Complex> h1 = mat_col(qinv, 1);
  const Mat<Complex> m0 = to_mat2(slice(t, 0, r0));
  const Mat<Complex> m1 = to_mat2(slice(t, 0, rc));
  const SchmidtResult sv = schmidt(m0);
  const double sigma0 = sv.singular_values[0];
  if (sigma0 <= 0)
    throw std::runtime_error("decompose3: vanishing slice at the double root");
  const std::vector<Complex> a = mat_col(sv.u, 0);
  const std::vector<Complex> ap = mat_col(sv.u, 1);
  const std::vector<Complex> bv = mat_col(sv.v, 0);
  const std::vector<Complex> bpv = mat_col(sv.v, 1);
  auto coeff = [&m1](const std::vector<Complex>& left, const std::vector<Complex>& right) {
    Complex s(0);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        s += std::conj(left[static_cast<std::size_t>(r)]) * m1(r, c) *
             right[static_cast<std::size_t>(c)];
    return s;
  };
  const Complex nu = coeff(a, bv);
  const Complex lam = coeff(a, bpv);
  const Complex mu = coeff(ap, bv);
  // The fourth coefficient (a', b') vanishes identically at a double root;
  // it is dropped rather than checked.
  std::vector<Complex> b = bv, bp = bpv;
  for (auto& x : b) x = std::conj(x);
  for (auto& x : bp) x = std::conj(x);
  Rank3Parts parts;
  parts.v1.resize(2);
  for (int i = 0; i < 2; ++i)
    parts.v1[static_cast<std::size_t>(i)] =
        Complex(sigma0, 0) * h0[static_cast<std::size_t>(i)] + nu * h1[static_cast<std::size_t>(i)];
  parts.v2 = a;
  parts.v3 = b;
  parts.w1 = h1;
  parts.w2 = vec_scale(ap, mu);
  parts.w3 = vec_scale(bp, lam);
  return parts;
}

inline Decomposition<Complex> rank3_decomp(const Rank3Parts& p) {
  auto mk = [](const std::vector<Complex>& f1, const std::vector<Complex>& f2,
               const std::vector<Complex>& f3) {
    Term<Complex> t;
    const double w = vec_norm(f1) * vec_norm(f2) * vec_norm(f3);
    if (w == 0.0) throw std::runtime_error("decompose3: degenerate three-term structure");
    t.weight = Complex(w, 0.0);
    t.factors = {vec_unit(f1), vec_unit(f2), vec_unit(f3)};
    return t;
  };
  return {{mk(p.v1, p.v2, p.v3), mk(p.w1, p.v2, p.w3), mk(p.w1, p.w2, p.v3)}};
}

}  // namespace detail

// Constructive decomposition with exactly rank(t) pure terms.
inline Decomposition<Complex> decompose3(const Tensor<Complex>& t) {
  const Classification3<Complex> cls = classify3(t);
  switch (cls.tag) {
    case Case3::Pure: return detail::pure_decomp(t);
    case Case3::Biseparable: return detail::bisep_decomp(t, cls.biseparable_axis);
    case Case3::Rank2Generic: return detail::rank2_decomp(t, cls.pencil_roots);
    case Case3::Rank3Degenerate:
      return detail::rank3_decomp(detail::rank3_parts(t, cls.pencil_roots));
  }
  throw std::logic_error("decompose3: unreachable");
}

// Local-unitary normal form.  canonical is the parameterized representative
// (unit norm); t / ||t|| = phase * (U1 (x) U2 (x) U3) canonical.
struct NormalForm3 {
  Case3 tag = Case3::Pure;
  int biseparable_axis = -1;
  std::vector<double> theta;  // case 2: {theta}; cases 3,4: {theta1,theta2,theta3}
  double lambda = 0.0;        // case 3 only
  Complex z{};                // case 3 only
  std::array<Mat<Complex>, 3> unitaries;
  Complex phase{1.0, 0.0};
  bool boundary = false;  // some angle within 1e-9 of 0 or pi/2
  Tensor<Complex> canonical;
};

namespace detail {

inline Mat<Complex> basis_to_unitary(const std::vector<Complex>& c0, const std::vector<Complex>& c1) {
  return Mat<Complex>(2, 2, {c0[0], c1[0], c0[1], c1[1]});
}

inline void flag_boundary(NormalForm3& nf) {
  constexpr double eps = 1e-9;
  constexpr double half_pi = 1.5707963267948966;
  for (double th : nf.theta)
    if (th < eps || th > half_pi - eps) nf.boundary = true;
}

inline Tensor<Complex> canonical_case4(double t1, double t2, double t3) {
  auto z = Tensor<Complex>::zeros({2, 2, 2});
  std::vector<Complex> d = z.data();
  d[0] = Complex(std::cos(t1), 0);                               // e000
  d[4] = Complex(std::sin(t1) * std::cos(t2) * std::cos(t3), 0); // e100
  d[5] = Complex(std::sin(t1) * std::cos(t2) * std::sin(t3), 0); // e101
  d[6] = Complex(std::sin(t1) * std::sin(t2), 0);                // e110
  return Tensor<Complex>({2, 2, 2}, std::move(d));
}

}  // namespace detail

inline NormalForm3 normal_form3(const Tensor<Complex>& t_in) {
  detail::require_3q(t_in, "normal_form3");
  const Tensor<Complex> t = scale(t_in, Complex(1.0 / frobenius_norm(t_in), 0.0));
  const Classification3<Complex> cls = classify3(t);
  NormalForm3 nf;
  nf.tag = cls.tag;

  if (cls.tag == Case3::Pure) {
    const Decomposition<Complex> d = detail::pure_decomp(t);
    nf.phase = d.terms[0].weight;
    for (int j = 0; j < 3; ++j) {
      const auto& f = d.terms[0].factors[static_cast<std::size_t>(j)];
      nf.unitaries[static_cast<std::size_t>(j)] = detail::basis_to_unitary(f, perp2(f));
    }
    nf.canonical = basis_tensor<Complex>({2, 2, 2}, {0, 0, 0});
    return nf;
  }

  if (cls.tag == Case3::Biseparable) {
    const int axis = cls.biseparable_axis;
    nf.biseparable_axis = axis;
    const Mat<Complex> m = matricize(t, {axis});
    const SchmidtResult sv = schmidt(m);
    const std::vector<Complex> v = detail::mat_col(sv.u, 0);
    std::vector<Complex> core_flat(4, Complex(0));
    for (int c = 0; c < 4; ++c)
      for (int r = 0; r < 2; ++r)
        core_flat[static_cast<std::size_t>(c)] +=
            std::conj(v[static_cast<std::size_t>(r)]) * m(r, c);
    const Mat<Complex> core(2, 2, std::move(core_flat));
    const SchmidtResult cs = schmidt(core);
    const double h = std::hypot(cs.singular_values[0], cs.singular_values[1]);
    nf.theta = {std::atan2(cs.singular_values[1], cs.singular_values[0])};
    nf.phase = Complex(h, 0.0);
    const int p = axis == 0 ? 1 : 0;
    const int q = axis == 2 ? 1 : 2;
    nf.unitaries[static_cast<std::size_t>(axis)] = detail::basis_to_unitary(v, perp2(v));
    nf.unitaries[static_cast<std::size_t>(p)] = cs.u;
    nf.unitaries[static_cast<std::size_t>(q)] = cs.v.conjugate();
    auto zt = Tensor<Complex>::zeros({2, 2, 2});
    std::vector<Complex> d = zt.data();
    std::vector<int> i0(3, 0), i1(3, 0);
    i1[static_cast<std::size_t>(p)] = 1;
    i1[static_cast<std::size_t>(q)] = 1;
    d[zt.flat_index(i0)] = Complex(std::cos(nf.theta[0]), 0);
    d[zt.flat_index(i1)] = Complex(std::sin(nf.theta[0]), 0);
    nf.canonical = Tensor<Complex>({2, 2, 2}, std::move(d));
    detail::flag_boundary(nf);
    return nf;
  }

  if (cls.tag == Case3::Rank2Generic) {
    const Decomposition<Complex> dec = detail::rank2_decomp(t, cls.pencil_roots);
    const Term<Complex>& tv = dec.terms[0];
    const Term<Complex>& tw = dec.terms[1];
    nf.theta.resize(3);
    double alpha_sum = 0.0;
    std::array<std::vector<Complex>, 3> vhat, ohat;
    for (int j = 0; j < 3; ++j) {
      const auto& vj = tv.factors[static_cast<std::size_t>(j)];
      const auto& wj = tw.factors[static_cast<std::size_t>(j)];
      const Complex c = vec_inner(vj, wj);
      std::vector<Complex> orth(2);
      for (int i = 0; i < 2; ++i) orth[static_cast<std::size_t>(i)] =
          wj[static_cast<std::size_t>(i)] - c * vj[static_cast<std::size_t>(i)];
      const double s = vec_norm(orth);
      nf.theta[static_cast<std::size_t>(j)] = std::atan2(s, std::abs(c));
      const double alpha = (std::abs(c) > 0) ? std::arg(c) : 0.0;
      alpha_sum += alpha;
      vhat[static_cast<std::size_t>(j)] = vj;
      std::vector<Complex> o = (s > 1e-14) ? vec_unit(orth) : perp2(vj);
      // Row 2 of the axis map is e^{i alpha} o^dagger, so w lands on
      // e^{i alpha}(cos, sin); fold the phase into the basis column.
      ohat[static_cast<std::size_t>(j)] = vec_scale(o, std::polar(1.0, -alpha));
    }
    const double phi = std::arg(tv.weight);
    nf.lambda = std::abs(tv.weight);
    nf.z = tw.weight * std::polar(1.0, alpha_sum - phi);
    nf.phase = std::polar(1.0, phi);
    for (int j = 0; j < 3; ++j)
      nf.unitaries[static_cast<std::size_t>(j)] = detail::basis_to_unitary(
          vhat[static_cast<std::size_t>(j)], ohat[static_cast<std::size_t>(j)]);
    auto zt = Tensor<Complex>::zeros({2, 2, 2});
    std::vector<Complex> d = zt.data();
    std::array<std::vector<Complex>, 3> w;
    for (int j = 0; j < 3; ++j)
      w[static_cast<std::size_t>(j)] = {Complex(std::cos(nf.theta[static_cast<std::size_t>(j)]), 0),
                                        Complex(std::sin(nf.theta[static_cast<std::size_t>(j)]), 0)};
    const Tensor<Complex> wt = pure(std::vector<std::vector<Complex>>{w[0], w[1], w[2]});
    d[0] = Complex(nf.lambda, 0);
    for (std::size_t f = 0; f < d.size(); ++f) d[f] += nf.z * wt[f];
    nf.canonical = Tensor<Complex>({2, 2, 2}, std::move(d));
    detail::flag_boundary(nf);
    return nf;
  }

  // Case 4: gauge w1 against v1 and w2 against v2, rotate to the structured
  // basis, then strip the three entry phases.
  detail::Rank3Parts p = detail::rank3_parts(t, cls.pencil_roots);
  {
    const double w1n = vec_norm(p.w1), v2n = vec_norm(p.v2);
    if (w1n < 1e-12 || v2n < 1e-12)
      throw std::runtime_error("normal_form3: degenerate rank-3 structure");
    const Complex alpha = -vec_inner(p.w1, p.v1) / Complex(w1n * w1n, 0);
    for (int i = 0; i < 2; ++i) {
      p.v1[static_cast<std::size_t>(i)] += alpha * p.w1[static_cast<std::size_t>(i)];
      p.w3[static_cast<std::size_t>(i)] -= alpha * p.v3[static_cast<std::size_t>(i)];
    }
    const Complex beta = vec_inner(p.v2, p.w2) / Complex(v2n * v2n, 0);
    for (int i = 0; i < 2; ++i) {
      p.w2[static_cast<std::size_t>(i)] -= beta * p.v2[static_cast<std::size_t>(i)];
      p.w3[static_cast<std::size_t>(i)] += beta * p.v3[static_cast<std::size_t>(i)];
    }
  }
  if (vec_norm(p.v1) < 1e-12 || vec_norm(p.v3) < 1e-12 || vec_norm(p.w2) < 1e-12)
    throw std::runtime_error("normal_form3: degenerate rank-3 structure");
  const Mat<Complex> v1m = detail::basis_to_unitary(vec_unit(p.v1), vec_unit(p.w1)).adjoint();
  const Mat<Complex> v2m = detail::basis_to_unitary(vec_unit(p.v2), vec_unit(p.w2)).adjoint();
  const Mat<Complex> v3m =
      detail::basis_to_unitary(vec_unit(p.v3), perp2(vec_unit(p.v3))).adjoint();
  Tensor<Complex> u = apply_local(t, {v1m, v2m, v3m});
  // Phase order matters: each step leaves the previously fixed entries real.
  std::array<double, 3> gamma{};
  gamma[0] = std::arg(u.at({1, 0, 0}));
  auto dphase = [](double g) {
    return Mat<Complex>(2, 2, {Complex(1), Complex(0), Complex(0), std::polar(1.0, -g)});
  };
  u = mode_apply(u, 0, dphase(gamma[0]));
  gamma[1] = std::arg(u.at({1, 1, 0}));
  u = mode_apply(u, 1, dphase(gamma[1]));
  gamma[2] = std::arg(u.at({1, 0, 1}));
  u = mode_apply(u, 2, dphase(gamma[2]));
  const double lam = u.at({0, 0, 0}).real();
  const double a = u.at({1, 0, 0}).real();
  const double b = u.at({1, 0, 1}).real();
  const double c = u.at({1, 1, 0}).real();
  const double mu = std::hypot(a, b);
  nf.theta = {std::atan2(std::hypot(mu, c), lam), std::atan2(c, mu), std::atan2(b, a)};
  const Mat<Complex> w1u = dphase(gamma[0]) * v1m;
  const Mat<Complex> w2u = dphase(gamma[1]) * v2m;
  const Mat<Complex> w3u = dphase(gamma[2]) * v3m;
  nf.unitaries = {w1u.adjoint(), w2u.adjoint(), w3u.adjoint()};
  nf.phase = Complex(1.0, 0.0);
  nf.canonical = detail::canonical_case4(nf.theta[0], nf.theta[1], nf.theta[2]);
  detail::flag_boundary(nf);
  return nf;
}

// Rank over the reals for a real-entried tensor: differs from the complex
// rank exactly in the generic case with conjugate pencil roots (D < 0).
template <class S>
int real_rank3(const Tensor<S>& t) {
  detail::require_3q(t, "real_rank3");
  for (std::size_t f = 0; f < t.size(); ++f) {
    bool real_entry;
    if constexpr (scalar_traits<S>::is_exact)
      real_entry = t[f].is_real();
    else
      real_entry = t[f].imag() == 0.0;
    if (!real_entry) throw std::invalid_argument("real_rank3: entries must be real");
  }
  const Classification3<S> cls = classify3(t);
  switch (cls.tag) {
    case Case3::Pure: return 1;
    case Case3::Biseparable: return 2;
    case Case3::Rank3Degenerate: return 3;
    case Case3::Rank2Generic: {
      bool positive;
      if constexpr (scalar_traits<S>::is_exact)
        positive = sgn(cls.d_value.re()) > 0;
      else
        positive = cls.d_value.real() > 0.0;
      return positive ? 2 : 3;
    }
  }
  throw std::logic_error("real_rank3: unreachable");
}

}  // namespace entrank
