#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "entrank/scalar.hpp"
#include "entrank/tolerances.hpp"

namespace entrank {

// Homogeneous P(x,y) = sum_i c[i] x^(d-i) y^i with d = c.size()-1.
template <class S>
struct HomPoly {
  std::vector<S> c;
  int degree() const { return static_cast<int>(c.size()) - 1; }
};

template <class S>
S eval_hom(const HomPoly<S>& p, const S& x, const S& y) {
  // Horner in x/y mixed form: accumulate powers explicitly, degrees are tiny.
  S acc(0), xp(1);
  const int d = p.degree();
  std::vector<S> ypow(static_cast<std::size_t>(d) + 1, S(1));
  for (int i = 1; i <= d; ++i) ypow[static_cast<std::size_t>(i)] = ypow[static_cast<std::size_t>(i - 1)] * y;
  for (int i = d; i >= 0; --i) {
    acc += p.c[static_cast<std::size_t>(i)] * xp * ypow[static_cast<std::size_t>(i)];
    xp *= x;
  }
  return acc;
}

template <class S>
S disc2(const HomPoly<S>& p) {
  if (p.degree() != 2) throw std::invalid_argument("disc2: need degree 2");
  return p.c[1] * p.c[1] - S(4) * p.c[0] * p.c[2];
}

enum class RootTag { TwoDistinct, OneDouble, IdenticallyZero, GeneralList };

inline const char* root_tag_name(RootTag t) {
  switch (t) {
    case RootTag::TwoDistinct: return "two-distinct";
    case RootTag::OneDouble: return "one-double";
    case RootTag::IdenticallyZero: return "identically-zero";
    case RootTag::GeneralList: return "general";
  }
  return "?";
}

// Point of CP^1, stored normalized: either x == 1 or (x,y) == (0,1).
struct ProjectivePoint {
  Complex x, y;
  int multiplicity = 1;
};

struct RootStructure {
  RootTag tag = RootTag::IdenticallyZero;
  std::vector<ProjectivePoint> roots;
  // When the degree-2 discriminant has an exact square root, exact_points
  // holds the same roots in exact coordinates, parallel to `roots`.
  bool exact_roots = false;
  std::vector<std::pair<GaussianRational, GaussianRational>> exact_points;
};

inline ProjectivePoint normalize_point(Complex x, Complex y, int mult = 1) {
  const double ax = std::abs(x), ay = std::abs(y);
  if (ax == 0.0 && ay == 0.0) throw std::invalid_argument("normalize_point: zero pair");
  if (ax <= 1e-12 * std::max(ax, ay)) return {Complex(0), Complex(1), mult};
  return {Complex(1), y / x, mult};
}

inline double chordal(const ProjectivePoint& p, const ProjectivePoint& q) {
  const double np = std::hypot(std::abs(p.x), std::abs(p.y));
  const double nq = std::hypot(std::abs(q.x), std::abs(q.y));
  return std::abs(p.x * q.y - p.y * q.x) / (np * nq);
}

namespace detail {

// Stable quadratic: q = -(c1 + s*sqrt(disc))/2 with the sign that avoids
// cancellation; roots are then (q : c0) and (c2 : q).
inline std::pair<ProjectivePoint, ProjectivePoint> quad_roots(Complex c0, Complex c1, Complex c2,
                                                              Complex disc) {
  const Complex w = std::sqrt(disc);
  const Complex qp = -(c1 + w), qm = -(c1 - w);
  const Complex q = (std::abs(qp) >= std::abs(qm) ? qp : qm) / Complex(2);
  return {normalize_point(q, c0), normalize_point(c2, q)};
}

inline ProjectivePoint double_root_point(Complex c0, Complex c1, Complex c2) {
  // At a double root the two representations agree; take the better scaled one.
  const double n1 = std::max(std::abs(c1), 2.0 * std::abs(c0));
  const double n2 = std::max(2.0 * std::abs(c2), std::abs(c1));
  if (n1 >= n2) return normalize_point(-c1, Complex(2) * c0, 2);
  return normalize_point(Complex(-2) * c2, c1, 2);
}

}  // namespace detail

// Exact root analysis; degree 2 only.  Tag decisions are exact; root
// coordinates stay exact when the discriminant is a perfect square in Q(i).
inline RootStructure hom_roots(const HomPoly<GaussianRational>& p) {
  if (p.degree() != 2)
    throw std::invalid_argument("hom_roots: exact analysis supports degree 2 only");
  const GaussianRational &c0 = p.c[0], &c1 = p.c[1], &c2 = p.c[2];
  RootStructure out;
  if (c0.is_zero() && c1.is_zero() && c2.is_zero()) {
    out.tag = RootTag::IdenticallyZero;
    return out;
  }
  const GaussianRational disc = disc2(p);
  auto push_exact = [&out](GaussianRational x, GaussianRational y, int mult) {
    if (!x.is_zero()) {
      y = y / x;
      x = GaussianRational(1);
    } else {
      y = GaussianRational(1);
    }
    out.roots.push_back({x.to_complex(), y.to_complex(), mult});
    out.exact_points.emplace_back(std::move(x), std::move(y));
  };
  if (disc.is_zero()) {
    out.tag = RootTag::OneDouble;
    out.exact_roots = true;
    if (!c0.is_zero())
      push_exact(-c1, GaussianRational(2) * c0, 2);
    else
      push_exact(GaussianRational(-2) * c2, c1, 2);
    return out;
  }
  out.tag = RootTag::TwoDistinct;
  if (auto w = exact_sqrt(disc)) {
    out.exact_roots = true;
    const GaussianRational qp = -c1 - *w;
    const GaussianRational qm = -c1 + *w;
    const GaussianRational q =
        (qp.norm_sq() >= qm.norm_sq() ? qp : qm) / GaussianRational(2);
    push_exact(q, c0, 1);
    push_exact(c2, q, 1);
  } else {
    auto [r1, r2] = detail::quad_roots(c0.to_complex(), c1.to_complex(), c2.to_complex(),
                                       disc.to_complex());
    out.roots = {r1, r2};
  }
  return out;
}

// Numeric root analysis for degrees 2 and 4.  `scale` is the natural
// magnitude of the coefficients (||t||^k for coefficients of degree k in the
// entries of t); coefficients below invariant_zero_rel * scale count as zero
// and the degree-2 discriminant is compared against the square of that line.
inline RootStructure hom_roots(const HomPoly<Complex>& p, double scale) {
  const int d = p.degree();
  if (d != 2 && d != 4) throw std::invalid_argument("hom_roots: degree must be 2 or 4");
  if (!(scale > 0)) throw std::invalid_argument("hom_roots: scale must be positive");
  const double czero = tol::invariant_zero_rel * scale;
  RootStructure out;
  bool allzero = true;
  for (const auto& c : p.c)
    if (std::abs(c) >= czero) allzero = false;
  if (allzero) {
    out.tag = RootTag::IdenticallyZero;
    return out;
  }
  if (d == 2) {
    const Complex c0 = p.c[0], c1 = p.c[1], c2 = p.c[2];
    const Complex disc = disc2(p);
    if (std::abs(disc) <= tol::invariant_zero_rel * scale * scale) {
      out.tag = RootTag::OneDouble;
      out.roots = {detail::double_root_point(c0, c1, c2)};
    } else {
      out.tag = RootTag::TwoDistinct;
      auto [r1, r2] = detail::quad_roots(c0, c1, c2, disc);
      out.roots = {r1, r2};
    }
    return out;
  }
  // Degree 4: strip near-zero end coefficients (roots at (1:0) / (0:1)),
  // run the companion matrix on the rest, then cluster multiplicities.
  double cmax = 0;
  for (const auto& c : p.c) cmax = std::max(cmax, std::abs(c));
  const double strip = tol::quartic_strip_rel * cmax;
  int lo = 0, hi = d;
  std::vector<ProjectivePoint> pts;
  while (lo <= hi && std::abs(p.c[static_cast<std::size_t>(lo)]) <= strip) {
    pts.push_back({Complex(1), Complex(0), 1});
    ++lo;
  }
  while (hi >= lo && std::abs(p.c[static_cast<std::size_t>(hi)]) <= strip) {
    pts.push_back({Complex(0), Complex(1), 1});
    --hi;
  }
  const int dd = hi - lo;  // degree of the stripped polynomial in z = x/y
  if (dd >= 1) {
    const Complex lead = p.c[static_cast<std::size_t>(lo)];
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(dd, dd);
    for (int i = 1; i < dd; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < dd; ++i)
      comp(i, dd - 1) = -p.c[static_cast<std::size_t>(hi - i)] / lead;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("hom_roots: eigensolver failed");
    for (int i = 0; i < dd; ++i) pts.push_back(normalize_point(es.eigenvalues()(i), Complex(1)));
  }
  out.tag = RootTag::GeneralList;
  for (const auto& pt : pts) {
    bool merged = false;
    for (auto& r : out.roots)
      if (chordal(r, pt) < tol::root_cluster_chordal) {
        r.multiplicity += pt.multiplicity;
        merged = true;
        break;
      }
    if (!merged) out.roots.push_back(pt);
  }
  return out;
}

}  // namespace entrank
