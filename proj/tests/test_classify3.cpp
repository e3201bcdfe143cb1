#include "doctest.h"

#include "entrank/als.hpp"
#include "entrank/sampling.hpp"
#include "entrank/states.hpp"
#include "entrank/three_qubit.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace entrank;
using GR = GaussianRational;

namespace {

constexpr double kPi = 3.141592653589793;

// e_{idx[axis]} on one axis tensored with a 2x2 core on the other two.
Tensor<GR> bisep_state(int axis, const Tensor<GR>& core) {
  auto t = Tensor<GR>::zeros({2, 2, 2});
  std::vector<GR> d = t.data();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      std::vector<int> idx(3);
      idx[static_cast<std::size_t>(axis)] = 0;
      int p = 0;
      for (int j = 0; j < 3; ++j)
        if (j != axis) idx[static_cast<std::size_t>(j)] = (p++ == 0) ? a : b;
      d[t.flat_index(idx)] = core.at({a, b});
    }
  return Tensor<GR>({2, 2, 2}, std::move(d));
}

double recon_error(const Tensor<Complex>& t, const NormalForm3& nf) {
  const std::vector<Mat<Complex>> us(nf.unitaries.begin(), nf.unitaries.end());
  const Tensor<Complex> rec = scale(apply_local(nf.canonical, us), nf.phase);
  const Tensor<Complex> tn = scale(t, Complex(1.0 / frobenius_norm(t), 0.0));
  return frobenius_distance(rec, tn);
}

double unitary_defect(const Mat<Complex>& u) {
  const Mat<Complex> g = u.adjoint() * u;
  double s = 0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) s += std::norm(g(r, c) - (r == c ? Complex(1) : Complex(0)));
  return std::sqrt(s);
}

}  // namespace

TEST_SUITE("classify3") {

TEST_CASE("bundled states land in the expected cases") {
  const auto ghz = classify3(builtin_state("ghz3"));
  CHECK(ghz.tag == Case3::Rank2Generic);
  CHECK(ghz.rank == 2);
  CHECK(ghz.d_value == GR(1));
  CHECK(ghz.deltas == std::array<int, 3>{2, 2, 2});
  CHECK(ghz.pencil_roots.tag == RootTag::TwoDistinct);
  REQUIRE(ghz.pencil_roots.exact_roots);
  bool saw10 = false, saw01 = false;
  for (const auto& [x, y] : ghz.pencil_roots.exact_points) {
    if (x == GR(1) && y == GR(0)) saw10 = true;
    if (x == GR(0) && y == GR(1)) saw01 = true;
  }
  CHECK(saw10);
  CHECK(saw01);

  const auto w = classify3(builtin_state("w3"));
  CHECK(w.tag == Case3::Rank3Degenerate);
  CHECK(w.rank == 3);
  CHECK(w.d_value.is_zero());
  CHECK(w.pencil_roots.tag == RootTag::OneDouble);
  REQUIRE(w.pencil_roots.exact_points.size() == 1);
  CHECK(w.pencil_roots.exact_points[0].first == GR(0));
  CHECK(w.pencil_roots.exact_points[0].second == GR(1));
  CHECK(w.pencil_roots.roots[0].multiplicity == 2);

  const auto pr3 = classify3(builtin_state("paper_rank3"));
  CHECK(pr3.tag == Case3::Rank3Degenerate);
  CHECK(pr3.rank == 3);
  REQUIRE(pr3.pencil_roots.exact_points.size() == 1);
  CHECK(pr3.pencil_roots.exact_points[0].first == GR(1));
  CHECK(pr3.pencil_roots.exact_points[0].second == GR(0));

  const auto rvc = classify3(builtin_state("real_vs_complex"));
  CHECK(rvc.tag == Case3::Rank2Generic);
  CHECK(rvc.rank == 2);
  CHECK(rvc.d_value == GR(-4));
  REQUIRE(rvc.pencil_roots.exact_roots);
  bool saw_pi = false, saw_mi = false;
  for (const auto& [x, y] : rvc.pencil_roots.exact_points) {
    if (x == GR(1) && y == GR::i()) saw_pi = true;
    if (x == GR(1) && y == -GR::i()) saw_mi = true;
  }
  CHECK(saw_pi);
  CHECK(saw_mi);

  const auto pu = classify3(basis_tensor<GR>({2, 2, 2}, {0, 0, 0}));
  CHECK(pu.tag == Case3::Pure);
  CHECK(pu.rank == 1);
  CHECK(pu.deltas == std::array<int, 3>{1, 1, 1});
  CHECK(pu.pencil_roots.tag == RootTag::IdenticallyZero);
}

TEST_CASE("biseparable tensors are recognized on each axis") {
  const Tensor<GR> epr = builtin_state("epr");
  for (int axis = 0; axis < 3; ++axis) {
    const auto cls = classify3(bisep_state(axis, epr));
    CHECK(cls.tag == Case3::Biseparable);
    CHECK(cls.biseparable_axis == axis);
    CHECK(cls.rank == 2);
    CHECK(cls.deltas[static_cast<std::size_t>(axis)] == 1);
    CHECK(cls.d_value.is_zero());
  }
}

TEST_CASE("exact and numeric classification agree on integer tensors") {
  Rng rng(53);
  int seen_generic = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Tensor<GR> t = random_rational_tensor({2, 2, 2}, rng, 4);
    const auto ce = classify3(t);
    const auto cn = classify3(to_complex_tensor(t));
    CHECK(ce.tag == cn.tag);
    CHECK(ce.rank == cn.rank);
    CHECK(ce.deltas == cn.deltas);
    if (ce.tag == Case3::Rank2Generic) ++seen_generic;
  }
  CHECK(seen_generic > 20);  // random draws are generic nearly always
  CHECK_THROWS_AS(classify3(Tensor<GR>::zeros({2, 2, 2})), std::invalid_argument);
  CHECK_THROWS_AS(classify3(builtin_state("epr")), std::invalid_argument);
}

TEST_CASE("decompositions carry exactly rank-many terms and reconstruct") {
  struct Want {
    const char* name;
    std::size_t terms;
  };
  const Want wants[] = {{"ghz3", 2}, {"w3", 3}, {"paper_rank3", 3}, {"real_vs_complex", 2}};
  for (const auto& want : wants) {
    const Tensor<Complex> t = to_complex_tensor(builtin_state(want.name));
    const Decomposition<Complex> d = decompose3(t);
    CHECK(d.terms.size() == want.terms);
    CHECK(verify_decomposition(t, d, tol::decompose_recon_rel));
  }
  const Tensor<Complex> p =
      pure(std::vector<std::vector<Complex>>{{Complex(1), Complex(0, 2)},
                                             {Complex(3), Complex(-1)},
                                             {Complex(0.5), Complex(1, 1)}});
  const Decomposition<Complex> dp = decompose3(p);
  CHECK(dp.terms.size() == 1);
  CHECK(verify_decomposition(p, dp, tol::decompose_recon_rel));
}

TEST_CASE("random tensors decompose with term count equal to the classified rank") {
  Rng rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    const Tensor<Complex> t = random_tensor({2, 2, 2}, rng);
    const auto cls = classify3(t);
    const Decomposition<Complex> d = decompose3(t);
    CHECK(static_cast<int>(d.terms.size()) == cls.rank);
    CHECK(verify_decomposition(t, d, tol::decompose_recon_rel));
  }
}

TEST_CASE("biseparable decomposition shares the separated factor across terms") {
  const Tensor<GR> epr = builtin_state("epr");
  for (int axis = 0; axis < 3; ++axis) {
    const Tensor<Complex> t = to_complex_tensor(bisep_state(axis, epr));
    const Decomposition<Complex> d = decompose3(t);
    REQUIRE(d.terms.size() == 2);
    const auto& f0 = d.terms[0].factors[static_cast<std::size_t>(axis)];
    const auto& f1 = d.terms[1].factors[static_cast<std::size_t>(axis)];
    double dist = 0;
    for (int i = 0; i < 2; ++i)
      dist += std::norm(f0[static_cast<std::size_t>(i)] - f1[static_cast<std::size_t>(i)]);
    CHECK(std::sqrt(dist) < 1e-14);
    CHECK(verify_decomposition(t, d, tol::decompose_recon_rel));
  }
}

TEST_CASE("normal form reconstructs the input through local unitaries") {
  Rng rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const Tensor<Complex> t = random_tensor({2, 2, 2}, rng);
    const NormalForm3 nf = normal_form3(t);
    CHECK(recon_error(t, nf) < 1e-8);
    for (const auto& u : nf.unitaries) CHECK(unitary_defect(u) < 1e-12);
    CHECK(std::abs(frobenius_norm(nf.canonical) - 1.0) < 1e-10);
    CHECK(std::abs(std::abs(nf.phase) - 1.0) < 1e-10);
  }
  // Structured cases reconstruct too.
  for (const char* name : {"ghz3", "w3", "paper_rank3", "real_vs_complex"}) {
    const Tensor<Complex> t = to_complex_tensor(builtin_state(name));
    CHECK(recon_error(t, normal_form3(t)) < 1e-8);
  }
  const Tensor<Complex> bis = to_complex_tensor(bisep_state(1, builtin_state("epr")));
  CHECK(recon_error(bis, normal_form3(bis)) < 1e-8);
}

TEST_CASE("normal form parameters of the bundled states") {
  const NormalForm3 g = normal_form3(to_complex_tensor(builtin_state("ghz3")));
  CHECK(g.tag == Case3::Rank2Generic);
  REQUIRE(g.theta.size() == 3);
  for (double th : g.theta) CHECK(th == doctest::Approx(kPi / 2));
  CHECK(g.lambda == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(g.z - Complex(1.0 / std::sqrt(2.0), 0)) < 1e-12);
  CHECK(std::abs(g.phase - Complex(1, 0)) < 1e-12);
  CHECK(g.boundary);

  const NormalForm3 w = normal_form3(to_complex_tensor(builtin_state("w3")));
  CHECK(w.tag == Case3::Rank3Degenerate);
  REQUIRE(w.theta.size() == 3);
  CHECK(w.theta[0] == doctest::Approx(std::acos(1.0 / std::sqrt(3.0))));
  CHECK(w.theta[1] == doctest::Approx(kPi / 4));
  CHECK(w.theta[2] == doctest::Approx(kPi / 2));
  CHECK(w.boundary);

  const NormalForm3 b = normal_form3(to_complex_tensor(bisep_state(0, builtin_state("epr"))));
  CHECK(b.tag == Case3::Biseparable);
  CHECK(b.biseparable_axis == 0);
  REQUIRE(b.theta.size() == 1);
  CHECK(b.theta[0] == doctest::Approx(kPi / 4));  // balanced core
  CHECK_FALSE(b.boundary);
}

TEST_CASE("real rank differs from complex rank exactly at negative discriminant") {
  CHECK(real_rank3(builtin_state("ghz3")) == 2);
  CHECK(real_rank3(builtin_state("w3")) == 3);
  CHECK(real_rank3(builtin_state("paper_rank3")) == 3);
  CHECK(real_rank3(builtin_state("real_vs_complex")) == 3);
  CHECK(classify3(builtin_state("real_vs_complex")).rank == 2);
  CHECK(real_rank3(to_complex_tensor(builtin_state("real_vs_complex"))) == 3);
  CHECK(real_rank3(to_complex_tensor(builtin_state("ghz3"))) == 2);
  auto t = Tensor<GR>::zeros({2, 2, 2});
  std::vector<GR> d = t.data();
  d[0] = GR::i();
  d[7] = GR(1);
  CHECK_THROWS_AS(real_rank3(Tensor<GR>({2, 2, 2}, std::move(d))), std::invalid_argument);
}

}  // TEST_SUITE
