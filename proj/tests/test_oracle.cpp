#include "doctest.h"

#include "entrank/als.hpp"
#include "entrank/invariants.hpp"
#include "entrank/sampling.hpp"
#include "entrank/states.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace entrank;
using GR = GaussianRational;

TEST_SUITE("states") {

TEST_CASE("catalog lists every bundled name exactly once") {
  const auto& cat = builtin_catalog();
  CHECK(cat.size() == 8);
  int tensors = 0, decomps = 0;
  for (const auto& e : cat) {
    CHECK_FALSE(e.summary.empty());
    CHECK(is_builtin_state(e.name));
    if (e.decomposition) {
      ++decomps;
      CHECK_THROWS_AS(builtin_state(e.name), std::invalid_argument);
    } else {
      ++tensors;
      CHECK(builtin_state(e.name).shape() == e.shape);
    }
  }
  CHECK(tensors == 7);
  CHECK(decomps == 1);
  CHECK_FALSE(is_builtin_state("no_such_state"));
  CHECK_THROWS_AS(builtin_state("no_such_state"), std::invalid_argument);
}

TEST_CASE("bundled tensors have the frozen entry patterns") {
  const Tensor<GR> epr = builtin_state("epr");
  CHECK(epr.at({0, 0}) == GR(1));
  CHECK(epr.at({1, 1}) == GR(1));
  CHECK(epr.at({0, 1}).is_zero());

  const Tensor<GR> ghz3 = builtin_state("ghz3");
  CHECK(ghz3.at({0, 0, 0}) == GR(1));
  CHECK(ghz3.at({1, 1, 1}) == GR(1));

  const Tensor<GR> w3 = builtin_state("w3");
  CHECK(w3.at({0, 0, 1}) == GR(1));
  CHECK(w3.at({0, 1, 0}) == GR(1));
  CHECK(w3.at({1, 0, 0}) == GR(1));
  CHECK(w3.at({1, 1, 1}).is_zero());

  const Tensor<GR> pr = builtin_state("paper_rank3");
  CHECK(pr.at({0, 0, 0}) == GR(1));
  CHECK(pr.at({1, 1, 0}) == GR(1));
  CHECK(pr.at({1, 0, 1}) == GR(1));

  const Tensor<GR> rvc = builtin_state("real_vs_complex");
  CHECK(rvc.at({0, 0, 0}) == GR(1));
  CHECK(rvc.at({0, 1, 1}) == GR(-1));
  CHECK(rvc.at({1, 0, 1}) == GR(1));
  CHECK(rvc.at({1, 1, 0}) == GR(1));

  const Tensor<GR> ghz4 = builtin_state("ghz4");
  CHECK(ghz4.at({0, 0, 0, 0}) == GR(1));
  CHECK(ghz4.at({1, 1, 1, 1}) == GR(1));
}

TEST_CASE("strassen222 is the 2x2 matrix multiplication tensor") {
  const Tensor<GR> t = builtin_state("strassen222");
  REQUIRE(t.shape() == std::vector<int>{4, 4, 4});
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        const int i = a / 2, j = a % 2;
        const int j2 = b / 2, l = b % 2;
        const int i2 = c / 2, l2 = c % 2;
        const bool hit = (j == j2) && (i == i2) && (l == l2);
        CHECK(t.at({a, b, c}) == (hit ? GR(1) : GR(0)));
      }

  // Contracting with vec(A) and vec(B) must produce vec(A B) exactly.
  Rng rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    const Tensor<GR> va = random_rational_tensor({4}, rng);
    const Tensor<GR> vb = random_rational_tensor({4}, rng);
    const Tensor<GR> out = slice(slice(t, 0, va.data()), 0, vb.data());
    for (int i = 0; i < 2; ++i)
      for (int l = 0; l < 2; ++l) {
        GR acc(0);
        for (int j = 0; j < 2; ++j)
          acc += va.at({2 * i + j}) * vb.at({2 * j + l});
        CHECK(out.at({2 * i + l}) == acc);
      }
  }
}

TEST_CASE("the seven-term decomposition reconstructs strassen222 exactly") {
  const Decomposition<GR>& d = strassen_decomposition();
  REQUIRE(d.terms.size() == 7);
  for (const auto& term : d.terms) {
    CHECK(term.factors.size() == 3);
    for (const auto& f : term.factors) CHECK(f.size() == 4);
  }
  const Tensor<GR> t = builtin_state("strassen222");
  CHECK(verify_decomposition(t, d, 0.0));
  CHECK(sub(reconstruct(d), t).is_zero());
  // Seven terms meet the dimension-count floor for this shape.
  CHECK(rank_lower_bound_ceil({4, 4, 4}) == 7);
  for (int ax = 0; ax < 3; ++ax) CHECK(bipartite_rank(t, {ax}) == 4);
}

TEST_CASE("delta agrees with a directly assembled 4x4 determinant") {
  Rng rng(89);
  for (int trial = 0; trial < 15; ++trial) {
    const Tensor<GR> t = random_rational_tensor({2, 2, 2, 2}, rng);
    Mat<GR> m(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) m(2 * i + j, 2 * k + l) = t.at({i, j, k, l});
    CHECK(delta(t, std::array<int, 4>{1, 2, 3, 4}) == det_small(m));
    // The (12|34) matricization is that same matrix.
    CHECK(matricize(t, {0, 1}) == m);
  }
}

TEST_CASE("epr yields the canonical exchange witness") {
  const ExchangeReport rep = is_pure_exchange(builtin_state("epr"));
  CHECK_FALSE(rep.pure);
  REQUIRE(rep.witness);
  CHECK(rep.witness->a == std::vector<int>{0, 0});
  CHECK(rep.witness->b == std::vector<int>{1, 1});
  CHECK(rep.witness->c == std::vector<int>{0, 1});
  CHECK(rep.witness->d == std::vector<int>{1, 0});
}

TEST_CASE("two-row reduced density operators satisfy the determinant identity") {
  // For a 2xN flattening phi with ||phi||_F = 1, rho - rho^2 is the scalar
  // matrix det(rho) I, so the purity defect equals sqrt(2) |det phi|^2 after
  // normalization.
  Rng rng(97);
  for (int trial = 0; trial < 20; ++trial) {
    const Tensor<Complex> t = random_tensor({2, 2}, rng);
    const Mat<Complex> phi = matricize(t, {0});
    const double n2 = to_double(norm_sq(t));
    const double det2abs = std::norm(det_small(phi));
    CHECK(purity_defect(t, {0}) ==
          doctest::Approx(std::sqrt(2.0) * det2abs / (n2 * n2)).epsilon(1e-9));
  }
  // A 2xN flattening reduces the same way: rho is 2x2 with unit trace.
  for (int trial = 0; trial < 10; ++trial) {
    const Tensor<Complex> t = random_tensor({2, 2, 2}, rng);
    const Mat<Complex> phi = matricize(t, {1});
    Eigen::MatrixXcd e = to_eigen(phi) / std::sqrt(to_double(norm_sq(t)));
    Eigen::MatrixXcd rho = e * e.adjoint();
    const double detrho = std::abs(rho(0, 0) * rho(1, 1) - rho(0, 1) * rho(1, 0));
    CHECK(purity_defect(t, {1}) == doctest::Approx(std::sqrt(2.0) * detrho).epsilon(1e-9));
  }
}

}  // TEST_SUITE
