#include "entrank/states.hpp"

#include <stdexcept>
#include <utility>

namespace entrank {
namespace {

using GR = GaussianRational;

Tensor<GR> from_units(const std::vector<int>& shape,
                      const std::vector<std::pair<std::vector<int>, int>>& entries) {
  Tensor<GR> acc = scale(basis_tensor<GR>(shape, entries[0].first), GR(entries[0].second));
  for (std::size_t i = 1; i < entries.size(); ++i)
    acc = add(acc, scale(basis_tensor<GR>(shape, entries[i].first), GR(entries[i].second)));
  return acc;
}

Tensor<GR> strassen222() {
  // Structure tensor of 2x2 matrix multiplication: coordinates (2i+j, 2j+l, 2i+l)
  // carry the coefficient of A_ij B_jl in (AB)_il.
  std::vector<GR> d(64, GR(0));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l)
        d[static_cast<std::size_t>(((2 * i + j) * 4 + (2 * j + l)) * 4 + (2 * i + l))] = GR(1);
  return Tensor<GR>({4, 4, 4}, std::move(d));
}

Decomposition<GR> build_strassen_decomp() {
  static constexpr int A[7][4] = {{1, 0, 0, 1}, {0, 0, 1, 1},  {1, 0, 0, 0}, {0, 0, 0, 1},
                                  {1, 1, 0, 0}, {-1, 0, 1, 0}, {0, 1, 0, -1}};
  static constexpr int B[7][4] = {{1, 0, 0, 1},  {1, 0, 0, 0}, {0, 1, 0, -1}, {-1, 0, 1, 0},
                                  {0, 0, 0, 1},  {1, 1, 0, 0}, {0, 0, 1, 1}};
  static constexpr int C[7][4] = {{1, 0, 0, 1},  {0, 0, 1, -1}, {0, 1, 0, 1}, {1, 0, 1, 0},
                                  {-1, 1, 0, 0}, {0, 0, 0, 1},  {1, 0, 0, 0}};
  auto row = [](const int (&r)[4]) {
    return std::vector<GR>{GR(r[0]), GR(r[1]), GR(r[2]), GR(r[3])};
  };
  Decomposition<GR> d;
  for (int r = 0; r < 7; ++r)
    d.terms.push_back({GR(1), {row(A[r]), row(B[r]), row(C[r])}});
  return d;
}

}  // namespace

const std::vector<BuiltinEntry>& builtin_catalog() {
  static const std::vector<BuiltinEntry> cat = {
      {"ghz3", {2, 2, 2}, false, "e000 + e111; rank-2 three-qubit state, nonzero hyperdeterminant"},
      {"w3", {2, 2, 2}, false, "e001 + e010 + e100; rank 3 but border rank 2"},
      {"epr", {2, 2}, false, "e00 + e11; maximally entangled pair, unnormalized"},
      {"paper_rank3", {2, 2, 2}, false, "e000 + e110 + e101; rank-3 state with a double pencil root"},
      {"real_vs_complex",
       {2, 2, 2},
       false,
       "e0(e00 - e11) + e1(e01 + e10); complex multiplication as a real bilinear map, complex rank "
       "2 but real rank 3"},
      {"ghz4", {2, 2, 2, 2}, false, "e0000 + e1111; rank-2 four-qubit state"},
      {"strassen222", {4, 4, 4}, false, "structure tensor of 2x2 matrix multiplication"},
      {"strassen_decomp", {4, 4, 4}, true,
       "seven-term decomposition of strassen222, validated at load"},
  };
  return cat;
}

bool is_builtin_state(const std::string& name) {
  for (const auto& e : builtin_catalog())
    if (e.name == name) return true;
  return false;
}

Tensor<GaussianRational> builtin_state(const std::string& name) {
  if (name == "ghz3") return from_units({2, 2, 2}, {{{0, 0, 0}, 1}, {{1, 1, 1}, 1}});
  if (name == "w3") return from_units({2, 2, 2}, {{{0, 0, 1}, 1}, {{0, 1, 0}, 1}, {{1, 0, 0}, 1}});
  if (name == "epr") return from_units({2, 2}, {{{0, 0}, 1}, {{1, 1}, 1}});
  if (name == "paper_rank3")
    return from_units({2, 2, 2}, {{{0, 0, 0}, 1}, {{1, 1, 0}, 1}, {{1, 0, 1}, 1}});
  if (name == "real_vs_complex")
    return from_units({2, 2, 2},
                      {{{0, 0, 0}, 1}, {{0, 1, 1}, -1}, {{1, 0, 1}, 1}, {{1, 1, 0}, 1}});
  if (name == "ghz4") return from_units({2, 2, 2, 2}, {{{0, 0, 0, 0}, 1}, {{1, 1, 1, 1}, 1}});
  if (name == "strassen222") return strassen222();
  if (name == "strassen_decomp")
    throw std::invalid_argument(
        "strassen_decomp is a decomposition, not a tensor; see strassen_decomposition()");
  throw std::invalid_argument("unknown builtin state: " + name);
}

const Decomposition<GaussianRational>& strassen_decomposition() {
  static const Decomposition<GR> d = [] {
    Decomposition<GR> cand = build_strassen_decomp();
    if (!sub(reconstruct(cand), strassen222()).is_zero())
      throw std::logic_error("bundled strassen decomposition failed its reconstruction check");
    return cand;
  }();
  return d;
}

}  // namespace entrank
