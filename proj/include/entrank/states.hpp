#pragma once

#include <string>
#include <vector>

#include "entrank/tensor.hpp"

namespace entrank {

struct BuiltinEntry {
  std::string name;
  std::vector<int> shape;
  bool decomposition = false;  // strassen_decomp ships as a term list, not a tensor
  std::string summary;
};

// Bundled example states.  All entries are small integers, so every state is
// usable in either scalar domain.
const std::vector<BuiltinEntry>& builtin_catalog();

bool is_builtin_state(const std::string& name);

// Throws std::invalid_argument for names outside the catalog and for
// strassen_decomp (a decomposition, not a tensor).
Tensor<GaussianRational> builtin_state(const std::string& name);

// Seven-term decomposition of strassen222; its reconstruction is checked
// against the tensor on first access.
const Decomposition<GaussianRational>& strassen_decomposition();

}  // namespace entrank
