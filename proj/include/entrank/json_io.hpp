#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>

#include "json.hpp"

#include "entrank/tensor.hpp"

namespace entrank {

using Json = nlohmann::ordered_json;

// Unreadable or structurally invalid input data (as opposed to a violated
// mathematical precondition).  The CLI maps this to its own exit code.
struct MalformedInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tensor as read from disk, in whichever scalar domain the file used:
// {"shape":[...], "entries":[{"re":"p/q","im":"r/s"},...]} is exact,
// {"shape":[...], "re":[...], "im":[...]} is approx.  Flat order is row-major
// with the last index fastest, matching Tensor's layout.
using ParsedTensor = std::variant<Tensor<GaussianRational>, Tensor<Complex>>;

ParsedTensor parse_tensor_json(const Json& j);
ParsedTensor parse_tensor_text(const std::string& text);

Json scalar_json(const GaussianRational& z);
Json scalar_json(const Complex& z);

Json tensor_json(const Tensor<GaussianRational>& t);
Json tensor_json(const Tensor<Complex>& t);

Json decomposition_json(const Decomposition<GaussianRational>& d);
Json decomposition_json(const Decomposition<Complex>& d);

// Whole-stream read with parse errors reported as MalformedInput.
Json read_json_stream(std::istream& in, const std::string& source_name);

}  // namespace entrank
