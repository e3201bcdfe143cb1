#include "entrank/json_io.hpp"

#include <istream>
#include <sstream>
#include <utility>
#include <vector>

namespace entrank {
namespace {

std::vector<int> parse_shape(const Json& j) {
  if (!j.is_object() || !j.contains("shape") || !j["shape"].is_array())
    throw MalformedInput("tensor JSON needs a \"shape\" array");
  std::vector<int> shape;
  for (const auto& d : j["shape"]) {
    if (!d.is_number_integer())
      throw MalformedInput("tensor shape entries must be integers");
    shape.push_back(d.get<int>());
  }
  return shape;
}

Rational rational_field(const Json& v, const char* key) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw MalformedInput(std::string("rational \"") + key + "\" must be a string like \"p/q\"");
}

template <class T>
Tensor<T> checked_tensor(std::vector<int> shape, std::vector<T> data) {
  try {
    return Tensor<T>(std::move(shape), std::move(data));
  } catch (const std::invalid_argument& e) {
    throw MalformedInput(e.what());
  }
}

}  // namespace

ParsedTensor parse_tensor_json(const Json& j) {
  std::vector<int> shape = parse_shape(j);
  if (j.contains("entries")) {
    const Json& ents = j["entries"];
    if (!ents.is_array()) throw MalformedInput("\"entries\" must be an array");
    std::vector<GaussianRational> data;
    data.reserve(ents.size());
    for (const auto& e : ents) {
      if (!e.is_object() || !e.contains("re"))
        throw MalformedInput("exact entries must be objects with \"re\" (and optional \"im\")");
      Rational re;
      Rational im(0);
      try {
        re = rational_field(e["re"], "re");
        if (e.contains("im")) im = rational_field(e["im"], "im");
      } catch (const std::invalid_argument& ex) {
        throw MalformedInput(ex.what());
      }
      data.emplace_back(std::move(re), std::move(im));
    }
    return checked_tensor(std::move(shape), std::move(data));
  }
  if (j.contains("re")) {
    const Json& re = j["re"];
    if (!re.is_array()) throw MalformedInput("\"re\" must be an array of numbers");
    std::vector<Complex> data;
    data.reserve(re.size());
    for (const auto& x : re) {
      if (!x.is_number()) throw MalformedInput("\"re\" must be an array of numbers");
      data.emplace_back(x.get<double>(), 0.0);
    }
    if (j.contains("im")) {
      const Json& im = j["im"];
      if (!im.is_array() || im.size() != data.size())
        throw MalformedInput("\"im\" must be an array matching \"re\" in length");
      for (std::size_t i = 0; i < data.size(); ++i) {
        if (!im[i].is_number()) throw MalformedInput("\"im\" must be an array of numbers");
        data[i].imag(im[i].get<double>());
      }
    }
    return checked_tensor(std::move(shape), std::move(data));
  }
  throw MalformedInput("tensor JSON needs either \"entries\" (exact) or \"re\"/\"im\" (approx)");
}

ParsedTensor parse_tensor_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw MalformedInput(std::string("JSON parse error: ") + e.what());
  }
  return parse_tensor_json(j);
}

Json scalar_json(const GaussianRational& z) {
  return Json{{"re", rational_str(z.re())}, {"im", rational_str(z.im())}};
}

Json scalar_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json tensor_json(const Tensor<GaussianRational>& t) {
  Json j;
  j["shape"] = t.shape();
  Json ents = Json::array();
  for (const auto& z : t.data()) ents.push_back(scalar_json(z));
  j["entries"] = std::move(ents);
  return j;
}

Json tensor_json(const Tensor<Complex>& t) {
  Json j;
  j["shape"] = t.shape();
  Json re = Json::array(), im = Json::array();
  for (const auto& z : t.data()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

namespace {

template <class S>
Json decomposition_json_impl(const Decomposition<S>& d) {
  Json terms = Json::array();
  for (const auto& term : d.terms) {
    Json jt;
    jt["weight"] = scalar_json(term.weight);
    Json factors = Json::array();
    for (const auto& f : term.factors) {
      Json vec = Json::array();
      for (const auto& x : f) vec.push_back(scalar_json(x));
      factors.push_back(std::move(vec));
    }
    jt["factors"] = std::move(factors);
    terms.push_back(std::move(jt));
  }
  return Json{{"terms", std::move(terms)}};
}

}  // namespace

Json decomposition_json(const Decomposition<GaussianRational>& d) {
  return decomposition_json_impl(d);
}

Json decomposition_json(const Decomposition<Complex>& d) { return decomposition_json_impl(d); }

Json read_json_stream(std::istream& in, const std::string& source_name) {
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw MalformedInput("JSON parse error in " + source_name + ": " + e.what());
  }
}

}  // namespace entrank
