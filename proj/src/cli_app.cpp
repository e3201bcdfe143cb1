#include "entrank/cli_app.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "entrank/als.hpp"
#include "entrank/four_qubit.hpp"
#include "entrank/invariants.hpp"
#include "entrank/json_io.hpp"
#include "entrank/sampling.hpp"
#include "entrank/states.hpp"
#include "entrank/three_qubit.hpp"

namespace entrank {
namespace {

// ---------------------------------------------------------------- rendering

std::string dstr(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string scalar_str(const GaussianRational& z) {
  if (z.is_real()) return rational_str(z.re());
  std::string s = rational_str(z.re());
  s += sgn(z.im()) < 0 ? " - " : " + ";
  s += rational_str(abs(z.im())) + "i";
  return s;
}

std::string scalar_str(const Complex& z) {
  if (z.imag() == 0.0) return dstr(z.real());
  return dstr(z.real()) + (z.imag() < 0 ? " - " : " + ") + dstr(std::abs(z.imag())) + "i";
}

Json mat_json(const Mat<Complex>& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(scalar_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json root_structure_json(const RootStructure& rs) {
  Json j;
  j["tag"] = root_tag_name(rs.tag);
  Json roots = Json::array();
  for (const auto& r : rs.roots)
    roots.push_back(Json{
        {"x", scalar_json(r.x)}, {"y", scalar_json(r.y)}, {"multiplicity", r.multiplicity}});
  j["roots"] = std::move(roots);
  if (rs.exact_roots && !rs.exact_points.empty()) {
    Json ex = Json::array();
    for (const auto& [x, y] : rs.exact_points)
      ex.push_back(Json{{"x", scalar_json(x)}, {"y", scalar_json(y)}});
    j["exact_points"] = std::move(ex);
  }
  return j;
}

Json witness_json(const ExchangeWitness& w) {
  // Failed identity: t[a]*t[b] != t[c]*t[d] with c,d the index-exchanged pair.
  return Json{{"a", w.a}, {"b", w.b}, {"c", w.c}, {"d", w.d}};
}

bool inline_renderable(const Json& j) {
  if (j.is_primitive()) return true;
  if (!j.is_array() || j.size() > 6) return false;
  return std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
}

void render_text(std::ostream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (inline_renderable(v)) {
        out << pad << k << ": " << v.dump() << "\n";
      } else {
        out << pad << k << ":\n";
        render_text(out, v, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (inline_renderable(v)) {
        out << pad << "- " << v.dump() << "\n";
      } else {
        out << pad << "-\n";
        render_text(out, v, indent + 2);
      }
    }
  } else {
    out << pad << j.dump() << "\n";
  }
}

struct Report {
  Json j;
  std::string headline;
};

// ------------------------------------------------------------------- input

struct IoOpts {
  std::string in_file, state;
  bool exact = false, approx = false;
};

struct FmtOpts {
  bool text = false, json = false;
};

void add_fmt(CLI::App* cmd, FmtOpts& f) {
  auto* jf = cmd->add_flag("--json", f.json, "JSON report (default)");
  cmd->add_flag("--text", f.text, "plain-text rendering")->excludes(jf);
}

void add_input(CLI::App* cmd, IoOpts& o, bool modal) {
  auto* fo = cmd->add_option("--in", o.in_file, "input tensor JSON file (default: stdin)");
  cmd->add_option("--state", o.state, "builtin state name (see `state --list`)")->excludes(fo);
  if (modal) {
    auto* ex = cmd->add_flag("--exact", o.exact, "force exact rational arithmetic");
    cmd->add_flag("--approx", o.approx, "force complex floating-point arithmetic")->excludes(ex);
  }
}

ParsedTensor load_tensor(const IoOpts& o, std::istream& in) {
  if (!o.state.empty()) return builtin_state(o.state);
  if (!o.in_file.empty()) {
    std::ifstream f(o.in_file);
    if (!f) throw MalformedInput("cannot open input file: " + o.in_file);
    return parse_tensor_json(read_json_stream(f, o.in_file));
  }
  return parse_tensor_json(read_json_stream(in, "stdin"));
}

bool use_exact(const IoOpts& o, const ParsedTensor& p) {
  const bool have_exact = std::holds_alternative<Tensor<GaussianRational>>(p);
  if (o.exact && !have_exact)
    throw std::invalid_argument("--exact requires rational input entries");
  if (o.approx) return false;
  return have_exact;
}

Tensor<Complex> as_complex(const ParsedTensor& p) {
  if (const auto* e = std::get_if<Tensor<GaussianRational>>(&p)) return to_complex_tensor(*e);
  return std::get<Tensor<Complex>>(p);
}

// User-facing axis lists are 1-based; "1,3" -> {0, 2}.
std::vector<int> parse_axes_list(const std::string& s, int order) {
  std::vector<int> axes;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int a = 0;
    try {
      std::size_t pos = 0;
      a = std::stoi(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad axis '" + item + "' in --axes");
    }
    if (a < 1 || a > order)
      throw std::invalid_argument("axis " + std::to_string(a) + " out of range 1.." +
                                  std::to_string(order));
    axes.push_back(a - 1);
  }
  if (axes.empty()) throw std::invalid_argument("--axes must name at least one axis");
  return axes;
}

std::vector<int> axes_1based(const std::vector<int>& axes) {
  std::vector<int> out;
  out.reserve(axes.size());
  for (int a : axes) out.push_back(a + 1);
  return out;
}

std::array<int, 4> parse_perm(const std::string& s) {
  if (s.size() != 4) throw std::invalid_argument("--perm needs four digits, e.g. 1234");
  std::array<int, 4> p{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (s[i] < '1' || s[i] > '4')
      throw std::invalid_argument("--perm digits must be in 1..4");
    p[i] = s[i] - '0';
  }
  return p;
}

std::string perm_str(const std::array<int, 4>& p) {
  std::string s;
  for (int v : p) s += static_cast<char>('0' + v);
  return s;
}

// ---------------------------------------------------------------- handlers

template <class S>
Report classify_report(const Tensor<S>& t) {
  const Classification3<S> c = classify3(t);
  Json j;
  j["case"] = case3_name(c.tag);
  j["rank"] = c.rank;
  if (c.tag == Case3::Biseparable) j["biseparable_axis"] = c.biseparable_axis + 1;
  j["D"] = scalar_json(c.d_value);
  j["deltas"] = c.deltas;
  j["pencil_roots"] = root_structure_json(c.pencil_roots);
  j["mode"] = scalar_traits<S>::is_exact ? "exact" : "approx";
  return {std::move(j),
          std::string(case3_name(c.tag)) + ", rank " + std::to_string(c.rank)};
}

Report decompose_report(const Tensor<Complex>& t) {
  Json j;
  std::string head;
  if (t.order() == 3) {
    const Classification3<Complex> cls = classify3(t);
    const Decomposition<Complex> d = decompose3(t);
    const double res = frobenius_distance(reconstruct(d), t) / frobenius_norm(t);
    j["case"] = case3_name(cls.tag);
    j["terms"] = static_cast<int>(d.terms.size());
    j["certified"] = true;
    j["residual"] = res;
    j["decomposition"] = decomposition_json(d);
    head = std::to_string(d.terms.size()) + " terms (" + case3_name(cls.tag) +
           "), residual " + dstr(res);
  } else if (t.order() == 4) {
    const Decompose4Result r = decompose4(t);
    j["terms"] = static_cast<int>(r.decomposition.terms.size());
    j["method"] = r.method;
    j["certified"] = r.certified;
    j["residual"] = r.residual;
    j["decomposition"] = decomposition_json(r.decomposition);
    head = std::to_string(r.decomposition.terms.size()) + " terms via " + r.method +
           (r.certified ? " (certified)" : " (not certified)") + ", residual " +
           dstr(r.residual);
  } else {
    throw std::invalid_argument("decompose needs shape [2,2,2] or [2,2,2,2]");
  }
  return {std::move(j), std::move(head)};
}

Report normal_form_report(const Tensor<Complex>& t) {
  const NormalForm3 nf = normal_form3(t);
  Json j;
  j["case"] = case3_name(nf.tag);
  if (nf.tag == Case3::Biseparable) j["biseparable_axis"] = nf.biseparable_axis + 1;
  j["theta"] = nf.theta;
  if (nf.tag == Case3::Rank2Generic) {
    j["lambda"] = nf.lambda;
    j["z"] = scalar_json(nf.z);
  }
  j["phase"] = scalar_json(nf.phase);
  j["boundary"] = nf.boundary;
  j["norm"] = frobenius_norm(t);
  Json us = Json::array();
  for (const auto& u : nf.unitaries) us.push_back(mat_json(u));
  j["unitaries"] = std::move(us);
  j["canonical"] = tensor_json(nf.canonical);
  const Tensor<Complex> unit = scale(t, Complex(1.0 / frobenius_norm(t), 0.0));
  const Tensor<Complex> rebuilt = scale(
      apply_local(nf.canonical,
                  {nf.unitaries[0], nf.unitaries[1], nf.unitaries[2]}),
      nf.phase);
  j["reconstruction_error"] = frobenius_distance(rebuilt, unit);
  std::string head = std::string(case3_name(nf.tag));
  if (!nf.theta.empty()) {
    head += ", theta =";
    for (double th : nf.theta) head += " " + dstr(th);
  }
  if (nf.boundary) head += " (boundary)";
  return {std::move(j), std::move(head)};
}

template <class S>
Report hyperdet_report(const Tensor<S>& t) {
  const S d = hyperdet(t);
  bool zero;
  if constexpr (scalar_traits<S>::is_exact) {
    zero = d.is_zero();
  } else {
    const double nsq = to_double(norm_sq(t));
    zero = std::abs(d) <= tol::invariant_zero_rel * nsq * nsq;
  }
  Json j;
  j["D"] = scalar_json(d);
  j["zero"] = zero;
  j["mode"] = scalar_traits<S>::is_exact ? "exact" : "approx";
  return {std::move(j),
          "D = " + scalar_str(d) + (zero ? " (zero)" : " (nonzero)")};
}

template <class S>
Report delta_report(const Tensor<S>& t, const std::array<int, 4>& perm) {
  const S v = delta(t, perm);
  bool zero;
  if constexpr (scalar_traits<S>::is_exact) {
    zero = v.is_zero();
  } else {
    const double nsq = to_double(norm_sq(t));
    zero = std::abs(v) <= tol::invariant_zero_rel * nsq * nsq;
  }
  Json j;
  j["perm"] = perm_str(perm);
  j["delta"] = scalar_json(v);
  j["zero"] = zero;
  j["mode"] = scalar_traits<S>::is_exact ? "exact" : "approx";
  return {std::move(j), "Delta(" + perm_str(perm) + ") = " + scalar_str(v)};
}

template <class S>
Report purity_report(const Tensor<S>& t, bool full, const std::optional<std::vector<int>>& axes) {
  const ExchangeReport r = full ? is_pure_exchange_full(t) : is_pure_exchange(t);
  Json j;
  j["pure"] = r.pure;
  j["audit"] = full ? "all-pair-swaps" : "pairwise-minors";
  if (r.witness) j["witness"] = witness_json(*r.witness);
  if (axes) {
    j["defect_axes"] = axes_1based(*axes);
    j["partial_trace_defect"] = purity_defect(to_complex_tensor(t), *axes);
  }
  j["mode"] = scalar_traits<S>::is_exact ? "exact" : "approx";
  return {std::move(j), r.pure ? std::string("pure") : std::string("entangled")};
}

Report bipartite_rank_report(const ParsedTensor& p, bool exact, const std::vector<int>& axes,
                             double tolerance) {
  int r;
  if (exact)
    r = bipartite_rank(std::get<Tensor<GaussianRational>>(p), axes);
  else
    r = bipartite_rank(as_complex(p), axes, tolerance);
  Json j;
  j["row_axes"] = axes_1based(axes);
  j["rank"] = r;
  j["mode"] = exact ? "exact" : "approx";
  if (!exact) j["tol"] = tolerance;
  return {std::move(j), "rank " + std::to_string(r)};
}

Report lowerbound_report(const std::vector<int>& dims) {
  const Rational b = rank_lower_bound(dims);
  const long c = rank_lower_bound_ceil(dims);
  Json j;
  j["dims"] = dims;
  j["bound"] = rational_str(b);
  j["ceil"] = c;
  return {std::move(j), std::to_string(c)};
}

Report rank4_report(const Tensor<Complex>& t) {
  const RankCertificate c = rank4(t);
  Json j;
  j["claimed_rank"] = c.claimed_rank;
  j["lower_bound"] = c.lower_bound;
  j["lower_evidence"] = c.lower_evidence;
  j["exact"] = c.exact;
  if (!c.range_caveat.empty()) j["range_caveat"] = c.range_caveat;
  Json deltas = Json::array();
  for (std::size_t i = 0; i < 3; ++i)
    deltas.push_back(Json{{"perm", perm_str(delta_representatives[i])},
                          {"value", scalar_json(c.delta_values[i])}});
  j["deltas"] = std::move(deltas);
  j["flattening_ranks"] = c.flattening_ranks;
  j["certified"] = c.upper.certified;
  j["method"] = c.upper.method;
  j["residual"] = c.upper.residual;
  j["decomposition"] = decomposition_json(c.upper.decomposition);
  std::string head = c.exact
                         ? "rank " + std::to_string(c.claimed_rank) + " (exact)"
                         : "rank in [" + std::to_string(c.lower_bound) + ", " +
                               std::to_string(c.claimed_rank) + "]";
  return {std::move(j), std::move(head)};
}

template <class S>
Report s3_report(const Tensor<S>& t) {
  const bool inside = in_s3_closure(t);
  Json j;
  j["in_closure"] = inside;
  Json deltas = Json::array();
  for (const auto& perm : delta_representatives)
    deltas.push_back(Json{{"perm", perm_str(perm)}, {"value", scalar_json(delta(t, perm))}});
  j["deltas"] = std::move(deltas);
  j["mode"] = scalar_traits<S>::is_exact ? "exact" : "approx";
  return {std::move(j), inside ? std::string("inside the closure of the rank-3 stratum")
                               : std::string("outside the closure of the rank-3 stratum")};
}

template <class S>
Report s2_report(const Tensor<S>& t) {
  const bool ok = s2_closure_necessary(t);
  Json j;
  j["passes"] = ok;
  j["note"] = "necessary test only";
  Json ranks = Json::array();
  for (int other = 1; other <= 3; ++other) {
    int r;
    if constexpr (scalar_traits<S>::is_exact)
      r = matrix_rank(matricize(t, {0, other}));
    else
      r = matrix_rank(matricize(t, {0, other}), tol::rank_rel);
    ranks.push_back(r);
  }
  j["flattening_ranks"] = std::move(ranks);
  j["mode"] = scalar_traits<S>::is_exact ? "exact" : "approx";
  return {std::move(j), ok ? std::string("passes the necessary rank-2 closure test")
                           : std::string("fails the necessary rank-2 closure test")};
}

Report stabdim_report(const std::string& ds, const std::string& es, bool approx) {
  int k;
  if (approx) {
    std::size_t pos = 0;
    const double dv = std::stod(ds, &pos);
    if (pos != ds.size()) throw std::invalid_argument("bad --delta value: " + ds);
    pos = 0;
    const double ev = std::stod(es, &pos);
    if (pos != es.size()) throw std::invalid_argument("bad --epsilon value: " + es);
    k = stabilizer_dimension(Complex(dv, 0.0), Complex(ev, 0.0));
  } else {
    k = stabilizer_dimension(GaussianRational(parse_rational(ds)),
                             GaussianRational(parse_rational(es)));
  }
  Json j;
  j["delta"] = ds;
  j["epsilon"] = es;
  j["stabilizer_dim"] = k;
  j["s3_closure_dim"] = s3_closure_dimension(k);
  j["mode"] = approx ? "approx" : "exact";
  return {std::move(j), std::to_string(k)};
}

Json fit_json(const FitReport& f, bool with_decomposition) {
  Json j;
  j["residual"] = f.residual;
  j["iterations"] = f.iterations;
  j["max_factor_norm"] = f.max_factor_norm;
  j["blowup"] = f.blowup;
  if (with_decomposition) j["decomposition"] = decomposition_json(f.decomposition);
  return j;
}

Report als_report(const Tensor<Complex>& t, int rank, bool estimate, double tolerance,
                  int restarts, int iters, std::uint64_t seed) {
  Json j;
  std::string head;
  j["restarts"] = restarts;
  j["max_iters"] = iters;
  j["seed"] = seed;
  if (estimate) {
    const RankEstimate re = numeric_rank_estimate(t, tolerance, restarts, iters, seed);
    j["border_rank_estimate"] = re.estimate;
    j["reached_tol"] = re.reached_tol;
    j["tol"] = tolerance;
    j["blowup"] = re.blowup;
    Json per = Json::array();
    for (std::size_t i = 0; i < re.reports.size(); ++i) {
      Json e = fit_json(re.reports[i], false);
      e["rank"] = static_cast<int>(i) + 1;
      per.push_back(std::move(e));
    }
    j["per_rank"] = std::move(per);
    head = "border-rank estimate " + std::to_string(re.estimate) +
           (re.blowup ? " (factor blow-up: border-rank behavior)" : "");
  } else {
    const FitReport f = als_fit(t, rank, restarts, iters, seed);
    j["rank"] = rank;
    Json fj = fit_json(f, true);
    for (auto& [k, v] : fj.items()) j[k] = v;
    head = "residual " + dstr(f.residual) + " at r = " + std::to_string(rank) +
           (f.blowup ? " (factor blow-up: border-rank behavior)" : "");
  }
  return {std::move(j), std::move(head)};
}

Report sample_report(const std::string& space, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample: --n must be >= 1");
  Rng rng(seed);
  Json j;
  j["space"] = space;
  j["n"] = n;
  j["seed"] = seed;
  std::string head;
  if (space == "3q") {
    std::map<std::string, int> freq;
    double max_res = 0.0, max_id = 0.0;
    for (int i = 0; i < n; ++i) {
      const Tensor<Complex> t = random_tensor({2, 2, 2}, rng);
      const Classification3<Complex> cls = classify3(t);
      ++freq[case3_name(cls.tag)];
      const Decomposition<Complex> d = decompose3(t);
      max_res = std::max(max_res,
                         frobenius_distance(reconstruct(d), t) / frobenius_norm(t));
      const double nsq = to_double(norm_sq(t));
      max_id = std::max(max_id,
                        std::abs(hyperdet(t) - disc2(pencil_poly(t))) / (nsq * nsq));
    }
    j["cases"] = freq;
    j["max_residual"] = max_res;
    j["identity"] = "hyperdeterminant equals the slice-pencil discriminant";
    j["max_identity_violation_rel"] = max_id;
    head = "3q x " + std::to_string(n) + ": max residual " + dstr(max_res);
  } else if (space == "4q") {
    std::map<std::string, int> methods;
    int certified = 0, over4 = 0;
    double max_res = 0.0, max_id = 0.0;
    for (int i = 0; i < n; ++i) {
      const Tensor<Complex> t = random_tensor({2, 2, 2, 2}, rng);
      const Decompose4Result r = decompose4(t);
      ++methods[r.method];
      if (r.certified) ++certified;
      if (r.decomposition.terms.size() > 4) ++over4;
      max_res = std::max(max_res, r.residual);
      const double nsq = to_double(norm_sq(t));
      const Complex viol = delta(t, {1, 2, 3, 4}) - delta(t, {1, 3, 2, 4}) +
                           delta(t, {1, 4, 2, 3});
      max_id = std::max(max_id, std::abs(viol) / (nsq * nsq));
    }
    j["methods"] = methods;
    j["certified"] = certified;
    j["terms_over_4"] = over4;
    j["max_residual"] = max_res;
    j["identity"] = "Delta(1234) - Delta(1324) + Delta(1423) = 0";
    j["max_identity_violation_rel"] = max_id;
    head = "4q x " + std::to_string(n) + ": " + std::to_string(certified) + "/" +
           std::to_string(n) + " certified, max residual " + dstr(max_res);
  } else {
    throw std::invalid_argument("sample: --space must be 3q or 4q");
  }
  return {std::move(j), std::move(head)};
}

Report state_report(const std::string& name, bool list) {
  Json j;
  std::string head;
  if (list || name.empty()) {
    Json arr = Json::array();
    for (const auto& e : builtin_catalog())
      arr.push_back(Json{{"name", e.name},
                         {"shape", e.shape},
                         {"kind", e.decomposition ? "decomposition" : "tensor"},
                         {"summary", e.summary}});
    j["states"] = std::move(arr);
    head = std::to_string(builtin_catalog().size()) + " builtin states";
  } else if (name == "strassen_decomp") {
    j["name"] = name;
    j["decomposition"] = decomposition_json(strassen_decomposition());
    head = "seven-term decomposition of strassen222";
  } else {
    const Tensor<GaussianRational> t = builtin_state(name);
    j["name"] = name;
    j["tensor"] = tensor_json(t);
    head = name;
  }
  return {std::move(j), std::move(head)};
}

void emit(const Report& r, const FmtOpts& f, std::ostream& out) {
  if (f.text) {
    out << r.headline << "\n";
    render_text(out, r.j, 0);
  } else {
    out << r.j.dump(2) << "\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"algebraic entanglement measures: tensor rank, hyperdeterminant, and "
               "local-unitary normal forms for small tensors"};
  app.require_subcommand(0, 1);

  struct {
    IoOpts io;
    FmtOpts fmt;
  } classify, decompose, normform, hyperdetc, deltac, purityc, bipart, rank4c, s3c, s2c, alsc;

  auto* c_classify =
      app.add_subcommand("classify", "three-qubit class, rank, and invariant certificates");
  add_input(c_classify, classify.io, true);
  add_fmt(c_classify, classify.fmt);

  auto* c_decompose = app.add_subcommand(
      "decompose", "constructive minimal decomposition into pure terms (numeric)");
  add_input(c_decompose, decompose.io, false);
  add_fmt(c_decompose, decompose.fmt);

  auto* c_normform = app.add_subcommand(
      "normal-form", "three-qubit local-unitary normal form (numeric)");
  add_input(c_normform, normform.io, false);
  add_fmt(c_normform, normform.fmt);

  auto* c_hyperdet = app.add_subcommand("hyperdet", "degree-4 hyperdeterminant of a [2,2,2] tensor");
  add_input(c_hyperdet, hyperdetc.io, true);
  add_fmt(c_hyperdet, hyperdetc.fmt);

  std::string delta_perm = "1234";
  auto* c_delta =
      app.add_subcommand("delta", "4x4 matricization determinant of a [2,2,2,2] tensor");
  add_input(c_delta, deltac.io, true);
  c_delta->add_option("--perm", delta_perm, "axis permutation as four digits (default 1234)");
  add_fmt(c_delta, deltac.fmt);

  bool purity_full = false;
  std::string purity_axes;
  auto* c_purity = app.add_subcommand("purity", "pure-tensor test via exchange relations");
  add_input(c_purity, purityc.io, true);
  c_purity->add_flag("--full", purity_full, "audit every axis-subset exchange, not just pairs");
  c_purity->add_option("--axes", purity_axes,
                       "also report the partial-trace purity defect for this 1-based axis block, "
                       "e.g. 1,2");
  add_fmt(c_purity, purityc.fmt);

  std::string bipart_axes;
  double bipart_tol = tol::rank_rel;
  auto* c_bipart =
      app.add_subcommand("bipartite-rank", "matrix rank across a bipartition of the axes");
  add_input(c_bipart, bipart.io, true);
  c_bipart->add_option("--axes", bipart_axes, "1-based row-side axes, e.g. 1,3")->required();
  c_bipart->add_option("--tol", bipart_tol, "singular-value cutoff, relative (approx mode)");
  add_fmt(c_bipart, bipart.fmt);

  std::vector<int> lb_dims;
  FmtOpts lb_fmt;
  auto* c_lb = app.add_subcommand(
      "lowerbound", "generic-tensor rank lower bound (dimension count over hyperplanes)");
  c_lb->add_option("dims", lb_dims, "axis dimensions, e.g. 3 4 5")->expected(2, 8)->required();
  add_fmt(c_lb, lb_fmt);

  auto* c_rank4 = app.add_subcommand(
      "rank4", "rank certificate for a [2,2,2,2] tensor: bounds, evidence, decomposition");
  add_input(c_rank4, rank4c.io, false);
  add_fmt(c_rank4, rank4c.fmt);

  auto* c_s3 = app.add_subcommand(
      "s3-closure", "membership in the closure of the rank-3 stratum (all Delta vanish)");
  add_input(c_s3, s3c.io, true);
  add_fmt(c_s3, s3c.fmt);

  auto* c_s2 = app.add_subcommand(
      "s2-test", "necessary test for the rank-2 stratum closure (flattening ranks <= 2)");
  add_input(c_s2, s2c.io, true);
  add_fmt(c_s2, s2c.fmt);

  std::string stab_delta, stab_eps;
  bool stab_approx = false, stab_exact = false;
  FmtOpts stab_fmt;
  auto* c_stab = app.add_subcommand(
      "stabdim", "stabilizer dimension of e0^4 + delta e1^4 + eps (e0+e1)^4");
  c_stab->add_option("--delta", stab_delta, "rational delta, e.g. 1 or 7/3")->required();
  c_stab->add_option("--epsilon", stab_eps, "rational epsilon")->required();
  auto* stab_exact_flag =
      c_stab->add_flag("--exact", stab_exact, "exact rational arithmetic (default)");
  c_stab->add_flag("--approx", stab_approx, "evaluate in floating point instead of exactly")
      ->excludes(stab_exact_flag);
  add_fmt(c_stab, stab_fmt);

  int als_rank = 0, als_restarts = 8, als_iters = 2000;
  std::uint64_t als_seed = 1;
  bool als_estimate = false;
  double als_tol = 1e-6;
  auto* c_als = app.add_subcommand(
      "als", "alternating-least-squares low-rank fit / border-rank estimate (numeric)");
  add_input(c_als, alsc.io, false);
  auto* als_rank_opt = c_als->add_option("--rank", als_rank, "number of terms to fit");
  c_als->add_flag("--estimate", als_estimate,
                  "sweep r upward and report the smallest r reaching --tol "
                  "(border-rank estimate)")
      ->excludes(als_rank_opt);
  c_als->add_option("--tol", als_tol, "residual target for --estimate (default 1e-6)");
  c_als->add_option("--restarts", als_restarts, "random restarts per rank (default 8)");
  c_als->add_option("--iters", als_iters, "iteration cap per restart (default 2000)");
  c_als->add_option("--seed", als_seed, "random seed (default 1)");
  add_fmt(c_als, alsc.fmt);

  std::string sample_space;
  int sample_n = 100;
  std::uint64_t sample_seed = 1;
  FmtOpts sample_fmt;
  auto* c_sample = app.add_subcommand(
      "sample", "draw random tensors, classify/decompose them, and report statistics");
  c_sample->add_option("--space", sample_space, "3q or 4q")->required();
  c_sample->add_option("--n", sample_n, "number of draws (default 100)");
  c_sample->add_option("--seed", sample_seed, "random seed (default 1)");
  add_fmt(c_sample, sample_fmt);

  std::string state_name;
  bool state_list = false;
  FmtOpts state_fmt;
  auto* c_state = app.add_subcommand("state", "print a builtin state or list the catalog");
  c_state->add_option("name", state_name, "builtin state name");
  c_state->add_flag("--list", state_list, "list the catalog");
  add_fmt(c_state, state_fmt);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (app.get_subcommands().empty()) {
    out << app.help();
    return 0;
  }

  try {
    Report rep;
    const FmtOpts* fmt = nullptr;

    auto modal_tensor_report = [&](const IoOpts& io, auto&& exact_fn, auto&& approx_fn) {
      const ParsedTensor p = load_tensor(io, in);
      if (use_exact(io, p))
        return exact_fn(std::get<Tensor<GaussianRational>>(p));
      return approx_fn(as_complex(p));
    };

    if (*c_classify) {
      fmt = &classify.fmt;
      rep = modal_tensor_report(
          classify.io, [](const auto& t) { return classify_report(t); },
          [](const auto& t) { return classify_report(t); });
    } else if (*c_decompose) {
      fmt = &decompose.fmt;
      rep = decompose_report(as_complex(load_tensor(decompose.io, in)));
    } else if (*c_normform) {
      fmt = &normform.fmt;
      rep = normal_form_report(as_complex(load_tensor(normform.io, in)));
    } else if (*c_hyperdet) {
      fmt = &hyperdetc.fmt;
      rep = modal_tensor_report(
          hyperdetc.io, [](const auto& t) { return hyperdet_report(t); },
          [](const auto& t) { return hyperdet_report(t); });
    } else if (*c_delta) {
      fmt = &deltac.fmt;
      const std::array<int, 4> perm = parse_perm(delta_perm);
      rep = modal_tensor_report(
          deltac.io, [&](const auto& t) { return delta_report(t, perm); },
          [&](const auto& t) { return delta_report(t, perm); });
    } else if (*c_purity) {
      fmt = &purityc.fmt;
      const ParsedTensor p = load_tensor(purityc.io, in);
      const int order = std::visit([](const auto& t) { return t.order(); }, p);
      std::optional<std::vector<int>> axes;
      if (!purity_axes.empty()) axes = parse_axes_list(purity_axes, order);
      if (use_exact(purityc.io, p))
        rep = purity_report(std::get<Tensor<GaussianRational>>(p), purity_full, axes);
      else
        rep = purity_report(as_complex(p), purity_full, axes);
    } else if (*c_bipart) {
      fmt = &bipart.fmt;
      const ParsedTensor p = load_tensor(bipart.io, in);
      const int order = std::visit([](const auto& t) { return t.order(); }, p);
      const std::vector<int> axes = parse_axes_list(bipart_axes, order);
      rep = bipartite_rank_report(p, use_exact(bipart.io, p), axes, bipart_tol);
    } else if (*c_lb) {
      fmt = &lb_fmt;
      rep = lowerbound_report(lb_dims);
    } else if (*c_rank4) {
      fmt = &rank4c.fmt;
      rep = rank4_report(as_complex(load_tensor(rank4c.io, in)));
    } else if (*c_s3) {
      fmt = &s3c.fmt;
      rep = modal_tensor_report(
          s3c.io, [](const auto& t) { return s3_report(t); },
          [](const auto& t) { return s3_report(t); });
    } else if (*c_s2) {
      fmt = &s2c.fmt;
      rep = modal_tensor_report(
          s2c.io, [](const auto& t) { return s2_report(t); },
          [](const auto& t) { return s2_report(t); });
    } else if (*c_stab) {
      fmt = &stab_fmt;
      rep = stabdim_report(stab_delta, stab_eps, stab_approx);
    } else if (*c_als) {
      fmt = &alsc.fmt;
      if (!als_estimate && als_rank < 1)
        throw std::invalid_argument("als: pass --rank r or --estimate");
      rep = als_report(as_complex(load_tensor(alsc.io, in)), als_rank, als_estimate, als_tol,
                       als_restarts, als_iters, als_seed);
    } else if (*c_sample) {
      fmt = &sample_fmt;
      rep = sample_report(sample_space, sample_n, sample_seed);
    } else if (*c_state) {
      fmt = &state_fmt;
      rep = state_report(state_name, state_list);
    } else {
      out << app.help();
      return 0;
    }

    emit(rep, *fmt, out);
    return 0;
  } catch (const MalformedInput& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace entrank
