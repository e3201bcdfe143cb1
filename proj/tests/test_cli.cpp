#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "entrank/cli_app.hpp"
#include "entrank/json_io.hpp"

using namespace entrank;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

Json parsed(const CliRun& r) { return Json::parse(r.out); }

constexpr double kPi = 3.141592653589793;

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("state --list prints the full catalog") {
  const CliRun r = cli({"state", "--list"});
  REQUIRE(r.code == 0);
  CHECK(r.err.empty());
  const Json j = parsed(r);
  REQUIRE(j.contains("states"));
  CHECK(j["states"].size() == 8);
  bool saw_decomp = false, saw_w3 = false;
  for (const auto& e : j["states"]) {
    CHECK(e.contains("name"));
    CHECK(e.contains("shape"));
    CHECK(e.contains("kind"));
    CHECK_FALSE(e["summary"].get<std::string>().empty());
    if (e["name"] == "strassen_decomp") {
      saw_decomp = true;
      CHECK(e["kind"] == "decomposition");
      CHECK(e["shape"] == Json::array({4, 4, 4}));
    }
    if (e["name"] == "w3") {
      saw_w3 = true;
      CHECK(e["kind"] == "tensor");
    }
  }
  CHECK(saw_decomp);
  CHECK(saw_w3);
}

TEST_CASE("state prints tensors and the seven-term decomposition") {
  const CliRun r = cli({"state", "w3"});
  REQUIRE(r.code == 0);
  const Json j = parsed(r);
  CHECK(j["name"] == "w3");
  CHECK(j["tensor"]["shape"] == Json::array({2, 2, 2}));
  const Json& ents = j["tensor"]["entries"];
  REQUIRE(ents.size() == 8);
  CHECK(ents[1] == Json({{"re", "1"}, {"im", "0"}}));
  CHECK(ents[0] == Json({{"re", "0"}, {"im", "0"}}));

  const CliRun rd = cli({"state", "strassen_decomp"});
  REQUIRE(rd.code == 0);
  const Json jd = parsed(rd);
  CHECK(jd["decomposition"]["terms"].size() == 7);

  const CliRun rbad = cli({"state", "nosuch"});
  CHECK(rbad.code == 3);
  CHECK(rbad.err.find("error:") != std::string::npos);
}

TEST_CASE("classify defaults to exact arithmetic on rational input") {
  const CliRun r = cli({"classify", "--state", "w3"});
  REQUIRE(r.code == 0);
  const Json j = parsed(r);
  CHECK(j["mode"] == "exact");
  CHECK(j["case"] == "Rank3Degenerate");
  CHECK(j["rank"] == 3);
  CHECK(j["D"] == Json({{"re", "0"}, {"im", "0"}}));
  CHECK(j["deltas"] == Json::array({2, 2, 2}));
  CHECK(j["pencil_roots"]["tag"] == "one-double");

  // --approx forces floating point on the same input.
  const Json ja = parsed(cli({"classify", "--state", "w3", "--approx"}));
  CHECK(ja["mode"] == "approx");
  CHECK(ja["case"] == "Rank3Degenerate");
  CHECK(ja["rank"] == 3);

  const Json jg = parsed(cli({"classify", "--state", "ghz3", "--exact"}));
  CHECK(jg["case"] == "Rank2Generic");
  CHECK(jg["rank"] == 2);
}

TEST_CASE("decompose routes ghz4 through the slice-sum branch") {
  const CliRun r = cli({"decompose", "--state", "ghz4"});
  REQUIRE(r.code == 0);
  const Json j = parsed(r);
  CHECK(j["terms"] == 2);
  CHECK(j["method"] == "slice-sum");
  CHECK(j["certified"] == true);
  CHECK(j["residual"].get<double>() < 1e-8);
  CHECK(j["decomposition"]["terms"].size() == 2);

  const Json j3 = parsed(cli({"decompose", "--state", "w3"}));
  CHECK(j3["case"] == "Rank3Degenerate");
  CHECK(j3["terms"] == 3);
  CHECK(j3["certified"] == true);
}

TEST_CASE("numeric-only subcommands do not accept --exact") {
  CHECK(cli({"decompose", "--state", "ghz3", "--exact"}).code == 2);
  CHECK(cli({"normal-form", "--state", "ghz3", "--exact"}).code == 2);
  CHECK(cli({"rank4", "--state", "ghz4", "--exact"}).code == 2);
  CHECK(cli({"als", "--state", "ghz3", "--rank", "2", "--exact"}).code == 2);
}

TEST_CASE("normal-form reports the frozen ghz3 parameters") {
  const CliRun r = cli({"normal-form", "--state", "ghz3"});
  REQUIRE(r.code == 0);
  const Json j = parsed(r);
  CHECK(j["case"] == "Rank2Generic");
  REQUIRE(j["theta"].size() == 3);
  for (const auto& th : j["theta"])
    CHECK(th.get<double>() == doctest::Approx(kPi / 2).epsilon(1e-9));
  CHECK(j["lambda"].get<double>() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(j["boundary"] == true);
  CHECK(j["reconstruction_error"].get<double>() < 1e-10);
  CHECK(j["unitaries"].size() == 3);
}

TEST_CASE("hyperdet prints exact rationals or complex pairs") {
  const Json je = parsed(cli({"hyperdet", "--state", "real_vs_complex"}));
  CHECK(je["D"] == Json({{"re", "-4"}, {"im", "0"}}));
  CHECK(je["zero"] == false);
  CHECK(je["mode"] == "exact");

  const Json ja = parsed(cli({"hyperdet", "--state", "real_vs_complex", "--approx"}));
  CHECK(ja["mode"] == "approx");
  REQUIRE(ja["D"].is_array());
  CHECK(ja["D"][0].get<double>() == doctest::Approx(-4.0).epsilon(1e-12));
  CHECK(std::abs(ja["D"][1].get<double>()) < 1e-12);
  CHECK(ja["zero"] == false);

  // Wrong shape is a violated precondition, not malformed input.
  CHECK(cli({"hyperdet", "--state", "ghz4"}).code == 3);
}

TEST_CASE("delta honors --perm and rejects bad permutations") {
  const Json j = parsed(cli({"delta", "--state", "ghz4"}));
  CHECK(j["perm"] == "1234");
  CHECK(j["zero"] == true);

  const Json j2 = parsed(cli({"delta", "--state", "ghz4", "--perm", "1324"}));
  CHECK(j2["perm"] == "1324");
  CHECK(j2["zero"] == true);

  CHECK(cli({"delta", "--state", "ghz4", "--perm", "1235"}).code == 3);
  CHECK(cli({"delta", "--state", "ghz4", "--perm", "123"}).code == 3);

  // Identity (12|34) matricization: determinant 1.
  Json in;
  in["shape"] = {2, 2, 2, 2};
  Json ents = Json::array();
  for (int f = 0; f < 16; ++f) {
    const bool on = f == 0 || f == 5 || f == 10 || f == 15;
    ents.push_back(Json{{"re", on ? "1" : "0"}});
  }
  in["entries"] = std::move(ents);
  const Json jn = parsed(cli({"delta"}, in.dump()));
  CHECK(jn["delta"] == Json({{"re", "1"}, {"im", "0"}}));
  CHECK(jn["zero"] == false);
  CHECK(jn["mode"] == "exact");
}

TEST_CASE("purity reports a witness and the partial-trace defect") {
  const Json j = parsed(cli({"purity", "--state", "epr"}));
  CHECK(j["pure"] == false);
  CHECK(j["audit"] == "pairwise-minors");
  CHECK(j["mode"] == "exact");
  REQUIRE(j.contains("witness"));
  CHECK(j["witness"]["a"] == Json::array({0, 0}));
  CHECK(j["witness"]["b"] == Json::array({1, 1}));
  CHECK(j["witness"]["c"] == Json::array({0, 1}));
  CHECK(j["witness"]["d"] == Json::array({1, 0}));

  const Json jax = parsed(cli({"purity", "--state", "epr", "--axes", "1"}));
  CHECK(jax["defect_axes"] == Json::array({1}));
  CHECK(jax["partial_trace_defect"].get<double>() ==
        doctest::Approx(std::sqrt(2.0) / 4.0).epsilon(1e-12));

  const Json jf = parsed(cli({"purity", "--state", "epr", "--full"}));
  CHECK(jf["audit"] == "all-pair-swaps");

  // A pure tensor: no witness key at all.
  Json in;
  in["shape"] = {2, 2};
  in["entries"] = Json::array({Json{{"re", "1"}}, Json{{"re", "2"}}, Json{{"re", "3"}},
                               Json{{"re", "6"}}});
  const Json jp = parsed(cli({"purity"}, in.dump()));
  CHECK(jp["pure"] == true);
  CHECK_FALSE(jp.contains("witness"));
}

TEST_CASE("bipartite-rank splits the axes as requested") {
  const Json j = parsed(cli({"bipartite-rank", "--state", "strassen222", "--axes", "1"}));
  CHECK(j["row_axes"] == Json::array({1}));
  CHECK(j["rank"] == 4);
  CHECK(j["mode"] == "exact");
  CHECK_FALSE(j.contains("tol"));

  const Json ja =
      parsed(cli({"bipartite-rank", "--state", "strassen222", "--axes", "1,2", "--approx"}));
  CHECK(ja["row_axes"] == Json::array({1, 2}));
  CHECK(ja["rank"] == 4);
  CHECK(ja["mode"] == "approx");
  CHECK(ja.contains("tol"));
}

TEST_CASE("lowerbound evaluates the hyperplane-count bound") {
  const Json j = parsed(cli({"lowerbound", "3", "4", "5"}));
  CHECK(j["dims"] == Json::array({3, 4, 5}));
  CHECK(j["bound"] == "6");
  CHECK(j["ceil"] == 6);

  const Json j2 = parsed(cli({"lowerbound", "4", "4", "4"}));
  CHECK(j2["bound"] == "32/5");
  CHECK(j2["ceil"] == 7);

  CHECK(cli({"lowerbound"}).code == 2);
}

TEST_CASE("closure membership commands agree on ghz4") {
  const Json j = parsed(cli({"s3-closure", "--state", "ghz4"}));
  CHECK(j["in_closure"] == true);
  CHECK(j["mode"] == "exact");
  REQUIRE(j["deltas"].size() == 3);
  for (const auto& d : j["deltas"])
    CHECK(d["value"] == Json({{"re", "0"}, {"im", "0"}}));

  const Json j2 = parsed(cli({"s2-test", "--state", "ghz4"}));
  CHECK(j2["passes"] == true);
  CHECK(j2["note"] == "necessary test only");
  CHECK(j2["flattening_ranks"] == Json::array({2, 2, 2}));
}

TEST_CASE("stabdim computes the generic stabilizer dimension") {
  const Json j = parsed(cli({"stabdim", "--delta", "1", "--epsilon", "1"}));
  CHECK(j["stabilizer_dim"] == 4);
  CHECK(j["s3_closure_dim"] == 13);
  CHECK(j["mode"] == "exact");

  const Json j2 = parsed(cli({"stabdim", "--delta", "7/3", "--epsilon", "2/5"}));
  CHECK(j2["stabilizer_dim"] == 4);

  const Json ja =
      parsed(cli({"stabdim", "--delta", "1.5", "--epsilon", "0.25", "--approx"}));
  CHECK(ja["stabilizer_dim"] == 4);
  CHECK(ja["mode"] == "approx");

  // delta = 2 eps and zero values sit outside the generic family.
  CHECK(cli({"stabdim", "--delta", "4", "--epsilon", "2"}).code == 3);
  CHECK(cli({"stabdim", "--delta", "0", "--epsilon", "1"}).code == 3);
  CHECK(cli({"stabdim", "--delta", "1"}).code == 2);
}

TEST_CASE("als fits and estimates the border rank of ghz3") {
  const CliRun r = cli({"als", "--state", "ghz3", "--rank", "2"});
  REQUIRE(r.code == 0);
  const Json j = parsed(r);
  CHECK(j["rank"] == 2);
  CHECK(j["residual"].get<double>() < 1e-6);
  CHECK(j["blowup"] == false);
  CHECK(j["decomposition"]["terms"].size() == 2);

  const Json je = parsed(cli({"als", "--state", "ghz3", "--estimate"}));
  CHECK(je["border_rank_estimate"] == 2);
  CHECK(je["reached_tol"] == true);
  CHECK(je["per_rank"].size() == 2);

  CHECK(cli({"als", "--state", "ghz3"}).code == 3);
}

TEST_CASE("rank4 certifies W4 only up to a range") {
  Json in;
  in["shape"] = {2, 2, 2, 2};
  std::vector<double> re(16, 0.0);
  re[1] = re[2] = re[4] = re[8] = 1.0;
  in["re"] = re;
  const CliRun r = cli({"rank4"}, in.dump());
  REQUIRE(r.code == 0);
  const Json j = parsed(r);
  CHECK(j["claimed_rank"] == 4);
  CHECK(j["lower_bound"] == 2);
  CHECK(j["exact"] == false);
  REQUIRE(j.contains("range_caveat"));
  CHECK(j["range_caveat"].get<std::string>().find("border rank <= 3") != std::string::npos);
  CHECK(j["certified"] == true);
  CHECK(j["flattening_ranks"] == Json::array({2, 2, 2}));

  const Json jg = parsed(cli({"rank4", "--state", "ghz4"}));
  CHECK(jg["claimed_rank"] == 2);
  CHECK(jg["lower_bound"] == 2);
  CHECK(jg["exact"] == true);
  CHECK_FALSE(jg.contains("range_caveat"));
}

TEST_CASE("sample sweeps are reproducible byte for byte") {
  const CliRun a = cli({"sample", "--space", "3q", "--n", "40", "--seed", "5"});
  REQUIRE(a.code == 0);
  const Json j = parsed(a);
  CHECK(j["n"] == 40);
  CHECK(j["identity"] == "hyperdeterminant equals the slice-pencil discriminant");
  int total = 0;
  for (const auto& [name, count] : j["cases"].items()) total += count.get<int>();
  CHECK(total == 40);
  CHECK(j["max_residual"].get<double>() < 1e-6);
  CHECK(j["max_identity_violation_rel"].get<double>() < 1e-10);

  const CliRun b = cli({"sample", "--space", "3q", "--n", "40", "--seed", "5"});
  CHECK(a.out == b.out);

  const Json j4 = parsed(cli({"sample", "--space", "4q", "--n", "12", "--seed", "11"}));
  CHECK(j4["certified"] == 12);
  CHECK(j4["terms_over_4"] == 0);
  CHECK(j4["max_residual"].get<double>() < 1e-8);
  CHECK(j4["identity"] == "Delta(1234) - Delta(1324) + Delta(1423) = 0");
}

TEST_CASE("malformed input exits with 2 and a message") {
  const CliRun r = cli({"hyperdet"}, "not json");
  CHECK(r.code == 2);
  CHECK(r.err.find("error:") != std::string::npos);

  CHECK(cli({"classify"}, "{\"shape\": [2, 2, 2]}").code == 2);
  CHECK(cli({"classify", "--in", "/nonexistent/input.json"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
}

TEST_CASE("violated preconditions exit with 3") {
  CHECK(cli({"classify", "--state", "epr"}).code == 3);
  CHECK(cli({"decompose", "--state", "epr"}).code == 3);
  // --exact cannot be honored for floating-point input.
  const std::string approx3q = "{\"shape\": [2, 2, 2], \"re\": [1, 0, 0, 0, 0, 0, 0, 1]}";
  CHECK(cli({"hyperdet", "--exact"}, approx3q).code == 3);
}

TEST_CASE("exact stdin input flows through classify unchanged") {
  // paper_rank3 scaled by 1/3; class and rank are scale invariant.
  Json in;
  in["shape"] = {2, 2, 2};
  Json ents = Json::array();
  for (int f = 0; f < 8; ++f) {
    const bool on = f == 0 || f == 5 || f == 6;
    Json e{{"re", on ? "1/3" : "0"}};
    if (f == 5) e["im"] = "0";
    ents.push_back(std::move(e));
  }
  in["entries"] = std::move(ents);
  const Json j = parsed(cli({"classify"}, in.dump()));
  CHECK(j["mode"] == "exact");
  CHECK(j["case"] == "Rank3Degenerate");
  CHECK(j["rank"] == 3);
}

TEST_CASE("text mode prints the headline first") {
  const CliRun r = cli({"classify", "--state", "ghz3", "--text"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("Rank2Generic, rank 2\n", 0) == 0);

  const CliRun rl = cli({"lowerbound", "3", "4", "5", "--text"});
  CHECK(rl.out.rfind("6\n", 0) == 0);
}

TEST_CASE("no subcommand prints the help text") {
  const CliRun r = cli({});
  CHECK(r.code == 0);
  CHECK(r.out.find("classify") != std::string::npos);
  CHECK(r.out.find("decompose") != std::string::npos);
}

}  // TEST_SUITE("cli")
