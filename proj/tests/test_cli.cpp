#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "isolab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = isolab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("isolab_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("complex and sign parsing") {
  using isolab::cli::parse_complex;
  CHECK(parse_complex("2") == std::complex<double>(2, 0));
  CHECK(parse_complex("-0.5") == std::complex<double>(-0.5, 0));
  CHECK(parse_complex("2+1i") == std::complex<double>(2, 1));
  CHECK(parse_complex("0.5-1.25i") == std::complex<double>(0.5, -1.25));
  CHECK(parse_complex("i") == std::complex<double>(0, 1));
  CHECK(parse_complex("-3i") == std::complex<double>(0, -3));
  CHECK(parse_complex("1e-3+2e+1i") == std::complex<double>(1e-3, 20));
  CHECK(parse_complex(" 1 - i ") == std::complex<double>(1, -1));
  CHECK_THROWS(parse_complex("abc"));
  CHECK_THROWS(parse_complex(""));
  CHECK(isolab::cli::parse_complex_list("0, 1, 2+i").size() == 3);
  CHECK(isolab::cli::parse_signs("++-+") == std::vector<int>{1, 1, -1, 1});
  CHECK(isolab::cli::parse_signs("1,-1") == std::vector<int>{1, -1});
  CHECK_THROWS(isolab::cli::parse_signs("+x"));
}

TEST_CASE("generate wraps the document with schema and provenance") {
  auto r = call({"generate", "--theorem", "5", "--n", "2"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["schema_version"] == isolab::cli::kSchemaVersion);
  CHECK(j["command"] == "generate");
  CHECK(j["provenance"]["theorem"] == "5");
  CHECK(j["document"]["kind"] == "pvi_family");
  CHECK(j["document"]["basis"][0]["b1"] == "1/9*x^2 - 4/9*x + 1/9");
  CHECK(j["document"]["params"]["alpha"] == "9/2");

  auto g = call({"generate", "--theorem", "10", "--M", "2", "--m", "4", "--n", "3"});
  REQUIRE(g.code == 0);
  CHECK(json::parse(g.out)["document"]["b"].size() == 4);
}

TEST_CASE("output is deterministic") {
  auto a = call({"generate", "--theorem", "6", "--n", "-3"});
  auto b = call({"generate", "--theorem", "6", "--n", "-3"});
  CHECK(a.out == b.out);
}

TEST_CASE("violated hypotheses and bad usage exit 2") {
  auto r = call({"generate", "--theorem", "10", "--M", "2", "--m", "3", "--n", "3"});
  CHECK(r.code == 2);
  CHECK(r.err.find("hypothesis violated") != std::string::npos);
  CHECK(call({"generate", "--theorem", "5", "--n", "3"}).code == 2);
  CHECK(call({"generate", "--theorem", "5"}).code == 2);
  CHECK(call({"generate", "--theorem", "12", "--n", "1"}).code == 2);
  CHECK(call({"generate", "--theorem", "5", "--n", "2", "--format", "csv"}).code == 2);
  CHECK(call({"nonsense"}).code == 2);
  CHECK(call({"verify", "--in", "/nonexistent/file.json"}).code == 2);
  CHECK(call({"periods", "--m", "2", "--n", "1", "--a", "0,0,2"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("verify accepts generated documents and rejects a perturbed one") {
  for (std::vector<std::string> args : {std::vector<std::string>{"--theorem", "6", "--n", "-2"},
                                        {"--theorem", "5", "--n", "4"},
                                        {"--theorem", "3", "--p", "3", "--N", "3", "--m", "3", "--n", "1"},
                                        {"--theorem", "9", "--n", "1", "--b", "1/3", "--c", "1/2"}}) {
    args.insert(args.begin(), "generate");
    auto g = call(args);
    REQUIRE(g.code == 0);
    auto path = temp_file("doc.json", g.out);
    auto v = call({"verify", "--in", path});
    CHECK_MESSAGE(v.code == 0, v.out);
    CHECK(json::parse(v.out)["pass"] == true);
  }

  auto g = call({"generate", "--theorem", "5", "--n", "2"});
  auto doc = json::parse(g.out)["document"];  // bare documents are accepted too
  doc["basis"][0]["b1"] = "1/9*x^2 - 4/9*x + 2/9";
  auto path = temp_file("bad.json", doc.dump());
  auto v = call({"verify", "--in", path, "--format", "csv"});
  CHECK(v.code == 1);
  CHECK(v.out.rfind("equation,pass,residual\n", 0) == 0);
  CHECK(v.out.find(",false,") != std::string::npos);
}

TEST_CASE("verify runs the Garnier sweep") {
  auto g = call({"generate", "--theorem", "10", "--M", "2", "--m", "4", "--n", "3"});
  auto path = temp_file("garnier.json", g.out);
  auto v = call({"verify", "--in", path, "--a", "2,3.5", "--eps", "+-+-"});
  REQUIRE(v.code == 0);
  CHECK(json::parse(v.out)["checks"].size() == 2);
  CHECK(call({"verify", "--in", path}).code == 0);
}

TEST_CASE("zeros lists every root of numerator and denominator") {
  auto r25 = call({"zeros", "--n", "25", "--format", "csv"});
  REQUIRE(r25.code == 0);
  CHECK(count_lines(r25.out) == 1 + 26 + 26);
  auto r28 = call({"zeros", "--n", "28"});
  REQUIRE(r28.code == 0);
  auto j = json::parse(r28.out);
  for (const auto& p : j["polynomials"]) {
    CHECK(p["degree"] == 29);
    CHECK(p["conjugation_symmetric"] == true);
    CHECK(p["inversion_paired"] == true);
  }
}

TEST_CASE("periods reports rank and vanishing column sums") {
  auto r = call({"periods", "--m", "3", "--n", "1", "--a", "0,1,2+1i,-1-0.5i", "--fd"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["rank"] == 3);
  CHECK(j["pass"] == true);
  auto csv = call({"periods", "--m", "2", "--n", "1", "--a", "0,1,2", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(count_lines(csv.out) == 4);
}

TEST_CASE("reproduce covers every worked example") {
  auto r = call({"reproduce", "all"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["examples"].size() == 6);
  CHECK(call({"reproduce", "example-2", "--format", "csv"}).code == 0);
  CHECK(call({"reproduce", "example-7"}).code == 2);
}

TEST_CASE("--out writes to a file") {
  auto path = (std::filesystem::temp_directory_path() / "isolab_cli_out.json").string();
  std::remove(path.c_str());
  auto r = call({"generate", "--theorem", "5", "--n", "1", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  CHECK(json::parse(f)["document"]["kind"] == "pvi_family");
}
