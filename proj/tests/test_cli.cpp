#include <doctest.h>

#include "antimap/cli.hpp"
#include "antimap/dilation.hpp"
#include "antimap/report.hpp"
#include "oracles.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace antimap;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "antimap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("matrix json round trip") {
  const Matrix m = oracle::random_matrix(3, 2, 17);
  const nlohmann::json j = matrix_to_json(m);
  CHECK(j["rows"] == 3);
  CHECK(j["cols"] == 2);
  CHECK(j["data"].size() == 6);
  // text round trip keeps every bit
  const Matrix back = matrix_from_json(nlohmann::json::parse(j.dump()));
  CHECK(frobenius_distance(back, m) == 0.0);
  nlohmann::json broken = j;
  broken["rows"] = 4;
  CHECK_THROWS_AS(matrix_from_json(broken), std::invalid_argument);
}

TEST_CASE("report bookkeeping") {
  Report r;
  r.command = "test";
  r.check("b", 1e-3, 1e-2);
  r.check("a", 1.0, 0.5);
  r.fidelity("f", 2.0 / 3.0);
  r.finalize();
  CHECK(r.checks[0].name == "a");
  CHECK_FALSE(r.all_pass());
  CHECK(r.fidelities["f"].get<double>() == 0.666666666666667);
  const auto j = r.to_json(false);
  CHECK_FALSE(j.contains("wall_clock_ms"));
  CHECK(j["all_pass"] == false);
  const std::string csv = r.to_csv(false);
  CHECK(csv.rfind("kind,name,value,threshold,pass\n", 0) == 0);
  CHECK(csv.find("check,a,1.0,0.5,fail") != std::string::npos);
}

TEST_CASE("finite command") {
  const Result res = invoke({"finite", "--dim", "3", "--samples", "5", "--emit", "choi"});
  CHECK(res.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(res.out);
  CHECK(j["command"] == "finite");
  CHECK(j["fidelities"]["optimal"].get<double>() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(j["all_pass"] == true);
  const Matrix choi = matrix_from_json(j["payloads"]["choi"]);
  CHECK(choi.rows() == 9);
  CHECK(std::abs(choi.trace().real() - 3.0) < 1e-12);
}

TEST_CASE("dilate command") {
  const Result res = invoke({"dilate", "--dim", "2", "--emit", "unitary", "--emit", "ancilla"});
  CHECK(res.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(res.out);
  CHECK(j["values"]["golden_match"] == true);
  CHECK(frobenius_distance(matrix_from_json(j["payloads"]["unitary"]), reference_qubit_unitary()) == 0.0);
}

TEST_CASE("cv command") {
  const Result res = invoke({"cv", "--cutoff", "12", "--seed", "coherent:0.2,0", "--format", "csv"});
  CHECK(res.code == cli::kExitOk);
  CHECK(res.out.find("value,seed,\"coherent:0.2,0\"") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(invoke({}).code == cli::kExitUsage);
  CHECK(invoke({"finite", "--dim", "0"}).code == cli::kExitUsage);
  CHECK(invoke({"dilate", "--dim", "1"}).code == cli::kExitUsage);
  CHECK(invoke({"cv", "--seed", "thermal:1"}).code == cli::kExitUsage);
  CHECK(invoke({"cv", "--cutoff", "1"}).code == cli::kExitUsage);
  CHECK(invoke({"finite", "--emit", "bogus"}).code == cli::kExitUsage);
  CHECK(invoke({"finite", "--tolerance", "-1"}).code == cli::kExitUsage);
  CHECK(invoke({"teleport"}).code == cli::kExitUsage);
}

TEST_CASE("verification failures exit with 1") {
  const Result res = invoke({"finite", "--dim", "3", "--tolerance", "1e-30"});
  CHECK(res.code == cli::kExitVerificationFailed);
  CHECK(res.err.find("FAILED") != std::string::npos);
  const Result strict = invoke({"cv", "--cutoff", "4", "--seed", "coherent:1.5,0", "--strict"});
  CHECK(strict.code == cli::kExitVerificationFailed);
  CHECK(strict.err.find("warning") != std::string::npos);
}

TEST_CASE("output file") {
  const std::string path = "antimap_test_report.json";
  const Result res = invoke({"finite", "--dim", "2", "--out", path});
  CHECK(res.code == cli::kExitOk);
  CHECK(res.out.empty());
  std::ifstream f(path);
  const auto j = nlohmann::json::parse(f);
  CHECK(j["command"] == "finite");
  std::remove(path.c_str());
}

TEST_CASE("reports are deterministic apart from timing") {
  cli::RunConfig cfg;
  cfg.command = cli::Command::Finite;
  cfg.dim = 4;
  cfg.samples = 10;
  cfg.rng_seed = 99;
  Report a = cli::run(cfg);
  Report b = cli::run(cfg);
  a.finalize();
  b.finalize();
  CHECK(a.to_json(false).dump() == b.to_json(false).dump());
}
