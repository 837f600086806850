#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "slopes/slopes.hpp"

using namespace slopes;
using json = nlohmann::json;

namespace {

const std::string kData = SLOPES_DATA_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "slopes_cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("slopes_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(Cli, GammaOfGsp) {
  auto r = run({"gamma", "--catalog", "gsp", "--g", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.report();
  EXPECT_EQ(j["outputs"]["fraction"], "4/11");
  EXPECT_EQ(j["outputs"]["gamma_A"], "4/11");
  EXPECT_EQ(j["tool"], cli::kToolName);
  EXPECT_EQ(j["status"], "ok");
  EXPECT_EQ(j["timing"], "not recorded");
}

TEST(Cli, SlopeOfTorusFile) {
  auto r = run({"slope", "--file", kData + "/torus_nonsplit.json", "--ell", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto o = r.report()["outputs"];
  EXPECT_EQ(o["d1"], 0);
  EXPECT_EQ(o["delta"], 2);
  EXPECT_EQ(o["alpha"], "1");
}

TEST(Cli, AttestedComponentsAreCheckedAgainstBruteForce) {
  auto r = run({"slope", "--file", kData + "/block_with_scalar.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto o = r.report()["outputs"];
  EXPECT_EQ(o["isotypic"]["alpha"], o["alpha"]);
  EXPECT_EQ(o["isotypic"]["agrees"], true);
}

TEST(Cli, VerifyExitsZeroWhenTheLemmaHolds) {
  auto r = run({"verify", "slope-submodular", "--catalog", "gl", "--n", "2", "--ell", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["operation"], "verify slope-submodular");
  EXPECT_EQ(r.report()["outputs"]["checked"], 1);
}

TEST(Cli, UnmetFloorExitsWithVerificationCode) {
  auto r = run({"fixer", "--catalog", "gl", "--n", "2", "--ell", "3", "-m", "2", "--expected-floor", "1"});
  EXPECT_EQ(r.code, cli::kVerificationFailed);
  EXPECT_EQ(r.report()["status"], "failed");
  EXPECT_EQ(run({"fixer", "--catalog", "gl", "--n", "2", "--ell", "3", "-m", "2", "--expected-floor", "1/2"}).code, 0);
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run({"slope", "--catalog", "gl"}).code, cli::kInputError);  // no prime
  EXPECT_EQ(run({"slope", "--catalog", "gl", "--ell", "9"}).code, cli::kInputError);
  EXPECT_EQ(run({"slope", "--catalog", "nope", "--ell", "3"}).code, cli::kInputError);
  EXPECT_EQ(run({"verify", "nope"}).code, cli::kInputError);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kInputError);
  EXPECT_EQ(run({"slope", "--file", kData + "/torus_nonsplit.json", "--catalog", "gl", "--ell", "3"}).code, cli::kInputError);
  auto bad = temp_file("bad.json", R"({"format_version": 1, "kind": "lie", "name": "t", "n": 1, "payload": {"basis": [[1]]}, "extra": 0})");
  auto r = run({"slope", "--file", bad, "--ell", "3"});
  EXPECT_EQ(r.code, cli::kInputError);
  EXPECT_NE(r.err.find("extra"), std::string::npos);
  std::remove(bad.c_str());
}

TEST(Cli, GuardExitsThree) {
  EXPECT_EQ(run({"slope", "--catalog", "gl", "--n", "6", "--ell", "5", "--cap", "1000"}).code, cli::kGuardExceeded);
}

TEST(Cli, HelpAndVersionExitZero) {
  auto h = run({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("verify"), std::string::npos);
  auto v = run({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out, std::string(cli::kVersion) + "\n");
}

TEST(Cli, ReportsAreIndependentOfWorkerCount) {
  for (const auto& cmd : std::vector<std::vector<std::string>>{{"slope", "--catalog", "gsp", "--g", "2", "--ell", "3"},
                                                               {"fixer", "--catalog", "gl", "--n", "2", "--ell", "3", "-m", "2", "--family", "all"},
                                                               {"verify", "filtration-identity"}}) {
    auto a = cmd, b = cmd;
    a.insert(a.end(), {"--parallel", "1"});
    b.insert(b.end(), {"--parallel", "5"});
    auto ra = run(a), rb = run(b);
    ASSERT_EQ(ra.code, 0) << ra.err;
    EXPECT_EQ(ra.out, rb.out) << cmd[0];
  }
}

TEST(Cli, DigestTracksParametersAndFileBytes) {
  auto a = run({"gamma", "--catalog", "gsp", "--g", "1"}).report()["input_digest"];
  auto b = run({"gamma", "--catalog", "gsp", "--g", "2"}).report()["input_digest"];
  auto c = run({"gamma", "--catalog", "gsp", "--g", "1", "--parallel", "3"}).report()["input_digest"];
  EXPECT_NE(a, b);
  EXPECT_EQ(a, c);
  EXPECT_EQ(a.get<std::string>().rfind("fnv1a64:", 0), 0u);
}

TEST(Cli, TimingIsOptIn) {
  auto r = run({"gamma", "--catalog", "gsp", "--g", "1", "--timing"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.report()["timing"].contains("wall_ms"));
}

TEST(Cli, TableFormat) {
  auto r = run({"gamma", "--catalog", "gsp", "--g", "3", "--format", "table"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("outputs.fraction"), std::string::npos);
  EXPECT_NE(r.out.find("6/22"), std::string::npos);
  EXPECT_EQ(run({"gamma", "--catalog", "gsp", "--format", "xml"}).code, cli::kInputError);
}

TEST(Cli, CatalogEntriesRoundTripThroughFiles) {
  auto list = run({"catalog"}).report()["outputs"];
  EXPECT_EQ(list["lemmas"].size(), cli::lemma_ids().size());
  for (const auto& id : list["models"]) {
    auto emitted = run({"catalog", "--kind", "model", "--catalog", id.get<std::string>()});
    ASSERT_EQ(emitted.code, 0) << emitted.err;
    auto path = temp_file("model.json", emitted.out);
    auto from_file = run({"gamma", "--file", path}).report()["outputs"];
    auto from_catalog = run({"gamma", "--catalog", id.get<std::string>()}).report()["outputs"];
    EXPECT_EQ(from_file["fraction"], from_catalog["fraction"]) << id;
    std::remove(path.c_str());
  }
  auto emitted = run({"catalog", "--kind", "lie", "--catalog", "gl2_plus_scalar", "--ell", "5"});
  auto path = temp_file("lie.json", emitted.out);
  auto a = run({"slope", "--file", path}).report()["outputs"];
  auto b = run({"slope", "--catalog", "gl2_plus_scalar", "--ell", "5"}).report()["outputs"];
  EXPECT_EQ(a["alpha"], b["alpha"]);
  EXPECT_EQ(a["maximal_U"], b["maximal_U"]);
  std::remove(path.c_str());
}

TEST(Cli, FiltrationOfGeneratedGroup) {
  auto r = run({"filtration", "--file", kData + "/sl2_mod27.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto o = r.report()["outputs"];
  EXPECT_EQ(o["level_orders"], json::array({"24", "648", "17496"}));
  EXPECT_EQ(o["identity_holds"], true);
}

TEST(Cli, CountOnNode) {
  auto r = run({"count", "--file", kData + "/node.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto o = r.report()["outputs"];
  EXPECT_EQ(o["levels"][0]["points"], "5");  // x1 x2 = 0 over F_3
  EXPECT_EQ(o["section"]["free_rank"], 1);
}

TEST(Cli, DeltaOfModelAndLieFile) {
  auto m = run({"delta", "--file", kData + "/cm_pair_model.json"}).report()["outputs"];
  EXPECT_EQ(m["delta"], 1);
  auto t = run({"delta", "--file", kData + "/torus_nonsplit.json", "--primes", "3,5"}).report()["outputs"];
  EXPECT_EQ(t["per_prime"]["3"], 2);
  EXPECT_EQ(t["per_prime"]["5"], 1);
  EXPECT_EQ(t["d"], 1);
}

TEST(Cli, EveryLemmaIdHolds) {
  for (const auto& id : cli::lemma_ids()) {
    if (id == "delta-saturation") continue;  // the slow one; the acceptance binary covers it
    auto r = run({"verify", id});
    EXPECT_EQ(r.code, 0) << id << " " << r.err;
  }
}
