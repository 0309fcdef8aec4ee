#include <gtest/gtest.h>
#include <nlohmann/json.hpp>
#include <sys/wait.h>

#include <cstdio>
#include <sstream>

#include "kzb/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "kzb-cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = kzb::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json js(const Result& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, Heads) {
  const auto r = call({"heads", "--N", "5", "--m", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = js(r);
  EXPECT_EQ(j["zeta"], "k=1");
  EXPECT_EQ(j["coeffs"], nlohmann::json::parse(R"({"k=1":"1","k=0":"-25/24"})"));
  EXPECT_EQ(j["N"], 5);
  EXPECT_EQ(j["m"], 3);

  const auto all = js(call({"heads", "--N", "7", "--m", "4", "--all"}));
  EXPECT_EQ(all["heads"].size(), 3u);
}

TEST(Cli, Dims) {
  const auto r = call({"dims", "--N", "7", "--m", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(js(r)["dim"], 3);
  const auto range = js(call({"dims", "--N", "2", "--m-range", "2-5"}));
  EXPECT_EQ(range["dims"].size(), 4u);
}

TEST(Cli, Decompose) {
  const auto r = call({"decompose", "--N", "5", "--m", "3", "--j", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("-25/12"), std::string::npos);
}

TEST(Cli, NumericCommands) {
  const auto li = call({"li", "--m", "2", "--k", "0", "--N", "1", "--prec", "128"});
  ASSERT_EQ(li.code, 0) << li.err;
  EXPECT_NE(li.out.find("1.644934066848226436472415166646"), std::string::npos);
  const auto mz = call({"mzv", "--indices", "1,3"});
  ASSERT_EQ(mz.code, 0) << mz.err;
  EXPECT_NE(mz.out.find("2.70580808427784547879000924"), std::string::npos);
  EXPECT_EQ(call({"psi-check", "--N", "5", "--m", "4", "--p", "3"}).code, 0);
}

TEST(Cli, VerifyCylinder) {
  const auto r = call({"verify", "--suite", "cylinder", "--cutoff", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(js(r)["pass"], true);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"frobnicate"}).code, 2);
  EXPECT_EQ(call({"heads", "--m", "3"}).code, 2);
  EXPECT_EQ(call({"heads", "--N", "0", "--m", "3"}).code, 2);
  EXPECT_EQ(call({"dims", "--N", "5", "--m", "1"}).code, 2);
  EXPECT_EQ(call({"mzv", "--indices", "3,1"}).code, 2);
  EXPECT_EQ(call({"verify", "--suite", "nope"}).code, 2);
  EXPECT_EQ(call({"hecke", "--N", "6", "--m", "4", "--p", "2"}).code, 2);
  EXPECT_EQ(call({"--help"}).code, 0);
}

TEST(Cli, FailedCheckExitsOne) {
  // a tiny lattice box cannot meet the 1e-6 Hecke tolerance
  const auto r = call({"hecke", "--N", "5", "--m", "4", "--p", "2", "--radius", "10", "--prec", "64"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(js(r)["pass"], false);
}

TEST(Cli, Deterministic) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"heads", "--N", "12", "--m", "3", "--all"}, {"decompose", "--N", "9", "--m", "4", "--j", "3"}, {"dims", "--N", "30", "--m-range", "2-6"}}) {
    const auto a = call(args), b = call(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, 0);
  }
}

TEST(Cli, BinaryExitCodes) {
#ifdef KZB_CLI_PATH
  auto run_bin = [](const std::string& args, std::string& out) {
    FILE* f = popen((std::string(KZB_CLI_PATH) + " " + args + " 2>/dev/null").c_str(), "r");
    char buf[4096];
    out.clear();
    while (std::fgets(buf, sizeof buf, f)) out += buf;
    const int st = pclose(f);
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  };
  std::string out;
  EXPECT_EQ(run_bin("dims --N 7 --m 4", out), 0);
  EXPECT_EQ(nlohmann::json::parse(out)["dim"], 3);
  EXPECT_EQ(run_bin("dims", out), 2);
  EXPECT_EQ(run_bin("hecke --N 5 --m 4 --p 2 --radius 10 --prec 64", out), 1);
#else
  GTEST_SKIP() << "binary path not configured";
#endif
}
