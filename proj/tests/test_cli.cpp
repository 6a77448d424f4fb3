// End-to-end runs of the relfan binary: exit codes, report shape and
// byte-identical output across runs.

#include "relfan/report.hpp"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace relfan {
namespace {

const std::string kCli = RELFAN_CLI_PATH;
const std::string kData = RELFAN_DATA_DIR;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  CliRun r;
  const std::string cmd = kCli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string spec(const char* file) { return "--spec " + kData + "/" + file; }

Json report_of(const CliRun& r) { return Json::parse(r.out); }

// Conjunction of check statuses, the same precedence the tool uses.
std::string overall(const Json& report) {
  bool precondition = false;
  for (const auto& c : report.at("checks")) {
    if (c.at("status") == "fail") return "fail";
    if (c.at("status") == "precondition") precondition = true;
  }
  return precondition ? "precondition" : "pass";
}

const Json* find_check(const Json& report, const std::string& prefix) {
  for (const auto& c : report.at("checks"))
    if (c.at("name").get<std::string>().rfind(prefix, 0) == 0) return &c;
  return nullptr;
}

TEST(Cli, BuildFixAPasses) {
  const CliRun r = run("build " + spec("fix_a.json") + " --window 1");
  ASSERT_EQ(r.code, 0) << r.out;
  const Json j = report_of(r);
  EXPECT_EQ(overall(j), "pass");
  EXPECT_EQ(j.at("spec_hash").get<std::string>().size(), 16u);
}

TEST(Cli, AllFixASuitesPass) {
  for (const char* suite : {"axioms", "gamma", "completeness", "relations"}) {
    SCOPED_TRACE(suite);
    const CliRun r = run(std::string("check --suite ") + suite + " " + spec("fix_a.json") + " --window 1 --corpus 20");
    EXPECT_EQ(r.code, 0) << r.out;
  }
}

TEST(Cli, CorruptedFanFailsAxiomsWithWitness) {
  const CliRun r = run("check --suite axioms " + spec("fix_a_corrupted.json"));
  ASSERT_EQ(r.code, 1) << r.out;
  const Json j = report_of(r);
  EXPECT_EQ(overall(j), "fail");
  bool witnessed = false;
  for (const auto& c : j.at("checks"))
    if (c.at("status") == "fail" && c.contains("witness") && !c.at("witness").is_null()) witnessed = true;
  EXPECT_TRUE(witnessed) << r.out;
}

TEST(Cli, UnmetPreconditionExitsOne) {
  const CliRun r = run("check --suite relations " + spec("fix_d.json"));
  ASSERT_EQ(r.code, 1) << r.out;
  EXPECT_EQ(overall(report_of(r)), "precondition");
}

TEST(Cli, ParseErrorsExitTwo) {
  EXPECT_EQ(run("build --spec " + kData + "/does_not_exist.json").code, 2);
  EXPECT_EQ(run("check --suite nonsense " + spec("fix_a.json")).code, 2);
  EXPECT_EQ(run("rmf " + spec("fix_a.json") + " --n '[[1,2'").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(Cli, MathErrorExitsThree) {
  // N(H') not inside H': outside g.
  const CliRun r = run("rmf " + spec("fix_a.json") + " --n '[[0,0,0],[0,0,0],[1,0,0]]'");
  EXPECT_EQ(r.code, 3) << r.out;
}

TEST(Cli, RmfExistsForAdmissibleImage) {
  const CliRun r = run("rmf " + spec("fix_a.json") + " --ne 1,0");
  ASSERT_EQ(r.code, 0) << r.out;
  const Json d = report_of(r).at("data");
  EXPECT_TRUE(d.at("admissible").get<bool>());
  EXPECT_TRUE(d.at("M").is_object() || d.at("M").is_array());
}

TEST(Cli, RmfReportsNoExist) {
  const CliRun r = run("rmf " + spec("fix_a.json") + " --ne 0,1");
  ASSERT_EQ(r.code, 0) << r.out;
  const Json d = report_of(r).at("data");
  EXPECT_FALSE(d.at("admissible").get<bool>());
  EXPECT_EQ(d.at("M"), "NoExist");
}

TEST(Cli, TrivialMonodromyGivesZeroConeOnly) {
  const CliRun r = run("build " + spec("trivial.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  const Json d = report_of(r).at("data");
  const std::string dump = d.dump();
  EXPECT_NE(dump.find("\"dim\":0"), std::string::npos);
  EXPECT_EQ(dump.find("\"dim\":1"), std::string::npos) << dump;
}

TEST(Cli, GallerySubcommand) {
  const CliRun r = run("gallery");
  EXPECT_EQ(r.code, 1) << r.out;
  const Json j = report_of(r);
  const Json* gr0 = find_check(j, "gr0-hodge-type-00");
  ASSERT_NE(gr0, nullptr);
  EXPECT_EQ(gr0->at("status"), "fail");
  const Json* cert = find_check(j, "hausdorff-certificate");
  ASSERT_NE(cert, nullptr);
  EXPECT_EQ(cert->at("status"), "pass");
}

TEST(Cli, OutputIsByteIdenticalAcrossRuns) {
  for (const std::string args : {"build " + spec("fix_a.json"),
                                 "check --suite completeness " + spec("fix_a.json") + " --corpus 30 --seed 7",
                                 "check --suite gamma " + spec("fix_d.json"), std::string("gallery")}) {
    SCOPED_TRACE(args);
    const CliRun a = run(args);
    const CliRun b = run(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, TextFormatEndsWithVerdict) {
  const CliRun r = run("check --suite axioms " + spec("fix_a.json") + " --format text");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS"), std::string::npos) << r.out;
}

}  // namespace
}  // namespace relfan
