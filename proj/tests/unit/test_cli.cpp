#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "constructions.hpp"
#include "oracle.hpp"
#include "valconv/io.hpp"
#include "valconv_cli/cli.hpp"

namespace valconv {
namespace {

namespace fs = std::filesystem;
using testing::data_file;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args, bool color = false) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err, color);
  return {code, out.str(), err.str()};
}

// Runs the installed binary and returns its exit status.
int run_binary(const std::string& args) {
  const std::string cmd = std::string(VALCONV_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("valconv_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST(LieCheck, Reports) {
  const Result so3 = run({"lie", "check", data_file("lie/so3.json")});
  EXPECT_EQ(so3.code, 0);
  EXPECT_NE(so3.out.find("unimodular: yes"), std::string::npos);
  EXPECT_NE(so3.out.find("jacobi: ok"), std::string::npos);

  const Result aff = run({"lie", "check", data_file("lie/aff1.json")});
  EXPECT_EQ(aff.code, 0);
  EXPECT_NE(aff.out.find("unimodular: no (tr ad_e1 = 1)"), std::string::npos);

  const Result bad = run({"lie", "check", data_file("lie/so3_corrupted.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("jacobi: violated"), std::string::npos);

  EXPECT_EQ(run({"lie", "check", data_file("lie/malformed.json")}).code, 2);
  EXPECT_EQ(run({"lie", "check", "no_such_file.json"}).code, 2);

  const Result json = run({"lie", "check", "h3", "--format", "json"});
  EXPECT_EQ(json.code, 0);
  EXPECT_TRUE(Json::parse(json.out)["unimodular"].get<bool>());
}

TEST(S3, TableAndVerify) {
  const Result table = run({"s3", "table", "--basis", "nu", "--format", "md"});
  EXPECT_EQ(table.code, 0);
  EXPECT_NE(table.out.find("| nu1 | 2*nu0 | 4*nu3"), std::string::npos);
  EXPECT_NE(table.out.find("1/4*pi^2*nu1 - 1/2*pi^2*nu3"), std::string::npos);

  const Result mu = run({"s3", "table", "--basis", "mu", "--format", "json"});
  EXPECT_EQ(mu.code, 0);
  EXPECT_EQ(Json::parse(mu.out)["basis"].size(), 4U);

  const Result verify = run({"s3", "verify"});
  EXPECT_EQ(verify.code, 0);
  EXPECT_EQ(verify.out.find("FAIL"), std::string::npos);
  EXPECT_EQ(run({"s3", "table", "--basis", "lambda"}).code, 2);
}

TEST_F(CliFiles, FormsConvolveWithUnit) {
  Rng rng(5);
  RandomFormOptions opt;
  const BigradedForm zeta = random_bigraded_form(rng, 3, 4, ValueSpace::Dual, opt);
  write_json_file(path("unit.json"), form_to_json(unit_form(3)));
  write_json_file(path("zeta.json"), form_to_json(zeta));
  const Result r = run({"forms", "convolve", path("unit.json"), path("zeta.json"), "--lie", "so3", "-o", path("out.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_json_file(path("out.json")), form_to_json(zeta));

  // Degree underflow is a violation.
  write_json_file(path("small.json"), form_to_json(BigradedForm(3, 1, ValueSpace::Dual)));
  EXPECT_EQ(run({"forms", "convolve", path("small.json"), path("small.json"), "--lie", "so3"}).code, 1);
  // Form of the wrong dimension for the algebra.
  EXPECT_EQ(run({"forms", "convolve", path("unit.json"), path("zeta.json"), "--lie", "abelian2"}).code, 1);
}

TEST_F(CliFiles, FormsDAndIntegrate) {
  write_json_file(path("w.json"), form_to_json(volume_primitive(3)));
  const Result d = run({"forms", "d", path("w.json"), "--lie", "so3", "-o", path("dw.json")});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(form_from_json(read_json_file(path("dw.json"))), d_total(builtin_lie_algebra("so3"), volume_primitive(3)));
  const Result i = run({"forms", "integrate", path("w.json"), "--format", "json"});
  ASSERT_EQ(i.code, 0) << i.err;
  EXPECT_EQ(Json::parse(i.out)["e*{}"]["0"], "1") << i.out;
}

TEST_F(CliFiles, ValuationConvolveEulerLaw) {
  const LieAlgebra so3 = builtin_lie_algebra("so3");
  const auto bases = testing::valuation_bases(so3);
  Rng rng(7);
  const InvariantValuation psi = testing::random_valuation(so3, rng, bases.left);
  ASSERT_EQ(run({"val", "builtin", "chi", "--lie", "so3", "-o", path("chi.json")}).code, 0);
  write_json_file(path("psi.json"), valuation_to_json(psi));
  const Result r = run({"val", "convolve", path("chi.json"), path("psi.json"), "--lie", "so3", "-o", path("out.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const InvariantValuation out = valuation_from_json(read_json_file(path("out.json")), 3);
  EXPECT_EQ(out.c, mu_of(psi));
  EXPECT_TRUE(out.tau.is_zero());

  EXPECT_EQ(run({"val", "validate", path("psi.json"), "--lie", "so3"}).code, 0);
  // Valuations over so(3) fed to an abelian plane.
  EXPECT_EQ(run({"val", "convolve", path("chi.json"), path("psi.json"), "--lie", "abelian2"}).code, 1);
  EXPECT_EQ(run({"val", "builtin", "zeta", "--lie", "so3"}).code, 2);
}

TEST_F(CliFiles, SuiteContract) {
  const Result so3 = run({"suite", "--lie", data_file("lie/so3.json"), "--seed", "7", "--trials", "50", "--max-deg", "2",
                          "--format", "json", "--report", path("report.json")});
  ASSERT_EQ(so3.code, 0) << so3.out;
  const Json report = Json::parse(so3.out);
  EXPECT_EQ(report["summary"]["fail"].get<int>(), 0);
  EXPECT_EQ(read_json_file(path("report.json")), report);

  const Result aff = run({"suite", "--lie", data_file("lie/aff1.json"), "--trials", "5", "--format", "json"});
  EXPECT_EQ(aff.code, 0);
  for (const auto& p : Json::parse(aff.out)["properties"])
    if (p["name"] == "lie.leibniz") { EXPECT_EQ(p["status"], "pass"); }

  EXPECT_EQ(run({"suite", "--lie", "so3", "--trials", "0"}).code, 2);
  EXPECT_EQ(run({"suite", "--lie", "so3", "--max-deg", "9"}).code, 2);
}

TEST(Suite, DeterministicReports) {
  const std::vector<std::string> args = {"suite", "--lie", "h3", "--seed", "3", "--trials", "5", "--format", "json"};
  EXPECT_EQ(run(args).out, run(args).out);
  const std::vector<std::string> md = {"suite", "--lie", "abelian2", "--trials", "5", "--format", "md"};
  EXPECT_EQ(run(md).out, run(md).out);
}

TEST(Color, EnvironmentOverride) {
  ::setenv("VALCONV_COLOR", "never", 1);
  EXPECT_FALSE(cli::color_enabled(true));
  EXPECT_EQ(run({"s3", "verify"}, true).out.find('\x1b'), std::string::npos);
  ::setenv("VALCONV_COLOR", "always", 1);
  EXPECT_TRUE(cli::color_enabled(false));
  EXPECT_NE(run({"s3", "verify"}, false).out.find('\x1b'), std::string::npos);
  ::unsetenv("VALCONV_COLOR");
  EXPECT_TRUE(cli::color_enabled(true));
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_binary("lie check " + data_file("lie/so3.json")), 0);
  EXPECT_EQ(run_binary("lie check " + data_file("lie/so3_corrupted.json")), 1);
  EXPECT_EQ(run_binary("lie check " + data_file("lie/malformed.json")), 2);
  EXPECT_EQ(run_binary("s3 verify"), 0);
  EXPECT_EQ(run_binary("s3 table --basis lambda"), 2);
  EXPECT_EQ(run_binary("no-such-command"), 2);
  EXPECT_EQ(run_binary("--help"), 0);
}

}  // namespace
}  // namespace valconv
