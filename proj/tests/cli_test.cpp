#include <gtest/gtest.h>

#include <unistd.h>

#include <string>

#include "cardio/dataset.hpp"
#include "cardio/model_io.hpp"
#include "test_util.hpp"

namespace {

using testutil::run_cmd;

const std::string kBin = CARDIOTRIAGE_BIN;

std::string tmp_path(const std::string& name) {
  return testing::TempDir() + "cardiotriage_" + std::to_string(::getpid()) + "_" + name;
}

constexpr const char* kAllZeros = "0,0,0,0,0,0,0,0,0,0";
constexpr const char* kAllOnes = "1,1,1,1,1,1,1,1,1,1";

std::string builtin_model_path() {
  static const std::string path = [] {
    const std::string p = tmp_path("shared_model.json");
    const auto r = run_cmd(kBin + " cluster --builtin-table1 --k 3 --out " + p);
    if (r.code != 0) throw std::runtime_error("model setup failed");
    return p;
  }();
  return path;
}

TEST(ClusterCmd, BuiltinRunWritesConvergedModel) {
  const std::string out = tmp_path("model_a.json");
  const auto r = run_cmd(kBin + " cluster --builtin-table1 --k 3 --out " + out);
  EXPECT_EQ(r.code, 0);
  const cardio::ClusterModel m = cardio::model_from_json(testutil::read_file(out));
  EXPECT_EQ(m.k, 3);
  EXPECT_TRUE(m.converged);
  EXPECT_EQ(m.members[1], (std::vector<std::string>{"P5", "P6", "P10"}));
}

TEST(ClusterCmd, TwoRunsAreByteIdentical) {
  const std::string a = tmp_path("model_b1.json");
  const std::string b = tmp_path("model_b2.json");
  EXPECT_EQ(run_cmd(kBin + " cluster --builtin-table1 --k 3 --out " + a).code, 0);
  EXPECT_EQ(run_cmd(kBin + " cluster --builtin-table1 --k 3 --out " + b).code, 0);
  EXPECT_EQ(testutil::read_file(a), testutil::read_file(b));
}

TEST(ClusterCmd, StdoutByDefault) {
  const auto r = run_cmd(kBin + " cluster --builtin-table1 --k 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"format_version\""), std::string::npos);
}

TEST(ClusterCmd, FileInputMatchesBuiltin) {
  const std::string csv = tmp_path("table.csv");
  testutil::write_file(csv, cardio::serialize_dataset(cardio::builtin_table1()));
  const auto from_file = run_cmd(kBin + " cluster --input " + csv + " --k 3");
  const auto from_builtin = run_cmd(kBin + " cluster --builtin-table1 --k 3");
  EXPECT_EQ(from_file.code, 0);
  EXPECT_EQ(from_file.out, from_builtin.out);
}

TEST(ClusterCmd, UsageErrors) {
  EXPECT_EQ(run_cmd(kBin + " cluster --builtin-table1 --k 0 2>/dev/null").code, 2);
  EXPECT_EQ(run_cmd(kBin + " cluster --k 3 2>/dev/null").code, 2);  // no input source
  EXPECT_EQ(run_cmd(kBin + " cluster --builtin-table1 --input x.csv --k 3 2>/dev/null").code, 2);
  EXPECT_EQ(run_cmd(kBin + " cluster --builtin-table1 2>/dev/null").code, 2);  // missing --k
  EXPECT_EQ(run_cmd(kBin + " cluster --input /no/such/file.csv --k 3 2>/dev/null").code, 2);
  EXPECT_EQ(run_cmd(kBin + " cluster --builtin-table1 --k 3 --max-passes -1 2>/dev/null").code,
            2);
  EXPECT_EQ(
      run_cmd(kBin + " cluster --builtin-table1 --k 3 --out /no/such/dir/m.json 2>/dev/null")
          .code,
      2);
}

TEST(ClusterCmd, MalformedCsvReportsPosition) {
  const std::string csv = tmp_path("bad.csv");
  testutil::write_file(csv, "id,a,b\nx,1,2\n");
  const auto r = run_cmd(kBin + " cluster --input " + csv + " --k 1 2>&1");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("non-binary"), std::string::npos);
  EXPECT_NE(r.out.find("row 2"), std::string::npos);
}

TEST(ClusterCmd, ZeroPassCapExitsThreeButWritesModel) {
  const std::string out = tmp_path("model_cap.json");
  const auto r =
      run_cmd(kBin + " cluster --builtin-table1 --k 3 --max-passes 0 --out " + out);
  EXPECT_EQ(r.code, 3);
  const cardio::ClusterModel m = cardio::model_from_json(testutil::read_file(out));
  EXPECT_FALSE(m.converged);
  EXPECT_EQ(m.max_passes, 0);
}

TEST(ClusterCmd, EnvVarCapsPasses) {
  const auto r =
      run_cmd("TRIAGE_MAX_PASSES=0 " + kBin + " cluster --builtin-table1 --k 3 >/dev/null");
  EXPECT_EQ(r.code, 3);
}

TEST(ClusterCmd, FlagOverridesEnvVar) {
  const auto r = run_cmd("TRIAGE_MAX_PASSES=0 " + kBin +
                         " cluster --builtin-table1 --k 3 --max-passes 100 >/dev/null");
  EXPECT_EQ(r.code, 0);
}

TEST(ClusterCmd, BadEnvVarIsAnError) {
  const auto r = run_cmd("TRIAGE_MAX_PASSES=abc " + kBin +
                         " cluster --builtin-table1 --k 3 2>/dev/null");
  EXPECT_EQ(r.code, 2);
}

TEST(DissimCmd, DefaultMetricIsEuclidean) {
  const auto r = run_cmd(kBin + " dissim --builtin-table1");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 14), "id,P1,P2,P3,P4");
  EXPECT_EQ(testutil::count_lines(r.out), 11);
  EXPECT_NE(r.out.find("1.4142135623730951"), std::string::npos);
}

TEST(DissimCmd, HammingEntriesAreIntegers) {
  const auto r = run_cmd(kBin + " dissim --builtin-table1 --metric hamming");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find('.'), std::string::npos);
}

TEST(DissimCmd, UnknownMetric) {
  EXPECT_EQ(run_cmd(kBin + " dissim --builtin-table1 --metric cosine 2>/dev/null").code, 2);
}

TEST(AutocorrCmd, BuiltinLagOne) {
  const auto r = run_cmd(kBin + " autocorr --builtin-table1 --lag 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(testutil::count_lines(r.out), 11);  // header + 10 patients
  EXPECT_NE(r.out.find("P4,1,0,false,normal"), std::string::npos);
  EXPECT_NE(r.out.find("P6,1,0,false,normal"), std::string::npos);
  EXPECT_NE(r.out.find("P10,1,-0.9,true,normal"), std::string::npos);
}

TEST(AutocorrCmd, LagOutOfRange) {
  EXPECT_EQ(run_cmd(kBin + " autocorr --builtin-table1 --lag 10 2>/dev/null").code, 2);
  EXPECT_EQ(run_cmd(kBin + " autocorr --builtin-table1 --lag 0 2>/dev/null").code, 2);
}

TEST(AutocorrCmd, CustomThresholdsShiftCategories) {
  const auto r = run_cmd(kBin +
                         " autocorr --builtin-table1 --lag 1 --theta-cardiac 0.5 "
                         "--theta-pro 0.4");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("cardiac"), std::string::npos);
}

TEST(AutocorrCmd, InvertedThresholds) {
  EXPECT_EQ(run_cmd(kBin +
                    " autocorr --builtin-table1 --theta-cardiac 0.4 --theta-pro 0.5 "
                    "2>/dev/null")
                .code,
            2);
}

TEST(ClassifyCmd, AllZeroQueryIsNormal) {
  const auto r = run_cmd(kBin + " classify --model " + builtin_model_path() + " --query \"" +
                         kAllZeros + "\"");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"category\": \"normal\""), std::string::npos);
}

TEST(ClassifyCmd, AllOnesQueryIsCardiac) {
  const auto r = run_cmd(kBin + " classify --model " + builtin_model_path() + " --query \"" +
                         kAllOnes + "\"");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"category\": \"cardiac\""), std::string::npos);
  EXPECT_NE(r.out.find("\"P6\""), std::string::npos);
}

TEST(ClassifyCmd, InputErrors) {
  const std::string model = builtin_model_path();
  EXPECT_EQ(
      run_cmd(kBin + " classify --model " + model + " --query \"0,0,1\" 2>/dev/null").code, 2);
  EXPECT_EQ(
      run_cmd(kBin + " classify --model " + model + " --query \"0,2,0\" 2>/dev/null").code, 2);
  EXPECT_EQ(run_cmd(kBin + " classify --model /no/such/model.json --query \"" +
                    std::string(kAllZeros) + "\" 2>/dev/null")
                .code,
            2);

  const std::string junk = tmp_path("junk.json");
  testutil::write_file(junk, "{\"format_version\": 9}");
  EXPECT_EQ(run_cmd(kBin + " classify --model " + junk + " --query \"" +
                    std::string(kAllZeros) + "\" 2>/dev/null")
                .code,
            2);
}

TEST(TriageCmd, FullReportAgainstBuiltinData) {
  const auto r = run_cmd(kBin + " triage --model " + builtin_model_path() +
                         " --builtin-table1 --query \"" + kAllOnes + "\"");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"category\": \"cardiac\""), std::string::npos);
  EXPECT_NE(r.out.find("\"precedents\""), std::string::npos);
  EXPECT_NE(r.out.find("\"P5\""), std::string::npos);
}

TEST(TriageCmd, DataFileVariantMatchesBuiltin) {
  const std::string csv = tmp_path("triage_data.csv");
  testutil::write_file(csv, cardio::serialize_dataset(cardio::builtin_table1()));
  const auto via_file = run_cmd(kBin + " triage --model " + builtin_model_path() + " --data " +
                                csv + " --query \"" + kAllZeros + "\"");
  const auto via_builtin = run_cmd(kBin + " triage --model " + builtin_model_path() +
                                   " --builtin-table1 --query \"" + kAllZeros + "\"");
  EXPECT_EQ(via_file.code, 0);
  EXPECT_EQ(via_file.out, via_builtin.out);
}

TEST(TriageCmd, MismatchedDataIsRejected) {
  const std::string csv = tmp_path("other_data.csv");
  testutil::write_file(csv, "id,a,b\nx,1,0\ny,0,1\n");
  const auto r = run_cmd(kBin + " triage --model " + builtin_model_path() + " --data " + csv +
                         " --query \"0,1\" 2>/dev/null");
  EXPECT_EQ(r.code, 2);
}

TEST(VerifyCmd, AuditsTheBuiltinRun) {
  const auto r = run_cmd(kBin + " verify --builtin-table1 --k 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("partitions examined: 9330"), std::string::npos);
  EXPECT_NE(r.out.find("gap: 0\n"), std::string::npos);
  EXPECT_NE(r.out.find("locally optimal: true"), std::string::npos);
  EXPECT_NE(r.out.find("optimal partition: "), std::string::npos);
}

TEST(VerifyCmd, OverCapDatasetIsRejected) {
  std::string csv = "id,a,b\n";
  for (int i = 1; i <= 13; ++i)
    csv += "x" + std::to_string(i) + "," + std::to_string(i % 2) + ",1\n";
  const std::string path = tmp_path("wide.csv");
  testutil::write_file(path, csv);
  EXPECT_EQ(run_cmd(kBin + " verify --input " + path + " --k 2 2>/dev/null").code, 2);
}

TEST(TopLevel, HelpAndUsage) {
  EXPECT_EQ(run_cmd(kBin + " --help >/dev/null").code, 0);
  EXPECT_EQ(run_cmd(kBin + " cluster --help >/dev/null").code, 0);
  EXPECT_EQ(run_cmd(kBin + " 2>/dev/null").code, 2);            // subcommand required
  EXPECT_EQ(run_cmd(kBin + " frobnicate 2>/dev/null").code, 2);  // unknown subcommand
  EXPECT_EQ(run_cmd(kBin + " cluster --builtin-table1 --k 3 --bogus 2>/dev/null").code, 2);
}

}  // namespace
