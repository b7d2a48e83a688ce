#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sgrass/cli.hpp"
#include "sgrass/codebook_io.hpp"
#include "sgrass/forge.hpp"

namespace fs = std::filesystem;
using namespace sgrass;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "sgrass");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sgrass_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::string slurp(const std::string& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_F(Cli, DesignProp42MatchesEmbeddedTable) {
  ASSERT_EQ(run({"design", "--method", "prop42", "-o", path("p.json")}).status, 0);
  save_codebook(proposed_codebook_4_2(), path("ref.json"));
  EXPECT_EQ(slurp(path("p.json")), slurp(path("ref.json")));
  const auto manifest = nlohmann::json::parse(slurp(path("p.json.manifest.json")));
  EXPECT_EQ(manifest["command"], "design");
  EXPECT_EQ(manifest["outputs"][0], path("p.json"));
}

TEST_F(Cli, DesignSparseQuarterGrid) {
  const auto r = run({"design", "--method", "sparse2m", "-M", "2", "--size", "22", "--grid",
                      "quarter", "-o", path("q.json")});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NEAR(min_chordal_distance(load_codebook(path("q.json"))).value, 1.0, 1e-12);
  EXPECT_EQ(r.out.rfind("mcd ", 0), 0u);
}

TEST_F(Cli, DesignUsageErrors) {
  EXPECT_EQ(run({"design", "--method", "sparse2m", "-M", "2", "--size", "0", "-o", path("x.json")})
                .status,
            2);
  EXPECT_EQ(run({"design", "--method", "nope", "-o", path("x.json")}).status, 2);
  EXPECT_EQ(run({"design", "--method", "manopt", "-M", "2", "--size", "4", "-o", path("x.json")})
                .status,
            2);
  EXPECT_EQ(run({}).status, 2);
}

TEST_F(Cli, McdReportsValuesAndPairs) {
  run({"design", "--method", "prop42", "-o", path("p.json")});
  run({"design", "--method", "nr42", "-o", path("n.json")});
  const auto r = run({"mcd", path("p.json"), path("n.json")});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0], "file,size,mcd,pair_i,pair_j");
  EXPECT_EQ(l[1], path("p.json") + ",22,1,1,2");
  EXPECT_EQ(l[2], path("n.json") + ",22,0,15,16");
}

TEST_F(Cli, McdSingleCodewordFails) {
  auto book = proposed_codebook_4_2();
  book.codewords.erase(book.codewords.begin() + 1, book.codewords.end());
  save_codebook(book, path("one.json"));
  const auto r = run({"mcd", path("one.json")});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("TooFewCodewords"), std::string::npos) << r.err;
}

TEST_F(Cli, RateIdenticalBooksAndDeterminism) {
  run({"design", "--method", "prop42", "-o", path("p.json")});
  const std::vector<std::string> args{"rate",    "--codebook", path("p.json"), "--codebook",
                                      path("p.json"), "-N",    "4",           "--snr",
                                      "0:10:5",  "--trials",   "500",         "-o",
                                      path("r.csv")};
  ASSERT_EQ(run(args).status, 0);
  const auto l = lines(slurp(path("r.csv")));
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l[0], "snr_db,rate_1,rate_2,diff_1_2,se_1_2");
  for (std::size_t i = 1; i < l.size(); ++i) {
    EXPECT_NE(l[i].find(",0,0"), std::string::npos) << l[i];
  }
  const std::string first = slurp(path("r.csv"));
  run(args);
  EXPECT_EQ(slurp(path("r.csv")), first);
  EXPECT_EQ(first.find('\r'), std::string::npos);
}

TEST_F(Cli, RateMissingFile) {
  EXPECT_EQ(run({"rate", "--codebook", path("missing.json"), "--trials", "10"}).status, 1);
}

TEST_F(Cli, GainCdfDuplicateBooksIdentical) {
  run({"design", "--method", "nr42", "-o", path("n.json")});
  const auto r = run({"gain-cdf", "--codebook", path("n.json"), "--codebook", path("n.json"),
                      "-K", "0,inf", "--trials", "200", "-N", "2"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 401u);
  EXPECT_EQ(l[0], "k,rank,cdf,gain_1,gain_2");
  for (std::size_t i = 1; i < l.size(); ++i) {
    const auto last = l[i].rfind(',');
    const auto prev = l[i].rfind(',', last - 1);
    EXPECT_EQ(l[i].substr(prev + 1, last - prev - 1), l[i].substr(last + 1));
  }
}

TEST_F(Cli, PaprWithScatter) {
  const auto r = run({"papr", "--row-sparse", "--ell", "1,4", "--thetas",
                      "1.91,-2.21,-1.71,0.636", "--subcarriers", "64", "--fft", "64",
                      "--oversampling", "4", "--trials", "20", "--thresholds", "0:12:1", "-o",
                      path("papr.csv"), "--scatter", path("scatter")});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto l = lines(slurp(path("papr.csv")));
  EXPECT_EQ(l[0], "waveform,scheme,threshold_db,ccdf");
  EXPECT_EQ(l.size(), 1u + 2 * 2 * 13);
  const auto sc = lines(slurp(path("scatter") + "/scatter_dfts_ell1.csv"));
  EXPECT_EQ(sc[0], "re,im");
  EXPECT_EQ(sc.size(), 1u + 8 * 64);
  EXPECT_NE(r.out.find("dfts ell4 papr_db@1e-2"), std::string::npos);
}

TEST_F(Cli, PaprNeedsOneSource) {
  EXPECT_EQ(run({"papr", "--trials", "2"}).status, 2);
}

TEST_F(Cli, AuditReportAndSweep) {
  auto r = run({"audit", "-T", "4", "-M", "2", "-N", "32", "--size", "22"});
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["index_selection"]["dense"], 384);
  EXPECT_EQ(j["index_selection"]["sparse"], 256);
  EXPECT_EQ(j["precoder_multiplication"]["sparse"], 4);
  EXPECT_EQ(j["real_variables"]["manopt"], 176);

  r = run({"audit", "-T", "4", "-M", "2", "--sweep", "4:1024:4", "--method", "manopt"});
  ASSERT_EQ(r.status, 0);
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 257u);
  for (std::size_t i = 1; i < l.size(); ++i) {
    const int size = std::stoi(l[i].substr(0, l[i].find(',')));
    EXPECT_EQ(std::stoi(l[i].substr(l[i].find(',') + 1)), 2 * size * 2 * 2);
  }
  EXPECT_EQ(run({"audit", "--sweep", "4:8:1", "--method", "bogus"}).status, 2);
  EXPECT_EQ(run({"audit", "-T", "6", "-M", "2", "--sweep", "4:8:1", "--method", "proposed2m"})
                .status,
            1);
}

TEST(CliProcess, ExitStatus) {
  const std::string bin = SGRASS_BIN;
  EXPECT_EQ(std::system((bin + " audit > /dev/null").c_str()), 0);
  EXPECT_NE(std::system((bin + " mcd /nonexistent.json 2> /dev/null").c_str()), 0);
}
