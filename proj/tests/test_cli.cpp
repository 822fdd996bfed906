#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gpbayes/cli.hpp"
#include "gpbayes/errors.hpp"
#include "gpbayes/output.hpp"

using gpbayes::cli::run;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "gpbayes");
  std::ostringstream out;
  std::ostringstream err;
  const int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

// Rows of the named table in a CSV emission.
std::vector<std::string> csv_table(const std::string& text, const std::string& name) {
  std::vector<std::string> rows;
  bool inside = false;
  for (const auto& line : lines(text)) {
    if (line == "# table=" + name) {
      inside = true;
      continue;
    }
    if (inside && (line.empty() || line[0] == '#')) break;
    if (inside) rows.push_back(line);
  }
  return rows;
}

const std::vector<std::string> kSetA = {"-a", "1.5", "-b", "0.1", "-c", "-0.05"};

std::vector<std::string> with_set_a(std::vector<std::string> head, std::vector<std::string> tail) {
  head.insert(head.end(), kSetA.begin(), kSetA.end());
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

TEST(CliPosterior, CsvLayout) {
  const Result r = invoke(with_set_a({"posterior"}, {"-x", "10"}));
  ASSERT_EQ(r.status, 0) << r.err;
  const auto all = lines(r.out);
  EXPECT_EQ(all[0], "# schema_version=1");
  EXPECT_EQ(all[1], "# command=posterior");
  const auto rows = csv_table(r.out, "posterior");
  ASSERT_GT(rows.size(), 2u);
  EXPECT_EQ(rows[0], "k,prob,log_weight");
  EXPECT_EQ(rows[1].substr(0, 3), "10,");
  const auto summary = csv_table(r.out, "summary");
  ASSERT_EQ(summary.size(), 2u);
  EXPECT_EQ(summary[0], "k_min,k_max,tail_bound,log_normalizer,mean,variance");
  EXPECT_NE(r.out.find("# a=1.5"), std::string::npos);
  EXPECT_NE(r.out.find("# eps_tail=1e-10"), std::string::npos);
}

TEST(CliPosterior, JsonIsDeterministicAndStructured) {
  const auto args = with_set_a({"posterior"}, {"-x", "10", "--format", "json"});
  const Result r1 = invoke(args);
  const Result r2 = invoke(args);
  ASSERT_EQ(r1.status, 0);
  EXPECT_EQ(r1.out, r2.out);
  const auto doc = nlohmann::ordered_json::parse(r1.out);
  EXPECT_EQ(doc["schema_version"], "1");
  EXPECT_EQ(doc["command"], "posterior");
  EXPECT_EQ(doc["params"]["x"], 10);
  EXPECT_EQ(doc["params"]["c"], -0.05);
  ASSERT_TRUE(doc["tables"]["posterior"].is_array());
  EXPECT_EQ(doc["tables"]["posterior"][0]["k"], 10);
  EXPECT_EQ(doc["tables"]["summary"][0]["k_min"], 10);
}

TEST(CliPosterior, DomainErrorExitsOne) {
  const Result r = invoke({"posterior", "-a", "1.5", "-b", "1.5", "-c", "0", "-x", "1"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("0 < b < 1"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(CliPosterior, UsageErrorsExitTwo) {
  EXPECT_EQ(invoke({"posterior", "-a", "1.5", "-b", "0.1", "-x", "1"}).status, 2);
  EXPECT_EQ(invoke(with_set_a({"posterior"}, {"-x", "-1"})).status, 2);
  EXPECT_EQ(invoke(with_set_a({"posterior"}, {"-x", "ten"})).status, 2);
  EXPECT_EQ(invoke(with_set_a({"posterior"}, {"-x", "1", "--format", "xml"})).status, 2);
  EXPECT_EQ(invoke(with_set_a({"posterior"}, {"-x", "1", "--eps-tail", "0.5"})).status, 2);
  EXPECT_EQ(invoke({"frobnicate"}).status, 2);
  EXPECT_EQ(invoke({}).status, 2);
}

TEST(CliPosterior, HelpExitsZero) {
  const Result r = invoke({"posterior", "--help"});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("--eps-tail"), std::string::npos);
}

TEST(CliApprox, Theorem1Parameters) {
  const Result r = invoke(with_set_a({"approx"}, {"-x", "10", "--kind", "theorem1"}));
  ASSERT_EQ(r.status, 0) << r.err;
  const auto gamma = csv_table(r.out, "gamma");
  ASSERT_EQ(gamma.size(), 2u);
  EXPECT_EQ(gamma[0], "kind,shape,scale,mean,variance,raw_total");
  EXPECT_EQ(gamma[1].substr(0, 28), "theorem1,11,9.51229424501,10");
  const auto pmf = csv_table(r.out, "pmf");
  EXPECT_EQ(pmf[0], "k,prob,prob_renormalized");
  EXPECT_EQ(pmf[1].substr(0, 3), "10,");
}

TEST(CliApprox, MomentMatchedReproducesPosteriorMean) {
  const Result r =
      invoke(with_set_a({"approx"}, {"-x", "10", "--kind", "moment-matched", "--format", "json"}));
  ASSERT_EQ(r.status, 0) << r.err;
  const auto doc = nlohmann::ordered_json::parse(r.out);
  const Result post = invoke(with_set_a({"posterior"}, {"-x", "10", "--format", "json"}));
  const auto pdoc = nlohmann::ordered_json::parse(post.out);
  const double mean = doc["tables"]["gamma"][0]["mean"];
  const double shape = doc["tables"]["gamma"][0]["shape"];
  const double scale = doc["tables"]["gamma"][0]["scale"];
  const double post_mean = pdoc["tables"]["summary"][0]["mean"];
  EXPECT_EQ(mean, post_mean);
  EXPECT_NEAR(shape * scale, post_mean, 1e-10 * post_mean);
  EXPECT_EQ(doc["tables"]["gamma"][0]["kind"], "moment_matched");
}

TEST(CliApprox, UnknownKindExitsTwo) {
  EXPECT_EQ(invoke(with_set_a({"approx"}, {"-x", "10", "--kind", "normal"})).status, 2);
}

TEST(CliCompare, CsvAndJsonCarryTheSameNumbers) {
  const Result csv = invoke(with_set_a({"compare"}, {"-x", "10"}));
  const Result json = invoke(with_set_a({"compare"}, {"-x", "10", "--format", "json"}));
  ASSERT_EQ(csv.status, 0) << csv.err;
  ASSERT_EQ(json.status, 0) << json.err;
  const auto doc = nlohmann::ordered_json::parse(json.out);

  const auto reports = csv_table(csv.out, "reports");
  ASSERT_EQ(reports.size(), 3u);
  EXPECT_EQ(reports[1].substr(0, 9), "theorem1,");
  EXPECT_EQ(reports[2].substr(0, 15), "moment_matched,");

  const auto overlay = csv_table(csv.out, "overlay");
  EXPECT_EQ(overlay[0], "k,exact,theorem1,moment_matched,ratio_theorem1,ratio_moment_matched");
  ASSERT_EQ(overlay.size() - 1, doc["tables"]["overlay"].size());

  // Re-render each JSON number at 12 digits and compare field by field.
  auto render = [](const nlohmann::ordered_json& v) -> std::string {
    if (v.is_null()) return "";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long>());
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
    return buf;
  };
  for (std::size_t i = 1; i < overlay.size(); i += 17) {
    std::string joined;
    for (const auto& [key, value] : doc["tables"]["overlay"][i - 1].items()) {
      joined += (joined.empty() ? "" : ",") + render(value);
    }
    EXPECT_EQ(joined, overlay[i]);
  }
  std::string first_report;
  for (const auto& [key, value] : doc["tables"]["reports"][0].items()) {
    first_report += (first_report.empty() ? "" : ",") + render(value);
  }
  EXPECT_EQ(first_report, reports[1]);
}

TEST(CliVerify, SuitesAndStatus) {
  const Result all = invoke({"verify", "all"});
  EXPECT_EQ(all.status, 0) << all.err;
  const auto rows = csv_table(all.out, "checks");
  EXPECT_EQ(rows[0], "check,params,relative_error,tolerance,pass");
  EXPECT_EQ(rows.size(), 1u + 30u + 20u + 630u);

  const Result lerch = invoke({"verify", "lerch", "--format", "json"});
  EXPECT_EQ(lerch.status, 0);
  EXPECT_EQ(nlohmann::ordered_json::parse(lerch.out)["tables"]["checks"].size(), 30u);

  EXPECT_EQ(invoke({"verify", ""}).status, 2);
  EXPECT_EQ(invoke({"verify", "zeta"}).status, 2);
  EXPECT_EQ(invoke({"verify"}).status, 2);
}

TEST(CliGrid, ParsesCommentsAndBlanks) {
  std::istringstream in("# a,b,c,x\n1.5,0.1,-0.05,5\n\n  1.5 , 0.5 , -0.05 , 10  \n# end\n");
  const auto grid = gpbayes::cli::parse_grid(in);
  ASSERT_EQ(grid.size(), 2u);
  EXPECT_EQ(grid[1].b, 0.5);
  EXPECT_EQ(grid[1].x, 10);
}

TEST(CliGrid, MalformedLineNamesLineNumber) {
  for (const char* bad : {"1.5,0.1,-0.05\n", "1.5,0.1,-0.05,5,7\n", "1.5,zero,-0.05,5\n",
                          "1.5,0.1,-0.05,2.5\n", "1.5,0.1,-0.05,-3\n"}) {
    std::istringstream in(std::string("# ok\n1.5,0.1,-0.05,5\n") + bad);
    try {
      gpbayes::cli::parse_grid(in);
      FAIL() << bad;
    } catch (const gpbayes::UsageError& e) {
      EXPECT_NE(std::string(e.what()).find("grid line 3"), std::string::npos) << e.what();
    }
  }
}

TEST(CliSweep, FilesAndStatuses) {
  const std::string dir = ::testing::TempDir();
  const std::string good = dir + "/gpbayes_grid_good.csv";
  const std::string empty = dir + "/gpbayes_grid_empty.csv";
  const std::string bad = dir + "/gpbayes_grid_bad.csv";
  std::ofstream(good) << "# reference sets\n1.5,0.1,-0.05,10\n1.5,0.5,-0.05,10\n1.5,1.5,0,3\n";
  std::ofstream(empty) << "";
  std::ofstream(bad) << "1.5,0.1,-0.05,10\noops\n";

  const Result r = invoke({"sweep", good});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto rows = csv_table(r.out, "reports");
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0].substr(0, 40), "index,a,b,c,x,m,status,error,kind,tv,kl,");
  EXPECT_NE(rows[1].find(",ok,,theorem1,"), std::string::npos);
  EXPECT_NE(rows[4].find(",ok,,moment_matched,"), std::string::npos);
  EXPECT_NE(rows[5].find(",error,"), std::string::npos);
  EXPECT_NE(rows[5].find("0 < b < 1"), std::string::npos);

  const Result e = invoke({"sweep", empty});
  EXPECT_EQ(e.status, 0);
  EXPECT_EQ(csv_table(e.out, "reports").size(), 1u);

  const Result b = invoke({"sweep", bad});
  EXPECT_EQ(b.status, 2);
  EXPECT_NE(b.err.find("grid line 2"), std::string::npos);

  EXPECT_EQ(invoke({"sweep", dir + "/does_not_exist.csv"}).status, 2);
}

TEST(CliOutput, CsvEscaping) {
  EXPECT_EQ(gpbayes::output::csv_escape("plain"), "plain");
  EXPECT_EQ(gpbayes::output::csv_escape("a,b"), "\"a,b\"");
  EXPECT_EQ(gpbayes::output::csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
}
