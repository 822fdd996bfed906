#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <map>

#include "gpbayes/validation.hpp"
#include "golden_grid.hpp"

using namespace gpbayes;

namespace {

std::vector<FixtureRecord> load_golden() {
  std::ifstream in(std::string(GPBAYES_FIXTURES_DIR) + "/golden_v1.txt");
  if (!in) throw std::runtime_error("missing fixtures file golden_v1.txt");
  return read_fixtures(in);
}

double metric_of(const ComparisonReport& r, const std::string& metric) {
  if (metric == "tv") return r.tv;
  if (metric == "kl") return r.kl;
  if (metric == "sup_abs") return r.sup_abs;
  if (metric == "mean_exact") return r.mean_exact;
  if (metric == "var_exact") return r.var_exact;
  throw std::runtime_error("unknown metric " + metric);
}

}  // namespace

TEST(Golden, EveryPointIsPinned) {
  const auto records = load_golden();
  std::size_t expected = 0;
  for (const auto& pt : golden::points()) expected += pt.moment_matched ? 10 : 5;
  EXPECT_EQ(records.size(), expected);
}

TEST(Golden, LibraryReproducesOracleValues) {
  const auto records = load_golden();
  std::map<std::tuple<double, double, double, long>, std::vector<SweepRecord>> cache;
  for (const auto& rec : records) {
    auto key = std::make_tuple(rec.a, rec.b, rec.c, rec.x);
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(key, sweep({{rec.a, rec.b, rec.c, rec.x}}, 1e-12, 0.01, 1)).first;
    }
    const auto& sw = it->second;
    const SweepRecord& row = rec.kind == "theorem1" ? sw[0] : sw[1];
    ASSERT_TRUE(row.report.has_value()) << row.error;
    const double got = metric_of(*row.report, rec.metric);
    const double tol = rec.metric.rfind("_exact") != std::string::npos
                           ? 1e-9 * std::fabs(rec.value)
                           : 1e-6;
    EXPECT_NEAR(got, rec.value, tol) << format_fixture(rec);
  }
}

TEST(Golden, ReferenceMomentMatchedDistance) {
  const auto records = load_golden();
  bool found = false;
  for (const auto& rec : records) {
    if (rec.a == 1.5 && rec.b == 0.1 && rec.c == -0.05 && rec.x == 10 &&
        rec.kind == "moment_matched" && rec.metric == "tv") {
      found = true;
      const auto sw = sweep({{1.5, 0.1, -0.05, 10}});
      EXPECT_NEAR(sw[1].report->tv, rec.value, 1e-6);
    }
  }
  EXPECT_TRUE(found);
}
