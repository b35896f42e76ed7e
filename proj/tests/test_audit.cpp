// Copyright 2026 The pacfair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "pacfair/audit.hpp"
#include "pacfair/error.hpp"
#include "pacfair/report.hpp"
#include "test_util.hpp"

using namespace pacfair;

namespace {

std::set<Inversion> InversionSet(const std::vector<SubgroupAuditEntry>& entries) {
  const auto found = FindInversions(entries).inversions;
  return {found.begin(), found.end()};
}

std::size_t TotalAdded(const std::vector<Recommendation>& recs) {
  std::size_t total = 0;
  for (const auto& r : recs) total += r.additional;
  return total;
}

// Applies recommendations and re-ranks by size.
std::vector<SubgroupAuditEntry> Repaired(std::vector<SubgroupAuditEntry> entries) {
  for (const auto& r : RecommendCollection(entries)) entries[r.id - 1].size = r.target_size;
  RankSubgroups(entries);
  return entries;
}

AuditConfig FastConfig() {
  AuditConfig c;
  c.seed = 7;
  c.n_draws = 100;
  c.train.folds = 3;
  c.train.lambda_grid = {0.01, 1.0};
  c.threads = 1;
  return c;
}

}  // namespace

TEST_SUITE("audit") {

TEST_CASE("adult reference ranks") {
  const auto e = oracle::RankedEntries({2129, 8642, 2616, 19174}, {1, 3, 4, 2});
  std::vector<std::size_t> c, s;
  for (const auto& x : e) {
    c.push_back(x.complexity_rank);
    s.push_back(x.size_rank);
  }
  CHECK(c == std::vector<std::size_t>{1, 3, 4, 2});
  CHECK(s == std::vector<std::size_t>{1, 3, 2, 4});
  CHECK(InversionSet(e) == std::set<Inversion>{{2, 3}, {2, 4}, {3, 4}});
  CHECK(FindInversions(e).kendall_tau == 0.0);

  const auto recs = RecommendCollection(e);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].id == 2);
  CHECK(recs[0].additional == 10533);
  CHECK(recs[0].target_size == 19175);
  CHECK(recs[1].id == 3);
  CHECK(recs[1].additional == 16559);
  CHECK(recs[1].target_size == 19175);
  CHECK(InversionSet(Repaired(e)).empty());
}

TEST_CASE("german reference ranks") {
  const auto e = oracle::RankedEntries({50, 310, 548, 92}, {3, 4, 2, 1});
  std::vector<std::size_t> s;
  for (const auto& x : e) s.push_back(x.size_rank);
  CHECK(s == std::vector<std::size_t>{1, 3, 4, 2});
  CHECK(InversionSet(e) == std::set<Inversion>{{1, 3}, {1, 4}, {2, 3}});
  CHECK(FindInversions(e).kendall_tau == 0.0);
  CHECK(InversionSet(Repaired(e)).empty());
}

TEST_CASE("ties follow entry order") {
  const auto e = oracle::RankedEntries({5, 5, 5}, {2.0, 2.0, 2.0});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(e[i].complexity_rank == i + 1);
    CHECK(e[i].size_rank == i + 1);
  }
  CHECK(InversionSet(e).empty());
  CHECK(FindInversions(e).kendall_tau == 1.0);
  CHECK(RecommendCollection(e).empty());
}

TEST_CASE("two subgroups (10, 5)") {
  // Equal sizes rank by entry order, so bringing the second up to 10 suffices.
  const auto e = oracle::RankedEntries({10, 5}, {1, 2});
  const auto recs = RecommendCollection(e);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].id == 2);
  CHECK(recs[0].additional == 5);
  CHECK(recs[0].additional == oracle::BruteForceRepair({10, 5}, {1, 2}, 8));
  CHECK(InversionSet(Repaired(e)).empty());
}

TEST_CASE("infeasible entries are skipped by ranking") {
  auto e = oracle::RankedEntries({4, 9, 1}, {3, 1, 2});
  e[2].feasible = false;
  RankSubgroups(e);
  CHECK(e[2].complexity_rank == 0);
  CHECK(e[2].size_rank == 0);
  CHECK(InversionSet(e) == std::set<Inversion>{{1, 2}});
  for (const auto& r : RecommendCollection(e)) CHECK(r.id != 3);
}

TEST_CASE("property: repair removes every inversion and is minimal") {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = 1 + rng() % 6;
    std::vector<std::size_t> sizes(k);
    std::vector<double> scores(k);
    for (std::size_t i = 0; i < k; ++i) {
      sizes[i] = 1 + rng() % 8;
      scores[i] = static_cast<double>(rng() % 5);
    }
    const auto e = oracle::RankedEntries(sizes, scores);
    const auto repaired = Repaired(e);
    REQUIRE(InversionSet(repaired).empty());
    for (std::size_t i = 0; i < k; ++i) REQUIRE(repaired[i].size >= sizes[i]);
    if (k <= 4) {
      std::vector<std::size_t> ranks;
      for (const auto& x : e) ranks.push_back(x.complexity_rank);
      REQUIRE(TotalAdded(RecommendCollection(e)) == oracle::BruteForceRepair(sizes, ranks, 9));
    }
  }
}

TEST_CASE("property: inversions match a pairwise count") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 2 + rng() % 7;
    std::vector<std::size_t> sizes(k);
    std::vector<double> scores(k);
    for (std::size_t i = 0; i < k; ++i) {
      sizes[i] = rng() % 100;
      scores[i] = static_cast<double>(rng() % 100);
    }
    const auto e = oracle::RankedEntries(sizes, scores);
    std::set<std::size_t> c, s;
    std::set<Inversion> want;
    for (std::size_t a = 0; a < k; ++a) {
      c.insert(e[a].complexity_rank);
      s.insert(e[a].size_rank);
      for (std::size_t b = a + 1; b < k; ++b) {
        const bool complexity_says = e[a].complexity_rank < e[b].complexity_rank;
        const bool size_says = e[a].size_rank < e[b].size_rank;
        if (complexity_says != size_says) want.insert({a + 1, b + 1});
      }
    }
    // Both rank vectors are permutations of 1..k.
    REQUIRE(c.size() == k);
    REQUIRE(s.size() == k);
    REQUIRE(*c.rbegin() == k);
    REQUIRE(*s.rbegin() == k);
    const auto summary = FindInversions(e);
    REQUIRE(std::set<Inversion>(summary.inversions.begin(), summary.inversions.end()) == want);
    const double pairs = static_cast<double>(k * (k - 1) / 2);
    REQUIRE(summary.kendall_tau == doctest::Approx(1.0 - 2.0 * want.size() / pairs));
  }
}

TEST_CASE("german audit end to end") {
  const RawTable t = ParseTable("builtin:german", TableFormat::kUciGerman);
  AuditConfig cfg = FastConfig();
  const AuditReport r = RunAudit(t, BuiltinSchema("german"), cfg);
  CHECK(r.m == 1000);
  CHECK(r.d == 61);
  CHECK(r.k == 4);
  REQUIRE(r.entries.size() == 5);
  const std::vector<std::size_t> sizes = {50, 310, 548, 92, 0};
  for (std::size_t g = 0; g < 5; ++g) CHECK(r.entries[g].size == sizes[g]);
  CHECK_FALSE(r.entries[4].feasible);
  CHECK(r.entries[4].note.find("empty") != std::string::npos);
  CHECK(r.entries[4].complexity_rank == 0);
  for (std::size_t g = 0; g < 4; ++g) {
    const auto& e = r.entries[g];
    CHECK(e.feasible);
    CHECK(e.rademacher.estimate <= e.rademacher.analytic_bound + 3.0 * e.rademacher.std_error);
    CHECK(e.fairness.size() == cfg.gamma_grid.size());
  }
  REQUIRE(r.overall.has_value());
  CHECK(r.overall->size == 1000);
  CHECK(r.collaborative.uniform_lower == doctest::Approx(579.5));

  // Applying the recommendations to the report's own ranks leaves no inversion.
  CHECK(InversionSet(Repaired(r.entries)).empty());

  const AuditReport again = RunAudit(t, BuiltinSchema("german"), cfg);
  CHECK(ReportToJson(r) == ReportToJson(again));
  cfg.threads = 3;
  CHECK(ReportToJson(r) == ReportToJson(RunAudit(t, BuiltinSchema("german"), cfg)));
}

TEST_CASE("report documents") {
  const RawTable t = ParseTable("builtin:german", TableFormat::kUciGerman);
  const AuditReport r = RunAudit(t, BuiltinSchema("german"), FastConfig());
  const auto j = nlohmann::json::parse(ReportToJson(r));
  CHECK(j.at("format") == "pacfair-audit-report");
  CHECK(j.at("subgroups").size() == 5);
  CHECK(j.at("collaborative").at("footnote").get<std::string>().find("4") != std::string::npos);
  const std::string md = ReportToMarkdown(r);
  CHECK(md.find("Female/Single") != std::string::npos);
  CHECK(md.find("579.5") != std::string::npos);
}

TEST_CASE("one subgroup aborts") {
  const Schema s = SchemaFromJson(R"({"columns": [{"name": "v", "kind": "numeric"},
      {"name": "g", "kind": "categorical"}],
      "target": {"column": "y", "positive": "1"}, "sensitive": ["g"]})");
  const RawTable t = testing::CsvTable("v,g,y\n1,a,0\n2,a,1\n3,a,0\n4,a,1\n5,a,1\n6,a,0\n");
  CHECK_THROWS_AS(RunAudit(t, s, FastConfig()), AuditAbort);
}

TEST_CASE("single-label subgroup is infeasible, folds shrink") {
  const Schema s = SchemaFromJson(R"({"columns": [{"name": "v", "kind": "numeric"},
      {"name": "g", "kind": "categorical"}],
      "target": {"column": "y", "positive": "1"}, "sensitive": ["g"]})");
  std::ostringstream csv;
  csv << "v,g,y\n";
  for (int i = 0; i < 8; ++i) csv << i << ",a," << (i % 2) << "\n";
  for (int i = 0; i < 8; ++i) csv << i << ",b," << (i < 2 ? 1 : 0) << "\n";
  for (int i = 0; i < 5; ++i) csv << i << ",c,1\n";
  AuditConfig cfg = FastConfig();
  cfg.train.folds = 4;
  const AuditReport r = RunAudit(testing::CsvTable(csv.str()), s, cfg);
  REQUIRE(r.entries.size() == 3);
  CHECK(r.entries[0].folds_used == 4);
  CHECK(r.entries[1].folds_used == 2);
  CHECK_FALSE(r.entries[1].warnings.empty());
  CHECK_FALSE(r.entries[2].feasible);
  CHECK(r.entries[2].note.find("single-label") != std::string::npos);
  CHECK(r.k == 2);
}

TEST_CASE("model json round trip") {
  TrainedModel m;
  m.w = {0.1, -2.5, 1e-300};
  m.b = 0.75;
  m.lambda = 0.01;
  m.converged = true;
  const TrainedModel back = ModelFromJson(ModelToJson(m, {"a", "b", "c"}));
  CHECK(back.w == m.w);
  CHECK(back.b == m.b);
  CHECK(back.lambda == m.lambda);
  CHECK_THROWS_AS(ModelFromJson("{}"), ParseError);
}

}  // TEST_SUITE
