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


// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.
//
//   pacfair_acceptance --cli path/to/pacfair --out-dir dir

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "pacfair/audit.hpp"
#include "pacfair/complexity.hpp"
#include "pacfair/fairness.hpp"
#include "pacfair/logistic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pacfair;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void Expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

struct CliRun {
  int exit_code = -1;
  double seconds = 0.0;
  json report;
  std::string bytes;
};

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

CliRun RunCli(const std::string& cli, const std::string& args, const fs::path& out) {
  const std::string cmd = "\"" + cli + "\" " + args + " --quiet --out \"" + out.string() + "\"";
  const auto start = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  CliRun run;
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  run.exit_code = status;
  if (status == 0 && fs::exists(out)) {
    run.bytes = Slurp(out);
    run.report = json::parse(run.bytes);
  }
  return run;
}

std::string Fmt(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

Outcome SubgroupCounts(const CliRun& run, const std::vector<std::pair<std::string, std::size_t>>& want,
                       double limit_seconds) {
  Outcome o;
  o.Expect(run.exit_code == 0, "CLI exit code " + std::to_string(run.exit_code));
  if (run.exit_code != 0) return o;
  const auto& groups = run.report.at("subgroups");
  o.Expect(groups.size() == want.size(), "expected " + std::to_string(want.size()) + " subgroups");
  std::size_t total = 0;
  for (std::size_t g = 0; g < std::min(groups.size(), want.size()); ++g) {
    const auto size = groups[g].at("size").get<std::size_t>();
    total += size;
    o.Expect(groups[g].at("label") == want[g].first && size == want[g].second,
             want[g].first + " has " + std::to_string(size));
  }
  o.Expect(total == run.report.at("m").get<std::size_t>(), "sizes do not sum to m");
  o.Expect(run.seconds < limit_seconds, "took " + Fmt(run.seconds) + " s");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("m=") +
              std::to_string(run.report.at("m").get<std::size_t>()) + ", " + Fmt(run.seconds) + " s";
  return o;
}

Outcome Criterion1(const CliRun& adult) {
  return SubgroupCounts(adult,
                        {{"Female/non-White", 2129}, {"Female/White", 8642}, {"Male/non-White", 2616},
                         {"Male/White", 19174}},
                        120.0);
}

Outcome Criterion2(const CliRun& german) {
  Outcome o = SubgroupCounts(german,
                             {{"Male/Separated", 50}, {"Female/Separated-Married", 310},
                              {"Male/Single", 548}, {"Male/Married", 92}, {"Female/Single", 0}},
                             30.0);
  if (german.exit_code == 0) {
    const auto& last = german.report.at("subgroups").back();
    o.Expect(!last.at("feasible").get<bool>(), "Female/Single not flagged infeasible");
    o.Expect(last.value("note", "").find("empty") != std::string::npos, "no empty-subgroup note");
  }
  return o;
}

Outcome Criterion3(const CliRun& adult, const CliRun& german) {
  Outcome o;
  if (adult.exit_code != 0 || german.exit_code != 0) {
    o.Expect(false, "audit did not run");
    return o;
  }
  const auto da = adult.report.at("d").get<std::size_t>();
  const auto dg = german.report.at("d").get<std::size_t>();
  o.Expect(da == 108, "adult d=" + std::to_string(da));
  o.Expect(dg == 61, "german d=" + std::to_string(dg));
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("d=") + std::to_string(da) + ", " +
              std::to_string(dg);
  return o;
}

Outcome Criterion4(const CliRun& adult, const CliRun& german, const std::string& cli,
                   const fs::path& dir) {
  Outcome o;
  for (const auto& [run, want] : {std::pair{&adult, 1026.0}, std::pair{&german, 579.5}}) {
    if (run->exit_code != 0) {
      o.Expect(false, "audit did not run");
      continue;
    }
    const auto& c = run->report.at("collaborative");
    const double got = c.at("uniform_lower").get<double>();
    o.Expect(std::abs(got - want) < 1e-9, "uniform_lower " + Fmt(got) + " != " + Fmt(want));
    const std::string note = c.at("footnote").get<std::string>();
    o.Expect(note.find("4x") != std::string::npos && note.find("432(1-delta)/epsilon") != std::string::npos &&
                 note.find("244(1-delta)/epsilon") != std::string::npos,
             "footnote does not state the x4 discrepancy");
  }
  // The markdown report carries the footnote too.
  const fs::path md = dir / "german_report.md";
  const std::string cmd = "\"" + cli + "\" audit --preset german --quiet --markdown \"" + md.string() + "\"";
  o.Expect(std::system(cmd.c_str()) == 0, "markdown run failed");
  const std::string text = Slurp(md);
  o.Expect(text.find("579.5") != std::string::npos && text.find("4x larger") != std::string::npos,
           "markdown footnote missing");
  return o;
}

Outcome Criterion5(const CliRun& adult, const CliRun& german) {
  Outcome o;
  // (a) every subgroup of both reports.
  std::size_t checked = 0;
  for (const CliRun* run : {&adult, &german}) {
    if (run->exit_code != 0) continue;
    std::vector<json> rows(run->report.at("subgroups").begin(), run->report.at("subgroups").end());
    if (!run->report.at("overall").is_null()) rows.push_back(run->report.at("overall"));
    for (const auto& e : rows) {
      if (!e.at("feasible").get<bool>()) continue;
      const auto& r = e.at("rademacher");
      const double est = r.at("estimate"), se = r.at("std_error"), bound = r.at("analytic_bound");
      const double rphi = e.at("R").get<double>() * e.at("phi").get<double>() /
                          std::sqrt(e.at("size").get<double>());
      o.Expect(std::abs(bound - rphi) <= 1e-12 * rphi, e.at("label").get<std::string>() + " bound mismatch");
      o.Expect(est <= bound + 3.0 * se, e.at("label").get<std::string>() + " estimate above bound");
      ++checked;
    }
  }
  o.Expect(checked == 10, "checked " + std::to_string(checked) + " of 10 subgroup rows");

  // (b) exact linearity in phi under a shared seed.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix x(500, 12);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) x(r, c) = u(rng);
  }
  const double phi = 3.7;
  const auto base = EstimateRademacher(x, phi, 1000, 7);
  for (double c : {0.5, 2.0}) {
    const auto scaled = EstimateRademacher(x, c * phi, 1000, 7);
    o.Expect(scaled.estimate == c * base.estimate, "not linear for c=" + Fmt(c));
  }

  // (c) exhaustive enumeration for m <= 10, 100 seeds.
  std::size_t misses = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    std::mt19937_64 inst(seed);
    const std::size_t m = 1 + inst() % 10;
    const std::size_t d = 1 + inst() % 5;
    Matrix small(m, d);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < d; ++c) small(r, c) = u(inst) * 2.0 - 1.0;
    }
    const double exact = oracle::ExactRademacher(small, 1.0);
    const auto est = EstimateRademacher(small, 1.0, 1000, seed);
    if (std::abs(est.estimate - exact) > 3.0 * est.std_error + 1e-12) ++misses;
  }
  o.Expect(misses == 0, std::to_string(misses) + " of 100 seeds outside 3 std errors");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(checked) + " subgroup rows, 100 seeds";
  return o;
}

Outcome Criterion6() {
  Outcome o;
  const auto adult = oracle::RankedEntries({2129, 8642, 2616, 19174}, {1, 3, 4, 2});
  const auto german = oracle::RankedEntries({50, 310, 548, 92}, {3, 4, 2, 1});
  const auto a = FindInversions(adult).inversions;
  const auto g = FindInversions(german).inversions;
  o.Expect(std::set<Inversion>(a.begin(), a.end()) == std::set<Inversion>{{2, 3}, {2, 4}, {3, 4}},
           "adult inversion set");
  o.Expect(std::set<Inversion>(g.begin(), g.end()) == std::set<Inversion>{{1, 3}, {1, 4}, {2, 3}},
           "german inversion set");
  o.Expect(a.size() == 3 && g.size() == 3, "duplicate inversions");
  return o;
}

Outcome Criterion7() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 2 + rng() % 19, d = 1 + rng() % 10;
    Matrix x(m, d);
    std::vector<int> y(m);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < d; ++c) x(r, c) = 2.0 * u(rng);
      y[r] = static_cast<int>(rng() & 1U);
    }
    std::vector<double> w(d);
    for (double& v : w) v = u(rng);
    const double b = u(rng), lambda = 0.5 * (u(rng) + 1.0) + 0.01;
    std::vector<double> gw(d), scratch(d);
    double gb = 0.0;
    RegularizedLogLoss(x, y, lambda, w, b, gw, &gb);
    const double h = 1e-6;
    double diff = 0.0, norm = 0.0;
    for (std::size_t k = 0; k <= d; ++k) {
      auto wp = w, wm = w;
      double bp = b, bm = b;
      (k < d ? wp[k] : bp) += h;
      (k < d ? wm[k] : bm) -= h;
      const double fd = (RegularizedLogLoss(x, y, lambda, wp, bp, scratch, nullptr) -
                         RegularizedLogLoss(x, y, lambda, wm, bm, scratch, nullptr)) /
                        (2.0 * h);
      const double g = k < d ? gw[k] : gb;
      diff += (g - fd) * (g - fd);
      norm += g * g;
    }
    worst = std::max(worst, std::sqrt(diff) / std::max(std::sqrt(norm), 1e-12));

    TrainConfig cfg;
    cfg.tol = 1e-10;
    const auto model = TrainLogistic(x, y, 1e-3, cfg);
    for (std::size_t t = 1; t < model.loss_trace.size(); ++t) {
      if (model.loss_trace[t] > model.loss_trace[t - 1]) {
        o.Expect(false, "loss trace increased");
        break;
      }
    }
    double prev = std::numeric_limits<double>::infinity();
    for (double l : DefaultLambdaGrid()) {
      const double n = Norm2(TrainLogistic(x, y, l, cfg).w);
      if (n > prev + 1e-6) o.Expect(false, "weight norm grew at lambda=" + Fmt(l));
      prev = n;
    }
  }
  o.Expect(worst < 1e-5, "gradient relative error " + Fmt(worst));
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("max gradient rel. error ") + Fmt(worst);
  return o;
}

Outcome Criterion8() {
  Outcome o;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto instance = [&](std::size_t m, std::size_t d) {
    Matrix x(m, d);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < d; ++c) x(r, c) = u(rng);
    }
    std::vector<double> s(m);
    for (double& v : s) v = u(rng);
    std::vector<bool> mask(d);
    for (std::size_t c = 0; c < d; ++c) mask[c] = c == 0 || (rng() % 3) != 0;
    return std::tuple{x, s, mask};
  };
  for (std::size_t m = 2; m <= 20; ++m) {
    for (int rep = 0; rep < 5; ++rep) {
      auto [x, s, mask] = instance(m, 1 + rng() % 6);
      for (double gamma : {0.0, 0.05, 0.2}) {
        const auto want = oracle::CountViolations(s, x, mask, gamma);
        const auto got = EmpiricalMetricFairness(s, x, BuildMetric(mask), gamma);
        if (got.alpha_hat != static_cast<double>(want.violating) / static_cast<double>(want.total)) {
          o.Expect(false, "oracle mismatch at m=" + std::to_string(m));
        }
      }
    }
  }
  for (int trial = 0; trial < 20; ++trial) {
    auto [x, s, mask] = instance(5 + rng() % 40, 3);
    const PairTable pairs(s, x, BuildMetric(mask));
    double prev = 1.0;
    for (int g = 0; g < 50; ++g) {
      const double a = EmpiricalMetricFairness(pairs, g / 49.0).alpha_hat;
      if (a > prev) o.Expect(false, "alpha increased with gamma");
      prev = a;
    }
    const std::vector<double> constant(x.rows(), 0.3);
    if (EmpiricalMetricFairness(constant, x, BuildMetric(mask), 0.0).alpha_hat != 0.0) {
      o.Expect(false, "constant predictor has alpha > 0");
    }
  }
  return o;
}

Outcome Criterion9() {
  Outcome o;
  std::mt19937_64 rng(9);
  std::size_t compared = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = 1 + rng() % 6;
    std::vector<std::size_t> sizes(k);
    std::vector<double> scores(k);
    for (std::size_t i = 0; i < k; ++i) {
      sizes[i] = 1 + rng() % 8;
      scores[i] = static_cast<double>(rng() % 6);
    }
    auto entries = oracle::RankedEntries(sizes, scores);
    std::vector<std::size_t> ranks;
    for (const auto& e : entries) ranks.push_back(e.complexity_rank);
    const auto recs = RecommendCollection(entries);
    std::size_t added = 0;
    for (const auto& r : recs) {
      entries[r.id - 1].size = r.target_size;
      added += r.additional;
    }
    RankSubgroups(entries);
    if (!FindInversions(entries).inversions.empty()) {
      o.Expect(false, "inversions left after repair (trial " + std::to_string(trial) + ")");
    }
    if (k <= 4) {
      ++compared;
      if (added != oracle::BruteForceRepair(sizes, ranks, 9)) {
        o.Expect(false, "not minimal (trial " + std::to_string(trial) + ")");
      }
    }
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(compared) + " brute-force comparisons";
  return o;
}

Outcome Criterion10(const CliRun& first, const std::string& cli, const fs::path& dir) {
  Outcome o;
  const CliRun second = RunCli(cli, "audit --preset german --seed 7", dir / "german_seed7_b.json");
  o.Expect(first.exit_code == 0 && second.exit_code == 0, "CLI failed");
  o.Expect(!first.bytes.empty() && first.bytes == second.bytes, "reports differ");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(first.bytes.size()) + " bytes";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pacfair acceptance runner"};
  std::string cli;
  std::string out_dir = "acceptance_out";
  app.add_option("--cli", cli, "Path to the pacfair executable")->required();
  app.add_option("--out-dir", out_dir, "Where to write reports");
  CLI11_PARSE(app, argc, argv);

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  const CliRun adult = RunCli(cli, "audit --preset adult --seed 7", dir / "adult_seed7.json");
  const CliRun german = RunCli(cli, "audit --preset german --seed 7", dir / "german_seed7.json");

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Adult subgroup counts", [&] { return Criterion1(adult); }},
      {"German subgroup counts", [&] { return Criterion2(german); }},
      {"Encoded dimensions", [&] { return Criterion3(adult, german); }},
      {"Uniform-convergence bounds", [&] { return Criterion4(adult, german, cli, dir); }},
      {"Rademacher properties", [&] { return Criterion5(adult, german); }},
      {"Rank machinery", [] { return Criterion6(); }},
      {"Optimizer correctness", [] { return Criterion7(); }},
      {"Metric fairness", [] { return Criterion8(); }},
      {"Repair correctness", [] { return Criterion9(); }},
      {"Determinism", [&] { return Criterion10(german, cli, dir); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << "\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
