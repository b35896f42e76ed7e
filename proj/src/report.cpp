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

#include "pacfair/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "pacfair/error.hpp"

namespace pacfair {

const std::string_view kUniformLowerFootnote =
    "uniform_lower = d*k*(1-delta)/(4*epsilon). The same bound is sometimes quoted as "
    "d*k*(1-delta)/epsilon (e.g. 432(1-delta)/epsilon for d=108, k=4, or 244(1-delta)/epsilon "
    "for d=61, k=4), which is 4x larger; this report evaluates the /(4*epsilon) form.";

namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kTauNote =
    "extension: Kendall tau between complexity and size rankings (1 = aligned)";

std::string_view ToString(RSource s) { return s == RSource::kAnalytic ? "analytic" : "monte_carlo"; }
std::string_view ToString(PhiMode p) { return p == PhiMode::kFinalModel ? "final_model" : "fold_max"; }

Json FairnessJson(const FairnessEstimate& f) {
  Json j;
  j["gamma"] = f.gamma;
  j["alpha_hat"] = f.alpha_hat;
  j["pairs_evaluated"] = f.pairs_evaluated;
  j["exhaustive"] = f.exhaustive;
  Json worst = Json::array();
  for (const auto& p : f.violating_pairs) {
    worst.push_back({{"row_a", p.i}, {"row_b", p.j}, {"score_gap", p.gap}, {"distance", p.distance}});
  }
  j["worst_pairs"] = std::move(worst);
  return j;
}

Json EntryJson(const SubgroupAuditEntry& e, double alpha_target) {
  Json j;
  j["id"] = e.id;
  j["label"] = e.label;
  Json key = Json::object();
  for (const auto& [col, val] : e.key) key[col] = val;
  j["key"] = std::move(key);
  j["size"] = e.size;
  j["positives"] = e.positives;
  j["feasible"] = e.feasible;
  if (!e.note.empty()) j["note"] = e.note;
  if (e.feasible || e.folds_used > 0) {
    j["folds"] = e.folds_used;
    j["lambda_star"] = e.lambda_star;
    j["cv_log_loss"] = e.cv_log_loss;
    j["converged"] = e.converged;
    j["iterations"] = e.iterations;
    j["R"] = e.norm_stats.r;
    j["phi"] = e.norm_stats.phi;
    j["rademacher"] = {{"estimate", e.rademacher.estimate},
                       {"std_error", e.rademacher.std_error},
                       {"n_draws", e.rademacher.n_draws},
                       {"analytic_bound", e.rademacher.analytic_bound},
                       {"r_coefficient", e.rademacher.r_coefficient}};
    j["complexity"] = {{"uniform", e.complexity_score}, {"erm", e.complexity_score_erm}};
    Json fair = Json::array();
    for (const auto& f : e.fairness) fair.push_back(FairnessJson(f));
    j["fairness"] = std::move(fair);
    j["min_gamma"] = {{"alpha_target", alpha_target}, {"gamma", e.min_gamma}};
  }
  j["complexity_rank"] = e.complexity_rank;
  j["size_rank"] = e.size_rank;
  j["warnings"] = e.warnings;
  return j;
}

Json ConfigJson(const AuditConfig& c) {
  Json j;
  j["seed"] = c.seed;
  j["train"] = {{"lambda_grid", c.train.lambda_grid},
                {"folds", c.train.folds},
                {"max_iters", c.train.max_iters},
                {"tol", c.train.tol},
                {"fit_intercept", c.train.fit_intercept},
                {"stratified", c.train.stratified},
                {"lbfgs_memory", c.train.lbfgs_memory}};
  j["budget"] = {{"delta", c.budget.delta},
                 {"eps_alpha", c.budget.eps_alpha},
                 {"eps_gamma", c.budget.eps_gamma},
                 {"constant", c.budget.constant}};
  j["pac_epsilon"] = c.pac_epsilon;
  j["pac_delta"] = c.pac_delta;
  j["n_draws"] = c.n_draws;
  j["gamma_grid"] = c.gamma_grid;
  j["alpha_target"] = c.alpha_target;
  j["r_source"] = ToString(c.r_source);
  j["phi_mode"] = ToString(c.phi_mode);
  j["fairness"] = {{"exhaustive_cap", c.fairness.exhaustive_cap},
                   {"sampled_pairs", c.fairness.sampled_pairs},
                   {"worst_pairs", c.fairness.worst_pairs}};
  j["include_overall"] = c.include_overall;
  return j;
}

std::string Fmt(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string Thousands(std::size_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out.push_back(',');
    out.push_back(digits[i]);
  }
  return out;
}

std::string Name(const SubgroupAuditEntry& e) {
  return e.id == 0 ? e.label : std::to_string(e.id) + " (" + e.label + ")";
}

}  // namespace

std::string ReportToJson(const AuditReport& r) {
  Json j;
  j["format"] = "pacfair-audit-report";
  j["version"] = 1;
  j["dataset"] = r.dataset;
  j["schema"] = r.schema_id;
  j["m"] = r.m;
  j["d"] = r.d;
  j["k"] = r.k;
  Json subgroups = Json::array();
  for (const auto& e : r.entries) subgroups.push_back(EntryJson(e, r.config.alpha_target));
  j["subgroups"] = std::move(subgroups);
  j["overall"] = r.overall ? EntryJson(*r.overall, r.config.alpha_target) : Json(nullptr);

  std::vector<const SubgroupAuditEntry*> feasible;
  for (const auto& e : r.entries) {
    if (e.feasible) feasible.push_back(&e);
  }
  auto order_by = [&](auto rank) {
    auto sorted = feasible;
    std::sort(sorted.begin(), sorted.end(), [&](auto* a, auto* b) { return rank(*a) < rank(*b); });
    std::vector<std::size_t> ids;
    for (auto* e : sorted) ids.push_back(e->id);
    return ids;
  };
  Json ranking;
  ranking["complexity_order"] = order_by([](const auto& e) { return e.complexity_rank; });
  ranking["size_order"] = order_by([](const auto& e) { return e.size_rank; });
  Json inv = Json::array();
  for (const auto& [a, b] : r.inversions.inversions) inv.push_back({a, b});
  ranking["inversions"] = std::move(inv);
  ranking["kendall_tau"] = r.inversions.kendall_tau;
  ranking["kendall_tau_note"] = kTauNote;
  j["ranking"] = std::move(ranking);

  Json recs = Json::array();
  for (const auto& rec : r.recommendations) {
    recs.push_back({{"id", rec.id},
                    {"label", rec.label},
                    {"current_size", rec.current_size},
                    {"target_size", rec.target_size},
                    {"additional", rec.additional}});
  }
  j["recommendations"] = std::move(recs);

  const auto& cb = r.collaborative;
  Json collab;
  collab["d"] = cb.d;
  collab["k"] = cb.k;
  collab["epsilon"] = cb.epsilon;
  collab["delta"] = cb.delta;
  collab["centralized"] = cb.centralized;
  collab["personalized"] = cb.personalized ? Json(*cb.personalized) : Json(nullptr);
  collab["uniform_lower"] = cb.uniform_lower;
  collab["footnote"] = kUniformLowerFootnote;
  collab["warnings"] = cb.warnings;
  j["collaborative"] = std::move(collab);
  j["config"] = ConfigJson(r.config);
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

std::string ReportToMarkdown(const AuditReport& r) {
  std::ostringstream out;
  out << "# Subgroup sample-complexity audit\n\n";
  out << "- dataset: `" << r.dataset << "` (schema `" << r.schema_id << "`)\n";
  out << "- rows m = " << Thousands(r.m) << ", encoded dimension d = " << r.d
      << ", feasible subgroups k = " << r.k << "\n";
  out << "- seed " << r.config.seed << ", " << r.config.n_draws << " Rademacher draws, budget delta = "
      << r.config.budget.delta << ", eps_alpha = " << r.config.budget.eps_alpha
      << ", eps_gamma = " << r.config.budget.eps_gamma << ", C = " << r.config.budget.constant
      << "\n\n";

  out << "## Rademacher complexity of linear hypotheses per subgroup\n\n";
  out << "| Subgroup | m | R | phi | R_m(H) (Monte-Carlo +- s.e.) | R*phi/sqrt(m) |\n";
  out << "|---|---:|---:|---:|---:|---:|\n";
  auto rad_row = [&](const SubgroupAuditEntry& e) {
    out << "| " << Name(e) << " | " << Thousands(e.size) << " | ";
    if (e.folds_used == 0) {
      out << "- | - | infeasible | - |\n";
      return;
    }
    out << Fmt("%.3f", e.norm_stats.r) << " | " << Fmt("%.3f", e.norm_stats.phi) << " | "
        << Fmt("%.3f", e.rademacher.estimate) << " +- " << Fmt("%.3f", e.rademacher.std_error)
        << " | " << Fmt("%.3f", e.rademacher.analytic_bound) << " |\n";
  };
  for (const auto& e : r.entries) rad_row(e);
  if (r.overall) rad_row(*r.overall);
  out << "\n";

  out << "## Sample complexity ranking vs. actual subgroup size\n\n";
  out << "Higher complexity rank means a higher fairness sample-complexity score.\n\n";
  out << "| Subgroup | Sample Complexity Rank | Actual Sample Size (Rank) | score (uniform) | score (ERM) |\n";
  out << "|---|---:|---:|---:|---:|\n";
  for (const auto& e : r.entries) {
    if (!e.feasible) {
      out << "| " << Name(e) << " | infeasible | " << Thousands(e.size) << " (-) | - | - |\n";
      continue;
    }
    out << "| " << Name(e) << " | " << e.complexity_rank << " | " << Thousands(e.size) << " ("
        << e.size_rank << ") | " << Fmt("%.4g", e.complexity_score) << " | "
        << Fmt("%.4g", e.complexity_score_erm) << " |\n";
  }
  out << "\n";

  out << "### Inversions\n\n";
  if (r.inversions.inversions.empty()) {
    out << "None: actual sizes are ordered like the sample complexities.\n";
  } else {
    for (const auto& [a, b] : r.inversions.inversions) out << "- (" << a << ", " << b << ")\n";
  }
  out << "\nKendall tau = " << Fmt("%.4f", r.inversions.kendall_tau) << " (" << kTauNote << ")\n\n";

  out << "### Recommended data collection\n\n";
  if (r.recommendations.empty()) {
    out << "No additional samples needed to align the orderings.\n\n";
  } else {
    out << "| Subgroup | current size | target size | additional samples |\n";
    out << "|---|---:|---:|---:|\n";
    for (const auto& rec : r.recommendations) {
      out << "| " << rec.id << " (" << rec.label << ") | " << Thousands(rec.current_size) << " | "
          << Thousands(rec.target_size) << " | " << Thousands(rec.additional) << " |\n";
    }
    out << "\n";
  }

  std::vector<const SubgroupAuditEntry*> infeasible;
  for (const auto& e : r.entries) {
    if (!e.feasible) infeasible.push_back(&e);
  }
  if (!infeasible.empty()) {
    out << "### Infeasible subgroups\n\n";
    for (const auto* e : infeasible) out << "- **" << Name(*e) << "**: " << e->note << "\n";
    out << "\n";
  }

  const auto& cb = r.collaborative;
  out << "## Accuracy sample-complexity bounds across k subgroups\n\n";
  out << "| bound | value |\n|---|---:|\n";
  out << "| centralized | " << Fmt("%.1f", cb.centralized) << " |\n";
  out << "| personalized | " << (cb.personalized ? Fmt("%.1f", *cb.personalized) : "n/a") << " |\n";
  out << "| uniform lower bound [1] | " << Fmt("%.1f", cb.uniform_lower) << " |\n\n";
  out << "(d = " << cb.d << ", k = " << cb.k << ", epsilon = " << cb.epsilon
      << ", delta = " << cb.delta << ")\n\n";
  out << "[1] " << kUniformLowerFootnote << "\n\n";

  out << "## Empirical metric fairness of each subgroup model\n\n";
  out << "| Subgroup |";
  for (double g : r.config.gamma_grid) out << " alpha_hat(gamma=" << g << ") |";
  out << " min gamma for alpha <= " << r.config.alpha_target << " |\n|---|";
  for (std::size_t i = 0; i <= r.config.gamma_grid.size(); ++i) out << "---:|";
  out << "\n";
  auto fair_row = [&](const SubgroupAuditEntry& e) {
    if (e.fairness.empty()) return;
    out << "| " << Name(e) << " |";
    for (const auto& f : e.fairness) out << " " << Fmt("%.4f", f.alpha_hat) << " |";
    out << " " << Fmt("%.4f", e.min_gamma) << " |\n";
  };
  for (const auto& e : r.entries) fair_row(e);
  if (r.overall) fair_row(*r.overall);
  out << "\n";

  std::vector<std::string> warnings = r.warnings;
  for (const auto& e : r.entries) {
    for (const auto& w : e.warnings) warnings.push_back(Name(e) + ": " + w);
  }
  if (r.overall) {
    for (const auto& w : r.overall->warnings) warnings.push_back("Overall: " + w);
  }
  for (const auto& w : cb.warnings) warnings.push_back(w);
  if (!warnings.empty()) {
    out << "## Warnings\n\n";
    for (const auto& w : warnings) out << "- " << w << "\n";
  }
  return out.str();
}

std::string ModelToJson(const TrainedModel& model, const std::vector<std::string>& feature_names) {
  Json j;
  j["format"] = "pacfair-model";
  j["weights"] = model.w;
  j["intercept"] = model.b;
  j["lambda"] = model.lambda;
  j["converged"] = model.converged;
  j["cv_log_loss"] = model.cv_log_loss;
  j["feature_names"] = feature_names;
  return j.dump(2) + "\n";
}

TrainedModel ModelFromJson(std::string_view text) {
  try {
    const auto j = Json::parse(text);
    TrainedModel model;
    model.w = j.at("weights").get<std::vector<double>>();
    model.b = j.value("intercept", 0.0);
    model.lambda = j.value("lambda", 0.0);
    model.converged = j.value("converged", true);
    model.cv_log_loss = j.value("cv_log_loss", 0.0);
    for (double v : model.w) {
      if (!std::isfinite(v)) throw ValidationError("model weights must be finite");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model file: ") + e.what());
  }
}

}  // namespace pacfair
