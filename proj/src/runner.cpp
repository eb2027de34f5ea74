#include "gmeef/runner.hpp"

#include <fstream>
#include <limits>

#include "gmeef/error.hpp"
#include "gmeef/experiments/metrics.hpp"
#include "gmeef/format.hpp"

namespace gmeef {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

class Writer {
 public:
  Writer(fs::path dir, std::string name) : dir_(std::move(dir)), name_(std::move(name)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir_.string() + ": " + ec.message());
  }

  std::ofstream open(const std::string& suffix, RunReport& rep) {
    const fs::path p = dir_ / (name_ + suffix);
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + p.string());
    rep.files.push_back(p);
    return out;
  }

  void curves(const std::string& suffix, const std::string& metric, const std::vector<exp::Curve>& c,
              std::size_t first, RunReport& rep) {
    auto out = open(suffix, rep);
    exp::write_curves_csv(out, metric, c, first);
  }

  void doc(const std::string& suffix, const json& j, RunReport& rep) {
    auto out = open(suffix, rep);
    out << j.dump(2) << '\n';
  }

 private:
  fs::path dir_;
  std::string name_;
};

void note_divergence(const std::vector<exp::Curve>& curves, RunReport& rep, json& summary) {
  for (const auto& c : curves) {
    if (c.diverged_at) {
      rep.diverged.push_back({c.name, *c.diverged_at});
      summary[c.name]["diverged_at"] = *c.diverged_at;
    }
  }
}

// Longest stretch (in samples) of far-end-only samples after `start` with
// ERLE at or above `level`.
std::size_t longest_run(const std::vector<double>& erle, const std::vector<char>& near,
                        std::size_t start, double level) {
  std::size_t best = 0;
  std::size_t run = 0;
  for (std::size_t i = start; i < erle.size(); ++i) {
    if (!near[i] && erle[i] >= level) {
      best = std::max(best, ++run);
    } else {
      run = 0;
    }
  }
  return best;
}

void run_sysid_kind(const ExperimentConfig& cfg, Writer& w, RunReport& rep, json& summary) {
  const auto res = exp::run_sysid(cfg.sysid);
  w.curves(".csv", "msd_db", res.curves, 0, rep);
  if (!res.code_counts.empty()) w.curves("_h_count.csv", "h_count", res.code_counts, 1, rep);
  for (const auto& c : res.curves) {
    json a;
    a["mu"] = res.mu_used.at(c.name);
    a["final_msd_db"] = c.values.back();
    a["steady_state_msd_db"] = exp::tail_mean(c.values, 0.2);
    if (auto it = res.h_ave.find(c.name); it != res.h_ave.end()) a["h_ave"] = number_or_null(it->second);
    summary[c.name] = a;
  }
  note_divergence(res.curves, rep, summary);
}

void run_sweep_kind(const ExperimentConfig& cfg, Writer& w, RunReport& rep, json& summary) {
  std::vector<exp::Curve> counts;
  std::vector<std::pair<double, double>> table;
  for (double eps : cfg.epsilons) {
    exp::SysidConfig sc = cfg.sysid;
    sc.algorithms.front().epsilon = eps;
    sc.algorithms.front().name = cfg.sysid.algorithms.front().name + "[eps=" + format_number(eps) + "]";
    const auto res = exp::run_sysid(sc);
    const auto& name = sc.algorithms.front().name;
    const double h = res.h_ave.count(name) ? res.h_ave.at(name) : std::numeric_limits<double>::quiet_NaN();
    table.emplace_back(eps, h);
    counts.push_back(res.code_counts.front());
    summary[name] = json{{"epsilon", eps},
                         {"h_ave", number_or_null(h)},
                         {"steady_state_msd_db", exp::tail_mean(res.curves.front().values, 0.2)}};
    note_divergence(res.curves, rep, summary);
  }
  w.curves(".csv", "h_count", counts, 1, rep);
  auto out = w.open("_h_ave.csv", rep);
  out << "epsilon,h_ave\n";
  for (const auto& [e, h] : table) out << format_number(e) << ',' << format_number(h) << '\n';
}

void run_aec_kind(const ExperimentConfig& cfg, Writer& w, RunReport& rep, json& summary) {
  const auto res = exp::run_aec(cfg.aec);
  w.curves(".csv", "erle_db", res.erle, 0, rep);
  w.curves("_frozen.csv", "frozen", res.frozen, 0, rep);
  const auto& near = res.signals.near_active;
  const auto start = static_cast<std::size_t>(cfg.aec.fs);  // skip the first second
  for (std::size_t a = 0; a < res.erle.size(); ++a) {
    const auto& e = res.erle[a].values;
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = start; i < e.size(); ++i) {
      if (!near[i]) {
        sum += e[i];
        ++n;
      }
    }
    std::size_t frozen = 0;
    for (double f : res.frozen[a].values) frozen += f > 0.5 ? 1 : 0;
    summary[res.erle[a].name] = json{
        {"far_only_mean_erle_db", n ? json(sum / static_cast<double>(n)) : json(nullptr)},
        {"longest_far_only_above_10db_s", static_cast<double>(longest_run(e, near, start, 10.0)) / cfg.aec.fs},
        {"frozen_fraction", static_cast<double>(frozen) / static_cast<double>(e.size())}};
  }
  note_divergence(res.erle, rep, summary);
}

void run_mg_kind(const ExperimentConfig& cfg, Writer& w, RunReport& rep, json& summary) {
  const auto res = exp::run_mg_prediction(cfg.mg);
  w.curves(".csv", "test_mse", res.mse, 1, rep);
  for (std::size_t a = 0; a < res.mse.size(); ++a) {
    const auto& v = res.mse[a].values;
    const auto smooth = exp::moving_average(v, 50);
    summary[res.mse[a].name] = json{{"final_test_mse", v.back()},
                                    {"final_smoothed_test_mse", smooth.back()},
                                    {"rejected_updates", res.rejected[a]}};
  }
  note_divergence(res.mse, rep, summary);
}

void run_classify_kind(const ExperimentConfig& cfg, Writer& w, RunReport& rep, json& summary) {
  const auto res = exp::run_classify(cfg.classify);
  w.curves(".csv", "test_accuracy", res.test_accuracy, 0, rep);
  w.curves("_train_accuracy.csv", "train_accuracy", res.train_accuracy, 0, rep);
  for (std::size_t a = 0; a < res.test_accuracy.size(); ++a) {
    summary[res.test_accuracy[a].name] = json{{"final_train_accuracy", res.train_accuracy[a].values.back()},
                                              {"final_test_accuracy", res.test_accuracy[a].values.back()}};
  }
  note_divergence(res.test_accuracy, rep, summary);
}

}  // namespace

std::string primary_metric(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::sysid: return "msd_db";
    case ExperimentKind::aec: return "erle_db";
    case ExperimentKind::mg: return "test_mse";
    case ExperimentKind::classify: return "test_accuracy";
    case ExperimentKind::sweep: return "h_count";
  }
  return "value";
}

RunReport run_experiment(const ExperimentConfig& cfg, const fs::path& out_dir) {
  RunReport rep;
  Writer w(out_dir, cfg.name);
  json summary = json::object();
  switch (cfg.kind) {
    case ExperimentKind::sysid: run_sysid_kind(cfg, w, rep, summary); break;
    case ExperimentKind::sweep: run_sweep_kind(cfg, w, rep, summary); break;
    case ExperimentKind::aec: run_aec_kind(cfg, w, rep, summary); break;
    case ExperimentKind::mg: run_mg_kind(cfg, w, rep, summary); break;
    case ExperimentKind::classify: run_classify_kind(cfg, w, rep, summary); break;
  }
  w.doc(".json", to_json(cfg), rep);
  w.doc("_summary.json", json{{"experiment", experiment_name(cfg.kind)}, {"seed", cfg.seed}, {"results", summary}},
        rep);
  return rep;
}

}  // namespace gmeef
