#include "gmeef/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "gmeef/error.hpp"
#include "gmeef/experiments/signals.hpp"
#include "gmeef/format.hpp"

namespace gmeef {
namespace {

using json = nlohmann::ordered_json;

std::string show(double v) { return format_number(v); }

// Typed, path-aware access to one JSON object; finish() rejects every key
// that was never read.
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) fail("", "must be a JSON object");
  }

  [[noreturn]] void fail(const std::string& key, const std::string& why) const {
    std::string where = path_;
    if (!key.empty()) where += (where.empty() ? "" : ".") + key;
    throw ConfigError("config: " + (where.empty() ? std::string("<root>") : where) + ": " + why);
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json* get(const std::string& key) {
    used_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  double number(const std::string& key, double def) {
    const json* v = get(key);
    if (!v) return def;
    if (!v->is_number()) fail(key, "must be a number");
    const double d = v->get<double>();
    if (!std::isfinite(d)) fail(key, "must be finite");
    return d;
  }

  std::size_t count(const std::string& key, std::size_t def, std::size_t min = 0) {
    const json* v = get(key);
    if (!v) return def;
    if (!v->is_number_integer() || v->get<long long>() < 0) fail(key, "must be a nonnegative integer");
    const auto n = v->get<std::size_t>();
    if (n < min) fail(key, "must be >= " + std::to_string(min) + ", got " + std::to_string(n));
    return n;
  }

  std::uint64_t u64(const std::string& key, std::uint64_t def) {
    const json* v = get(key);
    if (!v) return def;
    if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<long long>() >= 0)) {
      fail(key, "must be a nonnegative integer");
    }
    return v->get<std::uint64_t>();
  }

  std::string text(const std::string& key, const std::string& def) {
    const json* v = get(key);
    if (!v) return def;
    if (!v->is_string()) fail(key, "must be a string");
    return v->get<std::string>();
  }

  std::string required_text(const std::string& key) {
    if (!has(key)) fail(key, "is required");
    return text(key, "");
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> def) {
    const json* v = get(key);
    if (!v) return def;
    if (!v->is_array()) fail(key, "must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : *v) {
      if (!e.is_number()) fail(key, "must be an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::vector<std::size_t> counts(const std::string& key, std::vector<std::size_t> def) {
    const json* v = get(key);
    if (!v) return def;
    if (!v->is_array()) fail(key, "must be an array of integers");
    std::vector<std::size_t> out;
    for (const auto& e : *v) {
      if (!e.is_number_integer() || e.get<long long>() < 0) fail(key, "must be an array of nonnegative integers");
      out.push_back(e.get<std::size_t>());
    }
    return out;
  }

  std::vector<std::string> texts(const std::string& key) {
    const json* v = get(key);
    if (!v) return {};
    if (!v->is_array()) fail(key, "must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : *v) {
      if (!e.is_string()) fail(key, "must be an array of strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  }

  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.count(it.key())) fail(it.key(), "unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

void positive(Obj& o, const std::string& key, double v) {
  if (!(v > 0.0)) o.fail(key, "must be > 0, got " + show(v));
}

void in_closed(Obj& o, const std::string& key, double v, double lo, double hi) {
  if (!(v >= lo && v <= hi)) {
    o.fail(key, "must lie in [" + show(lo) + ", " + show(hi) + "], got " + show(v));
  }
}

exp::NoiseSpec parse_noise(const json& j, const std::string& path, exp::NoiseSpec def) {
  Obj o(j, path);
  exp::NoiseSpec n = def;
  try {
    n.kind = exp::parse_noise_kind(o.text("kind", std::string(exp::noise_name(def.kind))));
  } catch (const ConfigError& e) {
    o.fail("kind", e.what());
  }
  n.scale = o.number("scale", def.scale);
  if (!(n.scale >= 0.0)) o.fail("scale", "must be >= 0, got " + show(n.scale));
  n.variance = o.number("variance", def.variance);
  positive(o, "variance", n.variance);
  n.mix_prob = o.number("mix_prob", def.mix_prob);
  in_closed(o, "mix_prob", n.mix_prob, 0.0, 1.0);
  n.var_small = o.number("var_small", def.var_small);
  positive(o, "var_small", n.var_small);
  n.var_large = o.number("var_large", def.var_large);
  positive(o, "var_large", n.var_large);
  n.rayleigh_sigma = o.number("rayleigh_sigma", def.rayleigh_sigma);
  positive(o, "rayleigh_sigma", n.rayleigh_sigma);
  o.finish();
  return n;
}

json noise_json(const exp::NoiseSpec& n) {
  return json{{"kind", exp::noise_name(n.kind)}, {"scale", n.scale},       {"variance", n.variance},
              {"mix_prob", n.mix_prob},          {"var_small", n.var_small}, {"var_large", n.var_large},
              {"rayleigh_sigma", n.rayleigh_sigma}};
}

const std::set<std::string>& allowed_types(ExperimentKind k) {
  static const std::set<std::string> filters{"lms", "lmf", "gmcc", "gmee", "gmeef", "qgmeef"};
  static const std::set<std::string> sweep{"qgmeef"};
  static const std::set<std::string> mg{"krgmeef", "lms", "lmf", "gmcc", "gmee", "gmeef", "qgmeef"};
  static const std::set<std::string> mlp{"ce", "gmcc", "gmee", "gmeef"};
  switch (k) {
    case ExperimentKind::sweep: return sweep;
    case ExperimentKind::mg: return mg;
    case ExperimentKind::classify: return mlp;
    default: return filters;
  }
}

// Defaults per experiment and learner type.
exp::AlgorithmSpec algorithm_defaults(ExperimentKind k, const std::string& type) {
  exp::AlgorithmSpec s;
  s.type = type;
  s.name = type;
  if (k == ExperimentKind::sweep) s.window = 100;
  if (k == ExperimentKind::mg) {
    s.lambda = 0.8;
    s.alpha1 = 2.0;
    s.beta1 = 0.5;
    s.alpha2 = 2.0;
    s.beta2 = 1.0;
    s.zeta1 = 1e-6;
    s.sigma = 1.0;
    s.mu = type == "krgmeef" ? 0.1 : 0.5;
    s.window = 10;
  }
  if (k == ExperimentKind::classify) {
    s.window = 10;
    s.alpha1 = 2.0;
    s.beta1 = 1.5;
    s.alpha2 = type == "gmee" ? 3.5 : 2.5;
    s.beta2 = type == "gmee" ? 6.0 : 3.0;
    s.lambda = 0.8;
    s.rate = type == "ce" ? 0.5 : type == "gmee" ? 50.0 : 10.0;
  }
  return s;
}

exp::AlgorithmSpec parse_algorithm(const json& j, const std::string& path, ExperimentKind kind) {
  Obj o(j, path);
  const std::string type = o.required_text("type");
  if (!allowed_types(kind).count(type)) {
    std::string list;
    for (const auto& t : allowed_types(kind)) list += (list.empty() ? "" : ", ") + t;
    o.fail("type", "'" + type + "' is not available for " + std::string(experiment_name(kind)) +
                       " (expected one of " + list + ")");
  }
  exp::AlgorithmSpec s = algorithm_defaults(kind, type);
  s.name = o.text("name", type);
  if (s.name.empty() || s.name.find_first_of(",\n\"") != std::string::npos) {
    o.fail("name", "must be nonempty and contain no comma, quote or newline");
  }

  if (const json* mu = o.get("mu")) {
    if (mu->is_string()) {
      if (mu->get<std::string>() != "matched") o.fail("mu", "must be a number or \"matched\"");
      s.mu_matched = true;
    } else if (mu->is_number()) {
      s.mu = mu->get<double>();
      if (!(s.mu > 0.0) || !std::isfinite(s.mu)) o.fail("mu", "must be finite and > 0, got " + show(s.mu));
    } else {
      o.fail("mu", "must be a number or \"matched\"");
    }
  }
  s.match = o.text("match", "");
  if (s.mu_matched && s.match.empty()) o.fail("match", "is required when mu is \"matched\"");
  if (!s.mu_matched && !s.match.empty()) o.fail("match", "only applies when mu is \"matched\"");
  if (s.mu_matched && kind != ExperimentKind::sysid) o.fail("mu", "\"matched\" is only supported by sysid");

  s.window = o.count("window", s.window, 1);
  s.lambda = o.number("lambda", s.lambda);
  in_closed(o, "lambda", s.lambda, 0.0, 1.0);
  s.alpha1 = o.number("alpha1", s.alpha1);
  positive(o, "alpha1", s.alpha1);
  s.beta1 = o.number("beta1", s.beta1);
  positive(o, "beta1", s.beta1);
  s.alpha2 = o.number("alpha2", s.alpha2);
  positive(o, "alpha2", s.alpha2);
  s.beta2 = o.number("beta2", s.beta2);
  positive(o, "beta2", s.beta2);
  s.epsilon = o.number("epsilon", s.epsilon);
  if (!(s.epsilon >= 0.0)) o.fail("epsilon", "must be >= 0, got " + show(s.epsilon));

  const std::string cm = o.text("count_mode", s.count_mode == CountMode::window ? "window" : "global");
  if (cm == "window") {
    s.count_mode = CountMode::window;
  } else if (cm == "global") {
    s.count_mode = CountMode::global;
  } else {
    o.fail("count_mode", "must be \"window\" or \"global\"");
  }
  const std::string sc = o.text("step_convention", s.convention == StepConvention::paper ? "paper" : "exact");
  if (sc == "paper") {
    s.convention = StepConvention::paper;
  } else if (sc == "exact") {
    s.convention = StepConvention::exact;
  } else {
    o.fail("step_convention", "must be \"paper\" or \"exact\"");
  }
  s.zeta1 = o.number("zeta1", s.zeta1);
  positive(o, "zeta1", s.zeta1);
  s.sigma = o.number("sigma", s.sigma);
  positive(o, "sigma", s.sigma);
  s.rate = o.number("rate", s.rate);
  positive(o, "rate", s.rate);
  const std::string mode = o.text("mode", s.mode == TrainMode::batch ? "batch" : "online");
  if (mode == "batch") {
    s.mode = TrainMode::batch;
  } else if (mode == "online") {
    s.mode = TrainMode::online;
  } else {
    o.fail("mode", "must be \"batch\" or \"online\"");
  }
  o.finish();

  // GGD normalization must exist for the chosen shapes.
  try {
    (void)s.mix();
  } catch (const ParameterError& e) {
    o.fail("alpha1", e.what());
  }
  return s;
}

json algorithm_json(const exp::AlgorithmSpec& s, ExperimentKind kind) {
  json j;
  j["name"] = s.name;
  j["type"] = s.type;
  const bool filter = kind != ExperimentKind::classify && s.type != "krgmeef";
  const bool mix_used = !(s.type == "lms" || s.type == "lmf");
  if (filter) {
    if (s.mu_matched) {
      j["mu"] = "matched";
      j["match"] = s.match;
    } else {
      j["mu"] = s.mu;
    }
  }
  if (mix_used) {
    j["window"] = s.window;
    j["lambda"] = s.lambda;
    j["alpha1"] = s.alpha1;
    j["beta1"] = s.beta1;
    j["alpha2"] = s.alpha2;
    j["beta2"] = s.beta2;
  }
  if (filter && mix_used) j["step_convention"] = s.convention == StepConvention::paper ? "paper" : "exact";
  if (s.type == "qgmeef") {
    j["epsilon"] = s.epsilon;
    j["count_mode"] = s.count_mode == CountMode::window ? "window" : "global";
  }
  if (s.type == "krgmeef") {
    j["zeta1"] = s.zeta1;
    j["sigma"] = s.sigma;
  }
  if (kind == ExperimentKind::classify) {
    if (!mix_used) j["window"] = s.window;
    if (s.type == "ce") j["window"] = s.window;
    j["rate"] = s.rate;
    j["mode"] = s.mode == TrainMode::batch ? "batch" : "online";
  }
  return j;
}

ExperimentKind parse_kind(Obj& o) {
  const std::string k = o.required_text("experiment");
  for (auto kind : {ExperimentKind::sysid, ExperimentKind::aec, ExperimentKind::mg,
                    ExperimentKind::classify, ExperimentKind::sweep}) {
    if (experiment_name(kind) == k) return kind;
  }
  o.fail("experiment", "unknown kind '" + k + "' (expected sysid, aec, mg, classify or sweep)");
}

}  // namespace

std::string_view experiment_name(ExperimentKind k) noexcept {
  switch (k) {
    case ExperimentKind::sysid: return "sysid";
    case ExperimentKind::aec: return "aec";
    case ExperimentKind::mg: return "mg";
    case ExperimentKind::classify: return "classify";
    case ExperimentKind::sweep: return "sweep";
  }
  return "unknown";
}

const std::vector<ExperimentInfo>& experiment_catalogue() {
  static const std::vector<ExperimentInfo> cat{
      {ExperimentKind::sysid, "Monte-Carlo system identification, MSD curves per algorithm",
       "§IV.B (Figs. 4-5)", "algorithms, noise, trials, iterations, system.order"},
      {ExperimentKind::aec, "synthetic acoustic echo cancellation with double talk, ERLE curves",
       "§IV.C (Eq. 49, Fig. 8)", "algorithms, aec.{duration, filter_taps, near_start, near_end, chi}"},
      {ExperimentKind::mg, "Mackey-Glass one-step prediction, test MSE curves (KRGMEEF vs linear)",
       "§IV.D (Eq. 50, Fig. 9)", "algorithms, noise, mg.{delay, embedding, train, test}"},
      {ExperimentKind::classify, "MLP classification under CE / GMCC / GMEE / GMEEF costs",
       "§IV.E (Table V)", "algorithms, classify.{dataset, hidden, epochs}"},
      {ExperimentKind::sweep, "QGMEEF codebook size H_ave across quantization thresholds",
       "§IV.B (Table IV)", "algorithms (one qgmeef), epsilons, noise, trials, iterations"},
  };
  return cat;
}

void ExperimentConfig::sync() {
  sysid.seed = seed;
  sysid.threads = threads;
  aec.seed = seed;
  mg.seed = seed;
  mg.threads = threads;
  classify.seed = seed;
  classify.threads = threads;
  if ((kind == ExperimentKind::sysid || kind == ExperimentKind::sweep) && sysid.true_weights.empty()) {
    sysid.true_weights = exp::random_unit_weights(sysid.order, seed);
  }
}

ExperimentConfig parse_config(const json& j) {
  Obj o(j, "");
  ExperimentConfig c;
  c.kind = parse_kind(o);
  const auto kind = c.kind;
  c.name = o.text("name", std::string(experiment_name(kind)));
  if (c.name.empty() || c.name.find_first_of("/\\") != std::string::npos) {
    o.fail("name", "must be a nonempty file stem without path separators");
  }
  c.seed = o.u64("seed", 1);
  c.threads = o.count("threads", 1, 1);
  c.output = o.text("output", "results");

  const json* algs = o.get("algorithms");
  if (!algs || !algs->is_array() || algs->empty()) o.fail("algorithms", "must be a nonempty array");
  std::vector<exp::AlgorithmSpec> specs;
  std::set<std::string> names;
  for (std::size_t i = 0; i < algs->size(); ++i) {
    const std::string path = "algorithms[" + std::to_string(i) + "]";
    specs.push_back(parse_algorithm((*algs)[i], path, kind));
    if (!names.insert(specs.back().name).second) {
      throw ConfigError("config: " + path + ".name: duplicate algorithm name '" + specs.back().name + "'");
    }
  }

  const bool sysid_like = kind == ExperimentKind::sysid || kind == ExperimentKind::sweep;
  if (sysid_like || kind == ExperimentKind::mg) {
    exp::NoiseSpec def;
    if (kind == ExperimentKind::mg) def.kind = exp::NoiseKind::mixed_gaussian;
    const json* n = o.get("noise");
    exp::NoiseSpec noise = n ? parse_noise(*n, "noise", def) : def;
    c.sysid.noise = noise;
    c.mg.noise = noise;
  }

  if (sysid_like) {
    c.sysid.trials = o.count("trials", 50, 1);
    c.sysid.iterations = o.count("iterations", 5000, 1);
    c.sysid.algorithms = specs;
    if (const json* s = o.get("system")) {
      Obj so(*s, "system");
      c.sysid.order = so.count("order", 16, 1);
      c.sysid.true_weights = so.numbers("weights", {});
      if (!c.sysid.true_weights.empty() && c.sysid.true_weights.size() != c.sysid.order) {
        so.fail("weights", "has " + std::to_string(c.sysid.true_weights.size()) + " entries but order is " +
                               std::to_string(c.sysid.order));
      }
      double norm = 0.0;
      for (double w : c.sysid.true_weights) norm += w * w;
      if (!c.sysid.true_weights.empty() && !(norm > 0.0)) so.fail("weights", "must not be all zero");
      c.sysid.match_threshold_db = so.number("match_threshold_db", -20.0);
      if (!(c.sysid.match_threshold_db < 0.0)) so.fail("match_threshold_db", "must be < 0");
      c.sysid.calibration_trials = so.count("calibration_trials", 10, 1);
      so.finish();
    }
    for (const auto& s : specs) {
      if (s.mu_matched && !names.count(s.match)) {
        o.fail("algorithms", "'" + s.name + "' matches unknown algorithm '" + s.match + "'");
      }
    }
  }

  if (kind == ExperimentKind::sweep) {
    c.epsilons = o.numbers("epsilons", {0.0, 0.01, 0.05, 0.1, 0.5, 1.0});
    if (c.epsilons.empty()) o.fail("epsilons", "must be nonempty");
    for (double e : c.epsilons) {
      if (!(e >= 0.0)) o.fail("epsilons", "entries must be >= 0, got " + show(e));
    }
    if (specs.size() != 1) o.fail("algorithms", "sweep takes exactly one qgmeef algorithm");
  }

  if (kind == ExperimentKind::aec) {
    c.aec.algorithms = specs;
    if (const json* a = o.get("aec")) {
      Obj ao(*a, "aec");
      auto& A = c.aec;
      A.fs = ao.number("fs", A.fs);
      positive(ao, "fs", A.fs);
      A.duration = ao.number("duration", A.duration);
      positive(ao, "duration", A.duration);
      A.echo_taps = ao.count("echo_taps", A.echo_taps, 1);
      A.echo_decay = ao.number("echo_decay", A.echo_decay);
      positive(ao, "echo_decay", A.echo_decay);
      A.echo_gain = ao.number("echo_gain", A.echo_gain);
      positive(ao, "echo_gain", A.echo_gain);
      A.filter_taps = ao.count("filter_taps", A.filter_taps, 1);
      A.near_start = ao.number("near_start", A.near_start);
      A.near_end = ao.number("near_end", A.near_end);
      A.near_level = ao.number("near_level", A.near_level);
      if (!(A.near_level >= 0.0)) ao.fail("near_level", "must be >= 0");
      if (const json* b = ao.get("background")) A.background = parse_noise(*b, "aec.background", A.background);
      A.dtd_threshold = ao.number("dtd_threshold", A.dtd_threshold);
      positive(ao, "dtd_threshold", A.dtd_threshold);
      A.dtd_hangover = ao.count("dtd_hangover", A.dtd_hangover);
      A.chi = ao.number("chi", A.chi);
      if (!(A.chi > 0.0 && A.chi < 1.0)) ao.fail("chi", "must lie in (0, 1), got " + show(A.chi));
      ao.finish();
    }
  }

  if (kind == ExperimentKind::mg) {
    c.mg.algorithms = specs;
    if (const json* m = o.get("mg")) {
      Obj mo(*m, "mg");
      auto& M = c.mg;
      M.series.delay = mo.number("delay", M.series.delay);
      M.series.step = mo.number("step", M.series.step);
      M.series.interval = mo.number("interval", M.series.interval);
      M.series.history = mo.number("history", M.series.history);
      M.series.discard = mo.count("discard", M.series.discard);
      M.embedding = mo.count("embedding", M.embedding, 1);
      M.train = mo.count("train", M.train, 2);
      M.test = mo.count("test", M.test, 1);
      M.trials = mo.count("trials", M.trials, 1);
      mo.finish();
      try {
        exp::MgConfig probe = M.series;
        probe.length = 1;
        probe.validate();
      } catch (const ConfigError& e) {
        mo.fail("step", e.what());
      }
    }
  }

  if (kind == ExperimentKind::classify) {
    c.classify.algorithms = specs;
    if (const json* k = o.get("classify")) {
      Obj ko(*k, "classify");
      auto& C = c.classify;
      C.dataset = ko.text("dataset", C.dataset);
      C.train = ko.count("train", C.train, 1);
      C.test = ko.count("test", C.test, 1);
      C.classes = ko.count("classes", C.classes, 2);
      C.features = ko.count("features", C.features, 1);
      C.spread = ko.number("spread", C.spread);
      positive(ko, "spread", C.spread);
      C.files = ko.texts("files");
      C.hidden = ko.counts("hidden", C.hidden);
      C.epochs = ko.count("epochs", C.epochs);
      ko.finish();
      try {
        C.validate();
      } catch (const ConfigError& e) {
        ko.fail("dataset", e.what());
      }
    }
  }

  o.finish();
  c.sync();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) { return parse_config(read_config_json(path)); }

json read_config_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
  return j;
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["experiment"] = experiment_name(c.kind);
  j["name"] = c.name;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["output"] = c.output;

  const std::vector<exp::AlgorithmSpec>* specs = nullptr;
  switch (c.kind) {
    case ExperimentKind::sysid:
    case ExperimentKind::sweep: specs = &c.sysid.algorithms; break;
    case ExperimentKind::aec: specs = &c.aec.algorithms; break;
    case ExperimentKind::mg: specs = &c.mg.algorithms; break;
    case ExperimentKind::classify: specs = &c.classify.algorithms; break;
  }
  json algs = json::array();
  for (const auto& s : *specs) algs.push_back(algorithm_json(s, c.kind));
  j["algorithms"] = algs;

  if (c.kind == ExperimentKind::sysid || c.kind == ExperimentKind::sweep) {
    j["noise"] = noise_json(c.sysid.noise);
    j["trials"] = c.sysid.trials;
    j["iterations"] = c.sysid.iterations;
    j["system"] = json{{"order", c.sysid.order},
                       {"weights", c.sysid.true_weights},
                       {"match_threshold_db", c.sysid.match_threshold_db},
                       {"calibration_trials", c.sysid.calibration_trials}};
  }
  if (c.kind == ExperimentKind::sweep) j["epsilons"] = c.epsilons;
  if (c.kind == ExperimentKind::aec) {
    const auto& A = c.aec;
    j["aec"] = json{{"fs", A.fs},
                    {"duration", A.duration},
                    {"echo_taps", A.echo_taps},
                    {"echo_decay", A.echo_decay},
                    {"echo_gain", A.echo_gain},
                    {"filter_taps", A.filter_taps},
                    {"near_start", A.near_start},
                    {"near_end", A.near_end},
                    {"near_level", A.near_level},
                    {"background", noise_json(A.background)},
                    {"dtd_threshold", A.dtd_threshold},
                    {"dtd_hangover", A.dtd_hangover},
                    {"chi", A.chi}};
  }
  if (c.kind == ExperimentKind::mg) {
    const auto& M = c.mg;
    j["noise"] = noise_json(M.noise);
    j["mg"] = json{{"delay", M.series.delay},     {"step", M.series.step},
                   {"interval", M.series.interval}, {"history", M.series.history},
                   {"discard", M.series.discard},   {"embedding", M.embedding},
                   {"train", M.train},              {"test", M.test},
                   {"trials", M.trials}};
  }
  if (c.kind == ExperimentKind::classify) {
    const auto& C = c.classify;
    j["classify"] = json{{"dataset", C.dataset}, {"train", C.train},     {"test", C.test},
                         {"classes", C.classes}, {"features", C.features}, {"spread", C.spread},
                         {"files", C.files},     {"hidden", C.hidden},   {"epochs", C.epochs}};
  }
  return j;
}

}  // namespace gmeef
