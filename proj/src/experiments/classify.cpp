#include "gmeef/experiments/classify.hpp"

#include "gmeef/error.hpp"

namespace gmeef::exp {

void ClassifyConfig::validate() const {
  if (dataset != "glyphs" && dataset != "clusters" && dataset != "idx" && dataset != "csv") {
    throw ConfigError("classify: unknown dataset '" + dataset +
                      "' (expected glyphs, clusters, idx or csv)");
  }
  if (dataset == "idx" && files.size() != 4) {
    throw ConfigError("classify: idx needs four files (train images, train labels, test images, test labels)");
  }
  if (dataset == "csv" && files.size() != 2) throw ConfigError("classify: csv needs two files (train, test)");
  if (train == 0 || test == 0) throw ConfigError("classify: train and test sizes must be positive");
  if (algorithms.empty()) throw ConfigError("classify: no algorithms configured");
  for (std::size_t h : hidden) {
    if (h == 0) throw ConfigError("classify: hidden layer widths must be positive");
  }
}

std::pair<Dataset, Dataset> classify_data(const ClassifyConfig& cfg) {
  cfg.validate();
  if (cfg.dataset == "glyphs") {
    const Dataset all = make_glyph_digits(cfg.train + cfg.test, cfg.seed);
    return {take(all, 0, cfg.train), take(all, cfg.train, cfg.test)};
  }
  if (cfg.dataset == "clusters") {
    const Dataset all = make_clusters(cfg.train + cfg.test, cfg.classes, cfg.features, cfg.spread, cfg.seed);
    return {take(all, 0, cfg.train), take(all, cfg.train, cfg.test)};
  }
  Dataset tr;
  Dataset te;
  if (cfg.dataset == "idx") {
    tr = load_idx(cfg.files[0], cfg.files[1], cfg.train);
    te = load_idx(cfg.files[2], cfg.files[3], cfg.test);
  } else {
    tr = load_csv(cfg.files[0], cfg.train);
    te = load_csv(cfg.files[1], cfg.test);
  }
  if (tr.features != te.features) throw ConfigError("classify: train and test feature counts differ");
  const std::size_t classes = std::max(tr.classes, te.classes);
  tr.classes = te.classes = classes;
  return {std::move(tr), std::move(te)};
}

ClassifyResult run_classify(const ClassifyConfig& cfg) {
  const auto [train, test] = classify_data(cfg);
  std::vector<std::size_t> sizes{train.features};
  sizes.insert(sizes.end(), cfg.hidden.begin(), cfg.hidden.end());
  sizes.push_back(train.classes);
  const MlpNet init = mlp_init(sizes, cfg.seed);

  const auto results = run_indexed<TrainResult>(cfg.algorithms.size(), cfg.threads, [&](std::size_t a) {
    const auto& spec = cfg.algorithms[a];
    TrainConfig tc;
    tc.cost = parse_cost(spec.type);
    tc.mix = spec.mix();
    tc.epochs = cfg.epochs;
    tc.window = spec.window;
    tc.rate = spec.rate;
    tc.mode = spec.mode;
    tc.seed = cfg.seed;
    return mlp_train(init, train, test, tc);
  });

  ClassifyResult res;
  for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
    res.train_accuracy.push_back({cfg.algorithms[a].name, results[a].train_accuracy, std::nullopt});
    res.test_accuracy.push_back({cfg.algorithms[a].name, results[a].test_accuracy, std::nullopt});
  }
  return res;
}

}  // namespace gmeef::exp
