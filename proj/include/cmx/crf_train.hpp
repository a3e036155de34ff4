// crf_train.hpp
// Regularized maximum-likelihood training of the linear-chain CRF.

#ifndef CMX_CRF_TRAIN_HPP_
#define CMX_CRF_TRAIN_HPP_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cmx/corpus.hpp"
#include "cmx/crf_model.hpp"
#include "cmx/crf_objective.hpp"
#include "cmx/error.hpp"
#include "cmx/features.hpp"
#include "cmx/lbfgs.hpp"

namespace cmx {

struct TrainConfig {
  double c1 = 0.05;          // L1 coefficient
  double c2 = 0.1;           // L2 coefficient
  int max_iterations = 200;
  double tolerance = 1e-5;   // relative objective change
  FeatureConfig features;
};

struct TrainStats {
  int iterations = 0;
  bool converged = false;
  double objective = 0.0;
  int num_labels = 0;
  int num_features = 0;
};

// Extracts features, builds the index, and minimizes the L1/L2-regularized
// negative log-likelihood from zero weights. Labels are ordered
// lexicographically; the whole procedure is deterministic, so identical
// corpus and config yield identical models.
inline CrfModel train(const Corpus& corpus, const TrainConfig& config,
                      TrainStats* stats = nullptr) {
  if (corpus.utterances.empty()) throw Error("training corpus is empty");
  if (config.c1 < 0.0 || config.c2 < 0.0) throw Error("c1 and c2 must be non-negative");
  if (config.max_iterations < 1) throw Error("max_iterations must be >= 1");
  if (config.tolerance <= 0.0) throw Error("tolerance must be positive");
  validate(config.features);

  std::set<std::string> label_set;
  for (std::size_t u = 0; u < corpus.utterances.size(); ++u) {
    const Utterance& utt = corpus.utterances[u];
    for (std::size_t t = 0; t < utt.tokens.size(); ++t) {
      if (!utt.tokens[t].pos.has_value()) {
        throw Error("token without pos label (utterance " + std::to_string(u + 1) +
                    ", position " + std::to_string(t + 1) + ")");
      }
      label_set.insert(*utt.tokens[t].pos);
    }
  }
  std::vector<std::string> labels(label_set.begin(), label_set.end());
  std::map<std::string, int> label_id;
  for (std::size_t i = 0; i < labels.size(); ++i) label_id[labels[i]] = static_cast<int>(i);
  const int L = static_cast<int>(labels.size());

  std::vector<std::vector<std::vector<std::string>>> names;
  names.reserve(corpus.utterances.size());
  FeatureIndexBuilder builder;
  for (const Utterance& utt : corpus.utterances) {
    names.push_back(sequence_features(utt, config.features));
    for (const auto& position : names.back()) {
      for (const auto& name : position) builder.add(name);
    }
  }
  FeatureIndex index = builder.finish(config.features.min_count);
  const int F = index.size();

  std::vector<SequenceInstance> instances;
  instances.reserve(corpus.utterances.size());
  for (std::size_t u = 0; u < corpus.utterances.size(); ++u) {
    const Utterance& utt = corpus.utterances[u];
    SequenceInstance instance;
    instance.features.reserve(utt.tokens.size());
    instance.gold.reserve(utt.tokens.size());
    for (std::size_t t = 0; t < utt.tokens.size(); ++t) {
      std::vector<int> ids;
      for (const std::string& name : names[u][t]) {
        int id = index.id_of(name);
        if (id >= 0) ids.push_back(id);
      }
      std::sort(ids.begin(), ids.end());
      instance.features.push_back(std::move(ids));
      instance.gold.push_back(label_id.at(*utt.tokens[t].pos));
    }
    instances.push_back(std::move(instance));
  }

  const WeightLayout layout{F, L};
  std::vector<double> weights(layout.total_size(), 0.0);
  LbfgsOptions options;
  options.c1 = config.c1;
  options.max_iterations = config.max_iterations;
  options.tolerance = config.tolerance;
  LbfgsResult opt = lbfgs_minimize(
      weights,
      [&](std::span<const double> w, std::span<double> g) {
        return objective_and_gradient(w, layout, instances, config.c2, g);
      },
      options);

  CrfModel model;
  model.labels = std::move(labels);
  model.features = std::move(index);
  model.state_weights.resize(static_cast<std::size_t>(F));
  for (int f = 0; f < F; ++f) {
    for (int y = 0; y < L; ++y) {
      double w = weights[layout.state_at(f, y)];
      if (w != 0.0) model.state_weights[static_cast<std::size_t>(f)].emplace_back(y, w);
    }
  }
  model.trans.assign(weights.begin() + static_cast<std::ptrdiff_t>(layout.trans_offset()),
                     weights.begin() + static_cast<std::ptrdiff_t>(layout.bos_offset()));
  model.bos.assign(weights.begin() + static_cast<std::ptrdiff_t>(layout.bos_offset()),
                   weights.begin() + static_cast<std::ptrdiff_t>(layout.eos_offset()));
  model.eos.assign(weights.begin() + static_cast<std::ptrdiff_t>(layout.eos_offset()),
                   weights.end());
  model.config = config.features;

  if (stats != nullptr) {
    stats->iterations = opt.iterations;
    stats->converged = opt.converged;
    stats->objective = opt.objective;
    stats->num_labels = L;
    stats->num_features = F;
  }
  return model;
}

}  // namespace cmx

#endif  // CMX_CRF_TRAIN_HPP_
