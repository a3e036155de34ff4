// crf_model.hpp
// Linear-chain CRF model container and encoded training/decoding instances.

#ifndef CMX_CRF_MODEL_HPP_
#define CMX_CRF_MODEL_HPP_

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "cmx/corpus.hpp"
#include "cmx/error.hpp"
#include "cmx/features.hpp"

namespace cmx {

// Immutable after training. State weights are sparse per feature id; the
// label order fixes tie-breaking and serialization order. Sequence-boundary
// transitions live in explicit bos/eos vectors so the label count stays
// equal to the tagset size.
struct CrfModel {
  std::vector<std::string> labels;
  FeatureIndex features;
  // Per feature id: (label id, weight), sorted by label id, zeros dropped.
  std::vector<std::vector<std::pair<int, double>>> state_weights;
  std::vector<double> trans;  // L*L, row-major [from * L + to]
  std::vector<double> bos;    // L
  std::vector<double> eos;    // L
  FeatureConfig config;

  int num_labels() const { return static_cast<int>(labels.size()); }

  int label_id(std::string_view label) const {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == label) return static_cast<int>(i);
    }
    return -1;
  }

  double trans_at(int from, int to) const {
    return trans[static_cast<std::size_t>(from) * labels.size() +
                 static_cast<std::size_t>(to)];
  }
};

// Feature ids per position plus optional gold label ids.
struct SequenceInstance {
  std::vector<std::vector<int>> features;
  std::vector<int> gold;  // empty when unlabeled

  std::size_t size() const { return features.size(); }
};

// Maps an utterance to feature ids under `index`; names absent from the
// index are dropped. Gold labels are not filled here.
inline SequenceInstance encode_utterance(const Utterance& utt,
                                         const FeatureConfig& config,
                                         const FeatureIndex& index) {
  SequenceInstance instance;
  instance.features.reserve(utt.tokens.size());
  for (std::size_t pos = 0; pos < utt.tokens.size(); ++pos) {
    std::vector<int> ids;
    for (const std::string& name : token_features(utt, pos, config)) {
      int id = index.id_of(name);
      if (id >= 0) ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    instance.features.push_back(std::move(ids));
  }
  return instance;
}

}  // namespace cmx

#endif  // CMX_CRF_MODEL_HPP_
