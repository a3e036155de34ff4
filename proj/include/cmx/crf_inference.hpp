// crf_inference.hpp
// Exact inference on the linear-chain lattice: sequence scoring, the log
// partition function, forward-backward posterior marginals, and Viterbi
// decoding with deterministic tie-breaking.
//
// All recursions run in log space. A Lattice holds per-position state
// scores by value and views the transition/boundary weights, so the same
// code serves both the sparse model and the dense training weights.

#ifndef CMX_CRF_INFERENCE_HPP_
#define CMX_CRF_INFERENCE_HPP_

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "cmx/corpus.hpp"
#include "cmx/crf_model.hpp"
#include "cmx/error.hpp"

namespace cmx {

struct Lattice {
  int len = 0;
  int num_labels = 0;
  std::vector<double> state;          // len * L, [t * L + y]
  std::span<const double> trans;      // L * L, [from * L + to]
  std::span<const double> bos;        // L
  std::span<const double> eos;        // L

  double state_at(int t, int y) const {
    return state[static_cast<std::size_t>(t) * num_labels + y];
  }
  double trans_at(int from, int to) const {
    return trans[static_cast<std::size_t>(from) * num_labels + to];
  }
};

namespace detail {

inline double log_sum_exp(std::span<const double> values) {
  double max = -std::numeric_limits<double>::infinity();
  for (double v : values) max = std::max(max, v);
  if (!std::isfinite(max)) return max;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - max);
  return max + std::log(sum);
}

}  // namespace detail

// The lattice does not own trans/bos/eos: it must not outlive `model`.
inline Lattice make_lattice(const CrfModel& model, const SequenceInstance& instance) {
  if (instance.size() == 0) throw Error("empty instance");
  Lattice lattice;
  lattice.len = static_cast<int>(instance.size());
  lattice.num_labels = model.num_labels();
  lattice.state.assign(static_cast<std::size_t>(lattice.len) * lattice.num_labels, 0.0);
  for (int t = 0; t < lattice.len; ++t) {
    double* row = lattice.state.data() + static_cast<std::size_t>(t) * lattice.num_labels;
    for (int f : instance.features[static_cast<std::size_t>(t)]) {
      for (const auto& [label, weight] : model.state_weights[static_cast<std::size_t>(f)]) {
        row[label] += weight;
      }
    }
  }
  lattice.trans = model.trans;
  lattice.bos = model.bos;
  lattice.eos = model.eos;
  return lattice;
}

// Unnormalized log-potential of one labeling: per-position state scores for
// the chosen labels, plus bos, adjacent-label transitions, and eos.
inline double score_labels(const Lattice& lattice, std::span<const int> labels) {
  if (static_cast<int>(labels.size()) != lattice.len) {
    throw Error("label sequence length does not match instance length");
  }
  double score = lattice.bos[static_cast<std::size_t>(labels[0])] + lattice.state_at(0, labels[0]);
  for (int t = 1; t < lattice.len; ++t) {
    score += lattice.trans_at(labels[static_cast<std::size_t>(t) - 1], labels[static_cast<std::size_t>(t)]) +
             lattice.state_at(t, labels[static_cast<std::size_t>(t)]);
  }
  score += lattice.eos[static_cast<std::size_t>(labels[static_cast<std::size_t>(lattice.len) - 1])];
  return score;
}

namespace detail {

// alpha[t][y] = log sum over prefixes ending in y at t (state t included).
inline std::vector<double> forward_scores(const Lattice& lat) {
  const int L = lat.num_labels;
  std::vector<double> alpha(static_cast<std::size_t>(lat.len) * L);
  std::vector<double> scratch(static_cast<std::size_t>(L));
  for (int y = 0; y < L; ++y) alpha[static_cast<std::size_t>(y)] = lat.bos[static_cast<std::size_t>(y)] + lat.state_at(0, y);
  for (int t = 1; t < lat.len; ++t) {
    const double* prev = alpha.data() + static_cast<std::size_t>(t - 1) * L;
    double* cur = alpha.data() + static_cast<std::size_t>(t) * L;
    for (int y = 0; y < L; ++y) {
      for (int p = 0; p < L; ++p) scratch[static_cast<std::size_t>(p)] = prev[p] + lat.trans_at(p, y);
      cur[y] = log_sum_exp(scratch) + lat.state_at(t, y);
    }
  }
  return alpha;
}

// beta[t][y] = log sum over suffix completions given label y at t (state t
// excluded, eos included).
inline std::vector<double> backward_scores(const Lattice& lat) {
  const int L = lat.num_labels;
  std::vector<double> beta(static_cast<std::size_t>(lat.len) * L);
  std::vector<double> scratch(static_cast<std::size_t>(L));
  for (int y = 0; y < L; ++y) {
    beta[static_cast<std::size_t>(lat.len - 1) * L + y] = lat.eos[static_cast<std::size_t>(y)];
  }
  for (int t = lat.len - 2; t >= 0; --t) {
    const double* next = beta.data() + static_cast<std::size_t>(t + 1) * L;
    double* cur = beta.data() + static_cast<std::size_t>(t) * L;
    for (int y = 0; y < L; ++y) {
      for (int n = 0; n < L; ++n) {
        scratch[static_cast<std::size_t>(n)] = lat.trans_at(y, n) + lat.state_at(t + 1, n) + next[n];
      }
      cur[y] = log_sum_exp(scratch);
    }
  }
  return beta;
}

}  // namespace detail

// log Z(x): forward recursion over the lattice.
inline double log_partition(const Lattice& lattice) {
  auto alpha = detail::forward_scores(lattice);
  const int L = lattice.num_labels;
  std::vector<double> final_scores(static_cast<std::size_t>(L));
  for (int y = 0; y < L; ++y) {
    final_scores[static_cast<std::size_t>(y)] =
        alpha[static_cast<std::size_t>(lattice.len - 1) * L + y] + lattice.eos[static_cast<std::size_t>(y)];
  }
  return detail::log_sum_exp(final_scores);
}

struct Marginals {
  int len = 0;
  int num_labels = 0;
  std::vector<double> node;  // len * L position posteriors
  std::vector<double> edge;  // (len-1) * L * L adjacent-pair posteriors
  double log_z_forward = 0.0;
  double log_z_backward = 0.0;

  double node_at(int t, int y) const {
    return node[static_cast<std::size_t>(t) * num_labels + y];
  }
  double edge_at(int t, int from, int to) const {
    return edge[(static_cast<std::size_t>(t) * num_labels + from) * num_labels + to];
  }
};

inline Marginals posterior_marginals(const Lattice& lattice) {
  const int L = lattice.num_labels;
  const int T = lattice.len;
  auto alpha = detail::forward_scores(lattice);
  auto beta = detail::backward_scores(lattice);

  Marginals m;
  m.len = T;
  m.num_labels = L;

  std::vector<double> final_scores(static_cast<std::size_t>(L));
  for (int y = 0; y < L; ++y) {
    final_scores[static_cast<std::size_t>(y)] = alpha[static_cast<std::size_t>(T - 1) * L + y] + lattice.eos[static_cast<std::size_t>(y)];
  }
  m.log_z_forward = detail::log_sum_exp(final_scores);
  for (int y = 0; y < L; ++y) {
    final_scores[static_cast<std::size_t>(y)] = lattice.bos[static_cast<std::size_t>(y)] + lattice.state_at(0, y) + beta[static_cast<std::size_t>(y)];
  }
  m.log_z_backward = detail::log_sum_exp(final_scores);

  m.node.resize(static_cast<std::size_t>(T) * L);
  for (int t = 0; t < T; ++t) {
    for (int y = 0; y < L; ++y) {
      m.node[static_cast<std::size_t>(t) * L + y] =
          std::exp(alpha[static_cast<std::size_t>(t) * L + y] + beta[static_cast<std::size_t>(t) * L + y] - m.log_z_forward);
    }
  }
  if (T > 1) {
    m.edge.resize(static_cast<std::size_t>(T - 1) * L * L);
    for (int t = 0; t + 1 < T; ++t) {
      for (int a = 0; a < L; ++a) {
        for (int b = 0; b < L; ++b) {
          m.edge[(static_cast<std::size_t>(t) * L + a) * L + b] =
              std::exp(alpha[static_cast<std::size_t>(t) * L + a] + lattice.trans_at(a, b) +
                       lattice.state_at(t + 1, b) + beta[static_cast<std::size_t>(t + 1) * L + b] -
                       m.log_z_forward);
        }
      }
    }
  }
  return m;
}

struct ViterbiResult {
  std::vector<int> labels;
  double score = 0.0;
};

// Maximum-score labeling. Among ties the lexicographically smallest
// label-id sequence is returned: a backward max recursion computes the best
// completion score per (position, label), then labels are chosen greedily
// from the front, breaking each choice toward the lower label id.
inline ViterbiResult viterbi(const Lattice& lattice) {
  const int L = lattice.num_labels;
  const int T = lattice.len;

  // best[t][y] = max score of the suffix t..T-1 given label y at t
  // (state t included, eos included).
  std::vector<double> best(static_cast<std::size_t>(T) * L);
  for (int y = 0; y < L; ++y) {
    best[static_cast<std::size_t>(T - 1) * L + y] = lattice.state_at(T - 1, y) + lattice.eos[static_cast<std::size_t>(y)];
  }
  for (int t = T - 2; t >= 0; --t) {
    const double* next = best.data() + static_cast<std::size_t>(t + 1) * L;
    double* cur = best.data() + static_cast<std::size_t>(t) * L;
    for (int y = 0; y < L; ++y) {
      double top = -std::numeric_limits<double>::infinity();
      for (int n = 0; n < L; ++n) top = std::max(top, lattice.trans_at(y, n) + next[n]);
      cur[y] = lattice.state_at(t, y) + top;
    }
  }

  ViterbiResult result;
  result.labels.resize(static_cast<std::size_t>(T));
  double top = -std::numeric_limits<double>::infinity();
  int pick = 0;
  for (int y = 0; y < L; ++y) {
    double candidate = lattice.bos[static_cast<std::size_t>(y)] + best[static_cast<std::size_t>(y)];
    if (candidate > top) {
      top = candidate;
      pick = y;
    }
  }
  result.labels[0] = pick;
  for (int t = 1; t < T; ++t) {
    const int prev = result.labels[static_cast<std::size_t>(t) - 1];
    const double* next = best.data() + static_cast<std::size_t>(t) * L;
    top = -std::numeric_limits<double>::infinity();
    pick = 0;
    for (int y = 0; y < L; ++y) {
      double candidate = lattice.trans_at(prev, y) + next[y];
      if (candidate > top) {
        top = candidate;
        pick = y;
      }
    }
    result.labels[static_cast<std::size_t>(t)] = pick;
  }
  result.score = score_labels(lattice, result.labels);
  return result;
}

// ---------------------------------------------------------------------------
// Model-level entry points

inline double score_sequence(const CrfModel& model, const SequenceInstance& instance,
                             std::span<const int> labels) {
  return score_labels(make_lattice(model, instance), labels);
}

inline double log_partition(const CrfModel& model, const SequenceInstance& instance) {
  return log_partition(make_lattice(model, instance));
}

inline Marginals posterior_marginals(const CrfModel& model, const SequenceInstance& instance) {
  return posterior_marginals(make_lattice(model, instance));
}

inline ViterbiResult viterbi_decode(const CrfModel& model, const SequenceInstance& instance) {
  return viterbi(make_lattice(model, instance));
}

// Decodes every utterance and fills in predicted pos labels; forms, tags
// and meta pass through unchanged.
inline Corpus tag_corpus(const CrfModel& model, const Corpus& corpus) {
  Corpus tagged = corpus;
  for (Utterance& utt : tagged.utterances) {
    SequenceInstance instance = encode_utterance(utt, model.config, model.features);
    ViterbiResult decoded = viterbi(make_lattice(model, instance));
    for (std::size_t i = 0; i < utt.tokens.size(); ++i) {
      utt.tokens[i].pos = model.labels[static_cast<std::size_t>(decoded.labels[i])];
    }
  }
  return tagged;
}

}  // namespace cmx

#endif  // CMX_CRF_INFERENCE_HPP_
