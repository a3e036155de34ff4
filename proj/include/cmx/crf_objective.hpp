// crf_objective.hpp
// Smooth part of the regularized negative log-likelihood and its gradient.
//
// value    = sum over instances [log Z - score of gold] + (c2/2) * ||w||^2
// gradient = expected feature counts - empirical counts + c2 * w
//
// The L1 term is handled by the optimizer, not here. Weights are a flat
// vector: dense state block (feature-major), then transitions, bos, eos.

#ifndef CMX_CRF_OBJECTIVE_HPP_
#define CMX_CRF_OBJECTIVE_HPP_

#include <algorithm>
#include <span>
#include <vector>

#include "cmx/crf_inference.hpp"
#include "cmx/crf_model.hpp"
#include "cmx/error.hpp"

namespace cmx {

struct WeightLayout {
  int num_features = 0;
  int num_labels = 0;

  std::size_t state_size() const {
    return static_cast<std::size_t>(num_features) * num_labels;
  }
  std::size_t trans_offset() const { return state_size(); }
  std::size_t bos_offset() const {
    return trans_offset() + static_cast<std::size_t>(num_labels) * num_labels;
  }
  std::size_t eos_offset() const { return bos_offset() + num_labels; }
  std::size_t total_size() const { return eos_offset() + num_labels; }

  std::size_t state_at(int feature, int label) const {
    return static_cast<std::size_t>(feature) * num_labels + label;
  }
  std::size_t trans_at(int from, int to) const {
    return trans_offset() + static_cast<std::size_t>(from) * num_labels + to;
  }
};

// The lattice views slices of `weights`; it must not outlive them.
inline Lattice make_lattice(std::span<const double> weights, const WeightLayout& layout,
                            const SequenceInstance& instance) {
  if (instance.size() == 0) throw Error("empty instance");
  const int L = layout.num_labels;
  Lattice lattice;
  lattice.len = static_cast<int>(instance.size());
  lattice.num_labels = L;
  lattice.state.assign(static_cast<std::size_t>(lattice.len) * L, 0.0);
  for (int t = 0; t < lattice.len; ++t) {
    double* row = lattice.state.data() + static_cast<std::size_t>(t) * L;
    for (int f : instance.features[static_cast<std::size_t>(t)]) {
      const double* w = weights.data() + layout.state_at(f, 0);
      for (int y = 0; y < L; ++y) row[y] += w[y];
    }
  }
  lattice.trans = weights.subspan(layout.trans_offset(), static_cast<std::size_t>(L) * L);
  lattice.bos = weights.subspan(layout.bos_offset(), static_cast<std::size_t>(L));
  lattice.eos = weights.subspan(layout.eos_offset(), static_cast<std::size_t>(L));
  return lattice;
}

inline double objective_and_gradient(std::span<const double> weights,
                                     const WeightLayout& layout,
                                     const std::vector<SequenceInstance>& instances,
                                     double c2, std::span<double> gradient) {
  if (instances.empty()) throw Error("no training instances");
  if (weights.size() != layout.total_size() || gradient.size() != layout.total_size()) {
    throw Error("weight vector size does not match layout");
  }
  std::fill(gradient.begin(), gradient.end(), 0.0);
  const int L = layout.num_labels;
  double value = 0.0;

  for (const SequenceInstance& instance : instances) {
    const int T = static_cast<int>(instance.size());
    if (instance.gold.size() != instance.features.size() || T == 0) {
      throw Error("training instance without gold labels");
    }
    const Lattice lattice = make_lattice(weights, layout, instance);
    const Marginals marginals = posterior_marginals(lattice);
    value += marginals.log_z_forward - score_labels(lattice, instance.gold);

    for (int t = 0; t < T; ++t) {
      const double* node = marginals.node.data() + static_cast<std::size_t>(t) * L;
      const int gold = instance.gold[static_cast<std::size_t>(t)];
      for (int f : instance.features[static_cast<std::size_t>(t)]) {
        double* g = gradient.data() + layout.state_at(f, 0);
        for (int y = 0; y < L; ++y) g[y] += node[y];
        g[gold] -= 1.0;
      }
    }
    for (int t = 0; t + 1 < T; ++t) {
      const double* edge = marginals.edge.data() + static_cast<std::size_t>(t) * L * L;
      double* g = gradient.data() + layout.trans_offset();
      for (int k = 0; k < L * L; ++k) g[k] += edge[k];
      gradient[layout.trans_at(instance.gold[static_cast<std::size_t>(t)],
                               instance.gold[static_cast<std::size_t>(t) + 1])] -= 1.0;
    }
    for (int y = 0; y < L; ++y) {
      gradient[layout.bos_offset() + static_cast<std::size_t>(y)] += marginals.node_at(0, y);
      gradient[layout.eos_offset() + static_cast<std::size_t>(y)] += marginals.node_at(T - 1, y);
    }
    gradient[layout.bos_offset() + static_cast<std::size_t>(instance.gold[0])] -= 1.0;
    gradient[layout.eos_offset() + static_cast<std::size_t>(instance.gold[static_cast<std::size_t>(T) - 1])] -= 1.0;
  }

  if (c2 != 0.0) {
    double sq = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      sq += weights[i] * weights[i];
      gradient[i] += c2 * weights[i];
    }
    value += 0.5 * c2 * sq;
  }
  return value;
}

}  // namespace cmx

#endif  // CMX_CRF_OBJECTIVE_HPP_
