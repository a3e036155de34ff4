// tuning.hpp
// Grid search over (c1, c2) with utterance-level k-fold cross-validation;
// model selection by mean support-weighted F1 on held-out folds.

#ifndef CMX_TUNING_HPP_
#define CMX_TUNING_HPP_

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <vector>

#include "cmx/corpus.hpp"
#include "cmx/crf_inference.hpp"
#include "cmx/crf_train.hpp"
#include "cmx/error.hpp"
#include "cmx/eval.hpp"

namespace cmx {

struct GridSpec {
  std::vector<double> c1_values = {0.0, 0.05, 0.5, 1.0};
  std::vector<double> c2_values = {0.01, 0.1, 1.0};
  int folds = 5;
  std::uint64_t seed = 42;
};

struct GridPoint {
  double c1 = 0.0;
  double c2 = 0.0;
  std::vector<double> fold_scores;  // weighted F1 per fold
  double mean_f1 = 0.0;
};

struct GridResult {
  std::vector<GridPoint> table;  // canonical (c1, c2) ascending order
  double best_c1 = 0.0;
  double best_c2 = 0.0;
};

namespace detail {

inline std::vector<double> checked_grid_values(std::vector<double> values,
                                               const char* which) {
  if (values.empty()) throw Error(std::string(which) + " grid is empty");
  for (double v : values) {
    if (v < 0.0) throw Error(std::string(which) + " grid contains a negative value");
  }
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(std::string(which) + " grid contains duplicate values");
  }
  return sorted;
}

}  // namespace detail

// Trains on each fold's train part and scores its held-out part, for every
// (c1, c2) pair. Deterministic given the seed; the same fold splits are
// reused across grid points. Ties break toward smaller c1, then smaller c2.
inline GridResult grid_search(const Corpus& corpus, const GridSpec& grid,
                              const TrainConfig& base) {
  const std::vector<double> c1s = detail::checked_grid_values(grid.c1_values, "c1");
  const std::vector<double> c2s = detail::checked_grid_values(grid.c2_values, "c2");
  const std::vector<SplitPair> splits = split_corpus(corpus, grid.folds, grid.seed);

  GridResult result;
  for (double c1 : c1s) {
    for (double c2 : c2s) {
      GridPoint point;
      point.c1 = c1;
      point.c2 = c2;
      long double sum = 0.0L;
      for (std::size_t fold = 0; fold < splits.size(); ++fold) {
        try {
          TrainConfig config = base;
          config.c1 = c1;
          config.c2 = c2;
          const CrfModel model = train(splits[fold].train, config);
          const Corpus predicted = tag_corpus(model, splits[fold].heldout);
          const EvalReport report = evaluate(splits[fold].heldout, predicted);
          point.fold_scores.push_back(report.weighted_f1);
          sum += report.weighted_f1;
        } catch (const Error& e) {
          std::ostringstream msg;
          msg << "(c1=" << c1 << ", c2=" << c2 << ", fold=" << fold << ") " << e.what();
          throw Error(msg.str());
        }
      }
      point.mean_f1 = static_cast<double>(sum / static_cast<long double>(splits.size()));
      result.table.push_back(std::move(point));
    }
  }

  // Rows are in ascending (c1, c2) order, so the first strict maximum is
  // the tie-rule winner.
  std::size_t best = 0;
  for (std::size_t i = 1; i < result.table.size(); ++i) {
    if (result.table[i].mean_f1 > result.table[best].mean_f1) best = i;
  }
  result.best_c1 = result.table[best].c1;
  result.best_c2 = result.table[best].c2;
  return result;
}

}  // namespace cmx

#endif  // CMX_TUNING_HPP_
