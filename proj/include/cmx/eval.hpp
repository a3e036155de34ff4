// eval.hpp
// Scoring of predictions against gold corpora: per-tag precision/recall/F1
// with supports, support-weighted F1, token accuracy, and the Table-style
// result matrix over (language pair, platform-or-granularity) cells.

#ifndef CMX_EVAL_HPP_
#define CMX_EVAL_HPP_

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cmx/corpus.hpp"
#include "cmx/error.hpp"

namespace cmx {

struct TagScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;  // gold token count
};

struct EvalReport {
  std::map<std::string, TagScore> per_tag;
  double weighted_f1 = 0.0;
  double accuracy = 0.0;
  std::uint64_t token_count = 0;
};

// Requires aligned corpora: same utterance count, same per-utterance
// lengths, same token forms, pos present on both sides. Zero-denominator
// precision/recall/F1 are 0 so the report is total. Weighted sums are
// accumulated in extended precision.
inline EvalReport evaluate(const Corpus& gold, const Corpus& pred) {
  if (gold.utterances.empty()) throw Error("empty corpus");
  if (gold.utterances.size() != pred.utterances.size()) {
    throw Error("corpora differ in utterance count (" +
                std::to_string(gold.utterances.size()) + " vs " +
                std::to_string(pred.utterances.size()) + ")");
  }

  struct Counts {
    std::uint64_t tp = 0, fp = 0, fn = 0;
  };
  std::map<std::string, Counts> counts;
  std::uint64_t total = 0;
  std::uint64_t correct = 0;

  for (std::size_t u = 0; u < gold.utterances.size(); ++u) {
    const Utterance& gu = gold.utterances[u];
    const Utterance& pu = pred.utterances[u];
    if (gu.tokens.size() != pu.tokens.size()) {
      throw Error("utterance " + std::to_string(u + 1) + ": token counts differ (" +
                  std::to_string(gu.tokens.size()) + " vs " +
                  std::to_string(pu.tokens.size()) + ")");
    }
    for (std::size_t t = 0; t < gu.tokens.size(); ++t) {
      if (gu.tokens[t].form != pu.tokens[t].form) {
        throw Error("utterance " + std::to_string(u + 1) + ", position " +
                    std::to_string(t + 1) + ": token forms differ ('" +
                    gu.tokens[t].form + "' vs '" + pu.tokens[t].form + "')");
      }
      if (!gu.tokens[t].pos.has_value() || !pu.tokens[t].pos.has_value()) {
        throw Error("utterance " + std::to_string(u + 1) + ", position " +
                    std::to_string(t + 1) + ": missing pos label");
      }
      const std::string& g = *gu.tokens[t].pos;
      const std::string& p = *pu.tokens[t].pos;
      ++total;
      if (g == p) {
        ++correct;
        ++counts[g].tp;
      } else {
        ++counts[g].fn;
        ++counts[p].fp;
      }
    }
  }

  EvalReport report;
  report.token_count = total;
  report.accuracy = static_cast<double>(correct) / static_cast<double>(total);
  long double weighted_sum = 0.0L;
  long double support_sum = 0.0L;
  for (const auto& [tag, c] : counts) {
    TagScore score;
    score.support = c.tp + c.fn;
    score.precision = (c.tp + c.fp) > 0
                          ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp)
                          : 0.0;
    score.recall = (c.tp + c.fn) > 0
                       ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn)
                       : 0.0;
    score.f1 = (score.precision + score.recall) > 0.0
                   ? 2.0 * score.precision * score.recall / (score.precision + score.recall)
                   : 0.0;
    weighted_sum += static_cast<long double>(score.support) * score.f1;
    support_sum += static_cast<long double>(score.support);
    report.per_tag.emplace(tag, score);
  }
  report.weighted_f1 =
      support_sum > 0.0L ? static_cast<double>(weighted_sum / support_sum) : 0.0;
  return report;
}

// ---------------------------------------------------------------------------
// Result matrix (language pair rows x platform/granularity columns)

enum class MatrixAxis : std::uint8_t { kPlatform, kGranularity };

inline std::string_view to_string(MatrixAxis axis) {
  return axis == MatrixAxis::kPlatform ? "platform" : "granularity";
}

// Cell values are 100 * weighted F1, stored unrounded; the 2-decimal
// rounding happens in format_matrix so `overall` (mean of populated cells)
// is computed before rounding.
struct ResultMatrix {
  MatrixAxis axis = MatrixAxis::kPlatform;
  std::vector<std::string> row_keys;  // language pairs, sorted
  std::vector<std::string> col_keys;  // axis values, sorted
  std::vector<std::vector<std::optional<double>>> cells;
  double overall = 0.0;
};

inline ResultMatrix render_matrix(
    const std::map<std::pair<std::string, std::string>, EvalReport>& reports,
    MatrixAxis axis) {
  if (reports.empty()) throw Error("no reports to render");
  std::set<std::string> rows, cols;
  for (const auto& [key, report] : reports) {
    rows.insert(key.first);
    cols.insert(key.second);
  }
  ResultMatrix matrix;
  matrix.axis = axis;
  matrix.row_keys.assign(rows.begin(), rows.end());
  matrix.col_keys.assign(cols.begin(), cols.end());
  matrix.cells.assign(matrix.row_keys.size(),
                      std::vector<std::optional<double>>(matrix.col_keys.size()));
  long double sum = 0.0L;
  std::size_t populated = 0;
  for (std::size_t r = 0; r < matrix.row_keys.size(); ++r) {
    for (std::size_t c = 0; c < matrix.col_keys.size(); ++c) {
      auto it = reports.find({matrix.row_keys[r], matrix.col_keys[c]});
      if (it == reports.end()) continue;
      const double cell = 100.0 * it->second.weighted_f1;
      matrix.cells[r][c] = cell;
      sum += cell;
      ++populated;
    }
  }
  matrix.overall = static_cast<double>(sum / static_cast<long double>(populated));
  return matrix;
}

// Plain-text table mirroring the published layout; cells at 2 decimals.
inline std::string format_matrix(const ResultMatrix& matrix) {
  auto fmt = [](double v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << v;
    return s.str();
  };
  std::size_t label_width = std::string("langpair").size();
  for (const auto& row : matrix.row_keys) label_width = std::max(label_width, row.size());
  std::vector<std::size_t> col_widths;
  for (std::size_t c = 0; c < matrix.col_keys.size(); ++c) {
    std::size_t w = matrix.col_keys[c].size();
    for (std::size_t r = 0; r < matrix.row_keys.size(); ++r) {
      if (matrix.cells[r][c].has_value()) w = std::max(w, fmt(*matrix.cells[r][c]).size());
    }
    col_widths.push_back(w);
  }

  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(label_width)) << "langpair";
  for (std::size_t c = 0; c < matrix.col_keys.size(); ++c) {
    out << "  " << std::setw(static_cast<int>(col_widths[c])) << matrix.col_keys[c];
  }
  out << "\n";
  for (std::size_t r = 0; r < matrix.row_keys.size(); ++r) {
    out << std::setw(static_cast<int>(label_width)) << matrix.row_keys[r];
    for (std::size_t c = 0; c < matrix.col_keys.size(); ++c) {
      out << "  " << std::setw(static_cast<int>(col_widths[c]))
          << (matrix.cells[r][c].has_value() ? fmt(*matrix.cells[r][c]) : "-");
    }
    out << "\n";
  }
  out << "overall " << fmt(matrix.overall) << "\n";
  return out.str();
}

}  // namespace cmx

#endif  // CMX_EVAL_HPP_
