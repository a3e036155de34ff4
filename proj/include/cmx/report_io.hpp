// report_io.hpp
// TSV and JSON renderings of the report types. CMI reals are rendered at 2
// decimal places (matching the published tables); eval scores at 4.

#ifndef CMX_REPORT_IO_HPP_
#define CMX_REPORT_IO_HPP_

#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cmx/cmi.hpp"
#include "cmx/eval.hpp"
#include "cmx/tuning.hpp"

namespace cmx {

namespace detail {

inline std::string fixed(double v, int places) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(places) << v;
  return out.str();
}

inline double round_to(double v, int places) {
  const double scale = std::pow(10.0, places);
  return std::round(v * scale) / scale;
}

// Shortest ostream rendering, for grid values (0.05, 0.1, ...).
inline std::string compact(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace detail

inline std::string to_tsv(const CmiReport& report) {
  std::ostringstream out;
  out << "metric\tvalue\n";
  out << "cmi_all\t" << detail::fixed(report.cmi_all, 2) << "\n";
  out << "cmi_mixed\t" << detail::fixed(report.cmi_mixed, 2) << "\n";
  out << "mixed_pct\t" << detail::fixed(report.mixed_pct, 2) << "\n";
  out << "num_utt\t" << report.num_utt << "\n";
  return out.str();
}

inline std::string to_json(const CmiReport& report) {
  nlohmann::json j;
  j["cmi_all"] = detail::round_to(report.cmi_all, 2);
  j["cmi_mixed"] = detail::round_to(report.cmi_mixed, 2);
  j["mixed_pct"] = detail::round_to(report.mixed_pct, 2);
  j["num_utt"] = report.num_utt;
  auto per_utterance = nlohmann::json::array();
  for (double v : report.per_utterance) per_utterance.push_back(detail::round_to(v, 2));
  j["per_utterance"] = std::move(per_utterance);
  return j.dump();
}

inline std::string to_tsv(const EvalReport& report) {
  std::ostringstream out;
  out << "tag\tprecision\trecall\tf1\tsupport\n";
  for (const auto& [tag, score] : report.per_tag) {
    out << tag << '\t' << detail::fixed(score.precision, 4) << '\t'
        << detail::fixed(score.recall, 4) << '\t' << detail::fixed(score.f1, 4) << '\t'
        << score.support << "\n";
  }
  out << "weighted_f1\t" << detail::fixed(report.weighted_f1, 4) << "\n";
  out << "accuracy\t" << detail::fixed(report.accuracy, 4) << "\n";
  return out.str();
}

inline std::string to_json(const EvalReport& report) {
  nlohmann::json j;
  auto per_tag = nlohmann::json::object();
  for (const auto& [tag, score] : report.per_tag) {
    per_tag[tag] = {{"precision", score.precision},
                    {"recall", score.recall},
                    {"f1", score.f1},
                    {"support", score.support}};
  }
  j["per_tag"] = std::move(per_tag);
  j["weighted_f1"] = report.weighted_f1;
  j["accuracy"] = report.accuracy;
  j["token_count"] = report.token_count;
  return j.dump();
}

inline std::string best_line(const GridResult& result) {
  return "best c1=" + detail::compact(result.best_c1) +
         " c2=" + detail::compact(result.best_c2);
}

inline std::string to_tsv(const GridResult& result) {
  std::ostringstream out;
  out << "c1\tc2";
  const std::size_t folds = result.table.empty() ? 0 : result.table.front().fold_scores.size();
  for (std::size_t f = 0; f < folds; ++f) out << "\tfold_" << f;
  out << "\tmean\n";
  for (const GridPoint& point : result.table) {
    out << detail::compact(point.c1) << '\t' << detail::compact(point.c2);
    for (double score : point.fold_scores) out << '\t' << detail::fixed(score, 4);
    out << '\t' << detail::fixed(point.mean_f1, 4) << "\n";
  }
  out << best_line(result) << "\n";
  return out.str();
}

inline std::string to_json(const GridResult& result) {
  nlohmann::json j;
  auto table = nlohmann::json::array();
  for (const GridPoint& point : result.table) {
    table.push_back({{"c1", point.c1},
                     {"c2", point.c2},
                     {"fold_scores", point.fold_scores},
                     {"mean_f1", point.mean_f1}});
  }
  j["table"] = std::move(table);
  j["best"] = {{"c1", result.best_c1}, {"c2", result.best_c2}};
  return j.dump();
}

}  // namespace cmx

#endif  // CMX_REPORT_IO_HPP_
