// cmi.hpp
// Code-Mixing Index: per-utterance mixing complexity and the four
// corpus-level statistics (CMI all, CMI mixed, mixed %, utterance count).
//
// With N tokens, u language-independent tokens and w_i per-language counts
// over {en, hi, bn, te}: CMI = 100 * (1 - max_i w_i / (N - u)) when N > u,
// else 0. Monolingual utterances therefore score 0.

#ifndef CMX_CMI_HPP_
#define CMX_CMI_HPP_

#include <array>
#include <cstddef>
#include <vector>

#include "cmx/corpus.hpp"
#include "cmx/error.hpp"

namespace cmx {

// Which tags count as language-independent (the u term). The default takes
// every non-language tag {univ, mixed, acro, ne, undef}; kUnivOnly restricts
// u to {univ} for sensitivity checks (the cited metric does not pin this
// down, see README).
enum class CmiScope : std::uint8_t { kAllNonLanguage, kUnivOnly };

inline double utterance_cmi(const Utterance& utt,
                            CmiScope scope = CmiScope::kAllNonLanguage) {
  if (utt.tokens.empty()) throw Error("utterance has no tokens");
  std::array<std::size_t, 4> lang_counts{};  // en, hi, bn, te
  std::size_t independent = 0;
  for (const Token& token : utt.tokens) {
    switch (token.lang) {
      case LanguageTag::kEn: ++lang_counts[0]; break;
      case LanguageTag::kHi: ++lang_counts[1]; break;
      case LanguageTag::kBn: ++lang_counts[2]; break;
      case LanguageTag::kTe: ++lang_counts[3]; break;
      case LanguageTag::kUniv:
        ++independent;
        break;
      default:
        if (scope == CmiScope::kAllNonLanguage) ++independent;
        break;
    }
  }
  const std::size_t denom = utt.tokens.size() - independent;
  if (denom == 0) return 0.0;
  std::size_t dominant = 0;
  for (std::size_t c : lang_counts) dominant = std::max(dominant, c);
  return 100.0 * (1.0 - static_cast<double>(dominant) / static_cast<double>(denom));
}

struct CmiReport {
  double cmi_all = 0.0;    // mean CMI over all utterances
  double cmi_mixed = 0.0;  // mean CMI over utterances with CMI > 0 (0 when none)
  double mixed_pct = 0.0;  // percentage of utterances with CMI > 0
  std::size_t num_utt = 0;
  std::vector<double> per_utterance;
};

inline CmiReport corpus_cmi_report(const Corpus& corpus,
                                   CmiScope scope = CmiScope::kAllNonLanguage) {
  if (corpus.utterances.empty()) throw Error("empty corpus");
  CmiReport report;
  report.num_utt = corpus.utterances.size();
  report.per_utterance.reserve(report.num_utt);
  double sum = 0.0;
  std::size_t mixed = 0;
  for (const Utterance& utt : corpus.utterances) {
    double cmi = utterance_cmi(utt, scope);
    report.per_utterance.push_back(cmi);
    sum += cmi;
    if (cmi > 0.0) ++mixed;
  }
  const double n = static_cast<double>(report.num_utt);
  report.cmi_all = sum / n;
  report.cmi_mixed = mixed > 0 ? sum / static_cast<double>(mixed) : 0.0;
  report.mixed_pct = 100.0 * static_cast<double>(mixed) / n;
  return report;
}

}  // namespace cmx

#endif  // CMX_CMI_HPP_
