// features.hpp
// Sparse binary feature templates for tokens in context, and the interning
// index mapping feature names to dense integer ids.
//
// Per offset d in -window..+window that lands inside the utterance:
//   w[d]=<lowercased form>, isupper[d], istitle[d], hasdigit[d],
//   pat[d]=<url|email|number|punct|emoticon|mention|hashtag>, lang[d]=<tag>.
// At d=0 additionally all character n-grams (1..max_ngram code points) of
// the sentinel-wrapped lowercased form ^form$, as ng=<gram>. Plus a
// constant bias, BOS at position 0 and EOS at the last position.

#ifndef CMX_FEATURES_HPP_
#define CMX_FEATURES_HPP_

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cmx/corpus.hpp"
#include "cmx/error.hpp"
#include "cmx/patterns.hpp"

namespace cmx {

struct FeatureConfig {
  int window = 2;        // token offsets -window..+window
  int max_ngram = 3;     // character n-gram bound (code points)
  int min_count = 1;     // feature pruning threshold at index build
  bool use_lang = true;  // language-tag features on/off

  bool operator==(const FeatureConfig&) const = default;
};

namespace detail {

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Case predicates over ASCII letters of the raw form.
inline bool form_isupper(std::string_view s) {
  bool saw_alpha = false;
  for (char c : s) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isalpha(u) != 0) {
      saw_alpha = true;
      if (std::islower(u) != 0) return false;
    }
  }
  return saw_alpha;
}

inline bool form_istitle(std::string_view s) {
  if (s.empty() || std::isupper(static_cast<unsigned char>(s[0])) == 0) return false;
  for (std::size_t i = 1; i < s.size(); ++i) {
    unsigned char u = static_cast<unsigned char>(s[i]);
    if (std::isalpha(u) != 0 && std::isupper(u) != 0) return false;
  }
  return true;
}

inline bool form_hasdigit(std::string_view s) {
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) return true;
  }
  return false;
}

}  // namespace detail

inline void validate(const FeatureConfig& config) {
  if (config.window < 0) throw Error("feature window must be >= 0");
  if (config.max_ngram < 1) throw Error("max_ngram must be >= 1");
  if (config.min_count < 1) throw Error("min_count must be >= 1");
}

// Feature names for the token at `position`. The result is duplicate-free.
inline std::vector<std::string> token_features(const Utterance& utt,
                                               std::size_t position,
                                               const FeatureConfig& config) {
  validate(config);
  if (position >= utt.tokens.size()) {
    throw Error("token position " + std::to_string(position) + " out of range");
  }

  std::vector<std::string> feats;
  feats.emplace_back("bias");
  if (position == 0) feats.emplace_back("BOS");
  if (position + 1 == utt.tokens.size()) feats.emplace_back("EOS");

  for (int delta = -config.window; delta <= config.window; ++delta) {
    const auto target = static_cast<long long>(position) + delta;
    if (target < 0 || target >= static_cast<long long>(utt.tokens.size())) continue;
    const Token& token = utt.tokens[static_cast<std::size_t>(target)];
    const std::string off = "[" + std::to_string(delta) + "]";
    const std::string lower = detail::ascii_lower(token.form);

    feats.push_back("w" + off + "=" + lower);
    if (detail::form_isupper(token.form)) feats.push_back("isupper" + off);
    if (detail::form_istitle(token.form)) feats.push_back("istitle" + off);
    if (detail::form_hasdigit(token.form)) feats.push_back("hasdigit" + off);

    const PatternFlags flags = classify_pattern(token.form);
    if (flags.is_url) feats.push_back("pat" + off + "=url");
    if (flags.is_email) feats.push_back("pat" + off + "=email");
    if (flags.is_number) feats.push_back("pat" + off + "=number");
    if (flags.is_punct) feats.push_back("pat" + off + "=punct");
    if (flags.is_emoticon) feats.push_back("pat" + off + "=emoticon");
    if (flags.is_mention) feats.push_back("pat" + off + "=mention");
    if (flags.is_hashtag) feats.push_back("pat" + off + "=hashtag");

    if (config.use_lang) {
      feats.push_back("lang" + off + "=" + std::string(to_string(token.lang)));
    }

    if (delta == 0) {
      // Sentinels make prefixes and suffixes distinguishable from interior
      // grams: "^ab" present iff the form starts with "ab".
      std::vector<std::string_view> units;
      units.emplace_back("^");
      for (std::string_view u : detail::utf8_units(lower)) units.push_back(u);
      units.emplace_back("$");
      std::unordered_set<std::string> seen;
      for (int n = 1; n <= config.max_ngram; ++n) {
        if (static_cast<std::size_t>(n) > units.size()) break;
        for (std::size_t start = 0; start + n <= units.size(); ++start) {
          std::string gram;
          for (int k = 0; k < n; ++k) gram += units[start + static_cast<std::size_t>(k)];
          if (seen.insert(gram).second) feats.push_back("ng=" + gram);
        }
      }
    }
  }
  return feats;
}

// token_features at every position; length equals utterance length.
inline std::vector<std::vector<std::string>> sequence_features(
    const Utterance& utt, const FeatureConfig& config) {
  std::vector<std::vector<std::string>> all;
  all.reserve(utt.tokens.size());
  for (std::size_t i = 0; i < utt.tokens.size(); ++i) {
    all.push_back(token_features(utt, i, config));
  }
  return all;
}

// ---------------------------------------------------------------------------
// Feature interning

// Bijective feature-name <-> dense id map with occurrence counts from the
// indexing pass. Ids are contiguous 0..F-1 in first-occurrence order.
class FeatureIndex {
 public:
  FeatureIndex() = default;

  static FeatureIndex from_names(std::vector<std::string> names,
                                 std::vector<std::uint64_t> counts = {}) {
    FeatureIndex index;
    index.names_ = std::move(names);
    index.counts_ = std::move(counts);
    index.counts_.resize(index.names_.size(), 0);
    index.ids_.reserve(index.names_.size());
    for (std::size_t i = 0; i < index.names_.size(); ++i) {
      auto [it, inserted] = index.ids_.emplace(index.names_[i], static_cast<int>(i));
      if (!inserted) throw Error("duplicate feature name '" + index.names_[i] + "'");
    }
    return index;
  }

  int size() const { return static_cast<int>(names_.size()); }

  // -1 when the feature was never indexed (or was pruned).
  int id_of(std::string_view name) const {
    auto it = ids_.find(std::string(name));
    return it == ids_.end() ? -1 : it->second;
  }

  const std::string& name_of(int id) const { return names_.at(static_cast<std::size_t>(id)); }
  std::uint64_t count_of(int id) const { return counts_.at(static_cast<std::size_t>(id)); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }

  bool operator==(const FeatureIndex& other) const {
    return names_ == other.names_ && counts_ == other.counts_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, int> ids_;
};

class FeatureIndexBuilder {
 public:
  void add(std::string_view name) {
    auto [it, inserted] = slots_.emplace(std::string(name), names_.size());
    if (inserted) {
      names_.emplace_back(name);
      counts_.push_back(0);
    }
    ++counts_[it->second];
  }

  // Retains features observed at least min_count times, ids reassigned
  // densely in first-occurrence order. Throws when nothing survives.
  FeatureIndex finish(int min_count) const {
    if (min_count < 1) throw Error("min_count must be >= 1");
    std::vector<std::string> names;
    std::vector<std::uint64_t> counts;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (counts_[i] >= static_cast<std::uint64_t>(min_count)) {
        names.push_back(names_[i]);
        counts.push_back(counts_[i]);
      }
    }
    if (names.empty()) throw Error("no features retained (min_count too high or empty input)");
    return FeatureIndex::from_names(std::move(names), std::move(counts));
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, std::size_t> slots_;
};

// Convenience over per-utterance, per-position feature-name sets.
inline FeatureIndex build_feature_index(
    const std::vector<std::vector<std::vector<std::string>>>& corpus_features,
    int min_count) {
  FeatureIndexBuilder builder;
  for (const auto& utterance : corpus_features) {
    for (const auto& position : utterance) {
      for (const auto& name : position) builder.add(name);
    }
  }
  return builder.finish(min_count);
}

}  // namespace cmx

#endif  // CMX_FEATURES_HPP_
