// corpus.hpp
// Annotated-token data model and the tab-separated corpus interchange format.
//
// One token per line: FORM<TAB>LANG[<TAB>POS]. Utterances are blank-line
// separated blocks. `# key = value` comment lines inside a block populate
// that utterance's meta map; a standalone comment-only block carries
// corpus-level meta. UTF-8, LF line endings.

#ifndef CMX_CORPUS_HPP_
#define CMX_CORPUS_HPP_

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cmx/error.hpp"
#include "cmx/rng.hpp"

namespace cmx {

// ---------------------------------------------------------------------------
// Language tags

enum class LanguageTag : std::uint8_t {
  kEn,
  kHi,
  kBn,
  kTe,
  kUniv,
  kMixed,
  kAcro,
  kNe,
  kUndef,
};

// en/hi/bn/te carry a language; the rest are language-independent.
inline bool is_language_bearing(LanguageTag tag) {
  return tag == LanguageTag::kEn || tag == LanguageTag::kHi ||
         tag == LanguageTag::kBn || tag == LanguageTag::kTe;
}

inline std::string_view to_string(LanguageTag tag) {
  switch (tag) {
    case LanguageTag::kEn: return "en";
    case LanguageTag::kHi: return "hi";
    case LanguageTag::kBn: return "bn";
    case LanguageTag::kTe: return "te";
    case LanguageTag::kUniv: return "univ";
    case LanguageTag::kMixed: return "mixed";
    case LanguageTag::kAcro: return "acro";
    case LanguageTag::kNe: return "ne";
    case LanguageTag::kUndef: return "undef";
  }
  return "undef";
}

inline std::optional<LanguageTag> language_tag_from(std::string_view s) {
  if (s == "en") return LanguageTag::kEn;
  if (s == "hi") return LanguageTag::kHi;
  if (s == "bn") return LanguageTag::kBn;
  if (s == "te") return LanguageTag::kTe;
  if (s == "univ") return LanguageTag::kUniv;
  if (s == "mixed") return LanguageTag::kMixed;
  if (s == "acro") return LanguageTag::kAcro;
  if (s == "ne") return LanguageTag::kNe;
  if (s == "undef") return LanguageTag::kUndef;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Tagset modes

enum class TagsetMode : std::uint8_t { kCoarse, kFine, kOpen };

// The 12-label universal tagset enforced in coarse mode.
inline const std::set<std::string>& universal_tagset() {
  static const std::set<std::string> kTags = {
      "NOUN", "VERB", "ADJ",  "ADV", "PRON", "DET",
      "ADP",  "NUM",  "CONJ", "PRT", "PUNCT", "X"};
  return kTags;
}

inline std::string_view to_string(TagsetMode mode) {
  switch (mode) {
    case TagsetMode::kCoarse: return "coarse";
    case TagsetMode::kFine: return "fine";
    case TagsetMode::kOpen: return "open";
  }
  return "open";
}

inline std::optional<TagsetMode> tagset_mode_from(std::string_view s) {
  if (s == "coarse") return TagsetMode::kCoarse;
  if (s == "fine") return TagsetMode::kFine;
  if (s == "open") return TagsetMode::kOpen;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Data model

struct Token {
  std::string form;                 // non-empty, no TAB/newline
  LanguageTag lang = LanguageTag::kUndef;
  std::optional<std::string> pos;   // non-empty, no whitespace when present

  bool operator==(const Token&) const = default;
};

struct Utterance {
  std::vector<Token> tokens;        // length >= 1
  std::map<std::string, std::string> meta;

  bool operator==(const Utterance&) const = default;
};

struct Corpus {
  std::vector<Utterance> utterances;
  std::map<std::string, std::string> meta;

  bool operator==(const Corpus&) const = default;
};

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline bool contains_whitespace(std::string_view s) {
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f')
      return true;
  }
  return false;
}

}  // namespace detail

// Reads a corpus from `in`. In strict mode an unknown LANG string is an
// error; otherwise it maps to undef and a diagnostic line is appended to
// `diagnostics` when given. Throws cmx::Error with a 1-based line number
// on malformed input.
inline Corpus parse_corpus(std::istream& in, TagsetMode mode, bool strict,
                           std::vector<std::string>* diagnostics = nullptr) {
  Corpus corpus;
  std::vector<Token> tokens;
  std::map<std::string, std::string> meta;
  std::size_t line_no = 0;
  std::string line;

  auto diag = [&](const std::string& msg) {
    if (diagnostics != nullptr) diagnostics->push_back(msg);
  };

  auto flush_block = [&]() {
    if (!tokens.empty()) {
      corpus.utterances.push_back(Utterance{std::move(tokens), std::move(meta)});
    } else {
      // Comment-only block: corpus-level meta.
      for (auto& [k, v] : meta) corpus.meta.insert_or_assign(k, v);
    }
    tokens.clear();
    meta.clear();
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush_block();
      continue;
    }
    if (line[0] == '#') {
      std::string_view content = std::string_view(line).substr(1);
      std::size_t eq = content.find('=');
      if (eq == std::string_view::npos) continue;  // plain comment
      std::string key(detail::trim(content.substr(0, eq)));
      std::string value(detail::trim(content.substr(eq + 1)));
      if (key.empty()) {
        diag("line " + std::to_string(line_no) + ": ignoring comment with empty metadata key");
        continue;
      }
      meta.insert_or_assign(std::move(key), std::move(value));
      continue;
    }

    auto fields = detail::split_tabs(line);
    if (fields.size() != 2 && fields.size() != 3) {
      throw Error("line " + std::to_string(line_no) +
                  ": expected 2 or 3 tab-separated fields, got " +
                  std::to_string(fields.size()));
    }
    if (fields[0].empty()) {
      throw Error("line " + std::to_string(line_no) + ": empty token form");
    }

    Token token;
    token.form = std::string(fields[0]);
    auto tag = language_tag_from(fields[1]);
    if (!tag.has_value()) {
      if (strict) {
        throw Error("line " + std::to_string(line_no) + ": unknown language tag '" +
                    std::string(fields[1]) + "'");
      }
      diag("line " + std::to_string(line_no) + ": unknown language tag '" +
           std::string(fields[1]) + "' mapped to undef");
      token.lang = LanguageTag::kUndef;
    } else {
      token.lang = *tag;
    }
    if (fields.size() == 3) {
      if (fields[2].empty()) {
        throw Error("line " + std::to_string(line_no) + ": empty pos label");
      }
      if (detail::contains_whitespace(fields[2])) {
        throw Error("line " + std::to_string(line_no) + ": pos label '" +
                    std::string(fields[2]) + "' contains whitespace");
      }
      if (mode == TagsetMode::kCoarse &&
          universal_tagset().count(std::string(fields[2])) == 0) {
        throw Error("line " + std::to_string(line_no) + ": pos label '" +
                    std::string(fields[2]) + "' outside the 12-label coarse tagset");
      }
      token.pos = std::string(fields[2]);
    }
    tokens.push_back(std::move(token));
  }
  flush_block();

  if (corpus.utterances.empty()) throw Error("no utterances in input");
  return corpus;
}

inline Corpus parse_corpus(std::string_view text, TagsetMode mode, bool strict,
                           std::vector<std::string>* diagnostics = nullptr) {
  std::istringstream in{std::string(text)};
  return parse_corpus(in, mode, strict, diagnostics);
}

// ---------------------------------------------------------------------------
// Writing

namespace detail {

inline void check_meta_writable(const std::map<std::string, std::string>& meta) {
  for (const auto& [key, value] : meta) {
    if (key.empty() || key.find('=') != std::string::npos ||
        contains_whitespace(key) ||
        value.find('\n') != std::string::npos ||
        value.find('\r') != std::string::npos ||
        value.find('\t') != std::string::npos ||
        std::string(trim(value)) != value) {
      throw Error("metadata entry '" + key + "' is unrepresentable in the corpus format");
    }
  }
}

inline void write_meta(const std::map<std::string, std::string>& meta,
                       std::ostream& out) {
  for (const auto& [key, value] : meta) out << "# " << key << " = " << value << "\n";
}

}  // namespace detail

// Emits the exact format consumed by parse_corpus; parse(write(c)) == c.
inline void write_corpus(const Corpus& corpus, std::ostream& out) {
  detail::check_meta_writable(corpus.meta);
  if (!corpus.meta.empty()) {
    detail::write_meta(corpus.meta, out);
    out << "\n";
  }
  for (const Utterance& utt : corpus.utterances) {
    if (utt.tokens.empty()) throw Error("utterance with no tokens is unrepresentable");
    detail::check_meta_writable(utt.meta);
    detail::write_meta(utt.meta, out);
    for (const Token& token : utt.tokens) {
      if (token.form.empty() || token.form.find('\t') != std::string::npos ||
          token.form.find('\n') != std::string::npos ||
          token.form.find('\r') != std::string::npos) {
        throw Error("token form '" + token.form + "' contains tab or newline (unrepresentable)");
      }
      out << token.form << '\t' << to_string(token.lang);
      if (token.pos.has_value()) {
        if (token.pos->empty() || detail::contains_whitespace(*token.pos)) {
          throw Error("pos label '" + *token.pos + "' is unrepresentable");
        }
        out << '\t' << *token.pos;
      }
      out << "\n";
    }
    out << "\n";
  }
}

inline std::string write_corpus(const Corpus& corpus) {
  std::ostringstream out;
  write_corpus(corpus, out);
  return out.str();
}

// ---------------------------------------------------------------------------
// Cross-validation splits

struct SplitPair {
  Corpus train;
  Corpus heldout;
};

// Shuffles utterances with a seed-determined permutation and partitions
// them into `folds` held-out parts whose sizes differ by at most one.
// Both parts of every pair keep the original corpus order.
inline std::vector<SplitPair> split_corpus(const Corpus& corpus, int folds,
                                           std::uint64_t seed) {
  const std::size_t n = corpus.utterances.size();
  if (folds < 2) throw Error("folds must be at least 2");
  if (static_cast<std::size_t>(folds) > n) {
    throw Error("folds (" + std::to_string(folds) + ") exceeds utterance count (" +
                std::to_string(n) + ")");
  }

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.below(i + 1)]);
  }

  // First (n % folds) folds take one extra utterance.
  std::vector<int> fold_of(n);
  const std::size_t base = n / static_cast<std::size_t>(folds);
  const std::size_t extra = n % static_cast<std::size_t>(folds);
  std::size_t cursor = 0;
  for (int f = 0; f < folds; ++f) {
    std::size_t size = base + (static_cast<std::size_t>(f) < extra ? 1 : 0);
    for (std::size_t k = 0; k < size; ++k) fold_of[perm[cursor++]] = f;
  }

  std::vector<SplitPair> pairs(static_cast<std::size_t>(folds));
  for (auto& pair : pairs) {
    pair.train.meta = corpus.meta;
    pair.heldout.meta = corpus.meta;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (int f = 0; f < folds; ++f) {
      auto& target = (fold_of[i] == f) ? pairs[f].heldout : pairs[f].train;
      target.utterances.push_back(corpus.utterances[i]);
    }
  }
  return pairs;
}

}  // namespace cmx

#endif  // CMX_CORPUS_HPP_
