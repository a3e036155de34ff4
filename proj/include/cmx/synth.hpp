// synth.hpp
// Deterministic synthetic code-mixed corpora for tests and demos. Each
// token's pos label is a fixed function of its lexical class, so a tagger
// can learn the labeling exactly; the per-token language is drawn with the
// embedded-language (English) probability `mixing`.

#ifndef CMX_SYNTH_HPP_
#define CMX_SYNTH_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmx/corpus.hpp"
#include "cmx/error.hpp"
#include "cmx/rng.hpp"

namespace cmx {

namespace detail {

// Vocabularies are disjoint across (language, class) pairs, which makes the
// class recoverable from the form alone.
struct SynthVocab {
  std::span<const std::string_view> nouns, verbs, particles;
};

inline SynthVocab synth_vocab(LanguageTag lang) {
  static constexpr std::array<std::string_view, 10> kEnNouns = {
      "water", "school", "phone", "friend", "movie",
      "cricket", "market", "teacher", "office", "dinner"};
  static constexpr std::array<std::string_view, 10> kEnVerbs = {
      "go", "come", "play", "watch", "make",
      "take", "call", "work", "eat", "read"};
  static constexpr std::array<std::string_view, 10> kEnParticles = {
      "the", "and", "but", "very", "this",
      "that", "with", "for", "not", "also"};

  static constexpr std::array<std::string_view, 10> kHiNouns = {
      "paani", "ghar", "dost", "khana", "kitab",
      "sadak", "gaana", "kaam", "shaadi", "bazaar"};
  static constexpr std::array<std::string_view, 10> kHiVerbs = {
      "jaana", "karna", "dekhna", "khelna", "banana",
      "lena", "bolna", "sunna", "likhna", "padhna"};
  static constexpr std::array<std::string_view, 10> kHiParticles = {
      "aur", "lekin", "bahut", "yeh", "woh",
      "ke", "se", "nahi", "bhi", "to"};

  static constexpr std::array<std::string_view, 10> kBnNouns = {
      "jol", "bari", "bondhu", "khabar", "boi",
      "rasta", "gaan", "kaaj", "biye", "bajar"};
  static constexpr std::array<std::string_view, 10> kBnVerbs = {
      "jawa", "kora", "dekha", "khela", "banano",
      "neoya", "bola", "shona", "lekha", "pora"};
  static constexpr std::array<std::string_view, 10> kBnParticles = {
      "ar", "kintu", "khub", "ei", "oi",
      "theke", "diye", "na", "o", "tai"};

  static constexpr std::array<std::string_view, 10> kTeNouns = {
      "neellu", "illu", "sneham", "bhojanam", "pustakam",
      "daari", "paata", "pani", "pelli", "santa"};
  static constexpr std::array<std::string_view, 10> kTeVerbs = {
      "vellu", "cheyyi", "chudu", "aadu", "nerchuko",
      "teesuko", "matladu", "vinu", "rayi", "chadivi"};
  static constexpr std::array<std::string_view, 10> kTeParticles = {
      "mariyu", "kani", "chala", "idi", "adi",
      "nunchi", "tho", "kadu", "kuda", "ani"};

  switch (lang) {
    case LanguageTag::kEn: return {kEnNouns, kEnVerbs, kEnParticles};
    case LanguageTag::kHi: return {kHiNouns, kHiVerbs, kHiParticles};
    case LanguageTag::kBn: return {kBnNouns, kBnVerbs, kBnParticles};
    case LanguageTag::kTe: return {kTeNouns, kTeVerbs, kTeParticles};
    default: throw Error("no synthetic vocabulary for this language tag");
  }
}

inline constexpr std::array<std::string_view, 4> kSynthPunct = {".", ",", "!", "?"};

}  // namespace detail

// Same seed, same arguments: identical corpora. `matrix_language` must be
// one of hi/bn/te (English is the embedded language).
inline Corpus generate_synthetic_corpus(std::uint64_t seed, int num_utterances,
                                        LanguageTag matrix_language, double mixing) {
  if (num_utterances < 1) throw Error("num_utterances must be >= 1");
  if (matrix_language != LanguageTag::kHi && matrix_language != LanguageTag::kBn &&
      matrix_language != LanguageTag::kTe) {
    throw Error("matrix language must be hi, bn, or te");
  }
  if (mixing < 0.0 || mixing > 1.0) throw Error("mixing must be in [0, 1]");

  Rng rng(seed);
  Corpus corpus;
  corpus.utterances.reserve(static_cast<std::size_t>(num_utterances));
  const std::string langpair =
      std::string(to_string(matrix_language)) + "-en";

  for (int i = 0; i < num_utterances; ++i) {
    Utterance utt;
    utt.meta["id"] = std::to_string(i);
    utt.meta["langpair"] = langpair;
    utt.meta["platform"] = "synth";

    const std::size_t length = 5 + rng.below(6);  // 5..10 word tokens
    for (std::size_t k = 0; k < length; ++k) {
      const double roll = rng.unit();
      const LanguageTag lang = rng.unit() < mixing ? LanguageTag::kEn : matrix_language;
      const detail::SynthVocab vocab = detail::synth_vocab(lang);
      Token token;
      token.lang = lang;
      if (roll < 0.4) {
        token.form = vocab.nouns[rng.below(vocab.nouns.size())];
        token.pos = "NOUN";
      } else if (roll < 0.7) {
        token.form = vocab.verbs[rng.below(vocab.verbs.size())];
        token.pos = "VERB";
      } else {
        token.form = vocab.particles[rng.below(vocab.particles.size())];
        token.pos = "PRT";
      }
      utt.tokens.push_back(std::move(token));
    }
    if (rng.unit() < 0.7) {
      Token punct;
      punct.form = detail::kSynthPunct[rng.below(detail::kSynthPunct.size())];
      punct.lang = LanguageTag::kUniv;
      punct.pos = "PUNCT";
      utt.tokens.push_back(std::move(punct));
    }
    corpus.utterances.push_back(std::move(utt));
  }
  return corpus;
}

}  // namespace cmx

#endif  // CMX_SYNTH_HPP_
