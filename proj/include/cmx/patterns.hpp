// patterns.hpp
// Token-shape classification for social-media text: URLs, emails, numbers,
// punctuation runs, emoticons, @ mentions, # hashtags.

#ifndef CMX_PATTERNS_HPP_
#define CMX_PATTERNS_HPP_

#include <cctype>
#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "cmx/error.hpp"

namespace cmx {

struct PatternFlags {
  bool is_url = false;
  bool is_email = false;
  bool is_number = false;
  bool is_punct = false;
  bool is_emoticon = false;
  bool is_mention = false;
  bool is_hashtag = false;

  bool any() const {
    return is_url || is_email || is_number || is_punct || is_emoticon ||
           is_mention || is_hashtag;
  }
};

namespace detail {

inline bool is_word_char(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return std::isalnum(u) != 0 || c == '_';
}

// Splits a UTF-8 string into code-point units. Malformed bytes become
// single-byte units rather than errors.
inline std::vector<std::string_view> utf8_units(std::string_view s) {
  std::vector<std::string_view> units;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char b = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    if ((b & 0xE0) == 0xC0) len = 2;
    else if ((b & 0xF0) == 0xE0) len = 3;
    else if ((b & 0xF8) == 0xF0) len = 4;
    if (len > s.size() - i) len = 1;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) {
        len = 1;
        break;
      }
    }
    units.push_back(s.substr(i, len));
    i += len;
  }
  return units;
}

// Decodes one code-point unit; 0xFFFD for malformed input.
inline std::uint32_t utf8_codepoint(std::string_view unit) {
  if (unit.empty()) return 0xFFFD;
  unsigned char b0 = static_cast<unsigned char>(unit[0]);
  if (b0 < 0x80) return b0;
  std::uint32_t cp = 0;
  std::size_t expect = 0;
  if ((b0 & 0xE0) == 0xC0) { cp = b0 & 0x1F; expect = 2; }
  else if ((b0 & 0xF0) == 0xE0) { cp = b0 & 0x0F; expect = 3; }
  else if ((b0 & 0xF8) == 0xF0) { cp = b0 & 0x07; expect = 4; }
  else return 0xFFFD;
  if (unit.size() != expect) return 0xFFFD;
  for (std::size_t k = 1; k < expect; ++k) {
    cp = (cp << 6) | (static_cast<unsigned char>(unit[k]) & 0x3F);
  }
  return cp;
}

inline bool is_emoji_codepoint(std::uint32_t cp) {
  return (cp >= 0x1F000 && cp <= 0x1FAFF) ||  // emoji, pictographs, symbols
         (cp >= 0x2600 && cp <= 0x27BF) ||    // misc symbols, dingbats
         (cp >= 0x2B00 && cp <= 0x2BFF) ||    // misc symbols and arrows
         cp == 0xFE0F || cp == 0x200D;        // variation selector-16, ZWJ
}

// Symbol-ish code points that should not count as letters when deciding
// whether a form is a pure punctuation run.
inline bool is_symbolic_codepoint(std::uint32_t cp) {
  if (cp < 0x80) {
    return std::isalnum(static_cast<unsigned char>(cp)) == 0 &&
           std::isspace(static_cast<unsigned char>(cp)) == 0;
  }
  return (cp >= 0x2000 && cp <= 0x206F) ||  // general punctuation
         (cp >= 0x20A0 && cp <= 0x20CF) ||  // currency symbols
         (cp >= 0x2190 && cp <= 0x2BFF) ||  // arrows, math, misc symbols
         (cp >= 0x2E00 && cp <= 0x2E7F) ||  // supplemental punctuation
         (cp >= 0x3000 && cp <= 0x303F) ||  // CJK punctuation
         (cp >= 0xFE30 && cp <= 0xFE4F) ||  // vertical/compat forms
         is_emoji_codepoint(cp);
}

inline bool is_space_codepoint(std::uint32_t cp) {
  return cp < 0x80 && std::isspace(static_cast<unsigned char>(cp)) != 0;
}

inline const std::unordered_set<std::string>& default_emoticons() {
  static const std::unordered_set<std::string> kLexicon = {
      ":)",  ":(",  ":-)", ":-(", ":D",  ":-D", ";)",  ";-)", ":P",  ":-P",
      ":p",  ":-p", "<3",  "</3", ":o",  ":O",  ":-O", ":-o", ":|",  ":-|",
      ":/",  ":-/", ":\\", ":*",  ":-*", ";P",  ";D",  "=)",  "=(",  "=D",
      "xD",  "XD",  "xd",  ":'(", ":')", "^_^", "^^",  "-_-", "o.O", "O.o",
      ":3",  "B)",  "8)",  "D:",  ">:(",
  };
  return kLexicon;
}

}  // namespace detail

// Classifier with a replaceable emoticon lexicon. Unicode emoji are
// recognized by code-point block membership regardless of the lexicon.
class PatternClassifier {
 public:
  PatternClassifier() : emoticons_(detail::default_emoticons()) {}
  explicit PatternClassifier(std::unordered_set<std::string> lexicon)
      : emoticons_(std::move(lexicon)) {}

  // One emoticon per line; blank lines and lines starting with '#' skipped.
  static PatternClassifier from_lexicon_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open emoticon lexicon: " + path);
    std::unordered_set<std::string> lexicon;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      lexicon.insert(line);
    }
    return PatternClassifier(std::move(lexicon));
  }

  PatternFlags classify(std::string_view form) const {
    PatternFlags flags;
    if (form.empty()) return flags;

    flags.is_url = form.starts_with("http://") || form.starts_with("https://") ||
                   form.starts_with("www.");

    // Exactly one '@', non-empty local part, '.' somewhere in the domain.
    std::size_t at = form.find('@');
    if (at != std::string_view::npos && at > 0 &&
        form.find('@', at + 1) == std::string_view::npos) {
      flags.is_email = form.substr(at + 1).find('.') != std::string_view::npos;
    }

    flags.is_number = match_number(form);
    flags.is_emoticon = match_emoticon(form);
    flags.is_mention = form[0] == '@' && all_word_chars(form.substr(1));
    flags.is_hashtag = form[0] == '#' && all_word_chars(form.substr(1));

    // Pure symbol run, and nothing more specific matched.
    if (!flags.any()) {
      bool all_symbolic = true;
      for (std::string_view unit : detail::utf8_units(form)) {
        std::uint32_t cp = detail::utf8_codepoint(unit);
        if (!detail::is_symbolic_codepoint(cp) || detail::is_space_codepoint(cp)) {
          all_symbolic = false;
          break;
        }
      }
      flags.is_punct = all_symbolic;
    }
    return flags;
  }

 private:
  static bool all_word_chars(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (!detail::is_word_char(c)) return false;
    }
    return true;
  }

  // Optional sign, digits, optional single '.' with digits; ',' separators
  // removed first.
  static bool match_number(std::string_view form) {
    std::string s;
    s.reserve(form.size());
    for (char c : form) {
      if (c != ',') s.push_back(c);
    }
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      ++i;
      ++digits;
    }
    if (digits == 0) return false;
    if (i == s.size()) return true;
    if (s[i] != '.') return false;
    ++i;
    std::size_t frac = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      ++i;
      ++frac;
    }
    return frac > 0 && i == s.size();
  }

  bool match_emoticon(std::string_view form) const {
    if (emoticons_.count(std::string(form)) > 0) return true;
    auto units = detail::utf8_units(form);
    bool saw_emoji = false;
    for (std::string_view unit : units) {
      std::uint32_t cp = detail::utf8_codepoint(unit);
      if (!detail::is_emoji_codepoint(cp)) return false;
      saw_emoji = true;
    }
    return saw_emoji;
  }

  std::unordered_set<std::string> emoticons_;
};

// Classification with the shipped default lexicon.
inline PatternFlags classify_pattern(std::string_view form) {
  static const PatternClassifier kDefault;
  return kDefault.classify(form);
}

}  // namespace cmx

#endif  // CMX_PATTERNS_HPP_
