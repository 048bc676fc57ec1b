#include "spacedcl/text_indices.hpp"

#include <cctype>
#include <cmath>

namespace spacedcl {

const std::array<TextIndexKind, text_index_count> all_text_index_kinds = {
    TextIndexKind::gunning_fog,
    TextIndexKind::new_ari,
    TextIndexKind::flesch_kincaid_grade,
    TextIndexKind::linsear_write,
    TextIndexKind::coleman_liau,
    TextIndexKind::smog,
    TextIndexKind::avg_chars_per_token,
    TextIndexKind::avg_chars_per_sentence,
    TextIndexKind::avg_syllables_per_token,
    TextIndexKind::avg_syllables_per_sentence,
    TextIndexKind::sentence_length,
    TextIndexKind::token_sentence_ratio,
    TextIndexKind::token_sentence_multiply,
};

std::string_view to_string(TextIndexKind kind) noexcept {
  switch (kind) {
    case TextIndexKind::gunning_fog: return "gunning_fog";
    case TextIndexKind::new_ari: return "new_ari";
    case TextIndexKind::flesch_kincaid_grade: return "flesch_kincaid_grade";
    case TextIndexKind::linsear_write: return "linsear_write";
    case TextIndexKind::coleman_liau: return "coleman_liau";
    case TextIndexKind::smog: return "smog";
    case TextIndexKind::avg_chars_per_token: return "avg_chars_per_token";
    case TextIndexKind::avg_chars_per_sentence: return "avg_chars_per_sentence";
    case TextIndexKind::avg_syllables_per_token: return "avg_syllables_per_token";
    case TextIndexKind::avg_syllables_per_sentence: return "avg_syllables_per_sentence";
    case TextIndexKind::sentence_length: return "sentence_length";
    case TextIndexKind::token_sentence_ratio: return "token_sentence_ratio";
    case TextIndexKind::token_sentence_multiply: return "token_sentence_multiply";
  }
  return "unknown";
}

std::optional<TextIndexKind> parse_text_index_kind(std::string_view name) noexcept {
  for (auto kind : all_text_index_kinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::string_view family_of(TextIndexKind kind) noexcept {
  return static_cast<int>(kind) <= static_cast<int>(TextIndexKind::smog) ? "TraF" : "ShaF";
}

namespace {

bool is_ascii_punct(unsigned char c) { return c < 0x80 && std::ispunct(c); }
bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }
bool is_vowel(char c) {
  switch (c) {
    case 'a': case 'e': case 'i': case 'o': case 'u': case 'y': return true;
    default: return false;
  }
}

}  // namespace

std::size_t count_syllables(std::string_view token) {
  std::size_t groups = 0;
  bool in_group = false;
  char last_letter = 0;
  char before_last = 0;
  for (unsigned char raw : token) {
    if (raw >= 0x80 || !std::isalpha(raw)) {
      in_group = false;
      continue;
    }
    const char c = static_cast<char>(std::tolower(raw));
    const bool vowel = is_vowel(c);
    if (vowel && !in_group) ++groups;
    in_group = vowel;
    before_last = last_letter;
    last_letter = c;
  }
  if (last_letter == 'e' && before_last != 0 && !is_vowel(before_last) && groups > 0) --groups;
  return groups == 0 ? 1 : groups;
}

TextStats analyze_text(std::string_view text) {
  TextStats st;
  bool sentence_has_token = false;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && is_space(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= n) break;
    std::size_t j = i;
    while (j < n && !is_space(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view raw = text.substr(i, j - i);
    // A raw token ending in [.!?] closes the sentence (it is followed by
    // whitespace or the end of the text by construction).
    const bool closes = is_terminal(raw.back());
    std::size_t b = 0, e = raw.size();
    while (b < e && is_ascii_punct(static_cast<unsigned char>(raw[b]))) ++b;
    while (e > b && is_ascii_punct(static_cast<unsigned char>(raw[e - 1]))) --e;
    std::string_view token = raw.substr(b, e - b);
    if (!token.empty()) {
      ++st.tokens;
      sentence_has_token = true;
      for (unsigned char c : token) {
        if (c < 0x80 && std::isalnum(c)) ++st.characters;
      }
      const std::size_t syl = count_syllables(token);
      st.syllables += syl;
      if (syl >= 3) {
        ++st.complex_words;
        ++st.polysyllables;
        ++st.hard_words;
      } else {
        ++st.easy_words;
      }
    }
    if (closes && sentence_has_token) {
      ++st.sentences;
      sentence_has_token = false;
    }
    i = j;
  }
  if (sentence_has_token) ++st.sentences;
  return st;
}

double compute_text_index(TextIndexKind kind, const TextStats& st) {
  const double sentences = static_cast<double>(st.sentences);
  const double words = static_cast<double>(st.tokens);
  const double chars = static_cast<double>(st.characters);
  const double syllables = static_cast<double>(st.syllables);
  auto ratio = [](double num, double den) { return den == 0.0 ? 0.0 : num / den; };
  if (st.tokens == 0 || st.sentences == 0) return 0.0;
  switch (kind) {
    case TextIndexKind::gunning_fog:
      return 0.4 * (words / sentences + 100.0 * (static_cast<double>(st.complex_words) / words));
    case TextIndexKind::new_ari:
      return 4.71 * (chars / words + 0.5 * (words / sentences));
    case TextIndexKind::flesch_kincaid_grade:
      return 0.39 * (words / sentences + 11.8 * (syllables / words));
    case TextIndexKind::linsear_write: {
      const double r = (static_cast<double>(st.easy_words) + 3.0 * static_cast<double>(st.hard_words)) / sentences;
      return r > 20.0 ? r / 2.0 : r / 2.0 - 1.0;
    }
    case TextIndexKind::coleman_liau: {
      const double letters_per_100 = chars / words * 100.0;
      const double sentences_per_100 = sentences / words * 100.0;
      return 0.0588 * letters_per_100 - 0.296 * sentences_per_100 - 15.8;
    }
    case TextIndexKind::smog:
      return 1.0430 * std::sqrt(static_cast<double>(st.polysyllables) * 30.0 / sentences) + 3.1291;
    case TextIndexKind::avg_chars_per_token:
      return chars / words;
    case TextIndexKind::avg_chars_per_sentence:
      return chars / sentences;
    case TextIndexKind::avg_syllables_per_token:
      return syllables / words;
    case TextIndexKind::avg_syllables_per_sentence:
      return syllables / sentences;
    case TextIndexKind::sentence_length:
      return words / sentences;
    case TextIndexKind::token_sentence_ratio:
      return ratio(std::log(words), std::log(sentences));
    case TextIndexKind::token_sentence_multiply:
      return std::sqrt(words * sentences);
  }
  return 0.0;
}

}  // namespace spacedcl
