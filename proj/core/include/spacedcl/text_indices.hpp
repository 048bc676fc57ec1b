#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace spacedcl {

/// Readability formulas (traditional) and surface statistics (shallow).
enum class TextIndexKind : std::uint8_t {
  gunning_fog,
  new_ari,
  flesch_kincaid_grade,
  linsear_write,
  coleman_liau,
  smog,
  avg_chars_per_token,
  avg_chars_per_sentence,
  avg_syllables_per_token,
  avg_syllables_per_sentence,
  sentence_length,
  token_sentence_ratio,
  token_sentence_multiply,
};

inline constexpr std::size_t text_index_count = 13;
extern const std::array<TextIndexKind, text_index_count> all_text_index_kinds;

std::string_view to_string(TextIndexKind kind) noexcept;
std::optional<TextIndexKind> parse_text_index_kind(std::string_view name) noexcept;
/// "TraF" for readability formulas, "ShaF" for shallow features.
std::string_view family_of(TextIndexKind kind) noexcept;

/// Operands of the readability formulas.
struct TextStats {
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  std::size_t characters = 0;  // ASCII letters and digits inside tokens
  std::size_t syllables = 0;
  std::size_t complex_words = 0;  // >= 3 syllables
  std::size_t polysyllables = 0;  // >= 3 syllables
  std::size_t easy_words = 0;     // <= 2 syllables
  std::size_t hard_words = 0;     // >= 3 syllables

  bool operator==(const TextStats&) const = default;
};

/// Vowel-group syllable estimate for one token: maximal runs of a/e/i/o/u/y,
/// minus one for a silent trailing 'e' after a consonant, at least 1.
std::size_t count_syllables(std::string_view token);

/// Sentences end at a run of [.!?] followed by whitespace or end of text (a
/// trailing fragment without terminal punctuation also counts). Tokens are
/// whitespace-separated with leading/trailing ASCII punctuation stripped;
/// tokens left empty are dropped.
TextStats analyze_text(std::string_view text);

/// Formula value; any zero denominator yields 0.
double compute_text_index(TextIndexKind kind, const TextStats& stats);

}  // namespace spacedcl
