#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stablab {

/// One letter x_g^k of a group word. `exponent` is never zero.
struct Letter {
  std::size_t generator = 0;
  int exponent = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A group word exactly as written: no implicit free reduction.
struct Word {
  std::vector<Letter> letters;

  bool empty() const noexcept { return letters.empty(); }
  std::size_t size() const noexcept { return letters.size(); }

  friend bool operator==(const Word&, const Word&) = default;
};

/// Generators plus relators. Relators reference generators by index.
struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
  std::optional<std::string> name;

  /// Index of a generator by name, or nullopt.
  std::optional<std::size_t> find(std::string_view generator) const;
};

/// True iff `name` is a letter followed by letters, digits or underscores.
bool is_valid_generator_name(std::string_view name) noexcept;

/// Parses a word such as "a b^2 a^-1 b^-3" or "[a,b] c". Commutator
/// shorthand [u,v] expands to u v u^-1 v^-1. Throws ParseError on unknown
/// generators, zero exponents and malformed syntax.
Word parse_word(std::string_view text, std::span<const std::string> generators);

/// Inverse of parse_word: space-separated terms, "^k" only when k != 1.
/// The empty word serializes to "e".
std::string to_string(const Word& w, std::span<const std::string> generators);

/// Parses the presentation file format:
///   gens: a b
///   rel: a b a^-1 b^-1   # comment
Presentation parse_presentation(std::string_view text);

std::string to_string(const Presentation& p);

/// Sum of the exponents of generator `g` over the word as written.
long exponent_sum(const Word& w, std::size_t g, std::size_t generator_count);

/// True iff every generator has exponent sum zero.
bool is_homogeneous(const Word& w);

/// L(R) = sum of |exponent| over the word as written. Throws on the empty word.
long relator_length(const Word& w);

Word invert(const Word& w);

/// Merges adjacent letters with the same generator and drops zero exponents
/// until no further change is possible.
Word free_reduce(const Word& w);

Word concat(const Word& lhs, const Word& rhs);

/// u v u^-1 v^-1 for single generators u, v.
Word commutator(std::size_t u, std::size_t v);

/// Highest generator index used plus one (0 for the empty word).
std::size_t generator_span(const Word& w) noexcept;

}  // namespace stablab
