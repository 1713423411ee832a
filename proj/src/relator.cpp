#include "stablab/relator.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <limits>

#include "stablab/error.hpp"

namespace stablab {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

class WordParser {
 public:
  WordParser(std::string_view text, std::span<const std::string> generators)
      : text_(text), generators_(generators) {}

  Word parse() {
    Word w;
    skip_space();
    if (at_end()) throw ParseError("empty word", pos_);
    // "e" denotes the identity unless it is itself a declared generator.
    if (trim(text_) == "e" && std::find(generators_.begin(), generators_.end(), "e") == generators_.end()) {
      return w;
    }
    while (!at_end()) {
      parse_term(w);
      std::size_t before = pos_;
      skip_space();
      if (!at_end() && before == pos_) throw ParseError("expected whitespace between terms", pos_);
    }
    return w;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!at_end() && is_space(text_[pos_])) ++pos_;
  }

  void expect(char c) {
    if (peek() != c) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  std::size_t parse_ident() {
    std::size_t start = pos_;
    if (!is_ident_start(peek())) throw ParseError("expected generator name", pos_);
    while (!at_end() && is_ident_char(text_[pos_])) ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    auto it = std::find(generators_.begin(), generators_.end(), name);
    if (it == generators_.end()) {
      throw ParseError("unknown generator '" + std::string(name) + "'", start);
    }
    return static_cast<std::size_t>(it - generators_.begin());
  }

  int parse_int() {
    std::size_t start = pos_;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    bool negative = false;
    if (first != last && *first == '-') {
      negative = true;
      ++first;
    }
    if (first == last || !std::isdigit(static_cast<unsigned char>(*first))) {
      throw ParseError("expected integer exponent", pos_);
    }
    long long magnitude = 0;
    auto [ptr, ec] = std::from_chars(first, last, magnitude);
    if (ec != std::errc() || magnitude > std::numeric_limits<int>::max()) {
      throw ParseError("exponent out of range", start);
    }
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    int value = static_cast<int>(negative ? -magnitude : magnitude);
    if (value == 0) throw ParseError("zero exponent", start);
    return value;
  }

  void parse_term(Word& w) {
    if (peek() == '[') {
      ++pos_;
      skip_space();
      std::size_t u = parse_ident();
      skip_space();
      expect(',');
      skip_space();
      if (peek() == '[') throw ParseError("nested commutator shorthand is not supported", pos_);
      std::size_t v = parse_ident();
      skip_space();
      expect(']');
      if (peek() == '^') throw ParseError("exponent on commutator shorthand is not supported", pos_);
      Word c = commutator(u, v);
      w.letters.insert(w.letters.end(), c.letters.begin(), c.letters.end());
      return;
    }
    std::size_t g = parse_ident();
    int k = 1;
    if (peek() == '^') {
      ++pos_;
      k = parse_int();
    }
    w.letters.push_back({g, k});
  }

  std::string_view text_;
  std::span<const std::string> generators_;
  std::size_t pos_ = 0;
};

}  // namespace

std::optional<std::size_t> Presentation::find(std::string_view generator) const {
  auto it = std::find(generators.begin(), generators.end(), generator);
  if (it == generators.end()) return std::nullopt;
  return static_cast<std::size_t>(it - generators.begin());
}

bool is_valid_generator_name(std::string_view name) noexcept {
  if (name.empty() || !is_ident_start(name.front())) return false;
  return std::all_of(name.begin(), name.end(), is_ident_char);
}

Word parse_word(std::string_view text, std::span<const std::string> generators) {
  return WordParser(text, generators).parse();
}

std::string to_string(const Word& w, std::span<const std::string> generators) {
  if (w.empty()) return "e";
  std::string out;
  for (const Letter& l : w.letters) {
    if (!out.empty()) out += ' ';
    if (l.generator < generators.size()) {
      out += generators[l.generator];
    } else {
      out += "x" + std::to_string(l.generator);
    }
    if (l.exponent != 1) out += "^" + std::to_string(l.exponent);
  }
  return out;
}

Presentation parse_presentation(std::string_view text) {
  Presentation p;
  bool have_gens = false;
  std::size_t line_start = 0;
  std::size_t line_no = 0;
  while (line_start <= text.size()) {
    std::size_t eol = text.find('\n', line_start);
    if (eol == std::string_view::npos) eol = text.size();
    ++line_no;
    std::string_view line = text.substr(line_start, eol - line_start);
    std::size_t offset = line_start;
    line_start = eol + 1;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::string_view body = trim(line);
    if (body.empty()) continue;

    auto colon = body.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'gens:', 'rel:' or 'name:' on line " + std::to_string(line_no), offset);
    std::string_view key = trim(body.substr(0, colon));
    std::string_view value = trim(body.substr(colon + 1));

    if (key == "gens") {
      if (have_gens) throw ParseError("duplicate 'gens:' line " + std::to_string(line_no), offset);
      have_gens = true;
      std::size_t i = 0;
      while (i < value.size()) {
        while (i < value.size() && is_space(value[i])) ++i;
        std::size_t start = i;
        while (i < value.size() && !is_space(value[i])) ++i;
        if (start == i) break;
        std::string name(value.substr(start, i - start));
        if (!is_valid_generator_name(name)) throw ParseError("invalid generator name '" + name + "'", offset);
        if (p.find(name)) throw ParseError("duplicate generator '" + name + "'", offset);
        p.generators.push_back(std::move(name));
      }
      if (p.generators.empty()) throw ParseError("no generators declared", offset);
    } else if (key == "rel") {
      if (!have_gens) throw ParseError("'rel:' before 'gens:' on line " + std::to_string(line_no), offset);
      try {
        p.relators.push_back(parse_word(value, p.generators));
      } catch (const ParseError& e) {
        throw ParseError(std::string("line ") + std::to_string(line_no) + ": " + e.what(),
                         offset + (value.data() - line.data()) + e.position());
      }
    } else if (key == "name") {
      p.name = std::string(value);
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", offset);
    }
  }
  if (!have_gens) throw ParseError("missing 'gens:' line", 0);
  return p;
}

std::string to_string(const Presentation& p) {
  std::string out;
  if (p.name) out += "name: " + *p.name + "\n";
  out += "gens:";
  for (const auto& g : p.generators) out += " " + g;
  out += "\n";
  for (const auto& r : p.relators) out += "rel: " + to_string(r, p.generators) + "\n";
  return out;
}

long exponent_sum(const Word& w, std::size_t g, std::size_t generator_count) {
  if (g >= generator_count) throw DomainError("generator index " + std::to_string(g) + " out of range");
  long sum = 0;
  for (const Letter& l : w.letters) {
    if (l.generator == g) sum += l.exponent;
  }
  return sum;
}

bool is_homogeneous(const Word& w) {
  std::vector<long> sums(generator_span(w), 0);
  for (const Letter& l : w.letters) sums[l.generator] += l.exponent;
  return std::all_of(sums.begin(), sums.end(), [](long s) { return s == 0; });
}

long relator_length(const Word& w) {
  if (w.empty()) throw DomainError("relator length of the empty word is undefined");
  long total = 0;
  for (const Letter& l : w.letters) total += std::labs(l.exponent);
  return total;
}

Word invert(const Word& w) {
  Word out;
  out.letters.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    out.letters.push_back({it->generator, -it->exponent});
  }
  return out;
}

Word free_reduce(const Word& w) {
  // Stack-based: each push either merges with the top or is appended, and a
  // zero exponent pops, exposing the previous letter for further merging.
  Word out;
  for (const Letter& l : w.letters) {
    if (!out.empty() && out.letters.back().generator == l.generator) {
      long merged = static_cast<long>(out.letters.back().exponent) + l.exponent;
      if (merged == 0) {
        out.letters.pop_back();
      } else {
        out.letters.back().exponent = static_cast<int>(merged);
      }
    } else if (l.exponent != 0) {
      out.letters.push_back(l);
    }
  }
  return out;
}

Word concat(const Word& lhs, const Word& rhs) {
  Word out = lhs;
  out.letters.insert(out.letters.end(), rhs.letters.begin(), rhs.letters.end());
  return out;
}

Word commutator(std::size_t u, std::size_t v) {
  return Word{{{u, 1}, {v, 1}, {u, -1}, {v, -1}}};
}

std::size_t generator_span(const Word& w) noexcept {
  std::size_t span = 0;
  for (const Letter& l : w.letters) span = std::max(span, l.generator + 1);
  return span;
}

}  // namespace stablab
