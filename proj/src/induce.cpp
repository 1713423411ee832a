#include "stablab/induce.hpp"

#include <algorithm>
#include <charconv>
#include <optional>

#include "stablab/error.hpp"

namespace stablab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t eol = text.find('\n', start);
    if (eol == std::string_view::npos) eol = text.size();
    lines.push_back(text.substr(start, eol - start));
    start = eol + 1;
  }
  return lines;
}

std::size_t parse_index(std::string_view s, std::size_t line) {
  std::size_t v = 0;
  s = trim(s);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("expected a non-negative integer, got '" + std::string(s) + "'", line);
  }
  return v;
}

void check_rep_matches(const SubgroupRep& rep, const CosetAction& action) {
  if (rep.generators != action.h_generators) {
    throw DomainError("representation generators do not match the coset table's subgroup generators");
  }
  if (rep.matrices.size() != rep.generators.size()) throw DomainError("representation is missing matrices");
}

CMatrix assemble(const SubgroupRep& rep, const CosetAction& action, const std::vector<CosetMove>& moves) {
  const std::size_t k = rep.dim();
  const UnitaryTuple tuple = rep.as_tuple();
  CMatrix out(action.index * k);
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const CMatrix blk = evaluate_word(moves[i].h_word, tuple);
    const std::size_t row0 = moves[i].target * k, col0 = i * k;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) out(row0 + r, col0 + c) = blk(r, c);
  }
  return out;
}

}  // namespace

void CosetAction::validate() const {
  if (index == 0) throw DomainError("coset index must be positive");
  if (table.size() != g_generators.size()) throw DomainError("coset table has the wrong number of generators");
  for (std::size_t g = 0; g < table.size(); ++g) {
    if (table[g].size() != index) {
      throw DomainError("coset table row for '" + g_generators[g] + "' does not cover every coset");
    }
    std::vector<bool> hit(index, false);
    for (const CosetMove& mv : table[g]) {
      if (mv.target >= index || hit[mv.target]) {
        throw DomainError("action of '" + g_generators[g] + "' on cosets is not a permutation");
      }
      hit[mv.target] = true;
      if (generator_span(mv.h_word) > h_generators.size()) {
        throw DomainError("coset table word uses an unknown subgroup generator");
      }
    }
  }
}

UnitaryTuple SubgroupRep::as_tuple() const {
  UnitaryTuple t;
  t.matrices = matrices;
  t.labels = generators;
  t.unitarity_tol = unitarity_tol;
  return t;
}

std::vector<CosetMove> compose_action(const CosetAction& action, const Word& g_word) {
  action.validate();
  const std::size_t n = action.index;
  std::vector<CosetMove> moves(n);
  for (std::size_t i = 0; i < n; ++i) moves[i].target = i;

  // w g_i is built right to left: x (g_cur h) = g_t (h_x h).
  for (auto it = g_word.letters.rbegin(); it != g_word.letters.rend(); ++it) {
    if (it->generator >= action.g_generators.size()) {
      throw DomainError("G-word uses generator index " + std::to_string(it->generator) + " outside the coset table");
    }
    const auto& row = action.table[it->generator];
    const int reps = std::abs(it->exponent);
    for (int r = 0; r < reps; ++r) {
      for (CosetMove& mv : moves) {
        if (it->exponent > 0) {
          const CosetMove& step = row[mv.target];
          mv.h_word = concat(step.h_word, mv.h_word);
          mv.target = step.target;
        } else {
          // x^-1 g_cur = g_j h_x^-1 where x g_j = g_cur h_x.
          auto pre = std::find_if(row.begin(), row.end(), [&](const CosetMove& s) { return s.target == mv.target; });
          mv.h_word = concat(invert(pre->h_word), mv.h_word);
          mv.target = static_cast<std::size_t>(pre - row.begin());
        }
      }
    }
  }
  return moves;
}

CMatrix induce_element(const SubgroupRep& rep, const CosetAction& action, const Word& g_word) {
  check_rep_matches(rep, action);
  action.validate();
  rep.as_tuple().validate();

  if (g_word.size() == 1 && std::abs(g_word.letters[0].exponent) == 1) {
    const Letter& l = g_word.letters[0];
    if (l.generator >= action.g_generators.size()) throw DomainError("unknown G generator");
    const CMatrix forward = assemble(rep, action, action.table[l.generator]);
    return l.exponent > 0 ? forward : forward.adjoint();
  }

  std::vector<CosetMove> moves = compose_action(action, g_word);
  for (CosetMove& mv : moves) mv.h_word = free_reduce(mv.h_word);
  return assemble(rep, action, moves);
}

double induce_defect(const SubgroupRep& rep, const CosetAction& action, const Word& g, const Word& g_prime) {
  const CMatrix whole = induce_element(rep, action, concat(g, g_prime));
  const CMatrix product = induce_element(rep, action, g) * induce_element(rep, action, g_prime);
  return operator_norm(whole - product);
}

CosetAction parse_coset_action(std::string_view text, std::vector<std::string> h_generators) {
  CosetAction action;
  action.h_generators = std::move(h_generators);
  std::vector<std::vector<std::optional<CosetMove>>> rows;
  const auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string_view line = lines[ln];
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t line_no = ln + 1;
    if (line.starts_with("index:")) {
      action.index = parse_index(line.substr(6), line_no);
      if (action.index == 0) throw ParseError("coset index must be positive", line_no);
      continue;
    }
    if (!line.starts_with("act:")) throw ParseError("expected 'index:' or 'act:' on line " + std::to_string(line_no), line_no);
    if (action.index == 0) throw ParseError("'act:' before 'index:'", line_no);
    std::string_view body = trim(line.substr(4));
    const auto arrow = body.find("->");
    const auto semi = body.find(';');
    if (arrow == std::string_view::npos || semi == std::string_view::npos || semi < arrow) {
      throw ParseError("expected 'act: <g> <i> -> <j> ; <h-word>' on line " + std::to_string(line_no), line_no);
    }
    std::string_view lhs = trim(body.substr(0, arrow));
    const auto space = lhs.find_first_of(" \t");
    if (space == std::string_view::npos) throw ParseError("missing coset index on line " + std::to_string(line_no), line_no);
    std::string gname(trim(lhs.substr(0, space)));
    if (!is_valid_generator_name(gname)) throw ParseError("invalid generator name '" + gname + "'", line_no);
    const std::size_t i = parse_index(lhs.substr(space), line_no);
    const std::size_t j = parse_index(body.substr(arrow + 2, semi - arrow - 2), line_no);
    if (i < 1 || i > action.index || j < 1 || j > action.index) {
      throw ParseError("coset index out of range on line " + std::to_string(line_no), line_no);
    }
    Word h;
    try {
      h = parse_word(trim(body.substr(semi + 1)), action.h_generators);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }

    auto git = std::find(action.g_generators.begin(), action.g_generators.end(), gname);
    std::size_t g = static_cast<std::size_t>(git - action.g_generators.begin());
    if (git == action.g_generators.end()) {
      action.g_generators.push_back(gname);
      rows.emplace_back(action.index);
    }
    if (rows[g][i - 1]) throw ParseError("duplicate action of '" + gname + "' on coset " + std::to_string(i), line_no);
    rows[g][i - 1] = CosetMove{j - 1, std::move(h)};
  }
  if (action.index == 0) throw ParseError("missing 'index:' line", 0);
  for (std::size_t g = 0; g < rows.size(); ++g) {
    std::vector<CosetMove> row;
    for (std::size_t i = 0; i < rows[g].size(); ++i) {
      if (!rows[g][i]) {
        throw DomainError("action of '" + action.g_generators[g] + "' on coset " + std::to_string(i + 1) + " is missing");
      }
      row.push_back(*rows[g][i]);
    }
    action.table.push_back(std::move(row));
  }
  action.validate();
  return action;
}

SubgroupRep parse_subgroup_rep(std::string_view text) {
  SubgroupRep rep;
  std::vector<std::optional<CMatrix>> slots;
  std::optional<std::size_t> current;
  std::string chunk;
  auto flush = [&](std::size_t line_no) {
    if (!current) return;
    std::vector<CMatrix> ms = parse_dumps(chunk);
    if (ms.size() != 1) throw ParseError("expected exactly one matrix for '" + rep.generators[*current] + "'", line_no);
    slots[*current] = std::move(ms.front());
    chunk.clear();
    current.reset();
  };
  const auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string_view line = lines[ln];
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::string_view body = trim(line);
    if (body.empty()) continue;
    if (body.starts_with("gens:")) {
      Presentation p = parse_presentation(std::string(body));
      rep.generators = p.generators;
      slots.assign(rep.generators.size(), std::nullopt);
    } else if (body.starts_with("matrix:")) {
      flush(ln + 1);
      std::string name(trim(body.substr(7)));
      auto it = std::find(rep.generators.begin(), rep.generators.end(), name);
      if (it == rep.generators.end()) throw ParseError("matrix for undeclared generator '" + name + "'", ln + 1);
      current = static_cast<std::size_t>(it - rep.generators.begin());
      if (slots[*current]) throw ParseError("duplicate matrix for '" + name + "'", ln + 1);
    } else {
      if (!current) throw ParseError("matrix data outside a 'matrix:' section", ln + 1);
      chunk.append(body);
      chunk.push_back('\n');
    }
  }
  flush(lines.size());
  if (rep.generators.empty()) throw ParseError("missing 'gens:' line", 0);
  for (std::size_t g = 0; g < slots.size(); ++g) {
    if (!slots[g]) throw DomainError("no matrix given for '" + rep.generators[g] + "'");
    rep.matrices.push_back(std::move(*slots[g]));
  }
  for (const auto& m : rep.matrices) {
    if (m.dim() != rep.matrices.front().dim()) throw DomainError("representation matrices differ in dimension");
  }
  return rep;
}

}  // namespace stablab
