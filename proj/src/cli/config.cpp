#include <charconv>

#include "stablab/cli.hpp"
#include "stablab/error.hpp"

namespace stablab::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string unquote(std::string_view v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
  return std::string(v);
}

template <typename T>
T to_number(const std::string& key, const std::string& value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw DomainError("config key '" + key + "' expects an integer, got '" + value + "'");
  }
  return out;
}

}  // namespace

std::map<std::string, std::string> parse_config(std::string_view text) {
  std::map<std::string, std::string> out;
  std::string section;
  std::size_t start = 0, line_no = 0;
  while (start <= text.size()) {
    std::size_t eol = text.find('\n', start);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(start, eol - start);
    start = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", line_no);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ParseError("empty key", line_no);
    if (!section.empty()) key = section + "." + key;
    out[key] = unquote(trim(line.substr(eq + 1)));
  }
  return out;
}

void apply_config(SweepConfig& cfg, const std::map<std::string, std::string>& values) {
  for (const auto& [full_key, value] : values) {
    std::string key = full_key;
    if (key.starts_with("sweep.")) key = key.substr(6);
    if (key.starts_with("sampling.")) key = key.substr(9);
    if (key == "family") {
      cfg.family = value;
    } else if (key == "from") {
      cfg.from = to_number<int>(key, value);
    } else if (key == "to") {
      cfg.to = to_number<int>(key, value);
    } else if (key == "step") {
      cfg.step = to_number<int>(key, value);
    } else if (key == "m") {
      cfg.fixed.m = to_number<int>(key, value);
    } else if (key == "g") {
      cfg.fixed.g = to_number<int>(key, value);
    } else if (key == "M") {
      cfg.fixed.M = to_number<int>(key, value);
    } else if (key == "methods") {
      cfg.spectral = value.find("spectral") != std::string::npos;
      cfg.sampled = value.find("sampled") != std::string::npos;
      if (!cfg.spectral && !cfg.sampled) throw DomainError("methods must name spectral and/or sampled");
    } else if (key == "output") {
      cfg.output = value;
    } else if (key == "format") {
      if (value == "csv") {
        cfg.format = Format::csv;
      } else if (value == "json") {
        cfg.format = Format::json;
      } else {
        throw DomainError("format must be csv or json");
      }
    } else if (key == "parallelism") {
      cfg.parallelism = to_number<unsigned>(key, value);
    } else if (key == "timing") {
      cfg.timing = value == "true" || value == "1";
    } else if (key == "initial_samples") {
      cfg.sampling.initial_samples = to_number<std::size_t>(key, value);
    } else if (key == "max_samples") {
      cfg.sampling.max_samples = to_number<std::size_t>(key, value);
    } else {
      throw DomainError("unknown config key '" + full_key + "'");
    }
  }
}

}  // namespace stablab::cli
