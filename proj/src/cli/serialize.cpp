#include <charconv>
#include <cmath>

#include "stablab/cli.hpp"

namespace stablab::cli {

namespace {

void dump_into(std::string& out, const nlohmann::ordered_json& j, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += '{';
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ',';
      first = false;
      newline(depth + 1);
      out += nlohmann::ordered_json(it.key()).dump();
      out += indent < 0 ? ":" : ": ";
      dump_into(out, it.value(), indent, depth + 1);
    }
    newline(depth);
    out += '}';
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    out += '[';
    bool first = true;
    for (const auto& v : j) {
      if (!first) out += ',';
      first = false;
      newline(depth + 1);
      dump_into(out, v, indent, depth + 1);
    }
    newline(depth);
    out += ']';
  } else if (j.is_number_float()) {
    const double x = j.get<double>();
    out += std::isfinite(x) ? format_double(x) : "null";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::string dump_json(const nlohmann::ordered_json& j, int indent) {
  std::string out;
  dump_into(out, j, indent, 0);
  return out;
}

nlohmann::ordered_json to_json(const ObstructionReport& r) {
  nlohmann::ordered_json j;
  j["relator"] = r.relator_text;
  j["n"] = r.dimension;
  j["defect"] = r.defect;
  j["wind"] = r.wind ? nlohmann::ordered_json(*r.wind) : nlohmann::ordered_json(nullptr);
  j["L"] = r.length;
  j["radius_num"] = r.radius_num;
  j["radius_den"] = r.radius_den;
  j["radius"] = r.radius;
  j["verdict"] = to_string(r.verdict);
  j["method"] = to_string(r.method);
  j["samples"] = r.samples;
  if (r.sampled_wind) j["sampled_wind"] = *r.sampled_wind;
  return j;
}

nlohmann::ordered_json to_json(const WindingResult& r) {
  nlohmann::ordered_json j;
  j["wind"] = r.wind;
  j["method"] = to_string(r.method);
  j["raw_value"] = r.raw_value;
  j["min_log_magnitude"] = r.min_log_magnitude;
  j["samples"] = r.sample_count;
  return j;
}

}  // namespace stablab::cli
