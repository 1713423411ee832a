#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "stablab/cli.hpp"
#include "stablab/error.hpp"

namespace stablab::cli {

namespace {

std::size_t dimension_factor(const std::string& family) {
  if (family == "p2") return 2;
  if (family == "p3") return 3;
  if (family == "p4") return 4;
  if (family == "p6" || family == "bs23") return 6;
  return 1;
}

SweepRow compute_row(const SweepConfig& cfg, int n) {
  SweepRow row;
  row.n = n;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    FamilyParams p = cfg.fixed;
    p.n = n;
    const NamedConstruction c = build_family(cfg.family, p);
    row.dim = c.tuple.dim();
    if (c.family == "bs23") {
      const Word mirror = bs23_mirror_relator();
      row.relator = to_string(mirror, c.tuple.labels);
      row.defect = relator_defect(evaluate_word(mirror, c.tuple));
      row.alt_defect = relator_defect(evaluate_word(bs23_stated_relator(), c.tuple));
      row.gap = bs23_commutator_gap(n);
    } else {
      const Word& w = c.test_relators.front();
      row.relator = to_string(w, c.tuple.labels);
      CertifyOptions opts;
      opts.cross_check = cfg.sampled;
      opts.sampling = cfg.sampling;
      const ObstructionReport rep = certify_obstruction(w, c.tuple, opts);
      row.defect = rep.defect;
      if (cfg.spectral) row.wind_spectral = rep.wind;
      if (cfg.sampled) row.wind_sampled = rep.sampled_wind;
      row.verdict = to_string(rep.verdict);
      row.radius_den = rep.radius_den;
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  if (cfg.timing) {
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  return row;
}

template <typename T>
std::string opt_text(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, double>) {
    return format_double(*v);
  } else if constexpr (std::is_same_v<T, std::string>) {
    return *v;
  } else {
    return std::to_string(*v);
  }
}

template <typename T>
nlohmann::ordered_json opt_json(const std::optional<T>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

void SweepConfig::validate() const {
  const auto& names = family_names();
  if (std::find(names.begin(), names.end(), family) == names.end()) {
    throw DomainError("unknown family '" + family + "'");
  }
  if (step < 1) throw DomainError("sweep step must be >= 1");
  if (from > to) throw DomainError("empty sweep range");
  if (parallelism < 1) throw DomainError("parallelism must be >= 1");
  if (to < 1) throw DomainError("sweep parameters must be positive");
  const std::size_t dim = dimension_factor(family) * static_cast<std::size_t>(to);
  if (dim > max_dimension()) {
    throw DomainError("sweep reaches dimension " + std::to_string(dim) + " above the cap " +
                      std::to_string(max_dimension()));
  }
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<int> params;
  for (int n = cfg.from; n <= cfg.to; n += cfg.step) params.push_back(n);
  std::vector<SweepRow> rows(params.size());

  const unsigned workers = std::min<unsigned>(cfg.parallelism, static_cast<unsigned>(params.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < params.size(); i = next++) rows[i] = compute_row(cfg, params[i]);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return rows;
}

std::string render_csv(const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
  std::string out = "# stability-lab v1\n";
  out += "# family=" + cfg.family + "\n";
  out += "n,dim,relator,defect,wind_spectral,wind_sampled,verdict,radius,gap,alt_defect,wall_ms,error\n";
  for (const SweepRow& r : rows) {
    out += std::to_string(r.n) + ",";
    out += (r.dim ? std::to_string(r.dim) : std::string()) + ",";
    out += csv_escape(r.relator) + ",";
    out += opt_text(r.defect) + ",";
    out += opt_text(r.wind_spectral) + ",";
    out += opt_text(r.wind_sampled) + ",";
    out += opt_text(r.verdict) + ",";
    out += (r.radius_den ? "1/" + std::to_string(*r.radius_den) : std::string()) + ",";
    out += opt_text(r.gap) + ",";
    out += opt_text(r.alt_defect) + ",";
    out += opt_text(r.wall_ms) + ",";
    out += csv_escape(r.error) + "\n";
  }
  return out;
}

std::string render_json(const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
  nlohmann::ordered_json doc;
  doc["format"] = "stability-lab v1";
  doc["family"] = cfg.family;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const SweepRow& r : rows) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["dim"] = r.dim;
    j["relator"] = r.relator;
    j["defect"] = opt_json(r.defect);
    j["wind_spectral"] = opt_json(r.wind_spectral);
    j["wind_sampled"] = opt_json(r.wind_sampled);
    j["verdict"] = opt_json(r.verdict);
    j["radius_num"] = r.radius_den ? nlohmann::ordered_json(1) : nlohmann::ordered_json(nullptr);
    j["radius_den"] = opt_json(r.radius_den);
    j["gap"] = opt_json(r.gap);
    j["alt_defect"] = opt_json(r.alt_defect);
    j["wall_ms"] = opt_json(r.wall_ms);
    j["error"] = r.error.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.error);
    arr.push_back(std::move(j));
  }
  doc["rows"] = std::move(arr);
  return dump_json(doc, 2) + "\n";
}

}  // namespace stablab::cli
