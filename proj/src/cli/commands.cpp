#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "stablab/cli.hpp"
#include "stablab/crystal.hpp"
#include "stablab/error.hpp"
#include "stablab/induce.hpp"

namespace stablab::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct SourceOptions {
  std::string family;
  FamilyParams params;
  std::string pres_file;
  std::string matrices_file;
  std::string word;
  std::size_t relator = 0;
  double tol = 1e-10;
};

struct Source {
  UnitaryTuple tuple;
  Word relator;
};

void add_source_options(CLI::App* cmd, SourceOptions& o) {
  cmd->add_option("--family", o.family, "Zoo family (voiculescu, p2, p3, p4, p6, surface, bs_mm, nilpotent, bs23, identity)");
  cmd->add_option("--n", o.params.n, "Size parameter (l for nilpotent)");
  cmd->add_option("--m", o.params.m, "bs_mm exponent");
  cmd->add_option("--g", o.params.g, "Surface genus");
  cmd->add_option("--M", o.params.M, "Nilpotent structure constant");
  cmd->add_option("--pres", o.pres_file, "Presentation file");
  cmd->add_option("--matrices", o.matrices_file, "Matrix dump file, one matrix per generator");
  cmd->add_option("--relator", o.relator, "Relator index (family test relators or presentation relators)");
  cmd->add_option("--word", o.word, "Relator word, overriding --relator");
  cmd->add_option("--tol", o.tol, "Unitarity tolerance for file input");
}

Source resolve(const SourceOptions& o) {
  Source src;
  std::vector<std::string> gens;
  std::vector<Word> relators;
  if (!o.family.empty()) {
    if (!o.pres_file.empty() || !o.matrices_file.empty()) throw DomainError("give either --family or --pres/--matrices");
    NamedConstruction c = build_family(o.family, o.params);
    src.tuple = c.tuple;
    gens = c.presentation.generators;
    relators = c.test_relators.empty() ? c.presentation.relators : c.test_relators;
  } else {
    if (o.pres_file.empty() || o.matrices_file.empty()) throw DomainError("need --family, or both --pres and --matrices");
    Presentation p = parse_presentation(read_file(o.pres_file));
    std::vector<CMatrix> mats = parse_dumps(read_file(o.matrices_file));
    if (mats.size() != p.generators.size()) {
      throw DomainError("presentation has " + std::to_string(p.generators.size()) + " generators but " +
                        std::to_string(mats.size()) + " matrices were given");
    }
    src.tuple.matrices = std::move(mats);
    src.tuple.labels = p.generators;
    src.tuple.unitarity_tol = o.tol;
    gens = p.generators;
    relators = p.relators;
  }
  if (!o.word.empty()) {
    src.relator = parse_word(o.word, gens);
  } else {
    if (o.relator >= relators.size()) throw DomainError("relator index " + std::to_string(o.relator) + " out of range");
    src.relator = relators[o.relator];
  }
  return src;
}

int cmd_parse(const std::string& pres_file, const std::string& word, const std::string& gens_text, std::ostream& out) {
  Presentation p;
  if (!pres_file.empty()) {
    p = parse_presentation(read_file(pres_file));
  } else {
    if (word.empty() || gens_text.empty()) throw DomainError("parse needs --pres, or --word with --gens");
    p = parse_presentation("gens: " + gens_text + "\n");
    p.relators.push_back(parse_word(word, p.generators));
  }
  nlohmann::ordered_json doc;
  if (p.name) doc["name"] = *p.name;
  doc["generators"] = p.generators;
  nlohmann::ordered_json rels = nlohmann::ordered_json::array();
  for (const Word& w : p.relators) {
    nlohmann::ordered_json r;
    r["word"] = to_string(w, p.generators);
    r["letters"] = w.size();
    nlohmann::ordered_json sums;
    for (std::size_t g = 0; g < p.generators.size(); ++g) sums[p.generators[g]] = exponent_sum(w, g, p.generators.size());
    r["exponent_sums"] = sums;
    r["homogeneous"] = is_homogeneous(w);
    r["L"] = w.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(relator_length(w));
    r["reduced"] = to_string(free_reduce(w), p.generators);
    rels.push_back(std::move(r));
  }
  doc["relators"] = std::move(rels);
  out << dump_json(doc, 2) << "\n";
  return kOk;
}

int cmd_wind(const SourceOptions& o, const std::string& method, const SamplingOptions& sampling, std::ostream& out) {
  const Source src = resolve(o);
  nlohmann::ordered_json doc;
  doc["relator"] = to_string(src.relator, src.tuple.labels);
  doc["n"] = src.tuple.dim();
  nlohmann::ordered_json result;
  if (method == "sampled") {
    result = to_json(winding_sampled(src.relator, src.tuple, sampling));
  } else {
    result = to_json(winding_spectral(src.relator, src.tuple));
  }
  for (auto it = result.begin(); it != result.end(); ++it) doc[it.key()] = it.value();
  if (method == "both") {
    const WindingResult s = winding_sampled(src.relator, src.tuple, sampling);
    doc["cross_check"] = to_json(s);
    if (s.wind != doc["wind"].get<int>()) {
      out << dump_json(doc, 2) << "\n";
      throw NumericalError("spectral and sampled winding numbers disagree");
    }
  }
  out << dump_json(doc, 2) << "\n";
  return kOk;
}

int cmd_certify(const SourceOptions& o, const CertifyOptions& opts, std::ostream& out) {
  const Source src = resolve(o);
  out << dump_json(to_json(certify_obstruction(src.relator, src.tuple, opts)), 2) << "\n";
  return kOk;
}

int cmd_sweep(SweepConfig cfg, const std::string& config_file, const SweepConfig& overrides,
              const std::vector<std::string>& set_flags, std::ostream& out) {
  if (!config_file.empty()) apply_config(cfg, parse_config(read_file(config_file)));
  for (const std::string& flag : set_flags) {
    if (flag == "family") cfg.family = overrides.family;
    if (flag == "from") cfg.from = overrides.from;
    if (flag == "to") cfg.to = overrides.to;
    if (flag == "step") cfg.step = overrides.step;
    if (flag == "m") cfg.fixed.m = overrides.fixed.m;
    if (flag == "g") cfg.fixed.g = overrides.fixed.g;
    if (flag == "M") cfg.fixed.M = overrides.fixed.M;
    if (flag == "methods") {
      cfg.spectral = overrides.spectral;
      cfg.sampled = overrides.sampled;
    }
    if (flag == "format") cfg.format = overrides.format;
    if (flag == "output") cfg.output = overrides.output;
    if (flag == "parallelism") cfg.parallelism = overrides.parallelism;
    if (flag == "timing") cfg.timing = overrides.timing;
  }
  const std::vector<SweepRow> rows = run_sweep(cfg);
  const std::string text = cfg.format == Format::json ? render_json(cfg, rows) : render_csv(cfg, rows);
  if (cfg.output.empty() || cfg.output == "-") {
    out << text;
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) throw DomainError("cannot write '" + cfg.output + "'");
    f << text;
  }
  const bool failed = std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.error.empty(); });
  return failed ? kPartialSweep : kOk;
}

int cmd_crystal(const std::string& format, std::ostream& out, std::ostream& err) {
  const crystal::Classification cls = crystal::classify_all();
  if (format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : cls.rows) {
      const auto& r = *row.rec;
      nlohmann::ordered_json j;
      j["name"] = r.name;
      j["ranks"] = {{"K0_A2", r.k0_a2.rank}, {"K1_A2", r.k1_a2.rank}, {"K0_A1", r.k0_a1.rank}, {"K1_A1", r.k1_a1.rank}};
      j["torsion"] = {{"K0_A2", r.k0_a2.torsion}, {"K1_A2", r.k1_a2.torsion}, {"K0_A1", r.k0_a1.torsion},
                      {"K1_A1", r.k1_a1.torsion}};
      j["s"] = r.sheets;
      j["cond_i"] = row.verdict.cond_i;
      j["cond_ii"] = row.verdict.cond_ii;
      j["verdict"] = crystal::to_string(row.verdict.certificate);
      j["shaded"] = r.shaded;
      arr.push_back(std::move(j));
    }
    out << dump_json(arr, 2) << "\n";
  } else {
    auto cell = [](const std::string& s, int w) {
      std::ostringstream o;
      o << std::left << std::setw(w) << s;
      return o.str();
    };
    out << cell("group", 6) << cell("F", 7) << cell("K0(A2)", 9) << cell("K0(A1)", 9) << cell("K1(A2)", 9)
        << cell("K1(A1)", 10) << cell("s", 3) << cell("(i)", 5) << cell("(ii)", 5) << cell("verdict", 18)
        << "shaded\n";
    for (const auto& row : cls.rows) {
      const auto& r = *row.rec;
      out << cell(r.name, 6) << cell(r.fiber, 7) << cell(r.k0_a2.to_string(), 9) << cell(r.k0_a1.to_string(), 9)
          << cell(r.k1_a2.to_string(), 9) << cell(r.k1_a1.to_string(), 10) << cell(std::to_string(r.sheets), 3)
          << cell(row.verdict.cond_i ? "yes" : "no", 5) << cell(row.verdict.cond_ii ? "yes" : "no", 5)
          << cell(crystal::to_string(row.verdict.certificate), 18) << (r.shaded ? "yes" : "no") << "\n";
    }
  }
  for (const auto& f : cls.failures) err << "table check failed: " << f << "\n";
  return cls.consistent() ? kOk : kMathFailure;
}

int cmd_induce(const std::string& rep_file, const std::string& action_file, const std::string& g_text,
               const std::string& gp_text, std::ostream& out) {
  const SubgroupRep rep = parse_subgroup_rep(read_file(rep_file));
  const CosetAction action = parse_coset_action(read_file(action_file), rep.generators);
  const Word g = parse_word(g_text, action.g_generators);
  if (gp_text.empty()) {
    out << dump(induce_element(rep, action, g));
    return kOk;
  }
  const Word gp = parse_word(gp_text, action.g_generators);
  nlohmann::ordered_json doc;
  doc["index"] = action.index;
  doc["k"] = rep.dim();
  doc["dim"] = action.index * rep.dim();
  doc["g"] = to_string(g, action.g_generators);
  doc["gp"] = to_string(gp, action.g_generators);
  doc["defect"] = induce_defect(rep, action, g, gp);
  out << dump_json(doc, 2) << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"stability-lab: winding-number obstructions for almost representations"};
  app.name("stability_lab");
  app.require_subcommand(1);

  std::string pres_file, word, gens_text;
  auto* parse = app.add_subcommand("parse", "Parse a presentation or word and report exponent sums and L(R)");
  parse->add_option("--pres", pres_file, "Presentation file");
  parse->add_option("--word", word, "Single word");
  parse->add_option("--gens", gens_text, "Generators for --word, space separated");

  SourceOptions wind_opts;
  std::string method = "spectral";
  SamplingOptions sampling;
  auto* wind = app.add_subcommand("wind", "Winding number of the determinant curve");
  add_source_options(wind, wind_opts);
  wind->add_option("--method", method, "spectral, sampled or both")->check(CLI::IsMember({"spectral", "sampled", "both"}));
  wind->add_option("--initial-samples", sampling.initial_samples);
  wind->add_option("--max-samples", sampling.max_samples);

  SourceOptions cert_opts;
  CertifyOptions cert;
  auto* certify = app.add_subcommand("certify", "Obstruction certificate for a relator and tuple");
  add_source_options(certify, cert_opts);
  certify->add_flag("--cross-check", cert.cross_check, "Also run the sampled winding algorithm");
  certify->add_option("--initial-samples", cert.sampling.initial_samples);
  certify->add_option("--max-samples", cert.sampling.max_samples);

  SweepConfig sweep_cfg, sweep_over;
  std::string config_file, methods_text, format_text;
  auto* sweep = app.add_subcommand("sweep", "Sweep a family over a parameter range");
  sweep->add_option("--config", config_file, "key = value config file");
  sweep->add_option("--family", sweep_over.family);
  sweep->add_option("--from", sweep_over.from);
  sweep->add_option("--to", sweep_over.to);
  sweep->add_option("--step", sweep_over.step);
  sweep->add_option("--m", sweep_over.fixed.m);
  sweep->add_option("--g", sweep_over.fixed.g);
  sweep->add_option("--M", sweep_over.fixed.M);
  sweep->add_option("--methods", methods_text, "Comma separated subset of spectral,sampled");
  sweep->add_option("--format", format_text)->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--output", sweep_over.output);
  sweep->add_option("--parallelism", sweep_over.parallelism);
  sweep->add_flag("--timing", sweep_over.timing, "Fill the wall_ms column (output is then not reproducible)");

  std::string crystal_format = "text";
  auto* crystal_cmd = app.add_subcommand("crystal", "Wallpaper group K-theory table with rank-condition verdicts");
  crystal_cmd->add_option("--format", crystal_format)->check(CLI::IsMember({"text", "json"}));

  std::string rep_file, action_file, g_text, gp_text;
  auto* induce = app.add_subcommand("induce", "Induced approximate representation and its defect");
  induce->add_option("--rep", rep_file)->required();
  induce->add_option("--action", action_file)->required();
  induce->add_option("--g", g_text)->required();
  induce->add_option("--gp", gp_text, "Second element; prints ||Ind(g g') - Ind(g) Ind(g')||");

  std::vector<std::string> argv_store;
  argv_store.push_back("stability_lab");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*parse) return cmd_parse(pres_file, word, gens_text, out);
    if (*wind) return cmd_wind(wind_opts, method, sampling, out);
    if (*certify) return cmd_certify(cert_opts, cert, out);
    if (*sweep) {
      std::vector<std::string> set;
      for (const char* key : {"family", "from", "to", "step", "m", "g", "M", "output", "parallelism"}) {
        if (sweep->count(std::string("--") + key) > 0) set.push_back(key);
      }
      if (sweep->count("--timing") > 0) set.push_back("timing");
      if (!methods_text.empty()) {
        sweep_over.spectral = methods_text.find("spectral") != std::string::npos;
        sweep_over.sampled = methods_text.find("sampled") != std::string::npos;
        if (!sweep_over.spectral && !sweep_over.sampled) throw DomainError("--methods must name spectral and/or sampled");
        set.push_back("methods");
      }
      if (!format_text.empty()) {
        sweep_over.format = format_text == "json" ? Format::json : Format::csv;
        set.push_back("format");
      }
      return cmd_sweep(sweep_cfg, config_file, sweep_over, set, out);
    }
    if (*crystal_cmd) return cmd_crystal(crystal_format, out, err);
    if (*induce) return cmd_induce(rep_file, action_file, g_text, gp_text, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kMathFailure;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kMathFailure;
  }
  return kUsage;
}

}  // namespace stablab::cli
