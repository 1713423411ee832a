#include "stablab/crystal.hpp"

#include <algorithm>
#include <stdexcept>

namespace stablab::crystal {

namespace {

KGroup z(int rank, std::vector<int> torsion = {}) { return KGroup{rank, std::move(torsion)}; }

const std::pair<std::string_view, std::string_view> kAliases[] = {
    {"p4mm", "p4m"}, {"p4mg", "p4g"}, {"p6mm", "p6m"}};

}  // namespace

std::string KGroup::to_string() const {
  std::string out;
  if (rank == 1) out = "Z";
  if (rank > 1) out = "Z^" + std::to_string(rank);
  for (int t : torsion) {
    if (!out.empty()) out += "+";
    out += "Z_" + std::to_string(t);
  }
  return out.empty() ? "0" : out;
}

std::string to_string(Certificate c) {
  return c == Certificate::stable_certified ? "stable_certified" : "no_certificate";
}

const std::vector<CrystalRecord>& builtin_table() {
  // name, relations, F, K0(A2), K1(A2), K0(A1), K1(A1), sheets, shaded
  static const std::vector<CrystalRecord> table = {
      {"p1", "xy=yx", "C^2", z(2), z(2), z(1), z(2), 2, true},
      {"p2", "t_i^2=(t1t2t3)^2=e", "M_2^2", z(6), z(0), z(5), z(1), 2, true},
      {"pm", "r1^2=r2^2=e, r_iy=yr_i", "M_2", z(3), z(3), z(3), z(4), 1, false},
      {"pg", "p^2=q^2", "M_2", z(1), z(1, {2}), z(1), z(2, {2}), 1, false},
      {"cm", "r^2=e, rp^2=p^2r", "M_2", z(2), z(2), z(2), z(3), 1, false},
      {"pmm", "r^2=(r1r2)^2=(r2r3)^2=(r3r4)^2=(r4r1)^2=e", "M_4", z(9), z(0), z(9), z(1), 1, false},
      {"pmg", "r^2=t1^2=t2^2=e, t1rt1=t2rt2", "M_4", z(4), z(1), z(4), z(2), 1, false},
      {"pgg", "(po)^2=(p^-1o)^2=e", "M_4", z(3), z(0, {2}), z(3), z(1, {2}), 1, false},
      {"cmm", "r_i^2=t^2=(r1r2)^2=(r1tr2t)^2=e", "M_4", z(5), z(0), z(5), z(1), 1, false},
      {"p4", "r^4=t^2=(rt)^4=e", "M_4^2", z(9), z(0), z(8), z(1), 2, true},
      {"p4m", "r_i^3=(r1r2)^4=(r2r3)^4=(r3r1)^2=e", "M_4", z(9), z(0), z(9), z(1), 1, false},
      {"p4g", "t^4=r^2=(t^-1rtr)^2=e", "M_8", z(6), z(0), z(6), z(1), 1, false},
      {"p3", "r^3=t^3=(rt)^3=e", "M_3^2", z(8), z(0), z(7), z(1), 2, true},
      {"p3m1", "r_i^2=(r1r2)^3=(r2r3)^3=(r3r1)^3=e", "M_6", z(5), z(1), z(5), z(2), 1, false},
      {"p31m", "t^3=r^2=(t^-1rtr)^3=e", "M_6^2", z(5), z(1), z(5), z(3), 2, false},
      {"p6", "r^3=t^2=(rt)^6=e", "M_6^2", z(10), z(0), z(9), z(1), 2, true},
      {"p6m", "r_i^2=(r1r2)^3=(r2r3)^6=(r3r1)^2=e", "M_12", z(8), z(0), z(8), z(1), 1, false},
  };
  return table;
}

std::string canonical_name(std::string_view name) {
  for (const auto& [alias, canonical] : kAliases) {
    if (alias == name) return std::string(canonical);
  }
  return std::string(name);
}

const CrystalRecord& record(std::string_view name) {
  const std::string key = canonical_name(name);
  const auto& t = builtin_table();
  auto it = std::find_if(t.begin(), t.end(), [&](const CrystalRecord& r) { return r.name == key; });
  if (it == t.end()) throw std::out_of_range("no wallpaper group named '" + std::string(name) + "'");
  return *it;
}

RankVerdict check_rank_conditions(const CrystalRecord& rec) {
  RankVerdict v;
  v.cond_i = rec.k0_a1.rank == rec.k0_a2.rank;
  v.cond_ii = rec.k1_a1.rank - rec.k1_a2.rank == rec.sheets;
  v.certificate = v.cond_i ? Certificate::stable_certified : Certificate::no_certificate;
  return v;
}

Classification classify(const std::vector<CrystalRecord>& table) {
  Classification out;
  for (const CrystalRecord& rec : table) {
    ClassifiedRow row{&rec, check_rank_conditions(rec)};
    if (row.verdict.cond_i != row.verdict.cond_ii) {
      out.failures.push_back(rec.name + ": condition (i) and (ii) disagree");
    }
    const bool certified = row.verdict.certificate == Certificate::stable_certified;
    if (certified == rec.shaded) {
      out.failures.push_back(rec.name + ": certificate " + to_string(row.verdict.certificate) +
                             (rec.shaded ? " but row is shaded" : " but row is unshaded"));
    }
    out.rows.push_back(row);
  }
  return out;
}

Classification classify_all() { return classify(builtin_table()); }

}  // namespace stablab::crystal
