#include <doctest.h>

#include <set>
#include <stdexcept>

#include "stablab/crystal.hpp"
#include "stablab/winding.hpp"
#include "stablab/zoo.hpp"

using namespace stablab;
using namespace stablab::crystal;

namespace {

struct Row {
  const char* name;
  const char* k0_a2;
  const char* k0_a1;
  const char* k1_a2;
  const char* k1_a1;
  int s;
  bool shaded;
};

// Tabulated order.
const Row kRows[] = {
    {"p1", "Z^2", "Z", "Z^2", "Z^2", 2, true},        {"p2", "Z^6", "Z^5", "0", "Z", 2, true},
    {"pm", "Z^3", "Z^3", "Z^3", "Z^4", 1, false},     {"pg", "Z", "Z", "Z+Z_2", "Z^2+Z_2", 1, false},
    {"cm", "Z^2", "Z^2", "Z^2", "Z^3", 1, false},     {"pmm", "Z^9", "Z^9", "0", "Z", 1, false},
    {"pmg", "Z^4", "Z^4", "Z", "Z^2", 1, false},      {"pgg", "Z^3", "Z^3", "Z_2", "Z+Z_2", 1, false},
    {"cmm", "Z^5", "Z^5", "0", "Z", 1, false},        {"p4", "Z^9", "Z^8", "0", "Z", 2, true},
    {"p4m", "Z^9", "Z^9", "0", "Z", 1, false},        {"p4g", "Z^6", "Z^6", "0", "Z", 1, false},
    {"p3", "Z^8", "Z^7", "0", "Z", 2, true},          {"p3m1", "Z^5", "Z^5", "Z", "Z^2", 1, false},
    {"p31m", "Z^5", "Z^5", "Z", "Z^3", 2, false},     {"p6", "Z^10", "Z^9", "0", "Z", 2, true},
    {"p6m", "Z^8", "Z^8", "0", "Z", 1, false},
};

}  // namespace

TEST_CASE("table transcription") {
  const auto& table = builtin_table();
  REQUIRE(table.size() == 17);
  std::set<std::string> names;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const CrystalRecord& r = table[i];
    CAPTURE(r.name);
    CHECK(r.name == kRows[i].name);
    CHECK(r.k0_a2.to_string() == kRows[i].k0_a2);
    CHECK(r.k0_a1.to_string() == kRows[i].k0_a1);
    CHECK(r.k1_a2.to_string() == kRows[i].k1_a2);
    CHECK(r.k1_a1.to_string() == kRows[i].k1_a1);
    CHECK(r.sheets == kRows[i].s);
    CHECK(r.shaded == kRows[i].shaded);
    for (const KGroup* k : {&r.k0_a2, &r.k0_a1, &r.k1_a2, &r.k1_a1})
      for (int t : k->torsion) CHECK(t >= 2);
    names.insert(r.name);
  }
  CHECK(names.size() == 17);
}

TEST_CASE("record lookup") {
  CHECK(record("pg").k1_a1.rank == 2);
  CHECK(record("pg").k1_a1.torsion == std::vector<int>{2});
  CHECK(record("p1").k0_a2.rank == 2);
  CHECK(record("p1").k0_a2.torsion.empty());
  CHECK(record("p4mm").name == "p4m");
  CHECK(record("p4mg").name == "p4g");
  CHECK(record("p6mm").name == "p6m");
  CHECK(canonical_name("p6mm") == "p6m");
  CHECK(canonical_name("pgg") == "pgg");
  CHECK_THROWS_AS(record("p5"), std::out_of_range);
  CHECK(KGroup{0, {}}.to_string() == "0");
  CHECK(KGroup{0, {2, 3}}.to_string() == "Z_2+Z_3");
  CHECK(KGroup{1, {}}.to_string() == "Z");
}

TEST_CASE("rank conditions") {
  const RankVerdict pg = check_rank_conditions(record("pg"));
  CHECK(pg.cond_i);
  CHECK(pg.cond_ii);
  CHECK(pg.certificate == Certificate::stable_certified);
  for (const char* name : {"p1", "p4"}) {
    const RankVerdict v = check_rank_conditions(record(name));
    CHECK_FALSE(v.cond_i);
    CHECK_FALSE(v.cond_ii);
    CHECK(v.certificate == Certificate::no_certificate);
  }
  CHECK(to_string(Certificate::stable_certified) == "stable_certified");
  CHECK(to_string(Certificate::no_certificate) == "no_certificate");
}

TEST_CASE("classification") {
  const Classification c = classify_all();
  CHECK(c.consistent());
  std::set<std::string> certified, uncertified;
  for (const ClassifiedRow& row : c.rows) {
    CHECK(row.verdict.cond_i == row.verdict.cond_ii);
    (row.verdict.certificate == Certificate::stable_certified ? certified : uncertified).insert(row.rec->name);
  }
  const std::set<std::string> expected{"cm",  "pm",   "pg",   "cmm", "pmm", "pmg",
                                       "pgg", "p3m1", "p31m", "p4m", "p4g", "p6m"};
  CHECK(certified == expected);
  CHECK(uncertified == std::set<std::string>{"p1", "p2", "p3", "p4", "p6"});
}

TEST_CASE("transcription errors are reported") {
  std::vector<CrystalRecord> table = builtin_table();
  table[2].k0_a1.rank += 1;  // pm: breaks (i) but not (ii)
  table[0].shaded = false;   // p1: shading without certificate
  const Classification c = classify(table);
  CHECK_FALSE(c.consistent());
  CHECK(c.failures.size() == 3);
}

TEST_CASE("uncertified groups carry winding obstructions") {
  const int n = 30;
  const NamedConstruction constructions[] = {bs_mm(1, n), wallpaper_p2(n), wallpaper_p3(n), wallpaper_p4(n),
                                             wallpaper_p6(n)};
  for (const NamedConstruction& c : constructions) {
    CAPTURE(c.family);
    const ObstructionReport r = certify_obstruction(c.test_relators[0], c.tuple);
    CHECK(r.verdict == Verdict::certified_far);
  }
}
