#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stablab::crystal {

/// Finitely generated abelian group Z^rank + Z_t1 + Z_t2 + ...
struct KGroup {
  int rank = 0;
  std::vector<int> torsion;

  /// "0", "Z", "Z^2+Z_2", ...
  std::string to_string() const;
};

/// One wallpaper group: K-theory of the 2-dimensional NCCW complex A_2 and
/// its 1-skeleton A_1, plus the sheet count s of F_2.
struct CrystalRecord {
  std::string name;
  std::string relations;  ///< generator relations as tabulated
  std::string fiber;      ///< F_2 as tabulated, e.g. "M_4^2"
  KGroup k0_a2, k1_a2, k0_a1, k1_a1;
  int sheets = 1;
  bool shaded = false;  ///< tabulated as failing matricial stability
};

enum class Certificate { stable_certified, no_certificate };

std::string to_string(Certificate c);

struct RankVerdict {
  bool cond_i = false;   ///< rank K0(A1) == rank K0(A2)
  bool cond_ii = false;  ///< rank K1(A1) - rank K1(A2) == s
  /// stable_certified iff cond_i; no_certificate is not a proof of instability.
  Certificate certificate = Certificate::no_certificate;
};

/// The 17 wallpaper groups in tabulated order.
const std::vector<CrystalRecord>& builtin_table();

/// Lookup by name or alias (p4mm, p4mg, p6mm). Throws std::out_of_range.
const CrystalRecord& record(std::string_view name);

/// Canonical table name for an alias, or the input unchanged.
std::string canonical_name(std::string_view name);

RankVerdict check_rank_conditions(const CrystalRecord& rec);

struct ClassifiedRow {
  const CrystalRecord* rec = nullptr;
  RankVerdict verdict;
};

struct Classification {
  std::vector<ClassifiedRow> rows;
  /// Transcription consistency failures: cond_i != cond_ii, or certificate
  /// disagreeing with the shading. Never corrected silently.
  std::vector<std::string> failures;

  bool consistent() const { return failures.empty(); }
};

Classification classify(const std::vector<CrystalRecord>& table);
Classification classify_all();

}  // namespace stablab::crystal
