#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "qml/classfield.hpp"
#include "qml/lfunction.hpp"
#include "qml/quadfield.hpp"

namespace qml {

enum class Provenance { kPaperTable, kExternalImport, kDerivedGeometric };

std::string to_string(Provenance p);
Provenance parse_provenance(std::string_view text);

struct EigenRecord {
  PrimeIdeal ideal;
  QElem alpha;  // Hecke eigenvalue c_t
  Provenance provenance = Provenance::kExternalImport;
  std::string source;  // file:line
};

struct EigenTable {
  std::map<PrimeIdeal, EigenRecord> records;

  const EigenRecord* find(const PrimeIdeal& t) const;
  /// Throws kDuplicate if the ideal is already present.
  void insert(EigenRecord rec);
  /// Throws kDuplicate on overlapping ideals.
  void merge(const EigenTable& other);
  std::set<Provenance> provenances() const;
};

/// CSV rows `label,u,v,d` meaning alpha = (u + v sqrt5)/d. Blank lines and
/// `#` comments are skipped; a comment `# provenance: <name>` sets the
/// provenance of the rows that follow. Throws kParse, kDuplicate, kNonIntegral.
EigenTable parse_eigen_table(std::istream& in, const std::string& source,
                             Provenance initial = Provenance::kExternalImport);
EigenTable load_eigen_table(const std::filesystem::path& path,
                            Provenance initial = Provenance::kExternalImport);
void write_eigen_table(std::ostream& out, const EigenTable& table);

/// Directory holding the bundled data files: $QML_DATA_DIR if set, else the
/// source tree's data/.
std::filesystem::path data_dir();
/// Published rows merged with the derived small-prime records.
EigenTable load_bundled_table();

/// Count reports needed to check the given primes: p^f for every ideal of
/// the test set and, with charpoly, p^2 for split p and p^4 (deep) for inert p.
std::set<std::uint64_t> required_report_sizes(const std::vector<PrimeIdeal>& ideals, bool charpoly, bool deep);
ReportSet compute_reports(const std::set<std::uint64_t>& sizes, unsigned threads = 1);

enum class CharpolyStatus { kEqual, kDiffer, kPartial };
std::string to_string(CharpolyStatus s);

struct CharpolyReport {
  std::uint32_t p = 0;
  SplitKind kind = SplitKind::kSplit;
  bool deep = false;
  CharpolyStatus status = CharpolyStatus::kDiffer;
  std::array<i128, 5> geometric{};                // quartic from the counts
  std::optional<std::array<i128, 5>> from_table;  // product of the table quadratics
  std::string detail;

  bool ok() const { return status != CharpolyStatus::kDiffer; }
};

/// Split p: the quartic from (a_p, a_{p^2}) against the product over both
/// ideals above p. Inert p, deep: the quartic from (a_{p^2}, a_{p^4})
/// against (T^2 - cT + p^6)(T^2 - conj(c)T + p^6). Inert p, shallow:
/// a_{p^2} = Tr c only, reported PARTIAL. Throws kCoverage on missing data.
CharpolyReport charpoly_check(std::uint32_t p, const EigenTable& table, const ReportSet& reports, bool deep);

struct TraceRow {
  PrimeIdeal ideal;
  std::int64_t geometric = 0;  // a_{Nt}
  std::int64_t table = 0;      // Tr alpha
  Provenance provenance = Provenance::kExternalImport;
  bool match() const { return geometric == table; }
};

struct VerdictReport {
  std::string test_set;

  bool condition1 = false;
  std::vector<std::uint64_t> trace_not_div4;   // q with a_q != 0 mod 4
  std::vector<PrimeIdeal> eigen_not_even;      // alpha outside 2 O_F
  std::vector<PrimeIdeal> eigen_non_integral;  // alpha outside O_F

  bool condition2i = false;
  bool bruteforce_nonquartic = false;
  HyperplaneCertificate hyperplane;
  std::vector<F2Point> missing_classes;  // nonzero classes outside the test set

  bool condition2ii = false;
  std::vector<TraceRow> traces;

  std::vector<CharpolyReport> charpoly;
  bool charpoly_ok = true;

  std::vector<std::string> warnings;  // e.g. eigenvalues beyond the Weil bound
  std::set<Provenance> provenances;

  bool pass = false;
  std::string orientation_note;
  std::string conclusion;
};

/// Conditions 1, 2(i), 2(ii) and the determinant record. Throws kCoverage if
/// the table or the reports miss an ideal of the test set.
VerdictReport livne_verify(const TestSet& test_set, const EigenTable& table, const ReportSet& reports);

/// livne_verify followed by charpoly_check at every rational prime under the
/// test set; the verdict requires both.
VerdictReport verify_pipeline(const TestSet& test_set, const EigenTable& table, const ReportSet& reports,
                              bool deep);

nlohmann::json to_json(const CountReport& r);
nlohmann::json to_json(const CharpolyReport& r);
nlohmann::json to_json(const VerdictReport& r);

}  // namespace qml
