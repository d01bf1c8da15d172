#include <doctest.h>

#include <sstream>

#include "qml/error.hpp"
#include "qml/verify.hpp"

using namespace qml;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kOverflow;
}

EigenTable parse(const std::string& text) {
  std::istringstream in(text);
  return parse_eigen_table(in, "inline");
}

// Reports for every norm under the reduced set, computed once.
const ReportSet& shallow_reports() {
  static const ReportSet reports = compute_reports(required_report_sizes(reduced_test_primes(), false, false));
  return reports;
}

const TestSet& reduced_set() {
  static const TestSet set = make_test_set("T'", reduced_test_primes());
  return set;
}

}  // namespace

TEST_CASE("eigenvalue CSV") {
  const EigenTable t = parse(
      "# comment\n"
      "\n"
      "101:45, -598, -476, 1\n"
      "# provenance: paper-table\n"
      "<61,26-sqrt5>,-558,124,1\n"
      "7,-140,0,2\n");
  CHECK(t.records.size() == 3);
  CHECK(t.find(parse_label("101:45"))->alpha == QElem(-598, -476));
  CHECK(t.find(parse_label("101:45"))->provenance == Provenance::kExternalImport);
  CHECK(t.find(parse_label("61:26"))->provenance == Provenance::kPaperTable);
  CHECK(t.find(parse_label("7"))->alpha == QElem(-70));
  CHECK(t.find(parse_label("7"))->source == "inline:6");
  CHECK(t.find(parse_label("11:4")) == nullptr);
  CHECK(t.provenances() == std::set<Provenance>{Provenance::kExternalImport, Provenance::kPaperTable});

  std::ostringstream out;
  write_eigen_table(out, t);
  const EigenTable back = parse(out.str());
  CHECK(back.records.size() == 3);
  for (const auto& [ideal, rec] : t.records) {
    CHECK(back.find(ideal)->alpha == rec.alpha);
    CHECK(back.find(ideal)->provenance == rec.provenance);
  }
}

TEST_CASE("eigenvalue CSV errors") {
  CHECK(code_of([] { parse("101:45,1,2\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse("101:45,1,x,1\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse("101:46,1,1,1\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse("101:45,1,1,0\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse("# provenance: rumor\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse("101:45,1,0,2\n"); }) == ErrorCode::kNonIntegral);
  CHECK(code_of([] { parse("101:45,1,1,1\n<101,45-sqrt5>,2,2,1\n"); }) == ErrorCode::kDuplicate);
  CHECK(code_of([] { load_eigen_table("/nonexistent/table.csv"); }) == ErrorCode::kCoverage);
  EigenTable a = parse("7,2,0,1\n");
  CHECK(code_of([&] { a.merge(parse("7,4,0,1\n")); }) == ErrorCode::kDuplicate);
}

TEST_CASE("bundled data covers the reduced set") {
  const EigenTable t = load_bundled_table();
  for (const PrimeIdeal& ideal : reduced_test_primes()) {
    REQUIRE(t.find(ideal) != nullptr);
    CHECK(t.find(ideal)->alpha.is_even());
  }
  CHECK(t.find(parse_label("101:45"))->provenance == Provenance::kPaperTable);
  CHECK(t.find(parse_label("11:4"))->provenance == Provenance::kDerivedGeometric);
  CHECK(t.find(parse_label("701:53")) == nullptr);
}

TEST_CASE("report sizes") {
  const std::vector<PrimeIdeal> ideals{parse_label("11:4"), parse_label("7")};
  CHECK(required_report_sizes(ideals, false, false) == std::set<std::uint64_t>{11, 49});
  CHECK(required_report_sizes(ideals, true, false) == std::set<std::uint64_t>{11, 49, 121});
  CHECK(required_report_sizes(ideals, true, true) == std::set<std::uint64_t>{11, 49, 121, 2401});
}

TEST_CASE("verdict on the reduced set") {
  const VerdictReport r = livne_verify(reduced_set(), load_bundled_table(), shallow_reports());
  CHECK(r.condition1);
  CHECK(r.condition2ii);
  CHECK(r.traces.size() == 28);
  // the reduced set misses three classes, which is too many for degree 4
  CHECK_FALSE(r.bruteforce_nonquartic);
  CHECK_FALSE(r.condition2i);
  CHECK(r.missing_classes.size() == 3);
  CHECK(r.hyperplane.verdict == Certificate::kCertified);
  CHECK_FALSE(r.hyperplane.forms_independent);
  CHECK_FALSE(r.pass);
  CHECK(r.warnings.empty());
  CHECK(r.conclusion.empty());
}

TEST_CASE("tampering is detected") {
  EigenTable t = load_bundled_table();
  t.records.at(parse_label("101:45")).alpha = QElem(-597, -476);
  const VerdictReport r = livne_verify(reduced_set(), t, shallow_reports());
  CHECK_FALSE(r.condition2ii);
  CHECK_FALSE(r.condition1);
  REQUIRE(r.eigen_not_even.size() == 1);
  CHECK(render_label(r.eigen_not_even[0]) == "101:45");
  int mismatches = 0;
  for (const TraceRow& row : r.traces) mismatches += !row.match();
  CHECK(mismatches == 1);
}

TEST_CASE("global conjugation does not change the verdict") {
  EigenTable t = load_bundled_table();
  for (auto& [ideal, rec] : t.records) rec.alpha = rec.alpha.conj();
  const VerdictReport a = livne_verify(reduced_set(), load_bundled_table(), shallow_reports());
  const VerdictReport b = livne_verify(reduced_set(), t, shallow_reports());
  CHECK(a.condition1 == b.condition1);
  CHECK(a.condition2i == b.condition2i);
  CHECK(a.condition2ii == b.condition2ii);
  CHECK(b.condition2ii);
}

TEST_CASE("removing the extra point leaves the hyperplane test inconclusive") {
  auto primes = reduced_test_primes();
  std::erase(primes, parse_label("29:11"));
  const VerdictReport r = livne_verify(make_test_set("T''", primes), load_bundled_table(), shallow_reports());
  CHECK(r.hyperplane.verdict == Certificate::kInconclusive);
  CHECK_FALSE(r.condition2i);
}

TEST_CASE("the full set with consistent data passes") {
  const auto primes = published_test_primes();
  ReportSet reports = shallow_reports();
  for (std::uint64_t q : {401ull, 449ull, 701ull}) reports.emplace(q, complete_report(q));
  EigenTable t;
  for (const PrimeIdeal& ideal : primes) {
    // alpha = a/2 is rational with the right trace, and even because 4 | a
    const std::int64_t a = ideal_trace(ideal, reports);
    t.insert({ideal, QElem(a / 2), Provenance::kExternalImport, "synthetic"});
  }
  const VerdictReport r = livne_verify(make_test_set("T", primes), t, reports);
  CHECK(r.condition1);
  CHECK(r.condition2i);
  CHECK(r.condition2ii);
  CHECK(r.pass);
  CHECK(r.missing_classes.empty());
}

TEST_CASE("coverage is checked before anything else") {
  EigenTable t = load_bundled_table();
  t.records.erase(parse_label("61:26"));
  CHECK(code_of([&] { livne_verify(reduced_set(), t, shallow_reports()); }) == ErrorCode::kCoverage);
  ReportSet reports = shallow_reports();
  reports.erase(61);
  CHECK(code_of([&] { livne_verify(reduced_set(), load_bundled_table(), reports); }) == ErrorCode::kCoverage);
  CHECK(code_of([&] { livne_verify(make_test_set("T", published_test_primes()), load_bundled_table(),
                                   shallow_reports()); }) == ErrorCode::kCoverage);
}

TEST_CASE("characteristic polynomials") {
  const EigenTable table = load_bundled_table();
  const ReportSet reports = compute_reports({7, 49, 101, 2401, 10201});

  const CharpolyReport split = charpoly_check(101, table, reports, false);
  CHECK(split.status == CharpolyStatus::kEqual);
  CHECK(split.geometric[2] == 1285326);

  const CharpolyReport deep = charpoly_check(7, table, reports, true);
  CHECK(deep.deep);
  CHECK(deep.status == CharpolyStatus::kEqual);
  CHECK(deep.geometric == std::array<i128, 5>{1, 140, 240198, 16470860, 13841287201});

  const CharpolyReport shallow = charpoly_check(7, table, reports, false);
  CHECK(shallow.status == CharpolyStatus::kPartial);
  CHECK(shallow.ok());

  // which root sits on which ideal does not matter
  EigenTable swapped = table;
  std::swap(swapped.records.at(parse_label("101:45")).alpha, swapped.records.at(parse_label("101:56")).alpha);
  CHECK(charpoly_check(101, swapped, reports, false).status == CharpolyStatus::kEqual);

  // same trace and parity, different norm: only the quartic notices
  EigenTable tampered = table;
  tampered.records.at(parse_label("101:45")).alpha = QElem(-598, -474);
  CHECK(charpoly_check(101, tampered, reports, false).status == CharpolyStatus::kDiffer);
  tampered.records.at(parse_label("101:56")).alpha = QElem(-598, 474);
  CHECK(charpoly_check(101, tampered, reports, false).status == CharpolyStatus::kDiffer);

  tampered = table;
  tampered.records.at(parse_label("7")).alpha = QElem(-68, 0);
  CHECK(charpoly_check(7, tampered, reports, false).status == CharpolyStatus::kDiffer);

  CHECK(code_of([&] { charpoly_check(11, table, reports, false); }) == ErrorCode::kCoverage);
  CHECK(code_of([&] { charpoly_check(5, table, reports, false); }) == ErrorCode::kBadPrime);
}

TEST_CASE("verdict JSON") {
  const VerdictReport r = livne_verify(reduced_set(), load_bundled_table(), shallow_reports());
  const nlohmann::json j = to_json(r);
  for (const char* key : {"condition1", "condition2i", "condition2ii", "determinant", "charpoly", "warnings", "verdict",
                          "orientation_note", "conclusion", "test_set", "provenances"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["verdict"] == "FAIL");
  CHECK(j["condition2i"]["pass"] == false);
  CHECK(j["condition2i"]["hyperplane"] == "CERTIFIED");
  CHECK(j["condition2ii"]["traces"].size() == 28);

  const nlohmann::json c = to_json(shallow_reports().at(101));
  CHECK(c["n_resolved"] == 2319248);
  CHECK(c["a"] == -1196);
  CHECK(c["h"] == 125);
  CHECK(to_json(shallow_reports().at(49)).contains("h_reference") == false);
}

TEST_CASE("provenance names") {
  for (auto p : {Provenance::kPaperTable, Provenance::kExternalImport, Provenance::kDerivedGeometric})
    CHECK(parse_provenance(to_string(p)) == p);
}
