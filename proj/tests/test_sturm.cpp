#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "qml/error.hpp"
#include "qml/sturm.hpp"

using namespace qml;

namespace {

oracle::Hnf hnf_of(const QElem& g) {
  const auto [x, y] = g.omega_coords();
  return oracle::principal(x, y);
}

EigenTable even_table(const std::vector<RequiredPrime>& primes) {
  EigenTable t;
  for (const RequiredPrime& rp : primes) {
    if (rp.ideal.p == 2 || rp.ideal.p == 3 || rp.ideal.p == 5) continue;
    t.insert({rp.ideal, QElem(2, 4), Provenance::kExternalImport, "synthetic"});
  }
  return t;
}

}  // namespace

TEST_CASE("totally positive elements of the dual lattice") {
  CHECK(enumerate_totally_positive(0).empty());
  CHECK(enumerate_totally_positive(1).size() == 2);
  CHECK(enumerate_totally_positive(2).size() == 7);
  for (const TotPosElement& nu : enumerate_totally_positive(30)) {
    CHECK(nu.value().is_totally_positive());
    CHECK(nu.value().trace() == Rational(nu.trace()));
    CHECK(nu.generator() == nu.value() * QElem(0, 1));
    CHECK(nu.generator().is_integral());
    CHECK(Rational(-nu.ideal_norm()) == nu.generator().norm());  // the generator has negative norm
    CHECK((nu.a - nu.b) % 2 == 0);
  }
  // nothing totally positive is skipped: scan a box and compare
  std::size_t box = 0;
  for (std::int64_t b = 1; b <= 12; ++b)
    for (std::int64_t a = -40; a <= 40; ++a)
      if ((a - b) % 2 == 0 && QElem(5 * b, a, 10).is_totally_positive()) ++box;
  CHECK(box == enumerate_totally_positive(12).size());
}

TEST_CASE("generated ideals match an ideal-first scan") {
  for (std::int64_t bound : {1, 2, 5, 9, 14, 20}) {
    std::set<oracle::Hnf> ours;
    for (const GeneratedIdeal& gi : generated_ideals(bound)) {
      const oracle::Hnf h = hnf_of(gi.generator);
      CHECK(h.norm() == gi.norm);
      CHECK(gi.witness.trace() <= bound);
      ours.insert(h);
    }
    CHECK(ours.size() == generated_ideals(bound).size());
    CHECK(ours == oracle::ideals_with_small_generator(bound));
  }
}

TEST_CASE("small traces") {
  const auto one = generated_ideals(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].norm == 1);  // omega is a unit
  CHECK(required_prime_ideals(1).empty());

  std::set<std::string> labels;
  for (const RequiredPrime& rp : required_prime_ideals(2)) {
    labels.insert(render_label(rp.ideal));
    CHECK(rp.source.witness.trace() == 2);
  }
  CHECK(labels == std::set<std::string>{"2", "sqrt5"});
}

TEST_CASE("growing the bound only appends") {
  const auto small = generated_ideals(15);
  const auto large = generated_ideals(25);
  REQUIRE(small.size() < large.size());
  for (std::size_t i = 0; i < small.size(); ++i) CHECK(small[i].generator == large[i].generator);
  CHECK(required_prime_ideals(15).size() <= required_prime_ideals(25).size());
}

TEST_CASE("required primes are prime and contain their generator") {
  for (const RequiredPrime& rp : required_prime_ideals(40)) {
    CHECK(static_cast<std::int64_t>(rp.ideal.norm()) == rp.source.norm);
    CHECK(rp.ideal.contains(rp.source.generator));
  }
}

TEST_CASE("parity coverage") {
  const auto primes = required_prime_ideals(30);
  EigenTable table = even_table(primes);
  ParityCoverage rep = parity_coverage(table, 30);
  CHECK(rep.pass());
  CHECK(rep.status() == "PASS");
  CHECK(rep.checked == table.records.size());

  // an odd eigenvalue
  EigenTable odd = table;
  odd.records.begin()->second.alpha = QElem(1, 1, 2);
  rep = parity_coverage(odd, 30);
  CHECK(rep.status() == "FAIL:PARITY");
  CHECK(rep.odd.size() == 1);

  // a missing ideal
  EigenTable sparse = table;
  sparse.records.erase(sparse.records.begin());
  rep = parity_coverage(sparse, 30);
  CHECK(rep.status() == "FAIL:COVERAGE");
  CHECK(rep.missing.size() == 1);

  sparse.records.begin()->second.alpha = QElem(3);
  CHECK(parity_coverage(sparse, 30).status() == "FAIL:COVERAGE+PARITY");

  // the bundled data reaches only a short way
  CHECK_FALSE(parity_coverage(load_bundled_table(), 168).pass());
}

TEST_CASE("vanishing criterion and the trace bound") {
  CHECK(sturm_zero_predicate(90, 4, 1081 - 40));
  CHECK_FALSE(sturm_zero_predicate(90, 4, 1080 - 40));
  CHECK_THROWS_AS(sturm_zero_predicate(-1, 0, 0), Error);

  const SturmChain c = sturm_trace_bound();
  CHECK(c.index == 30);
  CHECK(c.parallel_weight == 180);
  CHECK(c.k == 90);
  CHECK(c.b_for(168) == 1040);
  CHECK(c.paper_value == 168);
  CHECK(c.strict_value == 169);
  CHECK(c.discrepancy);
  CHECK(sturm_zero_predicate(c.k, c.a, c.b_for(c.strict_value)));
  CHECK_FALSE(sturm_zero_predicate(c.k, c.a, c.b_for(c.strict_value - 1)));
}

TEST_CASE("index and cusps") {
  const PrimeIdeal two = parse_label("2"), root5 = parse_label("sqrt5"), eleven = parse_label("11:4");
  CHECK(congruence_index({{two, 1}}) == 5);
  CHECK(congruence_index({{two, 2}, {root5, 1}}) == 4 * 5 * 6);
  CHECK(congruence_index({{eleven, 1}}) == 12);
  CHECK(congruence_index({}) == 1);
  CHECK_THROWS_AS(congruence_index({{parse_label("3"), 1}}), Error);
  CHECK_THROWS_AS(congruence_index({{two, 0}}), Error);
  CHECK(cusp_count({two, root5}) == 4);
  CHECK(cusp_count({}) == 1);
  CHECK_THROWS_AS(cusp_count({two, two}), Error);
}
