#include <doctest.h>

#include <random>

#include "qml/error.hpp"
#include "qml/finitefield.hpp"
#include "qml/quadfield.hpp"

using namespace qml;

namespace {

QElem random_elem(std::mt19937_64& rng, bool integral) {
  std::uniform_int_distribution<std::int64_t> coord(-500, 500);
  if (integral) return QElem::from_omega_basis(coord(rng), coord(rng));
  std::uniform_int_distribution<std::int64_t> den(1, 12);
  return QElem(coord(rng), coord(rng), den(rng));
}

}  // namespace

TEST_CASE("norm and trace of a printed eigenvalue") {
  const QElem x(-598, -476);
  CHECK(x.norm() == Rational(598 * 598 - 5 * 476 * 476));
  CHECK(x.norm() == Rational(-775276));
  CHECK(x.trace() == Rational(-1196));
}

TEST_CASE("conjugation and the golden ratio") {
  const QElem w = QElem::omega();
  CHECK(w.conj() == QElem(1, -1, 2));
  CHECK(w * w == w + QElem(1));
  CHECK(w.omega_coords() == std::pair<std::int64_t, std::int64_t>{0, 1});
  CHECK(QElem(2, 0, 4) == QElem(1, 0, 2));
  CHECK(QElem(3, 3, -6) == QElem(-1, -1, 2));
}

TEST_CASE("integrality and evenness") {
  CHECK(QElem(1, 1, 2).is_integral());
  CHECK_FALSE(QElem(1, 0, 2).is_integral());
  CHECK_FALSE(QElem(1, 1, 3).is_integral());
  CHECK(QElem(-598, -476).is_even());
  CHECK(QElem(1, 1).is_even());  // 2 w
  CHECK_FALSE(QElem::omega().is_even());
  CHECK_FALSE(QElem(0, 1).is_even());  // sqrt5 = 2w - 1
}

TEST_CASE("total positivity is exact") {
  CHECK_FALSE(QElem::omega().is_totally_positive());
  CHECK(QElem(3, 1).is_totally_positive());
  CHECK_FALSE(QElem().is_totally_positive());
  CHECK(QElem(9, -4).is_totally_positive());  // a unit: 81 - 80 = 1
  CHECK_FALSE(QElem(-9, 4).is_totally_positive());
  CHECK_FALSE(QElem(2, -1).is_totally_positive());

  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const QElem x = random_elem(rng, false);
    // both embeddings positive iff their sum and product are
    const bool oracle = x.trace() > Rational(0) && x.norm() > Rational(0);
    CHECK(x.is_totally_positive() == oracle);
  }
}

TEST_CASE("field identities on random elements") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const QElem x = random_elem(rng, false), y = random_elem(rng, false);
    CHECK((x * y).norm() == x.norm() * y.norm());
    CHECK((x + y).trace() == x.trace() + y.trace());
    CHECK(x * x.conj() == QElem(x.norm().numerator(), 0, x.norm().denominator()));
    CHECK(x * (y + x) == x * y + x * x);
    CHECK(x - x == QElem());
  }
}

TEST_CASE("splitting types") {
  CHECK(splitting_type(11) == PrimeIdeal{11, SplitKind::kSplit, 4});
  CHECK(splitting_type(7).kind == SplitKind::kInert);
  CHECK(splitting_type(5).kind == SplitKind::kRamified);
  CHECK_THROWS_AS(splitting_type(9), Error);

  for (std::uint32_t p = 3; p < 3000; p += 2) {
    if (!is_prime(p) || p == 5) continue;
    const ff::PrimeField f(p);
    const bool qr = f.pow(5 % p, (p - 1) / 2) == 1;
    const PrimeIdeal t = splitting_type(p);
    CHECK((t.kind == SplitKind::kSplit) == qr);
    if (t.kind == SplitKind::kSplit) {
      CHECK(std::uint64_t{t.c} * t.c % p == 5 % p);
      CHECK(2 * t.c < p);
      CHECK(std::uint64_t{t.c} * (p - t.c) % p == (p - 5 % p) % p);
      CHECK(t.contains(QElem(0, 1) - QElem(t.c)));
      CHECK_FALSE(t.conjugate().contains(QElem(0, 1) - QElem(t.c)));
    }
  }
}

TEST_CASE("primes above p") {
  const auto above61 = prime_ideals_above(61);
  REQUIRE(above61.size() == 2);
  CHECK(render_label(above61[0]) == "61:26");
  CHECK(render_label(above61[1]) == "61:35");
  CHECK(prime_ideals_above(13) == std::vector<PrimeIdeal>{{13, SplitKind::kInert, 0}});
  CHECK(render_label(prime_ideals_above(5).front()) == "sqrt5");
  CHECK(prime_ideals_above(13).front().norm() == 169);
}

TEST_CASE("label grammar and generator notation") {
  for (const char* label : {"61:26", "59:51", "13", "7", "sqrt5", "701:53"}) {
    CHECK(render_label(parse_label(label)) == label);
  }
  CHECK(render_label(parse_ideal("<61,26-sqrt5>")) == "61:26");
  CHECK(render_label(parse_ideal("<59,sqrt5+8>")) == "59:51");
  CHECK(render_label(parse_ideal("⟨31, √5 + 6⟩")) == "31:25");
  CHECK(render_label(parse_ideal("<239, sqrt5 - 31>")) == "239:31");
  CHECK(render_label(parse_ideal("(13)")) == "13");
  CHECK_THROWS_AS(parse_label("61:27"), Error);  // 27^2 != 5 mod 61
  CHECK_THROWS_AS(parse_label("11:x"), Error);
  CHECK_THROWS_AS(parse_label("11"), Error);     // 11 splits
}

TEST_CASE("canonical associates") {
  std::mt19937_64 rng(3);
  const QElem w = QElem::omega();
  for (int i = 0; i < 300; ++i) {
    QElem g = random_elem(rng, true);
    if (g.is_zero()) continue;
    const QElem c = canonical_associate(g);
    CHECK(boost::abs(c.norm()) == boost::abs(g.norm()));
    CHECK(c.sign() > 0);
    QElem h = g;
    for (int k = 0; k < i % 7; ++k) h = h * w;
    if (i % 2) h = -h;
    CHECK(canonical_associate(h) == c);
  }
  CHECK_THROWS_AS(canonical_associate(QElem()), Error);
}
