#include <doctest.h>

#include <random>
#include <set>

#include "qml/error.hpp"
#include "qml/finitefield.hpp"

using namespace qml;
using namespace qml::ff;

TEST_CASE("prime field basics") {
  const PrimeField f(11);
  CHECK(f.pow(2, 5) == 10);
  CHECK(f.pow(0, 0) == 1);
  CHECK(f.reduce(-1) == 10);
  CHECK(f.mul(f.inv(7), 7) == 1);
  CHECK_THROWS_AS(f.inv(0), Error);
  CHECK_THROWS_AS(PrimeField(2), Error);
  CHECK_THROWS_AS(PrimeField(15), Error);
  CHECK_THROWS_AS(PrimeField(65537), Error);
}

TEST_CASE("square roots") {
  CHECK(sqrt_mod(5, 11) == 4u);
  CHECK(sqrt_mod(5, 7) == std::nullopt);
  CHECK(sqrt_mod(0, 13) == 0u);

  for (std::uint32_t p : {3u, 7u, 13u, 17u, 41u, 97u, 241u, 257u, 7681u}) {
    int nonres = 0;
    for (std::uint32_t a = 1; a < p; ++a) {
      const auto r = sqrt_mod(a, p);
      if (!r) {
        ++nonres;
        continue;
      }
      CHECK(std::uint64_t{*r} * *r % p == a);
      CHECK(2 * *r <= p);
    }
    CHECK(nonres == static_cast<int>((p - 1) / 2));
    const Residue n = least_nonresidue(p);
    CHECK_FALSE(PrimeField(p).is_square(n));
    for (Residue k = 1; k < n; ++k) CHECK(PrimeField(p).is_square(k));
  }
}

TEST_CASE("enumeration is lexicographic and complete") {
  for (auto [p, f, q] : {std::tuple{7u, 1, 7ull}, {7u, 2, 49ull}, {241u, 2, 58081ull}, {7u, 3, 343ull}}) {
    const GaloisField field(p, f);
    CHECK(field.size() == q);
    std::uint64_t i = 0;
    GFElem prev{};
    for (const GFElem& x : field.enumerate()) {
      CHECK(field.index(x) == i);
      if (i > 0) {
        // lexicographic on (c_{f-1}, ..., c_0)
        bool less = false;
        for (int k = f - 1; k >= 0; --k)
          if (prev[k] != x[k]) {
            less = prev[k] < x[k];
            break;
          }
        CHECK(less);
      }
      prev = x;
      ++i;
    }
    CHECK(i == q);
  }
}

TEST_CASE("field axioms in every supported degree") {
  std::mt19937_64 rng(5);
  for (auto [p, f] : {std::pair{13u, 1}, {13u, 2}, {7u, 3}, {11u, 3}, {7u, 4}, {13u, 4}}) {
    const GaloisField field(p, f);
    std::uniform_int_distribution<std::uint64_t> pick(0, field.size() - 1);
    for (int t = 0; t < 200; ++t) {
      const GFElem a = field.element(pick(rng)), b = field.element(pick(rng)), c = field.element(pick(rng));
      CHECK(field.mul(a, b) == field.mul(b, a));
      CHECK(field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c)));
      CHECK(field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c)));
      CHECK(field.sub(field.add(a, b), b) == a);
      CHECK(field.add(a, field.neg(a)) == field.zero());
      if (!field.is_zero(a)) CHECK(field.mul(a, field.inv(a)) == field.one());
      CHECK(field.pow(a, field.size()) == a);
      // Frobenius is additive
      CHECK(field.frobenius(field.add(a, b)) == field.add(field.frobenius(a), field.frobenius(b)));
    }
    // no zero divisors, and exactly p elements are fixed by Frobenius
    std::uint64_t fixed = 0, squares = 0;
    for (const GFElem& x : field.enumerate()) {
      fixed += field.frobenius(x) == x;
      squares += field.is_square(x);
    }
    CHECK(fixed == p);
    CHECK(squares == (field.size() + 1) / 2);
    CHECK(field.pow(field.zero(), 0) == field.one());
    CHECK_THROWS_AS(field.inv(field.zero()), Error);
  }
}

TEST_CASE("multiplicative group is cyclic of order q - 1") {
  const GaloisField field(7, 2);
  std::set<std::uint64_t> orders;
  std::uint64_t generators = 0;
  for (std::uint64_t i = 1; i < field.size(); ++i) {
    const GFElem g = field.element(i);
    std::uint64_t k = 1;
    for (GFElem x = g; x != field.one(); x = field.mul(x, g)) ++k;
    generators += k == 48;
  }
  CHECK(generators == 16);  // phi(48)
}

TEST_CASE("explicit realizations are validated") {
  GFSpec bad{.p = 7, .degree = 2, .nonres = 2};  // 2 = 3^2 mod 7
  CHECK_THROWS_AS(GaloisField{bad}, Error);
  GFSpec good{.p = 7, .degree = 2, .nonres = 3};
  CHECK(GaloisField(good).size() == 49);
  GFSpec cubic{.p = 7, .degree = 3, .cubic = {1, 0}};  // x^3 - 1 has the root 1
  CHECK_THROWS_AS(GaloisField{cubic}, Error);
  CHECK_THROWS_AS(GaloisField(7, 5), Error);
  CHECK_THROWS_AS(GaloisField(7, 0), Error);
}

TEST_CASE("prime power factorization") {
  CHECK(factor_prime_power(1) == std::nullopt);
  CHECK(factor_prime_power(12) == std::nullopt);
  auto pp = factor_prime_power(28561);
  REQUIRE(pp);
  CHECK(pp->p == 13);
  CHECK(pp->exponent == 4);
  pp = factor_prime_power(241);
  REQUIRE(pp);
  CHECK(pp->p == 241);
  CHECK(pp->exponent == 1);
}
