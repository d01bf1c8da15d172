#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qml/quadfield.hpp"

namespace qml {

/// Point of F_2^n packed into a word: bit i is the coordinate x_{i+1}.
using F2Point = std::uint64_t;

/// Frobenius image in Gal(K_S/K) = F_2^5, coordinate i recording whether
/// the prime is inert in K(sqrt d_i).
struct GaloisClass {
  F2Point bits = 0;

  int coordinate(int i) const { return static_cast<int>((bits >> i) & 1); }
  std::array<int, 5> coordinates() const;
  static GaloisClass from_coordinates(const std::array<int, 5>& x);
  std::string to_string() const;  // "(1,1,0,0,1)"

  friend bool operator==(GaloisClass, GaloisClass) = default;
};

/// d_1..d_5 = 3(sqrt5 - 5)/2, -3, -(sqrt5 + 5)/2, 3 sqrt5, 2. With +3 in the
/// second slot the five classes would be dependent modulo squares.
const std::array<QElem, 5>& quadratic_basis();

/// Residue symbol of d at t: the image of d in O_F/t raised to (Nt - 1)/2.
/// Throws kDInIdeal if d lies in t; kPrecondition if t lies over 2.
int quadratic_symbol(const QElem& d, const PrimeIdeal& t);

/// Throws kPrecondition unless t is coprime to 30.
GaloisClass galois_class(const PrimeIdeal& t);

struct TestSetEntry {
  PrimeIdeal ideal;
  GaloisClass cls;
};

struct TestSet {
  std::string name;
  std::vector<TestSetEntry> entries;

  std::vector<F2Point> points() const;
};

/// Classes are computed from the residue symbols; throws on primes over 2, 3, 5.
TestSet make_test_set(std::string name, std::span<const PrimeIdeal> ideals);

/// The 31 primes saturating Gal(K_S/K) \ {0}, in published order.
std::vector<PrimeIdeal> published_test_primes();
/// The published set minus the primes above 701, 449 and 401.
std::vector<PrimeIdeal> reduced_test_primes();

struct SaturationReport {
  bool pass = false;
  std::vector<F2Point> missing;      // nonzero classes not hit
  std::vector<F2Point> duplicates;   // classes hit more than once
  bool contains_zero = false;
  std::vector<std::pair<F2Point, PrimeIdeal>> bijection;  // class -> prime, when pass
};

SaturationReport saturation_check(const TestSet& set);

/// Brute-force test of Definition: every homogeneous degree-n form on F_2^dim
/// vanishing on `points` vanishes on all of F_2^dim. Ranks of the monomial
/// evaluation matrices restricted to `points` and to the whole space are
/// compared. degree in {1..6}, dim <= 6.
bool nonquartic_bruteforce(std::span<const F2Point> points, int degree = 4, int dim = 5);

enum class Certificate { kCertified, kInconclusive };

struct HyperplaneCertificate {
  Certificate verdict = Certificate::kInconclusive;
  std::string reason;
  /// The criterion only forces the conclusion when the n forms are linearly
  /// independent: the complement of the hyperplanes is then an affine space
  /// of 2^(dim-n) points, so the set misses fewer points than the smallest
  /// support of a nonzero degree-n function. Dependent forms leave a larger
  /// complement.
  bool forms_independent = false;
};

/// degree-n hyperplane criterion: n distinct hyperplanes {L_i = 0} contained
/// in points u {0}, plus an extra point of `points` outside all of them.
/// Linear forms are F2Point masks (L(x) = parity(mask & x)).
HyperplaneCertificate nonquartic_hyperplane(std::span<const F2Point> points,
                                            std::span<const F2Point> forms, F2Point extra,
                                            int degree = 4, int dim = 5);

/// Published hyperplanes x2, x4+x5, x1+x3, x1+...+x5 and extra point (0,1,1,0,1).
std::array<F2Point, 4> published_hyperplanes();
F2Point published_extra_point();

}  // namespace qml
