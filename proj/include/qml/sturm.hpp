#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qml/quadfield.hpp"
#include "qml/verify.hpp"

namespace qml {

/// nu = (5b + a sqrt5)/10 in the dual lattice O_F^v = O_F / sqrt5, a = b mod 2.
struct TotPosElement {
  std::int64_t a = 0;
  std::int64_t b = 0;

  std::int64_t trace() const { return b; }
  QElem value() const { return QElem(5 * b, a, 10); }
  /// nu * sqrt5 = (a + b sqrt5)/2, which generates the ideal attached to nu.
  QElem generator() const { return QElem(a, b, 2); }
  std::int64_t ideal_norm() const { return (5 * b * b - a * a) / 4; }
};

/// All totally positive nu with 1 <= trace <= B, ordered by (b, a).
std::vector<TotPosElement> enumerate_totally_positive(std::int64_t bound);

struct GeneratedIdeal {
  QElem generator;  // canonical associate of nu * sqrt5
  std::int64_t norm = 0;
  TotPosElement witness;  // first element of least trace
};

/// Distinct ideals (nu sqrt5) for nu enumerated at the bound, in order of
/// first appearance. Ideals are identified through canonical_associate.
std::vector<GeneratedIdeal> generated_ideals(std::int64_t bound);

struct RequiredPrime {
  PrimeIdeal ideal;
  GeneratedIdeal source;
};

/// The prime ideals among generated_ideals(bound).
std::vector<RequiredPrime> required_prime_ideals(std::int64_t bound);

struct ParityCoverage {
  std::int64_t bound = 0;
  std::size_t checked = 0;
  std::vector<PrimeIdeal> missing;
  std::vector<PrimeIdeal> odd;

  bool pass() const { return missing.empty() && odd.empty(); }
  /// "PASS", "FAIL:COVERAGE", "FAIL:PARITY" or "FAIL:COVERAGE+PARITY".
  std::string status() const;
};

/// Every required prime coprime to 30 must be in the table with an
/// eigenvalue in 2 O_F.
ParityCoverage parity_coverage(const EigenTable& table, std::int64_t bound);

/// A form of parallel weight 2k vanishing to order a at all cusps and a + b
/// at infinity is zero once b + 10a > 12k.
bool sturm_zero_predicate(std::int64_t k, std::int64_t a, std::int64_t b);

/// The constants behind the trace bound for weight (2,4) and level 6 sqrt5.
struct SturmChain {
  std::pair<int, int> weight{2, 4};
  std::pair<int, int> product_weight{6, 6};  // h = f(z1,z2) f(z2,z1), twisted
  std::int64_t index = 0;                    // [Gamma_0(3) : Gamma_0(6 sqrt5)]
  std::int64_t parallel_weight = 0;          // 6 * index
  std::int64_t k = 0;                        // parallel_weight / 2
  std::int64_t a = 4;                        // vanishing order at every cusp
  std::int64_t b_slope = 6;                  // b = 6 b~ + 32: three times the
  std::int64_t b_offset = 32;                //   trace 2 b~ + 12, less a
  std::int64_t paper_value = 168;
  std::int64_t strict_value = 0;  // least b~ satisfying the predicate
  bool discrepancy = false;

  std::int64_t b_for(std::int64_t b_tilde) const { return b_slope * b_tilde + b_offset; }
};

SturmChain sturm_trace_bound();

/// [Gamma_0(3) : Gamma_0(prod t^r)] = prod N(t)^(r-1) (N(t) + 1). Primes must
/// be coprime to 3 and exponents positive.
std::int64_t congruence_index(const std::vector<std::pair<PrimeIdeal, int>>& level);

/// 2^(number of primes) for a squarefree level.
std::int64_t cusp_count(const std::vector<PrimeIdeal>& level);

}  // namespace qml
