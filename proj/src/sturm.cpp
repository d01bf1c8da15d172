#include "qml/sturm.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "qml/error.hpp"

namespace qml {

std::vector<TotPosElement> enumerate_totally_positive(std::int64_t bound) {
  std::vector<TotPosElement> out;
  for (std::int64_t b = 1; b <= bound; ++b) {
    // a^2 < 5 b^2 and a = b mod 2
    std::int64_t amax = narrow64(isqrt(i128{5} * b * b - 1));
    if ((amax - b) % 2 != 0) --amax;
    for (std::int64_t a = -amax; a <= amax; a += 2) out.push_back({a, b});
  }
  return out;
}

namespace {

struct AssociateLess {
  bool operator()(const QElem& x, const QElem& y) const {
    return std::make_tuple(x.u(), x.v(), x.d()) < std::make_tuple(y.u(), y.v(), y.d());
  }
};

// The prime ideal generated by g of the given norm, if (g) is prime.
std::optional<PrimeIdeal> as_prime(const QElem& g, std::int64_t norm) {
  if (norm == 5) return PrimeIdeal{5, SplitKind::kRamified, 0};
  if (is_prime(static_cast<std::uint64_t>(norm))) {
    // a prime norm other than 5 lies under a split prime
    for (const PrimeIdeal& t : prime_ideals_above(static_cast<std::uint32_t>(norm)))
      if (t.contains(g)) return t;
    return std::nullopt;
  }
  const std::int64_t p = narrow64(isqrt(norm));
  if (p * p == norm && is_prime(static_cast<std::uint64_t>(p))) {
    const PrimeIdeal t = splitting_type(static_cast<std::uint32_t>(p));
    if (t.kind == SplitKind::kInert) return t;
  }
  return std::nullopt;
}

}  // namespace

std::vector<GeneratedIdeal> generated_ideals(std::int64_t bound) {
  std::vector<GeneratedIdeal> out;
  std::map<QElem, std::size_t, AssociateLess> seen;
  for (const TotPosElement& nu : enumerate_totally_positive(bound)) {
    const QElem g = canonical_associate(nu.generator());
    if (seen.contains(g)) continue;
    seen.emplace(g, out.size());
    out.push_back({g, nu.ideal_norm(), nu});
  }
  return out;
}

std::vector<RequiredPrime> required_prime_ideals(std::int64_t bound) {
  std::vector<RequiredPrime> out;
  for (const GeneratedIdeal& gi : generated_ideals(bound)) {
    if (const auto t = as_prime(gi.generator, gi.norm)) out.push_back({*t, gi});
  }
  return out;
}

std::string ParityCoverage::status() const {
  if (pass()) return "PASS";
  if (!missing.empty() && !odd.empty()) return "FAIL:COVERAGE+PARITY";
  return missing.empty() ? "FAIL:PARITY" : "FAIL:COVERAGE";
}

ParityCoverage parity_coverage(const EigenTable& table, std::int64_t bound) {
  ParityCoverage rep;
  rep.bound = bound;
  for (const RequiredPrime& rp : required_prime_ideals(bound)) {
    const std::uint32_t p = rp.ideal.p;
    if (p == 2 || p == 3 || p == 5) continue;
    ++rep.checked;
    const EigenRecord* rec = table.find(rp.ideal);
    if (rec == nullptr) {
      rep.missing.push_back(rp.ideal);
    } else if (!rec->alpha.is_integral() || !rec->alpha.is_even()) {
      rep.odd.push_back(rp.ideal);
    }
  }
  return rep;
}

bool sturm_zero_predicate(std::int64_t k, std::int64_t a, std::int64_t b) {
  if (k < 0 || a < 0 || b < 0) throw Error(ErrorCode::kPrecondition, "vanishing orders and weight must be nonnegative");
  return b + 10 * a > 12 * k;
}

SturmChain sturm_trace_bound() {
  SturmChain c;
  const PrimeIdeal two = splitting_type(2);
  const PrimeIdeal root5 = splitting_type(5);
  c.index = congruence_index({{two, 1}, {root5, 1}});
  c.parallel_weight = c.product_weight.first * c.index;
  c.k = c.parallel_weight / 2;
  c.strict_value = 0;
  while (!sturm_zero_predicate(c.k, c.a, c.b_for(c.strict_value))) ++c.strict_value;
  c.discrepancy = !sturm_zero_predicate(c.k, c.a, c.b_for(c.paper_value));
  return c;
}

std::int64_t congruence_index(const std::vector<std::pair<PrimeIdeal, int>>& level) {
  std::int64_t index = 1;
  for (const auto& [t, r] : level) {
    if (t.p == 3) throw Error(ErrorCode::kPrecondition, "level primes must be coprime to 3");
    if (r < 1) throw Error(ErrorCode::kPrecondition, "exponents must be positive");
    const auto n = static_cast<std::int64_t>(t.norm());
    for (int i = 1; i < r; ++i) index *= n;
    index *= n + 1;
  }
  return index;
}

std::int64_t cusp_count(const std::vector<PrimeIdeal>& level) {
  std::vector<PrimeIdeal> sorted = level;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::kPrecondition, "level must be squarefree");
  }
  return std::int64_t{1} << level.size();
}

}  // namespace qml
