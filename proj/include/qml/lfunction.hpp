#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "qml/error.hpp"
#include "qml/pointcount.hpp"
#include "qml/quadfield.hpp"

namespace qml {

/// Reports keyed by q.
using ReportSet = std::map<std::uint64_t, CountReport>;

struct TraceSolution {
  std::int64_t h = 0;
  std::int64_t a = 0;
};

/// Lefschetz: a = 1 + h q (1 + q) + q^3 - n_resolved, with h the unique
/// integer giving a^2 <= 16 q^3. Requires q > 20 so the window is unique.
/// Throws kNoSolution / kAmbiguous (counting bugs), kPrecondition, and
/// kParity if h is even or h != 141 for q = 1 mod 15.
TraceSolution extract_h_and_trace(std::uint64_t q, std::int64_t n_resolved);

/// a from the Lefschetz formula with h given; throws kNoSolution if a
/// violates the Weil bound.
std::int64_t trace_from_h(std::uint64_t q, std::int64_t n_resolved, std::int64_t h);

/// Frobenius acts on H^2 through Gal(Q(zeta_15)/Q), so h_q depends only on
/// q mod 15. Returns the least prime q' > 20 with q' = q mod 15.
std::uint64_t h_reference(std::uint64_t q);

/// Runs count_resolved_X and fills in h and a. For q <= 20 the window is too
/// wide, so h is taken from the count at h_reference(q).
CountReport complete_report(std::uint64_t q, unsigned threads = 1);

/// Characteristic polynomial of Frobenius on H^3 over F_q:
///   T^4 - a T^3 + m T^2 - a q^3 T + q^6
/// with an optional factorization (T^2 - alpha T + q^3)(T^2 - conj(alpha) T + q^3).
struct QuarticLPoly {
  std::uint64_t q = 0;
  std::int64_t a = 0;
  std::int64_t m = 0;
  std::optional<std::pair<QElem, QElem>> alpha;

  /// Coefficients of T^4..T^0.
  std::array<i128, 5> coefficients() const;
};

/// m = (a_q^2 - a_{q^2}) / 2. Throws kParity if a_q^2 and a_{q^2} differ in parity.
QuarticLPoly l_poly(std::uint64_t q, std::int64_t a_q, std::int64_t a_q2);

/// alpha = (a + b sqrt5)/2 with b^2 = (a^2 - 4(m - 2q^3))/5, b >= 0.
/// Throws kNotSplit when the quartic does not factor that way over Q(sqrt5).
QuarticLPoly split_l_poly(const QuarticLPoly& poly);

/// Tr_{F/Q} of the Frobenius trace at t: a_p for split t, a_{p^2} for inert t.
std::int64_t ideal_trace(const PrimeIdeal& t, const ReportSet& reports);

/// Expand (T^2 - c1 T + n)(T^2 - c2 T + n) with c1, c2 in O_F; returns rational
/// integer coefficients T^4..T^0, or nullopt if they are not rational.
std::optional<std::array<i128, 5>> product_of_quadratics(const QElem& c1, const QElem& c2, i128 n);

}  // namespace qml
