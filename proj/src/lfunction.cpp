#include "qml/lfunction.hpp"

namespace qml {

namespace {

i128 cube(i128 x) { return x * x * x; }

// floor(a / b) for b > 0
i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

}  // namespace

TraceSolution extract_h_and_trace(std::uint64_t q_in, std::int64_t n_resolved) {
  if (q_in <= 20) {
    throw Error(ErrorCode::kPrecondition, "h_q is only determined by the Weil bound for q > 20");
  }
  const i128 q = q_in;
  const i128 step = q * (q + 1);
  const i128 base = 1 + cube(q) - n_resolved;  // a = base + h * step
  // nearest candidate, then every h within +-2
  const i128 guess = floor_div(-base + step / 2, step);
  std::optional<TraceSolution> found;
  int admissible = 0;
  for (i128 h = guess - 2; h <= guess + 2; ++h) {
    const i128 a = base + h * step;
    if (a * a <= 16 * cube(q)) {
      ++admissible;
      found = TraceSolution{narrow64(h), narrow64(a)};
    }
  }
  if (admissible == 0) {
    throw Error(ErrorCode::kNoSolution, "no h with |a| <= 4 q^(3/2) at q = " + std::to_string(q_in));
  }
  if (admissible > 1) {
    throw Error(ErrorCode::kAmbiguous, "several h satisfy the Weil bound at q = " + std::to_string(q_in));
  }
  if (found->h % 2 == 0) {
    throw Error(ErrorCode::kParity, "h_q = " + std::to_string(found->h) + " is even at q = " + std::to_string(q_in));
  }
  if (q_in % 15 == 1 && found->h != 141) {
    throw Error(ErrorCode::kParity, "h_q = " + std::to_string(found->h) + " != 141 at q = 1 mod 15");
  }
  return *found;
}

std::int64_t trace_from_h(std::uint64_t q_in, std::int64_t n_resolved, std::int64_t h) {
  const i128 q = q_in;
  const i128 a = 1 + i128{h} * q * (q + 1) + cube(q) - n_resolved;
  if (a * a > 16 * cube(q)) {
    throw Error(ErrorCode::kNoSolution, "h = " + std::to_string(h) + " gives |a| > 4 q^(3/2) at q = " + std::to_string(q_in));
  }
  return narrow64(a);
}

std::uint64_t h_reference(std::uint64_t q) {
  if (q % 3 == 0 || q % 5 == 0) throw Error(ErrorCode::kPrecondition, "h_q needs gcd(q, 15) = 1");
  std::uint64_t r = 21;
  while (r % 15 != q % 15 || !is_prime(r)) ++r;
  return r;
}

CountReport complete_report(std::uint64_t q, unsigned threads) {
  CountReport r = count_resolved_X(q, threads);
  if (q > 20) {
    const TraceSolution s = extract_h_and_trace(q, r.n_resolved);
    r.h = s.h;
    r.a = s.a;
    return r;
  }
  const std::uint64_t ref = h_reference(q);
  const CountReport rr = count_resolved_X(ref, threads);
  r.h = extract_h_and_trace(ref, rr.n_resolved).h;
  r.a = trace_from_h(q, r.n_resolved, *r.h);
  r.h_reference = ref;
  return r;
}

std::array<i128, 5> QuarticLPoly::coefficients() const {
  const i128 qq = q;
  return {1, -i128{a}, m, -i128{a} * cube(qq), cube(qq) * cube(qq)};
}

QuarticLPoly l_poly(std::uint64_t q, std::int64_t a_q, std::int64_t a_q2) {
  const i128 num = i128{a_q} * a_q - a_q2;
  if (num % 2 != 0) {
    throw Error(ErrorCode::kParity, "a_q^2 and a_{q^2} have different parity at q = " + std::to_string(q));
  }
  return QuarticLPoly{q, a_q, narrow64(num / 2), std::nullopt};
}

QuarticLPoly split_l_poly(const QuarticLPoly& poly) {
  const i128 q3 = cube(i128{poly.q});
  // alpha * conj(alpha) = m - 2 q^3, alpha + conj(alpha) = a
  const i128 prod = i128{poly.m} - 2 * q3;
  const i128 a = poly.a;
  const i128 disc = a * a - 4 * prod;  // = 5 b^2
  auto fail = [&](const std::string& why) {
    return Error(ErrorCode::kNotSplit, "L-polynomial at q = " + std::to_string(poly.q) + " " + why);
  };
  if (disc < 0 || disc % 5 != 0) throw fail("has discriminant not of the form 5 b^2");
  const i128 b2 = disc / 5;
  const i128 b = isqrt(b2);
  if (b * b != b2) throw fail("has non-square b^2 = " + to_string(b2));
  if ((a - b) % 2 != 0) throw fail("gives alpha outside O_F");
  QuarticLPoly out = poly;
  const QElem alpha(narrow64(a), narrow64(b), 2);
  out.alpha = std::make_pair(alpha, alpha.conj());
  return out;
}

std::int64_t ideal_trace(const PrimeIdeal& t, const ReportSet& reports) {
  if (t.p == 2 || t.p == 3 || t.p == 5) {
    throw Error(ErrorCode::kBadPrime, "no Frobenius trace at the bad prime " + render_label(t));
  }
  const std::uint64_t q = t.norm();
  const auto it = reports.find(q);
  if (it == reports.end()) {
    throw Error(ErrorCode::kMissingReport, "no count report for q = " + std::to_string(q));
  }
  if (!it->second.a) throw Error(ErrorCode::kMissingReport, "report for q = " + std::to_string(q) + " has no trace");
  return *it->second.a;
}

std::optional<std::array<i128, 5>> product_of_quadratics(const QElem& c1, const QElem& c2, i128 n) {
  // (T^2 - c1 T + n)(T^2 - c2 T + n) = T^4 - (c1+c2) T^3 + (c1 c2 + 2n) T^2 - n (c1+c2) T + n^2
  const QElem s = c1 + c2;
  const QElem pr = c1 * c2;
  if (s.v() != 0 || s.d() != 1 || pr.v() != 0 || pr.d() != 1) return std::nullopt;
  return std::array<i128, 5>{1, -i128{s.u()}, i128{pr.u()} + 2 * n, -n * s.u(), n * n};
}

}  // namespace qml
