#pragma once

#include <cstdint>
#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace qml {

using Rational = boost::rational<std::int64_t>;

/// An element (u + v*sqrt5)/d of F = Q(sqrt5), kept in lowest terms with
/// d > 0 and gcd(u, v, d) = 1, so structural equality is field equality.
class QElem {
 public:
  constexpr QElem() = default;
  QElem(std::int64_t u, std::int64_t v = 0, std::int64_t d = 1);

  static QElem omega() { return QElem(1, 1, 2); }
  /// x + y*omega with omega = (1 + sqrt5)/2.
  static QElem from_omega_basis(std::int64_t x, std::int64_t y);

  std::int64_t u() const noexcept { return u_; }
  std::int64_t v() const noexcept { return v_; }
  std::int64_t d() const noexcept { return d_; }

  bool is_zero() const noexcept { return u_ == 0 && v_ == 0; }
  bool is_integral() const noexcept;
  /// Coordinates (x, y) with value x + y*omega; requires is_integral().
  std::pair<std::int64_t, std::int64_t> omega_coords() const;
  /// True iff the element lies in 2*O_F (both omega-coordinates even).
  bool is_even() const;

  QElem conj() const { return QElem(u_, -v_, d_); }
  Rational norm() const;
  Rational trace() const;

  /// Exact sign of the real embedding sqrt5 -> +2.236...
  int sign() const noexcept;
  bool is_totally_positive() const noexcept { return sign() > 0 && conj().sign() > 0; }

  friend QElem operator+(const QElem& a, const QElem& b);
  friend QElem operator-(const QElem& a, const QElem& b);
  friend QElem operator*(const QElem& a, const QElem& b);
  QElem operator-() const { return QElem(-u_, -v_, d_); }

  friend bool operator==(const QElem&, const QElem&) = default;

  std::string to_string() const;

 private:
  std::int64_t u_ = 0;
  std::int64_t v_ = 0;
  std::int64_t d_ = 1;
};

std::ostream& operator<<(std::ostream& os, const QElem& x);

/// Unique associate of g under the unit group {+-omega^k}: the one with
/// g > 0 and |conj g| <= g < omega^2 |conj g|. Requires g != 0.
QElem canonical_associate(const QElem& g);

enum class SplitKind { kSplit, kInert, kRamified };

/// A prime of O_F. Split ideals are <p, sqrt5 - c> with 0 < c < p and
/// c^2 = 5 mod p; the conjugate is <p, sqrt5 - (p - c)>.
struct PrimeIdeal {
  std::uint32_t p = 0;
  SplitKind kind = SplitKind::kInert;
  std::uint32_t c = 0;

  int residue_degree() const noexcept { return kind == SplitKind::kInert ? 2 : 1; }
  std::uint64_t norm() const noexcept {
    return kind == SplitKind::kInert ? std::uint64_t{p} * p : std::uint64_t{p};
  }
  PrimeIdeal conjugate() const noexcept {
    return kind == SplitKind::kSplit ? PrimeIdeal{p, kind, p - c} : *this;
  }
  /// True iff x (integral up to denominator 2) reduces to 0 modulo this prime.
  bool contains(const QElem& x) const;

  friend auto operator<=>(const PrimeIdeal&, const PrimeIdeal&) = default;
};

/// Label grammar: "p" (inert), "sqrt5" (ramified), "p:c" for <p, sqrt5 - c>.
std::string render_label(const PrimeIdeal& t);
PrimeIdeal parse_label(std::string_view label);

/// Accepts generator notation "<61,26-sqrt5>", "<59,sqrt5+8>", "(13)", "13",
/// "sqrt5" as well as the label grammar, and normalizes to a PrimeIdeal.
PrimeIdeal parse_ideal(std::string_view text);

std::ostream& operator<<(std::ostream& os, const PrimeIdeal& t);

/// Split{c} with c the smaller square root of 5 mod p, Inert, or Ramified.
PrimeIdeal splitting_type(std::uint32_t p);
std::vector<PrimeIdeal> prime_ideals_above(std::uint32_t p);

}  // namespace qml
