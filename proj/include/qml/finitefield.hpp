#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ranges>

namespace qml::ff {

using Residue = std::uint32_t;

/// Z/pZ for an odd prime p < 2^16, so every product of two residues fits in
/// 32 bits and reduction is a single word-sized modulo.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const noexcept { return p_; }

  Residue reduce(std::int64_t x) const noexcept {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const noexcept {
    Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept { return (a * b) % p_; }
  Residue pow(Residue a, std::uint64_t e) const noexcept;
  Residue inv(Residue a) const;  // throws kPrecondition on 0

  /// Euler's criterion; 0 counts as a square.
  bool is_square(Residue a) const noexcept { return a == 0 || pow(a, (p_ - 1) / 2) == 1; }

 private:
  std::uint32_t p_;
};

/// Tonelli-Shanks. Returns the smaller of the two roots, 0 for a = 0, and
/// nullopt for non-residues.
std::optional<Residue> sqrt_mod(std::uint64_t a, std::uint32_t p);

Residue least_nonresidue(std::uint32_t p);

/// Finite field F_q, q = p^f with f in {1, 2, 3, 4}:
///   f = 2: F_p[x]/(x^2 - nonres)
///   f = 3: F_p[x]/(x^3 - c1 x - c0), the first irreducible trinomial found
///   f = 4: F_{p^2}[y]/(y^2 - m), m the first non-square of F_{p^2}
/// Elements are coordinate vectors; the integer encoding sum c_i p^i gives
/// the lexicographic enumeration order.
struct GFSpec {
  std::uint32_t p = 0;
  int degree = 1;
  Residue nonres = 0;
  std::array<Residue, 2> cubic{};  // (c0, c1)
  std::array<Residue, 2> tower{};  // m = tower[0] + tower[1] x
};

using GFElem = std::array<Residue, 4>;

class GaloisField {
 public:
  /// Deterministic default realization (least non-residue etc.).
  GaloisField(std::uint32_t p, int degree);
  /// Explicit realization; validates the defining data.
  explicit GaloisField(const GFSpec& spec);

  const GFSpec& spec() const noexcept { return spec_; }
  std::uint32_t p() const noexcept { return spec_.p; }
  int degree() const noexcept { return spec_.degree; }
  std::uint64_t size() const noexcept { return q_; }
  const PrimeField& base() const noexcept { return fp_; }

  GFElem zero() const noexcept { return {}; }
  GFElem one() const noexcept { return {1, 0, 0, 0}; }
  GFElem from_residue(Residue r) const noexcept { return {r, 0, 0, 0}; }
  GFElem from_int(std::int64_t x) const noexcept { return from_residue(fp_.reduce(x)); }
  /// For f = 2 only: the element a + b*x.
  GFElem make(Residue a, Residue b) const noexcept { return {a, b, 0, 0}; }

  bool is_zero(const GFElem& a) const noexcept { return a == GFElem{}; }

  GFElem add(const GFElem& a, const GFElem& b) const noexcept {
    GFElem r{};
    for (int i = 0; i < spec_.degree; ++i) r[i] = fp_.add(a[i], b[i]);
    return r;
  }
  GFElem sub(const GFElem& a, const GFElem& b) const noexcept {
    GFElem r{};
    for (int i = 0; i < spec_.degree; ++i) r[i] = fp_.sub(a[i], b[i]);
    return r;
  }
  GFElem neg(const GFElem& a) const noexcept {
    GFElem r{};
    for (int i = 0; i < spec_.degree; ++i) r[i] = fp_.neg(a[i]);
    return r;
  }
  GFElem scale(const GFElem& a, Residue s) const noexcept {
    GFElem r{};
    for (int i = 0; i < spec_.degree; ++i) r[i] = fp_.mul(a[i], s);
    return r;
  }
  GFElem mul(const GFElem& a, const GFElem& b) const noexcept;
  GFElem sqr(const GFElem& a) const noexcept { return mul(a, a); }
  /// Square-and-multiply; x^0 = 1 for every x, including 0^0.
  GFElem pow(const GFElem& a, std::uint64_t e) const noexcept;
  GFElem inv(const GFElem& a) const;  // throws kPrecondition on 0
  GFElem frobenius(const GFElem& a) const noexcept { return pow(a, spec_.p); }

  bool is_square(const GFElem& a) const noexcept;

  std::uint64_t index(const GFElem& a) const noexcept {
    std::uint64_t idx = 0;
    for (int i = spec_.degree - 1; i >= 0; --i) idx = idx * spec_.p + a[i];
    return idx;
  }
  GFElem element(std::uint64_t idx) const noexcept {
    GFElem r{};
    for (int i = 0; i < spec_.degree; ++i) {
      r[i] = static_cast<Residue>(idx % spec_.p);
      idx /= spec_.p;
    }
    return r;
  }

  /// All q elements in lexicographic order; any index sub-range of the
  /// underlying iota can be handed to a separate worker.
  auto enumerate() const {
    return std::views::iota(std::uint64_t{0}, q_) |
           std::views::transform([this](std::uint64_t i) { return element(i); });
  }

 private:
  void validate() const;

  GFSpec spec_;
  PrimeField fp_;
  std::uint64_t q_;
};

/// Write q = p^f with p prime; nullopt if q is not a prime power.
struct PrimePower {
  std::uint32_t p;
  int exponent;
};
std::optional<PrimePower> factor_prime_power(std::uint64_t q);

}  // namespace qml::ff
