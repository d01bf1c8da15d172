#include "qml/finitefield.hpp"

#include "qml/error.hpp"

namespace qml::ff {

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p < 3 || p >= (1u << 16) || !is_prime(p)) {
    throw Error(ErrorCode::kPrecondition, "field characteristic must be an odd prime below 2^16, got " +
                                              std::to_string(p));
  }
}

Residue PrimeField::pow(Residue a, std::uint64_t e) const noexcept {
  Residue result = 1 % p_;
  Residue base = a % p_;
  while (e != 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Residue PrimeField::inv(Residue a) const {
  if (a % p_ == 0) throw Error(ErrorCode::kPrecondition, "inverse of zero");
  return pow(a, p_ - 2);
}

std::optional<Residue> sqrt_mod(std::uint64_t a_in, std::uint32_t p) {
  const PrimeField f(p);
  const Residue a = static_cast<Residue>(a_in % p);
  if (a == 0) return Residue{0};
  if (!f.is_square(a)) return std::nullopt;

  // p - 1 = s * 2^e with s odd
  std::uint32_t s = p - 1;
  int e = 0;
  while ((s & 1) == 0) {
    s >>= 1;
    ++e;
  }
  Residue root;
  if (e == 1) {
    root = f.pow(a, (p + 1) / 4);
  } else {
    const Residue n = least_nonresidue(p);
    Residue x = f.pow(a, (s + 1) / 2);
    Residue b = f.pow(a, s);
    Residue g = f.pow(n, s);
    int r = e;
    while (b != 1) {
      int m = 0;
      for (Residue t = b; t != 1; t = f.mul(t, t)) ++m;
      Residue gs = g;
      for (int i = 0; i < r - m - 1; ++i) gs = f.mul(gs, gs);
      x = f.mul(x, gs);
      g = f.mul(gs, gs);
      b = f.mul(b, g);
      r = m;
    }
    root = x;
  }
  const Residue other = f.neg(root);
  return root < other ? root : other;
}

Residue least_nonresidue(std::uint32_t p) {
  const PrimeField f(p);
  for (Residue n = 2; n < p; ++n) {
    if (!f.is_square(n)) return n;
  }
  throw Error(ErrorCode::kPrecondition, "no quadratic non-residue");
}

namespace {

GFSpec default_spec(std::uint32_t p, int degree) {
  GFSpec spec;
  spec.p = p;
  spec.degree = degree;
  const PrimeField f(p);
  if (degree == 2 || degree == 4) spec.nonres = least_nonresidue(p);
  if (degree == 3) {
    // first irreducible x^3 - c1 x - c0 (a cubic is irreducible iff rootless)
    for (Residue c1 = 0; c1 < p; ++c1) {
      for (Residue c0 = 1; c0 < p; ++c0) {
        bool has_root = false;
        for (Residue x = 0; x < p && !has_root; ++x) {
          const Residue v = f.sub(f.sub(f.mul(f.mul(x, x), x), f.mul(c1, x)), c0);
          has_root = v == 0;
        }
        if (!has_root) {
          spec.cubic = {c0, c1};
          return spec;
        }
      }
    }
    throw Error(ErrorCode::kPrecondition, "no irreducible cubic trinomial");
  }
  if (degree == 4) {
    GFSpec sq = spec;
    sq.degree = 2;
    const GaloisField fp2(sq);
    for (std::uint64_t i = 1; i < fp2.size(); ++i) {
      const GFElem m = fp2.element(i);
      if (!fp2.is_square(m)) {
        spec.tower = {m[0], m[1]};
        return spec;
      }
    }
  }
  return spec;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

GaloisField::GaloisField(std::uint32_t p, int degree) : GaloisField(default_spec(p, degree)) {}

GaloisField::GaloisField(const GFSpec& spec)
    : spec_(spec), fp_(spec.p), q_(ipow(spec.p, spec.degree)) {
  validate();
}

void GaloisField::validate() const {
  const int f = spec_.degree;
  if (f < 1 || f > 4) throw Error(ErrorCode::kPrecondition, "unsupported extension degree");
  if (f == 2 || f == 4) {
    if (spec_.nonres >= spec_.p || fp_.is_square(spec_.nonres)) {
      throw Error(ErrorCode::kPrecondition, "defining constant is a square mod p");
    }
  }
  if (f == 3) {
    const auto [c0, c1] = spec_.cubic;
    for (Residue x = 0; x < spec_.p; ++x) {
      if (fp_.sub(fp_.sub(fp_.mul(fp_.mul(x, x), x), fp_.mul(c1, x)), c0) == 0) {
        throw Error(ErrorCode::kPrecondition, "cubic modulus has a root");
      }
    }
  }
  if (f == 4) {
    GFSpec sq = spec_;
    sq.degree = 2;
    const GaloisField fp2(sq);
    if (fp2.is_square(fp2.make(spec_.tower[0], spec_.tower[1]))) {
      throw Error(ErrorCode::kPrecondition, "tower constant is a square in F_{p^2}");
    }
  }
}

GFElem GaloisField::mul(const GFElem& a, const GFElem& b) const noexcept {
  const std::uint64_t p = spec_.p;
  switch (spec_.degree) {
    case 1:
      return {fp_.mul(a[0], b[0]), 0, 0, 0};
    case 2: {
      const std::uint64_t hi = (std::uint64_t{a[1]} * b[1]) % p;
      const std::uint64_t r0 = std::uint64_t{a[0]} * b[0] + hi * spec_.nonres;
      const std::uint64_t r1 = std::uint64_t{a[0]} * b[1] + std::uint64_t{a[1]} * b[0];
      return {static_cast<Residue>(r0 % p), static_cast<Residue>(r1 % p), 0, 0};
    }
    case 3: {
      std::uint64_t s[5] = {};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s[i + j] += std::uint64_t{a[i]} * b[j];
      for (auto& x : s) x %= p;
      const std::uint64_t c0 = spec_.cubic[0], c1 = spec_.cubic[1];
      // x^3 = c1 x + c0, x^4 = c1 x^2 + c0 x
      const std::uint64_t r0 = s[0] + c0 * s[3];
      const std::uint64_t r1 = s[1] + c1 * s[3] + c0 * s[4];
      const std::uint64_t r2 = s[2] + c1 * s[4];
      return {static_cast<Residue>(r0 % p), static_cast<Residue>(r1 % p),
              static_cast<Residue>(r2 % p), 0};
    }
    default: {
      // (A + B y)(C + D y) = (AC + m BD) + (AD + BC) y over F_{p^2}
      auto m2 = [&](Residue x0, Residue x1, Residue y0, Residue y1) {
        const std::uint64_t hi = (std::uint64_t{x1} * y1) % p;
        const std::uint64_t r0 = std::uint64_t{x0} * y0 + hi * spec_.nonres;
        const std::uint64_t r1 = std::uint64_t{x0} * y1 + std::uint64_t{x1} * y0;
        return std::array<Residue, 2>{static_cast<Residue>(r0 % p), static_cast<Residue>(r1 % p)};
      };
      const auto ac = m2(a[0], a[1], b[0], b[1]);
      const auto bd = m2(a[2], a[3], b[2], b[3]);
      const auto mbd = m2(bd[0], bd[1], spec_.tower[0], spec_.tower[1]);
      const auto ad = m2(a[0], a[1], b[2], b[3]);
      const auto bc = m2(a[2], a[3], b[0], b[1]);
      return {fp_.add(ac[0], mbd[0]), fp_.add(ac[1], mbd[1]), fp_.add(ad[0], bc[0]),
              fp_.add(ad[1], bc[1])};
    }
  }
}

GFElem GaloisField::pow(const GFElem& a, std::uint64_t e) const noexcept {
  GFElem result = one();
  GFElem base = a;
  while (e != 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

GFElem GaloisField::inv(const GFElem& a) const {
  if (is_zero(a)) throw Error(ErrorCode::kPrecondition, "inverse of zero");
  return pow(a, q_ - 2);
}

bool GaloisField::is_square(const GFElem& a) const noexcept {
  return is_zero(a) || pow(a, (q_ - 1) / 2) == one();
}

std::optional<PrimePower> factor_prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;
  int e = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  if (r != 1 || p >= (1ull << 32)) return std::nullopt;
  return PrimePower{static_cast<std::uint32_t>(p), e};
}

}  // namespace qml::ff
