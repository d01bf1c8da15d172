#include "qml/quadfield.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "qml/error.hpp"
#include "qml/finitefield.hpp"

namespace qml {

namespace {

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

QElem make_reduced(i128 u, i128 v, i128 d) {
  if (d == 0) throw Error(ErrorCode::kPrecondition, "zero denominator");
  if (d < 0) {
    u = -u;
    v = -v;
    d = -d;
  }
  const i128 g = gcd128(gcd128(u, v), d);
  return QElem(narrow64(u / g), narrow64(v / g), narrow64(d / g));
}

// sign of u + v*sqrt5
int sign_of(i128 u, i128 v) {
  const int su = (u > 0) - (u < 0);
  const int sv = (v > 0) - (v < 0);
  if (su == 0) return sv;
  if (sv == 0 || su == sv) return su;
  const i128 uu = u * u;
  const i128 vv = 5 * v * v;
  if (uu == vv) return 0;  // unreachable for integers, sqrt5 is irrational
  return uu > vv ? su : sv;
}

}  // namespace

QElem::QElem(std::int64_t u, std::int64_t v, std::int64_t d) : u_(u), v_(v), d_(d) {
  if (d == 0) throw Error(ErrorCode::kPrecondition, "zero denominator");
  std::int64_t g = std::gcd(std::gcd(u, v), d);
  if (d < 0) g = -g;
  u_ /= g;
  v_ /= g;
  d_ /= g;
}

QElem QElem::from_omega_basis(std::int64_t x, std::int64_t y) {
  return make_reduced(i128{2} * x + y, y, 2);
}

bool QElem::is_integral() const noexcept {
  if (d_ == 1) return true;
  return d_ == 2 && ((u_ - v_) % 2 == 0);
}

std::pair<std::int64_t, std::int64_t> QElem::omega_coords() const {
  if (!is_integral()) throw Error(ErrorCode::kNonIntegral, to_string() + " is not in O_F");
  // sqrt5 = 2*omega - 1
  if (d_ == 1) return {u_ - v_, 2 * v_};
  return {(u_ - v_) / 2, v_};
}

bool QElem::is_even() const {
  const auto [x, y] = omega_coords();
  return x % 2 == 0 && y % 2 == 0;
}

Rational QElem::norm() const {
  const i128 num = i128{u_} * u_ - i128{5} * v_ * v_;
  const i128 den = i128{d_} * d_;
  const i128 g = gcd128(num, den);
  return Rational(narrow64(num / g), narrow64(den / g));
}

Rational QElem::trace() const { return Rational(2 * u_, d_); }

int QElem::sign() const noexcept { return sign_of(u_, v_); }

QElem operator+(const QElem& a, const QElem& b) {
  return make_reduced(i128{a.u_} * b.d_ + i128{b.u_} * a.d_, i128{a.v_} * b.d_ + i128{b.v_} * a.d_,
                      i128{a.d_} * b.d_);
}

QElem operator-(const QElem& a, const QElem& b) { return a + (-b); }

QElem operator*(const QElem& a, const QElem& b) {
  return make_reduced(i128{a.u_} * b.u_ + i128{5} * a.v_ * b.v_, i128{a.u_} * b.v_ + i128{a.v_} * b.u_,
                      i128{a.d_} * b.d_);
}

std::string QElem::to_string() const {
  std::ostringstream os;
  const bool frac = d_ != 1;
  if (frac && v_ != 0) os << '(';
  if (v_ == 0) {
    os << u_;
  } else {
    if (u_ != 0) os << u_ << (v_ < 0 ? "-" : "+");
    else if (v_ < 0) os << '-';
    const std::int64_t av = v_ < 0 ? -v_ : v_;
    if (av != 1) os << av << '*';
    os << "sqrt5";
  }
  if (frac && v_ != 0) os << ')';
  if (frac) os << '/' << d_;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QElem& x) { return os << x.to_string(); }

QElem canonical_associate(const QElem& g_in) {
  if (g_in.is_zero()) throw Error(ErrorCode::kPrecondition, "zero has no associates");
  const QElem omega = QElem::omega();
  const QElem omega_inv = omega - QElem(1);
  const QElem omega_sq = omega * omega;
  QElem g = g_in.sign() < 0 ? -g_in : g_in;
  auto abs_conj = [](const QElem& x) {
    const QElem c = x.conj();
    return c.sign() < 0 ? -c : c;
  };
  // multiplying by omega scales g/|conj g| by omega^2 and keeps g > 0
  while ((g - omega_sq * abs_conj(g)).sign() >= 0) g = g * omega_inv;
  while ((g - abs_conj(g)).sign() < 0) g = g * omega;
  return g;
}

bool PrimeIdeal::contains(const QElem& x) const {
  if (!x.is_integral()) throw Error(ErrorCode::kNonIntegral, x.to_string() + " is not in O_F");
  switch (kind) {
    case SplitKind::kRamified: {
      const Rational n = x.norm();
      return n.numerator() % 5 == 0;
    }
    case SplitKind::kInert: {
      const auto [a, b] = x.omega_coords();
      return a % static_cast<std::int64_t>(p) == 0 && b % static_cast<std::int64_t>(p) == 0;
    }
    case SplitKind::kSplit: {
      const ff::PrimeField f(p);
      const ff::Residue r = f.add(f.reduce(x.u()), f.mul(f.reduce(x.v()), c));
      return f.mul(r, f.inv(f.reduce(x.d()))) == 0;
    }
  }
  return false;
}

std::string render_label(const PrimeIdeal& t) {
  switch (t.kind) {
    case SplitKind::kRamified: return "sqrt5";
    case SplitKind::kInert: return std::to_string(t.p);
    case SplitKind::kSplit: return std::to_string(t.p) + ":" + std::to_string(t.c);
  }
  return {};
}

namespace {

std::uint32_t parse_uint(std::string_view s, std::string_view context) {
  if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
    throw Error(ErrorCode::kParse, "expected an unsigned integer in '" + std::string(context) + "'");
  }
  return static_cast<std::uint32_t>(std::stoul(std::string(s)));
}

PrimeIdeal make_split(std::uint32_t p, std::int64_t c_raw, std::string_view context) {
  if (!is_prime(p)) throw Error(ErrorCode::kParse, "not a prime in '" + std::string(context) + "'");
  if (p % 5 != 1 && p % 5 != 4) {
    throw Error(ErrorCode::kParse, std::to_string(p) + " does not split in Q(sqrt5)");
  }
  const std::int64_t c = ((c_raw % p) + p) % p;
  if ((c * c - 5) % static_cast<std::int64_t>(p) != 0) {
    throw Error(ErrorCode::kParse, "c^2 != 5 mod p in '" + std::string(context) + "'");
  }
  return PrimeIdeal{p, SplitKind::kSplit, static_cast<std::uint32_t>(c)};
}

std::string normalize_text(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  auto replace_all = [&s](std::string_view from, std::string_view to) {
    for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
      s.replace(pos, from.size(), to);
    }
  };
  replace_all("√5", "sqrt5");  // √5
  replace_all("−", "-");       // minus sign
  replace_all("⟨", "<");
  replace_all("⟩", ">");
  replace_all("\\sqrt{5}", "sqrt5");
  return s;
}

}  // namespace

PrimeIdeal parse_label(std::string_view label) {
  if (label == "sqrt5") return PrimeIdeal{5, SplitKind::kRamified, 0};
  const auto colon = label.find(':');
  if (colon != std::string_view::npos) {
    const std::uint32_t p = parse_uint(label.substr(0, colon), label);
    const std::uint32_t c = parse_uint(label.substr(colon + 1), label);
    if (c == 0 || c >= p) throw Error(ErrorCode::kParse, "split label needs 0 < c < p: '" + std::string(label) + "'");
    return make_split(p, c, label);
  }
  const std::uint32_t p = parse_uint(label, label);
  if (!is_prime(p)) throw Error(ErrorCode::kParse, "not a prime: '" + std::string(label) + "'");
  if (p == 5) throw Error(ErrorCode::kParse, "the prime above 5 is written 'sqrt5'");
  if (p % 5 == 1 || p % 5 == 4) {
    throw Error(ErrorCode::kParse, std::to_string(p) + " splits; use the label p:c");
  }
  return PrimeIdeal{p, SplitKind::kInert, 0};
}

PrimeIdeal parse_ideal(std::string_view text) {
  std::string s = normalize_text(text);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  if (s.empty() || s.front() != '<') return parse_label(s);
  if (s.back() != '>') throw Error(ErrorCode::kParse, "unterminated ideal '" + std::string(text) + "'");
  const std::string body = s.substr(1, s.size() - 2);
  const auto comma = body.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::kParse, "expected '<p, generator>'");
  const std::uint32_t p = parse_uint(std::string_view(body).substr(0, comma), text);

  // generator a + b*sqrt5 with b = +-1
  const std::string gen = body.substr(comma + 1);
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::size_t i = 0;
  while (i < gen.size()) {
    int sgn = 1;
    if (gen[i] == '+' || gen[i] == '-') {
      sgn = gen[i] == '-' ? -1 : 1;
      ++i;
    }
    if (gen.compare(i, 5, "sqrt5") == 0) {
      b += sgn;
      i += 5;
    } else {
      std::size_t j = i;
      while (j < gen.size() && std::isdigit(static_cast<unsigned char>(gen[j]))) ++j;
      if (j == i) throw Error(ErrorCode::kParse, "bad generator '" + gen + "'");
      a += sgn * static_cast<std::int64_t>(parse_uint(std::string_view(gen).substr(i, j - i), text));
      i = j;
    }
  }
  if (b != 1 && b != -1) throw Error(ErrorCode::kParse, "generator must be +-sqrt5 + c: '" + gen + "'");
  // <p, a + b sqrt5> = <p, sqrt5 - (-a b)>
  return make_split(p, -a * b, text);
}

std::ostream& operator<<(std::ostream& os, const PrimeIdeal& t) { return os << render_label(t); }

PrimeIdeal splitting_type(std::uint32_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
  if (p == 5) return PrimeIdeal{5, SplitKind::kRamified, 0};
  if (p % 5 == 1 || p % 5 == 4) {
    const auto c = ff::sqrt_mod(5, p);
    return PrimeIdeal{p, SplitKind::kSplit, *c};
  }
  return PrimeIdeal{p, SplitKind::kInert, 0};
}

std::vector<PrimeIdeal> prime_ideals_above(std::uint32_t p) {
  const PrimeIdeal t = splitting_type(p);
  if (t.kind != SplitKind::kSplit) return {t};
  return {t, t.conjugate()};
}

}  // namespace qml
