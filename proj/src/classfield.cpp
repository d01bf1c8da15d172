#include "qml/classfield.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "qml/error.hpp"
#include "qml/finitefield.hpp"

namespace qml {

std::array<int, 5> GaloisClass::coordinates() const {
  std::array<int, 5> x{};
  for (int i = 0; i < 5; ++i) x[i] = coordinate(i);
  return x;
}

GaloisClass GaloisClass::from_coordinates(const std::array<int, 5>& x) {
  GaloisClass c;
  for (int i = 0; i < 5; ++i)
    if (x[i] & 1) c.bits |= F2Point{1} << i;
  return c;
}

std::string GaloisClass::to_string() const {
  std::string s = "(";
  for (int i = 0; i < 5; ++i) {
    if (i) s += ',';
    s += static_cast<char>('0' + coordinate(i));
  }
  return s + ")";
}

const std::array<QElem, 5>& quadratic_basis() {
  static const std::array<QElem, 5> basis = {
      QElem(-15, 3, 2),  // 3(sqrt5 - 5)/2
      QElem(-3),         // the printed 3 would make d_1 d_3 = 15 = 3 mod squares
      QElem(-5, -1, 2),  // -(sqrt5 + 5)/2
      QElem(0, 3),       // 3 sqrt5
      QElem(2),
  };
  return basis;
}

int quadratic_symbol(const QElem& d, const PrimeIdeal& t) {
  if (t.p == 2) throw Error(ErrorCode::kPrecondition, "residue symbols at the prime above 2 are not quadratic characters");
  if (!d.is_integral()) throw Error(ErrorCode::kNonIntegral, d.to_string() + " is not in O_F");
  const ff::PrimeField fp(t.p);
  const ff::Residue dinv = fp.inv(fp.reduce(d.d()));
  const ff::Residue u = fp.mul(fp.reduce(d.u()), dinv);
  const ff::Residue v = fp.mul(fp.reduce(d.v()), dinv);
  auto in_ideal = [&] { return Error(ErrorCode::kDInIdeal, d.to_string() + " lies in " + render_label(t)); };

  if (t.kind == SplitKind::kInert) {
    // O_F/(p) = F_p[sqrt5], and 5 is a non-residue mod an inert p
    ff::GFSpec spec;
    spec.p = t.p;
    spec.degree = 2;
    spec.nonres = 5 % t.p;
    const ff::GaloisField fp2(spec);
    const ff::GFElem x = fp2.make(u, v);
    if (fp2.is_zero(x)) throw in_ideal();
    return fp2.pow(x, (fp2.size() - 1) / 2) == fp2.one() ? 1 : -1;
  }
  // residue field F_p with sqrt5 -> c (c = 0 at the ramified prime)
  const ff::Residue r = fp.add(u, fp.mul(v, t.c));
  if (r == 0) throw in_ideal();
  return fp.pow(r, (t.p - 1) / 2) == 1 ? 1 : -1;
}

GaloisClass galois_class(const PrimeIdeal& t) {
  if (t.p == 2 || t.p == 3 || t.p == 5) {
    throw Error(ErrorCode::kPrecondition, render_label(t) + " is not coprime to 30");
  }
  GaloisClass c;
  const auto& basis = quadratic_basis();
  for (int i = 0; i < 5; ++i) {
    if (quadratic_symbol(basis[i], t) == -1) c.bits |= F2Point{1} << i;
  }
  return c;
}

std::vector<F2Point> TestSet::points() const {
  std::vector<F2Point> pts;
  pts.reserve(entries.size());
  for (const auto& e : entries) pts.push_back(e.cls.bits);
  return pts;
}

TestSet make_test_set(std::string name, std::span<const PrimeIdeal> ideals) {
  TestSet set{std::move(name), {}};
  for (const auto& t : ideals) set.entries.push_back({t, galois_class(t)});
  return set;
}

std::vector<PrimeIdeal> published_test_primes() {
  static const char* const kLabels[] = {
      "61:26",  "59:51",   "149:68",  "211:146", "101:45", "19:10",  "229:66", "11:4",
      "11:7",   "109:21",  "19:9",    "701:53",  "211:65", "29:11",  "59:8",   "181:27",
      "239:208", "31:25",  "79:20",   "71:17",   "13",     "401:178", "449:118", "241:103",
      "89:19",  "7",       "79:59",   "239:31",  "41:13",  "31:6",   "71:54",
  };
  std::vector<PrimeIdeal> out;
  for (const char* label : kLabels) out.push_back(parse_label(label));
  return out;
}

std::vector<PrimeIdeal> reduced_test_primes() {
  std::vector<PrimeIdeal> out = published_test_primes();
  std::erase_if(out, [](const PrimeIdeal& t) { return t.p == 701 || t.p == 449 || t.p == 401; });
  return out;
}

SaturationReport saturation_check(const TestSet& set) {
  SaturationReport rep;
  std::map<F2Point, std::vector<PrimeIdeal>> hits;
  for (const auto& e : set.entries) {
    if (e.cls.bits == 0) rep.contains_zero = true;
    hits[e.cls.bits].push_back(e.ideal);
  }
  for (F2Point x = 1; x < 32; ++x) {
    const auto it = hits.find(x);
    if (it == hits.end()) rep.missing.push_back(x);
    else if (it->second.size() > 1) rep.duplicates.push_back(x);
  }
  rep.pass = rep.missing.empty() && rep.duplicates.empty() && !rep.contains_zero &&
             set.entries.size() == 31;
  if (rep.pass) {
    for (const auto& [cls, ideals] : hits) rep.bijection.emplace_back(cls, ideals.front());
  }
  return rep;
}

namespace {

// rank over F_2 of rows packed into 64-bit words
int f2_rank(std::vector<std::uint64_t> rows) {
  int rank = 0;
  for (int bit = 63; bit >= 0; --bit) {
    const std::uint64_t mask = std::uint64_t{1} << bit;
    auto pivot = std::find_if(rows.begin() + rank, rows.end(), [mask](std::uint64_t r) { return (r & mask) != 0; });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, pivot);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) != rank && (rows[i] & mask)) rows[i] ^= rows[rank];
    }
    ++rank;
  }
  return rank;
}

// supports of all degree-n monomials (multisets of variables); over F_2 the
// monomial evaluates to 1 at x iff its support is contained in x
void monomial_supports(int dim, int degree, int first, std::uint64_t support, std::vector<std::uint64_t>& out) {
  if (degree == 0) {
    out.push_back(support);
    return;
  }
  for (int i = first; i < dim; ++i) monomial_supports(dim, degree - 1, i, support | (std::uint64_t{1} << i), out);
}

bool on_hyperplane(F2Point form, F2Point x) { return std::popcount(form & x) % 2 == 0; }

}  // namespace

bool nonquartic_bruteforce(std::span<const F2Point> points, int degree, int dim) {
  if (dim < 1 || dim > 6 || degree < 1) throw Error(ErrorCode::kPrecondition, "need 1 <= dim <= 6 and degree >= 1");
  const F2Point space = F2Point{1} << dim;
  std::uint64_t in_set = 0;
  for (const F2Point x : points) {
    if (x >= space) throw Error(ErrorCode::kPrecondition, "point outside F_2^dim");
    in_set |= std::uint64_t{1} << x;
  }
  std::vector<std::uint64_t> supports;
  monomial_supports(dim, degree, 0, 0, supports);
  std::vector<std::uint64_t> rows_all;
  std::vector<std::uint64_t> rows_set;
  for (const std::uint64_t s : supports) {
    std::uint64_t row = 0;
    for (F2Point x = 0; x < space; ++x)
      if ((s & x) == s) row |= std::uint64_t{1} << x;
    rows_all.push_back(row);
    rows_set.push_back(row & in_set);
  }
  // forms vanishing on the set contain those vanishing everywhere; equal
  // kernels iff equal ranks
  return f2_rank(rows_set) == f2_rank(rows_all);
}

HyperplaneCertificate nonquartic_hyperplane(std::span<const F2Point> points, std::span<const F2Point> forms,
                                            F2Point extra, int degree, int dim) {
  const F2Point space = F2Point{1} << dim;
  std::vector<F2Point> distinct(forms.begin(), forms.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::erase(distinct, F2Point{0});
  if (static_cast<int>(distinct.size()) < degree || distinct.size() != forms.size()) {
    return {Certificate::kInconclusive,
            "need " + std::to_string(degree) + " distinct nonzero hyperplanes, got " + std::to_string(distinct.size())};
  }
  std::uint64_t in_set = 1;  // the origin
  for (const F2Point x : points) in_set |= std::uint64_t{1} << x;
  for (const F2Point form : distinct) {
    for (F2Point x = 0; x < space; ++x) {
      if (on_hyperplane(form, x) && !(in_set >> x & 1)) {
        return {Certificate::kInconclusive, "hyperplane " + std::to_string(form) + " not contained in the set"};
      }
    }
  }
  if (std::find(points.begin(), points.end(), extra) == points.end()) {
    return {Certificate::kInconclusive, "extra point is not in the set"};
  }
  for (const F2Point form : distinct) {
    if (on_hyperplane(form, extra)) return {Certificate::kInconclusive, "extra point lies on a hyperplane"};
  }
  HyperplaneCertificate cert{Certificate::kCertified, "hyperplanes contained and extra point outside"};
  cert.forms_independent = f2_rank(distinct) == static_cast<int>(distinct.size());
  if (!cert.forms_independent) cert.reason += "; forms are linearly dependent, so the complement may hold several points";
  return cert;
}

std::array<F2Point, 4> published_hyperplanes() {
  // x2, x4 + x5, x1 + x3, x1 + x2 + x3 + x4 + x5
  return {0b00010, 0b11000, 0b00101, 0b11111};
}

F2Point published_extra_point() { return 0b10110; }  // (0,1,1,0,1)

}  // namespace qml
