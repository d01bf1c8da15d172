#include "qml/pointcount.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "qml/error.hpp"

namespace qml {

using ff::GaloisField;
using ff::GFElem;
using ff::Residue;

GFElem chebyshev_eval(const GaloisField& f, const GFElem& y, const GFElem& z) {
  // straight-line: P = y^5 + z^5 + 5 (yz (s1 - s2) + s2 - s1), s1 = y+z, s2 = y^2+z^2
  const GFElem y2 = f.sqr(y);
  const GFElem z2 = f.sqr(z);
  const GFElem y5 = f.mul(f.sqr(y2), y);
  const GFElem z5 = f.mul(f.sqr(z2), z);
  const GFElem w = f.mul(y, z);
  const GFElem s1 = f.add(y, z);
  const GFElem s2 = f.add(y2, z2);
  const GFElem inner = f.add(f.mul(w, f.sub(s1, s2)), f.sub(s2, s1));
  return f.add(f.add(y5, z5), f.scale(inner, 5 % f.p()));
}

namespace {

// For fixed y, t -> P(y, z0 + t) is a monic quintic in t, so along each run
// of consecutive indices (the prime-field coordinate stepping by 1) its
// values follow from a forward-difference table seeded with six evaluations.
template <int Deg>
void accumulate_row_run(const GaloisField& f, const GFElem& y, std::uint64_t z_begin,
                        std::uint64_t count, std::uint64_t weight, Histogram& hist) {
  const std::uint32_t p = f.p();
  std::array<GFElem, 6> g;
  GFElem z = f.element(z_begin);
  for (auto& gk : g) {
    gk = chebyshev_eval(f, y, z);
    z[0] = f.base().add(z[0], 1);
  }
  for (int j = 1; j < 6; ++j)
    for (int k = 5; k >= j; --k) g[k] = f.sub(g[k], g[k - 1]);

  Residue d[6][Deg];
  for (int j = 0; j < 6; ++j)
    for (int c = 0; c < Deg; ++c) d[j][c] = g[j][c];

  for (std::uint64_t step = 0; step < count; ++step) {
    std::uint64_t idx = d[0][Deg - 1];
    for (int c = Deg - 2; c >= 0; --c) idx = idx * p + d[0][c];
    hist[idx] += weight;
    for (int j = 0; j < 5; ++j) {
      for (int c = 0; c < Deg; ++c) {
        Residue s = d[j][c] + d[j + 1][c];
        d[j][c] = s >= p ? s - p : s;
      }
    }
  }
}

template <int Deg>
void accumulate_y(const GaloisField& f, std::uint64_t iy, Histogram& hist) {
  const std::uint64_t q = f.size();
  const std::uint64_t p = f.p();
  const GFElem y = f.element(iy);
  hist[f.index(chebyshev_eval(f, y, y))] += 1;
  std::uint64_t z = iy + 1;
  while (z < q) {
    const std::uint64_t row_end = (z / p + 1) * p;
    accumulate_row_run<Deg>(f, y, z, row_end - z, 2, hist);
    z = row_end;
  }
}

void accumulate_y_dispatch(const GaloisField& f, std::uint64_t iy, Histogram& hist) {
  switch (f.degree()) {
    case 1: accumulate_y<1>(f, iy, hist); break;
    case 2: accumulate_y<2>(f, iy, hist); break;
    case 3: accumulate_y<3>(f, iy, hist); break;
    default: accumulate_y<4>(f, iy, hist); break;
  }
}

Histogram naive_distribution(const GaloisField& f) {
  Histogram hist(f.size(), 0);
  for (const GFElem y : f.enumerate()) {
    for (const GFElem z : f.enumerate()) ++hist[f.index(chebyshev_eval(f, y, z))];
  }
  return hist;
}

}  // namespace

Histogram value_distribution(const GaloisField& f, unsigned threads, Traversal traversal) {
  if (traversal == Traversal::kNaive) return naive_distribution(f);

  const std::uint64_t q = f.size();
  threads = std::max(1u, threads);
  if (threads == 1) {
    Histogram hist(q, 0);
    for (std::uint64_t iy = 0; iy < q; ++iy) accumulate_y_dispatch(f, iy, hist);
    return hist;
  }

  // Work per y shrinks with its index, so hand out small chunks dynamically.
  // Each worker owns a private histogram; integer merging keeps the result
  // independent of scheduling.
  constexpr std::uint64_t kChunk = 16;
  std::atomic<std::uint64_t> next{0};
  std::vector<Histogram> partial(threads, Histogram(q, 0));
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      for (;;) {
        const std::uint64_t begin = next.fetch_add(kChunk);
        if (begin >= q) break;
        const std::uint64_t end = std::min(q, begin + kChunk);
        for (std::uint64_t iy = begin; iy < end; ++iy) accumulate_y_dispatch(f, iy, partial[w]);
      }
    });
  }
  for (auto& t : workers) t.join();
  Histogram hist(q, 0);
  for (const auto& part : partial)
    for (std::uint64_t i = 0; i < q; ++i) hist[i] += part[i];
  return hist;
}

std::int64_t sum_of_squares(const Histogram& hist) {
  u128 acc = 0;
  for (const std::uint64_t n : hist) acc += static_cast<u128>(n) * n;
  return narrow64(static_cast<i128>(acc));
}

std::int64_t count_affine_X(const GaloisField& f, unsigned threads) {
  return sum_of_squares(value_distribution(f, threads));
}

std::int64_t count_fermat_S(const GaloisField& f) {
  const std::uint64_t q = f.size();
  if (f.p() == 5) throw Error(ErrorCode::kBadPrime, "Fermat count needs characteristic != 5");
  const i128 qq = q;
  if (q % 5 != 1) return narrow64(1 + qq + qq * qq);

  // Classify y^5 + z^5 over the q + 1 points of P^1: zero, or by its coset of
  // the fifth powers (the coset is read off from w^((q-1)/5)).
  const std::uint64_t e = (q - 1) / 5;
  std::int64_t m0 = 0;
  std::array<std::int64_t, 5> m{};
  std::vector<GFElem> coset_roots;
  auto classify = [&](const GFElem& w) {
    if (f.is_zero(w)) {
      ++m0;
      return;
    }
    const GFElem zeta = f.pow(w, e);
    auto it = std::find(coset_roots.begin(), coset_roots.end(), zeta);
    if (it == coset_roots.end()) {
      coset_roots.push_back(zeta);
      it = coset_roots.end() - 1;
    }
    ++m[static_cast<std::size_t>(it - coset_roots.begin())];
  };
  for (const GFElem y : f.enumerate()) {
    classify(f.add(f.mul(f.sqr(f.sqr(y)), y), f.one()));
  }
  classify(f.one());  // the point (1 : 0)
  if (coset_roots.size() > 5) throw Error(ErrorCode::kPrecondition, "more than five fifth-power cosets");

  // fibers: N(0) = (q-1) m0 + 1, N(a) = 5 m_i for each of the (q-1)/5 values a in coset i
  const i128 n0 = (qq - 1) * m0 + 1;
  i128 total = n0;
  i128 squares = n0 * n0;
  for (const std::int64_t mi : m) {
    total += (qq - 1) / 5 * 5 * mi;
    squares += (qq - 1) / 5 * (i128{5} * mi) * (i128{5} * mi);
  }
  if (total != qq * qq) throw Error(ErrorCode::kPrecondition, "fiber counts do not sum to q^2");
  return narrow64((squares - 1) / (qq - 1));
}

std::int64_t count_curve_C(const GaloisField& f) {
  Histogram hist(f.size(), 0);
  for (const GFElem t : f.enumerate()) ++hist[f.index(chebyshev_eval(f, t, t))];
  return sum_of_squares(hist);
}

std::int64_t node_count(std::uint64_t q) {
  if (q % 3 == 0 || q % 5 == 0) throw Error(ErrorCode::kPrecondition, "node count needs gcd(q, 15) = 1");
  switch (q % 15) {
    case 1: return 120;
    case 4: return 24;
    case 11: return 104;
    case 14: return 8;
    default: return 0;  // 2, 7, 8, 13
  }
}

CountReport count_resolved_X(const GaloisField& f, unsigned threads) {
  const std::uint32_t p = f.p();
  if (p == 2 || p == 3 || p == 5) throw Error(ErrorCode::kBadPrime, "bad reduction at " + std::to_string(p));
  CountReport r;
  r.q = f.size();
  r.p = p;
  r.degree = f.degree();
  r.n_affine = count_affine_X(f, threads);
  r.n_fermat = count_fermat_S(f);
  r.n_nodes = node_count(r.q);
  r.n_curve = count_curve_C(f);
  const i128 q = r.q;
  r.n_resolved = narrow64(i128{r.n_affine} + r.n_fermat + i128{r.n_nodes} * (q * q + 2 * q));
  return r;
}

CountReport count_resolved_X(std::uint64_t q, unsigned threads) {
  const auto pp = ff::factor_prime_power(q);
  if (!pp) throw Error(ErrorCode::kPrecondition, std::to_string(q) + " is not a prime power");
  if (pp->p == 2 || pp->p == 3 || pp->p == 5) {
    throw Error(ErrorCode::kBadPrime, "bad reduction at " + std::to_string(pp->p));
  }
  if (pp->exponent > 4) throw Error(ErrorCode::kPrecondition, "extension degree above 4 is not supported");
  return count_resolved_X(GaloisField(pp->p, pp->exponent), threads);
}

}  // namespace qml
