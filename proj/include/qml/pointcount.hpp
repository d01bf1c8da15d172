#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qml/finitefield.hpp"

namespace qml {

/// Point counts of the quintic over one finite field F_q.
struct CountReport {
  std::uint64_t q = 0;
  std::uint32_t p = 0;
  int degree = 0;
  std::int64_t n_affine = 0;   // #X(F_q), affine part P(x1,x2) = P(x4,x5)
  std::int64_t n_fermat = 0;   // #S(F_q), Fermat surface at infinity
  std::int64_t n_nodes = 0;    // nodes of the closure rational over F_q
  std::int64_t n_resolved = 0; // #X~(F_q)
  std::int64_t n_curve = 0;    // #C(F_q), C: P(y,y) = P(z,z)
  std::optional<std::int64_t> h;  // trace on H^2(1), set by the L-function layer
  std::optional<std::int64_t> a;  // trace on H^3
  std::optional<std::uint64_t> h_reference;  // q' supplying h when q <= 20
};

/// P(y,z) = (y^5+z^5) - 5yz(y^2+z^2) + 5yz(y+z) + 5(y^2+z^2) - 5(y+z)
ff::GFElem chebyshev_eval(const ff::GaloisField& field, const ff::GFElem& y, const ff::GFElem& z);

/// N[v] = #{(y,z) in F_q^2 : P(y,z) = v}, indexed by the field's integer
/// encoding of v.
using Histogram = std::vector<std::uint64_t>;

enum class Traversal {
  kSymmetric,  // y <= z only, off-diagonal pairs counted twice
  kNaive,      // every ordered pair; kept for cross-checking
};

Histogram value_distribution(const ff::GaloisField& field, unsigned threads = 1,
                             Traversal traversal = Traversal::kSymmetric);

/// Sum of squared fiber sizes, accumulated in 128 bits.
std::int64_t sum_of_squares(const Histogram& hist);

std::int64_t count_affine_X(const ff::GaloisField& field, unsigned threads = 1);
std::int64_t count_fermat_S(const ff::GaloisField& field);
std::int64_t count_curve_C(const ff::GaloisField& field);

/// Rational nodes by q mod 15; throws kPrecondition unless gcd(q, 15) = 1.
std::int64_t node_count(std::uint64_t q);

/// n_resolved = n_affine + n_fermat + n_nodes (q^2 + 2q). h and a stay unset.
/// Throws kBadPrime for characteristic 2, 3 or 5.
CountReport count_resolved_X(std::uint64_t q, unsigned threads = 1);
CountReport count_resolved_X(const ff::GaloisField& field, unsigned threads = 1);

}  // namespace qml
