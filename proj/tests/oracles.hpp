#pragma once

// Test-side reference implementations. They work on raw coordinate vectors
// and avoid the library's multiplication tables, eliminators and solvers.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "etnckit/euler_family.hpp"
#include "etnckit/fitting.hpp"
#include "etnckit/group_ring.hpp"
#include "etnckit/lvalues.hpp"

namespace oracle {

using namespace etnckit;

inline std::vector<std::int64_t> coords(const FiniteAbelianGroup& G, std::size_t idx) {
  // lexicographic, first coordinate most significant
  std::vector<std::int64_t> c(G.rank());
  for (std::size_t i = G.rank(); i-- > 0;) {
    c[i] = static_cast<std::int64_t>(idx) % G.cyclic_orders()[i];
    idx /= static_cast<std::size_t>(G.cyclic_orders()[i]);
  }
  return c;
}

inline std::size_t index(const FiniteAbelianGroup& G, const std::vector<std::int64_t>& c) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < G.rank(); ++i) {
    auto d = G.cyclic_orders()[i];
    idx = idx * static_cast<std::size_t>(d) + static_cast<std::size_t>(((c[i] % d) + d) % d);
  }
  return idx;
}

inline std::size_t add(const FiniteAbelianGroup& G, std::size_t a, std::size_t b) {
  auto ca = coords(G, a), cb = coords(G, b);
  for (std::size_t i = 0; i < ca.size(); ++i) ca[i] += cb[i];
  return index(G, ca);
}

// Double-loop convolution over Q.
inline std::vector<Rational> convolve(const FiniteAbelianGroup& G, const std::vector<Rational>& a,
                                      const std::vector<Rational>& b) {
  std::vector<Rational> out(G.order());
  for (std::size_t g = 0; g < G.order(); ++g)
    for (std::size_t h = 0; h < G.order(); ++h) out[add(G, g, h)] += a[g] * b[h];
  return out;
}

// Leibniz expansion with the naive convolution.
inline std::vector<Rational> leibniz(const FiniteAbelianGroup& G, const std::vector<std::vector<std::vector<Rational>>>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Rational> total(G.order());
  do {
    std::vector<Rational> term(G.order());
    term[0] = 1;
    for (std::size_t i = 0; i < n; ++i) term = convolve(G, term, m[i][perm[i]]);
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    for (std::size_t g = 0; g < G.order(); ++g) total[g] += sign * term[g];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline std::vector<std::vector<std::vector<Rational>>> raw(const GRMatrix& m) {
  std::vector<std::vector<std::vector<Rational>>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(m(i, j).coeffs());
  return out;
}

inline std::int64_t inverse_mod(std::int64_t a, std::int64_t f) {
  for (std::int64_t b = 1; b < f; ++b)
    if ((a * b) % f == 1 % f) return b;
  return 1;
}

// Theta_{S,T}(E) from Hurwitz values zeta(0, a/f) = 1/2 - a/f summed over the
// fibres of (Z/f)^* -> G_E, f the conductor, S = {inf} + primes | f + extra_S.
// The Euler factors for extra_S and T are applied by naive convolution.
inline std::vector<Rational> partial_zeta(const AbelianFieldQ& E, const std::vector<std::int64_t>& extra_S,
                                          const std::vector<std::int64_t>& T) {
  const std::int64_t f = E.conductor();
  const auto& G = *E.group();
  std::vector<Rational> out(G.order());
  for (std::int64_t a = 1; a <= f; ++a) {
    if (std::gcd(a, f) != 1) continue;
    out[E.label(inverse_mod(a, f))] += Rational(1, 2) - Rational(a, f);
  }
  auto factor = [&](std::int64_t ell, std::int64_t scale) {
    std::vector<Rational> y(G.order());
    y[0] += 1;
    y[E.label(inverse_mod(ell % f, f))] -= scale;
    out = convolve(G, out, y);
  };
  for (auto ell : extra_S) factor(ell, 1);
  for (auto ell : T) factor(ell, ell);
  return out;
}

inline GroupRingElement random_element(const GroupPtr& G, const CoefficientRing& R, std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  std::vector<Rational> c(G->order());
  for (auto& x : c) x = d(rng);
  return GroupRingElement(G, R, std::move(c));
}

inline GroupPtr random_group(std::mt19937_64& rng, std::size_t max_order) {
  for (;;) {
    std::vector<std::int64_t> orders;
    std::size_t order = 1;
    int rank = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < rank; ++i) {
      std::int64_t d = 1 + static_cast<std::int64_t>(rng() % 6);
      orders.push_back(d);
      order *= static_cast<std::size_t>(d);
    }
    if (order <= max_order) return make_group(orders);
  }
}

/// Brute-force lift search: enumerates every ztilde over Z/p^N on the
/// transversal of G_K. Each member E contributes the rows of
/// ztilde -> p^{r_E} e_E red(ztilde) P_i mod p^{k + r_E}, checked against the
/// same map applied to z_E.
struct BruteForce {
  bool feasible = false;
  std::uint64_t enumerated = 0;
};

inline BruteForce brute_force_lift(const NormFamily& fam, std::size_t stage, int k, const std::vector<Place>& order) {
  const auto& K = fam.lattice.members[0];
  int R = 0;
  for (const auto& e : fam.entries) R = std::max(R, e.r);
  const int N = k + R;
  const std::int64_t PN = ipow(fam.p, N);
  auto mrK = K.minus_ring(CoefficientRing::rationals());
  const std::size_t n = mrK->dimension();

  struct Row {
    std::int64_t mod;
    std::vector<std::int64_t> a;
    std::int64_t b;
  };
  std::vector<Row> rows;
  for (const auto& entry : fam.entries) {
    const auto& E = entry.field;
    const int M = k + entry.r;
    const std::int64_t mod = ipow(fam.p, M);
    auto Q = CoefficientRing::rationals();
    auto mrE = E.minus_ring(Q);
    auto s = idempotent_eE(E, fam.p) * Rational(ipow(fam.p, entry.r));
    auto P = minus_project(euler_P_stage(K, E, fam.p, order, stage).value.change_ring(Q), mrE);
    auto mult = s * P;
    auto q = K.restriction_to(E);
    std::vector<std::vector<Rational>> cols;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rational> unit(n);
      unit[j] = 1;
      cols.push_back((mult * reduce(MinusElement(mrK, unit), q, mrE)).coeffs());
    }
    auto zE = entry.x.change_ring(CoefficientRing::residues(fam.p, M));
    auto rhs = (mult * MinusElement(mrE, zE.coeffs())).coeffs();
    for (std::size_t t = 0; t < mrE->dimension(); ++t) {
      Row row{mod, {}, static_cast<std::int64_t>(rational_mod(rhs[t], BigInt(mod), fam.p).get_si())};
      for (std::size_t j = 0; j < n; ++j) row.a.push_back(rational_mod(cols[j][t], BigInt(mod), fam.p).get_si());
      rows.push_back(std::move(row));
    }
  }

  BruteForce out;
  std::vector<std::int64_t> z(n, 0);
  std::vector<std::int64_t> acc(rows.size(), 0);  // A z mod row modulus
  for (;;) {
    ++out.enumerated;
    bool hit = true;
    for (std::size_t t = 0; t < rows.size() && hit; ++t) hit = acc[t] == rows[t].b;
    if (hit) {
      out.feasible = true;
      return out;
    }
    std::size_t j = 0;
    for (; j < n; ++j) {
      if (++z[j] < PN) {
        for (std::size_t t = 0; t < rows.size(); ++t) acc[t] = (acc[t] + rows[t].a[j]) % rows[t].mod;
        break;
      }
      z[j] = 0;
      // wrapping removes (PN - 1) a_j, the same as adding a_j once more
      for (std::size_t t = 0; t < rows.size(); ++t) acc[t] = (acc[t] + rows[t].a[j]) % rows[t].mod;
    }
    if (j == n) return out;
  }
}

}  // namespace oracle
