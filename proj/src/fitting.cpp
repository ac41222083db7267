#include "etnckit/fitting.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <optional>

#include "etnckit/arith.hpp"
#include "etnckit/error.hpp"
#include "etnckit/linalg.hpp"

namespace etnckit {

GRMatrix gr_zero_matrix(std::size_t rows, std::size_t cols, const GroupPtr& G, const CoefficientRing& R) {
  return GRMatrix(rows, cols, GroupRingElement(G, R));
}

GRMatrix gr_identity_matrix(std::size_t n, const GroupPtr& G, const CoefficientRing& R) {
  auto m = gr_zero_matrix(n, n, G, R);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = GroupRingElement::one(G, R);
  return m;
}

namespace {

// Inverse of b in Q[G] through its regular representation, if b is a unit.
std::optional<GroupRingElement> rational_inverse(const GroupRingElement& b) {
  const auto& G = *b.group();
  const std::size_t n = G.order();
  // M[g][h] = coefficient of g in b*h = b_{g h^{-1}}; augmented with e_1.
  std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n + 1));
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t h = 0; h < n; ++h) M[g][h] = b[G.mul(g, G.inverse(h))];
    M[g][n] = (g == 0) ? 1 : 0;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && M[piv][c] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(M[piv], M[c]);
    Rational inv = 1 / M[c][c];
    for (std::size_t j = c; j <= n; ++j) M[c][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || M[i][c] == 0) continue;
      Rational f = M[i][c];
      for (std::size_t j = c; j <= n; ++j) M[i][j] -= f * M[c][j];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = M[i][n];
  return GroupRingElement(b.group(), CoefficientRing::rationals(), std::move(x));
}

std::optional<GroupRingElement> bareiss(GRMatrix m) {
  const std::size_t n = m.rows();
  const auto& R = m.zero().ring();
  const auto Q = CoefficientRing::rationals();
  bool negate = false;
  std::optional<GroupRingElement> prev_inv;  // inverse of the previous pivot
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::optional<GroupRingElement> inv;
    std::size_t piv = k;
    for (; piv < n; ++piv) {
      if (m(piv, k).is_zero()) continue;
      inv = rational_inverse(m(piv, k).change_ring(Q));
      if (inv) break;
    }
    if (!inv) return std::nullopt;
    if (piv != k) {
      m.swap_rows(piv, k);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        auto t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        if (prev_inv) {
          auto qt = t.change_ring(Q) * *prev_inv;
          if (R == CoefficientRing::integers() && !qt.is_integral()) return std::nullopt;
          t = qt.change_ring(R);
        }
        m(i, j) = std::move(t);
      }
      m(i, k) = m.zero();
    }
    prev_inv = std::move(inv);
  }
  auto d = m(n - 1, n - 1);
  return negate ? -d : d;
}

}  // namespace

GroupRingElement det_leibniz(const GRMatrix& m) {
  require(m.square(), ErrorKind::Structural, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  auto total = m.zero();
  auto one = GroupRingElement::one(m.zero().group(), m.zero().ring());
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    auto term = one;
    for (std::size_t i = 0; i < n && !term.is_zero(); ++i) term *= m(i, perm[i]);
    if (inversions % 2) total -= term;
    else total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

GroupRingElement det_laplace(const GRMatrix& m) {
  require(m.square(), ErrorKind::Structural, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  require(n < 24, ErrorKind::Unsupported, "expansion limited to n < 24");
  // D[mask]: minor on rows 0..|mask|-1 and the columns in mask.
  std::vector<GroupRingElement> D(std::size_t{1} << n, m.zero());
  D[0] = GroupRingElement::one(m.zero().group(), m.zero().ring());
  for (std::size_t mask = 1; mask < D.size(); ++mask) {
    const std::size_t r = static_cast<std::size_t>(std::popcount(mask)) - 1;
    std::size_t pos = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask >> j & 1)) continue;
      const auto& sub = D[mask & ~(std::size_t{1} << j)];
      if (!sub.is_zero() && !m(r, j).is_zero()) {
        auto term = m(r, j) * sub;
        if ((r + pos) % 2) D[mask] -= term;
        else D[mask] += term;
      }
      ++pos;
    }
  }
  return D.back();
}

GroupRingElement det_group_ring(const GRMatrix& m, DetMethod* used) {
  require(m.square(), ErrorKind::Structural, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) {
    if (used) *used = DetMethod::Leibniz;
    return GroupRingElement::one(m.zero().group(), m.zero().ring());
  }
  if (!m.zero().ring().is_residue()) {
    if (auto d = bareiss(m)) {
      if (used) *used = DetMethod::Bareiss;
      return *d;
    }
  }
  if (n <= 5) {
    if (used) *used = DetMethod::Leibniz;
    return det_leibniz(m);
  }
  if (used) *used = DetMethod::Laplace;
  return det_laplace(m);
}

MinusElement det_minus(const MinusMatrix& m) {
  require(m.square(), ErrorKind::Structural, "determinant of a non-square matrix");
  const auto& parent = m.zero().parent();
  auto lifted = m.map([](const MinusElement& x) { return x.lift(); });
  return minus_project(det_group_ring(lifted), parent);
}

std::vector<GroupRingElement> fitting_ideal(const GeneralPresentation& p) {
  require(p.cols() >= 1, ErrorKind::Structural, "presentation needs at least one generator");
  const std::size_t r = p.rows(), s = p.cols();
  std::vector<GroupRingElement> gens;
  if (r < s) return gens;
  std::vector<std::size_t> cols(s);
  std::iota(cols.begin(), cols.end(), 0);
  // s-subsets of rows in lexicographic order
  std::vector<char> pick(r, 0);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(s), 1);
  do {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < r; ++i)
      if (pick[i]) rows.push_back(i);
    gens.push_back(det_group_ring(p.submatrix(rows, cols)));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return gens;
}

ResidueModuleReport residue_module_check(std::int64_t ell, std::int64_t f, std::int64_t p, int k) {
  require(ell >= 2 && f >= 1 && k >= 1 && is_prime(p), ErrorKind::Input, "residue module check: bad parameters");
  auto G = make_group({f});
  auto R = CoefficientRing::residues(p, k);
  auto sigma_inv = G->inverse(f > 1 ? 1 : 0);
  auto b = GroupRingElement::one(G, R) - GroupRingElement::monomial(G, R, sigma_inv, Rational(ell));
  ResidueMatrix M(p, k, static_cast<std::size_t>(f), static_cast<std::size_t>(f));
  for (std::size_t h = 0; h < G->order(); ++h) {
    auto col = b * GroupRingElement::monomial(G, R, h);
    for (std::size_t g = 0; g < G->order(); ++g) M.set(g, h, col[g].get_num());
  }
  auto snf = residue_smith_form(M);
  ResidueModuleReport rep{ell, f, p, k, {}, 0, false};
  for (int v : snf.valuations)
    if (v > 0) rep.valuations.push_back(v);
  for (std::size_t i = snf.valuations.size(); i < static_cast<std::size_t>(f); ++i) rep.valuations.push_back(k);
  rep.expected = std::min(k, valuation(ipow(ell, static_cast<int>(f)) - 1, p));
  rep.ok = rep.expected == 0 ? rep.valuations.empty()
                             : rep.valuations == std::vector<int>{rep.expected};
  return rep;
}

void LocalRWParams::validate() const {
  require(group != nullptr, ErrorKind::Precondition, "local data without a group");
  require(e >= 1 && q >= 2, ErrorKind::Precondition, "need e >= 1 and q >= 2");
  require((q - 1) % e == 0, ErrorKind::Precondition,
          "e = " + std::to_string(e) + " does not divide q - 1 = " + std::to_string(q - 1));
  require(tau < group->order() && sigma < group->order(), ErrorKind::Precondition, "tau or sigma outside G");
  require(group->element_order(tau) == e, ErrorKind::Precondition, "tau must have order e");
  std::vector<ElementIndex> gens{tau, sigma};
  require(group->subgroup_generated(gens).size() == group->order(), ErrorKind::Precondition,
          "tau and sigma must generate G");
}

LocalRWParams LocalRWParams::from_relations(int e, std::int64_t f, std::int64_t j, std::int64_t q) {
  require(e >= 1 && f >= 1, ErrorKind::Precondition, "need e, f >= 1");
  IntMatrix A{{BigInt(e), BigInt(0)}, {BigInt(-j), BigInt(f)}};
  auto snf = integer_smith_form(A);
  std::vector<std::int64_t> orders;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < 2; ++i)
    if (snf.diagonal[i] > 1) {
      orders.push_back(snf.diagonal[i].get_si());
      kept.push_back(i);
    }
  auto G = make_group(orders);
  auto image = [&](std::size_t basis) {
    std::vector<std::int64_t> coords;
    for (std::size_t k = 0; k < kept.size(); ++k) {
      BigInt s = snf.V[basis][kept[k]];
      BigInt m;
      mpz_fdiv_r(m.get_mpz_t(), s.get_mpz_t(), BigInt(orders[k]).get_mpz_t());
      coords.push_back(m.get_si());
    }
    return G->index_of(coords);
  };
  LocalRWParams params{G, image(0), image(1), e, q};
  params.validate();
  return params;
}

std::string LocalRWParams::describe() const {
  return "G=" + group->describe() + " e=" + std::to_string(e) + " q=" + std::to_string(q) +
         " ord(sigma)=" + std::to_string(group->element_order(sigma));
}

GroupRingElement local_rw_z(const LocalRWParams& P) {
  const auto Z = CoefficientRing::integers();
  auto z = GroupRingElement(P.group, Z);
  const auto sinv = P.group->inverse(P.sigma);
  for (int i = 0; i + 2 <= P.e; ++i)
    z += GroupRingElement::monomial(P.group, Z, P.group->mul(sinv, P.group->pow(P.tau, i)), Rational(P.e - 1 - i));
  return z;
}

QuadraticPresentation local_rw_presentation(const LocalRWParams& P) {
  P.validate();
  const auto Z = CoefficientRing::integers();
  const auto& G = P.group;
  auto one = GroupRingElement::one(G, Z);
  auto tau = GroupRingElement::monomial(G, Z, P.tau);
  auto sinv = GroupRingElement::monomial(G, Z, G->inverse(P.sigma));
  std::vector<ElementIndex> tg{P.tau};
  auto NI = GroupRingElement::sum_of(G, Z, G->subgroup_generated(tg));
  const Rational c((1 - P.q) / P.e);

  QuadraticPresentation out{gr_zero_matrix(2, 2, G, Z), {"relation", "xtilde"}, {"g_sigma", "g_tau"}};
  out.matrix(0, 0) = tau - one;
  out.matrix(0, 1) = -(one - sinv + sinv * NI * c);
  out.matrix(1, 0) = one * Rational(P.e);
  out.matrix(1, 1) = -local_rw_z(P);
  return out;
}

LemmaTXReport verify_lemma_tx(const LocalRWParams& P) {
  auto pres = local_rw_presentation(P);
  const auto Z = CoefficientRing::integers();
  const auto& G = P.group;
  auto one = GroupRingElement::one(G, Z);
  auto tau = GroupRingElement::monomial(G, Z, P.tau);
  auto sinv = GroupRingElement::monomial(G, Z, G->inverse(P.sigma));
  std::vector<ElementIndex> tg{P.tau};
  auto NI = GroupRingElement::sum_of(G, Z, G->subgroup_generated(tg));

  LemmaTXReport rep{P.describe(), det_group_ring(pres.matrix), one * Rational(P.e) - sinv * NI * Rational(P.q),
                    false, false};
  rep.det_ok = rep.det == rep.expected;
  auto image = (one - sinv) * Rational(P.e) - local_rw_z(P) * (tau - one);
  rep.image_ok = image == one * Rational(P.e) - sinv * NI;
  return rep;
}

std::vector<LocalRWParams> lemma_tx_sweep(int max_e, std::int64_t max_q, std::int64_t max_order) {
  std::vector<LocalRWParams> out;
  for (int e = 1; e <= max_e; ++e)
    for (std::int64_t q = 2; q <= max_q; ++q) {
      if (!is_prime(q) || (q - 1) % e != 0) continue;
      for (std::int64_t f = 1; e * f <= max_order; ++f)
        for (std::int64_t j = 0; j < e; ++j) out.push_back(LocalRWParams::from_relations(e, f, j, q));
    }
  return out;
}

FunctorialityReport det_functoriality_check(const GRMatrix& m, const GroupSurjection& q, const GroupRingElement& u) {
  require(m.square(), ErrorKind::Structural, "determinant of a non-square matrix");
  require(same_group(u.group(), m.zero().group()), ErrorKind::Structural, "block entry over another group");
  FunctorialityReport rep{};
  auto d = det_group_ring(m);
  auto red = m.map([&](const GroupRingElement& x) { return reduce(x, q); });
  rep.coinvariance = reduce(d, q) == det_group_ring(red);

  const std::size_t n = m.rows();
  auto ext = gr_zero_matrix(n + 1, n + 1, m.zero().group(), m.zero().ring());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ext(i, j) = m(i, j);
  ext(n, n) = u.change_ring(m.zero().ring());
  rep.block_extension = det_group_ring(ext) == d * ext(n, n);
  return rep;
}

}  // namespace etnckit
