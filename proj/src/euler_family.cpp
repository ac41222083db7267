#include "etnckit/euler_family.hpp"

#include <algorithm>

#include "etnckit/error.hpp"
#include "etnckit/linalg.hpp"
#include "etnckit/lvalues.hpp"

namespace etnckit {

namespace {

CoefficientRing residues(std::int64_t p, int M) { return CoefficientRing::residues(p, M); }

BigInt ppow(std::int64_t p, int e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return r;
}

// Reduce x (on E', precision >= M) to E at precision M.
MinusElement descend(const MinusElement& x, const AbelianFieldQ& Eprime, const AbelianFieldQ& E, int M) {
  auto ring = residues(x.ring().prime(), M);
  auto xm = x.change_ring(ring);
  if (Eprime == E) return MinusElement(E.minus_ring(ring), xm.coeffs());
  return reduce(xm, Eprime.restriction_to(E), E.minus_ring(ring));
}

MinusElement as_precision(const MinusElement& x, const AbelianFieldQ& E, int M) {
  require(x.ring().is_residue(), ErrorKind::Structural, "family entries must be residue-valued");
  if (x.ring().precision() >= M) return MinusElement(E.minus_ring(residues(x.ring().prime(), M)), x.change_ring(residues(x.ring().prime(), M)).coeffs());
  fail(ErrorKind::Precision, "entry for " + E.descriptor() + " has precision " + std::to_string(x.ring().precision()) +
                                 ", need " + std::to_string(M));
}

MinusElement project_int(const GroupRingElement& x, const AbelianFieldQ& E, std::int64_t p, int M) {
  return minus_project(x.change_ring(residues(p, M)), E.minus_ring(residues(p, M)));
}

void validate_order(const AbelianFieldQ& K, std::int64_t p, const std::vector<Place>& order) {
  auto sk = sigma_sets(K, p, {}).Sigma;
  auto a = sk, b = order;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  require(a == b, ErrorKind::Input, "sigma ordering must be a permutation of Sigma(K)");
}

}  // namespace

int denominator_exponent(const AbelianFieldQ& E, std::int64_t p) {
  int r = 0;
  for (Place v : sigma_sets(E, p, {}).Sigma)
    r += valuation(static_cast<std::int64_t>(E.place(v).decomposition.size()), p);
  return r;
}

MinusElement scaled_idempotent(const AbelianFieldQ& E, std::int64_t p, int M) {
  auto e = idempotent_eE(E, p) * Rational(ppow(p, denominator_exponent(E, p)));
  return MinusElement(E.minus_ring(residues(p, M)), e.coeffs());
}

REElement REElement::make(const AbelianFieldQ& E, std::int64_t p, int k, const MinusElement& rep) {
  require(k >= 1, ErrorKind::Input, "precision k must be positive");
  int r = denominator_exponent(E, p);
  require(rep.ring().prime() == p, ErrorKind::Structural, "entry prime mismatch");
  return REElement{E, p, k, r, as_precision(rep, E, k + r)};
}

bool REElement::equivalent(const REElement& o) const {
  require(field == o.field && p == o.p && k == o.k, ErrorKind::Structural, "comparing unrelated R_E elements");
  return (scaled_idempotent(field, p, k + r) * (x - o.x)).is_zero();
}

NormFamily induce_family(const FieldLattice& lattice, std::int64_t p, int k, const MinusElement& ztilde) {
  require(!lattice.empty(), ErrorKind::Input, "empty lattice");
  NormFamily fam{lattice, p, k, {}};
  const auto& K = lattice.members[0];
  for (const auto& E : lattice.members) {
    int M = k + denominator_exponent(E, p);
    fam.entries.push_back(REElement::make(E, p, k, descend(ztilde, K, E, M)));
  }
  return fam;
}

int family_precision(const NormFamily& fam) {
  int R = 0;
  for (const auto& e : fam.entries) R = std::max(R, e.r);
  return fam.k + R;
}

std::vector<EdgeVerdict> is_norm_compatible(const NormFamily& fam) {
  std::vector<EdgeVerdict> out;
  for (auto [i, j] : fam.lattice.edges) {
    const auto& zE = fam.entries[i];
    const auto& zEp = fam.entries[j];
    const auto& E = zE.field;
    int M = fam.k + zE.r;
    auto P = euler_P(zEp.field, E, fam.p).value;
    bool vacuous = minus_project(P.change_ring(CoefficientRing::rationals()), E.minus_ring(CoefficientRing::rationals())).is_zero();
    auto diff = descend(zEp.x, zEp.field, E, M) - zE.x;
    auto val = scaled_idempotent(E, fam.p, M) * diff * project_int(P, E, fam.p, M);
    out.push_back({i, j, val.is_zero(), vacuous});
  }
  return out;
}

bool lift_well_defined_check(const NormFamily& fam, std::size_t sub, std::size_t super, const MinusElement& w) {
  const auto& zE = fam.entries[sub];
  const auto& zEp = fam.entries[super];
  const auto& E = zE.field;
  const auto& Ep = zEp.field;
  require(Ep.contains(E), ErrorKind::Precondition, "lift check needs E inside E'");
  int Mp = fam.k + zEp.r;
  int M = fam.k + zE.r;
  auto ring = residues(fam.p, Mp);
  auto one = MinusElement::one(Ep.minus_ring(ring));
  auto wp = as_precision(w, Ep, Mp);
  // p^{r'} (1 - e_{E'}) w is integral and killed by e_{E'}
  auto shift = (one * Rational(ppow(fam.p, zEp.r)) - scaled_idempotent(Ep, fam.p, Mp)) * wp;
  auto alt = zEp.x + shift;
  auto P = project_int(euler_P(Ep, E, fam.p).value, E, fam.p, M);
  auto s = scaled_idempotent(E, fam.p, M);
  auto a = s * descend(zEp.x, Ep, E, M) * P;
  auto b = s * descend(alt, Ep, E, M) * P;
  return a == b;
}

namespace {

// condition element for member E: p^{R - r_E} * p^{r_E} e_E * P_i(K/E) at precision N
MinusElement condition_multiplier(const NormFamily& fam, std::size_t idx, std::size_t stage, int N, int R,
                                  const std::vector<Place>& order) {
  const auto& E = fam.entries[idx].field;
  const auto& K = fam.lattice.members[0];
  auto P = project_int(euler_P_stage(K, E, fam.p, order, stage).value, E, fam.p, N);
  return scaled_idempotent(E, fam.p, N) * P * Rational(ppow(fam.p, R - fam.entries[idx].r));
}

}  // namespace

LiftResult lift_family(const NormFamily& fam, std::size_t stage, int k, const std::vector<Place>& sigma_order) {
  require(k >= 1, ErrorKind::Input, "precision k must be positive");
  require(k <= fam.k, ErrorKind::Precision,
          "family has precision " + std::to_string(fam.k) + ", lift requested at " + std::to_string(k));
  require(!fam.lattice.empty(), ErrorKind::Input, "empty lattice");
  const auto& K = fam.lattice.members[0];
  validate_order(K, fam.p, sigma_order);
  require(stage <= sigma_order.size(), ErrorKind::Input, "stage index exceeds #Sigma(K)");

  int R = 0;
  for (const auto& e : fam.entries) R = std::max(R, e.r);
  const int N = k + R;
  const auto ringN = residues(fam.p, N);
  auto mrK = K.minus_ring(ringN);
  const std::size_t n = mrK->dimension();

  std::size_t rows = 0;
  for (const auto& e : fam.entries) rows += e.field.degree() / 2;
  ResidueMatrix A(fam.p, N, rows, n);
  std::vector<std::int64_t> b(rows, 0);
  LiftResult out;
  out.precision = N;

  std::size_t row0 = 0;
  for (std::size_t idx = 0; idx < fam.entries.size(); ++idx) {
    const auto& E = fam.entries[idx].field;
    auto mult = condition_multiplier(fam, idx, stage, N, R, sigma_order);
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rational> unit(n);
      unit[j] = 1;
      auto col = mult * descend(MinusElement(mrK, unit), K, E, N);
      for (std::size_t t = 0; t < col.coeffs().size(); ++t) A.set(row0 + t, j, col.coeffs()[t].get_num());
    }
    auto zE = as_precision(fam.entries[idx].x, E, k + fam.entries[idx].r);
    auto rhs = mult * MinusElement(E.minus_ring(ringN), zE.coeffs());
    for (std::size_t t = 0; t < rhs.coeffs().size(); ++t) {
      b[row0 + t] = rhs.coeffs()[t].get_num().get_si();
      out.certificate_labels.push_back(E.descriptor() + " coeff " + std::to_string(t));
    }
    row0 += E.degree() / 2;
  }

  auto sol = solve_mod(A, b);
  out.feasible = sol.feasible;
  if (sol.feasible) {
    std::vector<Rational> c(sol.solution.begin(), sol.solution.end());
    MinusElement lift(mrK, std::move(c));
    auto verdicts = check_lift(fam, lift, stage, k, sigma_order);
    require(std::all_of(verdicts.begin(), verdicts.end(), [](bool v) { return v; }), ErrorKind::Internal,
            "lift returned by the solver fails the residual check");
    out.lift = std::move(lift);
    out.certificate_labels.clear();
  } else {
    out.certificate = sol.certificate;
    auto lamA = A.apply_left(sol.certificate);
    std::int64_t lamb = 0;
    for (std::size_t t = 0; t < rows; ++t) lamb = A.addmod(lamb, A.mulmod(sol.certificate[t], b[t]));
    out.certificate_verified =
        std::all_of(lamA.begin(), lamA.end(), [](std::int64_t v) { return v == 0; }) && lamb != 0;
  }
  return out;
}

std::vector<bool> check_lift(const NormFamily& fam, const MinusElement& ztilde, std::size_t stage, int k,
                             const std::vector<Place>& sigma_order) {
  const auto& K = fam.lattice.members[0];
  std::vector<bool> out;
  for (const auto& entry : fam.entries) {
    const auto& E = entry.field;
    int M = k + entry.r;
    auto P = project_int(euler_P_stage(K, E, fam.p, sigma_order, stage).value, E, fam.p, M);
    auto diff = descend(ztilde, K, E, M) - as_precision(entry.x, E, M);
    out.push_back((scaled_idempotent(E, fam.p, M) * diff * P).is_zero());
  }
  return out;
}

}  // namespace etnckit
