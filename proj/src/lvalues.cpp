#include "etnckit/lvalues.hpp"

#include <algorithm>

#include "etnckit/error.hpp"

namespace etnckit {

namespace {

const CoefficientRing kQ = CoefficientRing::rationals();
const CoefficientRing kZ = CoefficientRing::integers();

bool has(const std::vector<Place>& s, Place v) { return std::find(s.begin(), s.end(), v) != s.end(); }

std::vector<Place> finite_part(const std::vector<Place>& s) {
  std::vector<Place> out;
  for (Place v : s)
    if (v != kInfinity) out.push_back(v);
  return out;
}

void validate_sets(const AbelianFieldQ& E, const std::vector<Place>& S, const std::vector<Place>& T,
                   bool allow_ramified_T) {
  require(E.is_cm(), ErrorKind::Precondition, "Stickelberger element of the non-CM field " + E.descriptor());
  require(has(S, kInfinity), ErrorKind::Precondition, "depletion set must contain the infinite place");
  for (Place v : S)
    require(v == kInfinity || is_prime(v), ErrorKind::Precondition, "place " + std::to_string(v) + " is not prime");
  for (Place v : T) {
    require(v != kInfinity && is_prime(v), ErrorKind::Precondition,
            "smoothing place " + place_name(v) + " is not a prime");
    require(!has(S, v), ErrorKind::Precondition, "smoothing place " + place_name(v) + " lies in the depletion set");
    if (!allow_ramified_T)
      require(!E.is_ramified(v), ErrorKind::Precondition,
              "smoothing place " + std::to_string(v) + " is ramified in " + E.descriptor());
  }
  for (std::int64_t ell : E.ramified_primes())
    require(has(S, ell) || (allow_ramified_T && has(T, ell)), ErrorKind::Precondition,
            "ramified prime " + std::to_string(ell) + " is neither depleted nor smoothed");
}

// Fixed field of the subgroup U of G_E.
AbelianFieldQ fixed_field(const AbelianFieldQ& E, const std::vector<ElementIndex>& U) {
  std::vector<std::int64_t> gens;
  const std::int64_t f = E.conductor();
  for (std::int64_t a = 1; a <= f; ++a)
    if (gcd64(a, f) == 1 && std::binary_search(U.begin(), U.end(), E.label(a))) gens.push_back(a);
  return AbelianFieldQ::build(f, gens, false);
}

GroupRingElement idempotent_of(const AbelianFieldQ& E, const std::vector<ElementIndex>& subgroup) {
  return GroupRingElement::sum_of(E.group(), kQ, subgroup) * Rational(1, static_cast<unsigned long>(subgroup.size()));
}

// log of psi(a) where psi is the primitive character attached to chi.
std::int64_t psi_log(const AbelianFieldQ& E, const Character& chi, std::int64_t fchi, std::int64_t a) {
  const std::int64_t f = E.conductor();
  for (std::int64_t x = mod(a, fchi); x < f + fchi * f; x += fchi)
    if (gcd64(x, f) == 1) return chi.log(E.label(x));
  fail(ErrorKind::Internal, "no unit lift found");
}

}  // namespace

GroupRingElement conductor_stickelberger(const AbelianFieldQ& E) {
  const std::int64_t f = E.conductor();
  const auto& G = *E.group();
  std::vector<Rational> c(G.order());
  for (std::int64_t a = 0; a < f; ++a) {
    if (gcd64(a, f) != 1 && f != 1) continue;
    c[G.inverse(E.label(a))] += Rational(1, 2) - Rational(a, f);
  }
  return GroupRingElement(E.group(), kQ, std::move(c));
}

GroupRingElement theta_coset_sum(const AbelianFieldQ& E, const std::vector<Place>& S, const std::vector<Place>& T) {
  validate_sets(E, S, T, true);
  const auto& G = *E.group();
  std::vector<Place> Rp;  // ramified smoothing places
  for (Place v : T)
    if (E.is_ramified(v)) Rp.push_back(v);

  GroupRingElement total(E.group(), kQ);
  for (std::size_t mask = 0; mask < (std::size_t{1} << Rp.size()); ++mask) {
    // W = bits set: chi ramified there; trivial on the other inertia groups
    std::vector<ElementIndex> gens;
    GroupRingElement eps = GroupRingElement::one(E.group(), kQ);
    for (std::size_t i = 0; i < Rp.size(); ++i) {
      const auto& I = E.place(Rp[i]).inertia;
      GroupRingElement eI = idempotent_of(E, I);
      if (mask >> i & 1) {
        eps *= GroupRingElement::one(E.group(), kQ) - eI;
      } else {
        eps *= eI;
        gens.insert(gens.end(), I.begin(), I.end());
      }
    }
    auto U = G.subgroup_generated(gens);
    if (std::binary_search(U.begin(), U.end(), E.conjugation())) continue;

    AbelianFieldQ EW = fixed_field(E, U);
    GroupRingElement X = conductor_stickelberger(EW);
    for (Place v : finite_part(S))
      if (!EW.is_ramified(v)) X *= depletion_factor(EW, v).value.change_ring(kQ);
    for (Place v : T)
      if (!EW.is_ramified(v)) X *= smoothing_factor(EW, v).value.change_ring(kQ);

    auto q = E.restriction_to(EW);
    std::vector<ElementIndex> section(EW.degree(), G.order());
    for (ElementIndex g = 0; g < G.order(); ++g)
      if (section[q(g)] == G.order()) section[q(g)] = g;
    std::vector<Rational> lifted(G.order());
    for (ElementIndex h = 0; h < EW.degree(); ++h) lifted[section[h]] = X[h];
    total += eps * GroupRingElement(E.group(), kQ, std::move(lifted));
  }
  return total;
}

std::int64_t character_conductor(const AbelianFieldQ& E, const Character& chi) {
  const std::int64_t f = E.conductor();
  for (std::int64_t d : divisors(f)) {
    bool trivial = true;
    for (std::int64_t x = 1; x < f && trivial; x += d)
      if (gcd64(x, f) == 1 && chi.log(E.label(x)) != 0) trivial = false;
    if (trivial) return d;
  }
  return f;
}

CyclotomicNumber bernoulli_b1(const AbelianFieldQ& E, const Character& chi) {
  const std::int64_t fchi = character_conductor(E, chi);
  CyclotomicNumber b(chi.field());
  if (fchi == 1) {
    b.add_zeta_power(0, Rational(1, 2));  // B_1 = 1/2 for the trivial character
    return b;
  }
  for (std::int64_t a = 1; a < fchi; ++a)
    if (gcd64(a, fchi) == 1) b.add_zeta_power(psi_log(E, chi, fchi, a), Rational(a, fchi));
  return b;
}

GroupRingElement theta_bernoulli(const AbelianFieldQ& E, const std::vector<Place>& S, const std::vector<Place>& T) {
  validate_sets(E, S, T, true);
  auto chars = Character::all(E.group());
  std::vector<CyclotomicNumber> values;
  values.reserve(chars.size());
  const auto field = chars[0].field();
  for (const auto& chi : chars) {
    if (!chi.is_odd(E.conjugation())) {
      values.emplace_back(field);
      continue;
    }
    Character cb = chi.conjugate();
    const std::int64_t fchi = character_conductor(E, cb);
    CyclotomicNumber val = bernoulli_b1(E, cb) * Rational(-1);
    for (Place v : finite_part(S)) {
      if (fchi % v == 0) continue;
      CyclotomicNumber fac = CyclotomicNumber::rational(field, 1);
      fac.add_zeta_power(psi_log(E, cb, fchi, v), -1);
      val = val * fac;
    }
    for (Place v : T) {
      if (fchi % v == 0) continue;
      CyclotomicNumber fac = CyclotomicNumber::rational(field, 1);
      fac.add_zeta_power(psi_log(E, cb, fchi, v), -Rational(v));
      val = val * fac;
    }
    values.push_back(val);
  }
  return fourier_inverse(E.group(), chars, values);
}

namespace {

StickelbergerElement assemble(const AbelianFieldQ& E, const std::vector<Place>& S, const std::vector<Place>& T) {
  GroupRingElement a = theta_coset_sum(E, S, T);
  GroupRingElement b = theta_bernoulli(E, S, T);
  require(a == b, ErrorKind::Internal,
          "Stickelberger methods disagree for " + E.descriptor() + ": " + a.to_string() + " vs " + b.to_string());
  StickelbergerElement st{E, S, T, a, minus_project(a, E.minus_ring(kQ))};
  st.dr_condition = dr_condition_check(E, T);
  st.integral = a.is_integral();
  st.warning = !st.dr_condition;
  return st;
}

}  // namespace

StickelbergerElement theta(const AbelianFieldQ& E, const std::vector<Place>& S, const std::vector<Place>& T) {
  validate_sets(E, S, T, false);
  auto st = assemble(E, S, T);
  if (st.dr_condition)
    require(st.integral, ErrorKind::Internal, "Deligne-Ribet integrality fails for " + E.descriptor());
  return st;
}

StickelbergerElement theta_general(const AbelianFieldQ& E, const std::vector<Place>& S,
                                   const std::vector<Place>& T) {
  return assemble(E, S, T);
}

// ---------------------------------------------------------------------------

const char* to_string(EulerKind kind) {
  switch (kind) {
    case EulerKind::P: return "P";
    case EulerKind::Q: return "Q";
    case EulerKind::Smoothing: return "smoothing";
    case EulerKind::X: return "x";
    case EulerKind::Y: return "y";
  }
  return "?";
}

EulerFactor depletion_factor(const AbelianFieldQ& E, Place v) {
  require(v != kInfinity && !E.is_ramified(v), ErrorKind::Precondition,
          "depletion factor at " + place_name(v) + " needs an unramified finite place");
  const auto& pd = E.place(v);
  auto val = GroupRingElement::one(E.group(), kZ) -
             GroupRingElement::monomial(E.group(), kZ, E.group()->inverse(pd.frobenius));
  return {EulerKind::P, v, val};
}

EulerFactor smoothing_factor(const AbelianFieldQ& E, Place v) {
  require(v != kInfinity && !E.is_ramified(v), ErrorKind::Precondition,
          "smoothing factor at " + place_name(v) + " needs an unramified finite place");
  const auto& pd = E.place(v);
  auto val = GroupRingElement::one(E.group(), kZ) -
             GroupRingElement::monomial(E.group(), kZ, E.group()->inverse(pd.frobenius), Rational(v));
  return {EulerKind::Smoothing, v, val};
}

namespace {

GroupRingElement xy_value(const AbelianFieldQ& E, Place v, std::int64_t scale) {
  require(v != kInfinity, ErrorKind::Precondition, "x_v, y_v need a finite place");
  const auto& pd = E.place(v);
  auto NI = GroupRingElement::sum_of(E.group(), kZ, pd.inertia);
  auto s = GroupRingElement::monomial(E.group(), kZ, E.group()->inverse(pd.frobenius), Rational(scale));
  return GroupRingElement::scalar(E.group(), kZ, pd.ramification_index) - s * NI;
}

}  // namespace

EulerFactor x_factor(const AbelianFieldQ& E, Place v) { return {EulerKind::X, v, xy_value(E, v, 1)}; }
EulerFactor y_factor(const AbelianFieldQ& E, Place v) { return {EulerKind::Y, v, xy_value(E, v, v)}; }

EulerProduct euler_P_stage(const AbelianFieldQ& K, const AbelianFieldQ& E, std::int64_t p,
                           const std::vector<Place>& sigma_order, std::size_t stage) {
  require(K.contains(E), ErrorKind::Precondition, E.descriptor() + " is not a subfield of " + K.descriptor());
  auto sk = sigma_sets(K, p, {}).Sigma;
  auto se = sigma_sets(E, p, {}).Sigma;
  EulerProduct out{{}, GroupRingElement::one(E.group(), kZ)};
  for (std::size_t j = stage; j < sigma_order.size(); ++j) {
    Place v = sigma_order[j];
    if (!has(sk, v) || has(se, v)) continue;
    auto fac = depletion_factor(E, v);
    out.value *= fac.value;
    out.factors.push_back(std::move(fac));
  }
  return out;
}

EulerProduct euler_P(const AbelianFieldQ& Eprime, const AbelianFieldQ& E, std::int64_t p) {
  auto order = sigma_sets(Eprime, p, {}).Sigma;
  return euler_P_stage(Eprime, E, p, order, 0);
}

EulerProduct euler_Q(const AbelianFieldQ& Kprime, const AbelianFieldQ& K, std::int64_t p,
                     const std::vector<std::int64_t>& T) {
  require(Kprime.contains(K), ErrorKind::Precondition, K.descriptor() + " is not a subfield of " + Kprime.descriptor());
  auto a = sigma_sets(Kprime, p, T);
  auto b = sigma_sets(K, p, T);
  require(a.Sigma == b.Sigma, ErrorKind::Precondition, "Q(K'/K) needs Sigma(K') = Sigma(K)");
  EulerProduct out{{}, GroupRingElement::one(K.group(), kZ)};
  for (Place v : a.SigmaPrime) {
    if (has(b.SigmaPrime, v)) continue;
    auto fac = smoothing_factor(K, v);
    fac.kind = EulerKind::Q;
    out.value *= fac.value;
    out.factors.push_back(std::move(fac));
  }
  return out;
}

MinusElement idempotent_eE(const AbelianFieldQ& E, std::int64_t p) {
  GroupRingElement e = GroupRingElement::one(E.group(), kQ);
  for (Place v : sigma_sets(E, p, {}).Sigma)
    e *= GroupRingElement::one(E.group(), kQ) - idempotent_of(E, E.place(v).decomposition);
  return minus_project(e, E.minus_ring(kQ));
}

// ---------------------------------------------------------------------------

IdentityReport check_tnorm(const AbelianFieldQ& Eprime, const AbelianFieldQ& E, std::int64_t p,
                           const std::vector<Place>& sigma_prime, const MinusElement* perturb_lhs) {
  auto mr = E.minus_ring(kQ);
  auto top = theta_general(Eprime, sigma_sets(Eprime, p, {}).Sigma, sigma_prime);
  auto bottom = theta_general(E, sigma_sets(E, p, {}).Sigma, sigma_prime);
  auto P = euler_P(Eprime, E, p);
  auto lhs = minus_project(reduce(top.value, Eprime.restriction_to(E)), mr);
  if (perturb_lhs) lhs += *perturb_lhs;
  auto rhs = minus_project(bottom.value * P.value.change_ring(kQ), mr);
  auto diff = lhs - rhs;
  return {"tnorm", Eprime.descriptor() + " -> " + E.descriptor(), diff.is_zero(), lhs, rhs, diff};
}

IdentityReport check_st_conversion(const AbelianFieldQ& K, const AbelianFieldQ& E, std::int64_t p,
                                   const std::vector<std::int64_t>& T, bool k_level) {
  auto sk = sigma_sets(K, p, T);
  auto se = sigma_sets(E, p, T);
  std::vector<Place> J;
  for (Place v : sk.S)
    if (!has(sk.Sigma, v)) J.push_back(v);

  auto theta_st = theta(E, se.S, T);
  auto theta_ss = theta_general(E, se.Sigma, sk.SigmaPrime);
  auto q = K.restriction_to(E);
  GroupRingElement lhs = theta_st.value;
  GroupRingElement rhs = theta_ss.value;
  for (Place v : J) {
    bool in_SE = has(se.S, v);
    if (k_level) {
      lhs *= reduce(y_factor(K, v).value, q).change_ring(kQ);
      if (in_SE)
        rhs *= reduce(x_factor(K, v).value, q).change_ring(kQ);
      else
        rhs = rhs * Rational(K.place(v).ramification_index);
    } else {
      lhs *= y_factor(E, v).value.change_ring(kQ);
      if (in_SE)
        rhs *= x_factor(E, v).value.change_ring(kQ);
      else
        rhs = rhs * Rational(E.place(v).ramification_index);
    }
  }
  auto mr = E.minus_ring(kQ);
  auto l = minus_project(lhs, mr);
  auto r = minus_project(rhs, mr);
  auto d = l - r;
  return {k_level ? "st-conversion-reduced" : "st-conversion", E.descriptor(), d.is_zero(), l, r, d};
}

}  // namespace etnckit
