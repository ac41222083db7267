#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "etnckit/cyclotomic.hpp"
#include "etnckit/galois.hpp"
#include "etnckit/group_ring.hpp"

namespace etnckit {

/// Theta with depletion set S and smoothing set T.
///
/// chi(value) = L_{S,T}(chi^{-1}, 0) for every odd chi, where Euler
/// factors at primes ramified for chi are 1. Even components are zero, so
/// the element lives in (1-c)/2 Q[G]; everything downstream is compared in
/// the minus quotient.
struct StickelbergerElement {
  AbelianFieldQ field;
  std::vector<Place> S;
  std::vector<Place> T;
  GroupRingElement value;  // over Q
  MinusElement minus;      // over Q
  bool dr_condition = false;
  bool integral = false;
  bool warning = false;  // DR condition fails, integrality not guaranteed
};

// Theta_{S,T}(E) with S containing infinity and every ramified prime, T
// disjoint from S. Both methods are run; Internal error if they disagree or
// if DR holds and the value is not integral.
StickelbergerElement theta(const AbelianFieldQ& E, const std::vector<Place>& S, const std::vector<Place>& T);

// Same with smoothing at ramified primes allowed (Theta_{Sigma,Sigma'}).
// Requires every ramified prime in S or T and S, T disjoint.
StickelbergerElement theta_general(const AbelianFieldQ& E, const std::vector<Place>& S,
                                   const std::vector<Place>& T);

// The two independent computations, exposed for testing.
GroupRingElement theta_coset_sum(const AbelianFieldQ& E, const std::vector<Place>& S,
                                 const std::vector<Place>& T);
GroupRingElement theta_bernoulli(const AbelianFieldQ& E, const std::vector<Place>& S,
                                 const std::vector<Place>& T);

// sum_{a in (Z/f)^*} (1/2 - a/f) sigma_a^{-1} in Q[G_E], f the conductor of E.
GroupRingElement conductor_stickelberger(const AbelianFieldQ& E);

// Conductor of chi viewed as a Dirichlet character mod f_E.
std::int64_t character_conductor(const AbelianFieldQ& E, const Character& chi);
// B_{1,psi} for psi the primitive character attached to chi.
CyclotomicNumber bernoulli_b1(const AbelianFieldQ& E, const Character& chi);

enum class EulerKind { P, Q, Smoothing, X, Y };
const char* to_string(EulerKind kind);

struct EulerFactor {
  EulerKind kind;
  Place place;
  GroupRingElement value;  // over Z
};

struct EulerProduct {
  std::vector<EulerFactor> factors;
  GroupRingElement value;
};

// 1 - sigma_v^{-1} and 1 - sigma_v^{-1} Nv for unramified v.
EulerFactor depletion_factor(const AbelianFieldQ& E, Place v);
EulerFactor smoothing_factor(const AbelianFieldQ& E, Place v);
// e_v - sigma_v^{-1} N I_v and e_v - sigma_v^{-1} N I_v Nv.
EulerFactor x_factor(const AbelianFieldQ& E, Place v);
EulerFactor y_factor(const AbelianFieldQ& E, Place v);

// P(E'/E) = prod over Sigma(E') - Sigma(E) of (1 - sigma_v^{-1}), in Z[G_E].
EulerProduct euler_P(const AbelianFieldQ& Eprime, const AbelianFieldQ& E, std::int64_t p);
// Same restricted to the places v_j, j > stage, of the given ordering of Sigma(K).
EulerProduct euler_P_stage(const AbelianFieldQ& K, const AbelianFieldQ& E, std::int64_t p,
                           const std::vector<Place>& sigma_order, std::size_t stage);
// Q(K'/K) = prod over Sigma'(K') - Sigma'(K) of (1 - sigma_v^{-1} Nv), in Z[G_K].
EulerProduct euler_Q(const AbelianFieldQ& Kprime, const AbelianFieldQ& K, std::int64_t p,
                     const std::vector<std::int64_t>& T);

// e_E = prod_{v in Sigma(E)} (1 - N G_v / #G_v) in Q[G_E]_-.
MinusElement idempotent_eE(const AbelianFieldQ& E, std::int64_t p);

struct IdentityReport {
  std::string identity;
  std::string field;
  bool ok = false;
  MinusElement lhs;
  MinusElement rhs;
  MinusElement difference;
};

// red_{E'/E} Theta_{Sigma(E'),Sigma'} = Theta_{Sigma(E),Sigma'} P(E'/E) in Q[G_E]_-,
// with Sigma' = sigma_prime the smoothing set of the top field.
IdentityReport check_tnorm(const AbelianFieldQ& Eprime, const AbelianFieldQ& E, std::int64_t p,
                           const std::vector<Place>& sigma_prime,
                           const MinusElement* perturb_lhs = nullptr);

// Theta_{S(E),T} prod_J y_v = Theta_{Sigma(E),Sigma'} prod x_v prod e_v in Q[G_E]_-.
// E-level: x_v, y_v, e_v from E. K-level: reductions of the K constants.
IdentityReport check_st_conversion(const AbelianFieldQ& K, const AbelianFieldQ& E, std::int64_t p,
                                   const std::vector<std::int64_t>& T, bool k_level);

}  // namespace etnckit
