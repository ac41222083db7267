#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "etnckit/galois.hpp"
#include "etnckit/group_ring.hpp"

namespace etnckit {

// r = v_p(prod_{v in Sigma(E)} #G_{E,v}); p^r e_E is p-integral.
int denominator_exponent(const AbelianFieldQ& E, std::int64_t p);

// p^r e_E in Z/p^M[G_E]_-.
MinusElement scaled_idempotent(const AbelianFieldQ& E, std::int64_t p, int M);

/// Class e_E x in R_E / p^k, represented by x over Z/p^{k+r}.
struct REElement {
  AbelianFieldQ field;
  std::int64_t p;
  int k;
  int r;
  MinusElement x;

  static REElement make(const AbelianFieldQ& E, std::int64_t p, int k, const MinusElement& rep);
  // x ~ x'  iff  p^r e_E (x - x') = 0 mod p^{k+r}
  bool equivalent(const REElement& o) const;
};

struct NormFamily {
  FieldLattice lattice;
  std::int64_t p = 2;
  int k = 1;
  std::vector<REElement> entries;  // aligned with lattice.members
};

// z_E = e_E red_{K/E}(ztilde), ztilde over Z/p^{k + max r}.
NormFamily induce_family(const FieldLattice& lattice, std::int64_t p, int k, const MinusElement& ztilde);
int family_precision(const NormFamily& fam);  // k + max r

struct EdgeVerdict {
  std::size_t sub, super;
  bool ok;
  bool vacuous;  // P(E'/E) = 0
};

// (e_E red(z_{E'}) - z_E) P(E'/E) = 0 in R_E/p^k on every edge.
std::vector<EdgeVerdict> is_norm_compatible(const NormFamily& fam);

// e_E red(ztilde) P agrees for ztilde and ztilde + p^{r'} (1 - e_{E'}) w.
bool lift_well_defined_check(const NormFamily& fam, std::size_t sub, std::size_t super, const MinusElement& w);

struct LiftResult {
  bool feasible = false;
  int precision = 0;                 // of the lift: k + max r
  std::optional<MinusElement> lift;  // over Z/p^precision
  std::vector<std::int64_t> certificate;
  std::vector<std::string> certificate_labels;  // one per linear condition
  bool certificate_verified = false;
};

// Solve (e_E red(ztilde) - z_E) P_i(K/E) = 0 in R_E/p^k for all members E.
// sigma_order orders Sigma(K); stage i drops the first i places of it.
LiftResult lift_family(const NormFamily& fam, std::size_t stage, int k, const std::vector<Place>& sigma_order);

// Residual check of a candidate lift, one verdict per member.
std::vector<bool> check_lift(const NormFamily& fam, const MinusElement& ztilde, std::size_t stage, int k,
                             const std::vector<Place>& sigma_order);

}  // namespace etnckit
