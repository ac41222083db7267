#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "etnckit/group_ring.hpp"

namespace etnckit {

// Places of Q are their residue characteristic; the infinite place is 0.
using Place = std::int64_t;
inline constexpr Place kInfinity = 0;

std::string place_name(Place v);

struct PlaceData {
  Place prime = kInfinity;
  std::vector<ElementIndex> inertia;        // sorted subgroup I_v
  std::vector<ElementIndex> decomposition;  // sorted subgroup G_v = <I_v, sigma_v>
  ElementIndex frobenius = 0;               // a representative of sigma_v
  std::int64_t ramification_index = 1;      // #I_v
  std::int64_t residue_degree = 1;          // order of sigma_v in G/I_v
  std::int64_t norm = 0;                    // Nv = l; 0 for the infinite place
  std::size_t places_above = 1;             // |G| / |G_v|
};

/// Abelian field K/Q given as the fixed field of H in Q(zeta_f), with
/// G = (Z/f)^*/H. Descriptors are normalized to the minimal conductor.
class AbelianFieldQ {
 public:
  static AbelianFieldQ build(std::int64_t f, const std::vector<std::int64_t>& H_gens, bool require_cm = true);

  std::int64_t conductor() const;
  const std::vector<std::int64_t>& H() const;  // every residue of H, ascending
  const GroupPtr& group() const;
  std::size_t degree() const { return group()->order(); }
  ElementIndex conjugation() const;
  bool is_cm() const { return conjugation() != 0; }

  // sigma_a for a prime to f (any integer representative).
  ElementIndex label(std::int64_t a) const;
  // Least positive residue a with sigma_a = g.
  std::int64_t representative(ElementIndex g) const;

  std::vector<std::int64_t> ramified_primes() const;  // ascending
  bool is_ramified(std::int64_t ell) const { return ell != kInfinity && conductor() % ell == 0; }
  const PlaceData& place(Place v) const;

  // E is a subfield of this field.
  bool contains(const AbelianFieldQ& E) const;
  GroupSurjection restriction_to(const AbelianFieldQ& E) const;
  MinusRingPtr minus_ring(const CoefficientRing& ring) const;

  std::string descriptor() const;  // "f=15 H=[1,4]"
  bool operator==(const AbelianFieldQ& o) const;
  bool operator!=(const AbelianFieldQ& o) const { return !(*this == o); }

  struct Impl;

 private:
  explicit AbelianFieldQ(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

struct SigmaSets {
  std::vector<Place> S;            // infinity, then ramified primes ascending
  std::vector<Place> Sigma;        // infinity, and p when p ramifies
  std::vector<Place> SigmaPrime;   // T in the given order, then ramified primes other than p
  std::vector<Place> T;
};

SigmaSets sigma_sets(const AbelianFieldQ& K, std::int64_t p, const std::vector<std::int64_t>& T);

// Order of the group of roots of unity of K.
std::int64_t roots_of_unity_order(const AbelianFieldQ& K);
bool dr_condition_check(const AbelianFieldQ& K, const std::vector<std::int64_t>& T);

struct FieldLattice {
  std::vector<AbelianFieldQ> members;            // members[0] is the top field
  std::vector<GroupSurjection> from_top;         // G_K -> G_E per member
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (E, E') with E a proper subfield of E'

  bool empty() const { return members.empty(); }
  std::size_t index_of(const AbelianFieldQ& E) const;  // npos-like size() when absent
};

// Every CM subfield of K, K first then by degree descending. Non-CM K
// gives an empty lattice.
FieldLattice subfield_lattice(const AbelianFieldQ& K);
// K together with the listed subfields (Input error if one is not a CM subfield).
FieldLattice subfield_lattice(const AbelianFieldQ& K, const std::vector<AbelianFieldQ>& listed);

}  // namespace etnckit
