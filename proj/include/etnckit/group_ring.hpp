#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "etnckit/arith.hpp"

namespace etnckit {

// Elements of a FiniteAbelianGroup are addressed by their position in the
// lexicographic order of coordinate vectors; 0 is the identity.
using ElementIndex = std::size_t;

/// A finite abelian group Z/d_1 x ... x Z/d_r.
///
/// The decomposition passed in is kept as-is (galois_data hands over
/// invariant factors); an empty list is the trivial group.
class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<std::int64_t> cyclic_orders);

  std::size_t order() const { return order_; }
  std::size_t rank() const { return orders_.size(); }
  const std::vector<std::int64_t>& cyclic_orders() const { return orders_; }
  std::int64_t exponent() const;

  std::vector<std::int64_t> coordinates(ElementIndex g) const;
  // Coordinates are reduced into [0, d_i) first.
  ElementIndex index_of(std::span<const std::int64_t> coords) const;

  ElementIndex identity() const { return 0; }
  ElementIndex mul(ElementIndex a, ElementIndex b) const;
  ElementIndex inverse(ElementIndex a) const;
  ElementIndex pow(ElementIndex a, std::int64_t e) const;
  std::int64_t element_order(ElementIndex a) const;

  // Sorted element list of the subgroup generated by gens.
  std::vector<ElementIndex> subgroup_generated(std::span<const ElementIndex> gens) const;
  // Every subgroup, each as a sorted element list; trivial subgroup first.
  std::vector<std::vector<ElementIndex>> all_subgroups() const;

  std::string describe() const;
  bool operator==(const FiniteAbelianGroup& other) const { return orders_ == other.orders_; }

 private:
  std::vector<std::int64_t> orders_;
  std::vector<std::size_t> strides_;
  std::size_t order_ = 1;
  std::vector<ElementIndex> table_;  // filled for small groups
};

using GroupPtr = std::shared_ptr<const FiniteAbelianGroup>;

GroupPtr make_group(std::vector<std::int64_t> cyclic_orders);
bool same_group(const GroupPtr& a, const GroupPtr& b);

class CoefficientRing {
 public:
  enum class Kind { Integers, Rationals, Residues };

  static CoefficientRing integers() { return CoefficientRing(Kind::Integers, 0, 0); }
  static CoefficientRing rationals() { return CoefficientRing(Kind::Rationals, 0, 0); }
  static CoefficientRing residues(std::int64_t p, int k);
  // "Z", "Q", or "Z/p^k".
  static CoefficientRing parse(const std::string& name);

  Kind kind() const { return kind_; }
  bool is_residue() const { return kind_ == Kind::Residues; }
  std::int64_t prime() const { return p_; }
  int precision() const { return k_; }
  const BigInt& modulus() const { return modulus_; }

  bool contains(const Rational& x) const;
  // Canonical representative; Structural error if x is not in the ring
  // (non-integers in Z, p in the denominator for Z/p^k).
  Rational canonical(const Rational& x) const;

  std::string name() const;
  bool operator==(const CoefficientRing& other) const {
    return kind_ == other.kind_ && p_ == other.p_ && k_ == other.k_;
  }

 private:
  CoefficientRing(Kind kind, std::int64_t p, int k);

  Kind kind_;
  std::int64_t p_;
  int k_;
  BigInt modulus_;
};

/// Dense element of R[G] for R one of Z, Q, Z/p^k.
class GroupRingElement {
 public:
  GroupRingElement(GroupPtr group, CoefficientRing ring);
  GroupRingElement(GroupPtr group, CoefficientRing ring, std::vector<Rational> coeffs);

  static GroupRingElement one(GroupPtr group, CoefficientRing ring);
  static GroupRingElement monomial(GroupPtr group, CoefficientRing ring, ElementIndex g,
                                   const Rational& c = 1);
  static GroupRingElement scalar(GroupPtr group, CoefficientRing ring, const Rational& c);
  // Sum of the listed elements (a subgroup norm N_H when given a subgroup).
  static GroupRingElement sum_of(GroupPtr group, CoefficientRing ring,
                                 std::span<const ElementIndex> elements);

  const GroupPtr& group() const { return group_; }
  const CoefficientRing& ring() const { return ring_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& operator[](ElementIndex g) const { return coeffs_[g]; }

  bool is_zero() const;
  bool is_integral() const;
  Rational augmentation() const;

  GroupRingElement operator+(const GroupRingElement& o) const;
  GroupRingElement operator-(const GroupRingElement& o) const;
  GroupRingElement operator-() const;
  GroupRingElement operator*(const GroupRingElement& o) const;
  GroupRingElement operator*(const Rational& c) const;
  GroupRingElement& operator+=(const GroupRingElement& o);
  GroupRingElement& operator-=(const GroupRingElement& o);
  GroupRingElement& operator*=(const GroupRingElement& o);
  bool operator==(const GroupRingElement& o) const;

  // Z -> Q, Q -> Z/p^k (p-integral input), Z/p^a -> Z/p^b for b <= a, ...
  GroupRingElement change_ring(const CoefficientRing& target) const;
  // x_g g  ->  x_g g^{-1}
  GroupRingElement involution() const;

  std::string to_string() const;

 private:
  void check_compatible(const GroupRingElement& o) const;

  GroupPtr group_;
  CoefficientRing ring_;
  std::vector<Rational> coeffs_;
};

GroupRingElement gr_mul(const GroupRingElement& a, const GroupRingElement& b);

/// Surjective homomorphism G -> G' given by the image of every element.
class GroupSurjection {
 public:
  // Validates the homomorphism property and surjectivity (Structural error).
  GroupSurjection(GroupPtr source, GroupPtr target, std::vector<ElementIndex> images);
  static GroupSurjection identity(GroupPtr group);

  const GroupPtr& source() const { return source_; }
  const GroupPtr& target() const { return target_; }
  ElementIndex operator()(ElementIndex g) const { return images_[g]; }
  const std::vector<ElementIndex>& images() const { return images_; }
  std::vector<ElementIndex> kernel() const;
  // next o this
  GroupSurjection then(const GroupSurjection& next) const;

 private:
  GroupPtr source_;
  GroupPtr target_;
  std::vector<ElementIndex> images_;
};

// Push coefficients forward along q (red_{K/E}).
GroupRingElement reduce(const GroupRingElement& x, const GroupSurjection& q);

/// R[G]_- = R[G]/(1+c) with basis the transversal of {g, cg} pairs whose
/// members have the smaller index.
class MinusRing {
 public:
  static std::shared_ptr<const MinusRing> make(GroupPtr group, ElementIndex conjugation,
                                               CoefficientRing ring);

  const GroupPtr& group() const { return group_; }
  ElementIndex conjugation() const { return c_; }
  const CoefficientRing& ring() const { return ring_; }
  std::size_t dimension() const { return transversal_.size(); }
  const std::vector<ElementIndex>& transversal() const { return transversal_; }
  // Slot of g and the sign with which g maps there (c*rep -> -rep).
  std::pair<std::size_t, int> slot(ElementIndex g) const { return slots_[g]; }

  std::shared_ptr<const MinusRing> with_ring(const CoefficientRing& ring) const;
  bool operator==(const MinusRing& o) const;

  MinusRing(GroupPtr group, ElementIndex conjugation, CoefficientRing ring);

 private:
  GroupPtr group_;
  ElementIndex c_;
  CoefficientRing ring_;
  std::vector<ElementIndex> transversal_;
  std::vector<std::pair<std::size_t, int>> slots_;
};

using MinusRingPtr = std::shared_ptr<const MinusRing>;

class MinusElement {
 public:
  explicit MinusElement(MinusRingPtr parent);
  MinusElement(MinusRingPtr parent, std::vector<Rational> coeffs);

  static MinusElement one(MinusRingPtr parent);
  static MinusElement scalar(MinusRingPtr parent, const Rational& c);

  const MinusRingPtr& parent() const { return parent_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const CoefficientRing& ring() const { return parent_->ring(); }

  // Coefficients placed on the transversal; project(lift(x)) == x.
  GroupRingElement lift() const;

  bool is_zero() const;
  bool is_integral() const;
  MinusElement operator+(const MinusElement& o) const;
  MinusElement operator-(const MinusElement& o) const;
  MinusElement operator-() const;
  MinusElement operator*(const MinusElement& o) const;
  MinusElement operator*(const Rational& c) const;
  MinusElement& operator+=(const MinusElement& o);
  bool operator==(const MinusElement& o) const;

  MinusElement change_ring(const CoefficientRing& target) const;
  std::string to_string() const;

 private:
  void check_compatible(const MinusElement& o) const;

  MinusRingPtr parent_;
  std::vector<Rational> coeffs_;
};

MinusElement minus_project(const GroupRingElement& x, const MinusRingPtr& parent);
MinusElement minus_project(const GroupRingElement& x, ElementIndex conjugation);
MinusElement minus_mul(const MinusElement& a, const MinusElement& b);
// Requires q(c_source) == c_target.
MinusElement reduce(const MinusElement& x, const GroupSurjection& q, const MinusRingPtr& target);

}  // namespace etnckit
