#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "etnckit/arith.hpp"
#include "etnckit/group_ring.hpp"

namespace etnckit {

/// Q(zeta_n) as Q[x]/Phi_n(x), basis 1, x, ..., x^{phi(n)-1}.
class CyclotomicField {
 public:
  // Shared, cached instance (thread-safe).
  static std::shared_ptr<const CyclotomicField> get(std::int64_t n);

  explicit CyclotomicField(std::int64_t n);

  std::int64_t n() const { return n_; }
  std::size_t degree() const { return phi_.size() - 1; }
  // Phi_n, low degree first, monic.
  const std::vector<BigInt>& phi() const { return phi_; }
  // x^j reduced mod Phi_n, j taken mod n.
  const std::vector<Rational>& power(std::int64_t j) const;

 private:
  std::int64_t n_;
  std::vector<BigInt> phi_;
  std::vector<std::vector<Rational>> powers_;
};

using CyclotomicFieldPtr = std::shared_ptr<const CyclotomicField>;

// Phi_n with integer coefficients, low degree first.
std::vector<BigInt> cyclotomic_polynomial(std::int64_t n);

class CyclotomicNumber {
 public:
  explicit CyclotomicNumber(CyclotomicFieldPtr field);
  CyclotomicNumber(CyclotomicFieldPtr field, std::vector<Rational> coeffs);

  static CyclotomicNumber rational(CyclotomicFieldPtr field, const Rational& c);
  static CyclotomicNumber zeta_power(CyclotomicFieldPtr field, std::int64_t j, const Rational& c = 1);

  const CyclotomicFieldPtr& field() const { return field_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  Rational rational_value() const;  // Precondition error unless is_rational()

  CyclotomicNumber operator+(const CyclotomicNumber& o) const;
  CyclotomicNumber operator-(const CyclotomicNumber& o) const;
  CyclotomicNumber operator*(const CyclotomicNumber& o) const;
  CyclotomicNumber operator*(const Rational& c) const;
  CyclotomicNumber& operator+=(const CyclotomicNumber& o);
  bool operator==(const CyclotomicNumber& o) const;
  // Add c * zeta^j in place.
  void add_zeta_power(std::int64_t j, const Rational& c);
  // zeta -> zeta^{-1}
  CyclotomicNumber conjugate() const;

  std::string to_string() const;

 private:
  CyclotomicFieldPtr field_;
  std::vector<Rational> coeffs_;
};

/// Character of a finite abelian group with values in mu_n, n = exp(G).
/// chi(g) = zeta_n^{sum_i j_i g_i n/d_i} for exponents j_i in [0, d_i).
class Character {
 public:
  Character(GroupPtr group, std::vector<std::int64_t> exponents);

  static Character trivial(GroupPtr group);
  // All |G| characters ordered by exponent vector (lexicographic).
  static std::vector<Character> all(GroupPtr group);

  const GroupPtr& group() const { return group_; }
  const std::vector<std::int64_t>& exponents() const { return exps_; }
  std::int64_t value_order() const { return n_; }
  const CyclotomicFieldPtr& field() const { return field_; }

  // chi(g) = zeta_n^{log(g)}, log in [0, n).
  std::int64_t log(ElementIndex g) const;
  CyclotomicNumber value(ElementIndex g) const;
  bool is_trivial() const;
  bool is_odd(ElementIndex c) const { return 2 * log(c) == n_; }
  // Order of chi in the dual group.
  std::int64_t order() const;
  Character conjugate() const;
  Character operator*(const Character& o) const;
  bool operator==(const Character& o) const { return same_group(group_, o.group_) && exps_ == o.exps_; }

 private:
  GroupPtr group_;
  std::vector<std::int64_t> exps_;
  std::int64_t n_;
  CyclotomicFieldPtr field_;
};

// Z or Q coefficients only; residue rings give Unsupported.
CyclotomicNumber char_eval(const Character& chi, const GroupRingElement& x);
// Element of Q(zeta_n)[G] given by its cyclotomic coefficients.
CyclotomicNumber char_eval(const Character& chi, const std::vector<CyclotomicNumber>& x);

// e_chi = (1/|G|) sum_g chi(g) g^{-1}, as cyclotomic coefficients.
std::vector<CyclotomicNumber> character_idempotent(const Character& chi);

// x_g = (1/|G|) sum_chi chi(x) chi(g^{-1}). values[i] belongs to chars[i],
// which must be the full dual group. Internal error if the result is not rational.
GroupRingElement fourier_inverse(GroupPtr group, const std::vector<Character>& chars,
                                 const std::vector<CyclotomicNumber>& values);

}  // namespace etnckit
