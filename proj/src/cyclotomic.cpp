#include "etnckit/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "etnckit/error.hpp"

namespace etnckit {

std::vector<BigInt> cyclotomic_polynomial(std::int64_t n) {
  require(n >= 1, ErrorKind::Precondition, "cyclotomic polynomial needs n >= 1");
  // x^n - 1 divided by Phi_d for every proper divisor d
  std::vector<BigInt> num(static_cast<std::size_t>(n) + 1);
  num[0] = -1;
  num[static_cast<std::size_t>(n)] = 1;
  for (std::int64_t d : divisors(n)) {
    if (d == n) break;
    auto den = cyclotomic_polynomial(d);
    std::size_t dn = den.size() - 1;
    std::vector<BigInt> q(num.size() - dn);
    for (std::size_t i = num.size(); i-- > dn;) {
      BigInt c = num[i];  // den is monic
      q[i - dn] = c;
      for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    num = std::move(q);
  }
  return num;
}

CyclotomicField::CyclotomicField(std::int64_t n) : n_(n), phi_(cyclotomic_polynomial(n)) {
  const std::size_t deg = degree();
  powers_.assign(static_cast<std::size_t>(n), std::vector<Rational>(deg));
  std::vector<Rational> cur(deg);
  if (deg > 0) cur[0] = 1;
  for (std::int64_t j = 0; j < n; ++j) {
    powers_[static_cast<std::size_t>(j)] = cur;
    // multiply by x and reduce the x^deg term with the monic Phi_n
    Rational top = cur[deg - 1];
    for (std::size_t i = deg - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (std::size_t i = 0; i < deg; ++i) cur[i] -= top * Rational(phi_[i]);
  }
}

std::shared_ptr<const CyclotomicField> CyclotomicField::get(std::int64_t n) {
  static std::mutex mu;
  static std::map<std::int64_t, std::shared_ptr<const CyclotomicField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const CyclotomicField>(n);
  cache.emplace(n, f);
  return f;
}

const std::vector<Rational>& CyclotomicField::power(std::int64_t j) const {
  return powers_[static_cast<std::size_t>(mod(j, n_))];
}

// ---------------------------------------------------------------------------

CyclotomicNumber::CyclotomicNumber(CyclotomicFieldPtr field)
    : field_(std::move(field)), coeffs_(field_->degree()) {}

CyclotomicNumber::CyclotomicNumber(CyclotomicFieldPtr field, std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  require(coeffs_.size() == field_->degree(), ErrorKind::Structural, "cyclotomic coefficient length mismatch");
}

CyclotomicNumber CyclotomicNumber::rational(CyclotomicFieldPtr field, const Rational& c) {
  CyclotomicNumber z(std::move(field));
  z.coeffs_[0] = c;
  return z;
}

CyclotomicNumber CyclotomicNumber::zeta_power(CyclotomicFieldPtr field, std::int64_t j, const Rational& c) {
  CyclotomicNumber z(std::move(field));
  z.add_zeta_power(j, c);
  return z;
}

bool CyclotomicNumber::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool CyclotomicNumber::is_rational() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return c == 0; });
}

Rational CyclotomicNumber::rational_value() const {
  require(is_rational(), ErrorKind::Precondition, "cyclotomic number is not rational: " + to_string());
  return coeffs_[0];
}

CyclotomicNumber CyclotomicNumber::operator+(const CyclotomicNumber& o) const {
  CyclotomicNumber r = *this;
  r += o;
  return r;
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& o) {
  require(field_->n() == o.field_->n(), ErrorKind::Structural, "cyclotomic field mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CyclotomicNumber CyclotomicNumber::operator-(const CyclotomicNumber& o) const {
  require(field_->n() == o.field_->n(), ErrorKind::Structural, "cyclotomic field mismatch");
  CyclotomicNumber r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
  return r;
}

CyclotomicNumber CyclotomicNumber::operator*(const CyclotomicNumber& o) const {
  require(field_->n() == o.field_->n(), ErrorKind::Structural, "cyclotomic field mismatch");
  CyclotomicNumber r(field_);
  const std::size_t d = coeffs_.size();
  for (std::size_t i = 0; i < d; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (o.coeffs_[j] == 0) continue;
      r.add_zeta_power(static_cast<std::int64_t>(i + j), coeffs_[i] * o.coeffs_[j]);
    }
  }
  return r;
}

CyclotomicNumber CyclotomicNumber::operator*(const Rational& c) const {
  CyclotomicNumber r = *this;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

bool CyclotomicNumber::operator==(const CyclotomicNumber& o) const {
  return field_->n() == o.field_->n() && coeffs_ == o.coeffs_;
}

void CyclotomicNumber::add_zeta_power(std::int64_t j, const Rational& c) {
  if (c == 0) return;
  const auto& p = field_->power(j);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (p[i] != 0) coeffs_[i] += c * p[i];
}

CyclotomicNumber CyclotomicNumber::conjugate() const {
  CyclotomicNumber r(field_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.add_zeta_power(-static_cast<std::int64_t>(i), coeffs_[i]);
  return r;
}

std::string CyclotomicNumber::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << etnckit::to_string(coeffs_[i]);
    if (i > 0) os << "*z^" << i;
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------------------

Character::Character(GroupPtr group, std::vector<std::int64_t> exponents)
    : group_(std::move(group)), exps_(std::move(exponents)) {
  require(exps_.size() == group_->rank(), ErrorKind::Structural, "character exponent length mismatch");
  for (std::size_t i = 0; i < exps_.size(); ++i) exps_[i] = mod(exps_[i], group_->cyclic_orders()[i]);
  n_ = group_->exponent();
  field_ = CyclotomicField::get(n_);
}

Character Character::trivial(GroupPtr group) {
  std::vector<std::int64_t> e(group->rank(), 0);
  return Character(std::move(group), std::move(e));
}

std::vector<Character> Character::all(GroupPtr group) {
  // the dual group has the same shape, so exponent vectors are group coordinates
  std::vector<Character> out;
  out.reserve(group->order());
  for (ElementIndex g = 0; g < group->order(); ++g) out.emplace_back(group, group->coordinates(g));
  return out;
}

std::int64_t Character::log(ElementIndex g) const {
  auto c = group_->coordinates(g);
  const auto& d = group_->cyclic_orders();
  std::int64_t s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) s = mod(s + (exps_[i] * c[i] % d[i]) * (n_ / d[i]), n_);
  return s;
}

CyclotomicNumber Character::value(ElementIndex g) const { return CyclotomicNumber::zeta_power(field_, log(g)); }

bool Character::is_trivial() const {
  return std::all_of(exps_.begin(), exps_.end(), [](std::int64_t e) { return e == 0; });
}

std::int64_t Character::order() const {
  std::int64_t o = 1;
  const auto& d = group_->cyclic_orders();
  for (std::size_t i = 0; i < exps_.size(); ++i) o = lcm64(o, d[i] / gcd64(exps_[i], d[i]));
  return o;
}

Character Character::conjugate() const {
  std::vector<std::int64_t> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = -exps_[i];
  return Character(group_, std::move(e));
}

Character Character::operator*(const Character& o) const {
  require(same_group(group_, o.group_), ErrorKind::Structural, "character group mismatch");
  std::vector<std::int64_t> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = exps_[i] + o.exps_[i];
  return Character(group_, std::move(e));
}

CyclotomicNumber char_eval(const Character& chi, const GroupRingElement& x) {
  require(same_group(chi.group(), x.group()), ErrorKind::Structural, "char_eval: group mismatch");
  if (x.ring().is_residue())
    fail(ErrorKind::Unsupported, "char_eval over " + x.ring().name() + " is not supported");
  CyclotomicNumber r(chi.field());
  for (ElementIndex g = 0; g < x.coeffs().size(); ++g)
    if (x[g] != 0) r.add_zeta_power(chi.log(g), x[g]);
  return r;
}

CyclotomicNumber char_eval(const Character& chi, const std::vector<CyclotomicNumber>& x) {
  require(x.size() == chi.group()->order(), ErrorKind::Structural, "char_eval: length mismatch");
  CyclotomicNumber r(chi.field());
  for (ElementIndex g = 0; g < x.size(); ++g) {
    if (x[g].is_zero()) continue;
    r += x[g] * chi.value(g);
  }
  return r;
}

std::vector<CyclotomicNumber> character_idempotent(const Character& chi) {
  const auto& G = *chi.group();
  Rational inv(1, static_cast<unsigned long>(G.order()));
  std::vector<CyclotomicNumber> e(G.order(), CyclotomicNumber(chi.field()));
  for (ElementIndex g = 0; g < G.order(); ++g) e[G.inverse(g)].add_zeta_power(chi.log(g), inv);
  return e;
}

GroupRingElement fourier_inverse(GroupPtr group, const std::vector<Character>& chars,
                                 const std::vector<CyclotomicNumber>& values) {
  require(chars.size() == group->order() && values.size() == chars.size(), ErrorKind::Structural,
          "fourier_inverse needs one value per character");
  Rational inv(1, static_cast<unsigned long>(group->order()));
  std::vector<Rational> out(group->order());
  for (ElementIndex g = 0; g < group->order(); ++g) {
    ElementIndex ginv = group->inverse(g);
    CyclotomicNumber s(values.empty() ? CyclotomicField::get(1) : values[0].field());
    for (std::size_t i = 0; i < chars.size(); ++i) {
      if (values[i].is_zero()) continue;
      s += values[i] * chars[i].value(ginv);
    }
    require(s.is_rational(), ErrorKind::Internal, "Fourier inversion produced an irrational coefficient");
    out[g] = s.rational_value() * inv;
  }
  return GroupRingElement(std::move(group), CoefficientRing::rationals(), std::move(out));
}

}  // namespace etnckit
