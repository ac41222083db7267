#include "etnckit/group_ring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "etnckit/error.hpp"

namespace etnckit {

namespace {

constexpr std::size_t kTableLimit = 256;

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> cyclic_orders)
    : orders_(std::move(cyclic_orders)) {
  strides_.assign(orders_.size(), 1);
  for (auto d : orders_) require(d >= 1, ErrorKind::Structural, "cyclic order must be positive");
  for (std::size_t i = orders_.size(); i-- > 0;) {
    strides_[i] = order_;
    order_ *= static_cast<std::size_t>(orders_[i]);
  }
  if (order_ <= kTableLimit) {
    table_.resize(order_ * order_);
    std::vector<std::int64_t> ca, cb, cc(orders_.size());
    for (ElementIndex a = 0; a < order_; ++a) {
      ca = coordinates(a);
      for (ElementIndex b = 0; b < order_; ++b) {
        cb = coordinates(b);
        ElementIndex idx = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i)
          idx += static_cast<std::size_t>((ca[i] + cb[i]) % orders_[i]) * strides_[i];
        table_[a * order_ + b] = idx;
      }
    }
  }
}

std::int64_t FiniteAbelianGroup::exponent() const {
  std::int64_t e = 1;
  for (auto d : orders_) e = lcm64(e, d);
  return e;
}

std::vector<std::int64_t> FiniteAbelianGroup::coordinates(ElementIndex g) const {
  require(g < order_, ErrorKind::Structural, "element index out of range");
  std::vector<std::int64_t> c(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    c[i] = static_cast<std::int64_t>(g / strides_[i]);
    g %= strides_[i];
  }
  return c;
}

ElementIndex FiniteAbelianGroup::index_of(std::span<const std::int64_t> coords) const {
  require(coords.size() == orders_.size(), ErrorKind::Structural, "coordinate length mismatch");
  ElementIndex idx = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i)
    idx += static_cast<std::size_t>(mod(coords[i], orders_[i])) * strides_[i];
  return idx;
}

ElementIndex FiniteAbelianGroup::mul(ElementIndex a, ElementIndex b) const {
  if (!table_.empty()) return table_[a * order_ + b];
  auto ca = coordinates(a);
  auto cb = coordinates(b);
  for (std::size_t i = 0; i < ca.size(); ++i) ca[i] += cb[i];
  return index_of(ca);
}

ElementIndex FiniteAbelianGroup::inverse(ElementIndex a) const {
  auto ca = coordinates(a);
  for (auto& x : ca) x = -x;
  return index_of(ca);
}

ElementIndex FiniteAbelianGroup::pow(ElementIndex a, std::int64_t e) const {
  auto ca = coordinates(a);
  for (std::size_t i = 0; i < ca.size(); ++i)
    ca[i] = static_cast<std::int64_t>((static_cast<__int128>(ca[i]) * mod(e, orders_[i])) % orders_[i]);
  return index_of(ca);
}

std::int64_t FiniteAbelianGroup::element_order(ElementIndex a) const {
  auto ca = coordinates(a);
  std::int64_t o = 1;
  for (std::size_t i = 0; i < ca.size(); ++i)
    o = lcm64(o, orders_[i] / gcd64(ca[i], orders_[i]));
  return o;
}

std::vector<ElementIndex> FiniteAbelianGroup::subgroup_generated(
    std::span<const ElementIndex> gens) const {
  std::vector<char> in(order_, 0);
  std::vector<ElementIndex> elems{0};
  in[0] = 1;
  for (ElementIndex g : gens) {
    require(g < order_, ErrorKind::Structural, "generator out of range");
    if (in[g]) continue;
    // multiply the current subgroup by powers of g until it closes
    std::vector<ElementIndex> cur = elems;
    ElementIndex step = g;
    while (!in[step]) {
      for (ElementIndex h : cur) {
        ElementIndex x = mul(h, step);
        if (!in[x]) {
          in[x] = 1;
          elems.push_back(x);
        }
      }
      step = mul(step, g);
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

std::vector<std::vector<ElementIndex>> FiniteAbelianGroup::all_subgroups() const {
  std::vector<std::vector<ElementIndex>> out{{0}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (ElementIndex g = 1; g < order_; ++g) {
      if (std::binary_search(out[i].begin(), out[i].end(), g)) continue;
      std::vector<ElementIndex> gens = out[i];
      gens.push_back(g);
      auto s = subgroup_generated(gens);
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

std::string FiniteAbelianGroup::describe() const {
  if (orders_.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (i) s += " x ";
    s += "Z/" + std::to_string(orders_[i]);
  }
  return s;
}

GroupPtr make_group(std::vector<std::int64_t> cyclic_orders) {
  return std::make_shared<const FiniteAbelianGroup>(std::move(cyclic_orders));
}

bool same_group(const GroupPtr& a, const GroupPtr& b) {
  return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------------------

CoefficientRing::CoefficientRing(Kind kind, std::int64_t p, int k) : kind_(kind), p_(p), k_(k) {
  if (kind_ == Kind::Residues) {
    mpz_ui_pow_ui(modulus_.get_mpz_t(), static_cast<unsigned long>(p_), static_cast<unsigned long>(k_));
  }
}

CoefficientRing CoefficientRing::residues(std::int64_t p, int k) {
  require(is_prime(p), ErrorKind::Structural, "residue ring needs a prime, got " + std::to_string(p));
  require(k >= 1, ErrorKind::Structural, "residue ring precision must be positive");
  return CoefficientRing(Kind::Residues, p, k);
}

CoefficientRing CoefficientRing::parse(const std::string& name) {
  if (name == "Z") return integers();
  if (name == "Q") return rationals();
  if (name.rfind("Z/", 0) == 0) {
    auto caret = name.find('^');
    try {
      std::int64_t p = std::stoll(name.substr(2, caret == std::string::npos ? std::string::npos : caret - 2));
      int k = caret == std::string::npos ? 1 : std::stoi(name.substr(caret + 1));
      return residues(p, k);
    } catch (const std::logic_error&) {
    }
  }
  fail(ErrorKind::Parse, "unknown coefficient ring '" + name + "'");
}

bool CoefficientRing::contains(const Rational& x) const {
  switch (kind_) {
    case Kind::Rationals: return true;
    case Kind::Integers: return x.get_den() == 1;
    case Kind::Residues: return x.get_den() == 1 && x >= 0 && x.get_num() < modulus_;
  }
  return false;
}

Rational CoefficientRing::canonical(const Rational& x) const {
  switch (kind_) {
    case Kind::Rationals: return x;
    case Kind::Integers:
      require(x.get_den() == 1, ErrorKind::Structural, "non-integral coefficient " + to_string(x) + " in Z");
      return x;
    case Kind::Residues: {
      BigInt den = x.get_den();
      BigInt bp = p_;
      require(!mpz_divisible_p(den.get_mpz_t(), bp.get_mpz_t()), ErrorKind::Structural,
              "coefficient " + to_string(x) + " is not " + std::to_string(p_) + "-integral");
      return Rational(rational_mod(x, modulus_, p_));
    }
  }
  return x;
}

std::string CoefficientRing::name() const {
  switch (kind_) {
    case Kind::Integers: return "Z";
    case Kind::Rationals: return "Q";
    case Kind::Residues: return "Z/" + std::to_string(p_) + "^" + std::to_string(k_);
  }
  return "?";
}

// ---------------------------------------------------------------------------

GroupRingElement::GroupRingElement(GroupPtr group, CoefficientRing ring)
    : group_(std::move(group)), ring_(std::move(ring)), coeffs_(group_->order()) {}

GroupRingElement::GroupRingElement(GroupPtr group, CoefficientRing ring, std::vector<Rational> coeffs)
    : group_(std::move(group)), ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
  require(coeffs_.size() == group_->order(), ErrorKind::Structural,
          "coefficient vector has length " + std::to_string(coeffs_.size()) + ", group order " +
              std::to_string(group_->order()));
  for (auto& c : coeffs_) c = ring_.canonical(c);
}

GroupRingElement GroupRingElement::one(GroupPtr group, CoefficientRing ring) {
  return monomial(std::move(group), std::move(ring), 0, 1);
}

GroupRingElement GroupRingElement::monomial(GroupPtr group, CoefficientRing ring, ElementIndex g,
                                            const Rational& c) {
  require(g < group->order(), ErrorKind::Structural, "element index out of range");
  GroupRingElement x(std::move(group), std::move(ring));
  x.coeffs_[g] = x.ring_.canonical(c);
  return x;
}

GroupRingElement GroupRingElement::scalar(GroupPtr group, CoefficientRing ring, const Rational& c) {
  return monomial(std::move(group), std::move(ring), 0, c);
}

GroupRingElement GroupRingElement::sum_of(GroupPtr group, CoefficientRing ring,
                                          std::span<const ElementIndex> elements) {
  GroupRingElement x(std::move(group), std::move(ring));
  std::vector<Rational> c(x.coeffs_.size());
  for (ElementIndex g : elements) c[g] += 1;
  return GroupRingElement(x.group_, x.ring_, std::move(c));
}

bool GroupRingElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool GroupRingElement::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

Rational GroupRingElement::augmentation() const {
  Rational s = 0;
  for (const auto& c : coeffs_) s += c;
  return ring_.canonical(s);
}

void GroupRingElement::check_compatible(const GroupRingElement& o) const {
  require(same_group(group_, o.group_), ErrorKind::Structural,
          "group mismatch: " + group_->describe() + " vs " + o.group_->describe());
  require(ring_ == o.ring_, ErrorKind::Structural, "ring mismatch: " + ring_.name() + " vs " + o.ring_.name());
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
  GroupRingElement r = *this;
  r += o;
  return r;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
  GroupRingElement r = *this;
  r -= o;
  return r;
}

GroupRingElement GroupRingElement::operator-() const {
  std::vector<Rational> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coeffs_[i];
  return GroupRingElement(group_, ring_, std::move(c));
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = ring_.canonical(coeffs_[i] + o.coeffs_[i]);
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = ring_.canonical(coeffs_[i] - o.coeffs_[i]);
  return *this;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
  check_compatible(o);
  const std::size_t n = coeffs_.size();
  std::vector<Rational> c(n);
  for (ElementIndex a = 0; a < n; ++a) {
    if (coeffs_[a] == 0) continue;
    for (ElementIndex b = 0; b < n; ++b) {
      if (o.coeffs_[b] == 0) continue;
      c[group_->mul(a, b)] += coeffs_[a] * o.coeffs_[b];
    }
  }
  return GroupRingElement(group_, ring_, std::move(c));
}

GroupRingElement& GroupRingElement::operator*=(const GroupRingElement& o) {
  *this = *this * o;
  return *this;
}

GroupRingElement GroupRingElement::operator*(const Rational& s) const {
  std::vector<Rational> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeffs_[i] * s;
  return GroupRingElement(group_, ring_, std::move(c));
}

bool GroupRingElement::operator==(const GroupRingElement& o) const {
  return same_group(group_, o.group_) && ring_ == o.ring_ && coeffs_ == o.coeffs_;
}

GroupRingElement GroupRingElement::change_ring(const CoefficientRing& target) const {
  if (ring_.is_residue()) {
    require(target.is_residue() && target.prime() == ring_.prime() && target.precision() <= ring_.precision(),
            ErrorKind::Structural, "cannot change ring " + ring_.name() + " -> " + target.name());
  }
  if (ring_.kind() == CoefficientRing::Kind::Rationals && target.kind() == CoefficientRing::Kind::Integers)
    require(is_integral(), ErrorKind::Structural, "element is not integral");
  return GroupRingElement(group_, target, coeffs_);
}

GroupRingElement GroupRingElement::involution() const {
  std::vector<Rational> c(coeffs_.size());
  for (ElementIndex g = 0; g < c.size(); ++g) c[group_->inverse(g)] = coeffs_[g];
  return GroupRingElement(group_, ring_, std::move(c));
}

std::string GroupRingElement::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? ", " : "") << etnckit::to_string(coeffs_[i]);
  os << "] in " << ring_.name() << "[" << group_->describe() << "]";
  return os.str();
}

GroupRingElement gr_mul(const GroupRingElement& a, const GroupRingElement& b) { return a * b; }

// ---------------------------------------------------------------------------

GroupSurjection::GroupSurjection(GroupPtr source, GroupPtr target, std::vector<ElementIndex> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  require(images_.size() == source_->order(), ErrorKind::Structural, "surjection image list has wrong length");
  std::vector<char> hit(target_->order(), 0);
  for (ElementIndex x : images_) {
    require(x < target_->order(), ErrorKind::Structural, "surjection image out of range");
    hit[x] = 1;
  }
  require(std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; }), ErrorKind::Structural,
          "map is not surjective");
  for (ElementIndex a = 0; a < images_.size(); ++a)
    for (ElementIndex b = a; b < images_.size(); ++b)
      require(images_[source_->mul(a, b)] == target_->mul(images_[a], images_[b]), ErrorKind::Structural,
              "map is not a homomorphism");
}

GroupSurjection GroupSurjection::identity(GroupPtr group) {
  std::vector<ElementIndex> im(group->order());
  std::iota(im.begin(), im.end(), ElementIndex{0});
  return GroupSurjection(group, group, std::move(im));
}

std::vector<ElementIndex> GroupSurjection::kernel() const {
  std::vector<ElementIndex> k;
  for (ElementIndex g = 0; g < images_.size(); ++g)
    if (images_[g] == 0) k.push_back(g);
  return k;
}

GroupSurjection GroupSurjection::then(const GroupSurjection& next) const {
  require(same_group(target_, next.source_), ErrorKind::Structural, "surjections do not compose");
  std::vector<ElementIndex> im(images_.size());
  for (std::size_t g = 0; g < im.size(); ++g) im[g] = next(images_[g]);
  return GroupSurjection(source_, next.target_, std::move(im));
}

GroupRingElement reduce(const GroupRingElement& x, const GroupSurjection& q) {
  require(same_group(x.group(), q.source()), ErrorKind::Structural, "reduce: element is not on the source group");
  std::vector<Rational> c(q.target()->order());
  for (ElementIndex g = 0; g < x.coeffs().size(); ++g) c[q(g)] += x[g];
  return GroupRingElement(q.target(), x.ring(), std::move(c));
}

// ---------------------------------------------------------------------------

MinusRing::MinusRing(GroupPtr group, ElementIndex conjugation, CoefficientRing ring)
    : group_(std::move(group)), c_(conjugation), ring_(std::move(ring)) {
  require(c_ < group_->order(), ErrorKind::Structural, "conjugation out of range");
  require(c_ != 0, ErrorKind::Structural, "conjugation must be nontrivial");
  require(group_->mul(c_, c_) == 0, ErrorKind::Structural, "conjugation must be an involution");
  slots_.assign(group_->order(), {0, 0});
  for (ElementIndex g = 0; g < group_->order(); ++g) {
    ElementIndex cg = group_->mul(c_, g);
    if (g < cg) {
      slots_[g] = {transversal_.size(), 1};
      slots_[cg] = {transversal_.size(), -1};
      transversal_.push_back(g);
    }
  }
}

MinusRingPtr MinusRing::make(GroupPtr group, ElementIndex conjugation, CoefficientRing ring) {
  return std::make_shared<const MinusRing>(std::move(group), conjugation, std::move(ring));
}

MinusRingPtr MinusRing::with_ring(const CoefficientRing& ring) const { return make(group_, c_, ring); }

bool MinusRing::operator==(const MinusRing& o) const {
  return same_group(group_, o.group_) && c_ == o.c_ && ring_ == o.ring_;
}

static bool same_parent(const MinusRingPtr& a, const MinusRingPtr& b) { return a == b || *a == *b; }

MinusElement::MinusElement(MinusRingPtr parent)
    : parent_(std::move(parent)), coeffs_(parent_->dimension()) {}

MinusElement::MinusElement(MinusRingPtr parent, std::vector<Rational> coeffs)
    : parent_(std::move(parent)), coeffs_(std::move(coeffs)) {
  require(coeffs_.size() == parent_->dimension(), ErrorKind::Structural, "minus coefficient vector has wrong length");
  for (auto& c : coeffs_) c = parent_->ring().canonical(c);
}

MinusElement MinusElement::one(MinusRingPtr parent) { return scalar(std::move(parent), 1); }

MinusElement MinusElement::scalar(MinusRingPtr parent, const Rational& c) {
  std::vector<Rational> v(parent->dimension());
  v[0] = c;  // the identity is always a transversal member
  return MinusElement(std::move(parent), std::move(v));
}

GroupRingElement MinusElement::lift() const {
  std::vector<Rational> c(parent_->group()->order());
  const auto& tr = parent_->transversal();
  for (std::size_t i = 0; i < tr.size(); ++i) c[tr[i]] = coeffs_[i];
  return GroupRingElement(parent_->group(), parent_->ring(), std::move(c));
}

bool MinusElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool MinusElement::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

void MinusElement::check_compatible(const MinusElement& o) const {
  require(same_parent(parent_, o.parent_), ErrorKind::Structural, "minus ring mismatch");
}

MinusElement MinusElement::operator+(const MinusElement& o) const {
  MinusElement r = *this;
  r += o;
  return r;
}

MinusElement& MinusElement::operator+=(const MinusElement& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = ring().canonical(coeffs_[i] + o.coeffs_[i]);
  return *this;
}

MinusElement MinusElement::operator-(const MinusElement& o) const {
  check_compatible(o);
  std::vector<Rational> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeffs_[i] - o.coeffs_[i];
  return MinusElement(parent_, std::move(c));
}

MinusElement MinusElement::operator-() const {
  std::vector<Rational> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coeffs_[i];
  return MinusElement(parent_, std::move(c));
}

MinusElement MinusElement::operator*(const MinusElement& o) const {
  check_compatible(o);
  const auto& tr = parent_->transversal();
  const auto& G = *parent_->group();
  std::vector<Rational> c(coeffs_.size());
  for (std::size_t i = 0; i < tr.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < tr.size(); ++j) {
      if (o.coeffs_[j] == 0) continue;
      auto [slot, sign] = parent_->slot(G.mul(tr[i], tr[j]));
      if (sign > 0)
        c[slot] += coeffs_[i] * o.coeffs_[j];
      else
        c[slot] -= coeffs_[i] * o.coeffs_[j];
    }
  }
  return MinusElement(parent_, std::move(c));
}

MinusElement MinusElement::operator*(const Rational& s) const {
  std::vector<Rational> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeffs_[i] * s;
  return MinusElement(parent_, std::move(c));
}

bool MinusElement::operator==(const MinusElement& o) const {
  return same_parent(parent_, o.parent_) && coeffs_ == o.coeffs_;
}

MinusElement MinusElement::change_ring(const CoefficientRing& target) const {
  const auto& from = ring();
  if (from.is_residue()) {
    require(target.is_residue() && target.prime() == from.prime() && target.precision() <= from.precision(),
            ErrorKind::Structural, "cannot change ring " + from.name() + " -> " + target.name());
  }
  return MinusElement(parent_->with_ring(target), coeffs_);
}

std::string MinusElement::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? ", " : "") << etnckit::to_string(coeffs_[i]);
  os << "] in " << ring().name() << "[" << parent_->group()->describe() << "]_-";
  return os.str();
}

MinusElement minus_project(const GroupRingElement& x, const MinusRingPtr& parent) {
  require(same_group(x.group(), parent->group()), ErrorKind::Structural, "minus_project: group mismatch");
  require(x.ring() == parent->ring(), ErrorKind::Structural, "minus_project: ring mismatch");
  std::vector<Rational> c(parent->dimension());
  for (ElementIndex g = 0; g < x.coeffs().size(); ++g) {
    auto [slot, sign] = parent->slot(g);
    if (sign > 0)
      c[slot] += x[g];
    else
      c[slot] -= x[g];
  }
  return MinusElement(parent, std::move(c));
}

MinusElement minus_project(const GroupRingElement& x, ElementIndex conjugation) {
  return minus_project(x, MinusRing::make(x.group(), conjugation, x.ring()));
}

MinusElement minus_mul(const MinusElement& a, const MinusElement& b) { return a * b; }

MinusElement reduce(const MinusElement& x, const GroupSurjection& q, const MinusRingPtr& target) {
  require(same_group(x.parent()->group(), q.source()) && same_group(target->group(), q.target()),
          ErrorKind::Structural, "reduce: groups do not match the surjection");
  require(q(x.parent()->conjugation()) == target->conjugation(), ErrorKind::Structural,
          "reduce: surjection does not carry c to c");
  require(x.ring() == target->ring(), ErrorKind::Structural, "reduce: ring mismatch");
  return minus_project(reduce(x.lift(), q), target);
}

}  // namespace etnckit
