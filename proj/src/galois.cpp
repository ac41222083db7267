#include "etnckit/galois.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "etnckit/cyclotomic.hpp"
#include "etnckit/error.hpp"
#include "etnckit/linalg.hpp"

namespace etnckit {

std::string place_name(Place v) { return v == kInfinity ? "inf" : std::to_string(v); }

namespace {

constexpr ElementIndex kNotUnit = static_cast<ElementIndex>(-1);

std::int64_t mulmod64(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

std::int64_t multiplicative_order(std::int64_t g, std::int64_t m) {
  std::int64_t x = g % m, k = 1;
  while (x != 1 % m) {
    x = mulmod64(x, g, m);
    ++k;
  }
  return k;
}

// x = a mod m1, x = b mod m2 for coprime m1, m2
std::int64_t crt(std::int64_t a, std::int64_t m1, std::int64_t b, std::int64_t m2) {
  for (std::int64_t x = mod(a, m1); x < m1 * m2; x += m1)
    if (mod(x, m2) == mod(b, m2)) return x;
  fail(ErrorKind::Internal, "CRT failed");
}

struct UnitGroup {
  std::vector<std::int64_t> gens;
  std::vector<std::int64_t> orders;
  std::vector<std::vector<std::int64_t>> log;  // indexed by residue; empty for non-units
};

UnitGroup unit_group(std::int64_t f) {
  UnitGroup u;
  for (std::int64_t q : prime_factors(f)) {
    std::int64_t qa = 1;
    while (f % (qa * q) == 0) qa *= q;
    std::int64_t rest = f / qa;
    auto lift = [&](std::int64_t g) { return crt(g, qa, 1, rest); };
    if (q == 2) {
      if (qa >= 4) {
        u.gens.push_back(lift(qa - 1));
        u.orders.push_back(2);
      }
      if (qa >= 8) {
        u.gens.push_back(lift(5));
        u.orders.push_back(qa / 4);
      }
    } else {
      std::int64_t phi = qa / q * (q - 1);
      std::int64_t g = 2;
      while (gcd64(g, q) != 1 || multiplicative_order(g, qa) != phi) ++g;
      u.gens.push_back(lift(g));
      u.orders.push_back(phi);
    }
  }
  u.log.assign(static_cast<std::size_t>(f), {});
  std::vector<std::int64_t> e(u.gens.size(), 0);
  for (;;) {
    std::int64_t x = 1 % f;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::int64_t k = 0; k < e[i]; ++k) x = mulmod64(x, u.gens[i], f);
    u.log[static_cast<std::size_t>(x)] = e;
    std::size_t i = 0;
    while (i < e.size() && ++e[i] == u.orders[i]) e[i++] = 0;
    if (i == e.size()) break;
  }
  return u;
}

std::vector<std::int64_t> units_mod(std::int64_t f) {
  std::vector<std::int64_t> out;
  for (std::int64_t a = 0; a < f; ++a)
    if (gcd64(a, f) == 1) out.push_back(a);
  if (f == 1) out = {0};
  return out;
}

std::vector<std::int64_t> subgroup_of_units(std::int64_t f, const std::vector<std::int64_t>& gens) {
  std::set<std::int64_t> s{1 % f};
  std::vector<std::int64_t> frontier{1 % f};
  while (!frontier.empty()) {
    std::int64_t x = frontier.back();
    frontier.pop_back();
    for (std::int64_t g : gens) {
      std::int64_t y = mulmod64(x, mod(g, f), f);
      if (s.insert(y).second) frontier.push_back(y);
    }
  }
  return {s.begin(), s.end()};
}

}  // namespace

struct AbelianFieldQ::Impl {
  std::int64_t f = 1;
  std::vector<std::int64_t> H;
  GroupPtr G;
  ElementIndex c = 0;
  std::vector<ElementIndex> labels;  // by residue
  std::vector<std::int64_t> reps;    // by element
  std::vector<std::int64_t> ram;

  mutable std::mutex mu;
  mutable std::map<Place, std::unique_ptr<PlaceData>> places;
};

AbelianFieldQ AbelianFieldQ::build(std::int64_t f, const std::vector<std::int64_t>& H_gens, bool require_cm) {
  require(f >= 1, ErrorKind::Input, "conductor must be positive, got " + std::to_string(f));
  require(f % 4 != 2, ErrorKind::Input, "conductor " + std::to_string(f) + " is 2 mod 4");
  for (std::int64_t h : H_gens)
    require(gcd64(h, f) == 1, ErrorKind::Input,
            "H generator " + std::to_string(h) + " is not a unit mod " + std::to_string(f));

  // pass to the least f' whose congruence kernel already lies in H
  auto Hfull = subgroup_of_units(f, H_gens);
  std::int64_t fmin = f;
  for (std::int64_t d : divisors(f)) {
    bool ok = true;
    for (std::int64_t x : units_mod(f))
      if (mod(x, d) == mod(1, d) && !std::binary_search(Hfull.begin(), Hfull.end(), x)) {
        ok = false;
        break;
      }
    if (ok) {
      fmin = d;
      break;
    }
  }
  std::vector<std::int64_t> gens;
  for (std::int64_t h : H_gens) gens.push_back(mod(h, fmin));

  auto impl = std::make_shared<Impl>();
  impl->f = fmin;
  impl->H = subgroup_of_units(fmin, gens);
  UnitGroup U = unit_group(fmin);

  const std::size_t r = U.gens.size();
  IntMatrix rel;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<BigInt> row(r);
    row[i] = U.orders[i];
    rel.push_back(row);
  }
  for (std::int64_t h : gens) {
    const auto& lg = U.log[static_cast<std::size_t>(h)];
    rel.emplace_back(lg.begin(), lg.end());
  }
  std::vector<std::int64_t> orders;
  std::vector<std::size_t> kept;
  IntegerSNF snf;
  if (r > 0) {
    snf = integer_smith_form(rel);
    for (std::size_t i = 0; i < r; ++i)
      if (snf.diagonal[i] > 1) {
        orders.push_back(snf.diagonal[i].get_si());
        kept.push_back(i);
      }
  }
  impl->G = make_group(orders);

  auto units = units_mod(fmin);
  impl->labels.assign(static_cast<std::size_t>(fmin), kNotUnit);
  impl->reps.assign(impl->G->order(), 0);
  std::vector<char> seen(impl->G->order(), 0);
  for (std::int64_t a : units) {
    std::vector<std::int64_t> coords(kept.size());
    const auto& lg = U.log[static_cast<std::size_t>(a)];
    for (std::size_t k = 0; k < kept.size(); ++k) {
      BigInt s = 0;
      for (std::size_t i = 0; i < r; ++i) s += lg[i] * snf.V[i][kept[k]];
      BigInt m;
      mpz_fdiv_r(m.get_mpz_t(), s.get_mpz_t(), BigInt(orders[k]).get_mpz_t());
      coords[k] = m.get_si();
    }
    ElementIndex g = impl->G->index_of(coords);
    impl->labels[static_cast<std::size_t>(a)] = g;
    if (!seen[g]) {
      seen[g] = 1;
      impl->reps[g] = a == 0 ? 1 : a;
    }
  }
  for (std::int64_t a : impl->H)
    require(impl->labels[static_cast<std::size_t>(a)] == 0, ErrorKind::Internal, "H does not map to the identity");
  impl->c = impl->labels[static_cast<std::size_t>(mod(-1, fmin))];
  impl->ram = prime_factors(fmin);

  AbelianFieldQ K(impl);
  if (require_cm)
    require(K.is_cm(), ErrorKind::Input, "field " + K.descriptor() + " is not CM (-1 lies in H)");
  return K;
}

std::int64_t AbelianFieldQ::conductor() const { return impl_->f; }
const std::vector<std::int64_t>& AbelianFieldQ::H() const { return impl_->H; }
const GroupPtr& AbelianFieldQ::group() const { return impl_->G; }
ElementIndex AbelianFieldQ::conjugation() const { return impl_->c; }

ElementIndex AbelianFieldQ::label(std::int64_t a) const {
  ElementIndex g = impl_->labels[static_cast<std::size_t>(mod(a, impl_->f))];
  require(g != kNotUnit, ErrorKind::Precondition,
          std::to_string(a) + " is not a unit mod " + std::to_string(impl_->f));
  return g;
}

std::int64_t AbelianFieldQ::representative(ElementIndex g) const { return impl_->reps.at(g); }

std::vector<std::int64_t> AbelianFieldQ::ramified_primes() const { return impl_->ram; }

const PlaceData& AbelianFieldQ::place(Place v) const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  auto it = impl_->places.find(v);
  if (it != impl_->places.end()) return *it->second;

  const auto& G = *impl_->G;
  auto pd = std::make_unique<PlaceData>();
  pd->prime = v;
  if (v == kInfinity) {
    std::vector<ElementIndex> gen{impl_->c};
    pd->inertia = G.subgroup_generated(gen);
    pd->decomposition = pd->inertia;
    pd->frobenius = 0;
    pd->norm = 0;
  } else {
    require(is_prime(v), ErrorKind::Input, "place " + std::to_string(v) + " is not a prime");
    const std::int64_t f = impl_->f;
    std::int64_t la = 1;
    while (f % (la * v) == 0) la *= v;
    const std::int64_t m = f / la;
    std::vector<ElementIndex> inert;
    std::int64_t frob = -1;
    for (std::int64_t x : units_mod(f)) {
      if (mod(x, m) == mod(1, m)) inert.push_back(label(x));
      if (frob < 0 && mod(x, m) == mod(v, m) && mod(x, la) == mod(1, la)) frob = x;
    }
    require(frob >= 0, ErrorKind::Internal, "no Frobenius lift found");
    pd->inertia = G.subgroup_generated(inert);
    pd->frobenius = label(frob);
    inert.push_back(pd->frobenius);
    pd->decomposition = G.subgroup_generated(inert);
    pd->norm = v;
  }
  pd->ramification_index = static_cast<std::int64_t>(pd->inertia.size());
  pd->residue_degree = static_cast<std::int64_t>(pd->decomposition.size() / pd->inertia.size());
  pd->places_above = G.order() / pd->decomposition.size();
  auto& ref = *pd;
  impl_->places.emplace(v, std::move(pd));
  return ref;
}

bool AbelianFieldQ::contains(const AbelianFieldQ& E) const {
  if (impl_->f % E.conductor() != 0) return false;
  for (std::int64_t h : impl_->H)
    if (E.label(h) != 0) return false;
  return true;
}

GroupSurjection AbelianFieldQ::restriction_to(const AbelianFieldQ& E) const {
  require(contains(E), ErrorKind::Precondition, E.descriptor() + " is not a subfield of " + descriptor());
  std::vector<ElementIndex> im(degree());
  for (ElementIndex g = 0; g < im.size(); ++g) im[g] = E.label(representative(g));
  return GroupSurjection(group(), E.group(), std::move(im));
}

MinusRingPtr AbelianFieldQ::minus_ring(const CoefficientRing& ring) const {
  require(is_cm(), ErrorKind::Precondition, "minus part of the non-CM field " + descriptor());
  return MinusRing::make(group(), conjugation(), ring);
}

std::string AbelianFieldQ::descriptor() const {
  std::string s = "f=" + std::to_string(impl_->f) + " H=[";
  for (std::size_t i = 0; i < impl_->H.size(); ++i) s += (i ? "," : "") + std::to_string(impl_->H[i]);
  return s + "]";
}

bool AbelianFieldQ::operator==(const AbelianFieldQ& o) const {
  return impl_ == o.impl_ || (impl_->f == o.impl_->f && impl_->H == o.impl_->H);
}

// ---------------------------------------------------------------------------

SigmaSets sigma_sets(const AbelianFieldQ& K, std::int64_t p, const std::vector<std::int64_t>& T) {
  require(is_prime(p), ErrorKind::Input, "p = " + std::to_string(p) + " is not prime");
  SigmaSets s;
  s.T = T;
  s.S.push_back(kInfinity);
  s.Sigma.push_back(kInfinity);
  for (std::int64_t ell : T) {
    require(is_prime(ell), ErrorKind::Input, "T entry " + std::to_string(ell) + " is not prime");
    require(!K.is_ramified(ell), ErrorKind::Input,
            "T entry " + std::to_string(ell) + " is ramified in " + K.descriptor());
    s.SigmaPrime.push_back(ell);
  }
  for (std::int64_t ell : K.ramified_primes()) {
    s.S.push_back(ell);
    if (ell == p)
      s.Sigma.push_back(ell);
    else
      s.SigmaPrime.push_back(ell);
  }
  return s;
}

std::int64_t roots_of_unity_order(const AbelianFieldQ& K) {
  std::int64_t m0 = 1;
  for (std::int64_t m : divisors(K.conductor())) {
    bool fixed = std::all_of(K.H().begin(), K.H().end(), [m](std::int64_t h) { return mod(h, m) == mod(1, m); });
    if (fixed) m0 = lcm64(m0, m);
  }
  return lcm64(2, m0);
}

bool dr_condition_check(const AbelianFieldQ& K, const std::vector<std::int64_t>& T) {
  if (T.empty()) return false;
  // zeta of order N is 1 mod every prime above l iff l divides Phi_N(1)
  for (std::int64_t N : divisors(roots_of_unity_order(K))) {
    if (N == 1) continue;
    auto phi = cyclotomic_polynomial(N);
    BigInt at_one = std::accumulate(phi.begin(), phi.end(), BigInt(0));
    bool all = std::all_of(T.begin(), T.end(), [&](std::int64_t ell) {
      return mpz_divisible_ui_p(at_one.get_mpz_t(), static_cast<unsigned long>(ell)) != 0;
    });
    if (all) return false;
  }
  return true;
}

std::size_t FieldLattice::index_of(const AbelianFieldQ& E) const {
  for (std::size_t i = 0; i < members.size(); ++i)
    if (members[i] == E) return i;
  return members.size();
}

namespace {

FieldLattice finish_lattice(const AbelianFieldQ& K, std::vector<AbelianFieldQ> members) {
  FieldLattice L;
  L.members = std::move(members);
  for (const auto& E : L.members) L.from_top.push_back(K.restriction_to(E));
  for (std::size_t i = 0; i < L.members.size(); ++i)
    for (std::size_t j = 0; j < L.members.size(); ++j)
      if (i != j && L.members[j].contains(L.members[i])) L.edges.emplace_back(i, j);
  return L;
}

}  // namespace

FieldLattice subfield_lattice(const AbelianFieldQ& K) {
  if (!K.is_cm()) return FieldLattice{};
  const auto& G = *K.group();
  auto units = units_mod(K.conductor());
  std::vector<AbelianFieldQ> members;
  for (const auto& U : G.all_subgroups()) {
    if (std::binary_search(U.begin(), U.end(), K.conjugation())) continue;
    std::vector<std::int64_t> HE;
    for (std::int64_t a : units)
      if (std::binary_search(U.begin(), U.end(), K.label(a))) HE.push_back(a);
    members.push_back(AbelianFieldQ::build(K.conductor(), HE, true));
  }
  std::stable_sort(members.begin(), members.end(), [](const AbelianFieldQ& a, const AbelianFieldQ& b) {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    if (a.conductor() != b.conductor()) return a.conductor() < b.conductor();
    return a.descriptor() < b.descriptor();
  });
  return finish_lattice(K, std::move(members));
}

FieldLattice subfield_lattice(const AbelianFieldQ& K, const std::vector<AbelianFieldQ>& listed) {
  if (!K.is_cm()) return FieldLattice{};
  std::vector<AbelianFieldQ> members{K};
  for (const auto& E : listed) {
    require(E.is_cm(), ErrorKind::Input, "listed field " + E.descriptor() + " is not CM");
    require(K.contains(E), ErrorKind::Input, "listed field " + E.descriptor() + " is not a subfield of " +
                                                 K.descriptor());
    if (std::find(members.begin(), members.end(), E) == members.end()) members.push_back(E);
  }
  return finish_lattice(K, std::move(members));
}

}  // namespace etnckit
