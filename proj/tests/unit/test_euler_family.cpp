#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "etnckit/error.hpp"
#include "etnckit/euler_family.hpp"
#include "etnckit/lvalues.hpp"
#include "oracles.hpp"

using namespace etnckit;

namespace {

MinusElement random_minus(const AbelianFieldQ& E, std::int64_t p, int M, std::mt19937_64& rng) {
  auto mr = E.minus_ring(CoefficientRing::residues(p, M));
  std::vector<Rational> c(mr->dimension());
  for (auto& x : c) x = static_cast<long>(rng() % static_cast<std::uint64_t>(ipow(p, M)));
  return MinusElement(mr, std::move(c));
}

std::vector<Place> sigma_of(const AbelianFieldQ& K, std::int64_t p) { return sigma_sets(K, p, {}).Sigma; }

// Replace member idx of an induced family by a random representative.
NormFamily perturbed(NormFamily fam, std::size_t idx, std::mt19937_64& rng) {
  auto& e = fam.entries[idx];
  e = REElement::make(e.field, fam.p, fam.k, random_minus(e.field, fam.p, fam.k + e.r, rng));
  return fam;
}

}  // namespace

TEST_CASE("denominator exponents") {
  auto Qi = AbelianFieldQ::build(4, {});
  CHECK(denominator_exponent(Qi, 2) == 2);  // G_infinity and G_2 both have order 2
  CHECK(denominator_exponent(Qi, 3) == 0);
  auto K = AbelianFieldQ::build(15, {});
  CHECK(denominator_exponent(K, 2) == 1);
  CHECK(denominator_exponent(K, 3) == 0);
  CHECK(denominator_exponent(K, 5) == 0);
  CHECK(denominator_exponent(AbelianFieldQ::build(25, {}), 5) == 1);
}

TEST_CASE("R_E elements compare modulo the idempotent") {
  auto K = AbelianFieldQ::build(15, {});
  std::mt19937_64 rng(21);
  int M = 2 + denominator_exponent(K, 5);
  auto x = REElement::make(K, 5, 2, random_minus(K, 5, M, rng));
  CHECK(x.equivalent(x));
  auto w = random_minus(K, 5, M, rng);
  auto one = MinusElement::one(w.parent());
  // (p^r - p^r e_E) w is killed by e_E
  auto killed = (one * Rational(ipow(5, x.r)) - scaled_idempotent(K, 5, M)) * w;
  CHECK(x.equivalent(REElement::make(K, 5, 2, x.x + killed)));
  CHECK_FALSE(x.equivalent(REElement::make(K, 5, 2, x.x + one)));
  CHECK_THROWS_AS(REElement::make(K, 5, 0, x.x), Error);
  CHECK_THROWS_AS(REElement::make(K, 5, 3, x.x), Error);
}

TEST_CASE("induced families are norm compatible and lift back") {
  std::mt19937_64 rng(22);
  for (std::int64_t f : {12, 15, 20, 60}) {
    auto K = AbelianFieldQ::build(f, {});
    auto L = subfield_lattice(K);
    for (std::int64_t p : {2, 3}) {
      for (int k = 1; k <= 3; ++k) {
        int N = k;
        for (const auto& E : L.members) N = std::max(N, k + denominator_exponent(E, p));
        auto fam = induce_family(L, p, k, random_minus(K, p, N, rng));
        CHECK(family_precision(fam) == N);
        for (const auto& v : is_norm_compatible(fam)) CHECK(v.ok);
        auto order = sigma_of(K, p);
        for (std::size_t stage = 0; stage <= order.size(); ++stage) {
          auto res = lift_family(fam, stage, k, order);
          REQUIRE(res.feasible);
          REQUIRE(res.lift.has_value());
          for (bool ok : check_lift(fam, *res.lift, stage, k, order)) CHECK(ok);
        }
      }
    }
  }
}

TEST_CASE("solver feasibility agrees with brute force") {
  std::mt19937_64 rng(23);
  int feasible = 0, infeasible = 0;
  for (std::int64_t f : {4, 5, 8, 12, 15, 20, 24}) {
    auto K = AbelianFieldQ::build(f, {});
    auto L = subfield_lattice(K);
    for (std::int64_t p : {2, 3}) {
      int k = 1;
      auto probe = induce_family(L, p, k, random_minus(K, p, 8, rng));
      const int N = family_precision(probe);
      double space = std::pow(static_cast<double>(ipow(p, N)), static_cast<double>(K.degree() / 2));
      if (space > 3e5) continue;
      auto order = sigma_of(K, p);
      for (int trial = 0; trial < 4; ++trial) {
        auto fam = induce_family(L, p, k, random_minus(K, p, N, rng));
        if (trial > 0) fam = perturbed(fam, rng() % fam.entries.size(), rng);
        auto bf = oracle::brute_force_lift(fam, 0, k, order);
        auto res = lift_family(fam, 0, k, order);
        CHECK_MESSAGE(res.feasible == bf.feasible, K.descriptor(), " p=", p, " trial ", trial);
        if (res.feasible) ++feasible;
        else {
          ++infeasible;
          CHECK(res.certificate_verified);
          CHECK(res.certificate.size() == res.certificate_labels.size());
        }
      }
    }
  }
  CHECK(feasible > 0);
  CHECK(infeasible > 0);
}

TEST_CASE("an incompatible family has a failing edge and no lift") {
  auto K = AbelianFieldQ::build(15, {});
  auto L = subfield_lattice(K);
  auto Q5 = AbelianFieldQ::build(5, {});
  const std::int64_t p = 3;
  const int k = 1;
  auto mrK = K.minus_ring(CoefficientRing::residues(p, 1));
  auto fam = induce_family(L, p, k, MinusElement(mrK, {Rational(1), Rational(0), Rational(0), Rational(0)}));
  auto idx = L.index_of(Q5);
  REQUIRE(idx < L.members.size());
  fam.entries[idx] = REElement::make(Q5, p, k, MinusElement(Q5.minus_ring(CoefficientRing::residues(p, 1))));
  bool some_edge_fails = false;
  for (const auto& v : is_norm_compatible(fam))
    if (!v.ok) some_edge_fails = true;
  auto res = lift_family(fam, 0, k, sigma_of(K, p));
  CHECK(some_edge_fails);
  CHECK_FALSE(res.feasible);
  CHECK(res.certificate_verified);
}

TEST_CASE("the edge condition does not see the kernel of e_E'") {
  std::mt19937_64 rng(24);
  auto K = AbelianFieldQ::build(60, {});
  auto L = subfield_lattice(K);
  for (std::int64_t p : {2, 3, 5}) {
    int N = 2;
    for (const auto& E : L.members) N = std::max(N, 2 + denominator_exponent(E, p));
    auto fam = induce_family(L, p, 2, random_minus(K, p, N, rng));
    for (auto [i, j] : L.edges) {
      const auto& Ep = L.members[j];
      auto w = random_minus(Ep, p, 2 + fam.entries[j].r, rng);
      CHECK(lift_well_defined_check(fam, i, j, w));
    }
  }
}

TEST_CASE("single member lattices always lift") {
  std::mt19937_64 rng(25);
  auto Qi = AbelianFieldQ::build(4, {});
  auto L = subfield_lattice(Qi);
  REQUIRE(L.members.size() == 1);
  REQUIRE(L.edges.empty());
  NormFamily fam{L, 2, 2, {REElement::make(Qi, 2, 2, random_minus(Qi, 2, 4, rng))}};
  auto res = lift_family(fam, 0, 2, sigma_of(Qi, 2));
  CHECK(res.feasible);
}

TEST_CASE("lift argument validation") {
  std::mt19937_64 rng(26);
  auto K = AbelianFieldQ::build(15, {});
  auto L = subfield_lattice(K);
  auto fam = induce_family(L, 3, 1, random_minus(K, 3, 1, rng));
  CHECK_THROWS_AS(lift_family(fam, 0, 2, sigma_of(K, 3)), Error);
  CHECK_THROWS_AS(lift_family(fam, 0, 1, {kInfinity}), Error);
  CHECK_THROWS_AS(lift_family(fam, 3, 1, sigma_of(K, 3)), Error);
  CHECK_THROWS_AS(induce_family(L, 3, 2, random_minus(K, 3, 1, rng)), Error);
}
