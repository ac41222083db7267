#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "etnckit/cyclotomic.hpp"
#include "etnckit/error.hpp"
#include "etnckit/group_ring.hpp"
#include "oracles.hpp"

using namespace etnckit;

namespace {

const CoefficientRing kZ = CoefficientRing::integers();
const CoefficientRing kQ = CoefficientRing::rationals();

}  // namespace

TEST_CASE("finite abelian group indexing") {
  auto G = make_group({2, 3});
  CHECK(G->order() == 6);
  CHECK(G->identity() == 0);
  CHECK(G->coordinates(5) == std::vector<std::int64_t>{1, 2});
  std::vector<std::int64_t> c{3, -1};
  CHECK(G->index_of(c) == G->index_of(std::vector<std::int64_t>{1, 2}));
  for (std::size_t a = 0; a < 6; ++a) {
    CHECK(G->mul(a, G->inverse(a)) == 0);
    CHECK(G->pow(a, G->element_order(a)) == 0);
  }
  CHECK(G->exponent() == 6);
  CHECK(G->describe() == "Z/2 x Z/3");
  CHECK(make_group({})->order() == 1);
  // 1, Z/2, Z/3, whole group
  CHECK(G->all_subgroups().size() == 4);
  CHECK(make_group({2, 2})->all_subgroups().size() == 5);
}

TEST_CASE("coefficient rings") {
  auto R = CoefficientRing::residues(3, 2);
  CHECK(R.modulus() == 9);
  CHECK(R.canonical(Rational(-1)) == 8);
  CHECK(R.canonical(Rational(1, 2)) == 5);
  CHECK_THROWS_AS(R.canonical(Rational(1, 3)), Error);
  CHECK_THROWS_AS(kZ.canonical(Rational(1, 2)), Error);
  CHECK(CoefficientRing::parse("Z/5^3") == CoefficientRing::residues(5, 3));
  CHECK(CoefficientRing::parse("Q") == kQ);
  CHECK_THROWS_AS(CoefficientRing::parse("Z/6^1"), Error);
}

TEST_CASE("identity and (1+c)(1-c)") {
  std::mt19937_64 rng(1);
  auto G = make_group({2, 4});
  auto x = oracle::random_element(G, kZ, rng, 5);
  CHECK(GroupRingElement::one(G, kZ) * x == x);
  ElementIndex c = G->index_of(std::vector<std::int64_t>{0, 2});
  auto one = GroupRingElement::one(G, kZ);
  auto cc = GroupRingElement::monomial(G, kZ, c);
  CHECK(((one + cc) * (one - cc)).is_zero());
}

TEST_CASE("convolution against the double-loop oracle") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    auto G = oracle::random_group(rng, 12);
    auto a = oracle::random_element(G, kQ, rng, 7);
    auto b = oracle::random_element(G, kQ, rng, 7);
    CHECK((a * b).coeffs() == oracle::convolve(*G, a.coeffs(), b.coeffs()));
  }
}

TEST_CASE("residue coefficients reduce after multiplication") {
  auto G = make_group({3});
  auto R = CoefficientRing::residues(2, 3);
  GroupRingElement a(G, R, {Rational(7), Rational(5), Rational(1)});
  auto sq = a * a;
  // 49 + 10, 70 + 1, 14 + 25
  CHECK(sq.coeffs() == std::vector<Rational>{Rational(59 % 8), Rational(71 % 8), Rational(39 % 8)});
  CHECK(a.change_ring(CoefficientRing::residues(2, 1)).coeffs() == std::vector<Rational>{1, 1, 1});
  CHECK_THROWS_AS(a.change_ring(CoefficientRing::residues(2, 4)), Error);
  CHECK_THROWS_AS(a.change_ring(CoefficientRing::residues(3, 1)), Error);
}

TEST_CASE("minus projection") {
  auto G = make_group({2, 3});
  ElementIndex c = G->index_of(std::vector<std::int64_t>{1, 0});
  auto mr = MinusRing::make(G, c, kZ);
  CHECK(mr->dimension() == 3);
  auto one = GroupRingElement::one(G, kZ);
  auto cc = GroupRingElement::monomial(G, kZ, c);
  CHECK(minus_project(one + cc, mr).is_zero());
  CHECK(minus_project(one - cc, mr) == MinusElement::scalar(mr, 2));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = oracle::random_element(G, kZ, rng, 6);
    auto b = oracle::random_element(G, kZ, rng, 6);
    CHECK(minus_project(a * b, mr) == minus_mul(minus_project(a, mr), minus_project(b, mr)));
    auto pa = minus_project(a, mr);
    CHECK(minus_project(pa.lift(), mr) == pa);
  }
  CHECK_THROWS_AS(MinusRing::make(G, 0, kZ), Error);
}

TEST_CASE("reduction along surjections") {
  auto G = make_group({2, 6});
  auto H = make_group({3});
  std::vector<ElementIndex> images(G->order());
  for (ElementIndex g = 0; g < G->order(); ++g)
    images[g] = H->index_of(std::vector<std::int64_t>{G->coordinates(g)[1] % 3});
  GroupSurjection q(G, H, images);
  auto ker = q.kernel();
  CHECK(ker.size() == 4);
  auto N = GroupRingElement::sum_of(G, kZ, ker);
  CHECK(reduce(N, q) == GroupRingElement::scalar(H, kZ, 4));
  CHECK(reduce(GroupRingElement::monomial(G, kZ, 5), q) == GroupRingElement::monomial(H, kZ, q(5)));

  std::mt19937_64 rng(4);
  auto x = oracle::random_element(G, kZ, rng, 5);
  CHECK(reduce(x, GroupSurjection::identity(G)) == x);
  // fibre sums
  auto rx = reduce(x, q);
  for (ElementIndex h = 0; h < H->order(); ++h) {
    Rational s = 0;
    for (ElementIndex g = 0; g < G->order(); ++g)
      if (q(g) == h) s += x[g];
    CHECK(rx[h] == s);
  }
  std::vector<ElementIndex> bad(G->order(), 0);
  bad[1] = 1;
  CHECK_THROWS_AS(GroupSurjection(G, H, bad), Error);
}

TEST_CASE("characters: orthogonality and idempotents") {
  auto G = make_group({2, 4});
  auto chars = Character::all(G);
  REQUIRE(chars.size() == 8);
  for (const auto& chi : chars)
    for (const auto& psi : chars) {
      auto e = character_idempotent(chi);
      auto v = char_eval(psi, e);
      if (chi == psi) CHECK(v == CyclotomicNumber::rational(psi.field(), 1));
      else CHECK(v.is_zero());
    }
  auto NG = GroupRingElement::sum_of(G, kZ, G->subgroup_generated(std::vector<ElementIndex>{1, 4}));
  REQUIRE(NG.augmentation() == 8);
  CHECK(char_eval(Character::trivial(G), NG).rational_value() == 8);
  CHECK_THROWS_AS(char_eval(chars[1], NG.change_ring(CoefficientRing::residues(2, 2))), Error);
}

TEST_CASE("Fourier inversion recovers the element") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto G = oracle::random_group(rng, 12);
    auto x = oracle::random_element(G, kQ, rng, 9);
    auto chars = Character::all(G);
    std::vector<CyclotomicNumber> vals;
    for (const auto& chi : chars) vals.push_back(char_eval(chi, x));
    CHECK(fourier_inverse(G, chars, vals) == x);
  }
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<BigInt>{-1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<BigInt>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<BigInt>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<BigInt>{1, 0, -1, 0, 1});
  auto F = CyclotomicField::get(12);
  auto z = CyclotomicNumber::zeta_power(F, 1);
  auto acc = CyclotomicNumber::rational(F, 1);
  for (int i = 0; i < 12; ++i) acc = acc * z;
  CHECK(acc == CyclotomicNumber::rational(F, 1));
  CHECK((z * z.conjugate()) == CyclotomicNumber::rational(F, 1));
}
