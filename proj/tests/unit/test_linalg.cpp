#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "etnckit/error.hpp"
#include "etnckit/linalg.hpp"

using namespace etnckit;

namespace {

ResidueMatrix random_matrix(std::int64_t p, int N, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  ResidueMatrix A(p, N, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) A.set(i, j, static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(A.modulus())));
  return A;
}

}  // namespace

TEST_CASE("integer Smith form of a relation lattice") {
  IntMatrix A{{BigInt(4), BigInt(0)}, {BigInt(-1), BigInt(2)}};
  auto snf = integer_smith_form(A);
  CHECK(snf.diagonal == std::vector<BigInt>{1, 8});
  IntMatrix B{{BigInt(2), BigInt(0)}, {BigInt(0), BigInt(4)}, {BigInt(0), BigInt(6)}};
  CHECK(integer_smith_form(B).diagonal == std::vector<BigInt>{2, 2});
}

TEST_CASE("residue Smith form: L A R = D") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::int64_t p = trial % 2 ? 2 : 3;
    auto A = random_matrix(p, 3, 1 + rng() % 4, 1 + rng() % 4, rng);
    // lower the rank sometimes
    if (trial % 3 == 0)
      for (std::size_t j = 0; j < A.cols(); ++j) A.set(A.rows() - 1, j, A.mulmod(A.at(0, j), p));
    auto snf = residue_smith_form(A);
    auto LAR = snf.L * A * snf.R;
    for (std::size_t i = 0; i < A.rows(); ++i)
      for (std::size_t j = 0; j < A.cols(); ++j) CHECK(LAR.at(i, j) == snf.D.at(i, j));
    CHECK(std::is_sorted(snf.valuations.begin(), snf.valuations.end()));
  }
}

TEST_CASE("solve_mod returns solutions or verified certificates") {
  std::mt19937_64 rng(12);
  int feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::int64_t p = trial % 2 ? 2 : 5;
    auto A = random_matrix(p, 2, 1 + rng() % 4, 1 + rng() % 3, rng);
    std::vector<std::int64_t> b(A.rows());
    for (auto& x : b) x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(A.modulus()));
    auto res = solve_mod(A, b);
    if (res.feasible) {
      ++feasible;
      CHECK(A.apply(res.solution) == b);
    } else {
      ++infeasible;
      auto lamA = A.apply_left(res.certificate);
      for (auto v : lamA) CHECK(v == 0);
      std::int64_t lb = 0;
      for (std::size_t i = 0; i < b.size(); ++i) lb = A.addmod(lb, A.mulmod(res.certificate[i], b[i]));
      CHECK(lb != 0);
    }
  }
  CHECK(feasible > 0);
  CHECK(infeasible > 0);
}

TEST_CASE("2x = 1 mod 4 is infeasible") {
  ResidueMatrix A(2, 2, 1, 1);
  A.set(0, 0, 2);
  auto res = solve_mod(A, {1});
  CHECK_FALSE(res.feasible);
  REQUIRE(res.certificate.size() == 1);
  CHECK(A.mulmod(res.certificate[0], 2) == 0);
  CHECK(res.certificate[0] % 4 != 0);
}

TEST_CASE("row spans") {
  ResidueMatrix a(3, 2, 2, 2), b(3, 2, 1, 2);
  a.set(0, 0, 1);
  a.set(1, 1, 3);
  b.set(0, 0, 2);
  b.set(0, 1, 6);
  CHECK(span_contains(a, b.row(0)));
  CHECK_FALSE(span_contains(b, a.row(0)));
  CHECK_FALSE(same_span(a, b));
  CHECK(same_span(a, a));
}

TEST_CASE("modulus bound") {
  CHECK_THROWS_AS(ResidueMatrix(2, 63, 1, 1), Error);
  CHECK_NOTHROW(ResidueMatrix(5, 20, 1, 1));
}
