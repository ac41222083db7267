#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "etnckit/arith.hpp"

namespace etnckit {

using IntMatrix = std::vector<std::vector<BigInt>>;

// U*A*V = diag(d_0, d_1, ...) with d_i | d_{i+1}, d_i >= 0. U is not kept.
struct IntegerSNF {
  std::vector<BigInt> diagonal;  // length min(rows, cols)
  IntMatrix V;                   // cols x cols, unimodular
};

IntegerSNF integer_smith_form(const IntMatrix& A);

/// Dense matrix over Z/p^N with p^N < 2^62.
class ResidueMatrix {
 public:
  ResidueMatrix(std::int64_t p, int precision, std::size_t rows, std::size_t cols);

  std::int64_t prime() const { return p_; }
  int precision() const { return n_; }
  std::int64_t modulus() const { return mod_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, std::int64_t v);
  void set(std::size_t i, std::size_t j, const BigInt& v);
  std::vector<std::int64_t> row(std::size_t i) const;

  ResidueMatrix transpose() const;
  ResidueMatrix operator*(const ResidueMatrix& o) const;
  std::vector<std::int64_t> apply(const std::vector<std::int64_t>& x) const;       // A x
  std::vector<std::int64_t> apply_left(const std::vector<std::int64_t>& y) const;  // y A
  static ResidueMatrix identity(std::int64_t p, int precision, std::size_t n);

  std::int64_t mulmod(std::int64_t a, std::int64_t b) const;
  std::int64_t addmod(std::int64_t a, std::int64_t b) const;
  std::int64_t submod(std::int64_t a, std::int64_t b) const;
  int valuation_of(std::int64_t v) const;  // N for 0
  std::int64_t unit_inverse(std::int64_t u) const;

 private:
  std::int64_t p_;
  int n_;
  std::int64_t mod_;
  std::size_t rows_, cols_;
  std::vector<std::int64_t> a_;
};

// L*A*R = D with D diagonal, D_ii = p^{valuations[i]} (i < rank) and zero beyond.
struct ResidueSNF {
  ResidueMatrix L, D, R;
  std::vector<int> valuations;  // one per nonzero diagonal entry, ascending
};

ResidueSNF residue_smith_form(const ResidueMatrix& A);

struct SolveResult {
  bool feasible = false;
  std::vector<std::int64_t> solution;     // A x = b when feasible
  std::vector<std::int64_t> certificate;  // lambda A = 0, lambda b != 0 otherwise
};

SolveResult solve_mod(const ResidueMatrix& A, const std::vector<std::int64_t>& b);

// Row-span membership and equality over Z/p^N.
bool span_contains(const ResidueMatrix& rows, const std::vector<std::int64_t>& v);
bool same_span(const ResidueMatrix& a, const ResidueMatrix& b);

}  // namespace etnckit
