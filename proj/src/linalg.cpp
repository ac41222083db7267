#include "etnckit/linalg.hpp"

#include <algorithm>
#include <utility>

#include "etnckit/error.hpp"

namespace etnckit {

namespace {

void col_axpy(IntMatrix& M, std::size_t dst, std::size_t src, const BigInt& f) {
  for (auto& row : M) row[dst] -= f * row[src];
}

void col_swap(IntMatrix& M, std::size_t a, std::size_t b) {
  for (auto& row : M) std::swap(row[a], row[b]);
}

}  // namespace

IntegerSNF integer_smith_form(const IntMatrix& A0) {
  IntMatrix A = A0;
  const std::size_t m = A.size();
  const std::size_t n = m ? A[0].size() : 0;
  IntegerSNF out;
  out.V.assign(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i) out.V[i][i] = 1;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (A[i][j] != 0 && (pi == m || abs(A[i][j]) < abs(A[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == m) break;
      std::swap(A[t], A[pi]);
      col_swap(A, t, pj);
      col_swap(out.V, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (A[i][t] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), A[i][t].get_mpz_t(), A[t][t].get_mpz_t());
        for (std::size_t j = t; j < n; ++j) A[i][j] -= q * A[t][j];
        if (A[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (A[t][j] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), A[t][j].get_mpz_t(), A[t][t].get_mpz_t());
        col_axpy(A, j, t, q);
        col_axpy(out.V, j, t, q);
        if (A[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility of the trailing block by the pivot
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(A[i][j].get_mpz_t(), A[t][t].get_mpz_t())) {
            for (std::size_t c = t; c < n; ++c) A[t][c] += A[i][c];
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (A[t][t] < 0) {
      for (std::size_t i = 0; i < m; ++i) A[i][t] = -A[i][t];
      for (std::size_t i = 0; i < n; ++i) out.V[i][t] = -out.V[i][t];
    }
  }
  out.diagonal.resize(std::min(m, n));
  for (std::size_t t = 0; t < out.diagonal.size(); ++t) out.diagonal[t] = A[t][t];
  return out;
}

// ---------------------------------------------------------------------------

ResidueMatrix::ResidueMatrix(std::int64_t p, int precision, std::size_t rows, std::size_t cols)
    : p_(p), n_(precision), mod_(1), rows_(rows), cols_(cols), a_(rows * cols, 0) {
  require(is_prime(p), ErrorKind::Structural, "residue matrix needs a prime modulus base");
  require(precision >= 1, ErrorKind::Structural, "residue matrix precision must be positive");
  for (int i = 0; i < precision; ++i) {
    require(mod_ <= (std::int64_t{1} << 62) / p, ErrorKind::Precision,
            std::to_string(p) + "^" + std::to_string(precision) + " exceeds the native modulus bound");
    mod_ *= p;
  }
}

void ResidueMatrix::set(std::size_t i, std::size_t j, std::int64_t v) { a_[i * cols_ + j] = mod(v, mod_); }

void ResidueMatrix::set(std::size_t i, std::size_t j, const BigInt& v) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), BigInt(mod_).get_mpz_t());
  a_[i * cols_ + j] = r.get_si();
}

std::vector<std::int64_t> ResidueMatrix::row(std::size_t i) const {
  return std::vector<std::int64_t>(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                   a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

ResidueMatrix ResidueMatrix::transpose() const {
  ResidueMatrix t(p_, n_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.a_[j * rows_ + i] = at(i, j);
  return t;
}

ResidueMatrix ResidueMatrix::operator*(const ResidueMatrix& o) const {
  require(cols_ == o.rows_ && mod_ == o.mod_, ErrorKind::Structural, "residue matrix shape mismatch");
  ResidueMatrix r(p_, n_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      std::int64_t a = at(i, k);
      if (!a) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        r.a_[i * o.cols_ + j] = addmod(r.a_[i * o.cols_ + j], mulmod(a, o.at(k, j)));
    }
  return r;
}

std::vector<std::int64_t> ResidueMatrix::apply(const std::vector<std::int64_t>& x) const {
  require(x.size() == cols_, ErrorKind::Structural, "vector length mismatch");
  std::vector<std::int64_t> y(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] = addmod(y[i], mulmod(at(i, j), mod(x[j], mod_)));
  return y;
}

std::vector<std::int64_t> ResidueMatrix::apply_left(const std::vector<std::int64_t>& y) const {
  require(y.size() == rows_, ErrorKind::Structural, "vector length mismatch");
  std::vector<std::int64_t> x(cols_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) x[j] = addmod(x[j], mulmod(mod(y[i], mod_), at(i, j)));
  return x;
}

ResidueMatrix ResidueMatrix::identity(std::int64_t p, int precision, std::size_t n) {
  ResidueMatrix r(p, precision, n, n);
  for (std::size_t i = 0; i < n; ++i) r.a_[i * n + i] = 1;
  return r;
}

std::int64_t ResidueMatrix::mulmod(std::int64_t a, std::int64_t b) const {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % mod_);
}

std::int64_t ResidueMatrix::addmod(std::int64_t a, std::int64_t b) const {
  std::int64_t s = a + b;
  return s >= mod_ ? s - mod_ : s;
}

std::int64_t ResidueMatrix::submod(std::int64_t a, std::int64_t b) const {
  std::int64_t s = a - b;
  return s < 0 ? s + mod_ : s;
}

int ResidueMatrix::valuation_of(std::int64_t v) const {
  if (v == 0) return n_;
  int k = 0;
  while (v % p_ == 0) {
    v /= p_;
    ++k;
  }
  return k;
}

std::int64_t ResidueMatrix::unit_inverse(std::int64_t u) const {
  BigInt r;
  require(mpz_invert(r.get_mpz_t(), BigInt(u).get_mpz_t(), BigInt(mod_).get_mpz_t()) != 0, ErrorKind::Internal,
          "inverting a non-unit");
  return r.get_si();
}

ResidueSNF residue_smith_form(const ResidueMatrix& A0) {
  const std::size_t m = A0.rows(), n = A0.cols();
  ResidueSNF s{ResidueMatrix::identity(A0.prime(), A0.precision(), m), A0,
               ResidueMatrix::identity(A0.prime(), A0.precision(), n), {}};
  ResidueMatrix& A = s.D;
  ResidueMatrix& L = s.L;
  ResidueMatrix& R = s.R;

  auto swap_rows = [](ResidueMatrix& M, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < M.cols(); ++j) {
      std::int64_t t = M.at(a, j);
      M.set(a, j, M.at(b, j));
      M.set(b, j, t);
    }
  };
  auto swap_cols = [](ResidueMatrix& M, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < M.rows(); ++i) {
      std::int64_t t = M.at(i, a);
      M.set(i, a, M.at(i, b));
      M.set(i, b, t);
    }
  };
  auto scale_row = [](ResidueMatrix& M, std::size_t r, std::int64_t u) {
    for (std::size_t j = 0; j < M.cols(); ++j) M.set(r, j, M.mulmod(M.at(r, j), u));
  };
  // row_dst -= f * row_src
  auto row_op = [](ResidueMatrix& M, std::size_t dst, std::size_t src, std::int64_t f) {
    for (std::size_t j = 0; j < M.cols(); ++j) M.set(dst, j, M.submod(M.at(dst, j), M.mulmod(f, M.at(src, j))));
  };
  auto col_op = [](ResidueMatrix& M, std::size_t dst, std::size_t src, std::int64_t f) {
    for (std::size_t i = 0; i < M.rows(); ++i) M.set(i, dst, M.submod(M.at(i, dst), M.mulmod(f, M.at(i, src))));
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    std::size_t pi = m, pj = n;
    int best = A.precision();
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        int v = A.valuation_of(A.at(i, j));
        if (v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi == m) break;
    swap_rows(A, t, pi);
    swap_rows(L, t, pi);
    swap_cols(A, t, pj);
    swap_cols(R, t, pj);
    std::int64_t pd = 1;
    for (int i = 0; i < best; ++i) pd *= A.prime();
    std::int64_t u = A.unit_inverse(A.at(t, t) / pd);
    scale_row(A, t, u);
    scale_row(L, t, u);
    for (std::size_t i = t + 1; i < m; ++i) {
      std::int64_t f = A.at(i, t) / pd;
      if (f) {
        row_op(A, i, t, f);
        row_op(L, i, t, f);
      }
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      std::int64_t f = A.at(t, j) / pd;
      if (f) {
        col_op(A, j, t, f);
        col_op(R, j, t, f);
      }
    }
    s.valuations.push_back(best);
  }
  return s;
}

SolveResult solve_mod(const ResidueMatrix& A, const std::vector<std::int64_t>& b) {
  require(b.size() == A.rows(), ErrorKind::Structural, "right-hand side length mismatch");
  auto snf = residue_smith_form(A);
  auto c = snf.L.apply(b);
  const std::size_t rank = snf.valuations.size();
  SolveResult out;
  std::vector<std::int64_t> y(A.cols(), 0);
  for (std::size_t t = 0; t < A.rows(); ++t) {
    int d = t < rank ? snf.valuations[t] : A.precision();
    int v = A.valuation_of(c[t]);
    if (v >= d) {
      if (t < rank) {
        std::int64_t pd = 1;
        for (int i = 0; i < d; ++i) pd *= A.prime();
        y[t] = c[t] / pd;
      }
      continue;
    }
    // row t of L, scaled to kill the diagonal entry
    auto lam = snf.L.row(t);
    std::int64_t scale = 1;
    for (int i = 0; i < A.precision() - d; ++i) scale *= A.prime();
    if (t < rank)
      for (auto& x : lam) x = A.mulmod(x, scale);
    out.feasible = false;
    out.certificate = std::move(lam);
    return out;
  }
  out.feasible = true;
  out.solution = snf.R.apply(y);
  return out;
}

bool span_contains(const ResidueMatrix& rows, const std::vector<std::int64_t>& v) {
  return solve_mod(rows.transpose(), v).feasible;
}

bool same_span(const ResidueMatrix& a, const ResidueMatrix& b) {
  require(a.cols() == b.cols() && a.modulus() == b.modulus(), ErrorKind::Structural, "span shape mismatch");
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (!span_contains(b, a.row(i))) return false;
  for (std::size_t i = 0; i < b.rows(); ++i)
    if (!span_contains(a, b.row(i))) return false;
  return true;
}

}  // namespace etnckit
