#include "etnckit/bs_matrix.hpp"

#include <algorithm>

#include "etnckit/error.hpp"
#include "etnckit/lvalues.hpp"

namespace etnckit {

namespace {

MinusElement halve(const MinusElement& x, const BigInt& d) {
  auto q = x.change_ring(CoefficientRing::rationals()) * Rational(1, d);
  require(q.is_integral(), ErrorKind::Input, "entry " + x.to_string() + " not divisible by " + d.get_str());
  return q.change_ring(x.ring());
}

}  // namespace

const char* to_string(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::Real: return "real";
    case ColumnKind::Finite: return "finite";
    case ColumnKind::SplitPrime: return "split-prime";
  }
  return "?";
}

ColumnKind parse_column_kind(const std::string& s) {
  if (s == "real") return ColumnKind::Real;
  if (s == "finite") return ColumnKind::Finite;
  if (s == "split-prime") return ColumnKind::SplitPrime;
  fail(ErrorKind::Parse, "unknown column kind '" + s + "'");
}

std::size_t PlaceIndexedMatrix::split_column() const {
  std::size_t found = columns.size();
  for (std::size_t j = 0; j < columns.size(); ++j)
    if (columns[j].kind == ColumnKind::SplitPrime) {
      require(found == columns.size(), ErrorKind::Input, "more than one split-prime column");
      found = j;
    }
  require(found < columns.size(), ErrorKind::Input, "no split-prime column");
  return found;
}

std::vector<std::size_t> PlaceIndexedMatrix::divided_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < columns.size() && out.size() < static_cast<std::size_t>(t); ++j)
    if (columns[j].kind == ColumnKind::Real) out.push_back(j);
  return out;
}

void PlaceIndexedMatrix::validate() const {
  require(A.square() && A.rows() >= 1, ErrorKind::Input, "place matrix must be square and non-empty");
  require(columns.size() == A.cols(), ErrorKind::Input, "one label per column required");
  split_column();
  auto real = std::count_if(columns.begin(), columns.end(), [](const ColumnLabel& c) { return c.kind == ColumnKind::Real; });
  require(t >= 0 && t <= real, ErrorKind::Input,
          "t = " + std::to_string(t) + " exceeds the " + std::to_string(real) + " real columns");
  for (std::size_t j : divided_columns())
    for (std::size_t i = 0; i < A.rows(); ++i)
      require((A(i, j).change_ring(CoefficientRing::rationals()) * Rational(1, 2)).is_integral(), ErrorKind::Input,
              "real column " + std::to_string(j) + " has an entry not divisible by 2 at row " + std::to_string(i));
}

CofactorVector build_u(const PlaceIndexedMatrix& P) {
  P.validate();
  const std::size_t n = P.A.rows();
  const std::size_t sp = P.split_column();
  auto half = P.A;
  for (std::size_t j : P.divided_columns())
    for (std::size_t i = 0; i < n; ++i) half(i, j) = halve(P.A(i, j), 2);

  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < n; ++j)
    if (j != sp) cols.push_back(j);
  CofactorVector out;
  out.t = P.t;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < n; ++r)
      if (r != i) rows.push_back(r);
    auto minor = det_minus(half.submatrix(rows, cols));
    if ((i + sp) % 2) minor = -minor;
    out.u.push_back(minor * Rational(2));
  }
  return out;
}

MinusElement pair(const CofactorVector& u, const MinusMatrix& A, std::size_t column) {
  require(u.u.size() == A.rows(), ErrorKind::Structural, "cofactor vector length mismatch");
  auto s = A.zero();
  for (std::size_t i = 0; i < A.rows(); ++i) s += u.u[i] * A(i, column);
  return s;
}

KernelReport kernel_check(const PlaceIndexedMatrix& P, const CofactorVector& u) {
  KernelReport rep;
  const std::size_t sp = P.split_column();
  rep.ok = true;
  for (std::size_t j = 0; j < P.A.cols(); ++j) {
    if (j == sp) continue;
    rep.pairings.push_back(pair(u, P.A, j));
    rep.ok = rep.ok && rep.pairings.back().is_zero();
  }
  auto z = P.A.zero();
  for (const auto& x : u.u) z += x * P.A.zero();
  rep.zero_column_ok = z.is_zero();
  rep.ok = rep.ok && rep.zero_column_ok;
  return rep;
}

OrdReport ord_identity_check(const PlaceIndexedMatrix& P, const CofactorVector& u, const MinusElement* theta) {
  auto det = det_minus(P.A);
  auto expected = u.t == 0 ? det * Rational(2) : halve(det, BigInt(1) << (u.t - 1));
  OrdReport rep{pair(u, P.A, P.split_column()), expected, std::nullopt, false};
  rep.ok = rep.pairing == rep.expected;
  if (theta) {
    rep.theta_matches = (det == *theta);
    rep.ok = rep.ok && *rep.theta_matches;
  }
  return rep;
}

PlaceIndexedMatrix random_place_matrix(const MinusRingPtr& ring, std::size_t n, int real, int t, int bound,
                                       std::mt19937_64& rng) {
  require(n >= 1 && real >= 0 && static_cast<std::size_t>(real) < n && t <= real,
          ErrorKind::Input, "random place matrix: need real < n and t <= real");
  std::uniform_int_distribution<int> dist(-bound, bound);
  PlaceIndexedMatrix P{MinusMatrix(n, n, MinusElement(ring)), {}, t};
  for (std::size_t j = 0; j < n; ++j) {
    ColumnKind kind = j + 1 == n ? ColumnKind::SplitPrime
                                 : (static_cast<int>(j) < real ? ColumnKind::Real : ColumnKind::Finite);
    P.columns.push_back({kind == ColumnKind::Real ? kInfinity : static_cast<Place>(j + 1), kind});
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Rational> c(ring->dimension());
      for (auto& x : c) x = dist(rng) * (kind == ColumnKind::Real ? 2 : 1);
      P.A(i, j) = MinusElement(ring, std::move(c));
    }
  }
  return P;
}

GaussianFixture gaussian_fixture() {
  auto K = AbelianFieldQ::build(4, {});
  auto th = theta(K, {kInfinity, 2}, {3});
  auto ring = K.minus_ring(CoefficientRing::integers());
  auto theta_z = th.minus.change_ring(CoefficientRing::integers());
  auto half = halve(theta_z, 2);
  PlaceIndexedMatrix P{MinusMatrix(2, 2, MinusElement(ring)),
                       {{kInfinity, ColumnKind::Real}, {5, ColumnKind::SplitPrime}}, 1};
  P.A(0, 0) = MinusElement::scalar(ring, 2);
  P.A(1, 0) = MinusElement::scalar(ring, 2);
  P.A(1, 1) = half;
  return GaussianFixture{K, theta_z, P};
}

}  // namespace etnckit
