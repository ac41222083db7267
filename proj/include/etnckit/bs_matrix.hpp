#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "etnckit/fitting.hpp"
#include "etnckit/galois.hpp"

namespace etnckit {

enum class ColumnKind { Real, Finite, SplitPrime };
const char* to_string(ColumnKind kind);
ColumnKind parse_column_kind(const std::string& s);

struct ColumnLabel {
  Place place;
  ColumnKind kind;
};

/// Square matrix over Z[G]_- with columns indexed by places. The first t
/// real columns are divided by 2 when building u, so their entries must be
/// even.
struct PlaceIndexedMatrix {
  MinusMatrix A;
  std::vector<ColumnLabel> columns;
  int t = 0;

  std::size_t split_column() const;  // Input error unless exactly one
  std::vector<std::size_t> divided_columns() const;
  void validate() const;
};

struct CofactorVector {
  std::vector<MinusElement> u;  // u_j = (1-c) * cofactor_{j, split} of A with real columns halved
  bool lifted = true;           // (1-c) was taken as the scalar 2 of the minus ring
  int t = 0;
};

CofactorVector build_u(const PlaceIndexedMatrix& A);

// sum_j u_j A_{j,v}
MinusElement pair(const CofactorVector& u, const MinusMatrix& A, std::size_t column);

struct KernelReport {
  std::vector<MinusElement> pairings;  // one per column other than the split one
  bool zero_column_ok = false;
  bool ok = false;
};
KernelReport kernel_check(const PlaceIndexedMatrix& A, const CofactorVector& u);

struct OrdReport {
  MinusElement pairing;
  MinusElement expected;  // 2^{1-t} det(A)
  std::optional<bool> theta_matches;  // det(A) equals the supplied theta
  bool ok = false;
};
OrdReport ord_identity_check(const PlaceIndexedMatrix& A, const CofactorVector& u,
                             const MinusElement* theta = nullptr);

// Random matrix over Z[G]_- (transversal coefficients in [-bound, bound]):
// columns 0..real-1 real with even entries, column n-1 the split prime.
PlaceIndexedMatrix random_place_matrix(const MinusRingPtr& ring, std::size_t n, int real, int t, int bound,
                                       std::mt19937_64& rng);

// Q(i), S = {inf, 2}, T = {3}: A = [[2, 0], [2, theta/2]] with t = 1.
struct GaussianFixture {
  AbelianFieldQ field;
  MinusElement theta;
  PlaceIndexedMatrix A;
};
GaussianFixture gaussian_fixture();

}  // namespace etnckit
