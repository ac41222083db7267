#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "etnckit/group_ring.hpp"
#include "etnckit/matrix.hpp"

namespace etnckit {

using GRMatrix = Matrix<GroupRingElement>;
using MinusMatrix = Matrix<MinusElement>;

GRMatrix gr_zero_matrix(std::size_t rows, std::size_t cols, const GroupPtr& G, const CoefficientRing& R);
GRMatrix gr_identity_matrix(std::size_t n, const GroupPtr& G, const CoefficientRing& R);

enum class DetMethod { Bareiss, Leibniz, Laplace };

// Exact determinant over R[G]. Bareiss elimination divides only by pivots
// that are units of Q[G]; otherwise the division-free expansions are used.
GroupRingElement det_group_ring(const GRMatrix& m, DetMethod* used = nullptr);
// Over R[G]_-: determinant of lifted entries, projected back.
MinusElement det_minus(const MinusMatrix& m);

GroupRingElement det_leibniz(const GRMatrix& m);
GroupRingElement det_laplace(const GRMatrix& m);

/// n x n presentation matrix with labelled rows (relations) and columns (generators).
struct QuadraticPresentation {
  GRMatrix matrix;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
};

// r x s matrix, rows are relations, columns generators.
using GeneralPresentation = GRMatrix;

// Generators of Fitt_0: all s x s minors (empty = zero ideal when r < s).
std::vector<GroupRingElement> fitting_ideal(const GeneralPresentation& p);

/// Z/p^k[<sigma>] / (1 - sigma^{-1} l), sigma of order f.
struct ResidueModuleReport {
  std::int64_t ell, f, p;
  int k;
  std::vector<int> valuations;  // elementary divisors p^{v}, v > 0
  int expected;                 // min(k, v_p(l^f - 1))
  bool ok;
};
ResidueModuleReport residue_module_check(std::int64_t ell, std::int64_t f, std::int64_t p, int k);

/// Tame local data: I = <tau> of order e inside G = <tau, sigma>, residue size q.
struct LocalRWParams {
  GroupPtr group;
  ElementIndex tau;
  ElementIndex sigma;
  int e;
  std::int64_t q;

  // Precondition error unless e | q - 1, ord(tau) = e, <tau, sigma> = G.
  void validate() const;
  // G = Z^2 / <(e, 0), (-j, f)>, tau and sigma the images of the basis vectors.
  static LocalRWParams from_relations(int e, std::int64_t f, std::int64_t j, std::int64_t q);
  std::string describe() const;
};

// Rows: the local relation and the row of xtilde = e g_sigma - z g_tau, in
// generators (g_sigma, g_tau).
QuadraticPresentation local_rw_presentation(const LocalRWParams& params);
// z = sigma^{-1} ((e-1) + (e-2) tau + ... + tau^{e-2})
GroupRingElement local_rw_z(const LocalRWParams& params);

struct LemmaTXReport {
  std::string params;
  GroupRingElement det;
  GroupRingElement expected;  // e - sigma^{-1} q N_I
  bool det_ok;
  bool image_ok;  // e (1 - sigma^{-1}) - z (tau - 1) = e - sigma^{-1} N_I
};
LemmaTXReport verify_lemma_tx(const LocalRWParams& params);

// Every (e, q, f, j) with e <= max_e, prime q <= max_q, e | q - 1, e f <= max_order.
std::vector<LocalRWParams> lemma_tx_sweep(int max_e, std::int64_t max_q, std::int64_t max_order);

struct FunctorialityReport {
  bool coinvariance;     // red(det m) = det(red m)
  bool block_extension;  // det(m (+) u) = det(m) u
};
FunctorialityReport det_functoriality_check(const GRMatrix& m, const GroupSurjection& q, const GroupRingElement& u);

}  // namespace etnckit
