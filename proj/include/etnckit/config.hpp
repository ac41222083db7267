#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "etnckit/galois.hpp"

namespace etnckit {

inline constexpr std::int64_t kDefaultMaxConductor = 120;

/// Tower configuration. Line-oriented, '#' starts a comment:
///
///   field f=60 H=[1,11]     top field: fixed field of H in Q(zeta_f)
///   p=2,3,5                 primes (verify runs each; lift uses the first)
///   T=7,11                  smoothing primes, unramified in the top field
///   lattice=all-CM          or "listed" with one "member f=.. H=[..]" per line
///   k=2                     precision
///   sigma_order=inf,2       ordering of Sigma(K) for the lift stages
///   stage=0                 lift stage
///   S_extra=13              extra depletion primes for theta
///   perturb=1/3             negative control: added to every tnorm lhs
struct TowerConfig {
  std::int64_t f = 0;
  std::vector<std::int64_t> H;
  std::vector<std::int64_t> primes;
  std::vector<std::int64_t> T;
  bool listed = false;
  std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>> members;
  int k = 1;
  std::optional<std::vector<Place>> sigma_order;
  std::size_t stage = 0;
  std::vector<std::int64_t> S_extra;
  std::optional<Rational> perturb;

  std::map<std::string, int> key_line;  // where each key was set, for messages

  // Filled by validation.
  std::optional<AbelianFieldQ> top;
  FieldLattice lattice;

  std::vector<Place> sigma_order_for(std::int64_t p) const;  // default Sigma(K)
  std::string echo() const;  // canonical one-line summary of the inputs
};

// Parse error (with line number and token) or Input error on validation.
TowerConfig parse_config(const std::string& text, std::int64_t max_conductor = kDefaultMaxConductor);
// Re-run validation after a programmatic change (e.g. a precision override).
void validate_config(TowerConfig& cfg, std::int64_t max_conductor = kDefaultMaxConductor);

}  // namespace etnckit
