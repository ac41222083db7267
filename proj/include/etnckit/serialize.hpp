#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "etnckit/bs_matrix.hpp"
#include "etnckit/euler_family.hpp"
#include "etnckit/fitting.hpp"
#include "etnckit/galois.hpp"
#include "etnckit/group_ring.hpp"

namespace etnckit {

using Json = nlohmann::ordered_json;

// Coefficients are written as decimal strings ("3", "-1/2").
Json to_json(const GroupRingElement& x);
Json to_json(const MinusElement& x);
Json to_json(const AbelianFieldQ& K);
Json to_json(const QuadraticPresentation& p);
Json to_json(const PlaceIndexedMatrix& A);

GroupRingElement group_ring_from_json(const Json& j);
// The group and conjugation are checked against parent.
MinusElement minus_from_json(const Json& j, const MinusRingPtr& parent);
// Accepts either a bare coefficient array or an object with "coeffs".
std::vector<Rational> coeffs_from_json(const Json& j);

Json places_json(const std::vector<Place>& places);  // "inf" for the infinite place

/// Family file: either "ztilde" (coefficients over the top field, the
/// family is induced from it) or "members" [{"f", "H", "coeffs"}] giving
/// z_E for every lattice member.
struct FamilyFile {
  NormFamily family;
  std::optional<MinusElement> ztilde;
};
FamilyFile read_family(const std::string& text, const FieldLattice& lattice, std::int64_t p, int k);
Json write_family(const NormFamily& fam);

}  // namespace etnckit
