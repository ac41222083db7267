#include "etnckit/serialize.hpp"

#include "etnckit/error.hpp"

namespace etnckit {

namespace {

Json coeff_array(const std::vector<Rational>& c) {
  Json a = Json::array();
  for (const auto& x : c) a.push_back(to_string(x));
  return a;
}

Rational coeff_value(const Json& v) {
  if (v.is_number_integer()) return Rational(BigInt(std::to_string(v.get<std::int64_t>())));
  if (v.is_string()) return parse_rational(v.get<std::string>());
  fail(ErrorKind::Parse, "coefficient must be an integer or a string, got " + v.dump());
}

template <class T>
T get_field(const Json& j, const char* key) {
  require(j.is_object() && j.contains(key), ErrorKind::Parse, std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorKind::Parse, std::string("key '") + key + "' has the wrong type");
  }
}

}  // namespace

std::vector<Rational> coeffs_from_json(const Json& j) {
  const Json& arr = j.is_object() ? j.at("coeffs") : j;
  require(arr.is_array(), ErrorKind::Parse, "coefficients must be an array");
  std::vector<Rational> out;
  for (const auto& v : arr) out.push_back(coeff_value(v));
  return out;
}

Json to_json(const GroupRingElement& x) {
  Json j;
  j["orders"] = x.group()->cyclic_orders();
  j["ring"] = x.ring().name();
  j["coeffs"] = coeff_array(x.coeffs());
  return j;
}

Json to_json(const MinusElement& x) {
  Json j;
  j["orders"] = x.parent()->group()->cyclic_orders();
  j["conjugation"] = x.parent()->conjugation();
  j["ring"] = x.ring().name();
  j["transversal"] = x.parent()->transversal();
  j["coeffs"] = coeff_array(x.coeffs());
  return j;
}

GroupRingElement group_ring_from_json(const Json& j) {
  auto orders = get_field<std::vector<std::int64_t>>(j, "orders");
  auto ring = CoefficientRing::parse(get_field<std::string>(j, "ring"));
  auto G = make_group(orders);
  auto c = coeffs_from_json(j);
  require(c.size() == G->order(), ErrorKind::Parse,
          "expected " + std::to_string(G->order()) + " coefficients, got " + std::to_string(c.size()));
  return GroupRingElement(G, ring, std::move(c));
}

MinusElement minus_from_json(const Json& j, const MinusRingPtr& parent) {
  if (j.is_object() && j.contains("orders")) {
    auto orders = get_field<std::vector<std::int64_t>>(j, "orders");
    require(orders == parent->group()->cyclic_orders(), ErrorKind::Structural, "element over a different group");
  }
  if (j.is_object() && j.contains("conjugation"))
    require(get_field<std::size_t>(j, "conjugation") == parent->conjugation(), ErrorKind::Structural,
            "element for a different conjugation");
  auto c = coeffs_from_json(j);
  require(c.size() == parent->dimension(), ErrorKind::Parse,
          "expected " + std::to_string(parent->dimension()) + " minus coefficients, got " + std::to_string(c.size()));
  return MinusElement(parent, std::move(c));
}

Json places_json(const std::vector<Place>& places) {
  Json a = Json::array();
  for (Place v : places) a.push_back(place_name(v));
  return a;
}

Json to_json(const AbelianFieldQ& K) {
  Json j;
  j["descriptor"] = K.descriptor();
  j["conductor"] = K.conductor();
  j["H"] = K.H();
  j["group"] = K.group()->cyclic_orders();
  j["degree"] = K.degree();
  j["cm"] = K.is_cm();
  j["conjugation"] = K.conjugation();
  j["ramified"] = K.ramified_primes();
  return j;
}

Json to_json(const QuadraticPresentation& p) {
  Json j;
  j["rows"] = p.row_labels;
  j["cols"] = p.col_labels;
  Json m = Json::array();
  for (std::size_t r = 0; r < p.matrix.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < p.matrix.cols(); ++c) row.push_back(to_json(p.matrix(r, c)));
    m.push_back(row);
  }
  j["matrix"] = m;
  return j;
}

Json to_json(const PlaceIndexedMatrix& A) {
  Json j;
  Json cols = Json::array();
  for (const auto& c : A.columns) cols.push_back({{"place", place_name(c.place)}, {"kind", to_string(c.kind)}});
  j["columns"] = cols;
  j["t"] = A.t;
  Json m = Json::array();
  for (std::size_t r = 0; r < A.A.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < A.A.cols(); ++c) row.push_back(coeff_array(A.A(r, c).coeffs()));
    m.push_back(row);
  }
  j["matrix"] = m;
  return j;
}

FamilyFile read_family(const std::string& text, const FieldLattice& lattice, std::int64_t p, int k) {
  require(!lattice.empty(), ErrorKind::Input, "lift needs a non-empty lattice");
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Parse, std::string("family file: ") + e.what());
  }
  require(j.is_object(), ErrorKind::Parse, "family file must be a JSON object");
  const auto& K = lattice.members[0];
  FamilyFile out;
  if (j.contains("ztilde")) {
    int R = 0;
    for (const auto& E : lattice.members) R = std::max(R, denominator_exponent(E, p));
    auto z = minus_from_json(j.at("ztilde"), K.minus_ring(CoefficientRing::residues(p, k + R)));
    out.family = induce_family(lattice, p, k, z);
    out.ztilde = std::move(z);
    return out;
  }
  require(j.contains("members") && j.at("members").is_array(), ErrorKind::Parse,
          "family file needs 'ztilde' or a 'members' array");
  out.family = NormFamily{lattice, p, k, {}};
  std::vector<std::optional<REElement>> slots(lattice.members.size());
  for (const auto& m : j.at("members")) {
    auto E = AbelianFieldQ::build(get_field<std::int64_t>(m, "f"), m.contains("H") ? get_field<std::vector<std::int64_t>>(m, "H")
                                                                                  : std::vector<std::int64_t>{});
    std::size_t idx = lattice.index_of(E);
    require(idx < lattice.members.size(), ErrorKind::Input, "family member " + E.descriptor() + " is not in the lattice");
    require(!slots[idx], ErrorKind::Input, "family member " + E.descriptor() + " listed twice");
    int r = denominator_exponent(E, p);
    try {
      slots[idx] = REElement::make(E, p, k, minus_from_json(m, E.minus_ring(CoefficientRing::residues(p, k + r))));
    } catch (const Error& e) {
      fail(e.kind(), "family member " + E.descriptor() + ": " + e.what());
    }
  }
  for (std::size_t i = 0; i < slots.size(); ++i) {
    require(slots[i].has_value(), ErrorKind::Input, "family file has no entry for " + lattice.members[i].descriptor());
    out.family.entries.push_back(*slots[i]);
  }
  return out;
}

Json write_family(const NormFamily& fam) {
  Json j;
  j["p"] = fam.p;
  j["k"] = fam.k;
  Json members = Json::array();
  for (const auto& e : fam.entries) {
    Json m;
    m["f"] = e.field.conductor();
    m["H"] = e.field.H();
    m["r"] = e.r;
    m["coeffs"] = coeff_array(e.x.coeffs());
    members.push_back(m);
  }
  j["members"] = members;
  return j;
}

}  // namespace etnckit
