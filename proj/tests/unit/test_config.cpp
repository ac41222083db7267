#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "etnckit/config.hpp"
#include "etnckit/error.hpp"
#include "etnckit/serialize.hpp"
#include "oracles.hpp"

using namespace etnckit;

namespace {

ErrorKind kind_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("config was accepted: " << text);
  return ErrorKind::Internal;
}

std::string message_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("a full config") {
  auto cfg = parse_config(
      "# tower over Q(zeta_60)\n"
      "field f=60 H=[1]\n"
      "p=2,3,5\n"
      "T=7,11   # smoothing\n"
      "k=3\n"
      "S_extra=13\n"
      "perturb=1/3\n");
  CHECK(cfg.f == 60);
  CHECK(cfg.primes == std::vector<std::int64_t>{2, 3, 5});
  CHECK(cfg.T == std::vector<std::int64_t>{7, 11});
  CHECK(cfg.k == 3);
  CHECK(cfg.S_extra == std::vector<std::int64_t>{13});
  REQUIRE(cfg.perturb.has_value());
  CHECK(*cfg.perturb == Rational(1, 3));
  REQUIRE(cfg.top.has_value());
  CHECK(cfg.top->degree() == 16);
  CHECK(cfg.lattice.members.size() > 5);
  CHECK(cfg.sigma_order_for(3) == std::vector<Place>{kInfinity, 3});
  CHECK(cfg.echo().find("p=[2,3,5]") != std::string::npos);
}

TEST_CASE("listed lattices") {
  auto cfg = parse_config(
      "field f=60 H=[1]\n"
      "p=3\n"
      "lattice=listed\n"
      "member f=20 H=[1]\n"
      "member f=4 H=[]\n");
  CHECK(cfg.lattice.members.size() == 3);
  CHECK(kind_of("field f=60 H=[1]\np=3\nmember f=20 H=[1]\n") == ErrorKind::Input);
  CHECK(kind_of("field f=60 H=[1]\np=3\nlattice=listed\nmember f=7 H=[1]\n") == ErrorKind::Input);
}

TEST_CASE("parse errors name the line and token") {
  auto msg = message_of("field f=15 H=[1,x]\np=3\n");
  CHECK(msg.find("line 1") != std::string::npos);
  CHECK(msg.find("H=[1,x]") != std::string::npos);
  CHECK(kind_of("field f=15 H=[1,x]\np=3\n") == ErrorKind::Parse);
  CHECK(kind_of("field f=15\np=3\ncolour=red\n") == ErrorKind::Parse);
  CHECK(kind_of("field f=15\np=3\np=5\n") == ErrorKind::Parse);
  CHECK(kind_of("p=3\n") == ErrorKind::Parse);
  CHECK(kind_of("field f=15\np=3\nlattice=some\n") == ErrorKind::Parse);
  CHECK(kind_of("field f=15\np=3\nstage=-1\n") == ErrorKind::Parse);
  CHECK(kind_of("field f=15\np=3\nperturb=1/0\n") == ErrorKind::Parse);
  CHECK(message_of("field f=15\n\np=3 k\n").find("line 3") != std::string::npos);
}

TEST_CASE("validation errors") {
  CHECK(kind_of("field f=15\np=3\nk=0\n") == ErrorKind::Input);
  CHECK(message_of("field f=15\np=3\nk=0\n").find("line 3") != std::string::npos);
  CHECK(kind_of("field f=15\np=4\n") == ErrorKind::Input);
  CHECK(kind_of("field f=15\n") == ErrorKind::Input);
  CHECK(kind_of("field f=15\np=2\nT=5\n") == ErrorKind::Input);
  CHECK(kind_of("field f=15\np=2\nT=7\nS_extra=7\n") == ErrorKind::Input);
  CHECK(kind_of("field f=15 H=[3]\np=2\n") == ErrorKind::Input);
  CHECK(kind_of("field f=121\np=2\n") == ErrorKind::Input);
  CHECK_NOTHROW(parse_config("field f=121\np=2\n", 200));
  CHECK(kind_of("field f=15\np=2\nsigma_order=inf,3\n") == ErrorKind::Input);
}

TEST_CASE("a real top field gives an empty lattice") {
  auto cfg = parse_config("field f=5 H=[4]\np=2\n");
  CHECK(cfg.lattice.empty());
}

TEST_CASE("precision overrides revalidate") {
  auto cfg = parse_config("field f=15\np=3\n");
  cfg.k = 0;
  CHECK_THROWS_AS(validate_config(cfg), Error);
  cfg.k = 4;
  CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("json round trips") {
  std::mt19937_64 rng(51);
  auto K = AbelianFieldQ::build(15, {});
  auto mrQ = K.minus_ring(CoefficientRing::rationals());
  for (int trial = 0; trial < 20; ++trial) {
    auto x = oracle::random_element(K.group(), CoefficientRing::rationals(), rng, 9) * Rational(1, 1 + trial % 4);
    CHECK(group_ring_from_json(Json::parse(to_json(x).dump())) == x);
    auto m = minus_project(x, mrQ);
    CHECK(minus_from_json(Json::parse(to_json(m).dump()), mrQ) == m);
  }
  CHECK(coeffs_from_json(Json::parse(R"(["1", 2, "-3/4"])")) == std::vector<Rational>{1, 2, Rational(-3, 4)});
  CHECK_THROWS_AS(coeffs_from_json(Json::parse(R"([true])")), Error);
  auto Q5 = AbelianFieldQ::build(5, {});
  auto other = minus_project(GroupRingElement::one(Q5.group(), CoefficientRing::rationals()), Q5.minus_ring(CoefficientRing::rationals()));
  CHECK_THROWS_AS(minus_from_json(to_json(other), mrQ), Error);
  CHECK(places_json({kInfinity, 3}).dump() == R"(["inf","3"])");
}

TEST_CASE("family files") {
  auto cfg = parse_config("field f=15\np=3\nk=2\n");
  auto ff = read_family(R"({"ztilde": ["1", "2", "3", "4"]})", cfg.lattice, 3, 2);
  REQUIRE(ff.ztilde.has_value());
  CHECK(ff.family.entries.size() == cfg.lattice.members.size());
  auto written = write_family(ff.family).dump();
  auto back = read_family(written, cfg.lattice, 3, 2);
  for (std::size_t i = 0; i < back.family.entries.size(); ++i)
    CHECK(back.family.entries[i].x == ff.family.entries[i].x);
  CHECK_THROWS_AS(read_family(R"({"ztilde": ["1"]})", cfg.lattice, 3, 2), Error);
  CHECK_THROWS_AS(read_family(R"({"members": []})", cfg.lattice, 3, 2), Error);
  CHECK_THROWS_AS(read_family("not json", cfg.lattice, 3, 2), Error);
}
