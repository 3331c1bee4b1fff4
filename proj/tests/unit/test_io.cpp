#include "nemcone/curves.hpp"
#include "nemcone/fixtures.hpp"
#include "nemcone/io.hpp"

#include <doctest.h>

#include <random>

using namespace nemcone;

namespace {

Cone random_cone(std::mt19937& rng, Index d) {
  std::uniform_int_distribution<int> u(-4, 4);
  std::vector<RatVector> gens;
  for (int k = 0; k < 6; ++k) {
    RatVector v(d);
    for (Index i = 0; i < d; ++i) v(i) = Rational(u(rng), 1 + (k % 3));
    v(0) = 1 + k;
    gens.push_back(v);
  }
  return canonical(Cone::from_rays(d, gens));
}

}  // namespace

TEST_CASE("PORTA text for the orthant") {
  Cone c = canonical(Cone::from_rays(2, {make_vector({1, 0}), make_vector({0, 1})}));
  const std::string ieq = porta_write(c, PortaRep::hrep);
  CHECK(ieq.rfind("DIM = 2\n\n", 0) == 0);
  CHECK(ieq.find("INEQUALITIES_SECTION\n") != std::string::npos);
  CHECK(ieq.find("(  1) +x2 >= 0\n(  2) +x1 >= 0\n") != std::string::npos);
  CHECK(ieq.substr(ieq.size() - 4) == "END\n");
  const std::string poi = porta_write(c, PortaRep::vrep);
  CHECK(poi.find("CONE_SECTION\n") != std::string::npos);
  CHECK(poi.find("(  1) 0 1\n") != std::string::npos);
  CHECK(poi.find("(  2) 1 0\n") != std::string::npos);
}

TEST_CASE("PORTA and JSON round trips are byte stable") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    Cone c = random_cone(rng, 3 + trial % 3);
    for (PortaRep rep : {PortaRep::hrep, PortaRep::vrep}) {
      const std::string text = porta_write(c, rep);
      Cone back = canonical(porta_read(text));
      CHECK(equals(back, c).equal);
      CHECK(porta_write(back, rep) == text);
    }
    const std::string json = dump(cone_to_json(c));
    Cone back = cone_from_json(Json::parse(json));
    CHECK(dump(cone_to_json(back)) == json);
  }
}

TEST_CASE("PORTA reader errors") {
  CHECK_THROWS_WITH_AS(porta_read("CONE_SECTION\n1 0\nEND\n"), doctest::Contains("missing DIM"), ParseError);
  CHECK_THROWS_WITH_AS(porta_read("DIM = 2\nCONE_SECTION\n1 0\n"), doctest::Contains("missing END"), ParseError);
  CHECK_THROWS_WITH_AS(porta_read("DIM = 2\n\nCONV_SECTION\n1 0\nEND\n"),
                       doctest::Contains("line 3: unsupported keyword"), ParseError);
  CHECK_THROWS_WITH_AS(porta_read("DIM = 2\nCONE_SECTION\n1 x\nEND\n"), doctest::Contains("line 3:"), ParseError);
  CHECK_THROWS_WITH_AS(porta_read("DIM = 2\nCONE_SECTION\n1 0 3\nEND\n"), doctest::Contains("line 3:"),
                       ParseError);
  CHECK_THROWS_AS(porta_read("DIM = 2\nINEQUALITIES_SECTION\n+x1 >= 1\nEND\n"), ParseError);
  CHECK_THROWS_AS(porta_write(hrep_to_vrep(Cone::from_hrep(2, {make_vector({1, 0})})), PortaRep::vrep),
                  std::invalid_argument);
}

TEST_CASE("class JSON") {
  const SpaceId s = make_space(7, 1);
  Json j = class_to_json(s, basis_names(s), make_vector({5, 12, 6, Rational(5, 2)}));
  CHECK(j["space"]["n"] == 7);
  CHECK(j["space"]["m"] == 1);
  CHECK(j["coords"][3] == "5/2");
  CHECK(j["basis"].size() == 4);
  CHECK(equal(class_coords_from_json(Json::parse(dump(j))), make_vector({5, 12, 6, Rational(5, 2)})));
  CHECK_THROWS(class_coords_from_json(Json::parse(R"({"coords":["1/0"]})")));
}

TEST_CASE("map JSON") {
  LinearMap q = attach_pushforward(AttachMapSpec{AttachMapSpec::Kind::q, 4, 8, 1});
  LinearMap back = map_from_json(Json::parse(dump(map_to_json(q))));
  CHECK(back.source == q.source);
  CHECK(back.target_basis == q.target_basis);
  CHECK(back.matrix == q.matrix);
}

TEST_CASE("LaTeX output") {
  CHECK(latex_symbol("b*3") == "b^{*}_{3}");
  CHECK(latex_symbol("δirr").find("irr") != std::string::npos);
  const std::string ineq = latex_inequalities({make_vector({3, -1})}, {"b2", "b3"});
  CHECK(ineq.find("\\begin{align*}") != std::string::npos);
  CHECK(ineq.find("&\\geq 0") != std::string::npos);
  const std::string rays = latex_rays({make_vector({1, 3})}, {"b2", "b3"});
  CHECK(rays.find("\\begin{tabular}") != std::string::npos);
  CHECK(rays.find("1 & $1$ & $3$") != std::string::npos);
}

TEST_CASE("fixture parsing") {
  Fixtures fx = parse_fixtures("# comment\n[nef 6 0]\n2 1\n1 3\n\n[sum S 6]\n1 : 1 2\n[distinguished S]\n3\n");
  CHECK(fx.nef_rays(6, 0).size() == 2);
  CHECK(fx.sum("S").terms.size() == 1);
  CHECK(fx.distinguished.at("S") == 3);
  CHECK_THROWS_WITH_AS(parse_fixtures("[nef 6 0]\n2 1 7\n"), doctest::Contains("line 2: expected 2 entries"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_fixtures("[sum S 6]\n1 : 1\n"), doctest::Contains("line 2:"), ParseError);
  CHECK_THROWS_WITH_AS(parse_fixtures("[bogus]\n"), doctest::Contains("line 1:"), ParseError);
  CHECK_THROWS(fx.nef_rays(7, 0));
  CHECK_THROWS(load_fixtures(std::string("/nonexistent/fixtures.txt")));
}

TEST_CASE("built-in fixtures") {
  Fixtures fx = load_fixtures();
  CHECK(fx.nef_rays(7, 1).size() == 5);
  CHECK(fx.nef_rays(8, 0).size() == 4);
  CHECK(fx.sum("F_tau").terms.size() == 12);
  CHECK(fx.sum("L_7").terms.size() == 15);
  CHECK(fx.distinguished.at("L_7") == 7);
}
