#include "doctest.h"

#include "latcert/json_io.hpp"

using namespace latcert;
using nlohmann::json;

namespace {

ProblemInstance sample_instance() {
  ProblemInstance inst;
  inst.g = 1;
  inst.p = 0;
  inst.blocks.push_back({1, IntPoly({Int(5), Int(0), Int(1)}), 1});
  inst.S = {Int(3)};
  inst.precision = 24;
  PadicContext ctx(Int(3), 24);
  IntMatrix u(2, 2);
  u(0, 0) = ctx.reduce(Int(-1));
  u(0, 1) = ctx.reduce(Int(-2));
  u(1, 0) = 3;
  u(1, 1) = 1;
  inst.locals.emplace(Int(3), make_local_module(ctx, u, inst.blocks[0].f));
  return inst;
}

}  // namespace

TEST_CASE("instance JSON round-trips losslessly") {
  ProblemInstance inst = sample_instance();
  json j = instance_to_json(inst);
  ProblemInstance back = instance_from_json(j);
  CHECK(back.g == inst.g);
  CHECK(back.p == inst.p);
  CHECK(back.precision == inst.precision);
  CHECK(back.blocks.size() == 1);
  CHECK(back.blocks[0].f.coeffs() == inst.blocks[0].f.coeffs());
  CHECK(back.S == inst.S);
  CHECK(back.locals.at(Int(3)).U.lift() == inst.locals.at(Int(3)).U.lift());
  // parse(serialize(x)) = x at the byte level too
  CHECK(instance_to_json(back).dump(2) == j.dump(2));
}

TEST_CASE("certificate JSON round-trips and still verifies") {
  ProblemInstance inst = sample_instance();
  Certificate cert = solve(inst);
  json j = certificate_to_json(cert, "verified");
  std::string status;
  Certificate back = certificate_from_json(j, &status);
  CHECK(status == "verified");
  CHECK(back.A == cert.A);
  CHECK(back.basis == cert.basis);
  CHECK(back.precision == cert.precision);
  REQUIRE(back.conjugators.count(Int(3)) == 1);
  CHECK(back.conjugators.at(Int(3)).lift() == cert.conjugators.at(Int(3)).lift());
  CHECK(verify_certificate(inst, back).ok);
  CHECK(certificate_to_json(back, status).dump(2) == j.dump(2));
  // serialization is deterministic
  CHECK(certificate_to_json(cert, "verified").dump(2) == j.dump(2));
}

TEST_CASE("instance schema violations are rejected") {
  json good = instance_to_json(sample_instance());

  json j = good;
  j.erase("blocks");
  CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);

  j = good;
  j["n"] = 3;  // n must equal 2g
  CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);

  j = good;
  j["p"] = "4";  // not prime
  CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);

  j = good;
  j["S"].push_back("9");
  CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);

  j = good;
  j["locals"]["3"][0][0] = "-1";  // residues must be reduced into [0, 3^24)
  CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);

  j = good;
  j["locals"].erase("3");
  CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);

  j = good;
  j["locals"]["3"][0][0] = "12abc";
  CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);

  j = good;
  j["schema_version"] = 99;
  CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);

  // the operator must satisfy the declared minimal polynomial
  j = good;
  j["locals"]["3"][1][0] = "7";
  CHECK_THROWS(instance_from_json(j));
}

TEST_CASE("certificate schema violations are rejected") {
  ProblemInstance inst = sample_instance();
  json good = certificate_to_json(solve(inst), "verified");

  json j = good;
  j["basis"][0][0] = json::array({"1", "0"});  // zero denominator
  CHECK_THROWS_AS(certificate_from_json(j), std::invalid_argument);

  j = good;
  j["conjugators"]["6"] = j["conjugators"]["3"];
  CHECK_THROWS_AS(certificate_from_json(j), std::invalid_argument);

  j = good;
  j.erase("A");
  CHECK_THROWS_AS(certificate_from_json(j), std::invalid_argument);

  // tampering survives parsing but fails re-verification
  j = good;
  j["A"][0][0] = "1";
  Certificate tampered = certificate_from_json(j);
  CHECK(!verify_certificate(inst, tampered).ok);
}

TEST_CASE("shipped sample instance parses, solves, and verifies") {
  json j = read_json_file(std::string(LATCERT_SOURCE_DIR) + "/data/disc20_instance.json");
  ProblemInstance inst = instance_from_json(j);
  CHECK(inst.n() == 2);
  CHECK(make_order(inst.min_poly()).disc == -20);
  Certificate cert = solve(inst);
  CHECK(verify_certificate(inst, cert).ok);
  // the prescribed local operator is not the companion matrix, so the glued
  // lattice is a genuinely different Z-lattice with integral operator A
  CHECK(charpoly(cert.A).coeffs() == inst.char_poly().coeffs());
}

TEST_CASE("file plumbing errors") {
  CHECK_THROWS_AS(read_json_file("/nonexistent/path.json"), std::invalid_argument);
  CHECK_THROWS_AS(read_json_file(std::string(LATCERT_SOURCE_DIR) + "/README.md"),
                  std::invalid_argument);
}
