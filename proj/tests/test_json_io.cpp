// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "autopart/json_io.hpp"
#include "test_support.hpp"

using namespace autopart;
using nlohmann::json;
namespace ts = testsupport;

TEST_CASE("string capacities parse to unlimited quantities") {
  const auto hw = parse_hardware(
      R"({"ecus":[{"id":"Cloud","tier":"cloud","ram_mb":"infinity"}],"links":[]})");
  REQUIRE(hw.ecus().size() == 1);
  CHECK(hw.ecus()[0].ram_mb == Quantity::infinite());
  CHECK(hw.ecus()[0].cpu_units == Quantity::infinite());  // default
}

TEST_CASE("omitted fields take the documented defaults") {
  const auto hw = parse_hardware(
      R"({"ecus":[{"id":"a","tier":"embedded"},{"id":"b","tier":"embedded"}],
          "links":[{"from":"a","to":"b"}]})");
  CHECK(hw.ecus()[0].ram_mb == Quantity::infinite());
  CHECK(hw.ecus()[0].cpu_units == Quantity::infinite());
  CHECK(hw.ecus()[0].capabilities.empty());
  CHECK(hw.ecus()[0].integrity == Asil::QM);
  CHECK(hw.links()[0].bandwidth_kbps == Quantity::infinite());
  CHECK(hw.links()[0].latency_ms == 0.0);

  const auto sw = parse_software(
      R"({"components":[{"id":"x"},{"id":"y"}],"edges":[{"from":"x","to":"y"}]})");
  CHECK(sw.components()[0].ram_mb == 0.0);
  CHECK(sw.components()[0].cpu_units == 0.0);
  CHECK(sw.components()[0].criticality == Asil::QM);
  CHECK(sw.edges()[0].bandwidth_kbps == 0.0);
  CHECK(sw.edges()[0].max_latency_ms == Quantity::infinite());
}

TEST_CASE("negative capacity is a schema error") {
  try {
    parse_hardware(R"({"ecus":[{"id":"C1","ram_mb":-4}]})");
    FAIL("expected SchemaError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SchemaError);
    CHECK(e.subject() == "ecus[0].ram_mb");
  }
}

TEST_CASE("unknown fields are rejected, not ignored") {
  CHECK_THROWS_AS(
      parse_hardware(R"({"ecus":[{"id":"a","tier":"cloud","color":"red"}],"links":[]})"), Error);
  CHECK_THROWS_AS(parse_hardware(R"({"ecus":[],"links":[],"extra":1})"), Error);
  CHECK_THROWS_AS(parse_software(R"({"components":[],"nodes":[]})"), Error);
  CHECK_THROWS_AS(
      parse_catalog(
          R"({"templates":[{"id":"t","tier":"cloud","cost":1,"gateway_capable":true,"ports":2}]})"),
      Error);
}

TEST_CASE("malformed JSON is a syntax error") {
  for (const char* text : {"{", "", "not json", R"({"ecus":])"}) {
    try {
      parse_hardware(text);
      FAIL("expected SyntaxError");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SyntaxError);
    }
  }
  CHECK_THROWS_AS(parse_mapping("["), Error);
}

TEST_CASE("schema violations name the offending field") {
  try {
    parse_hardware(R"({"ecus":[{"id":"a","tier":"fog"}]})");
    FAIL("expected SchemaError");
  } catch (const Error& e) {
    CHECK(e.subject() == "ecus[0].tier");
  }
  try {
    parse_hardware(R"({"ecus":[{"id":"a"}]})");
    FAIL("expected SchemaError");
  } catch (const Error& e) {
    CHECK(e.subject() == "ecus[0].tier");  // tier is required
  }
  try {
    parse_software(R"({"components":[{"id":"a","criticality":"ASIL-D"}]})");
    FAIL("expected SchemaError");
  } catch (const Error& e) {
    CHECK(e.subject() == "components[0].criticality");
  }
  try {
    parse_hardware(
        R"({"ecus":[{"id":"a","tier":"cloud"},{"id":"b","tier":"cloud"}],
            "links":[{"from":"a","to":"b","bandwidth_kbps":"unbounded"}]})");
    FAIL("expected SchemaError");
  } catch (const Error& e) {
    CHECK(e.subject() == "links[0].bandwidth_kbps");  // only "infinity" is accepted here
  }
}

TEST_CASE("mapping documents parse as flat objects") {
  const auto m = parse_mapping(
      R"({"CtrlS":"C1","CtrlA":"C2","Comp1":"GW","Comp2":"GW","Comp3":"GW"})");
  CHECK(m == ts::mapping_m1());
  CHECK(parse_mapping("{}").assignment.empty());
  CHECK_THROWS_AS(parse_mapping(R"({"a":3})"), Error);
  CHECK_THROWS_AS(parse_mapping(R"({"a":""})"), Error);
}

TEST_CASE("fixture documents round-trip byte-identically") {
  for (const char* name : {"paper_hw.json"}) {
    const std::string text = ts::read_file(ts::data_file(name));
    REQUIRE(!text.empty());
    CHECK(serialize_hardware(parse_hardware(text)) == text);
  }
  const std::string sw_text = ts::read_file(ts::data_file("paper_sw.json"));
  CHECK(serialize_software(parse_software(sw_text)) == sw_text);
  const std::string m1_text = ts::read_file(ts::data_file("mapping_m1.json"));
  CHECK(serialize_mapping(parse_mapping(m1_text)) == m1_text);
  const std::string cat_text = ts::read_file(ts::data_file("catalog_mirror.json"));
  CHECK(serialize_catalog(parse_catalog(cat_text)) == cat_text);
}

TEST_CASE("parse/serialize round-trip preserves generated models structurally") {
  std::mt19937_64 rng(20240811);
  for (int i = 0; i < 100; ++i) {
    const auto hw = ts::gen_hardware(rng, 1 + static_cast<int>(rng() % 5));
    CHECK(parse_hardware(serialize_hardware(hw)) == hw);
    const auto sw = ts::gen_software(rng, static_cast<int>(rng() % 7));
    CHECK(parse_software(serialize_software(sw)) == sw);
    const auto m = ts::gen_mapping(rng, hw, sw);
    CHECK(parse_mapping(serialize_mapping(m)) == m);
  }
  for (int i = 0; i < 50; ++i) {
    const auto catalog = ts::gen_catalog(rng, 2 + static_cast<int>(rng() % 4));
    CHECK(parse_catalog(serialize_catalog(catalog)) == catalog);
  }
}

TEST_CASE("document array order does not affect validation") {
  const std::string forward = R"({"ecus":[{"id":"a","tier":"cloud"},{"id":"b","tier":"embedded"}],
    "links":[{"from":"a","to":"b"},{"from":"b","to":"a"}]})";
  const std::string reversed = R"({"links":[{"from":"b","to":"a"},{"from":"a","to":"b"}],
    "ecus":[{"id":"b","tier":"embedded"},{"id":"a","tier":"cloud"}]})";
  CHECK(parse_hardware(forward) == parse_hardware(reversed));
}

TEST_CASE("catalog parsing enforces catalog invariants") {
  CHECK_THROWS_AS(parse_catalog(R"({"templates":[]})"), Error);
  // no gateway-capable template
  CHECK_THROWS_AS(parse_catalog(R"({"templates":[{"id":"t","tier":"cloud","cost":1}]})"), Error);
  // missing cost
  CHECK_THROWS_AS(
      parse_catalog(R"({"templates":[{"id":"t","tier":"cloud","gateway_capable":true}]})"), Error);
  const auto catalog = parse_catalog(
      R"({"templates":[{"id":"t","tier":"cloud","cost":1,"gateway_capable":true}]})");
  CHECK(catalog.link_defaults.bandwidth_kbps == Quantity::infinite());
  CHECK(catalog.link_defaults.latency_ms == 0.0);
}

TEST_CASE("result documents serialize with the published keys") {
  const auto result = evaluate(ts::gateway_hw(), ts::gateway_sw(), ts::mapping_m1());
  const json doc = to_json(result);
  CHECK(doc["score"] == 1000);
  CHECK(doc["feasible"] == true);
  CHECK(doc["violations"].is_array());
  CHECK(doc["ecu_utilization"]["GW"]["ram_mb"] == 0);
  CHECK(doc["link_utilization"]["GW->C1"] == 0);
  CHECK(doc["edge_latencies"]["CtrlS->Comp1"] == 0);
}
