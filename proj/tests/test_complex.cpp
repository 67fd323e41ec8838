#include <catch2/catch_amalgamated.hpp>

#include "amalgam/complex.hpp"
#include "amalgam/scheme_data.hpp"
#include "amalgam/topology.hpp"

using namespace amalgam;

namespace {
BlockComplex load_bundled(const std::string& name) {
  return load_complex_doc(scheme::bundled_doc(name));
}
}  // namespace

TEST_CASE("closed surfaces validate with 32 paired sides") {
  for (const char* name : {"s1", "s2"}) {
    BlockComplex bc = load_bundled(name);
    CHECK(bc.cells.size() == 8);
    CHECK(bc.pairings.size() == 32);
    CHECK(bc.classes.empty());
  }
}

TEST_CASE("euler characteristic of the closed surfaces is -8") {
  BlockComplex s1 = load_bundled("s1");
  CHECK(euler_characteristic(s1) == -8);
  // Gauss-Bonnet oracle: 8 octagons of area 2 pi
  CHECK(s1.volume() == Catch::Approx(16 * M_PI));
  CHECK(euler_characteristic(s1) ==
        Catch::Approx(-s1.volume() / (2 * M_PI)).margin(1e-9));
}

TEST_CASE("systoles sit at the published positions") {
  BlockComplex s1 = load_bundled("s1");
  auto sys1 = combinatorial_systoles(s1);
  REQUIRE(sys1.size() == 4);
  std::multiset<std::pair<int, int>> pos1;
  for (auto& s : sys1)
    pos1.insert({std::min(s.blocks[0], s.blocks[1]),
                 std::max(s.blocks[0], s.blocks[1])});
  CHECK(pos1 == std::multiset<std::pair<int, int>>{
                    {1, 2}, {3, 4}, {5, 6}, {7, 8}});

  BlockComplex s2 = load_bundled("s2");
  auto sys2 = combinatorial_systoles(s2);
  REQUIRE(sys2.size() == 4);
  std::multiset<std::pair<int, int>> pos2;
  for (auto& s : sys2)
    pos2.insert({std::min(s.blocks[0], s.blocks[1]),
                 std::max(s.blocks[0], s.blocks[1])});
  CHECK(pos2 == std::multiset<std::pair<int, int>>{
                    {1, 8}, {2, 3}, {4, 5}, {6, 7}});
}

TEST_CASE("cutting s1 along its systoles leaves one torus with 8 holes") {
  BlockComplex s1 = load_bundled("s1");
  CutSet cut;
  for (auto& s : combinatorial_systoles(s1)) cut.pairings.insert(s.pairing);
  auto comps = cut_complex(s1, cut);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].genus == 1);
  CHECK(comps[0].boundary == 8);
  CHECK(comps[0].chi == -8);
}

TEST_CASE("cutting s2 along its systoles leaves two tori with 4 holes") {
  BlockComplex s2 = load_bundled("s2");
  CutSet cut;
  for (auto& s : combinatorial_systoles(s2)) cut.pairings.insert(s.pairing);
  auto comps = cut_complex(s2, cut);
  REQUIRE(comps.size() == 2);
  for (auto& c : comps) {
    CHECK(c.genus == 1);
    CHECK(c.boundary == 4);
    CHECK(c.chi == -4);
  }
}

TEST_CASE("cutting along nothing returns the whole complex") {
  BlockComplex s1 = load_bundled("s1");
  auto comps = cut_complex(s1, CutSet{});
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].chi == -8);
  CHECK(comps[0].boundary == 0);
  CHECK(comps[0].genus == 5);
}

TEST_CASE("cutting preserves total euler characteristic") {
  for (const char* name : {"s1", "s2"}) {
    BlockComplex bc = load_bundled(name);
    CutSet cut;
    for (auto& s : combinatorial_systoles(bc)) cut.pairings.insert(s.pairing);
    int total = 0;
    for (auto& c : cut_complex(bc, cut)) total += c.chi;
    CHECK(total == euler_characteristic(bc));
  }
}

TEST_CASE("homeo amalgams validate and share one chamber type") {
  for (const char* name : {"x1_homeo", "x2_homeo"}) {
    BlockComplex bc = load_bundled(name);
    CHECK(euler_characteristic(bc) == -8);
    auto types = chamber_types(bc);
    INFO(name);
    REQUIRE(types.size() == 1);
    CHECK(*types.begin() == std::pair<int, int>{3, 4});
  }
}

TEST_CASE("systole amalgams have two vs one chambers") {
  BlockComplex x1 = load_bundled("x1_nonhomeo");
  BlockComplex x2 = load_bundled("x2_nonhomeo");
  CHECK(chambers(x1).size() == 2);
  CHECK(chambers(x2).size() == 1);
  auto t1 = chamber_types(x1);
  CHECK(t1 == std::multiset<std::pair<int, int>>{{1, 4}, {1, 4}});
  auto t2 = chamber_types(x2);
  CHECK(t2 == std::multiset<std::pair<int, int>>{{1, 8}});
}

TEST_CASE("three-copy amalgams have the published chamber vectors") {
  BlockComplex x1 = load_bundled("x1_sec4");
  auto t1 = chamber_types(x1);
  std::multiset<std::pair<int, int>> want1;
  for (int i = 0; i < 6; ++i) want1.insert({1, 2});
  for (int i = 0; i < 3; ++i) want1.insert({2, 2});
  CHECK(t1 == want1);

  BlockComplex x2 = load_bundled("x2_sec4");
  auto t2 = chamber_types(x2);
  std::multiset<std::pair<int, int>> want2;
  for (int i = 0; i < 3; ++i) want2.insert({1, 1});
  for (int i = 0; i < 3; ++i) want2.insert({1, 2});
  for (int i = 0; i < 3; ++i) want2.insert({2, 3});
  CHECK(t2 == want2);

  CHECK(euler_characteristic(x1) == -24);
  CHECK(euler_characteristic(x2) == -24);
  CHECK(x1.volume() == Catch::Approx(48 * M_PI));
  CHECK(x2.volume() == Catch::Approx(48 * M_PI));
}

TEST_CASE("chamber systole cut separates one pair but not the other") {
  // inside the single chamber of each homeo amalgam, cutting additionally
  // along the four systoles gives two components on the x1 side and one on
  // the x2 side
  BlockComplex x1 = load_bundled("x1_homeo");
  CutSet cut1;
  cut1.classes.insert(0);
  for (auto& s : combinatorial_systoles(x1)) cut1.pairings.insert(s.pairing);
  auto c1 = cut_complex(x1, cut1);
  CHECK(c1.size() == 2);

  BlockComplex x2 = load_bundled("x2_homeo");
  CutSet cut2;
  cut2.classes.insert(0);
  for (auto& s : combinatorial_systoles(x2)) cut2.pairings.insert(s.pairing);
  auto c2 = cut_complex(x2, cut2);
  CHECK(c2.size() == 1);
}

TEST_CASE("schema and validation errors carry the offending element") {
  nlohmann::json doc = scheme::bundled_doc("s1");

  SECTION("unpaired side") {
    doc["pairings"].erase(doc["pairings"].size() - 1);
    try {
      load_complex_doc(doc);
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("unpaired side") != std::string::npos);
    }
  }
  SECTION("length class mismatch") {
    doc["pairings"][0]["end_b"][3] = "ATR";
    CHECK_THROWS_AS(load_complex_doc(doc), ValidationError);
  }
  SECTION("metric out of range") {
    doc["metric"]["c"] = 0.8;  // c > b
    CHECK_THROWS_AS(load_complex_doc(doc), ValidationError);
  }
  SECTION("vertex link failure") {
    // swap two a-side partners to break the links but keep everything paired
    // (block 1's right a-pair with block 3's)
    for (auto& pj : doc["pairings"]) {
      if (pj["end_a"][1] == 1 && pj["end_a"][3] == "ATR") pj["end_b"][1] = 3;
      if (pj["end_a"][1] == 3 && pj["end_a"][3] == "ATR") pj["end_b"][1] = 1;
    }
    try {
      load_complex_doc(doc);
      FAIL("expected a vertex link failure");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("vertex link") != std::string::npos);
    }
  }
  SECTION("missing field") {
    doc.erase("cells");
    try {
      load_complex_doc(doc);
      FAIL("expected a schema violation");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("schema") != std::string::npos);
    }
  }
}

TEST_CASE("documents round-trip through serialization") {
  for (const std::string& name : scheme::bundled_names()) {
    BlockComplex bc = load_bundled(name);
    nlohmann::json doc = complex_to_doc(bc);
    BlockComplex bc2 = load_complex_doc(doc);
    CHECK(bc2.cells.size() == bc.cells.size());
    CHECK(bc2.pairings.size() == bc.pairings.size());
    CHECK(bc2.classes.size() == bc.classes.size());
  }
}

TEST_CASE("chamber types are stable under copy relabeling") {
  // permuting the copy ids of the three-copy amalgam leaves the chamber
  // multiset unchanged
  nlohmann::json doc = scheme::bundled_doc("x1_sec4");
  auto relabel = [](nlohmann::json& ref) {
    int c = ref[0].get<int>();
    ref[0] = c == 1 ? 2 : (c == 2 ? 3 : 1);
  };
  for (auto& cj : doc["cells"]) relabel(cj);
  for (auto& pj : doc["pairings"]) {
    relabel(pj["end_a"]);
    relabel(pj["end_b"]);
  }
  for (auto& gj : doc["gluing_classes"])
    for (auto& aj : gj["arcs"])
      for (auto& sj : aj["sheets"]) relabel(sj);
  BlockComplex rot = load_complex_doc(doc);
  BlockComplex orig = load_complex_doc(scheme::bundled_doc("x1_sec4"));
  CHECK(chamber_types(rot) == chamber_types(orig));
}
