#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <vector>

#include <json.hpp>

#include "mcg/metacyclic.hpp"

using namespace mcg;

namespace {

ConfiguredPair load_pair(const std::string& name) {
  std::ifstream in(std::string(MCG_FIXTURES_DIR) + "/" + name);
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  return configured_pair_from_json(j);
}

// Oracle for Z semidirect_-1 Z_2m: elements are pairs (a mod 2m, b in Z)
// standing for G^a F^b, multiplied by the normal form
// (G^a F^b)(G^c F^d) = G^{a+c} F^{b (-1)^c + d}. An element of finite order
// has order dividing 2m, so 2m iterations decide periodicity exactly.
ElementType oracle_z_semi_z2m(long long i, long long j, long long m) {
  const long long g_order = 2 * m;
  long long a = 0, b = 0;
  for (long long l = 1; l <= g_order; ++l) {
    b = (i % 2 == 0 ? b : -b) + j;
    a = (a + i) % g_order;
    if (((a % g_order) + g_order) % g_order == 0 && b == 0)
      return {true, l};
  }
  return {false, 0};
}

// Oracle for Z_n semidirect_k Z: reduce modulo the finite quotient
// Z_n semidirect_k Z_{13 M}, where M is the multiplicative order of k mod n.
// The kernel of the reduction meets a cyclic subgroup <G^i F^j> trivially
// unless i != 0, and 13 was chosen coprime to every |i| <= 8 under test, so:
// the element is periodic iff its quotient order is not divisible by 13, and
// the orders agree in the periodic case.
ElementType oracle_zn_semi_z(long long i, long long j,
                             const PresentationClass& pres) {
  const long long n = pres.n;
  long long order_k = 1, acc = pres.k % n;
  while (acc != 1) {
    acc = (acc * pres.k) % n;
    ++order_k;
  }
  const long long g_mod = 13 * order_k;
  long long a = 0, b = 0;
  for (long long l = 1; l <= g_mod * n; ++l) {
    // (G^a F^b)(G^i F^j) = G^{a+i} F^{b k^i + j}.
    b = (b * mod_pow(pres.k, i, n) + j) % n;
    a = (a + i) % g_mod;
    if (((a % g_mod) + g_mod) % g_mod == 0 && b % n == 0) {
      if (l % 13 == 0) return {false, 0};
      return {true, l};
    }
  }
  return {false, 0};
}

}  // namespace

TEST_CASE("presentation classification") {
  SUBCASE("periodic normal generator") {
    PresentationClass p = classify_presentation(5, std::nullopt, 2);
    CHECK(p.kind == PresentationKind::ZnSemiZ);
    CHECK(p.n == 5);
    CHECK(p.k == 2);
    CHECK(to_text(p) == "Z_5 x|_2 Z");
    CHECK(classify_presentation(5, std::nullopt, -1).k == 4);
    CHECK(to_text(classify_presentation(7, std::nullopt, 1)) == "Z_7 x Z");
  }
  SUBCASE("finite conjugator") {
    PresentationClass p = classify_presentation(std::nullopt, 12, -1);
    CHECK(p.kind == PresentationKind::ZSemiZ2m);
    CHECK(p.m == 6);
    CHECK(to_text(p) == "Z x|_-1 Z_12");
  }
  SUBCASE("commuting finite conjugator is canonicalized") {
    PresentationClass p = classify_presentation(std::nullopt, 7, 1);
    CHECK(p.kind == PresentationKind::ZnSemiZ);
    CHECK(p.n == 7);
    CHECK(p.k == 1);
  }
  SUBCASE("torsion-free cases") {
    CHECK(to_text(classify_presentation(std::nullopt, std::nullopt, 1)) ==
          "Z x Z");
    CHECK(to_text(classify_presentation(std::nullopt, std::nullopt, -1)) ==
          "Z x|_-1 Z");
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(classify_presentation(4, 6, 1), EngineError);
    CHECK_THROWS_AS(classify_presentation(std::nullopt, std::nullopt, 2),
                    EngineError);
    CHECK_THROWS_AS(classify_presentation(std::nullopt, 7, -1), EngineError);
    CHECK_THROWS_AS(classify_presentation(4, std::nullopt, 2), EngineError);
    CHECK_THROWS_AS(
        classify_presentation(std::nullopt, 4, -1, {{3, 0}}), EngineError);
  }
}

TEST_CASE("element types against the symbolic oracle (finite conjugator)") {
  for (long long m = 1; m <= 6; ++m) {
    PresentationClass pres;
    pres.kind = PresentationKind::ZSemiZ2m;
    pres.m = m;
    pres.k = -1;
    for (long long i = -8; i <= 8; ++i) {
      for (long long j = -8; j <= 8; ++j) {
        CAPTURE(m);
        CAPTURE(i);
        CAPTURE(j);
        ElementType got = element_type(i, j, pres);
        ElementType want = oracle_z_semi_z2m(i, j, m);
        CHECK(got.periodic == want.periodic);
        if (want.periodic) CHECK(got.order == want.order);
      }
    }
  }
}

TEST_CASE("element types against the quotient oracle (periodic normal part)") {
  for (long long n = 2; n <= 12; ++n) {
    for (long long k = 1; k < n; ++k) {
      if (std::gcd(k, n) != 1) continue;
      PresentationClass pres;
      pres.kind = PresentationKind::ZnSemiZ;
      pres.n = n;
      pres.k = k;
      for (long long i = -8; i <= 8; ++i) {
        for (long long j = -8; j <= 8; ++j) {
          CAPTURE(n);
          CAPTURE(k);
          CAPTURE(i);
          CAPTURE(j);
          ElementType got = element_type(i, j, pres);
          ElementType want = oracle_zn_semi_z(i, j, pres);
          CHECK(got.periodic == want.periodic);
          if (want.periodic) CHECK(got.order == want.order);
        }
      }
    }
  }
}

TEST_CASE("element types in Z x Z and Z x|_-1 Z") {
  for (long long k : {1, -1}) {
    PresentationClass pres;
    pres.kind = PresentationKind::ZSemiZ;
    pres.k = k;
    CHECK(element_type(0, 0, pres).periodic);
    CHECK(element_type(0, 0, pres).order == 1);
    for (long long i = -3; i <= 3; ++i)
      for (long long j = -3; j <= 3; ++j)
        if (i != 0 || j != 0) CHECK_FALSE(element_type(i, j, pres).periodic);
  }
}

TEST_CASE("Aut_k witnesses") {
  SUBCASE("k = 1 always pairs every slot with its twin") {
    for (const char* text : {"(5,0;(4,5),(3,5),(3,5))",
                             "(3,0;(1,3),(1,3),(2,3),(2,3))",
                             "(10,0;(1,2),(2,5),(1,10))"}) {
      CyclicDataSet ds = parse_data_set(text);
      auto witness = autk_exists(ds, 1);
      REQUIRE(witness.has_value());
      for (std::size_t x = 0; x < ds.cone.size(); ++x)
        CHECK(ds.cone[x] == ds.cone[witness->pairing[x]]);
    }
  }
  SUBCASE("hyperelliptic-style swap under k = -1") {
    CyclicDataSet ds = parse_data_set("(5,1;(1,5),(4,5))");
    auto witness = autk_exists(ds, -1);
    REQUIRE(witness.has_value());
    CHECK(witness->pairing == std::vector<int>{1, 0});
  }
  SUBCASE("witness validity: d_x = k * d_{pair(x)} (mod m)") {
    CyclicDataSet ds = parse_data_set("(8,0;(1,2),(5,8),(7,8))");
    for (long long k : {1, 3, 5, 7}) {
      auto witness = autk_exists(ds, k);
      if (!witness) continue;
      for (std::size_t x = 0; x < ds.cone.size(); ++x) {
        const ConeDatum& cx = ds.cone[x];
        const ConeDatum& cy = ds.cone[witness->pairing[x]];
        CHECK(cx.m == cy.m);
        CHECK(((cx.d - k * cy.d) % cx.m + cx.m) % cx.m == 0);
      }
    }
  }
  SUBCASE("absent witness") {
    CHECK_FALSE(autk_exists(parse_data_set("(5,0;(4,5),(3,5),(3,5))"), 2));
  }
  SUBCASE("non-unit exponent") {
    CHECK_THROWS_AS(autk_exists(parse_data_set("(8,0;(1,2),(5,8),(7,8))"), 2),
                    EngineError);
  }
}

TEST_CASE("decision procedure accepts the worked configured pairs") {
  for (const char* name :
       {"example_zz2s3pp.json", "bounding_pair_g2.json",
        "bounding_pair_g3.json", "twist_root_zn.json"}) {
    CAPTURE(name);
    ConfiguredPair pair = load_pair(name);
    Main2Verdict verdict = check_main2(pair);
    CHECK(verdict.pass);
    for (const ConditionResult& c : verdict.conditions) CHECK(c.pass);
    // Condition (iv) uses necessary-condition strength on periodic parts.
    CHECK(verdict.certification == Certification::NecessaryConditions);
  }
}

TEST_CASE("mutation suite: every break is detected at the right condition") {
  auto expect_fail = [](const ConfiguredPair& pair, int condition) {
    Main2Verdict verdict = check_main2(pair);
    CHECK_FALSE(verdict.pass);
    CAPTURE(verdict.conditions[condition].detail);
    CHECK_FALSE(verdict.conditions[condition].pass);
  };

  SUBCASE("bounding pair: twist exponent sign flipped") {
    ConfiguredPair pair = load_pair("bounding_pair_g2.json");
    pair.edges[0].q = -3;
    expect_fail(pair, 2);
  }
  SUBCASE("bounding pair: exponent magnitude changed") {
    ConfiguredPair pair = load_pair("bounding_pair_g2.json");
    pair.edges[0].q = 2;
    expect_fail(pair, 2);
  }
  SUBCASE("bounding pair: pi_G stops swapping the curves") {
    ConfiguredPair pair = load_pair("bounding_pair_g2.json");
    pair.pi_g_edges = {0, 1};
    expect_fail(pair, 2);
  }
  SUBCASE("bounding pair: pi_G fixes the components") {
    ConfiguredPair pair = load_pair("bounding_pair_g2.json");
    pair.pi_g_vertices = {0, 1};  // edge swap kept; (iii) still holds
    expect_fail(pair, 3);
  }
  SUBCASE("bounding pair: mismatched component pieces") {
    ConfiguredPair pair = load_pair("bounding_pair_g2.json");
    pair.vertices[1].f = pair.vertices[0].f;
    expect_fail(pair, 4);
  }
  SUBCASE("bounding pair: commuting conjugation exponent") {
    ConfiguredPair pair = load_pair("bounding_pair_g2.json");
    pair.k = 1;
    expect_fail(pair, 2);
  }
  SUBCASE("genus-3 bounding pair: twist exponent sign flipped") {
    ConfiguredPair pair = load_pair("bounding_pair_g3.json");
    pair.edges[0].q = -pair.edges[0].q;
    expect_fail(pair, 2);
  }
  SUBCASE("twist root: k not a square root of 1 mod n") {
    ConfiguredPair pair = load_pair("twist_root_zn.json");
    pair.k = 2;
    expect_fail(pair, 1);
  }
  SUBCASE("twist root: odd degree of G") {
    ConfiguredPair pair = load_pair("twist_root_zn.json");
    pair.m = 3;
    expect_fail(pair, 1);
  }
  SUBCASE("twist root: pi_F moves the curves of C(G)") {
    ConfiguredPair pair = load_pair("twist_root_zn.json");
    pair.pi_f_edges = {1, 0};
    expect_fail(pair, 2);
  }
  SUBCASE("twist root: mismatched component pieces") {
    ConfiguredPair pair = load_pair("twist_root_zn.json");
    pair.vertices[1].f = pair.vertices[0].f;
    expect_fail(pair, 4);
  }
  SUBCASE("commuting pair: inverted conjugation") {
    ConfiguredPair pair = load_pair("example_zz2s3pp.json");
    pair.k = -1;
    expect_fail(pair, 2);
  }
}

TEST_CASE("single component with k = 1 is degenerate-stable") {
  // Collapsing pi_G to the identity on a one-vertex commuting pair changes
  // nothing: every condition stays satisfied.
  ConfiguredPair pair = load_pair("example_zz2s3pp.json");
  REQUIRE(pair.vertices.size() == 1);
  pair.pi_g_vertices = {0};
  pair.pi_g_edges = {0};
  CHECK(check_main2(pair).pass);
}

TEST_CASE("structural errors are errors, not verdicts") {
  SUBCASE("zero exponent on a curve") {
    ConfiguredPair pair = load_pair("bounding_pair_g2.json");
    pair.edges[0].q = 0;
    CHECK_THROWS_AS(check_main2(pair), EngineError);
  }
  SUBCASE("non-bijective permutation") {
    ConfiguredPair pair = load_pair("bounding_pair_g2.json");
    pair.pi_g_vertices = {0, 0};
    CHECK_THROWS_AS(check_main2(pair), EngineError);
  }
  SUBCASE("incidence-breaking permutation") {
    ConfiguredPair pair = load_pair("level_m_pair.json");
    pair.edges[0].vb = 0;          // self-loop at vertex 0
    pair.pi_f_vertices = {1, 0};   // ... which pi_F must carry to vertex 1
    CHECK_THROWS_AS(check_main2(pair), EngineError);
  }
  SUBCASE("k not +-1 with an infinite F") {
    ConfiguredPair pair = load_pair("bounding_pair_g2.json");
    pair.k = 2;
    CHECK_THROWS_AS(check_main2(pair), EngineError);
  }
  SUBCASE("invalid component data set") {
    ConfiguredPair pair = load_pair("bounding_pair_g2.json");
    pair.vertices[0].f.data_set.cone[0].d = 2;  // residue sum breaks
    CHECK_THROWS_AS(check_main2(pair), EngineError);
  }
  SUBCASE("missing power-conjugacy entry") {
    ConfiguredPair pair = load_pair("level_m_pair.json");
    pair.pa_conjugacy.clear();
    CHECK_THROWS_AS(check_main2(pair), EngineError);
  }
}

TEST_CASE("level-m constraints") {
  ConfiguredPair pair = load_pair("level_m_pair.json");
  SUBCASE("worked pair passes for every m > 2") {
    for (long long m : {3, 4, 7}) CHECK(check_level_m(pair, m).pass);
  }
  SUBCASE("torsion levels are out of scope") {
    CHECK_THROWS_AS(check_level_m(pair, 2), EngineError);
    CHECK_THROWS_AS(check_level_m(pair, 1), EngineError);
  }
  SUBCASE("non-commuting pair fails") {
    pair.k = -1;
    LevelMVerdict verdict = check_level_m(pair, 4);
    CHECK_FALSE(verdict.pass);
    REQUIRE(!verdict.reasons.empty());
  }
  SUBCASE("periodic component fails") {
    ConfiguredPair periodic = load_pair("example_zz2s3pp.json");
    CHECK_FALSE(check_level_m(periodic, 4).pass);
  }
  SUBCASE("missing cyclic certificate is an error") {
    pair.certificates.clear();
    CHECK_THROWS_AS(check_level_m(pair, 4), EngineError);
  }
}

TEST_CASE("configured pair JSON round-trip") {
  for (const char* name :
       {"example_zz2s3pp.json", "bounding_pair_g2.json", "twist_root_zn.json",
        "level_m_pair.json"}) {
    ConfiguredPair pair = load_pair(name);
    ConfiguredPair back = configured_pair_from_json(to_json(pair));
    // Compare through the decision procedure inputs.
    CHECK(to_json(back) == to_json(pair));
  }
}

TEST_CASE("abelian Z x Z_m search") {
  SUBCASE("cancelling residues give no extension") {
    CyclicDataSet ds = parse_data_set("(12,1;(1,12),(11,12))");
    CHECK(search_abelian_zm(ds, 1, 11).empty());
  }
  SUBCASE("repeated residue hits the divisor pattern") {
    CyclicDataSet ds = parse_data_set("(6,0;(1,6),(1,6),(2,3))");
    REQUIRE(validate(ds).pass());
    auto hits = search_abelian_zm(ds, 1, 1);
    // Brute-force evaluation of the divisor conditions.
    std::vector<ZmWitness> expected;
    const long long k_prime = (mod_inverse(1, 6) + mod_inverse(1, 6)) % 6;
    for (long long m = 1; m < 6; ++m) {
      if (6 % m != 0 || std::gcd(m, 6 / m) != 1) continue;
      if ((1 + 1) % m != 0) continue;
      if ((1 + 1 - k_prime) % (6 / m) != 0) continue;
      expected.push_back({m, k_prime, (1 + 1) % (6 / m)});
    }
    CHECK(hits == expected);
    CHECK(hits.size() == 2);  // m = 1 and m = 2
  }
  SUBCASE("missing cone points are rejected") {
    CyclicDataSet ds = parse_data_set("(6,0;(1,6),(1,6),(2,3))");
    CHECK_THROWS_AS(search_abelian_zm(ds, 1, 5), EngineError);
    CHECK_THROWS_AS(search_abelian_zm(ds, 2, 2), EngineError);
  }
}

TEST_CASE("dihedral twist-root extensions") {
  CyclicDataSet ds = parse_data_set("(5,0;(4,5),(3,5),(3,5))");
  SUBCASE("default slot choice prefers the repeated residue") {
    DihedralReport report = search_dihedral_extension(ds);
    CHECK(report.kind == DihedralKind::ZnSemiZ);
    CHECK(report.a == 3);
    CHECK(report.b == 3);
    CHECK(report.ambient_genus == 5);
  }
  SUBCASE("explicit distinct residues give the Z x|_-1 Z_2 form") {
    // Canonical cone order is (3,5), (3,5), (4,5); slots 0 and 2 differ.
    DihedralReport report = search_dihedral_extension(ds, {{0, 2}});
    CHECK(report.kind == DihedralKind::ZSemiZ2);
    CHECK(report.a == 3);
    CHECK(report.b == 4);
  }
  SUBCASE("invalid slot choices") {
    CHECK_THROWS_AS(search_dihedral_extension(ds, {{0, 0}}), EngineError);
    CHECK_THROWS_AS(search_dihedral_extension(ds, {{0, 7}}), EngineError);
  }
  SUBCASE("no full-order cone points: no extension") {
    CyclicDataSet flat = parse_data_set("(6,0;(1,2),(1,2),(1,3),(2,3))");
    CHECK(search_dihedral_extension(flat).kind == DihedralKind::None);
  }
  SUBCASE("degree outside [3, 4g]") {
    CHECK_THROWS_AS(
        search_dihedral_extension(parse_data_set("(10,0;(1,2),(2,5),(1,10))")),
        EngineError);
    CHECK_THROWS_AS(search_dihedral_extension(parse_data_set(
                        "(2,0;(1,2),(1,2),(1,2),(1,2),(1,2),(1,2))")),
                    EngineError);
  }
}

TEST_CASE("order bounds by exhaustive enumeration") {
  for (long long g = 2; g <= 6; ++g) {
    CAPTURE(g);
    BoundsReport report = verify_bounds(g);
    CHECK(report.pass());
    CHECK(report.counterexamples.empty());
    if (g % 2 == 0)
      CHECK(report.reducible_max_degree == 2 * g + 2);
    else
      CHECK(report.reducible_max_degree <= 2 * g);
  }
  SUBCASE("the even-genus extremal data set really exists") {
    CyclicDataSet extremal = parse_data_set("(10,0;(1,2),(1,2),(1,5),(4,5))");
    CHECK(validate(extremal).pass());
    CHECK(genus(extremal) == 4);
    CHECK_FALSE(is_irreducible(extremal));
    auto all = enumerate_all(4);
    const auto& sets = all.at(10);
    CHECK(std::find(sets.begin(), sets.end(), extremal) != sets.end());
  }
}

TEST_CASE("centralizer classification, exhaustively at low genus") {
  for (long long g : {2, 3}) {
    for (const auto& [degree, sets] : enumerate_all(g)) {
      for (const CyclicDataSet& ds : sets) {
        if (!is_irreducible(ds)) {
          CHECK_THROWS_AS(centralizer_class(ds), EngineError);
          continue;
        }
        CentralizerReport report = centralizer_class(ds);
        CHECK(report.genus == g);
        const bool all_distinct = ds.cone[0] != ds.cone[1] &&
                                  ds.cone[1] != ds.cone[2] &&
                                  ds.cone[0] != ds.cone[2];
        CHECK(report.cyclic == (degree > 2 * g + 2 || all_distinct));
        // An irreducible set with three equal cone points (d, n) forces
        // n | 3d with gcd(d, n) = 1, impossible at genus >= 2, so the
        // order-3 symmetry is excluded throughout.
        CHECK(report.order3_excluded);
        if (!report.cyclic) {
          CHECK(report.maclachlan_bound);
          REQUIRE(report.candidates.size() == 2);
          for (const CyclicDataSet& c : report.candidates) {
            CHECK(c.n == 2);
            CHECK(validate(c).pass());
            CHECK(genus(c) == g);
          }
        }
      }
    }
  }
}
