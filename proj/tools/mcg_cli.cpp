// Command-line surface over the mcg library: enumeration, validation,
// assembly, metacyclic decision procedures, and homology fixtures.
//
// Exit codes: 0 = pass, 1 = mathematical violation, 2 = usage/parse error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcg/dataset.hpp"
#include "mcg/homology.hpp"
#include "mcg/metacyclic.hpp"
#include "mcg/multitwist.hpp"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mcg::ParseError("cannot open file '" + path + "'", 0);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw mcg::ParseError(std::string("invalid JSON in '") + path + "': " + e.what(), 0);
  }
  return j;
}

void emit(const json& payload, const std::string& format) {
  if (format == "json") {
    std::cout << payload.dump(2) << "\n";
  }
}

// ---------------------------------------------------------------------------
// enumerate
// ---------------------------------------------------------------------------

int cmd_enumerate(long long g, std::optional<long long> order,
                  bool irreducible_only, const std::string& format) {
  std::map<long long, std::vector<mcg::CyclicDataSet>> all;
  if (order) {
    all[*order] = mcg::enumerate_data_sets(g, *order);
  } else {
    all = mcg::enumerate_all(g);
  }
  json listing = json::array();
  json counts = json::object();
  for (const auto& [degree, sets] : all) {
    long long count = 0;
    for (const mcg::CyclicDataSet& ds : sets) {
      if (irreducible_only && !mcg::is_irreducible(ds)) continue;
      ++count;
      if (format == "tsv") {
        std::cout << degree << "\t" << mcg::to_text(ds) << "\t"
                  << (mcg::is_irreducible(ds) ? "irreducible" : "reducible")
                  << "\n";
      } else if (format == "text") {
        std::cout << mcg::to_text(ds) << "\n";
      } else {
        listing.push_back(mcg::to_json(ds));
      }
    }
    counts[std::to_string(degree)] = count;
    if (format != "json")
      std::cout << "# degree " << degree << " count " << count << "\n";
  }
  emit({{"status", "ok"}, {"data_sets", listing}, {"counts", counts}}, format);
  return kExitPass;
}

// ---------------------------------------------------------------------------
// validate / genus / irreducible
// ---------------------------------------------------------------------------

int cmd_validate(const std::string& literal, const std::string& format) {
  mcg::CyclicDataSet ds = mcg::parse_data_set(literal);
  mcg::ValidationReport report = mcg::validate(ds);
  json payload = {{"status", report.pass() ? "ok" : "violation"},
                  {"structural_ok", report.structural_ok},
                  {"violated", report.violated}};
  if (!report.structural_ok) payload["structural_error"] = report.structural_error;
  if (format == "json") {
    emit(payload, format);
  } else if (report.pass()) {
    std::cout << "pass\n";
  } else if (!report.structural_ok) {
    std::cout << "structural error: " << report.structural_error << "\n";
  } else {
    std::cout << "violated conditions:";
    for (int c : report.violated) std::cout << " " << c;
    std::cout << "\n";
  }
  return report.pass() ? kExitPass : kExitViolation;
}

int cmd_genus(const std::string& literal, const std::string& format) {
  mcg::CyclicDataSet ds = mcg::parse_data_set(literal);
  long long g = mcg::genus(ds);
  if (format == "json")
    emit({{"status", "ok"}, {"genus", g}}, format);
  else
    std::cout << g << "\n";
  return kExitPass;
}

int cmd_irreducible(const std::string& literal, const std::string& format) {
  mcg::CyclicDataSet ds = mcg::parse_data_set(literal);
  bool irr = mcg::is_irreducible(ds);
  if (format == "json")
    emit({{"status", "ok"}, {"irreducible", irr}}, format);
  else
    std::cout << (irr ? "true" : "false") << "\n";
  return kExitPass;
}

// ---------------------------------------------------------------------------
// twist-factor / assemble
// ---------------------------------------------------------------------------

std::optional<mcg::ConeDatum> parse_orbit_literal(const std::string& text) {
  if (text == "p" || text == "principal") return std::nullopt;
  static const std::regex pattern(R"(\(\s*(\d+)\s*,\s*(\d+)\s*\))");
  std::smatch m;
  if (!std::regex_match(text, m, pattern))
    throw mcg::ParseError("orbit literal must be '(d,m)' or 'p'", 0);
  return mcg::ConeDatum{std::stoll(m[1]), std::stoll(m[2])};
}

int cmd_twist_factor(const std::string& a, const std::string& b,
                     long long deg_a, long long deg_b,
                     const std::string& format) {
  auto orbit_a = parse_orbit_literal(a);
  auto orbit_b = parse_orbit_literal(b);
  if (deg_a == 0) deg_a = orbit_a ? orbit_a->m : 1;
  if (deg_b == 0) deg_b = orbit_b ? orbit_b->m : 1;
  long long kt = mcg::twist_factor(orbit_a, deg_a, orbit_b, deg_b);
  long long n = std::lcm(deg_a, deg_b);
  if (format == "json")
    emit({{"status", "ok"}, {"twist_factor", kt}, {"modulus", n}}, format);
  else
    std::cout << "k_t = " << kt << " over n = " << n << "\n";
  return kExitPass;
}

mcg::OrbitRef orbit_ref_from_json(const json& j) {
  mcg::OrbitRef ref;
  ref.component = j.at("component").get<int>();
  if (j.at("slot").is_string()) {
    if (j.at("slot").get<std::string>() != "p")
      throw mcg::ParseError("slot must be an index or \"p\"", 0);
    ref.slot = mcg::OrbitRef::kPrincipal;
  } else {
    ref.slot = j.at("slot").get<int>();
  }
  return ref;
}

int cmd_assemble(const std::string& path, const std::string& format) {
  json spec = load_json_file(path);
  std::vector<std::pair<mcg::CyclicDataSet, long long>> components;
  for (const auto& c : spec.at("components"))
    components.emplace_back(mcg::data_set_from_json(c.at("data_set")),
                            c.value("size", 1LL));
  std::vector<mcg::PairingSpec> pairings;
  for (const auto& p : spec.at("pairings"))
    pairings.push_back({orbit_ref_from_json(p.at("a")), orbit_ref_from_json(p.at("b"))});
  long long N = spec.contains("degree")
                    ? spec.at("degree").get<long long>()
                    : mcg::minimal_degree(components, pairings);
  mcg::PseudoPeriodicDataSet pds = mcg::assemble(components, pairings, N);
  long long g = mcg::total_genus(pds);
  json exponents = json::array();
  for (const auto& [index, q] : mcg::multitwist_of(pds))
    exponents.push_back({{"pairing", index}, {"q", q}});
  if (format == "json") {
    emit({{"status", "ok"},
          {"degree", pds.degree},
          {"genus", g},
          {"exponents", exponents},
          {"data_set", mcg::to_json(pds)}},
         format);
  } else {
    std::cout << "degree " << pds.degree << ", genus " << g << "\n";
    for (const auto& [index, q] : mcg::multitwist_of(pds))
      std::cout << "pairing " << index << ": q = " << q
                << " (k_t = " << pds.pairings[index].twist_factor << " over "
                << pds.pairings[index].modulus << ")\n";
    std::cout << mcg::to_text(pds) << "\n";
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------
// metacyclic
// ---------------------------------------------------------------------------

const char* certification_name(mcg::Certification c) {
  return c == mcg::Certification::Certified ? "certified" : "necessary-conditions";
}

int cmd_metacyclic_check(const std::string& path, std::optional<long long> level_m,
                         const std::string& format) {
  mcg::ConfiguredPair pair = mcg::configured_pair_from_json(load_json_file(path));
  if (level_m) {
    mcg::LevelMVerdict verdict = mcg::check_level_m(pair, *level_m);
    if (format == "json") {
      emit({{"status", verdict.pass ? "ok" : "violation"},
            {"pass", verdict.pass},
            {"reasons", verdict.reasons}},
           format);
    } else {
      std::cout << (verdict.pass ? "pass" : "fail") << "\n";
      for (const std::string& r : verdict.reasons) std::cout << "  " << r << "\n";
    }
    return verdict.pass ? kExitPass : kExitViolation;
  }
  mcg::Main2Verdict verdict = mcg::check_main2(pair);
  json conditions = json::array();
  for (std::size_t i = 0; i < verdict.conditions.size(); ++i) {
    const mcg::ConditionResult& c = verdict.conditions[i];
    conditions.push_back({{"condition", i + 1},
                          {"pass", c.pass},
                          {"certification", certification_name(c.certification)},
                          {"detail", c.detail}});
    if (format != "json")
      std::cout << "condition (" << i + 1 << "): "
                << (c.pass ? "pass" : "FAIL") << " ["
                << certification_name(c.certification) << "]"
                << (c.detail.empty() ? "" : " - " + c.detail) << "\n";
  }
  if (format == "json") {
    emit({{"status", verdict.pass ? "ok" : "violation"},
          {"pass", verdict.pass},
          {"k", pair.k},
          {"certification", certification_name(verdict.certification)},
          {"conditions", conditions}},
         format);
  } else {
    std::cout << (verdict.pass ? "pass" : "fail") << ", k = " << pair.k << " ["
              << certification_name(verdict.certification) << "]\n";
  }
  return verdict.pass ? kExitPass : kExitViolation;
}

int cmd_metacyclic_search_zm(const std::string& literal,
                             std::optional<long long> a, std::optional<long long> b,
                             const std::string& format) {
  mcg::CyclicDataSet ds = mcg::parse_data_set(literal);
  if (!a || !b) {
    std::vector<long long> full;
    for (const mcg::ConeDatum& c : ds.cone)
      if (c.m == ds.n) full.push_back(c.d);
    if (full.size() < 2)
      throw mcg::EngineError("data set needs two full-order cone points");
    a = full[0];
    b = full[1];
  }
  auto hits = mcg::search_abelian_zm(ds, *a, *b);
  json listing = json::array();
  for (const mcg::ZmWitness& w : hits) {
    listing.push_back({{"m", w.m}, {"k_prime", w.k_prime}, {"k", w.k}});
    if (format != "json")
      std::cout << "Z x Z_" << w.m << " (k' = " << w.k_prime
                << ", a+b = " << w.k << " mod " << ds.n / w.m << ")\n";
  }
  if (format == "json")
    emit({{"status", hits.empty() ? "violation" : "ok"},
          {"a", *a}, {"b", *b}, {"witnesses", listing}},
         format);
  else if (hits.empty())
    std::cout << "none\n";
  return hits.empty() ? kExitViolation : kExitPass;
}

int cmd_metacyclic_dihedral(const std::string& literal,
                            std::optional<std::pair<int, int>> slots,
                            const std::string& format) {
  mcg::CyclicDataSet ds = mcg::parse_data_set(literal);
  mcg::DihedralReport report = mcg::search_dihedral_extension(ds, slots);
  std::string kind;
  switch (report.kind) {
    case mcg::DihedralKind::ZnSemiZ:
      kind = "Z_" + std::to_string(ds.n) + " x|_-1 Z";
      break;
    case mcg::DihedralKind::ZSemiZ2:
      kind = "Z x|_-1 Z_2";
      break;
    case mcg::DihedralKind::None:
      kind = "none";
      break;
  }
  if (format == "json") {
    emit({{"status", report.kind == mcg::DihedralKind::None ? "violation" : "ok"},
          {"kind", kind},
          {"a", report.a},
          {"b", report.b},
          {"ambient_genus", report.ambient_genus}},
         format);
  } else if (report.kind == mcg::DihedralKind::None) {
    std::cout << "none\n";
  } else {
    std::cout << kind << " in genus " << report.ambient_genus << " (a = "
              << report.a << ", b = " << report.b << ")\n";
  }
  return report.kind == mcg::DihedralKind::None ? kExitViolation : kExitPass;
}

int cmd_metacyclic_bounds(long long g, const std::string& format) {
  mcg::BoundsReport report = mcg::verify_bounds(g);
  if (format == "json") {
    emit({{"status", report.pass() ? "ok" : "violation"},
          {"no_degree_4g1", report.no_degree_4g1},
          {"degree_4g2_all_irreducible", report.degree_4g2_all_irreducible},
          {"reducible_bound_ok", report.reducible_bound_ok},
          {"reducible_max_degree", report.reducible_max_degree},
          {"counterexamples", report.counterexamples}},
         format);
  } else {
    std::cout << "no degree 4g+1: " << (report.no_degree_4g1 ? "pass" : "FAIL")
              << "\n"
              << "degree 4g+2 all irreducible: "
              << (report.degree_4g2_all_irreducible ? "pass" : "FAIL") << "\n"
              << "reducible bound (max degree " << report.reducible_max_degree
              << "): " << (report.reducible_bound_ok ? "pass" : "FAIL") << "\n";
    for (const std::string& c : report.counterexamples)
      std::cout << "  counterexample: " << c << "\n";
  }
  return report.pass() ? kExitPass : kExitViolation;
}

int cmd_metacyclic_centralizer(const std::string& literal,
                               const std::string& format) {
  mcg::CyclicDataSet ds = mcg::parse_data_set(literal);
  mcg::CentralizerReport report = mcg::centralizer_class(ds);
  json candidates = json::array();
  for (const mcg::CyclicDataSet& c : report.candidates)
    candidates.push_back(mcg::to_text(c));
  if (format == "json") {
    emit({{"status", "ok"},
          {"cyclic", report.cyclic},
          {"genus", report.genus},
          {"order3_excluded", report.order3_excluded},
          {"maclachlan_bound", report.maclachlan_bound},
          {"candidates", candidates}},
         format);
  } else if (report.cyclic) {
    std::cout << "cyclic <F>\n";
  } else {
    std::cout << "bounded by <<F, iota>>; candidate involutions:\n";
    for (const mcg::CyclicDataSet& c : report.candidates)
      std::cout << "  " << mcg::to_text(c) << "\n";
  }
  return kExitPass;
}

mcg::PresentationClass parse_presentation(const std::string& text) {
  // "Z x|k Z", "Z x|-1 Z_2m", "Z_n x|k Z" (whitespace optional).
  static const std::regex pattern(
      R"(Z(?:_(\d+))?\s*x\|?(-?\d+)?\s*Z(?:_(\d+))?)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern))
    throw mcg::ParseError("presentation literal must look like 'Z_n x|k Z'", 0);
  std::optional<long long> n_f, g_order;
  if (m[1].matched) n_f = std::stoll(m[1]);
  if (m[3].matched) g_order = std::stoll(m[3]);
  long long k = m[2].matched ? std::stoll(m[2]) : 1;
  return mcg::classify_presentation(n_f, g_order, k);
}

int cmd_metacyclic_element_type(const std::string& pres_text, long long i,
                                long long j, const std::string& format) {
  mcg::PresentationClass pres = parse_presentation(pres_text);
  mcg::ElementType type = mcg::element_type(i, j, pres);
  if (format == "json") {
    emit({{"status", "ok"},
          {"presentation", mcg::to_text(pres)},
          {"periodic", type.periodic},
          {"order", type.order}},
         format);
  } else if (type.periodic) {
    std::cout << "periodic of order " << type.order << "\n";
  } else {
    std::cout << "infinite order\n";
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------
// homology
// ---------------------------------------------------------------------------

struct HomologyContext {
  mcg::SkewForm form;
  std::map<std::string, std::vector<mcg::Int>> classes;
  std::map<std::string, mcg::IntMatrix> named;
};

std::vector<mcg::Int> basis_vector(int dim, int index) {
  std::vector<mcg::Int> v(dim);
  v[index] = 1;
  return v;
}

// Polygon basis a1..a2g plus the chain classes c1..c2g of the Penner word
// (c_i = a_i + a_{i+1}, c_2g = a_2g - a_1), plus the rotation "R".
HomologyContext polygon_context(long long g) {
  HomologyContext ctx;
  ctx.form = mcg::intersection_form(mcg::polygon_word(g));
  const int dim = static_cast<int>(2 * g);
  for (int i = 0; i < dim; ++i)
    ctx.classes[ctx.form.labels[i]] = basis_vector(dim, i);
  for (long long i = 1; i < 2 * g; ++i) {
    std::vector<mcg::Int> c(dim);
    c[i - 1] = 1;
    c[i] = 1;
    ctx.classes["c" + std::to_string(i)] = std::move(c);
  }
  std::vector<mcg::Int> last(dim);
  last[dim - 1] = 1;
  last[0] = -1;
  ctx.classes["c" + std::to_string(2 * g)] = std::move(last);
  ctx.named["R"] = mcg::rotation_matrix(g);
  return ctx;
}

HomologyContext chain_context(long long g) {
  HomologyContext ctx;
  ctx.form = mcg::chain_form(g);
  const int dim = static_cast<int>(2 * g + 1);
  for (int i = 0; i < dim; ++i)
    ctx.classes[ctx.form.labels[i]] = basis_vector(dim, i);
  return ctx;
}

HomologyContext context_for(const std::string& basis, long long g) {
  if (basis == "polygon") return polygon_context(g);
  if (basis == "chain") return chain_context(g);
  throw mcg::ParseError("basis must be 'polygon' or 'chain'", 0);
}

mcg::TwistWord word_from_json(const json& j) {
  mcg::TwistWord word;
  for (const auto& factor : j)
    word.factors.emplace_back(factor.at(0).get<std::string>(),
                              factor.at(1).get<long long>());
  return word;
}

// Positive twists on the odd chain curves (pairwise disjoint), negative on
// the even ones; the rotation carries the odd system to the even system, so
// it conjugates this product to its inverse.
mcg::TwistWord penner_word(long long g) {
  mcg::TwistWord word;
  for (long long i = 1; i <= 2 * g; i += 2)
    word.factors.emplace_back("c" + std::to_string(i), 1);
  for (long long i = 2; i <= 2 * g; i += 2)
    word.factors.emplace_back("c" + std::to_string(i), -1);
  return word;
}

struct CheckOutcome {
  bool pass = true;
  std::vector<std::string> lines;

  void record(const std::string& what, bool ok) {
    pass = pass && ok;
    lines.push_back(what + ": " + (ok ? "pass" : "FAIL"));
  }
};

CheckOutcome run_polygon_relation(long long g, bool with_relation) {
  CheckOutcome out;
  mcg::IntMatrix rotation = mcg::rotation_matrix(g);
  mcg::OrderResult order = mcg::order_on_homology(rotation);
  out.record("rotation order " + std::to_string(4 * g),
             order.finite && order.order == 4 * g);
  out.record("M^2g = -I", rotation.pow(2 * g) == -mcg::IntMatrix::identity(
                                                      static_cast<int>(2 * g)));
  if (!with_relation) return out;
  HomologyContext ctx = polygon_context(g);
  mcg::IntMatrix f =
      mcg::word_matrix(penner_word(g), ctx.form, ctx.classes, ctx.named);
  out.record("relation G^-1 F G = F^-1",
             mcg::check_relation(f, rotation, -1));
  out.record("relation (G^2)^-1 F G^2 = F",
             mcg::check_relation(f, rotation * rotation, +1));
  mcg::OrderResult f_order = mcg::order_on_homology(f);
  out.record("F infinite order (" +
                 (f_order.finite ? std::string("finite!") : f_order.certificate) +
                 ")",
             !f_order.finite);
  return out;
}

int cmd_homology_polygon(long long g, bool with_relation,
                         const std::string& format) {
  CheckOutcome out = run_polygon_relation(g, with_relation);
  if (format == "json") {
    emit({{"status", out.pass ? "ok" : "violation"}, {"checks", out.lines}},
         format);
  } else {
    for (const std::string& line : out.lines) std::cout << line << "\n";
  }
  return out.pass ? kExitPass : kExitViolation;
}

CheckOutcome run_twist_word_fixture(const json& fixture) {
  CheckOutcome out;
  const long long g = fixture.at("genus").get<long long>();
  HomologyContext ctx = context_for(fixture.value("basis", "chain"), g);
  mcg::IntMatrix m =
      mcg::word_matrix(word_from_json(fixture.at("word")), ctx.form,
                       ctx.classes, ctx.named);
  if (fixture.contains("level_m")) {
    const long long mod = fixture.at("level_m").get<long long>();
    const bool expect = fixture.value("expect_member", true);
    out.record("level-" + std::to_string(mod) + " membership " +
                   (expect ? "(member)" : "(non-member)"),
               mcg::level_m_member(m, mod) == expect);
  }
  if (fixture.value("commutes_with_hyperelliptic", false)) {
    // The hyperelliptic involution acts as -I on homology.
    mcg::IntMatrix minus = -mcg::IntMatrix::identity(m.rows());
    out.record("commutes with hyperelliptic (-I)", m * minus == minus * m);
  }
  if (fixture.contains("expect_finite")) {
    mcg::OrderResult order = mcg::order_on_homology(m);
    out.record("finite-order expectation",
               order.finite == fixture.at("expect_finite").get<bool>());
  }
  return out;
}

CheckOutcome run_rotation_level_fixture(const json& fixture) {
  CheckOutcome out;
  const long long g = fixture.at("genus").get<long long>();
  const long long mod = fixture.at("level_m").get<long long>();
  const bool expect = fixture.value("expect_member", false);
  out.record("rotation level-" + std::to_string(mod) + " membership",
             mcg::level_m_member(mcg::rotation_matrix(g), mod) == expect);
  return out;
}

CheckOutcome run_assembly_fixture(const json& fixture) {
  CheckOutcome out;
  std::vector<std::pair<mcg::CyclicDataSet, long long>> components;
  for (const auto& c : fixture.at("components"))
    components.emplace_back(mcg::data_set_from_json(c.at("data_set")),
                            c.value("size", 1LL));
  std::vector<mcg::PairingSpec> pairings;
  for (const auto& p : fixture.at("pairings"))
    pairings.push_back({orbit_ref_from_json(p.at("a")), orbit_ref_from_json(p.at("b"))});
  const json& expect = fixture.at("expect");
  long long N = fixture.contains("degree")
                    ? fixture.at("degree").get<long long>()
                    : mcg::minimal_degree(components, pairings);
  mcg::PseudoPeriodicDataSet pds = mcg::assemble(components, pairings, N);
  if (expect.contains("degree"))
    out.record("degree " + std::to_string(expect.at("degree").get<long long>()),
               pds.degree == expect.at("degree").get<long long>());
  if (expect.contains("genus"))
    out.record("genus " + std::to_string(expect.at("genus").get<long long>()),
               mcg::total_genus(pds) == expect.at("genus").get<long long>());
  if (expect.contains("q")) {
    std::vector<long long> q;
    for (const auto& [index, value] : mcg::multitwist_of(pds)) q.push_back(value);
    out.record("exponents", q == expect.at("q").get<std::vector<long long>>());
  }
  return out;
}

CheckOutcome run_fixture(const json& fixture) {
  const std::string kind = fixture.at("kind").get<std::string>();
  if (kind == "polygon_relation")
    return run_polygon_relation(fixture.at("genus").get<long long>(),
                                fixture.value("relation", true));
  if (kind == "twist_word") return run_twist_word_fixture(fixture);
  if (kind == "rotation_level") return run_rotation_level_fixture(fixture);
  if (kind == "assembly_spec") return run_assembly_fixture(fixture);
  throw mcg::ParseError("unknown fixture kind '" + kind + "'", 0);
}

int cmd_homology_fixtures(const std::string& dir, const std::string& format) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw mcg::ParseError("no fixtures found in '" + dir + "'", 0);
  bool all_pass = true;
  json report = json::array();
  const std::set<std::string> homology_kinds = {
      "polygon_relation", "twist_word", "rotation_level", "assembly_spec"};
  for (const fs::path& file : files) {
    json fixture = load_json_file(file.string());
    // Configured-pair fixtures are exercised by `metacyclic check`.
    if (!homology_kinds.count(fixture.at("kind").get<std::string>())) continue;
    CheckOutcome out = run_fixture(fixture);
    all_pass = all_pass && out.pass;
    report.push_back({{"fixture", file.filename().string()},
                      {"pass", out.pass},
                      {"checks", out.lines}});
    if (format != "json") {
      std::cout << file.filename().string() << ": "
                << (out.pass ? "pass" : "FAIL") << "\n";
      for (const std::string& line : out.lines) std::cout << "  " << line << "\n";
    }
  }
  emit({{"status", all_pass ? "ok" : "violation"}, {"fixtures", report}}, format);
  return all_pass ? kExitPass : kExitViolation;
}

int cmd_homology_level(long long mod, const std::string& path,
                       const std::string& format) {
  json fixture = load_json_file(path);
  const long long g = fixture.at("genus").get<long long>();
  HomologyContext ctx = context_for(fixture.value("basis", "chain"), g);
  mcg::IntMatrix m =
      mcg::word_matrix(word_from_json(fixture.at("word")), ctx.form,
                       ctx.classes, ctx.named);
  bool member = mcg::level_m_member(m, mod);
  if (format == "json")
    emit({{"status", member ? "ok" : "violation"}, {"member", member}}, format);
  else
    std::cout << (member ? "member" : "non-member") << "\n";
  return member ? kExitPass : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cyclic data sets, multitwist assembly, and infinite metacyclic "
               "subgroups of mapping class groups"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json", "tsv"}));

  // enumerate
  long long genus_arg = 2;
  std::optional<long long> order_arg;
  bool irreducible_only = false;
  CLI::App* enumerate = app.add_subcommand("enumerate", "List cyclic data sets");
  enumerate->add_option("--genus", genus_arg)->required()->check(CLI::Range(2LL, 64LL));
  enumerate->add_option("--order", order_arg);
  enumerate->add_flag("--irreducible-only", irreducible_only);

  std::string literal;
  CLI::App* validate = app.add_subcommand("validate", "Check the defining conditions");
  validate->add_option("literal", literal)->required();
  CLI::App* genus_cmd = app.add_subcommand("genus", "Genus of the covering surface");
  genus_cmd->add_option("literal", literal)->required();
  CLI::App* irreducible = app.add_subcommand("irreducible", "Irreducibility test");
  irreducible->add_option("literal", literal)->required();

  std::string orbit_a, orbit_b;
  long long deg_a = 0, deg_b = 0;
  CLI::App* twist = app.add_subcommand("twist-factor", "Twist factor of a glued pair");
  twist->add_option("a", orbit_a)->required();
  twist->add_option("b", orbit_b)->required();
  twist->add_option("--deg-a", deg_a, "Ambient degree of the first orbit");
  twist->add_option("--deg-b", deg_b, "Ambient degree of the second orbit");

  std::string file_arg;
  CLI::App* assemble = app.add_subcommand("assemble", "Assemble a pseudo-periodic data set");
  assemble->add_option("spec", file_arg)->required();

  CLI::App* metacyclic = app.add_subcommand("metacyclic", "Metacyclic decision procedures");
  metacyclic->require_subcommand(1);
  std::optional<long long> level_m_arg;
  CLI::App* mc_check = metacyclic->add_subcommand("check", "Decide a configured pair");
  mc_check->add_option("pair", file_arg)->required();
  mc_check->add_option("--level-m", level_m_arg, "Run the level-m constraint instead");
  std::optional<long long> a_arg, b_arg;
  CLI::App* mc_zm = metacyclic->add_subcommand("search-zm", "Z x Z_m divisor search");
  mc_zm->add_option("literal", literal)->required();
  mc_zm->add_option("--a", a_arg);
  mc_zm->add_option("--b", b_arg);
  std::vector<int> slot_args;
  CLI::App* mc_dihedral = metacyclic->add_subcommand("dihedral", "Root-of-twist extension");
  mc_dihedral->add_option("literal", literal)->required();
  mc_dihedral->add_option("--slots", slot_args, "Two cone-slot indices")->expected(2);
  CLI::App* mc_bounds = metacyclic->add_subcommand("bounds", "Order-bound sweep");
  mc_bounds->add_option("--genus", genus_arg)->required()->check(CLI::Range(2LL, 16LL));
  CLI::App* mc_centralizer = metacyclic->add_subcommand("centralizer", "Centralizer class");
  mc_centralizer->add_option("literal", literal)->required();
  std::string pres_arg;
  long long i_arg = 0, j_arg = 0;
  CLI::App* mc_type = metacyclic->add_subcommand("element-type", "Type of G^i F^j");
  mc_type->add_option("--pres", pres_arg)->required();
  mc_type->add_option("--i", i_arg)->required();
  mc_type->add_option("--j", j_arg)->required();

  CLI::App* homology = app.add_subcommand("homology", "Homology representation checks");
  homology->require_subcommand(1);
  bool relation_flag = false;
  CLI::App* h_polygon = homology->add_subcommand("polygon", "Rotation of the 4g-gon");
  h_polygon->add_option("--genus", genus_arg)->required()->check(CLI::Range(2LL, 16LL));
  h_polygon->add_flag("--relation", relation_flag, "Also check the Penner relation");
  std::string fixtures_dir = "fixtures";
  bool all_flag = false;
  CLI::App* h_fixtures = homology->add_subcommand("fixtures", "Fixture corpus");
  CLI::App* h_run = h_fixtures->add_subcommand("run", "Run fixtures")->fallthrough();
  h_run->add_flag("--all", all_flag);
  h_run->add_option("--dir", fixtures_dir, "Fixture directory");
  long long level_mod = 2;
  CLI::App* h_level = homology->add_subcommand("level", "Level-m membership of a word");
  h_level->add_option("--m", level_mod)->required();
  h_level->add_option("word", file_arg)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*enumerate)
      return cmd_enumerate(genus_arg, order_arg, irreducible_only, format);
    if (*validate) return cmd_validate(literal, format);
    if (*genus_cmd) return cmd_genus(literal, format);
    if (*irreducible) return cmd_irreducible(literal, format);
    if (*twist) return cmd_twist_factor(orbit_a, orbit_b, deg_a, deg_b, format);
    if (*assemble) return cmd_assemble(file_arg, format);
    if (*mc_check) return cmd_metacyclic_check(file_arg, level_m_arg, format);
    if (*mc_zm) return cmd_metacyclic_search_zm(literal, a_arg, b_arg, format);
    if (*mc_dihedral) {
      std::optional<std::pair<int, int>> slots;
      if (slot_args.size() == 2) slots = {slot_args[0], slot_args[1]};
      return cmd_metacyclic_dihedral(literal, slots, format);
    }
    if (*mc_bounds) return cmd_metacyclic_bounds(genus_arg, format);
    if (*mc_centralizer) return cmd_metacyclic_centralizer(literal, format);
    if (*mc_type)
      return cmd_metacyclic_element_type(pres_arg, i_arg, j_arg, format);
    if (*h_polygon) return cmd_homology_polygon(genus_arg, relation_flag, format);
    if (*h_run) return cmd_homology_fixtures(fixtures_dir, format);
    if (*h_level) return cmd_homology_level(level_mod, file_arg, format);
  } catch (const mcg::ParseError& e) {
    std::cerr << "parse error: " << e.what() << " (position " << e.position()
              << ")\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitUsage;
}
