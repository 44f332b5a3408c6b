#include "mcg/metacyclic.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace mcg {

namespace {

long long positive_mod(long long a, long long m) {
  long long v = a % m;
  return v < 0 ? v + m : v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Presentations and element types.
// ---------------------------------------------------------------------------

std::string to_text(const PresentationClass& pres) {
  std::ostringstream os;
  switch (pres.kind) {
    case PresentationKind::ZSemiZ:
      if (pres.k == 1)
        os << "Z x Z";
      else
        os << "Z x|_-1 Z";
      break;
    case PresentationKind::ZSemiZ2m:
      os << "Z x|_-1 Z_" << 2 * pres.m;
      break;
    case PresentationKind::ZnSemiZ:
      if (pres.k == 1)
        os << "Z_" << pres.n << " x Z";
      else
        os << "Z_" << pres.n << " x|_" << pres.k << " Z";
      break;
  }
  return os.str();
}

PresentationClass classify_presentation(
    std::optional<long long> n_f, std::optional<long long> g_order, long long k,
    std::optional<std::pair<long long, long long>> power_relation) {
  if (n_f && g_order)
    throw EngineError("both generators finite: the group is not infinite metacyclic");
  if (power_relation && !n_f && g_order && power_relation->first != 0 &&
      power_relation->second == 0)
    throw EngineError("power relation F^r = 1 contradicts an infinite F");

  PresentationClass pres;
  if (n_f) {
    // F periodic of order n, G of infinite order.
    if (*n_f < 2) throw EngineError("finite order must be at least 2");
    pres.kind = PresentationKind::ZnSemiZ;
    pres.n = *n_f;
    pres.k = positive_mod(k, pres.n);
    if (std::gcd(pres.k, pres.n) != 1)
      throw EngineError("conjugation exponent must be a unit modulo n");
    return pres;
  }
  if (k != 1 && k != -1)
    throw EngineError("conjugation exponent must be +-1 for an infinite F");
  if (!g_order) {
    pres.kind = PresentationKind::ZSemiZ;
    pres.k = k;
    return pres;
  }
  if (*g_order < 2) throw EngineError("finite order must be at least 2");
  if (k == -1) {
    if (*g_order % 2 != 0)
      throw EngineError("an odd-order G cannot invert an infinite F");
    pres.kind = PresentationKind::ZSemiZ2m;
    pres.m = *g_order / 2;
    pres.k = -1;
    return pres;
  }
  // Z x Z_t in canonical metacyclic form Z_t x| Z with the roles swapped.
  pres.kind = PresentationKind::ZnSemiZ;
  pres.n = *g_order;
  pres.k = 1;
  return pres;
}

ElementType element_type(long long i, long long j,
                         const PresentationClass& pres) {
  ElementType type;
  switch (pres.kind) {
    case PresentationKind::ZSemiZ:
      // Nontrivial elements are all of infinite order (torsion-free group).
      type.periodic = (i == 0 && j == 0);
      type.order = type.periodic ? 1 : 0;
      return type;
    case PresentationKind::ZSemiZ2m: {
      const long long g_order = 2 * pres.m;
      const long long order_gi = g_order / std::gcd(positive_mod(i, g_order), g_order);
      if (j == 0) {
        type.periodic = true;
        type.order = order_gi;
        return type;
      }
      // For odd i the geometric sum 1 + k^i + ... telescopes to 0 over one
      // period of G^i, so G^i F^j has the order of G^i; for even i the F
      // exponent grows linearly.
      if (positive_mod(i, 2) == 1) {
        type.periodic = true;
        type.order = order_gi;
      }
      return type;
    }
    case PresentationKind::ZnSemiZ:
      if (i != 0) return type;  // the G exponent grows without bound
      type.periodic = true;
      type.order = pres.n / std::gcd(positive_mod(j, pres.n), pres.n);
      return type;
  }
  throw EngineError("unknown presentation kind");
}

// ---------------------------------------------------------------------------
// Induced orbifold automorphisms.
// ---------------------------------------------------------------------------

std::optional<AutKWitness> autk_exists(const CyclicDataSet& ds, long long k) {
  k = positive_mod(k, ds.n);
  if (std::gcd(k, ds.n) != 1)
    throw EngineError("Aut_k exponent must be a unit modulo the degree");
  const int slots = static_cast<int>(ds.cone.size());
  AutKWitness witness;
  witness.k = k;
  witness.pairing.assign(slots, -1);
  std::vector<int> used(slots, 0);
  for (int x = 0; x < slots; ++x) {
    // Slot x may map to any unused slot y of the same order with
    // d_x = k * d_y (mod m); matching on the exact residue value suffices.
    const long long m = ds.cone[x].m;
    const long long want = positive_mod(mod_inverse(k, m) * ds.cone[x].d, m);
    int match = -1;
    for (int y = 0; y < slots; ++y) {
      if (used[y] || ds.cone[y].m != m) continue;
      if (ds.cone[y].d == want) {
        match = y;
        break;
      }
    }
    if (match < 0) return std::nullopt;
    used[match] = 1;
    witness.pairing[x] = match;
  }
  return witness;
}

// ---------------------------------------------------------------------------
// Configured pairs.
// ---------------------------------------------------------------------------

namespace {

bool in_cf(const PairEdge& e) {
  return e.membership != CurveMembership::G;
}

bool in_cg(const PairEdge& e) {
  return e.membership != CurveMembership::F;
}

void check_permutation(const std::vector<int>& perm, std::size_t size,
                       const std::string& name) {
  if (perm.size() != size)
    throw EngineError("permutation " + name + " has the wrong length");
  std::vector<int> seen(size, 0);
  for (int image : perm) {
    if (image < 0 || static_cast<std::size_t>(image) >= size || seen[image])
      throw EngineError("permutation " + name + " is not a bijection");
    seen[image] = 1;
  }
}

void check_structure(const ConfiguredPair& pair) {
  if (pair.vertices.empty()) throw EngineError("configured pair has no vertices");
  for (const PairEdge& e : pair.edges) {
    auto in_range = [&](int v) {
      return v >= 0 && static_cast<std::size_t>(v) < pair.vertices.size();
    };
    if (!in_range(e.va) || !in_range(e.vb))
      throw EngineError("edge endpoint out of range");
    if (in_cf(e) && e.q == 0)
      throw EngineError("a curve of C(F) carries exponent 0");
    if (in_cg(e) && e.q_prime == 0)
      throw EngineError("a curve of C(G) carries exponent 0");
  }
  check_permutation(pair.pi_f_vertices, pair.vertices.size(), "pi_F (vertices)");
  check_permutation(pair.pi_f_edges, pair.edges.size(), "pi_F (edges)");
  check_permutation(pair.pi_g_vertices, pair.vertices.size(), "pi_G (vertices)");
  check_permutation(pair.pi_g_edges, pair.edges.size(), "pi_G (edges)");
  // Incidence preservation.
  auto check_incidence = [&](const std::vector<int>& pv,
                             const std::vector<int>& pe,
                             const std::string& name) {
    for (std::size_t e = 0; e < pair.edges.size(); ++e) {
      const PairEdge& src = pair.edges[e];
      const PairEdge& dst = pair.edges[pe[e]];
      std::pair<int, int> want = std::minmax(pv[src.va], pv[src.vb]);
      std::pair<int, int> have = std::minmax(dst.va, dst.vb);
      if (want != have)
        throw EngineError("permutation " + name + " breaks edge incidence");
    }
  };
  check_incidence(pair.pi_f_vertices, pair.pi_f_edges, "pi_F");
  check_incidence(pair.pi_g_vertices, pair.pi_g_edges, "pi_G");

  if (pair.m < 1) throw EngineError("degree of G must be positive");
  if (pair.n == 0) {
    if (pair.k != 1 && pair.k != -1)
      throw EngineError("an infinite-order F admits only k = +-1");
  } else {
    if (pair.n < 2 || std::gcd(positive_mod(pair.k, pair.n), pair.n) != 1)
      throw EngineError("k must be a unit modulo the order of F");
    for (const PairVertex& v : pair.vertices)
      if (v.f.kind == PartKind::PseudoAnosov)
        throw EngineError("a periodic F cannot have pseudo-Anosov components");
  }
  for (const PairVertex& v : pair.vertices) {
    for (const ComponentPart* part : {&v.f, &v.g}) {
      if (part->kind == PartKind::Periodic && !validate(part->data_set).pass())
        throw EngineError("component data set fails validation: " +
                          to_text(part->data_set));
    }
  }
}

// k^p collapsed to +-1; only called when F has infinite order (k = +-1).
long long sign_power(long long k, long long p) {
  return (k == -1 && p % 2 == 1) ? -1 : 1;
}

std::string pa_lookup(const ConfiguredPair& pair, const std::string& id,
                      long long exponent) {
  auto it = pair.pa_conjugacy.find({id, exponent});
  if (it == pair.pa_conjugacy.end())
    throw EngineError("missing power-conjugacy table entry for (" + id + ", " +
                      std::to_string(exponent) + ")");
  return it->second;
}

std::vector<std::vector<int>> vertex_orbits(const std::vector<int>& perm) {
  std::vector<std::vector<int>> orbits;
  std::vector<int> seen(perm.size(), 0);
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start]) continue;
    std::vector<int> orbit;
    int v = static_cast<int>(start);
    while (!seen[v]) {
      seen[v] = 1;
      orbit.push_back(v);
      v = perm[v];
    }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

}  // namespace

Main2Verdict check_main2(const ConfiguredPair& pair) {
  check_structure(pair);
  Main2Verdict verdict;

  // (i) The curves are encoded as one shared edge set, so the union being a
  // multicurve holds by construction.
  verdict.conditions[0].detail = "multicurve structure holds by encoding";

  // (ii) k^m = 1 (mod n) for a periodic F.
  if (pair.n > 0) {
    if (mod_pow(pair.k, pair.m, pair.n) != 1) {
      verdict.conditions[1].pass = false;
      verdict.conditions[1].detail = "k^m != 1 (mod n)";
    }
  } else {
    verdict.conditions[1].detail = "not applicable: F has infinite order";
  }

  // (iii) pi_G swaps the exponent classes A_i <-> B_i of C(F); pi_F fixes
  // each exponent class C_i of C(G).
  {
    std::map<long long, std::set<int>> f_classes, g_classes;
    for (std::size_t e = 0; e < pair.edges.size(); ++e) {
      if (in_cf(pair.edges[e])) f_classes[pair.edges[e].q].insert(static_cast<int>(e));
      if (in_cg(pair.edges[e])) g_classes[pair.edges[e].q_prime].insert(static_cast<int>(e));
    }
    for (const auto& [value, a_class] : f_classes) {
      std::set<int> image;
      for (int e : a_class) image.insert(pair.pi_g_edges[e]);
      auto b_it = f_classes.find(pair.k * value);
      if (b_it == f_classes.end() || image != b_it->second) {
        verdict.conditions[2].pass = false;
        verdict.conditions[2].detail =
            "pi_G does not map the q=" + std::to_string(value) +
            " class onto the q=" + std::to_string(pair.k * value) + " class";
        break;
      }
    }
    if (verdict.conditions[2].pass) {
      for (const auto& [value, c_class] : g_classes) {
        std::set<int> image;
        for (int e : c_class) image.insert(pair.pi_f_edges[e]);
        if (image != c_class) {
          verdict.conditions[2].pass = false;
          verdict.conditions[2].detail =
              "pi_F does not fix the q'=" + std::to_string(value) + " class";
          break;
        }
      }
    }
  }

  // (iv) On each pi_G-orbit of components of size p: the return map must
  // conjugate F_r to F_r^{k^p}. Periodic parts are checked at
  // necessary-condition strength (power invariance + Aut_k witness).
  for (const auto& orbit : vertex_orbits(pair.pi_g_vertices)) {
    const long long p = static_cast<long long>(orbit.size());
    for (int v : orbit) {
      const ComponentPart& part = pair.vertices[v].f;
      if (part.kind == PartKind::Identity) continue;
      if (part.kind == PartKind::PseudoAnosov) {
        const long long exponent = sign_power(pair.k, p);
        if (pa_lookup(pair, part.pa_id, exponent) != part.pa_id) {
          verdict.conditions[3].pass = false;
          verdict.conditions[3].detail =
              "component " + part.pa_id + " is not conjugate to its k^p power";
        }
        continue;
      }
      verdict.conditions[3].certification = Certification::NecessaryConditions;
      const long long order = part.data_set.n;
      if (std::gcd(positive_mod(pair.k, order), order) != 1) {
        verdict.conditions[3].pass = false;
        verdict.conditions[3].detail = "k is not a unit modulo a component order";
        continue;
      }
      const long long exponent = mod_pow(pair.k, p, order);
      if (power(part.data_set, exponent) != part.data_set ||
          !autk_exists(part.data_set, exponent)) {
        verdict.conditions[3].pass = false;
        verdict.conditions[3].detail =
            "component " + to_text(part.data_set) +
            " fails the k^p power/Aut_k check (p=" + std::to_string(p) + ")";
      }
    }
  }

  // (v) pi_G-related components R -> S require F_r^k conjugate to F_s.
  for (std::size_t r = 0; r < pair.vertices.size(); ++r) {
    const int s = pair.pi_g_vertices[r];
    if (static_cast<std::size_t>(s) == r) continue;
    const ComponentPart& fr = pair.vertices[r].f;
    const ComponentPart& fs = pair.vertices[s].f;
    if (fr.kind != fs.kind) {
      verdict.conditions[4].pass = false;
      verdict.conditions[4].detail = "pi_G relates components of different kinds";
      continue;
    }
    switch (fr.kind) {
      case PartKind::Identity:
        break;
      case PartKind::Periodic: {
        const long long order = fr.data_set.n;
        if (std::gcd(positive_mod(pair.k, order), order) != 1 ||
            power(fr.data_set, positive_mod(pair.k, order)) != fs.data_set) {
          verdict.conditions[4].pass = false;
          verdict.conditions[4].detail =
              "power(" + to_text(fr.data_set) + ", k) != " + to_text(fs.data_set);
        }
        break;
      }
      case PartKind::PseudoAnosov:
        if (pa_lookup(pair, fr.pa_id, pair.k) != fs.pa_id) {
          verdict.conditions[4].pass = false;
          verdict.conditions[4].detail =
              fr.pa_id + "^k is not conjugate to " + fs.pa_id;
        }
        break;
    }
  }

  for (const ConditionResult& c : verdict.conditions) {
    verdict.pass = verdict.pass && c.pass;
    if (c.certification == Certification::NecessaryConditions)
      verdict.certification = Certification::NecessaryConditions;
  }
  return verdict;
}

LevelMVerdict check_level_m(const ConfiguredPair& pair, long long m) {
  check_structure(pair);
  if (m <= 2)
    throw EngineError("level-m analysis requires m > 2 (torsion-free level)");
  LevelMVerdict verdict;
  if (pair.k != 1) {
    verdict.pass = false;
    verdict.reasons.push_back("level-m mapping classes commute: k must be 1");
  }
  for (std::size_t v = 0; v < pair.vertices.size(); ++v) {
    const PairVertex& vertex = pair.vertices[v];
    for (const auto& [part, who] :
         {std::pair{&vertex.f, "F"}, std::pair{&vertex.g, "G"}}) {
      if (part->kind == PartKind::Periodic) {
        verdict.pass = false;
        verdict.reasons.push_back(
            std::string("nontrivial ") + who + "-component on vertex " +
            std::to_string(v) + " is periodic, not pseudo-Anosov");
      }
    }
    if (vertex.f.kind == PartKind::PseudoAnosov &&
        vertex.g.kind == PartKind::PseudoAnosov) {
      const bool certified =
          std::any_of(pair.certificates.begin(), pair.certificates.end(),
                      [&](const CyclicCertificate& c) {
                        return c.vertex == static_cast<int>(v);
                      });
      if (!certified)
        throw EngineError("vertex " + std::to_string(v) +
                          " has same-support parts without a cyclic certificate");
    }
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// JSON encoding of configured pairs.
// ---------------------------------------------------------------------------

namespace {

nlohmann::json part_to_json(const ComponentPart& part) {
  switch (part.kind) {
    case PartKind::Identity:
      return {{"type", "identity"}};
    case PartKind::Periodic:
      return {{"type", "periodic"}, {"data_set", to_json(part.data_set)}};
    case PartKind::PseudoAnosov:
      return {{"type", "pseudo_anosov"}, {"id", part.pa_id}};
  }
  throw EngineError("unknown part kind");
}

ComponentPart part_from_json(const nlohmann::json& j) {
  ComponentPart part;
  const std::string type = j.at("type").get<std::string>();
  if (type == "identity") {
    part.kind = PartKind::Identity;
  } else if (type == "periodic") {
    part.kind = PartKind::Periodic;
    part.data_set = data_set_from_json(j.at("data_set"));
  } else if (type == "pseudo_anosov") {
    part.kind = PartKind::PseudoAnosov;
    part.pa_id = j.at("id").get<std::string>();
  } else {
    throw EngineError("unknown component type '" + type + "'");
  }
  return part;
}

std::string membership_name(CurveMembership m) {
  switch (m) {
    case CurveMembership::F: return "F";
    case CurveMembership::G: return "G";
    case CurveMembership::Both: return "both";
  }
  throw EngineError("unknown membership");
}

CurveMembership membership_from_name(const std::string& name) {
  if (name == "F") return CurveMembership::F;
  if (name == "G") return CurveMembership::G;
  if (name == "both") return CurveMembership::Both;
  throw EngineError("unknown membership '" + name + "'");
}

}  // namespace

nlohmann::json to_json(const ConfiguredPair& pair) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const PairVertex& v : pair.vertices)
    vertices.push_back({{"genus", v.genus},
                        {"f_part", part_to_json(v.f)},
                        {"g_part", part_to_json(v.g)}});
  nlohmann::json edges = nlohmann::json::array();
  for (const PairEdge& e : pair.edges) {
    nlohmann::json edge = {{"ends", {e.va, e.vb}},
                           {"membership", membership_name(e.membership)}};
    if (in_cf(e)) edge["q"] = e.q;
    if (in_cg(e)) edge["q_prime"] = e.q_prime;
    edges.push_back(edge);
  }
  nlohmann::json table = nlohmann::json::array();
  for (const auto& [key, value] : pair.pa_conjugacy)
    table.push_back({{"id", key.first}, {"exponent", key.second}, {"conjugate", value}});
  nlohmann::json certificates = nlohmann::json::array();
  for (const CyclicCertificate& c : pair.certificates)
    certificates.push_back({{"vertex", c.vertex},
                            {"root", c.root},
                            {"f_exponent", c.f_exponent},
                            {"g_exponent", c.g_exponent}});
  return {{"kind", "configured_pair"},
          {"n", pair.n},
          {"m", pair.m},
          {"k", pair.k},
          {"vertices", vertices},
          {"edges", edges},
          {"pi_f", {{"vertices", pair.pi_f_vertices}, {"edges", pair.pi_f_edges}}},
          {"pi_g", {{"vertices", pair.pi_g_vertices}, {"edges", pair.pi_g_edges}}},
          {"pa_conjugacy", table},
          {"certificates", certificates}};
}

ConfiguredPair configured_pair_from_json(const nlohmann::json& j) {
  ConfiguredPair pair;
  pair.n = j.at("n").get<long long>();
  pair.m = j.at("m").get<long long>();
  pair.k = j.at("k").get<long long>();
  for (const auto& v : j.at("vertices")) {
    PairVertex vertex;
    vertex.genus = v.value("genus", 0LL);
    vertex.f = part_from_json(v.at("f_part"));
    vertex.g = part_from_json(v.at("g_part"));
    pair.vertices.push_back(std::move(vertex));
  }
  for (const auto& e : j.at("edges")) {
    PairEdge edge;
    edge.va = e.at("ends").at(0).get<int>();
    edge.vb = e.at("ends").at(1).get<int>();
    edge.membership = membership_from_name(e.at("membership").get<std::string>());
    edge.q = e.value("q", 0LL);
    edge.q_prime = e.value("q_prime", 0LL);
    pair.edges.push_back(edge);
  }
  pair.pi_f_vertices = j.at("pi_f").at("vertices").get<std::vector<int>>();
  pair.pi_f_edges = j.at("pi_f").at("edges").get<std::vector<int>>();
  pair.pi_g_vertices = j.at("pi_g").at("vertices").get<std::vector<int>>();
  pair.pi_g_edges = j.at("pi_g").at("edges").get<std::vector<int>>();
  for (const auto& entry : j.value("pa_conjugacy", nlohmann::json::array()))
    pair.pa_conjugacy[{entry.at("id").get<std::string>(),
                      entry.at("exponent").get<long long>()}] =
        entry.at("conjugate").get<std::string>();
  for (const auto& entry : j.value("certificates", nlohmann::json::array())) {
    CyclicCertificate c;
    c.vertex = entry.at("vertex").get<int>();
    c.root = entry.at("root").get<std::string>();
    c.f_exponent = entry.at("f_exponent").get<long long>();
    c.g_exponent = entry.at("g_exponent").get<long long>();
    pair.certificates.push_back(std::move(c));
  }
  return pair;
}

// ---------------------------------------------------------------------------
// Constructive searches and enumerative verification.
// ---------------------------------------------------------------------------

std::vector<ZmWitness> search_abelian_zm(const CyclicDataSet& ds, long long a,
                                         long long b) {
  const long long n = ds.n;
  auto count_slot = [&](long long d) {
    return std::count(ds.cone.begin(), ds.cone.end(), ConeDatum{d, n});
  };
  const long long needed = (a == b) ? 2 : 1;
  if (count_slot(a) < needed || count_slot(b) < needed ||
      (a != b && count_slot(b) < 1))
    throw EngineError("data set lacks the full-order cone points (a,n), (b,n)");

  std::vector<ZmWitness> hits;
  const long long k_prime = positive_mod(mod_inverse(a, n) + mod_inverse(b, n), n);
  if (k_prime == 0) return hits;
  for (long long m = 1; m < n; ++m) {
    if (n % m != 0 || std::gcd(m, n / m) != 1) continue;
    const long long cofactor = n / m;
    if (positive_mod(a + b, m) != 0) continue;
    if (positive_mod(a + b - k_prime, cofactor) != 0) continue;
    hits.push_back({m, k_prime, positive_mod(a + b, cofactor)});
  }
  return hits;
}

DihedralReport search_dihedral_extension(
    const CyclicDataSet& ds, std::optional<std::pair<int, int>> slots) {
  const long long g = genus(ds);
  if (ds.n < 3 || ds.n > 4 * g)
    throw EngineError("degree outside [3, 4g]");
  DihedralReport report;
  report.ambient_genus = 2 * g + 1;

  std::vector<int> full_order;
  for (std::size_t i = 0; i < ds.cone.size(); ++i)
    if (ds.cone[i].m == ds.n) full_order.push_back(static_cast<int>(i));

  int slot_a = -1, slot_b = -1;
  if (slots) {
    auto valid = [&](int s) {
      return std::find(full_order.begin(), full_order.end(), s) != full_order.end();
    };
    if (slots->first == slots->second || !valid(slots->first) || !valid(slots->second))
      throw EngineError("chosen slots are not two distinct full-order cone points");
    slot_a = slots->first;
    slot_b = slots->second;
  } else {
    // Prefer a repeated residue: it produces the periodic-normal-generator
    // presentation Z_n x|_-1 Z rather than Z x|_-1 Z_2.
    for (std::size_t i = 0; i < full_order.size() && slot_a < 0; ++i)
      for (std::size_t j = i + 1; j < full_order.size(); ++j)
        if (ds.cone[full_order[i]].d == ds.cone[full_order[j]].d) {
          slot_a = full_order[i];
          slot_b = full_order[j];
          break;
        }
    if (slot_a < 0 && full_order.size() >= 2) {
      slot_a = full_order[0];
      slot_b = full_order[1];
    }
  }
  if (slot_a < 0) return report;  // none
  report.a = ds.cone[slot_a].d;
  report.b = ds.cone[slot_b].d;
  report.kind = (report.a == report.b) ? DihedralKind::ZnSemiZ : DihedralKind::ZSemiZ2;
  return report;
}

BoundsReport verify_bounds(long long g) {
  BoundsReport report;
  auto all = enumerate_all(g);

  if (auto it = all.find(4 * g + 1); it != all.end() && !it->second.empty()) {
    report.no_degree_4g1 = false;
    report.counterexamples.push_back("degree 4g+1 data set " +
                                     to_text(it->second.front()));
  }
  if (auto it = all.find(4 * g + 2); it != all.end()) {
    for (const CyclicDataSet& ds : it->second)
      if (!is_irreducible(ds)) {
        report.degree_4g2_all_irreducible = false;
        report.counterexamples.push_back("reducible at degree 4g+2: " + to_text(ds));
      }
  }

  long long max_reducible = 0;
  for (const auto& [degree, sets] : all)
    for (const CyclicDataSet& ds : sets)
      if (!is_irreducible(ds)) max_reducible = std::max(max_reducible, degree);
  report.reducible_max_degree = max_reducible;

  if (g % 2 == 0) {
    // Even genus: the bound 2g+2 must be attained, only with the signature
    // (0; 2, 2, g+1, g+1), and nothing reducible sits strictly between 2g
    // and 2g+2.
    if (max_reducible != 2 * g + 2) {
      report.reducible_bound_ok = false;
      report.counterexamples.push_back("reducible max degree " +
                                       std::to_string(max_reducible) +
                                       " != 2g+2");
    }
    SignatureTuple expected{0, {2, 2, g + 1, g + 1}};
    if (auto it = all.find(2 * g + 2); it != all.end()) {
      for (const CyclicDataSet& ds : it->second)
        if (!is_irreducible(ds) && signature(ds) != expected) {
          report.reducible_bound_ok = false;
          report.counterexamples.push_back("unexpected signature at 2g+2: " +
                                           to_text(ds));
        }
    }
    if (auto it = all.find(2 * g + 1); it != all.end()) {
      for (const CyclicDataSet& ds : it->second)
        if (!is_irreducible(ds)) {
          report.reducible_bound_ok = false;
          report.counterexamples.push_back("reducible at degree 2g+1: " +
                                           to_text(ds));
        }
    }
  } else if (max_reducible > 2 * g) {
    report.reducible_bound_ok = false;
    report.counterexamples.push_back("odd genus reducible max degree " +
                                     std::to_string(max_reducible) + " > 2g");
  }
  return report;
}

CentralizerReport centralizer_class(const CyclicDataSet& ds) {
  if (!validate(ds).pass() || !is_irreducible(ds))
    throw EngineError("centralizer classification needs an irreducible data set");
  CentralizerReport report;
  report.genus = genus(ds);
  const long long g = report.genus;
  const long long n = ds.n;

  const bool all_distinct = ds.cone[0] != ds.cone[1] && ds.cone[1] != ds.cone[2] &&
                            ds.cone[0] != ds.cone[2];
  const bool all_equal = ds.cone[0] == ds.cone[1] && ds.cone[1] == ds.cone[2];
  report.order3_excluded = !(all_equal && (3 * ds.cone[0].d) % n == 0);
  report.cyclic = (n > 2 * g + 2) || all_distinct;
  if (report.cyclic) return report;

  // Bounded case: the centralizer embeds in the normal closure of F and an
  // involution; list the candidate involution data sets for this parity.
  report.maclachlan_bound = (n <= 2 * g + 2);
  CyclicDataSet hyperelliptic;
  hyperelliptic.n = 2;
  hyperelliptic.g0 = 0;
  for (long long i = 0; i < 2 * g + 2; ++i) hyperelliptic.cone.push_back({1, 2});
  report.candidates.push_back(hyperelliptic);
  CyclicDataSet second;
  second.n = 2;
  if (g % 2 == 0) {
    second.g0 = g / 2;
    second.cone = {{1, 2}, {1, 2}};
  } else {
    second.g0 = (g + 1) / 2;
    second.r = 1;
  }
  report.candidates.push_back(second);
  return report;
}

}  // namespace mcg
