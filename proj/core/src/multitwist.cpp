#include "mcg/multitwist.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace mcg {

namespace {

long long positive_mod(long long a, long long m) {
  long long v = a % m;
  return v < 0 ? v + m : v;
}

Rational orbit_angle(const std::optional<ConeDatum>& c) {
  return c ? local_angle(*c) : Rational(0);
}

void check_datum(const std::optional<ConeDatum>& c, long long deg) {
  if (deg < 1) throw AssemblyError("ambient degree must be positive");
  if (c && (c->m < 2 || deg % c->m != 0 || std::gcd(c->d, c->m) != 1))
    throw AssemblyError("cone datum invalid for its ambient degree");
}

struct ResolvedOrbit {
  std::optional<ConeDatum> datum;
  long long degree = 1;  // of the owning component
  long long size = 1;    // number of curves in the orbit
};

ResolvedOrbit resolve(
    const std::vector<std::pair<CyclicDataSet, long long>>& components,
    const OrbitRef& ref) {
  if (ref.component < 0 ||
      static_cast<std::size_t>(ref.component) >= components.size())
    throw AssemblyError("pairing references a missing component");
  const CyclicDataSet& ds = components[ref.component].first;
  ResolvedOrbit orbit;
  orbit.degree = ds.n;
  if (ref.is_principal()) {
    orbit.size = ds.n;
    return orbit;
  }
  if (ref.slot < 0 || static_cast<std::size_t>(ref.slot) >= ds.cone.size())
    throw AssemblyError("pairing references a missing cone slot");
  orbit.datum = ds.cone[ref.slot];
  orbit.size = ds.n / orbit.datum->m;
  return orbit;
}

}  // namespace

long long twist_factor(const std::optional<ConeDatum>& a, long long deg_a,
                       const std::optional<ConeDatum>& b, long long deg_b) {
  check_datum(a, deg_a);
  check_datum(b, deg_b);
  const long long n = std::lcm(deg_a, deg_b);
  const Rational angle = orbit_angle(a) + orbit_angle(b);
  // angle * n is integral because each denominator divides its degree.
  long long k = positive_mod(angle.numerator() * (n / angle.denominator()), n);
  if (2 * k > n) k -= n;  // normalize into (-n/2, n/2], ties to +n/2
  return k;
}

bool compatible(long long size_a, long long size_b) {
  return size_a >= 1 && size_a == size_b;
}

long long minimal_degree(
    const std::vector<std::pair<CyclicDataSet, long long>>& components,
    const std::vector<PairingSpec>& pairings) {
  long long N = 1;
  for (const auto& [ds, size] : components) N = std::lcm(N, ds.n);
  for (const auto& spec : pairings) {
    ResolvedOrbit a = resolve(components, spec.end_a);
    ResolvedOrbit b = resolve(components, spec.end_b);
    long long n = std::lcm(a.degree, b.degree);
    long long kt = twist_factor(a.datum, a.degree, b.datum, b.degree);
    if (kt != 0) N = std::lcm(N, n / std::gcd(n, kt < 0 ? -kt : kt));
  }
  return N;
}

PseudoPeriodicDataSet assemble(
    const std::vector<std::pair<CyclicDataSet, long long>>& components,
    const std::vector<PairingSpec>& pairings, long long N) {
  if (components.empty()) throw AssemblyError("no components");
  for (const auto& [ds, size] : components) {
    if (size < 1) throw AssemblyError("component orbit size must be positive");
    if (!validate(ds).pass())
      throw AssemblyError("component data set fails validation: " + to_text(ds));
  }
  for (const auto& [ds, size] : components)
    if (N % ds.n != 0)
      throw AssemblyError("degree is not a common multiple of the components");

  PseudoPeriodicDataSet pds;
  pds.degree = N;
  pds.components = components;

  for (const auto& spec : pairings) {
    ResolvedOrbit a = resolve(components, spec.end_a);
    ResolvedOrbit b = resolve(components, spec.end_b);
    if (!compatible(a.size, b.size))
      throw AssemblyError("paired orbits have different sizes");
    TwistPairing pairing;
    pairing.end_a = spec.end_a;
    pairing.end_b = spec.end_b;
    pairing.orbit_size = a.size;
    pairing.modulus = std::lcm(a.degree, b.degree);
    pairing.twist_factor = twist_factor(a.datum, a.degree, b.datum, b.degree);
    if (pairing.twist_factor == 0)
      throw AssemblyError("twist factor 0: multitwist exponent would vanish");
    if ((N * pairing.twist_factor) % pairing.modulus != 0)
      throw AssemblyError("multitwist exponent is not an integer at this degree");
    pairing.q = N * pairing.twist_factor / pairing.modulus;
    pds.pairings.push_back(pairing);
  }

  // Connectivity of the configuration graph.
  std::vector<int> reached(components.size(), 0);
  std::vector<std::size_t> stack{0};
  reached[0] = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (const auto& pairing : pds.pairings) {
      for (int w : {pairing.end_a.component, pairing.end_b.component}) {
        if ((pairing.end_a.component == static_cast<int>(v) ||
             pairing.end_b.component == static_cast<int>(v)) &&
            !reached[w]) {
          reached[w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  if (std::find(reached.begin(), reached.end(), 0) != reached.end())
    throw AssemblyError("configuration graph is disconnected");

  long long minimal = minimal_degree(components, pairings);
  if (N != minimal)
    throw AssemblyError("degree " + std::to_string(N) +
                        " is not minimal (expected " + std::to_string(minimal) +
                        ")");
  return pds;
}

AssemblyReport validate(const PseudoPeriodicDataSet& pds) {
  AssemblyReport report;
  for (const auto& [ds, size] : pds.components) {
    if (size > 1) {
      report.full_semantics = false;
      report.notes.push_back("component orbit of size " + std::to_string(size) +
                             ": structural checks only");
    }
  }
  for (const auto& pairing : pds.pairings) {
    if (pairing.orbit_size > 1) {
      report.full_semantics = false;
      report.notes.push_back("curve orbit of size " +
                             std::to_string(pairing.orbit_size) +
                             ": structural checks only");
    }
    if (pairing.q * pairing.modulus != pds.degree * pairing.twist_factor)
      report.notes.push_back("exponent identity q*n = N*k_t violated");
  }
  return report;
}

long long total_genus(const PseudoPeriodicDataSet& pds) {
  long long vertices = 0, edges = 0, genus_sum = 0;
  for (const auto& [ds, size] : pds.components) {
    vertices += size;
    genus_sum += size * genus(ds);
  }
  for (const auto& pairing : pds.pairings) edges += pairing.orbit_size;
  return genus_sum + edges - vertices + 1;
}

std::vector<std::pair<std::size_t, long long>> multitwist_of(
    const PseudoPeriodicDataSet& pds) {
  std::vector<std::pair<std::size_t, long long>> exponents;
  for (std::size_t i = 0; i < pds.pairings.size(); ++i)
    exponents.emplace_back(i, pds.pairings[i].q);
  return exponents;
}

namespace {

std::string endpoint_text(const OrbitRef& ref) {
  std::string out = std::to_string(ref.component + 1);
  out += '.';
  out += ref.is_principal() ? "p" : std::to_string(ref.slot + 1);
  return out;
}

}  // namespace

std::string to_text(const PseudoPeriodicDataSet& pds) {
  std::ostringstream os;
  os << "[[" << pds.degree << ';';
  for (std::size_t i = 0; i < pds.components.size(); ++i) {
    if (i > 0) os << ',';
    os << '(' << to_text(pds.components[i].first) << ','
       << pds.components[i].second << ')';
  }
  os << ';';
  if (pds.pairings.empty()) {
    os << '-';
  } else {
    for (std::size_t i = 0; i < pds.pairings.size(); ++i) {
      const TwistPairing& p = pds.pairings[i];
      if (i > 0) os << ',';
      os << "((" << p.orbit_size << ',' << p.q << ',' << p.twist_factor << ';'
         << endpoint_text(p.end_a) << ',' << endpoint_text(p.end_b) << "))";
    }
  }
  os << ";-]]";
  return os.str();
}

namespace {

class TupleScanner {
 public:
  explicit TupleScanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool try_literal(std::string_view lit) {
    skip_space();
    if (text_.substr(pos_, lit.size()) == lit) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }

  void expect_literal(std::string_view lit) {
    if (!try_literal(lit))
      throw ParseError("expected '" + std::string(lit) + "'", pos_);
  }

  long long integer() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) throw ParseError("expected integer", start);
    return std::stoll(std::string(text_.substr(start, pos_ - start)));
  }

  // A balanced "(...)" chunk, returned with its parentheses.
  std::string balanced_parens() {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '(')
      throw ParseError("expected '('", pos_);
    std::size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      if (text_[pos_] == '(') ++depth;
      if (text_[pos_] == ')') {
        --depth;
        if (depth == 0) {
          ++pos_;
          return std::string(text_.substr(start, pos_ - start));
        }
      }
      ++pos_;
    }
    throw ParseError("unbalanced parentheses", start);
  }

  void expect_end() {
    skip_space();
    if (pos_ != text_.size()) throw ParseError("trailing characters", pos_);
  }

  std::size_t position() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

OrbitRef parse_endpoint(TupleScanner& scan) {
  OrbitRef ref;
  ref.component = static_cast<int>(scan.integer()) - 1;
  scan.expect_literal(".");
  if (scan.try_literal("p")) {
    ref.slot = OrbitRef::kPrincipal;
  } else {
    ref.slot = static_cast<int>(scan.integer()) - 1;
  }
  return ref;
}

}  // namespace

PseudoPeriodicDataSet parse_pseudo_periodic(std::string_view text) {
  TupleScanner scan(text);
  PseudoPeriodicDataSet pds;
  scan.expect_literal("[[");
  pds.degree = scan.integer();
  scan.expect_literal(";");
  do {
    scan.expect_literal("(");
    std::string ds_text = scan.balanced_parens();
    CyclicDataSet ds = parse_data_set(ds_text);
    scan.expect_literal(",");
    long long size = scan.integer();
    scan.expect_literal(")");
    pds.components.emplace_back(std::move(ds), size);
  } while (scan.try_literal(","));
  scan.expect_literal(";");
  if (!scan.try_literal("-")) {
    do {
      scan.expect_literal("((");
      TwistPairing pairing;
      pairing.orbit_size = scan.integer();
      scan.expect_literal(",");
      pairing.q = scan.integer();
      scan.expect_literal(",");
      pairing.twist_factor = scan.integer();
      scan.expect_literal(";");
      pairing.end_a = parse_endpoint(scan);
      scan.expect_literal(",");
      pairing.end_b = parse_endpoint(scan);
      scan.expect_literal("))");
      // Recover the modulus from the endpoints.
      auto degree_of = [&](const OrbitRef& ref) -> long long {
        if (ref.component < 0 ||
            static_cast<std::size_t>(ref.component) >= pds.components.size())
          throw ParseError("pairing references a missing component",
                           scan.position());
        return pds.components[ref.component].first.n;
      };
      pairing.modulus =
          std::lcm(degree_of(pairing.end_a), degree_of(pairing.end_b));
      pds.pairings.push_back(pairing);
    } while (scan.try_literal(","));
  }
  scan.expect_literal(";");
  scan.expect_literal("-");
  scan.expect_literal("]]");
  scan.expect_end();
  return pds;
}

nlohmann::json to_json(const PseudoPeriodicDataSet& pds) {
  nlohmann::json components = nlohmann::json::array();
  for (const auto& [ds, size] : pds.components)
    components.push_back({{"data_set", to_json(ds)}, {"orbit_size", size}});
  nlohmann::json pairings = nlohmann::json::array();
  for (const auto& p : pds.pairings) {
    auto end_json = [](const OrbitRef& ref) {
      return nlohmann::json{ref.component,
                            ref.is_principal() ? nlohmann::json() : nlohmann::json(ref.slot)};
    };
    pairings.push_back({p.orbit_size, p.q, p.twist_factor, end_json(p.end_a),
                        end_json(p.end_b)});
  }
  return {{"degree", pds.degree},
          {"components", components},
          {"pairings", pairings}};
}

PseudoPeriodicDataSet pseudo_periodic_from_json(const nlohmann::json& j) {
  PseudoPeriodicDataSet pds;
  pds.degree = j.at("degree").get<long long>();
  for (const auto& entry : j.at("components"))
    pds.components.emplace_back(data_set_from_json(entry.at("data_set")),
                                entry.at("orbit_size").get<long long>());
  for (const auto& entry : j.at("pairings")) {
    TwistPairing p;
    p.orbit_size = entry.at(0).get<long long>();
    p.q = entry.at(1).get<long long>();
    p.twist_factor = entry.at(2).get<long long>();
    auto read_end = [](const nlohmann::json& e) {
      OrbitRef ref;
      ref.component = e.at(0).get<int>();
      ref.slot = e.at(1).is_null() ? OrbitRef::kPrincipal : e.at(1).get<int>();
      return ref;
    };
    p.end_a = read_end(entry.at(3));
    p.end_b = read_end(entry.at(4));
    auto degree_of = [&](const OrbitRef& ref) -> long long {
      return pds.components.at(ref.component).first.n;
    };
    p.modulus = std::lcm(degree_of(p.end_a), degree_of(p.end_b));
    pds.pairings.push_back(p);
  }
  return pds;
}

}  // namespace mcg
