#include "mcg/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <future>
#include <numeric>
#include <sstream>
#include <thread>

namespace mcg {

namespace {

long long positive_mod(long long a, long long m) {
  long long v = a % m;
  return v < 0 ? v + m : v;
}

long long lcm_of_orders(const std::vector<ConeDatum>& cone) {
  long long l = 1;
  for (const auto& c : cone) l = std::lcm(l, c.m);
  return l;
}

std::vector<long long> divisors_of(long long n) {
  std::vector<long long> divs;
  for (long long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      divs.push_back(d);
      if (d != n / d) divs.push_back(n / d);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::vector<long long> units_mod(long long m) {
  std::vector<long long> u;
  for (long long d = 1; d < m; ++d)
    if (std::gcd(d, m) == 1) u.push_back(d);
  return u;
}

}  // namespace

long long mod_inverse(long long a, long long m) {
  if (m == 1) return 0;
  a = positive_mod(a, m);
  if (std::gcd(a, m) != 1)
    throw DataSetError("no inverse of " + std::to_string(a) + " modulo " +
                       std::to_string(m));
  // Extended Euclid.
  long long r0 = m, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    long long q = r0 / r1;
    std::tie(r0, r1) = std::pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::pair(s1, s0 - q * s1);
  }
  return positive_mod(s0, m);
}

long long mod_pow(long long base, long long exp, long long m) {
  if (m == 1) return 0;
  if (exp < 0) return mod_pow(mod_inverse(base, m), -exp, m);
  long long result = 1;
  base = positive_mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = (result * base) % m;
    base = (base * base) % m;
    exp >>= 1;
  }
  return result;
}

void CyclicDataSet::canonicalize() {
  std::sort(cone.begin(), cone.end(),
            [](const ConeDatum& a, const ConeDatum& b) {
              return std::pair(a.m, a.d) < std::pair(b.m, b.d);
            });
}

SignatureTuple signature(const CyclicDataSet& ds) {
  SignatureTuple sig;
  sig.g0 = ds.g0;
  for (const auto& c : ds.cone) sig.orders.push_back(c.m);
  std::sort(sig.orders.begin(), sig.orders.end());
  return sig;
}

ValidationReport validate(const CyclicDataSet& ds) {
  ValidationReport report;
  // Structural sanity before the defining conditions.
  if (ds.n < 2) {
    report.structural_ok = false;
    report.structural_error = "degree n must be at least 2";
    return report;
  }
  if (ds.g0 < 0) {
    report.structural_ok = false;
    report.structural_error = "quotient genus must be nonnegative";
    return report;
  }
  if (ds.r < 0 || ds.r >= ds.n) {
    report.structural_ok = false;
    report.structural_error = "free parameter r must satisfy 0 <= r < n";
    return report;
  }
  for (const auto& c : ds.cone) {
    if (c.m < 2) {
      report.structural_ok = false;
      report.structural_error = "cone order m must be at least 2";
      return report;
    }
    if (c.d < 1 || c.d >= c.m) {
      report.structural_ok = false;
      report.structural_error = "cone residue d must satisfy 1 <= d < m";
      return report;
    }
  }

  // (i) r > 0 exactly when there are no cone points, and then gcd(r, n) = 1.
  if (ds.cone.empty()) {
    if (ds.r == 0 || std::gcd(ds.r, ds.n) != 1) report.violated.push_back(1);
  } else if (ds.r != 0) {
    report.violated.push_back(1);
  }

  // (ii) each cone order divides n and each residue is a unit.
  bool orders_ok = true;
  for (const auto& c : ds.cone) {
    if (ds.n % c.m != 0 || std::gcd(c.d, c.m) != 1) orders_ok = false;
  }
  if (!orders_ok) report.violated.push_back(2);

  // (iii) the lcm of the cone orders is stable under deleting any one datum.
  const long long full_lcm = lcm_of_orders(ds.cone);
  for (std::size_t i = 0; i < ds.cone.size(); ++i) {
    long long l = 1;
    for (std::size_t j = 0; j < ds.cone.size(); ++j)
      if (j != i) l = std::lcm(l, ds.cone[j].m);
    if (l != full_lcm) {
      report.violated.push_back(3);
      break;
    }
  }

  // (iv) for a sphere quotient the cone orders must generate the full degree.
  if (ds.g0 == 0 && full_lcm != ds.n) report.violated.push_back(4);

  // (v) total angle condition: sum (n/m_i) d_i = 0 (mod n).
  if (orders_ok) {
    long long angle_sum = 0;
    for (const auto& c : ds.cone)
      angle_sum = positive_mod(angle_sum + (ds.n / c.m) * c.d, ds.n);
    if (angle_sum != 0) report.violated.push_back(5);
  }

  // (vi) the Riemann-Hurwitz relation must give an integer genus >= 2.
  if (orders_ok) {
    // 2g - 2 = n(2 g0 - 2) + sum (n - n/m_i); every term is an integer.
    long long rhs = ds.n * (2 * ds.g0 - 2);
    for (const auto& c : ds.cone) rhs += ds.n - ds.n / c.m;
    if (rhs % 2 != 0 || (rhs + 2) / 2 < 2) report.violated.push_back(6);
  } else {
    report.violated.push_back(6);
  }
  return report;
}

long long genus(const CyclicDataSet& ds) {
  ValidationReport report = validate(ds);
  if (!report.structural_ok) throw DataSetError(report.structural_error);
  long long rhs = ds.n * (2 * ds.g0 - 2);
  for (const auto& c : ds.cone) rhs += ds.n - ds.n / c.m;
  if (rhs % 2 != 0)
    throw DataSetError("Riemann-Hurwitz value is not an even integer");
  long long g = (rhs + 2) / 2;
  if (g < 2) throw DataSetError("Riemann-Hurwitz genus is below 2");
  return g;
}

bool is_irreducible(const CyclicDataSet& ds) {
  return ds.g0 == 0 && ds.cone.size() == 3;
}

Rational local_angle(const ConeDatum& c) {
  if (c.m == 1) return Rational(0);
  return Rational(mod_inverse(c.d, c.m), c.m);
}

CyclicDataSet power(const CyclicDataSet& ds, long long k) {
  k = positive_mod(k, ds.n);
  if (std::gcd(k, ds.n) != 1)
    throw DataSetError("power exponent must be a unit modulo the degree");
  CyclicDataSet out = ds;
  for (auto& c : out.cone) c.d = positive_mod(mod_inverse(k, c.m) * c.d, c.m);
  if (out.r != 0) out.r = positive_mod(mod_inverse(k, ds.n) * out.r, ds.n);
  out.canonicalize();
  return out;
}

namespace {

// Phase 2 of enumeration: assign unit residues to a fixed ascending multiset
// of cone orders, generating only canonically sorted (m, d) sequences so each
// multiset appears once, and keeping only assignments with angle sum 0 mod n.
void assign_residues(const CyclicDataSet& base,
                     const std::vector<long long>& orders, std::size_t index,
                     long long angle_sum, std::vector<ConeDatum>& chosen,
                     std::vector<CyclicDataSet>& out) {
  const long long n = base.n;
  if (index == orders.size()) {
    if (angle_sum % n == 0) {
      CyclicDataSet ds = base;
      ds.cone = chosen;
      out.push_back(std::move(ds));
    }
    return;
  }
  const long long m = orders[index];
  const long long min_d =
      (index > 0 && orders[index - 1] == m) ? chosen.back().d : 1;
  for (long long d = min_d; d < m; ++d) {
    if (std::gcd(d, m) != 1) continue;
    chosen.push_back({d, m});
    assign_residues(base, orders, index + 1, angle_sum + (n / m) * d, chosen,
                    out);
    chosen.pop_back();
  }
}

bool lcm_stable(const std::vector<long long>& orders) {
  long long full = 1;
  for (long long m : orders) full = std::lcm(full, m);
  for (std::size_t i = 0; i < orders.size(); ++i) {
    long long l = 1;
    for (std::size_t j = 0; j < orders.size(); ++j)
      if (j != i) l = std::lcm(l, orders[j]);
    if (l != full) return false;
  }
  return true;
}

// Phase 1 of enumeration: ascending multisets of divisor cone orders whose
// Riemann-Hurwitz contribution matches the target exactly.
void assign_orders(const CyclicDataSet& base,
                   const std::vector<long long>& divisors, std::size_t min_div,
                   Rational target, std::vector<long long>& orders,
                   std::vector<CyclicDataSet>& out) {
  const long long n = base.n;
  if (target == Rational(0)) {
    if (orders.empty()) return;  // branched enumeration only
    if (!lcm_stable(orders)) return;
    long long full = 1;
    for (long long m : orders) full = std::lcm(full, m);
    if (base.g0 == 0 && full != n) return;
    std::vector<ConeDatum> chosen;
    assign_residues(base, orders, 0, 0, chosen, out);
    return;
  }
  if (target < Rational(0)) return;
  for (std::size_t i = min_div; i < divisors.size(); ++i) {
    const long long m = divisors[i];
    Rational term(m - 1, m);
    if (term > target) continue;
    orders.push_back(m);
    assign_orders(base, divisors, i, target - term, orders, out);
    orders.pop_back();
  }
}

}  // namespace

std::vector<CyclicDataSet> enumerate_data_sets(long long g, long long n) {
  if (g < 2) throw DataSetError("genus must be at least 2");
  if (n < 2) throw DataSetError("degree must be at least 2");
  std::vector<CyclicDataSet> out;

  // Free actions: 2g - 2 = n(2 g0 - 2), one data set per unit r.
  if ((2 * g - 2) % n == 0 && ((2 * g - 2) / n) % 2 == 0) {
    long long g0 = (2 * g - 2) / n / 2 + 1;
    if (g0 >= 1) {
      for (long long r : units_mod(n)) {
        CyclicDataSet ds;
        ds.n = n;
        ds.g0 = g0;
        ds.r = r;
        out.push_back(ds);
      }
    }
  }

  // Branched actions, by quotient genus.
  std::vector<long long> divisors = divisors_of(n);
  std::erase_if(divisors, [](long long m) { return m < 2; });
  for (long long g0 = 0;; ++g0) {
    Rational target = Rational(2 * g - 2, n) - Rational(2 * g0 - 2);
    if (target < Rational(1, 2)) {
      if (g0 > 0 || target < Rational(0)) break;
      continue;
    }
    CyclicDataSet base;
    base.n = n;
    base.g0 = g0;
    base.r = 0;
    std::vector<long long> orders;
    assign_orders(base, divisors, 0, target, orders, out);
  }
  for (auto& ds : out) ds.canonicalize();
  std::sort(out.begin(), out.end());
  return out;
}

std::map<long long, std::vector<CyclicDataSet>> enumerate_all(long long g) {
  if (g < 2) throw DataSetError("genus must be at least 2");
  std::vector<long long> degrees;
  for (long long n = 2; n <= 4 * g + 2; ++n) degrees.push_back(n);

  unsigned workers = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("MCG_THREADS")) {
    long parsed = std::strtol(env, nullptr, 10);
    if (parsed >= 1) workers = static_cast<unsigned>(parsed);
  }
  workers = std::max(1u, std::min<unsigned>(workers, degrees.size()));

  std::map<long long, std::vector<CyclicDataSet>> result;
  if (workers == 1) {
    for (long long n : degrees) {
      auto sets = enumerate_data_sets(g, n);
      if (!sets.empty()) result[n] = std::move(sets);
    }
    return result;
  }
  std::vector<std::future<std::vector<CyclicDataSet>>> futures;
  futures.reserve(degrees.size());
  for (long long n : degrees)
    futures.push_back(std::async(std::launch::async, enumerate_data_sets, g, n));
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    auto sets = futures[i].get();
    if (!sets.empty()) result[degrees[i]] = std::move(sets);
  }
  return result;
}

std::string to_text(const CyclicDataSet& ds) {
  std::ostringstream os;
  os << '(' << ds.n << ',' << ds.g0;
  if (ds.cone.empty()) {
    os << ',' << ds.r << ";-)";
    return os.str();
  }
  os << ';';
  for (std::size_t i = 0; i < ds.cone.size(); ++i) {
    if (i > 0) os << ',';
    os << '(' << ds.cone[i].d << ',' << ds.cone[i].m << ')';
  }
  os << ')';
  return os.str();
}

namespace {

class TextScanner {
 public:
  explicit TextScanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool try_consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!try_consume(c))
      throw ParseError(std::string("expected '") + c + "'", pos_);
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

  void expect_end() {
    skip_space();
    if (pos_ != text_.size()) throw ParseError("trailing characters", pos_);
  }

  std::size_t position() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

CyclicDataSet parse_data_set(std::string_view text) {
  TextScanner scan(text);
  CyclicDataSet ds;
  scan.expect('(');
  ds.n = scan.integer();
  scan.expect(',');
  ds.g0 = scan.integer();
  if (scan.try_consume(',')) {
    // Free form "(n,g0,r;-)".
    ds.r = scan.integer();
    scan.expect(';');
    scan.expect('-');
    scan.expect(')');
    scan.expect_end();
    return ds;
  }
  scan.expect(';');
  if (scan.try_consume('-')) {
    scan.expect(')');
    scan.expect_end();
    return ds;
  }
  do {
    scan.expect('(');
    ConeDatum c;
    c.d = scan.integer();
    scan.expect(',');
    c.m = scan.integer();
    scan.expect(')');
    ds.cone.push_back(c);
  } while (scan.try_consume(','));
  scan.expect(')');
  scan.expect_end();
  ds.canonicalize();
  return ds;
}

nlohmann::json to_json(const CyclicDataSet& ds) {
  nlohmann::json cone = nlohmann::json::array();
  for (const auto& c : ds.cone) cone.push_back({c.d, c.m});
  return {{"n", ds.n}, {"g0", ds.g0}, {"r", ds.r}, {"cone", cone}};
}

CyclicDataSet data_set_from_json(const nlohmann::json& j) {
  CyclicDataSet ds;
  ds.n = j.at("n").get<long long>();
  ds.g0 = j.at("g0").get<long long>();
  ds.r = j.value("r", 0LL);
  for (const auto& entry : j.at("cone")) {
    if (!entry.is_array() || entry.size() != 2)
      throw DataSetError("cone entries must be [d, m] pairs");
    ds.cone.push_back({entry[0].get<long long>(), entry[1].get<long long>()});
  }
  ds.canonicalize();
  return ds;
}

}  // namespace mcg
