#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <vector>

#include "mcg/dataset.hpp"

using namespace mcg;

namespace {

// Independent brute-force enumeration: nested loops over quotient genus, cone
// counts, divisor multisets, and unit residues, checking the defining
// conditions directly. Deliberately naive; used as the oracle for the
// two-phase enumerator.
std::set<CyclicDataSet> brute_force(long long g, long long n) {
  std::set<CyclicDataSet> out;
  std::vector<long long> divisors;
  for (long long m = 2; m <= n; ++m)
    if (n % m == 0) divisors.push_back(m);

  // Free actions: empty cone multiset. lcm(empty) = 1, so g0 = 0 is
  // impossible for n >= 2; the Riemann-Hurwitz relation fixes g0.
  for (long long g0 = 1; n * (2 * g0 - 2) <= 2 * g - 2; ++g0) {
    if (n * (2 * g0 - 2) != 2 * g - 2) continue;
    for (long long r = 1; r < n; ++r) {
      if (std::gcd(r, n) != 1) continue;
      CyclicDataSet ds;
      ds.n = n;
      ds.g0 = g0;
      ds.r = r;
      out.insert(ds);
    }
  }

  // Each cone contributes n - n/m >= n/2 and the g0 = 0 term adds 2n, so at
  // most (4g - 4)/n + 4 <= 2g + 2 cone points can appear.
  const long long max_cones = 2 * g + 2;
  std::vector<long long> orders;
  auto lcm_of = [](const std::vector<long long>& ms, int skip) {
    long long l = 1;
    for (int i = 0; i < static_cast<int>(ms.size()); ++i)
      if (i != skip) l = std::lcm(l, ms[i]);
    return l;
  };
  // Residue assignment over a fixed order multiset, in canonical order.
  auto assign = [&](long long g0, auto&& self, std::vector<ConeDatum>& cone,
                    std::size_t index) -> void {
    if (index == orders.size()) {
      long long sum = 0;
      for (const ConeDatum& c : cone) sum = (sum + (n / c.m) * c.d) % n;
      if (sum != 0) return;
      CyclicDataSet ds;
      ds.n = n;
      ds.g0 = g0;
      ds.cone = cone;
      out.insert(ds);
      return;
    }
    for (long long d = 1; d < orders[index]; ++d) {
      if (std::gcd(d, orders[index]) != 1) continue;
      ConeDatum next{d, orders[index]};
      if (!cone.empty() && cone.back().m == next.m && cone.back().d > next.d)
        continue;  // enforce canonical (m, d) order to avoid duplicates
      cone.push_back(next);
      self(g0, self, cone, index + 1);
      cone.pop_back();
    }
  };
  auto order_multisets = [&](auto&& self, std::size_t from) -> void {
    if (!orders.empty()) {
      for (long long g0 = 0;; ++g0) {
        long long rhs = n * (2 * g0 - 2);
        for (long long m : orders) rhs += n - n / m;
        if (rhs > 2 * g - 2) break;
        if (rhs != 2 * g - 2) continue;
        bool lcm_ok = true;
        const long long full = lcm_of(orders, -1);
        for (int i = 0; i < static_cast<int>(orders.size()); ++i)
          lcm_ok = lcm_ok && lcm_of(orders, i) == full;
        if (!lcm_ok) continue;
        if (g0 == 0 && full != n) continue;
        std::vector<ConeDatum> cone;
        assign(g0, assign, cone, 0);
      }
    }
    if (orders.size() == static_cast<std::size_t>(max_cones)) return;
    for (std::size_t i = from; i < divisors.size(); ++i) {
      orders.push_back(divisors[i]);
      self(self, i);
      orders.pop_back();
    }
  };
  order_multisets(order_multisets, 0);
  return out;
}

std::vector<long long> units_mod(long long n) {
  std::vector<long long> units;
  for (long long k = 1; k < n; ++k)
    if (std::gcd(k, n) == 1) units.push_back(k);
  return units;
}

}  // namespace

TEST_CASE("validation of worked data sets") {
  CHECK(validate(parse_data_set("(5,0;(4,5),(3,5),(3,5))")).pass());
  CHECK(validate(parse_data_set("(3,0;(1,3),(1,3),(2,3),(2,3))")).pass());
  CHECK(validate(parse_data_set("(2,2,1;-)")).pass());
  CHECK(validate(parse_data_set("(2,1;(1,2),(1,2))")).pass());
  CHECK(validate(parse_data_set("(6,0;(1,2),(1,2),(1,3),(2,3))")).pass());
  CHECK(validate(parse_data_set("(10,0;(1,2),(1,2),(1,5),(4,5))")).pass());

  SUBCASE("condition (v): residue sum must vanish") {
    auto report = validate(parse_data_set("(5,0;(4,5),(3,5),(2,5))"));
    CHECK_FALSE(report.pass());
    CHECK(std::count(report.violated.begin(), report.violated.end(), 5) == 1);
  }
  SUBCASE("condition (i): free parameter requires no cones") {
    CyclicDataSet ds = parse_data_set("(5,0;(4,5),(3,5),(3,5))");
    ds.r = 2;
    auto report = validate(ds);
    CHECK_FALSE(report.pass());
    CHECK(std::count(report.violated.begin(), report.violated.end(), 1) == 1);
  }
  SUBCASE("condition (iv): spherical quotient needs full lcm") {
    // Orders {2,2,2,2} on degree 4: lcm 2 != 4.
    CyclicDataSet ds;
    ds.n = 4;
    ds.cone = {{1, 2}, {1, 2}, {1, 2}, {1, 2}};
    auto report = validate(ds);
    CHECK_FALSE(report.pass());
    CHECK(std::count(report.violated.begin(), report.violated.end(), 4) == 1);
  }
  SUBCASE("non-unit residue violates the unit condition") {
    CyclicDataSet ds;
    ds.n = 4;
    ds.cone = {{2, 4}, {1, 2}};  // gcd(2,4) != 1
    auto report = validate(ds);
    CHECK(report.structural_ok);
    CHECK_FALSE(report.pass());
    CHECK(std::count(report.violated.begin(), report.violated.end(), 2) == 1);
  }
}

TEST_CASE("genus from the Riemann-Hurwitz relation") {
  CHECK(genus(parse_data_set("(2,0;(1,2),(1,2),(1,2),(1,2),(1,2),(1,2))")) == 2);
  CHECK(genus(parse_data_set("(5,0;(4,5),(3,5),(3,5))")) == 2);
  CHECK(genus(parse_data_set("(2,2,1;-)")) == 3);
  CHECK(genus(parse_data_set("(8,0;(1,2),(5,8),(7,8))")) == 2);
  CHECK(genus(parse_data_set("(10,0;(1,2),(2,5),(1,10))")) == 2);
  CHECK(genus(parse_data_set("(6,0;(1,2),(1,2),(1,3),(2,3))")) == 2);
}

TEST_CASE("irreducibility criterion") {
  CHECK(is_irreducible(parse_data_set("(5,0;(4,5),(3,5),(3,5))")));
  CHECK(is_irreducible(parse_data_set("(8,0;(1,2),(1,8),(3,8))")));
  CHECK_FALSE(is_irreducible(parse_data_set("(2,2,1;-)")));
  CHECK_FALSE(is_irreducible(parse_data_set("(6,0;(1,2),(1,2),(1,3),(2,3))")));
}

TEST_CASE("power operation") {
  CyclicDataSet ds = parse_data_set("(5,0;(4,5),(3,5),(3,5))");
  CHECK(power(ds, 4) == parse_data_set("(5,0;(1,5),(2,5),(2,5))"));
  CHECK(power(ds, 1) == ds);

  SUBCASE("inverse exponent undoes the power") {
    for (const auto& text :
         {"(5,0;(4,5),(3,5),(3,5))", "(8,0;(1,2),(5,8),(7,8))",
          "(10,0;(1,2),(2,5),(1,10))", "(3,2,2;-)"}) {
      CyclicDataSet base = parse_data_set(text);
      for (long long k : units_mod(base.n))
        CHECK(power(power(base, k), mod_inverse(k, base.n)) == base);
    }
  }
  SUBCASE("power preserves validity, genus, and irreducibility") {
    for (long long g : {2, 3}) {
      for (const auto& [degree, sets] : enumerate_all(g)) {
        for (const CyclicDataSet& base : sets) {
          for (long long k : units_mod(degree)) {
            CyclicDataSet p = power(base, k);
            CHECK(validate(p).pass());
            CHECK(genus(p) == g);
            CHECK(is_irreducible(p) == is_irreducible(base));
          }
        }
      }
    }
  }
  SUBCASE("local angles scale by k") {
    for (long long k : units_mod(5)) {
      CyclicDataSet p = power(ds, k);
      // The multiset of k * angle values must match the powered multiset.
      std::multiset<Rational> scaled, direct;
      for (const ConeDatum& c : ds.cone) {
        Rational a = local_angle(c) * k;
        long long whole = boost::rational_cast<long long>(a);
        a -= whole;
        if (a < 0) a += 1;
        scaled.insert(a);
      }
      for (const ConeDatum& c : p.cone) direct.insert(local_angle(c));
      CHECK(scaled == direct);
    }
  }
}

TEST_CASE("enumeration agrees with the brute-force oracle") {
  for (long long g : {2, 3}) {
    for (long long n = 2; n <= 4 * g + 2; ++n) {
      auto fast = enumerate_data_sets(g, n);
      std::set<CyclicDataSet> fast_set(fast.begin(), fast.end());
      CHECK(fast_set.size() == fast.size());  // duplicate-free
      CHECK(fast_set == brute_force(g, n));
    }
  }
}

TEST_CASE("enumeration output is sorted canonically and validates") {
  for (long long g : {2, 3, 4}) {
    for (const auto& [degree, sets] : enumerate_all(g)) {
      CHECK(std::is_sorted(sets.begin(), sets.end()));
      for (const CyclicDataSet& ds : sets) {
        CHECK(validate(ds).pass());
        CHECK(genus(ds) == g);
        CHECK(ds.n == degree);
      }
    }
  }
}

TEST_CASE("enumeration is deterministic across thread counts") {
  setenv("MCG_THREADS", "1", 1);
  auto serial = enumerate_all(3);
  setenv("MCG_THREADS", "4", 1);
  auto parallel = enumerate_all(3);
  unsetenv("MCG_THREADS");
  CHECK(serial == parallel);
}

TEST_CASE("text grammar round-trip") {
  for (long long g : {2, 3}) {
    for (const auto& [degree, sets] : enumerate_all(g)) {
      for (const CyclicDataSet& ds : sets) {
        CHECK(parse_data_set(to_text(ds)) == ds);
        CHECK(data_set_from_json(to_json(ds)) == ds);
      }
    }
  }
  CHECK(parse_data_set(" ( 5 , 0 ; ( 4 , 5 ) , (3,5) , (3,5) ) ") ==
        parse_data_set("(5,0;(4,5),(3,5),(3,5))"));
  CHECK_THROWS_AS(parse_data_set("(5,0;"), ParseError);
  CHECK_THROWS_AS(parse_data_set("(5;0)"), ParseError);
  CHECK_THROWS_AS(parse_data_set("nonsense"), ParseError);
}

TEST_CASE("modular helpers") {
  for (long long m : {2, 3, 5, 8, 12, 97}) {
    for (long long a = 1; a < m; ++a) {
      if (std::gcd(a, m) != 1) continue;
      CHECK((a * mod_inverse(a, m)) % m == 1);
    }
  }
  CHECK(mod_pow(-1, 2, 5) == 1);
  CHECK(mod_pow(-1, 3, 5) == 4);
  CHECK(mod_pow(2, -1, 5) == 3);
  CHECK_THROWS_AS(mod_inverse(2, 4), DataSetError);
}

TEST_CASE("genus-2 landmark entries") {
  auto all = enumerate_all(2);
  auto contains = [&](const char* text) {
    CyclicDataSet ds = parse_data_set(text);
    const auto& sets = all.at(ds.n);
    return std::find(sets.begin(), sets.end(), ds) != sets.end();
  };
  CHECK(contains("(2,0;(1,2),(1,2),(1,2),(1,2),(1,2),(1,2))"));
  CHECK(contains("(6,0;(1,2),(1,2),(1,3),(2,3))"));
  CHECK(contains("(5,0;(4,5),(3,5),(3,5))"));
  CHECK_FALSE(all.count(9));
  CHECK(all.count(10));
  CHECK_FALSE(all.at(10).empty());
}
