#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>
#include <json.hpp>

namespace mcg {

using Rational = boost::rational<long long>;

class DataSetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// One cone-point orbit of a cyclic action: residue d modulo the cone order m,
/// with gcd(d, m) = 1. The local rotation about the orbit is 2*pi*d^{-1}/m.
struct ConeDatum {
  long long d = 1;
  long long m = 2;

  auto operator<=>(const ConeDatum&) const = default;
};

/// Conjugacy-class invariant of a Z_n action on a closed surface:
/// degree n, quotient genus g0, free parameter r (nonzero exactly when there
/// are no cone points), and the multiset of cone data. Cone data are kept
/// sorted by (m, d) so that equality is multiset equality.
struct CyclicDataSet {
  long long n = 2;
  long long g0 = 0;
  long long r = 0;
  std::vector<ConeDatum> cone;

  void canonicalize();

  auto operator<=>(const CyclicDataSet&) const = default;
};

/// Quotient-orbifold signature: genus plus the multiset of cone orders.
struct SignatureTuple {
  long long g0 = 0;
  std::vector<long long> orders;  // sorted ascending

  auto operator<=>(const SignatureTuple&) const = default;
};

struct ValidationReport {
  bool structural_ok = true;
  std::string structural_error;
  std::vector<int> violated;  // defining conditions (1..6) that fail

  bool pass() const { return structural_ok && violated.empty(); }
};

long long mod_inverse(long long a, long long m);
long long mod_pow(long long base, long long exp, long long m);

SignatureTuple signature(const CyclicDataSet& ds);

/// Checks the six defining conditions of a cyclic data set. Structural
/// problems (d >= m, m < 2, n < 2, duplicate slot abuse) are reported
/// separately, before the conditions are evaluated.
ValidationReport validate(const CyclicDataSet& ds);

/// Genus of the covering surface, from the Riemann-Hurwitz relation.
/// Throws DataSetError if the relation has no integral solution with g >= 2.
long long genus(const CyclicDataSet& ds);

/// A periodic mapping class is irreducible exactly when its quotient orbifold
/// is a sphere with three cone points.
bool is_irreducible(const CyclicDataSet& ds);

/// Local rotation of a cone orbit as a fraction of a full turn, in [0, 1).
Rational local_angle(const ConeDatum& c);

/// Data set of the k-th power of the action, for gcd(k, n) = 1. Each cone
/// residue maps d -> k^{-1} d (mod m), so local rotation angles scale by k;
/// the free parameter follows the same convention, r -> k^{-1} r (mod n).
CyclicDataSet power(const CyclicDataSet& ds, long long k);

/// All valid cyclic data sets of the given genus and degree, in canonical
/// (lexicographic) order. Complete and duplicate-free.
std::vector<CyclicDataSet> enumerate_data_sets(long long g, long long n);

/// enumerate_data_sets over every degree in 2..4g+2 (no periodic mapping
/// class on S_g has larger order). Honors MCG_THREADS for the worker count;
/// the result is deterministic regardless.
std::map<long long, std::vector<CyclicDataSet>> enumerate_all(long long g);

/// Text grammar: "(n,g0;(d1,m1),...,(dk,mk))" or "(n,g0,r;-)".
/// Whitespace-insensitive; to_text/parse round-trip.
std::string to_text(const CyclicDataSet& ds);
CyclicDataSet parse_data_set(std::string_view text);

nlohmann::json to_json(const CyclicDataSet& ds);
CyclicDataSet data_set_from_json(const nlohmann::json& j);

}  // namespace mcg
