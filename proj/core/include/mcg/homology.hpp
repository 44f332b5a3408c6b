#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "mcg/dataset.hpp"  // ParseError

namespace mcg {

using Int = boost::multiprecision::cpp_int;

class HomologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense exact integer matrix, sized at runtime.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Int& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix operator-() const;
  std::vector<Int> operator*(const std::vector<Int>& v) const;
  bool operator==(const IntMatrix& rhs) const = default;

  IntMatrix transpose() const;
  IntMatrix pow(long long e) const;  // e >= 0
  /// Exact inverse; present only when the matrix is unimodular over Z.
  std::optional<IntMatrix> inverse() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

/// Boundary word of an identified polygon: each letter names a side label
/// with an optional inversion mark, e.g. "a1 a2 a1' a2'". Every label must
/// appear exactly twice with opposite marks (orientable identification).
struct PolygonWord {
  std::vector<std::string> labels;          // distinct labels, basis order
  std::vector<std::pair<int, bool>> sides;  // (label index, inverted)
};

PolygonWord parse_polygon_word(std::string_view text);

/// Genus of the identified surface, from the Euler characteristic.
long long polygon_genus(const PolygonWord& word);

/// Antisymmetric intersection pairing on a labeled basis.
struct SkewForm {
  std::vector<std::string> labels;
  IntMatrix j;

  int index_of(std::string_view label) const;
};

/// Algebraic intersection pairing of the side classes, computed from the
/// cyclic order of edge ends around the (unique) vertex. Rejects words with
/// more than one vertex class or a non-orientable identification.
SkewForm intersection_form(const PolygonWord& word);

/// Skew form of a (2g+1)-chain of curves x_1..x_{2g+1} with <x_i, x_{i+1}> = 1
/// and all other pairings zero (rank 2g with a rank-1 radical).
SkewForm chain_form(long long g);

/// Homology action of T_v^q: x -> x + q*<v, x>*v. Preserves the form.
IntMatrix transvection(const SkewForm& form, const std::vector<Int>& v, long long q);

/// Action of the 2*pi/4g rotation of the 4g-gon with opposite side pairing:
/// a_i -> a_{i+1} for i < 2g, a_{2g} -> -a_1. Order 4g with M^{2g} = -I.
IntMatrix rotation_matrix(long long g);

/// The 4g-gon boundary word a1 .. a2g a1' .. a2g'.
PolygonWord polygon_word(long long g);

/// Word in twist generators: (curve label, exponent) pairs; exponents of
/// named finite maps may be mixed in through the matrix table.
struct TwistWord {
  std::vector<std::pair<std::string, long long>> factors;
};

/// Ordered product of transvections (and optional named matrices), leftmost
/// factor outermost. Curve labels resolve through `classes`; labels found in
/// `named` instead resolve to ready-made matrices raised to the exponent.
IntMatrix word_matrix(const TwistWord& word, const SkewForm& form,
                      const std::map<std::string, std::vector<Int>>& classes,
                      const std::map<std::string, IntMatrix>& named = {});

/// Exact test of B^{-1} A B = A^k for k in {-1, +1}.
bool check_relation(const IntMatrix& a, const IntMatrix& b, int k);

struct OrderResult {
  bool finite = false;
  long long order = 0;           // valid when finite
  std::string certificate;       // reason when infinite
};

/// Exact finite/infinite order decision for an integer matrix whose finite
/// order would force a squarefree product of cyclotomic factors: M has finite
/// order iff M^T = I for T = lcm{ d : phi(d) <= dim }. When infinite, the
/// certificate names a non-cyclotomic characteristic factor or a unipotent
/// part. `bound` only caps the reported order (an order above it is still
/// returned exactly).
OrderResult order_on_homology(const IntMatrix& m, long long bound = 0);

bool level_m_member(const IntMatrix& m, long long mod);

struct FormalConjugation {
  bool applicable = false;  // all support curves pairwise disjoint
  bool certified = false;   // q(sigma^{-1}(c)) = k * q(c) for every curve
};

/// Permutation-level check of B^{-1} (prod T_c^{q(c)}) B = (prod T_c^{q(c)})^k
/// for a multitwist with pairwise disjoint support and a conjugator permuting
/// the support curves by sigma. Sufficient when applicable; intersecting
/// supports defer to the homology-level check.
FormalConjugation formal_conjugation_check(
    const std::vector<std::string>& support,
    const std::vector<std::vector<int>>& disjoint,  // adjacency: 1 = intersects
    const std::map<std::string, long long>& q,
    const std::map<std::string, std::string>& sigma, int k);

/// Growth witness max_{t <= T} ||M^t e||_inf^{1/t}, returned exactly as the
/// pair (norm, t) with the maximal root; at_least(p, q) decides norm >= (p/q)^t.
struct GrowthBound {
  Int norm = 1;
  long long power = 1;

  bool at_least(long long p, long long q) const;
};

GrowthBound spectral_lower_bound(const IntMatrix& m, long long t_max = 24);

nlohmann::json to_json(const IntMatrix& m);  // row-major integer rows

}  // namespace mcg
