#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcg/dataset.hpp"

namespace mcg {

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Presentations of infinite metacyclic groups.
// ---------------------------------------------------------------------------

enum class PresentationKind {
  ZSemiZ,     // <F, G | G^-1 F G = F^k>, k = +-1, both generators infinite
  ZSemiZ2m,   // <F, G | G^2m = 1, G^-1 F G = F^-1>, F infinite
  ZnSemiZ,    // <F, G | F^n = 1, G^-1 F G = F^k>, G infinite, k a unit mod n
};

struct PresentationClass {
  PresentationKind kind = PresentationKind::ZSemiZ;
  long long n = 0;  // ZnSemiZ: order of F
  long long m = 0;  // ZSemiZ2m: half the order of G
  long long k = 1;

  auto operator<=>(const PresentationClass&) const = default;
};

std::string to_text(const PresentationClass& pres);

/// Chooses the presentation of the infinite metacyclic group generated by an
/// element of order n_f (absent = infinite) and one of order g_order (absent
/// = infinite) with G^-1 F G = F^k. A finite-order G with k = 1 is reported
/// in the canonical form Z_t x Z = Z_t semidirect_1 Z (swap the roles).
/// Rejects two finite orders and inconsistent (k, order) combinations.
PresentationClass classify_presentation(
    std::optional<long long> n_f, std::optional<long long> g_order, long long k,
    std::optional<std::pair<long long, long long>> power_relation = {});

struct ElementType {
  bool periodic = false;
  long long order = 0;  // valid when periodic
};

/// Type and order of G^i F^j, by symbolic evaluation of the word identity
/// (G^i F^j)^l = G^{il} F^{j(1 + k^i + ... + k^{i(l-1)})}.
ElementType element_type(long long i, long long j, const PresentationClass& pres);

// ---------------------------------------------------------------------------
// Induced orbifold automorphisms.
// ---------------------------------------------------------------------------

struct AutKWitness {
  long long k = 1;
  std::vector<int> pairing;  // slot x maps to slot pairing[x]
};

/// Searches for a cone-slot pairing x -> y with m_x = m_y and
/// d_x = k * d_y (mod m_y): the combinatorial shadow of an orbifold
/// automorphism scaling rotation data by k, necessary for G^-1 F G = F^k.
std::optional<AutKWitness> autk_exists(const CyclicDataSet& ds, long long k);

// ---------------------------------------------------------------------------
// Configured pairs and the main decision procedure.
// ---------------------------------------------------------------------------

enum class PartKind { Identity, Periodic, PseudoAnosov };

struct ComponentPart {
  PartKind kind = PartKind::Identity;
  CyclicDataSet data_set;  // Periodic
  std::string pa_id;       // PseudoAnosov
};

struct PairVertex {
  long long genus = 0;
  ComponentPart f;
  ComponentPart g;
};

enum class CurveMembership { F, G, Both };

struct PairEdge {
  int va = 0, vb = 0;
  CurveMembership membership = CurveMembership::F;
  long long q = 0;        // multitwist exponent of F, when the curve is in C(F)
  long long q_prime = 0;  // multitwist exponent of G, when the curve is in C(G)
};

/// Cyclic certificate that the two parts on one vertex share a root:
/// F_r = root^{f_exponent}, G_r = root^{g_exponent}.
struct CyclicCertificate {
  int vertex = 0;
  std::string root;
  long long f_exponent = 1;
  long long g_exponent = 1;
};

/// Shared multicurve configuration of a candidate pair (F, G): vertices are
/// the complementary components, edges the curves of C(F) and C(G), with the
/// permutations the two maps induce. Pseudo-Anosov parts are opaque ids; the
/// power-conjugacy table records which assertions about them are supplied.
struct ConfiguredPair {
  std::vector<PairVertex> vertices;
  std::vector<PairEdge> edges;
  std::vector<int> pi_f_vertices, pi_f_edges;
  std::vector<int> pi_g_vertices, pi_g_edges;
  long long n = 0;  // order of F; 0 = infinite
  long long m = 1;  // degree of G
  long long k = 1;
  // (id, exponent) -> id of a conjugate of the power.
  std::map<std::pair<std::string, long long>, std::string> pa_conjugacy;
  std::vector<CyclicCertificate> certificates;
};

enum class Certification { Certified, NecessaryConditions };

struct ConditionResult {
  bool pass = true;
  Certification certification = Certification::Certified;
  std::string detail;
};

struct Main2Verdict {
  std::array<ConditionResult, 5> conditions;
  bool pass = true;
  Certification certification = Certification::Certified;
};

/// Decision procedure for "<F, G> is infinite metacyclic with no
/// pseudo-Anosov generator": evaluates the five conditions on the configured
/// pair. Periodic component checks in condition (iv) are certified at
/// necessary-condition strength (power invariance of the data set plus an
/// Aut_k witness); everything else is exact on the encoding.
Main2Verdict check_main2(const ConfiguredPair& pair);

struct LevelMVerdict {
  bool pass = true;
  std::vector<std::string> reasons;
};

/// Level-m constraint (m > 2): the pair must commute (k = 1), every
/// nontrivial component must be pseudo-Anosov, and parts sharing a vertex
/// must exhibit a common root through a cyclic certificate. A missing
/// certificate is an error, not a verdict.
LevelMVerdict check_level_m(const ConfiguredPair& pair, long long m);

nlohmann::json to_json(const ConfiguredPair& pair);
ConfiguredPair configured_pair_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Constructive searches and enumerative verification.
// ---------------------------------------------------------------------------

struct ZmWitness {
  long long m = 1;
  long long k_prime = 0;  // a^-1 + b^-1 mod n
  long long k = 0;        // a + b mod n/m

  auto operator<=>(const ZmWitness&) const = default;
};

/// Divisor search for Z x Z_m extensions through two full-order cone points
/// with residues a and b: all m | n with gcd(m, n/m) = 1 and m != n such that
/// k' = a^-1 + b^-1 != 0 (mod n), a + b = 0 (mod m), and a + b = k' (mod n/m).
std::vector<ZmWitness> search_abelian_zm(const CyclicDataSet& ds, long long a,
                                         long long b);

enum class DihedralKind { ZnSemiZ, ZSemiZ2, None };

struct DihedralReport {
  DihedralKind kind = DihedralKind::None;
  long long a = 0, b = 0;
  long long ambient_genus = 0;  // 2g + 1
};

/// Root-of-twist extension through two full-order cone points (a,n), (b,n):
/// Z_n semidirect_-1 Z when a = b, Z semidirect_-1 Z_2 when a != b, inside
/// Mod(S_{2g+1}). With no explicit slot choice a repeated residue is
/// preferred (it yields the presentation with a periodic normal generator).
DihedralReport search_dihedral_extension(
    const CyclicDataSet& ds, std::optional<std::pair<int, int>> slots = {});

struct BoundsReport {
  bool no_degree_4g1 = true;
  bool degree_4g2_all_irreducible = true;
  bool reducible_bound_ok = true;
  long long reducible_max_degree = 0;
  std::vector<std::string> counterexamples;

  bool pass() const {
    return no_degree_4g1 && degree_4g2_all_irreducible && reducible_bound_ok;
  }
};

/// Exhaustive verification of the order bounds at one genus: no data set of
/// degree 4g+1; every degree-(4g+2) data set irreducible; reducible degrees
/// reach 2g+2 only for even g, with the unique signature (0;2,2,g+1,g+1),
/// and otherwise stay at or below 2g.
BoundsReport verify_bounds(long long g);

struct CentralizerReport {
  bool cyclic = true;  // centralizer is <F>
  std::vector<CyclicDataSet> candidates;  // bounded case: candidate involutions
  bool order3_excluded = true;   // no order-3 symmetry: 3 c_1 != 0 (mod n)
  bool maclachlan_bound = true;  // bounded case forces n <= 2g+2
  long long genus = 0;
};

/// Centralizer of an irreducible periodic mapping class: cyclic <F> when
/// n > 2g+2 or the three cone pairs are pairwise distinct; otherwise bounded
/// by the normal closure of F and an involution, with the candidate
/// involution data sets determined by the parity of g.
CentralizerReport centralizer_class(const CyclicDataSet& ds);

}  // namespace mcg
