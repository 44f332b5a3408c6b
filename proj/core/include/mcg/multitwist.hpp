#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mcg/dataset.hpp"

namespace mcg {

/// Reference to one orbit of a component action: either a cone slot of the
/// component's data set, or the marker PRINCIPAL for a free orbit of full
/// size, which behaves as the pair (0, 1) in twist-factor arithmetic.
struct OrbitRef {
  static constexpr int kPrincipal = -1;

  int component = 0;
  int slot = kPrincipal;

  bool is_principal() const { return slot == kPrincipal; }
  auto operator<=>(const OrbitRef&) const = default;
};

/// A glued pair of curve orbits together with the derived twist data: the
/// twist factor k_t over n = lcm of the endpoint component degrees, and the
/// multitwist exponent q = N*k_t/n of F^N about the orbit.
struct TwistPairing {
  OrbitRef end_a;
  OrbitRef end_b;
  long long orbit_size = 1;
  long long twist_factor = 0;  // normalized into (-n/2, n/2]
  long long modulus = 1;       // n = lcm of the endpoint degrees
  long long q = 0;

  auto operator<=>(const TwistPairing&) const = default;
};

struct PseudoPeriodicDataSet {
  long long degree = 1;
  std::vector<std::pair<CyclicDataSet, long long>> components;  // (data, orbit size)
  std::vector<TwistPairing> pairings;

  auto operator<=>(const PseudoPeriodicDataSet&) const = default;
};

struct PairingSpec {
  OrbitRef end_a;
  OrbitRef end_b;
};

struct AssemblyReport {
  bool full_semantics = true;  // false when any orbit size exceeds 1
  std::vector<std::string> notes;
};

class AssemblyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Twist factor of two glued cone orbits with ambient degrees nA, nB: the
/// integer k_t with d_a^{-1}/m_a + d_b^{-1}/m_b = k_t/n (mod 1), n = lcm(nA,
/// nB), normalized into (-n/2, n/2] with n/2 ties resolved to +n/2.
/// A missing datum stands for a principal orbit and contributes angle 0.
long long twist_factor(const std::optional<ConeDatum>& a, long long deg_a,
                       const std::optional<ConeDatum>& b, long long deg_b);

/// Orbit-size compatibility of two glued orbits. Principal orbits have size
/// equal to their component degree ("trivially compatible" when both are
/// principal with equal degrees).
bool compatible(long long size_a, long long size_b);

/// Builds and validates a pseudo-periodic data set: derives each pairing's
/// twist factor and exponent q = N*k_t/n, and rejects q = 0, non-integral q,
/// incompatible orbit sizes, disconnected configurations, and a degree N that
/// is not the minimal admissible common multiple.
PseudoPeriodicDataSet assemble(
    const std::vector<std::pair<CyclicDataSet, long long>>& components,
    const std::vector<PairingSpec>& pairings, long long N);

/// Minimal admissible degree: lcm of all component degrees and the pairing
/// denominators n_e / gcd(n_e, k_t_e).
long long minimal_degree(
    const std::vector<std::pair<CyclicDataSet, long long>>& components,
    const std::vector<PairingSpec>& pairings);

AssemblyReport validate(const PseudoPeriodicDataSet& pds);

/// Genus of the glued surface: sum of orbit-weighted component genera plus
/// E - V + 1 for the (connected) configuration graph.
long long total_genus(const PseudoPeriodicDataSet& pds);

/// Exponents of the multitwist F^N, one entry per pairing, in pairing order.
std::vector<std::pair<std::size_t, long long>> multitwist_of(
    const PseudoPeriodicDataSet& pds);

/// ASCII form of the bracket tuple, e.g.
/// [[60;((4,0;(1,4),(3,4),(1,2),(1,2)),1),...;((1,-3,-1;1.2,2.1)),...;-]]
/// Curve entries read ((size,q,k_t;A,B)) where an endpoint A is comp.slot
/// with 1-based indices, or comp.p for a principal orbit. Round-trips with
/// parse_pseudo_periodic.
std::string to_text(const PseudoPeriodicDataSet& pds);
PseudoPeriodicDataSet parse_pseudo_periodic(std::string_view text);

nlohmann::json to_json(const PseudoPeriodicDataSet& pds);
PseudoPeriodicDataSet pseudo_periodic_from_json(const nlohmann::json& j);

}  // namespace mcg
