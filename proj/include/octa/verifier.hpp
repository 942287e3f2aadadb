#ifndef OCTA_VERIFIER_HPP
#define OCTA_VERIFIER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "octa/model.hpp"

namespace octa {

/// Parity, for each point s of the omitted colour, of the edges made of s and
/// one point of the octahedron per remaining colour.
struct ParityProfile {
  Octahedron octahedron;
  std::vector<std::uint8_t> parities;

  bool constant() const;
};

/// A point contained in no edge, if any (violation of the covering property).
std::optional<PointRef> find_isolated_vertex(const EdgeSet& h);

ParityProfile octahedron_parity(const EdgeSet& h, const Octahedron& octahedron);

struct OctahedralVerdict {
  /// First violating octahedron in (colour, first, second) order; empty iff the parity property holds.
  std::optional<Octahedron> counterexample;

  bool holds() const { return !counterexample.has_value(); }
  explicit operator bool() const { return holds(); }
};

/// Checks the parity property on every octahedron of every colour.
OctahedralVerdict is_octahedral_system(const EdgeSet& h);

/// Covering and parity property together.
bool is_system_without_isolated_vertex(const EdgeSet& h);

/// Edges of h with no other edge of h at Hamming distance one, in code order.
std::vector<Edge> isolated_edges(const EdgeSet& h);

// ---------------------------------------------------------------------------
// Brute-force oracles. These enumerate edge sets directly and share nothing
// with the search module beyond the property checks above.

struct OracleOptions {
  /// Reduce by colour permutations and by permutations of labels 1..d in each
  /// colour (label 0 fixed). Only available for d <= 3.
  bool use_symmetry = true;
  /// Rejects requests whose estimated work (sets tested times group size) exceeds this.
  double work_budget = 2e10;
};

/// The symmetry group used by the oracle, as permutations of edge codes.
std::vector<std::vector<EdgeCode>> oracle_symmetry_group(const Shape& shape);

/// Visits one representative per orbit (or every set, without symmetry) of edge
/// sets with at most max_edges edges, in depth-first order of growing sets.
/// With `require_cover`, sets that cannot cover every point within max_edges are
/// skipped along with their supersets. The visitor returns false to stop.
/// Throws std::invalid_argument when the work estimate exceeds the budget.
void enumerate_edge_sets(const Shape& shape, int max_edges, bool require_cover,
                         const OracleOptions& options,
                         const std::function<bool(const EdgeSet&)>& visit);

struct MinSizeResult {
  /// Smallest octahedral system without isolated vertex with at most max_edges edges.
  std::optional<EdgeSet> witness;
  std::uint64_t sets_examined = 0;

  std::optional<int> size() const {
    return witness ? std::optional<int>(static_cast<int>(witness->size())) : std::nullopt;
  }
};

MinSizeResult brute_force_min_size(const Shape& shape, int max_edges, const OracleOptions& options = {});

/// Searches supersets of `partial` using only edges not marked in `forbidden`
/// (indexed by code) with at most max_edges edges in total; returns the first one
/// accepted, enumerating by increasing number of added edges. No symmetry.
std::optional<EdgeSet> find_extension(const EdgeSet& partial, const std::vector<bool>& forbidden,
                                      int max_edges,
                                      const std::function<bool(const EdgeSet&)>& accept);

}  // namespace octa

#endif  // OCTA_VERIFIER_HPP
