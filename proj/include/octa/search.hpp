#ifndef OCTA_SEARCH_HPP
#define OCTA_SEARCH_HPP

// Case-decomposed branch-and-prune search for small octahedral systems
// without isolated vertex.
//
// Every case fixes colour 0 and the base transversal t0 = *00..0 and is
// described by (l, b, j): l edges contain t0 (normalised to x00..0 for x < l),
// b small-table rows are odd (normalised to rows 1..b), and j is the minimum
// number of edges through a point of colour 0. A node is a partial edge set plus
// a set of forbidden edges; branching adds one edge per child and forbids the
// edges of earlier siblings, so the subtrees partition the extensions.

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "octa/model.hpp"
#include "octa/tables.hpp"

namespace octa {

struct CaseParams {
  int l = 0;
  int b = 0;
  int j = 0;
  int target = 0;  ///< largest edge count to refute

  friend bool operator==(const CaseParams&, const CaseParams&) = default;
};

std::string to_string(const CaseParams& c);

/// 1 <= l, b, j <= d, j + b >= d + 1, l <= d - 1.
bool valid_case(int d, const CaseParams& c);

/// max(j(d+1), (b+l)(d+1) - 2bl, dl+1 when l >= (d+2)/2).
int case_lower_bound(int d, int l, int b, int j);

/// Valid (l, b, j) triples whose lower bound does not exceed target, ordered by
/// descending l, then descending b, then descending j.
std::vector<CaseParams> generate_cases(int d, int target);

/// Cases that rely only on relabelling and the covering property: l in 1..d+1,
/// b in 0..d, j(d+1) <= target. Used when target exceeds d^2.
std::vector<CaseParams> generate_elementary_cases(int d, int target);

/// Designated odd-row sets of size b, one per orbit of the simultaneous
/// relabelling of labels 1..d (which permutes small-table rows).
std::vector<RowMask> odd_row_representatives(int d, int b);

enum class Phase { table_repair, isolated_repair, free };

const char* to_string(Phase phase);

struct SearchNode {
  CaseParams params;
  RowMask odd_rows = 0;
  EdgeSet partial;
  LargeTable table;
  /// Indexed by edge code.
  std::vector<bool> forbidden;
  Phase phase = Phase::table_repair;
  int depth = 0;
  std::vector<int> trail;

  SearchNode(const Shape& shape, const CaseParams& params, RowMask odd_rows);

  const Shape& shape() const { return partial.shape(); }
  bool is_forbidden(EdgeCode code) const { return forbidden[code]; }
  bool is_root() const { return depth == 0; }
};

/// Root node of a case: partial = {x00..0 : x < l}, the other x00..0 forbidden.
/// `odd_rows` defaults to rows 1..b.
SearchNode normalize_initial(int d, const CaseParams& params, std::optional<RowMask> odd_rows = {});

/// Phase a node branches in: table repair while the small table disagrees with
/// the designated rows, isolated-edge repair when an isolated edge exists and
/// target <= d^2, free branching otherwise.
Phase classify(const SearchNode& node);

/// Edges flipping small-table entry (row, column): colour-0 point = column and
/// every other coordinate in {0, row}, without x00..0, present or forbidden
/// edges. With `representatives`, only c r 0..0, c r r 0..0, ..., c r..r (one
/// per weight, valid at a fresh root by permuting colours 1..d).
std::vector<Edge> table_fix_candidates(const SearchNode& node, TableEntry mismatch, bool representatives);
std::vector<SearchNode> branch_table_fix(const SearchNode& node, TableEntry mismatch,
                                         bool representatives = false);

enum class PruneReason { uncovered = 0, colour0_undercount = 1, subcase_exclusion = 2 };
inline constexpr int kPruneReasons = 3;

const char* to_string(PruneReason reason);

struct PruneVerdict {
  std::optional<PruneReason> cut;

  bool keep() const { return !cut.has_value(); }
};

/// Uncovered points per colour (k) and colour-0 undercount against j (k').
int uncovered_bound(const EdgeSet& partial);
int undercount_bound(const EdgeSet& partial, int j);

/// Cuts when |partial| + max(k, k') > target, or when every colour-0 point is
/// already in more than j edges.
PruneVerdict prune(const SearchNode& node, const CaseParams& params);

/// Neighbours of the first isolated edge that are neither present nor forbidden.
/// Empty when the partial has no isolated edge.
std::vector<Edge> isolated_candidates(const SearchNode& node);
std::vector<SearchNode> branch_isolated(const SearchNode& node);

/// Every absent, non-forbidden edge in code order; nothing when the partial is
/// already at the target size.
std::vector<Edge> free_candidates(const SearchNode& node);
std::vector<SearchNode> branch_free(const SearchNode& node);

/// Leaf test: covering and parity property, size <= target, and realised
/// (l, odd rows, j) equal to the case.
bool is_case_leaf(const SearchNode& node);

/// Independent re-check of a witness, rebuilt from its edge codes.
bool witness_matches_case(const EdgeSet& witness, const CaseParams& params, RowMask odd_rows);

struct SearchStats {
  std::uint64_t nodes = 0;
  std::array<std::uint64_t, kPruneReasons> prunes{};
  std::uint64_t size_limit = 0;  ///< nodes at the target size that are not leaves
  std::uint64_t dead_ends = 0;   ///< nodes with no admissible child
  std::uint64_t table_branches = 0;
  std::uint64_t isolated_branches = 0;
  std::uint64_t free_branches = 0;
  std::uint64_t children = 0;
  std::uint64_t leaf_checks = 0;  ///< full parity verifications
  int max_depth = 0;

  SearchStats& operator+=(const SearchStats& other);
  friend bool operator==(const SearchStats&, const SearchStats&) = default;
};

struct Budget {
  std::uint64_t node_limit = 0;  ///< 0: unlimited; counts nodes over the whole case
  double time_limit_seconds = 0;  ///< 0: unlimited
};

struct SearchOptions {
  bool first_branch_symmetry = true;
  int jobs = 1;
  /// Recompute the large table from scratch at every node and compare.
  bool paranoid_tables = false;
};

/// Resumable position: the child index taken at every level of the current path.
struct Checkpoint {
  int d = 0;
  CaseParams params;
  bool first_branch_symmetry = true;
  int subcase = 0;
  std::vector<int> trail;
  SearchStats stats;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

enum class Outcome { exhausted, witness, budget_exceeded };

const char* to_string(Outcome outcome);

struct Certificate {
  int d = 0;
  CaseParams params;
  Outcome outcome = Outcome::exhausted;
  std::optional<EdgeSet> witness;
  RowMask witness_odd_rows = 0;
  std::optional<Checkpoint> checkpoint;
  SearchStats stats;
  double wall_seconds = 0;
};

/// Depth-first search of one case. A checkpoint whose case does not match, or
/// whose trail does not replay, is rejected with std::invalid_argument.
Certificate run_case(int d, const CaseParams& params, const Budget& budget = {},
                     const SearchOptions& options = {}, const std::optional<Checkpoint>& resume = {});

struct BoundReport {
  int d = 0;
  int target = 0;
  /// Set when every case was exhausted: no system of size <= target exists.
  std::optional<int> proven_lower_bound;
  std::vector<Certificate> certificates;
  /// Reason recorded when no case needs searching.
  std::string note;
};

/// Runs every generated case. When target < d+1 the covering property alone
/// settles the bound.
BoundReport prove_bound(int d, int target, const Budget& budget = {}, const SearchOptions& options = {});

}  // namespace octa

#endif  // OCTA_SEARCH_HPP
