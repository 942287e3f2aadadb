#include "octa/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <future>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "octa/verifier.hpp"

namespace octa {

std::string to_string(const CaseParams& c) {
  return "(l=" + std::to_string(c.l) + ",b=" + std::to_string(c.b) + ",j=" + std::to_string(c.j) +
         ",target=" + std::to_string(c.target) + ")";
}

bool valid_case(int d, const CaseParams& c) {
  const auto in_range = [d](int v) { return v >= 1 && v <= d; };
  return in_range(c.l) && in_range(c.b) && in_range(c.j) && c.j + c.b >= d + 1 && c.l <= d - 1;
}

int case_lower_bound(int d, int l, int b, int j) {
  int bound = std::max(j * (d + 1), (b + l) * (d + 1) - 2 * b * l);
  // The dl+1 bound holds only when colour 0 minimises l and 2l >= d+2.
  if (2 * l >= d + 2) bound = std::max(bound, d * l + 1);
  return bound;
}

std::vector<CaseParams> generate_cases(int d, int target) {
  std::vector<CaseParams> out;
  for (int l = d; l >= 1; --l) {
    for (int b = d; b >= 1; --b) {
      for (int j = d; j >= 1; --j) {
        const CaseParams c{l, b, j, target};
        if (valid_case(d, c) && case_lower_bound(d, l, b, j) <= target) out.push_back(c);
      }
    }
  }
  return out;
}

std::vector<CaseParams> generate_elementary_cases(int d, int target) {
  std::vector<CaseParams> out;
  for (int l = d + 1; l >= 1; --l) {
    for (int b = d; b >= 0; --b) {
      for (int j = d + 1; j >= 1; --j) {
        if (j * (d + 1) <= target) out.push_back({l, b, j, target});
      }
    }
  }
  return out;
}

std::vector<RowMask> odd_row_representatives(int d, int b) {
  if (b < 0 || b > d) throw std::invalid_argument("b out of range");
  std::vector<int> perm(static_cast<std::size_t>(d));
  std::vector<std::vector<int>> perms;
  std::iota(perm.begin(), perm.end(), 0);
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<RowMask> reps;
  for (RowMask mask = 0; mask < (RowMask{1} << d); ++mask) {
    if (std::popcount(mask) != b) continue;
    RowMask least = mask;
    for (const auto& p : perms) {
      RowMask image = 0;
      for (int r = 0; r < d; ++r) {
        if ((mask >> r) & 1U) image |= RowMask{1} << p[r];
      }
      least = std::min(least, image);
    }
    if (least == mask) reps.push_back(mask);
  }
  return reps;
}

const char* to_string(Phase phase) {
  switch (phase) {
    case Phase::table_repair: return "table-repair";
    case Phase::isolated_repair: return "isolated-repair";
    case Phase::free: return "free";
  }
  return "?";
}

const char* to_string(PruneReason reason) {
  switch (reason) {
    case PruneReason::uncovered: return "uncovered";
    case PruneReason::colour0_undercount: return "colour0-undercount";
    case PruneReason::subcase_exclusion: return "subcase-exclusion";
  }
  return "?";
}

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::exhausted: return "exhausted";
    case Outcome::witness: return "witness";
    case Outcome::budget_exceeded: return "budget-exceeded";
  }
  return "?";
}

SearchNode::SearchNode(const Shape& shape, const CaseParams& p, RowMask odd)
    : params(p), odd_rows(odd), partial(shape), table(shape), forbidden(shape.edge_space(), false) {}

namespace {

Edge base_edge(const Shape& shape, int x) {
  std::array<int, kMaxColours> choice{};
  choice[0] = x;
  return Edge(shape, std::span<const int>(choice.data(), shape.colours()));
}

void check_case_ranges(int d, const CaseParams& c) {
  if (c.l < 1 || c.l > d + 1 || c.b < 0 || c.b > d || c.j < 1 || c.target < 0) {
    throw std::invalid_argument("case " + to_string(c) + " out of range for d=" + std::to_string(d));
  }
}

int min_colour0_coverage(const EdgeSet& h) {
  int least = h.incidence({0, 0});
  for (int i = 1; i < h.shape().points_per_colour(); ++i) least = std::min(least, h.incidence({0, i}));
  return least;
}

int realised_l(const EdgeSet& h) {
  int l = 0;
  for (int x = 0; x < h.shape().colours(); ++x) l += h.contains(base_edge(h.shape(), x)) ? 1 : 0;
  return l;
}

bool at_size_limit(const SearchNode& node) {
  return static_cast<int>(node.partial.size()) >= node.params.target;
}

std::vector<SearchNode> children_of(const SearchNode& node, const std::vector<Edge>& edges) {
  std::vector<SearchNode> out;
  out.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    SearchNode child = node;
    for (std::size_t k = 0; k < i; ++k) child.forbidden[encode_edge(edges[k])] = true;
    child.partial.add(edges[i]);
    child.table.toggle(edges[i]);
    child.depth = node.depth + 1;
    child.trail.push_back(static_cast<int>(i));
    child.phase = classify(child);
    out.push_back(std::move(child));
  }
  return out;
}

}  // namespace

SearchNode normalize_initial(int d, const CaseParams& params, std::optional<RowMask> odd_rows) {
  check_case_ranges(d, params);
  const Shape shape(d);
  SearchNode node(shape, params, odd_rows.value_or(first_rows(params.b)));
  if (std::popcount(node.odd_rows) != params.b || node.odd_rows >= (RowMask{1} << d)) {
    throw std::invalid_argument("designated odd rows do not match b");
  }
  for (int x = 0; x < shape.colours(); ++x) {
    const Edge e = base_edge(shape, x);
    if (x < params.l) {
      node.partial.add(e);
      node.table.toggle(e);
    } else {
      node.forbidden[encode_edge(e)] = true;
    }
  }
  node.phase = classify(node);
  return node;
}

Phase classify(const SearchNode& node) {
  if (!small_table_mismatches(small_table_of(node.table), node.odd_rows).empty()) {
    return Phase::table_repair;
  }
  const int d = node.shape().dimension();
  if (node.params.target <= d * d && !isolated_edges(node.partial).empty()) {
    return Phase::isolated_repair;
  }
  return Phase::free;
}

std::vector<Edge> table_fix_candidates(const SearchNode& node, TableEntry mismatch, bool representatives) {
  const Shape& shape = node.shape();
  const int d = shape.dimension();
  if (mismatch.row < 1 || mismatch.row > d || mismatch.column < 0 || mismatch.column > d) {
    throw std::invalid_argument("small-table entry out of range");
  }
  std::vector<Edge> out;
  if (at_size_limit(node)) return out;
  std::array<int, kMaxColours> choice{};
  choice[0] = mismatch.column;
  const auto admissible = [&](const Edge& e) {
    const EdgeCode code = encode_edge(e);
    return !node.partial.contains(code) && !node.is_forbidden(code);
  };
  if (representatives) {
    for (int weight = 1; weight <= d; ++weight) {
      for (int j = 1; j <= d; ++j) choice[j] = j <= weight ? mismatch.row : 0;
      const Edge e(shape, std::span<const int>(choice.data(), shape.colours()));
      if (admissible(e)) out.push_back(e);
    }
    return out;
  }
  // Subsets of colours 1..d taking the row label; the bit order below follows
  // code order because colour d is the most significant coordinate.
  for (unsigned mask = 1; mask < (1U << d); ++mask) {
    for (int j = 1; j <= d; ++j) choice[j] = ((mask >> (j - 1)) & 1U) ? mismatch.row : 0;
    const Edge e(shape, std::span<const int>(choice.data(), shape.colours()));
    if (admissible(e)) out.push_back(e);
  }
  return out;
}

std::vector<SearchNode> branch_table_fix(const SearchNode& node, TableEntry mismatch, bool representatives) {
  return children_of(node, table_fix_candidates(node, mismatch, representatives));
}

int uncovered_bound(const EdgeSet& partial) {
  const Shape& shape = partial.shape();
  int worst = 0;
  for (int c = 0; c < shape.colours(); ++c) {
    int uncovered = 0;
    for (int i = 0; i < shape.points_per_colour(); ++i) uncovered += partial.incidence({c, i}) == 0;
    worst = std::max(worst, uncovered);
  }
  return worst;
}

int undercount_bound(const EdgeSet& partial, int j) {
  int total = 0;
  for (int i = 0; i < partial.shape().points_per_colour(); ++i) {
    total += std::max(0, j - partial.incidence({0, i}));
  }
  return total;
}

PruneVerdict prune(const SearchNode& node, const CaseParams& params) {
  const int size = static_cast<int>(node.partial.size());
  if (min_colour0_coverage(node.partial) > params.j) return {PruneReason::subcase_exclusion};
  const int k = uncovered_bound(node.partial);
  const int k_prime = undercount_bound(node.partial, params.j);
  if (size + std::max(k, k_prime) > params.target) {
    return {k >= k_prime ? PruneReason::uncovered : PruneReason::colour0_undercount};
  }
  return {};
}

std::vector<Edge> isolated_candidates(const SearchNode& node) {
  std::vector<Edge> out;
  if (at_size_limit(node)) return out;
  const std::vector<Edge> lonely = isolated_edges(node.partial);
  if (lonely.empty()) return out;
  for (const Edge& e : adjacent_edges(lonely.front())) {
    const EdgeCode code = encode_edge(e);
    if (!node.partial.contains(code) && !node.is_forbidden(code)) out.push_back(e);
  }
  return out;
}

std::vector<SearchNode> branch_isolated(const SearchNode& node) {
  return children_of(node, isolated_candidates(node));
}

std::vector<Edge> free_candidates(const SearchNode& node) {
  std::vector<Edge> out;
  if (at_size_limit(node)) return out;
  const Shape& shape = node.shape();
  for (EdgeCode code = 0; code < shape.edge_space(); ++code) {
    if (!node.partial.contains(code) && !node.is_forbidden(code)) out.push_back(decode_edge(code, shape));
  }
  return out;
}

std::vector<SearchNode> branch_free(const SearchNode& node) { return children_of(node, free_candidates(node)); }

bool is_case_leaf(const SearchNode& node) {
  const CaseParams& p = node.params;
  if (static_cast<int>(node.partial.size()) > p.target) return false;
  if (find_isolated_vertex(node.partial)) return false;
  if (realised_l(node.partial) != p.l) return false;
  if (!small_table_mismatches(small_table_of(node.table), node.odd_rows).empty()) return false;
  if (min_colour0_coverage(node.partial) != p.j) return false;
  if (node.table.score() != 0) return false;
  return is_octahedral_system(node.partial).holds();
}

bool witness_matches_case(const EdgeSet& witness, const CaseParams& params, RowMask odd) {
  const std::vector<EdgeCode> codes(witness.codes().begin(), witness.codes().end());
  const EdgeSet h = EdgeSet::from_codes(witness.shape(), codes);
  if (static_cast<int>(h.size()) > params.target) return false;
  if (!is_system_without_isolated_vertex(h)) return false;
  if (realised_l(h) != params.l) return false;
  const SmallTable small = build_small_table(h);
  if (!rows_constant(small) || odd_rows(small) != odd) return false;
  return min_colour0_coverage(h) == params.j;
}

SearchStats& SearchStats::operator+=(const SearchStats& o) {
  nodes += o.nodes;
  for (int r = 0; r < kPruneReasons; ++r) prunes[r] += o.prunes[r];
  size_limit += o.size_limit;
  dead_ends += o.dead_ends;
  table_branches += o.table_branches;
  isolated_branches += o.isolated_branches;
  free_branches += o.free_branches;
  children += o.children;
  leaf_checks += o.leaf_checks;
  max_depth = std::max(max_depth, o.max_depth);
  return *this;
}

namespace {

using Clock = std::chrono::steady_clock;

enum class Expansion { cut, leaf, dead, branched };

enum class RunStatus { done, witness, budget, cancelled };

// Depth-first explorer over one subcase. Owns a single mutable node; the
// explicit stack records, per level, the candidate edges and the position
// reached, which is all a checkpoint needs.
class Explorer {
 public:
  Explorer(int d, const CaseParams& params, RowMask odd, const SearchOptions& options, const Budget& budget,
           Clock::time_point started)
      : node_(normalize_initial(d, params, odd)),
        symmetry_(options.first_branch_symmetry),
        paranoid_(options.paranoid_tables),
        budget_(budget),
        started_(started) {}

  SearchStats stats;
  std::uint64_t offset = 0;  // nodes counted before this explorer in the same case
  const std::atomic<bool>* cancel = nullptr;

  const SearchNode& node() const { return node_; }
  std::vector<int> position() const {
    std::vector<int> trail;
    for (std::size_t k = 0; k < stack_.size(); ++k) {
      trail.push_back(k + 1 < stack_.size() ? stack_[k].active : stack_[k].next);
    }
    return trail;
  }
  std::size_t root_children() const { return stack_.empty() ? 0 : stack_.front().children.size(); }

  Expansion expand_root(bool counted) { return expand(counted); }

  // Rebuilds the stack so that the next child taken at the deepest level is
  // trail.back() and every shallower level sits on trail[k]. Nothing is counted.
  void replay(const std::vector<int>& trail) {
    if (expand(false) != Expansion::branched) throw std::invalid_argument("checkpoint root does not branch");
    for (std::size_t k = 0; k < trail.size(); ++k) {
      Frame& f = stack_.back();
      const int idx = trail[k];
      if (idx < 0 || static_cast<std::size_t>(idx) > f.children.size() ||
          (k + 1 < trail.size() && static_cast<std::size_t>(idx) >= f.children.size())) {
        throw std::invalid_argument("checkpoint trail index out of range at depth " + std::to_string(k));
      }
      for (int s = 0; s < idx; ++s) node_.forbidden[f.children[s]] = true;
      f.next = idx;
      if (k + 1 == trail.size()) break;
      f.active = idx;
      f.next = idx + 1;
      apply(f.children[idx]);
      if (expand(false) != Expansion::branched) {
        throw std::invalid_argument("checkpoint trail leaves the search tree at depth " + std::to_string(k));
      }
    }
  }

  bool budget_spent() const {
    if (budget_.node_limit != 0 && offset + stats.nodes >= budget_.node_limit) return true;
    if (budget_.time_limit_seconds > 0) {
      const std::chrono::duration<double> spent = Clock::now() - started_;
      if (spent.count() >= budget_.time_limit_seconds) return true;
    }
    return false;
  }

  // Takes the next child of the top frame and explores until the stack is back
  // to `floor` frames. With `first`, one child is taken unconditionally even if
  // the stack is already at the floor.
  RunStatus explore(std::size_t floor, bool first = false) {
    while (first || stack_.size() > floor) {
      if (cancel != nullptr && cancel->load(std::memory_order_relaxed)) return RunStatus::cancelled;
      Frame& f = stack_.back();
      if (f.active >= 0) {
        retract(f.children[f.active]);
        node_.forbidden[f.children[f.active]] = true;
        f.active = -1;
      }
      if (static_cast<std::size_t>(f.next) == f.children.size()) {
        for (EdgeCode c : f.children) node_.forbidden[c] = false;
        stack_.pop_back();
        first = false;
        continue;
      }
      if (budget_spent()) return RunStatus::budget;
      f.active = f.next++;
      apply(f.children[f.active]);
      first = false;
      if (expand(true) == Expansion::leaf) return RunStatus::witness;
    }
    return RunStatus::done;
  }

 private:
  struct Frame {
    std::vector<EdgeCode> children;
    int next = 0;
    int active = -1;
  };

  void apply(EdgeCode code) {
    const Edge e = decode_edge(code, node_.shape());
    node_.partial.add(e);
    node_.table.toggle(e);
    ++node_.depth;
    check_tables();
  }

  void retract(EdgeCode code) {
    const Edge e = decode_edge(code, node_.shape());
    node_.partial.remove(e);
    node_.table.toggle(e);
    --node_.depth;
    check_tables();
  }

  void check_tables() const {
    if (paranoid_ && !(build_large_table(node_.partial) == node_.table)) {
      throw std::logic_error("incremental large table diverged from rebuild");
    }
  }

  Expansion expand(bool counted) {
    SearchStats scratch;
    SearchStats& s = counted ? stats : scratch;
    ++s.nodes;
    s.max_depth = std::max(s.max_depth, node_.depth);
    const PruneVerdict verdict = prune(node_, node_.params);
    if (!verdict.keep()) {
      ++s.prunes[static_cast<int>(*verdict.cut)];
      return Expansion::cut;
    }
    if (leaf_candidate()) {
      ++s.leaf_checks;
      if (is_octahedral_system(node_.partial).holds()) return Expansion::leaf;
    }
    if (at_size_limit(node_)) {
      ++s.size_limit;
      return Expansion::dead;
    }
    std::vector<Edge> candidates;
    node_.phase = classify(node_);
    switch (node_.phase) {
      case Phase::table_repair: {
        const auto mismatches = small_table_mismatches(small_table_of(node_.table), node_.odd_rows);
        candidates = table_fix_candidates(node_, mismatches.front(), symmetry_ && node_.is_root());
        ++s.table_branches;
        break;
      }
      case Phase::isolated_repair:
        candidates = isolated_candidates(node_);
        ++s.isolated_branches;
        break;
      case Phase::free:
        candidates = free_candidates(node_);
        ++s.free_branches;
        break;
    }
    if (candidates.empty()) {
      ++s.dead_ends;
      return Expansion::dead;
    }
    s.children += candidates.size();
    Frame f;
    f.children.reserve(candidates.size());
    for (const Edge& e : candidates) f.children.push_back(encode_edge(e));
    stack_.push_back(std::move(f));
    return Expansion::branched;
  }

  // Everything in the leaf test except the full parity scan.
  bool leaf_candidate() const {
    const CaseParams& p = node_.params;
    if (static_cast<int>(node_.partial.size()) > p.target) return false;
    if (node_.table.score() != 0) return false;
    if (find_isolated_vertex(node_.partial)) return false;
    if (realised_l(node_.partial) != p.l) return false;
    if (min_colour0_coverage(node_.partial) != p.j) return false;
    return small_table_mismatches(small_table_of(node_.table), node_.odd_rows).empty();
  }

  SearchNode node_;
  bool symmetry_;
  bool paranoid_;
  Budget budget_;
  Clock::time_point started_;
  std::vector<Frame> stack_;
};

struct SubtreeResult {
  RunStatus status = RunStatus::done;
  SearchStats stats;
  std::vector<int> trail;
  std::optional<EdgeSet> witness;
};

// Explores root child `index` of a subcase with the given node offset.
SubtreeResult run_subtree(int d, const CaseParams& params, RowMask odd, const SearchOptions& options,
                          const Budget& budget, Clock::time_point started, std::uint64_t offset,
                          std::size_t index, const std::atomic<bool>* cancel) {
  Explorer ex(d, params, odd, options, budget, started);
  ex.offset = offset;
  ex.cancel = cancel;
  ex.replay({static_cast<int>(index)});
  SubtreeResult r;
  r.status = ex.explore(1, /*first=*/true);
  r.stats = ex.stats;
  if (r.status == RunStatus::budget) r.trail = ex.position();
  if (r.status == RunStatus::witness) r.witness = ex.node().partial;
  return r;
}

struct SubcaseResult {
  RunStatus status = RunStatus::done;
  std::vector<int> trail;
  std::optional<EdgeSet> witness;
};

// Runs one subcase from scratch, adding to `stats` (which already holds the
// nodes of earlier subcases).
SubcaseResult run_subcase(int d, const CaseParams& params, RowMask odd, const SearchOptions& options,
                          const Budget& budget, Clock::time_point started, SearchStats& stats) {
  SubcaseResult out;
  Explorer root(d, params, odd, options, budget, started);
  root.offset = stats.nodes;
  if (root.budget_spent()) {
    out.status = RunStatus::budget;
    return out;
  }
  const Expansion first = root.expand_root(true);
  stats += root.stats;
  if (first == Expansion::leaf) {
    out.status = RunStatus::witness;
    out.witness = root.node().partial;
    return out;
  }
  if (first != Expansion::branched) return out;

  if (options.jobs <= 1) {
    root.stats = stats;
    root.offset = 0;
    const RunStatus status = root.explore(0);
    stats = root.stats;
    out.status = status;
    if (status == RunStatus::budget) out.trail = root.position();
    if (status == RunStatus::witness) out.witness = root.node().partial;
    return out;
  }

  // Speculative parallel exploration of the root children, merged in order so
  // the result matches the sequential run exactly.
  const std::size_t count = root.root_children();
  const std::uint64_t base = stats.nodes;
  std::vector<std::promise<SubtreeResult>> promises(count);
  std::vector<std::future<SubtreeResult>> futures;
  for (auto& p : promises) futures.push_back(p.get_future());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  const int workers = std::min<int>(options.jobs, static_cast<int>(count));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          if (stop.load()) {
            promises[i].set_value(SubtreeResult{RunStatus::cancelled, {}, {}, {}});
            continue;
          }
          promises[i].set_value(run_subtree(d, params, odd, options, budget, started, base, i, &stop));
        } catch (...) {
          promises[i].set_exception(std::current_exception());
        }
      }
    });
  }
  std::exception_ptr failure;
  out.status = RunStatus::done;
  try {
    for (std::size_t i = 0; i < count; ++i) {
      SubtreeResult r = futures[i].get();
      const std::uint64_t used = stats.nodes;
      const bool fits = budget.node_limit == 0 || used + r.stats.nodes <= budget.node_limit;
      const bool finished = r.status == RunStatus::done || r.status == RunStatus::witness;
      if (!(finished && fits)) {
        // Budget bound differently than speculated (or cancelled): redo exactly.
        r = run_subtree(d, params, odd, options, budget, started, used, i, nullptr);
      }
      stats += r.stats;
      if (r.status == RunStatus::witness) {
        out.status = RunStatus::witness;
        out.witness = std::move(r.witness);
        break;
      }
      if (r.status == RunStatus::budget) {
        out.status = RunStatus::budget;
        out.trail = std::move(r.trail);
        break;
      }
    }
  } catch (...) {
    failure = std::current_exception();
  }
  stop.store(true);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace

Certificate run_case(int d, const CaseParams& params, const Budget& budget, const SearchOptions& options,
                     const std::optional<Checkpoint>& resume) {
  const Clock::time_point started = Clock::now();
  check_case_ranges(d, params);
  Certificate cert;
  cert.d = d;
  cert.params = params;

  std::size_t first_subcase = 0;
  if (resume) {
    if (resume->d != d || !(resume->params == params) ||
        resume->first_branch_symmetry != options.first_branch_symmetry) {
      throw std::invalid_argument("checkpoint belongs to a different case or symmetry setting");
    }
    first_subcase = static_cast<std::size_t>(resume->subcase);
  }
  const std::vector<RowMask> subcases = odd_row_representatives(d, params.b);
  if (first_subcase >= subcases.size() && !subcases.empty()) {
    throw std::invalid_argument("checkpoint subcase index out of range");
  }

  SearchStats stats = resume ? resume->stats : SearchStats{};
  for (std::size_t s = first_subcase; s < subcases.size(); ++s) {
    SubcaseResult r;
    if (resume && s == first_subcase && !resume->trail.empty()) {
      Explorer ex(d, params, subcases[s], options, budget, started);
      ex.replay(resume->trail);
      ex.stats = stats;
      const RunStatus status = ex.explore(0);
      stats = ex.stats;
      r.status = status;
      if (status == RunStatus::budget) r.trail = ex.position();
      if (status == RunStatus::witness) r.witness = ex.node().partial;
    } else {
      r = run_subcase(d, params, subcases[s], options, budget, started, stats);
    }
    if (r.status == RunStatus::witness) {
      if (!witness_matches_case(*r.witness, params, subcases[s])) {
        throw std::logic_error("search produced a witness that fails independent verification");
      }
      cert.outcome = Outcome::witness;
      cert.witness = std::move(r.witness);
      cert.witness_odd_rows = subcases[s];
      break;
    }
    if (r.status == RunStatus::budget) {
      cert.outcome = Outcome::budget_exceeded;
      cert.checkpoint = Checkpoint{d, params, options.first_branch_symmetry, static_cast<int>(s), r.trail, stats};
      break;
    }
  }
  cert.stats = stats;
  cert.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return cert;
}

BoundReport prove_bound(int d, int target, const Budget& budget, const SearchOptions& options) {
  BoundReport report;
  report.d = d;
  report.target = target;
  (void)Shape{d};
  if (target < d + 1) {
    report.proven_lower_bound = d + 1;
    report.note = "covering property: each colour has d+1 points, so at least d+1 edges";
    return report;
  }
  std::vector<CaseParams> cases;
  if (target <= d * d) {
    cases = generate_cases(d, target);
    report.note = "cases from the (l,b,j) decomposition";
  } else {
    cases = generate_elementary_cases(d, target);
    report.note = "target above d^2: elementary (l,b,j) cases without imported bounds";
  }

  report.certificates.resize(cases.size());
  const int workers = std::max(1, std::min<int>(options.jobs, static_cast<int>(cases.size())));
  SearchOptions per_case = options;
  per_case.jobs = std::max(1, options.jobs / workers);
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  const auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cases.size()) return;
      try {
        report.certificates[i] = run_case(d, cases[i], budget, per_case);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  const bool all_exhausted = std::all_of(report.certificates.begin(), report.certificates.end(),
                                         [](const Certificate& c) { return c.outcome == Outcome::exhausted; });
  if (all_exhausted) report.proven_lower_bound = target + 1;
  return report;
}

}  // namespace octa
