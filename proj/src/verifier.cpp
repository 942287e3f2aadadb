#include "octa/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "octa/tables.hpp"

namespace octa {

bool ParityProfile::constant() const {
  return std::all_of(parities.begin(), parities.end(),
                     [&](std::uint8_t p) { return p == parities.front(); });
}

std::optional<PointRef> find_isolated_vertex(const EdgeSet& h) {
  const Shape& shape = h.shape();
  for (int c = 0; c < shape.colours(); ++c) {
    for (int i = 0; i < shape.points_per_colour(); ++i) {
      if (h.incidence({c, i}) == 0) return PointRef{c, i};
    }
  }
  return std::nullopt;
}

namespace {

// Parity bits per apex for one octahedron, as a bitmask over the points of the
// omitted colour.
unsigned parity_mask(const EdgeSet& h, const Octahedron& o) {
  const Shape& shape = h.shape();
  const int colours = shape.colours();
  const int omitted = o.omitted_colour();
  std::array<EdgeCode, kMaxColours> weight{};
  EdgeCode w = 1;
  for (int c = 0; c < colours; ++c) {
    weight[c] = w;
    w *= static_cast<EdgeCode>(colours);
  }
  // Codes of the 2^d transversal combinations with the omitted coordinate at 0.
  std::array<EdgeCode, 1U << kMaxDimension> partial{};
  std::size_t count = 1;
  partial[0] = 0;
  for (int c = 0; c < colours; ++c) {
    if (c == omitted) continue;
    const EdgeCode a = static_cast<EdgeCode>(o.first()[c]) * weight[c];
    const EdgeCode b = static_cast<EdgeCode>(o.second()[c]) * weight[c];
    for (std::size_t k = 0; k < count; ++k) {
      partial[count + k] = partial[k] + b;
      partial[k] += a;
    }
    count *= 2;
  }
  unsigned mask = 0;
  for (int s = 0; s < colours; ++s) {
    const EdgeCode apex = static_cast<EdgeCode>(s) * weight[omitted];
    unsigned parity = 0;
    for (std::size_t k = 0; k < count; ++k) parity ^= h.contains(partial[k] + apex) ? 1U : 0U;
    mask |= parity << s;
  }
  return mask;
}

}  // namespace

ParityProfile octahedron_parity(const EdgeSet& h, const Octahedron& octahedron) {
  if (octahedron.first().colours() != h.shape().colours()) {
    throw std::invalid_argument("octahedron shape does not match edge set");
  }
  const unsigned mask = parity_mask(h, octahedron);
  ParityProfile profile{octahedron, {}};
  for (int s = 0; s < h.shape().colours(); ++s) {
    profile.parities.push_back(static_cast<std::uint8_t>((mask >> s) & 1U));
  }
  return profile;
}

OctahedralVerdict is_octahedral_system(const EdgeSet& h) {
  const Shape& shape = h.shape();
  const unsigned all_ones = (1U << shape.colours()) - 1;
  OctahedralVerdict verdict;
  // Colour-0 octahedra on *00..0 come first in the scan order; the table rows
  // reject most non-systems before the general loop runs.
  const LargeTable table = build_large_table(h);
  for (int row = 0; row < table.rows(); ++row) {
    const unsigned bits = table.row_bits(row);
    if (bits != 0 && bits != all_ones) {
      const std::vector<int> u = table.transversal_of(row);
      const std::vector<int> zero(u.size(), 0);
      verdict.counterexample.emplace(Transversal::from_indices(shape, 0, zero),
                                     Transversal::from_indices(shape, 0, u));
      return verdict;
    }
  }
  for (int colour = 0; colour < shape.colours(); ++colour) {
    for_each_octahedron(shape, colour, [&](const Octahedron& o) {
      const unsigned mask = parity_mask(h, o);
      if (mask != 0 && mask != all_ones) {
        verdict.counterexample = o;
        return false;
      }
      return true;
    });
    if (verdict.counterexample) break;
  }
  return verdict;
}

bool is_system_without_isolated_vertex(const EdgeSet& h) {
  return !find_isolated_vertex(h) && is_octahedral_system(h).holds();
}

std::vector<Edge> isolated_edges(const EdgeSet& h) {
  std::vector<Edge> out;
  for (const Edge& e : h.edges()) {
    bool lonely = true;
    for (int c = 0; c < e.colours() && lonely; ++c) {
      for (int i = 0; i < e.colours(); ++i) {
        if (i != e[c] && h.contains(e.with(c, i))) {
          lonely = false;
          break;
        }
      }
    }
    if (lonely) out.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<EdgeCode>> oracle_symmetry_group(const Shape& shape) {
  const int colours = shape.colours();
  const int d = shape.dimension();
  if (d > 3) throw std::invalid_argument("oracle symmetry group is only materialised for d <= 3");

  std::vector<std::vector<int>> label_perms;  // permutations of 0..d fixing 0
  {
    std::vector<int> p(static_cast<std::size_t>(d + 1));
    std::iota(p.begin(), p.end(), 0);
    do {
      label_perms.push_back(p);
    } while (std::next_permutation(p.begin() + 1, p.end()));
  }
  const auto per_colour = static_cast<int>(label_perms.size());

  std::vector<std::vector<EdgeCode>> group;
  std::vector<int> sigma(static_cast<std::size_t>(colours));
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    std::vector<int> pick(static_cast<std::size_t>(colours), 0);
    while (true) {
      std::vector<EdgeCode> image(shape.edge_space());
      for (EdgeCode code = 0; code < shape.edge_space(); ++code) {
        const Edge e = decode_edge(code, shape);
        std::array<int, kMaxColours> mapped{};
        for (int c = 0; c < colours; ++c) mapped[sigma[c]] = label_perms[pick[c]][e[c]];
        image[code] = encode_edge(Edge(shape, std::span<const int>(mapped.data(), colours)));
      }
      group.push_back(std::move(image));
      int k = 0;
      while (k < colours && ++pick[k] == per_colour) pick[k++] = 0;
      if (k == colours) break;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return group;
}

namespace {

double log_binomial(double n, double k) {
  return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

class OrderlyEnumerator {
 public:
  OrderlyEnumerator(const Shape& shape, int max_edges, bool require_cover, bool use_symmetry,
                    const std::function<bool(const EdgeSet&)>& visit)
      : shape_(shape),
        max_edges_(max_edges),
        require_cover_(require_cover),
        visit_(visit),
        current_(shape) {
    if (use_symmetry) group_ = oracle_symmetry_group(shape);
  }

  void run() {
    if (!visit_(current_)) return;
    extend(0);
  }

 private:
  // Smallest sorted image under the group must be the set itself.
  bool canonical() const {
    const std::span<const EdgeCode> set = current_.codes();
    std::array<EdgeCode, 64> image{};
    for (const auto& g : group_) {
      for (std::size_t k = 0; k < set.size(); ++k) image[k] = g[set[k]];
      std::sort(image.begin(), image.begin() + static_cast<std::ptrdiff_t>(set.size()));
      if (std::lexicographical_compare(image.begin(), image.begin() + static_cast<std::ptrdiff_t>(set.size()),
                                       set.begin(), set.end())) {
        return false;
      }
    }
    return true;
  }

  bool coverable() const {
    const int spare = max_edges_ - static_cast<int>(current_.size());
    for (int c = 0; c < shape_.colours(); ++c) {
      int uncovered = 0;
      for (int i = 0; i < shape_.points_per_colour(); ++i) uncovered += current_.incidence({c, i}) == 0;
      if (uncovered > spare) return false;
    }
    return true;
  }

  // Returns false when the visitor asked to stop.
  bool extend(EdgeCode from) {
    if (static_cast<int>(current_.size()) >= max_edges_) return true;
    for (EdgeCode code = from; code < shape_.edge_space(); ++code) {
      current_.add(code);
      bool go_on = true;
      if ((!require_cover_ || coverable()) && (group_.empty() || canonical())) {
        go_on = visit_(current_) && extend(code + 1);
      }
      current_.remove(code);
      if (!go_on) return false;
    }
    return true;
  }

  Shape shape_;
  int max_edges_;
  bool require_cover_;
  const std::function<bool(const EdgeSet&)>& visit_;
  EdgeSet current_;
  std::vector<std::vector<EdgeCode>> group_;
};

}  // namespace

void enumerate_edge_sets(const Shape& shape, int max_edges, bool require_cover,
                         const OracleOptions& options,
                         const std::function<bool(const EdgeSet&)>& visit) {
  if (max_edges < 0) throw std::invalid_argument("max_edges must be non-negative");
  if (max_edges > 64) throw std::invalid_argument("max_edges above 64 is outside the oracle's range");
  const bool symmetric = options.use_symmetry && shape.dimension() <= 3;
  // Orderly generation costs about one group scan per canonical set plus a cheap
  // rejection per non-canonical one, so the work is of the order of the number of
  // subsets with or without symmetry.
  const double edges = static_cast<double>(shape.edge_space());
  double work = 0;
  for (int k = 0; k <= max_edges && k <= edges; ++k) work += std::exp(log_binomial(edges, k));
  if (work > options.work_budget) {
    throw std::invalid_argument("brute-force enumeration at d=" + std::to_string(shape.dimension()) +
                                " with up to " + std::to_string(max_edges) + " edges needs ~" +
                                std::to_string(static_cast<long long>(work)) +
                                " set tests, above the configured budget of " +
                                std::to_string(static_cast<long long>(options.work_budget)));
  }
  OrderlyEnumerator(shape, max_edges, require_cover, symmetric, visit).run();
}

MinSizeResult brute_force_min_size(const Shape& shape, int max_edges, const OracleOptions& options) {
  MinSizeResult result;
  // Iterative deepening so the first hit has minimum size.
  for (int size = 1; size <= max_edges && !result.witness; ++size) {
    enumerate_edge_sets(shape, size, /*require_cover=*/true, options, [&](const EdgeSet& h) {
      if (static_cast<int>(h.size()) != size) return true;
      ++result.sets_examined;
      if (is_system_without_isolated_vertex(h)) {
        result.witness = h;
        return false;
      }
      return true;
    });
  }
  return result;
}

std::optional<EdgeSet> find_extension(const EdgeSet& partial, const std::vector<bool>& forbidden,
                                      int max_edges,
                                      const std::function<bool(const EdgeSet&)>& accept) {
  const Shape& shape = partial.shape();
  std::vector<EdgeCode> allowed;
  for (EdgeCode c = 0; c < shape.edge_space(); ++c) {
    if (!partial.contains(c) && !(c < forbidden.size() && forbidden[c])) allowed.push_back(c);
  }
  const int spare = max_edges - static_cast<int>(partial.size());
  EdgeSet current = partial;
  std::optional<EdgeSet> found;
  // Combinations of exactly `extra` allowed edges.
  std::function<bool(std::size_t, int)> pick = [&](std::size_t from, int extra) -> bool {
    if (extra == 0) {
      if (accept(current)) {
        found = current;
        return true;
      }
      return false;
    }
    for (std::size_t k = from; k + static_cast<std::size_t>(extra) <= allowed.size(); ++k) {
      current.add(allowed[k]);
      const bool hit = pick(k + 1, extra - 1);
      current.remove(allowed[k]);
      if (hit) return true;
    }
    return false;
  };
  for (int extra = 0; extra <= spare; ++extra) {
    if (pick(0, extra)) return found;
  }
  return std::nullopt;
}

}  // namespace octa
