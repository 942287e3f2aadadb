#ifndef OCTA_TESTS_SUPPORT_HPP
#define OCTA_TESTS_SUPPORT_HPP

// Generators and independent reference computations shared by the test
// binaries. Nothing here calls into the table or verifier code it checks.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "octa/geometry.hpp"
#include "octa/model.hpp"

namespace testing {

using namespace octa;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }
  bool chance(int percent) { return below(100) < percent; }

 private:
  std::mt19937_64 engine_;
};

inline std::vector<int> digits_of(EdgeCode code, int colours) {
  std::vector<int> out;
  for (int c = 0; c < colours; ++c) {
    out.push_back(static_cast<int>(code % static_cast<EdgeCode>(colours)));
    code /= static_cast<EdgeCode>(colours);
  }
  return out;
}

inline EdgeCode ipow(EdgeCode base, int e) {
  EdgeCode r = 1;
  while (e-- > 0) r *= base;
  return r;
}

inline Edge random_edge(const Shape& shape, Rng& rng) {
  return decode_edge(static_cast<EdgeCode>(rng.below(static_cast<int>(shape.edge_space()))), shape);
}

/// Each edge independently with the given percentage.
inline EdgeSet random_edge_set(const Shape& shape, Rng& rng, int percent) {
  EdgeSet h(shape);
  for (EdgeCode c = 0; c < shape.edge_space(); ++c) {
    if (rng.chance(percent)) h.add(c);
  }
  return h;
}

/// Exactly k distinct random edges.
inline EdgeSet random_edge_set_of_size(const Shape& shape, Rng& rng, int k) {
  EdgeSet h(shape);
  while (static_cast<int>(h.size()) < k) {
    const EdgeCode c = static_cast<EdgeCode>(rng.below(static_cast<int>(shape.edge_space())));
    if (!h.contains(c)) h.add(c);
  }
  return h;
}

/// Large-table bits straight from the definition: entry (u, s) is the parity of
/// edges e with e_0 = s and e_j in {0, u_j} for every j >= 1. Rows are indexed by
/// u read as a base-d number with u_1 least significant (u_j - 1 as digits).
inline std::vector<std::vector<int>> reference_large_table(const EdgeSet& h) {
  const int d = h.shape().dimension();
  const int colours = d + 1;
  const int rows = static_cast<int>(ipow(static_cast<EdgeCode>(d), d));
  std::vector<std::vector<int>> t(static_cast<std::size_t>(rows), std::vector<int>(static_cast<std::size_t>(colours), 0));
  for (EdgeCode code : h.codes()) {
    const std::vector<int> e = digits_of(code, colours);
    for (int row = 0; row < rows; ++row) {
      int rest = row;
      bool inside = true;
      for (int j = 1; j <= d; ++j) {
        const int u = rest % d + 1;
        rest /= d;
        if (e[j] != 0 && e[j] != u) inside = false;
      }
      if (inside) t[row][e[0]] ^= 1;
    }
  }
  return t;
}

inline std::int64_t reference_score(const EdgeSet& h) {
  std::int64_t s = 0;
  for (const auto& row : reference_large_table(h)) {
    for (std::size_t c = 1; c < row.size(); ++c) s += row[c] != row[0];
  }
  return s;
}

/// All unordered pairs of disjoint transversals omitting `colour`, as pairs of
/// per-colour choice vectors (omitted slot -1), by brute force over all pairs.
inline std::vector<std::pair<std::vector<int>, std::vector<int>>> reference_octahedra(const Shape& shape,
                                                                                     int colour) {
  const int colours = shape.colours();
  std::vector<std::vector<int>> transversals;
  for (EdgeCode code = 0; code < shape.edge_space(); ++code) {
    std::vector<int> t = digits_of(code, colours);
    if (t[colour] != 0) continue;
    t[colour] = -1;
    transversals.push_back(t);
  }
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  for (std::size_t a = 0; a < transversals.size(); ++a) {
    for (std::size_t b = a + 1; b < transversals.size(); ++b) {
      bool disjoint = true;
      for (int c = 0; c < colours; ++c) {
        if (c != colour && transversals[a][c] == transversals[b][c]) disjoint = false;
      }
      if (disjoint) out.emplace_back(transversals[a], transversals[b]);
    }
  }
  return out;
}

/// Property 2 by counting, for every octahedron and apex, the edges of H whose
/// non-apex points all lie in the octahedron.
inline bool reference_is_octahedral(const EdgeSet& h) {
  const Shape& shape = h.shape();
  const int colours = shape.colours();
  std::vector<std::vector<int>> edges;
  for (EdgeCode code : h.codes()) edges.push_back(digits_of(code, colours));
  for (int colour = 0; colour < colours; ++colour) {
    for (const auto& [a, b] : reference_octahedra(shape, colour)) {
      std::vector<int> parity(static_cast<std::size_t>(colours), 0);
      for (const auto& e : edges) {
        bool inside = true;
        for (int c = 0; c < colours; ++c) {
          if (c != colour && e[c] != a[c] && e[c] != b[c]) inside = false;
        }
        if (inside) parity[e[colour]] ^= 1;
      }
      if (std::count(parity.begin(), parity.end(), parity[0]) != colours) return false;
    }
  }
  return true;
}

inline bool reference_has_isolated_vertex(const EdgeSet& h) {
  const int colours = h.shape().colours();
  std::vector<std::vector<int>> seen(static_cast<std::size_t>(colours), std::vector<int>(static_cast<std::size_t>(colours), 0));
  for (EdgeCode code : h.codes()) {
    const auto e = digits_of(code, colours);
    for (int c = 0; c < colours; ++c) seen[c][e[c]] = 1;
  }
  for (const auto& row : seen) {
    if (std::find(row.begin(), row.end(), 0) != row.end()) return true;
  }
  return false;
}

inline int hamming(const std::vector<int>& a, const std::vector<int>& b) {
  int n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += a[i] != b[i];
  return n;
}

inline std::vector<EdgeCode> reference_isolated_edges(const EdgeSet& h) {
  const int colours = h.shape().colours();
  std::vector<EdgeCode> out;
  for (EdgeCode a : h.codes()) {
    bool lonely = true;
    for (EdgeCode b : h.codes()) {
      if (hamming(digits_of(a, colours), digits_of(b, colours)) == 1) lonely = false;
    }
    if (lonely) out.push_back(a);
  }
  return out;
}

// --- geometry ---------------------------------------------------------------

/// Determinant by the Leibniz permutation expansion.
inline mpq_class leibniz_det(const std::vector<std::vector<mpq_class>>& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  mpq_class total = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) inversions += p[i] > p[j];
    }
    mpq_class term = inversions % 2 ? -1 : 1;
    for (int i = 0; i < n; ++i) term *= m[i][p[i]];
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

/// Barycentric coordinates of the origin by Cramer's rule:
/// sum lambda_i p_i = 0, sum lambda_i = 1. Empty when the simplex is flat.
inline std::vector<mpq_class> origin_barycentric(const std::vector<geom::Point>& pts) {
  const int n = static_cast<int>(pts.size());
  const int d = n - 1;
  // Columns are the points, with a final row of ones.
  std::vector<std::vector<mpq_class>> a(static_cast<std::size_t>(n), std::vector<mpq_class>(static_cast<std::size_t>(n)));
  for (int col = 0; col < n; ++col) {
    for (int row = 0; row < d; ++row) a[row][col] = pts[col].coords[row];
    a[d][col] = 1;
  }
  const mpq_class det = leibniz_det(a);
  if (det == 0) return {};
  std::vector<mpq_class> lambda;
  for (int col = 0; col < n; ++col) {
    auto b = a;
    for (int row = 0; row < n; ++row) b[row][col] = row == d ? 1 : 0;
    lambda.push_back(leibniz_det(b) / det);
  }
  return lambda;
}

inline geom::Point pt(std::initializer_list<int> coords) {
  geom::Point p;
  for (int c : coords) p.coords.emplace_back(c);
  return p;
}

}  // namespace testing

#endif  // OCTA_TESTS_SUPPORT_HPP
