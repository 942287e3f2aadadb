#ifndef OCTA_MODEL_HPP
#define OCTA_MODEL_HPP

// Colour classes, edges, transversals and octahedra of a colourful
// hypergraph on (d+1) colours of (d+1) points each.
//
// Ordering convention: edges and transversals are compared by their integer
// code, sum of choice[i] * (d+1)^i, so colour d is the most significant
// coordinate. Every "lexicographic" order in the toolkit means this order.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace octa {

inline constexpr int kMaxDimension = 6;
inline constexpr int kMaxColours = kMaxDimension + 1;

using EdgeCode = std::uint32_t;

class Shape {
 public:
  explicit Shape(int d);

  int dimension() const { return d_; }
  int colours() const { return d_ + 1; }
  int points_per_colour() const { return d_ + 1; }
  int total_points() const { return (d_ + 1) * (d_ + 1); }
  /// Number of possible edges, (d+1)^(d+1).
  EdgeCode edge_space() const { return edge_space_; }
  /// Number of transversals omitting one colour, (d+1)^d.
  EdgeCode transversal_space() const { return edge_space_ / (d_ + 1); }

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  int d_;
  EdgeCode edge_space_;
};

struct PointRef {
  int colour = 0;
  int index = 0;

  friend auto operator<=>(const PointRef&, const PointRef&) = default;
};

/// Flat index colour * (d+1) + index.
inline int point_slot(const Shape& shape, PointRef p) {
  return p.colour * shape.points_per_colour() + p.index;
}

class Edge {
 public:
  Edge() = default;
  /// choice[i] is the index of the point of colour i.
  Edge(const Shape& shape, std::span<const int> choice);
  Edge(const Shape& shape, std::initializer_list<int> choice)
      : Edge(shape, std::span<const int>(choice.begin(), choice.size())) {}

  int colours() const { return colours_; }
  int operator[](int colour) const { return choice_[colour]; }
  Shape shape() const { return Shape(colours_ - 1); }

  /// Copy with the point of `colour` replaced.
  Edge with(int colour, int index) const;

  friend bool operator==(const Edge& a, const Edge& b) {
    return a.colours_ == b.colours_ && a.choice_ == b.choice_;
  }

 private:
  std::array<std::uint8_t, kMaxColours> choice_{};
  std::uint8_t colours_ = 0;
};

EdgeCode encode_edge(const Edge& e);
Edge decode_edge(EdgeCode code, const Shape& shape);

/// Number of coordinates equal to 0.
int zeros(const Edge& e);

/// The (d+1)*d edges at Hamming distance one, in code order.
std::vector<Edge> adjacent_edges(const Edge& e);

/// "31000" for d=4; indices above 9 are not representable (d <= 6 keeps them single digits).
std::string to_string(const Edge& e);
Edge parse_edge(const Shape& shape, const std::string& digits);

class Transversal {
 public:
  Transversal() = default;
  /// `choice` is indexed by colour and has d+1 slots; the omitted slot is ignored.
  Transversal(const Shape& shape, int omitted, std::span<const int> choice);
  /// Transversal from the d indices of the non-omitted colours, in colour order.
  static Transversal from_indices(const Shape& shape, int omitted, std::span<const int> indices);

  int omitted_colour() const { return omitted_; }
  int colours() const { return colours_; }
  /// Index chosen in `colour`; colour must not be the omitted one.
  int operator[](int colour) const;
  /// Code in [0, (d+1)^d): non-omitted colours in increasing order, least significant first.
  EdgeCode code() const;

  bool disjoint_from(const Transversal& other) const;

  friend bool operator==(const Transversal& a, const Transversal& b) {
    return a.omitted_ == b.omitted_ && a.colours_ == b.colours_ && a.choice_ == b.choice_;
  }

 private:
  std::array<std::uint8_t, kMaxColours> choice_{};
  std::uint8_t colours_ = 0;
  std::uint8_t omitted_ = 0;
};

Transversal decode_transversal(EdgeCode code, const Shape& shape, int omitted);

/// "*0000".
std::string to_string(const Transversal& t);

/// An unordered pair of disjoint transversals omitting the same colour, stored
/// with the smaller code first.
class Octahedron {
 public:
  Octahedron(const Transversal& a, const Transversal& b);

  int omitted_colour() const { return first_.omitted_colour(); }
  const Transversal& first() const { return first_; }
  const Transversal& second() const { return second_; }
  /// Whether the point `index` of a non-omitted colour belongs to the octahedron.
  bool contains(int colour, int index) const {
    return first_[colour] == index || second_[colour] == index;
  }

  friend bool operator==(const Octahedron&, const Octahedron&) = default;

 private:
  Transversal first_;
  Transversal second_;
};

std::string to_string(const Octahedron& o);

/// Octahedra containing `base`, ordered by the code of the other transversal.
std::vector<Octahedron> octahedra_with_base(const Shape& shape, const Transversal& base);

/// Visits every octahedron omitting `colour` once, ordered by (first, second).
/// The visitor returns false to stop early; the function returns false if stopped.
bool for_each_octahedron(const Shape& shape, int colour,
                         const std::function<bool(const Octahedron&)>& visit);

std::vector<Octahedron> all_octahedra(const Shape& shape, int colour);

/// (d+1)^d * d^d / 2.
std::uint64_t octahedra_per_colour(const Shape& shape);

/// Colourful hypergraph on the points of a Shape. Edges are unique and kept in
/// code order; per-point incidence counts are maintained on every mutation.
class EdgeSet {
 public:
  explicit EdgeSet(const Shape& shape);

  static EdgeSet full(const Shape& shape);
  static EdgeSet from_codes(const Shape& shape, std::span<const EdgeCode> codes);

  const Shape& shape() const { return shape_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  bool contains(EdgeCode code) const {
    return (bits_[code >> 6] >> (code & 63)) & 1U;
  }
  bool contains(const Edge& e) const { return contains(encode_edge(e)); }

  /// Throws std::invalid_argument if the edge is already present.
  void add(const Edge& e);
  void add(EdgeCode code) { add(decode_edge(code, shape_)); }
  /// Throws std::invalid_argument if the edge is absent.
  void remove(const Edge& e);
  void remove(EdgeCode code) { remove(decode_edge(code, shape_)); }

  int incidence(PointRef p) const { return incidence_[point_slot(shape_, p)]; }
  std::span<const EdgeCode> codes() const { return edges_; }
  std::vector<Edge> edges() const;

  friend bool operator==(const EdgeSet& a, const EdgeSet& b) {
    return a.shape_ == b.shape_ && a.edges_ == b.edges_;
  }

 private:
  Shape shape_;
  std::vector<std::uint64_t> bits_;
  std::vector<EdgeCode> edges_;
  std::vector<int> incidence_;
};

/// Raised for malformed text input; `line` is 1-based, 0 when not line specific.
class FormatError : public std::runtime_error {
 public:
  FormatError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Edge-list text format: mandatory "d=<n>" header, '#' comment lines, then one
/// edge per line as d+1 space-separated indices.
EdgeSet read_edge_list(std::istream& in);
/// Writes the header and edges in code order. Output is byte-stable.
void write_edge_list(std::ostream& out, const EdgeSet& edges);

/// Strips surrounding whitespace; shared by the text readers.
std::string trim(const std::string& s);

}  // namespace octa

#endif  // OCTA_MODEL_HPP
