#ifndef OCTA_GEOMETRY_HPP
#define OCTA_GEOMETRY_HPP

// Exact rational colourful point configurations and the hypergraph of
// colourful simplices containing the origin.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "octa/model.hpp"

namespace octa::geom {

using Rational = mpq_class;

struct Point {
  std::vector<Rational> coords;

  int dimension() const { return static_cast<int>(coords.size()); }
  static Point origin(int d) { return Point{std::vector<Rational>(static_cast<std::size_t>(d), Rational(0))}; }

  friend bool operator==(const Point& a, const Point& b) { return a.coords == b.coords; }
};

/// Raised when an exact predicate hits a zero determinant where general
/// position was required.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sign of det [p_i | 1] over the d+1 homogenised points, one per row.
int orientation(std::span<const Point> points);

enum class Containment { inside, outside, degenerate };

const char* to_string(Containment c);

/// Closed-simplex test by orientation signs; boundary cases report degenerate.
Containment simplex_contains_origin(std::span<const Point> points);

/// Strict interior test for one colour class; throws DegeneracyError on degenerate input.
bool origin_in_interior(std::span<const Point> colour_class);

class Configuration {
 public:
  /// classes[i][k] is point k of colour i; sizes and dimensions are checked.
  Configuration(const Shape& shape, std::vector<std::vector<Point>> classes);

  const Shape& shape() const { return shape_; }
  const Point& point(PointRef p) const { return classes_[p.colour][p.index]; }
  std::span<const Point> colour_class(int colour) const { return classes_[colour]; }

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.shape_ == b.shape_ && a.classes_ == b.classes_;
  }

 private:
  Shape shape_;
  std::vector<std::vector<Point>> classes_;
};

/// A (d+1)-subset of the points together with the origin (nullopt entry) that
/// is affinely dependent, or nothing when the configuration is in general position.
std::optional<std::vector<std::optional<PointRef>>> find_degenerate_subset(const Configuration& c);
std::string describe_subset(const std::vector<std::optional<PointRef>>& subset);

/// Whether the origin is interior to the hull of every colour class.
bool core_valid(const Configuration& c);
/// First colour whose hull misses the origin.
std::optional<int> first_invalid_colour(const Configuration& c);

/// Edge e is present iff the simplex on {classes[i][e_i]} contains the origin.
/// Throws DegeneracyError naming the simplex if a containment test degenerates.
EdgeSet configuration_hypergraph(const Configuration& c);

std::int64_t simplicial_depth_count(const Configuration& c);

struct RandomConfigOptions {
  int max_numerator = 24;
  int max_denominator = 6;
  int max_attempts = 10000;
};

/// Deterministic in (shape, seed). Throws std::runtime_error naming the seed
/// when no valid configuration is found within the attempt budget.
Configuration random_configuration(const Shape& shape, std::uint64_t seed, const RandomConfigOptions& options = {});

/// Every colour class clustered around one vertex of the simplex with vertices
/// e_1, ..., e_d and -(1,...,1), whose centroid is the origin. All colourful
/// simplices contain the origin; the classes themselves do not.
Configuration clustered_configuration(const Shape& shape);

/// Text format: "d=<n>" then (d+1) blocks of (d+1) lines of d rationals "p/q";
/// blank and '#' lines are ignored.
Configuration read_configuration(std::istream& in);
void write_configuration(std::ostream& out, const Configuration& c);

}  // namespace octa::geom

#endif  // OCTA_GEOMETRY_HPP
