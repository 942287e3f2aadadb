#include "octa/geometry.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace octa::geom {

namespace {

int sign(const Rational& x) { return sgn(x); }

// Exact determinant sign by Gaussian elimination over the rationals.
int determinant_sign(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  int s = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(m[pivot][col]) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      s = -s;
    }
    s *= sign(m[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(m[r][col]) == 0) continue;
      const Rational factor = m[r][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[r][k] -= factor * m[col][k];
    }
  }
  return s;
}

}  // namespace

int orientation(std::span<const Point> points) {
  const std::size_t n = points.size();
  if (n == 0) throw std::invalid_argument("orientation of no points");
  const int d = points.front().dimension();
  if (static_cast<int>(n) != d + 1) throw std::invalid_argument("orientation needs d+1 points in R^d");
  std::vector<std::vector<Rational>> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (points[i].dimension() != d) throw std::invalid_argument("points of mixed dimension");
    m[i] = points[i].coords;
    m[i].emplace_back(1);
  }
  return determinant_sign(std::move(m));
}

const char* to_string(Containment c) {
  switch (c) {
    case Containment::inside: return "inside";
    case Containment::outside: return "outside";
    case Containment::degenerate: return "degenerate";
  }
  return "?";
}

Containment simplex_contains_origin(std::span<const Point> points) {
  const int whole = orientation(points);
  if (whole == 0) return Containment::degenerate;
  std::vector<Point> replaced(points.begin(), points.end());
  const Point zero = Point::origin(points.front().dimension());
  bool inside = true;
  for (std::size_t i = 0; i < replaced.size(); ++i) {
    const Point keep = replaced[i];
    replaced[i] = zero;
    const int s = orientation(replaced);
    replaced[i] = keep;
    if (s == 0) return Containment::degenerate;
    if (s != whole) inside = false;
  }
  return inside ? Containment::inside : Containment::outside;
}

bool origin_in_interior(std::span<const Point> colour_class) {
  const Containment c = simplex_contains_origin(colour_class);
  if (c == Containment::degenerate) {
    throw DegeneracyError("colour class is not in general position with the origin");
  }
  return c == Containment::inside;
}

Configuration::Configuration(const Shape& shape, std::vector<std::vector<Point>> classes)
    : shape_(shape), classes_(std::move(classes)) {
  if (static_cast<int>(classes_.size()) != shape.colours()) {
    throw std::invalid_argument("configuration needs d+1 colour classes");
  }
  for (const auto& cls : classes_) {
    if (static_cast<int>(cls.size()) != shape.points_per_colour()) {
      throw std::invalid_argument("every colour class needs d+1 points");
    }
    for (const Point& p : cls) {
      if (p.dimension() != shape.dimension()) throw std::invalid_argument("point dimension differs from d");
    }
  }
}

std::optional<std::vector<std::optional<PointRef>>> find_degenerate_subset(const Configuration& c) {
  const Shape& shape = c.shape();
  // Slot 0 is the origin, slots 1.. the configuration points.
  std::vector<std::optional<PointRef>> slots{std::nullopt};
  for (int col = 0; col < shape.colours(); ++col) {
    for (int i = 0; i < shape.points_per_colour(); ++i) slots.emplace_back(PointRef{col, i});
  }
  const int k = shape.dimension() + 1;
  const int n = static_cast<int>(slots.size());
  std::vector<int> pick(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pick[i] = i;
  const Point zero = Point::origin(shape.dimension());
  std::vector<Point> pts(static_cast<std::size_t>(k));
  while (true) {
    for (int i = 0; i < k; ++i) pts[i] = slots[pick[i]] ? c.point(*slots[pick[i]]) : zero;
    if (orientation(pts) == 0) {
      std::vector<std::optional<PointRef>> subset;
      for (int i : pick) subset.push_back(slots[i]);
      return subset;
    }
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) return std::nullopt;
    ++pick[i];
    for (int t = i + 1; t < k; ++t) pick[t] = pick[t - 1] + 1;
  }
}

std::string describe_subset(const std::vector<std::optional<PointRef>>& subset) {
  std::string s = "{";
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) s += ", ";
    s += subset[i] ? "colour " + std::to_string(subset[i]->colour) + " point " + std::to_string(subset[i]->index)
                   : std::string("origin");
  }
  return s + "}";
}

std::optional<int> first_invalid_colour(const Configuration& c) {
  for (int col = 0; col < c.shape().colours(); ++col) {
    if (simplex_contains_origin(c.colour_class(col)) != Containment::inside) return col;
  }
  return std::nullopt;
}

bool core_valid(const Configuration& c) { return !first_invalid_colour(c).has_value(); }

EdgeSet configuration_hypergraph(const Configuration& c) {
  const Shape& shape = c.shape();
  EdgeSet h(shape);
  std::vector<Point> simplex(static_cast<std::size_t>(shape.colours()));
  for (EdgeCode code = 0; code < shape.edge_space(); ++code) {
    const Edge e = decode_edge(code, shape);
    for (int col = 0; col < shape.colours(); ++col) simplex[col] = c.point({col, e[col]});
    switch (simplex_contains_origin(simplex)) {
      case Containment::inside: h.add(e); break;
      case Containment::outside: break;
      case Containment::degenerate:
        throw DegeneracyError("colourful simplex " + to_string(e) +
                              " is degenerate with respect to the origin; configuration is not in general position");
    }
  }
  return h;
}

std::int64_t simplicial_depth_count(const Configuration& c) {
  return static_cast<std::int64_t>(configuration_hypergraph(c).size());
}

namespace {

// Integers from the raw engine output so that the sequence does not depend on
// the standard library's distribution implementations.
class SeededDraw {
 public:
  explicit SeededDraw(std::uint64_t seed) : engine_(seed) {}

  int uniform(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
  }

 private:
  std::mt19937_64 engine_;
};

Point random_point(SeededDraw& draw, int d, const RandomConfigOptions& o) {
  Point p;
  while (true) {
    p.coords.clear();
    bool nonzero = false;
    for (int k = 0; k < d; ++k) {
      const int num = draw.uniform(-o.max_numerator, o.max_numerator);
      const int den = draw.uniform(1, o.max_denominator);
      nonzero = nonzero || num != 0;
      Rational q(num, den);
      q.canonicalize();
      p.coords.push_back(q);
    }
    if (nonzero) return p;
  }
}

}  // namespace

Configuration random_configuration(const Shape& shape, std::uint64_t seed, const RandomConfigOptions& options) {
  if (options.max_numerator < 1 || options.max_denominator < 1) {
    throw std::invalid_argument("random configuration needs positive numerator and denominator ranges");
  }
  SeededDraw draw(seed);
  const int d = shape.dimension();
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    std::vector<std::vector<Point>> classes;
    bool ok = true;
    for (int col = 0; col < shape.colours() && ok; ++col) {
      int tries = 0;
      while (true) {
        std::vector<Point> cls;
        for (int i = 0; i < shape.points_per_colour(); ++i) cls.push_back(random_point(draw, d, options));
        if (simplex_contains_origin(cls) == Containment::inside) {
          classes.push_back(std::move(cls));
          break;
        }
        if (++tries >= options.max_attempts) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) break;
    Configuration c(shape, std::move(classes));
    if (!find_degenerate_subset(c)) return c;
  }
  throw std::runtime_error("no valid random configuration for d=" + std::to_string(d) + " with seed " +
                           std::to_string(seed) + " within the attempt budget");
}

Configuration clustered_configuration(const Shape& shape) {
  const int d = shape.dimension();
  std::vector<Point> vertices;
  for (int i = 0; i < d; ++i) {
    Point v = Point::origin(d);
    v.coords[i] = 1;
    vertices.push_back(v);
  }
  vertices.push_back(Point{std::vector<Rational>(static_cast<std::size_t>(d), Rational(-1))});
  // Circumradius of this simplex is at least 1; the cluster radius stays below
  // 1/(10(d+1)) of it.
  const Rational radius(1, 10 * (d + 1));
  SeededDraw draw(0x5eedULL + static_cast<std::uint64_t>(d));
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::vector<Point>> classes;
    for (int col = 0; col < shape.colours(); ++col) {
      std::vector<Point> cls;
      for (int i = 0; i < shape.points_per_colour(); ++i) {
        Point p = vertices[col];
        for (int k = 0; k < d; ++k) {
          // Offset in [-1, 1] per coordinate, scaled so its norm is below the radius.
          Rational offset(draw.uniform(-1000, 1000), 1000 * d);
          offset.canonicalize();
          p.coords[k] += radius * offset;
        }
        cls.push_back(std::move(p));
      }
      classes.push_back(std::move(cls));
    }
    Configuration c(shape, std::move(classes));
    if (!find_degenerate_subset(c)) return c;
  }
  throw std::runtime_error("clustered configuration not in general position");
}

namespace {

Rational parse_rational(const std::string& token) {
  const auto slash = token.find('/');
  const std::string num = token.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : token.substr(slash + 1);
  const auto integral = [](const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t start = (allow_sign && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                       [](char ch) { return ch >= '0' && ch <= '9'; });
  };
  if (!integral(num, true) || !integral(den, false)) throw std::invalid_argument("bad rational '" + token + "'");
  Rational q;
  q.get_num() = mpz_class(num[0] == '+' ? num.substr(1) : num);
  q.get_den() = mpz_class(den);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + token + "'");
  q.canonicalize();
  return q;
}

}  // namespace

Configuration read_configuration(std::istream& in) {
  std::optional<Shape> shape;
  std::vector<Point> points;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!shape) {
      if (line.rfind("d=", 0) != 0) throw FormatError(line_no, "expected header 'd=<n>'");
      try {
        std::size_t used = 0;
        const int d = std::stoi(line.substr(2), &used);
        if (used != line.size() - 2) throw std::invalid_argument("trailing characters");
        shape.emplace(d);
      } catch (const std::exception& ex) {
        throw FormatError(line_no, "bad header '" + line + "': " + ex.what());
      }
      continue;
    }
    if (static_cast<int>(points.size()) == shape->total_points()) {
      throw FormatError(line_no, "more than (d+1)^2 point lines");
    }
    std::istringstream fields(line);
    Point p;
    std::string token;
    while (fields >> token) {
      try {
        p.coords.push_back(parse_rational(token));
      } catch (const std::invalid_argument& ex) {
        throw FormatError(line_no, ex.what());
      }
    }
    if (p.dimension() != shape->dimension()) {
      throw FormatError(line_no, "expected " + std::to_string(shape->dimension()) + " coordinates, got " +
                                     std::to_string(p.dimension()));
    }
    points.push_back(std::move(p));
  }
  if (!shape) throw FormatError(line_no, "missing 'd=<n>' header");
  if (static_cast<int>(points.size()) != shape->total_points()) {
    throw FormatError(line_no, "expected " + std::to_string(shape->total_points()) + " point lines, got " +
                                   std::to_string(points.size()));
  }
  std::vector<std::vector<Point>> classes(static_cast<std::size_t>(shape->colours()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    classes[i / static_cast<std::size_t>(shape->points_per_colour())].push_back(std::move(points[i]));
  }
  return Configuration(*shape, std::move(classes));
}

void write_configuration(std::ostream& out, const Configuration& c) {
  const Shape& shape = c.shape();
  out << "d=" << shape.dimension() << '\n';
  for (int col = 0; col < shape.colours(); ++col) {
    out << "# colour " << col << '\n';
    for (const Point& p : c.colour_class(col)) {
      for (int k = 0; k < p.dimension(); ++k) {
        out << (k ? " " : "") << p.coords[k].get_num().get_str() << '/' << p.coords[k].get_den().get_str();
      }
      out << '\n';
    }
  }
}

}  // namespace octa::geom
