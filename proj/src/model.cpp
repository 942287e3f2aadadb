#include "octa/model.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace octa {

namespace {

EdgeCode ipow(EdgeCode base, int exp) {
  EdgeCode r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

Shape::Shape(int d) : d_(d), edge_space_(0) {
  if (d < 1 || d > kMaxDimension) {
    throw std::invalid_argument("dimension must be in [1, " + std::to_string(kMaxDimension) +
                                "], got " + std::to_string(d));
  }
  edge_space_ = ipow(static_cast<EdgeCode>(d + 1), d + 1);
}

Edge::Edge(const Shape& shape, std::span<const int> choice)
    : colours_(static_cast<std::uint8_t>(shape.colours())) {
  if (static_cast<int>(choice.size()) != shape.colours()) {
    throw std::invalid_argument("edge needs " + std::to_string(shape.colours()) + " indices, got " +
                                std::to_string(choice.size()));
  }
  for (int i = 0; i < shape.colours(); ++i) {
    if (choice[i] < 0 || choice[i] > shape.dimension()) {
      throw std::invalid_argument("edge index " + std::to_string(choice[i]) + " out of range for colour " +
                                  std::to_string(i));
    }
    choice_[i] = static_cast<std::uint8_t>(choice[i]);
  }
}

Edge Edge::with(int colour, int index) const {
  Edge e = *this;
  e.choice_[colour] = static_cast<std::uint8_t>(index);
  return e;
}

EdgeCode encode_edge(const Edge& e) {
  const EdgeCode base = static_cast<EdgeCode>(e.colours());
  EdgeCode code = 0;
  for (int i = e.colours() - 1; i >= 0; --i) code = code * base + static_cast<EdgeCode>(e[i]);
  return code;
}

Edge decode_edge(EdgeCode code, const Shape& shape) {
  if (code >= shape.edge_space()) {
    throw std::invalid_argument("edge code " + std::to_string(code) + " out of range");
  }
  std::array<int, kMaxColours> choice{};
  const EdgeCode base = static_cast<EdgeCode>(shape.colours());
  for (int i = 0; i < shape.colours(); ++i) {
    choice[i] = static_cast<int>(code % base);
    code /= base;
  }
  return Edge(shape, std::span<const int>(choice.data(), shape.colours()));
}

int zeros(const Edge& e) {
  int z = 0;
  for (int i = 0; i < e.colours(); ++i) z += e[i] == 0 ? 1 : 0;
  return z;
}

std::vector<Edge> adjacent_edges(const Edge& e) {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(e.colours() * (e.colours() - 1)));
  for (int colour = 0; colour < e.colours(); ++colour) {
    for (int index = 0; index < e.colours(); ++index) {
      if (index != e[colour]) out.push_back(e.with(colour, index));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Edge& a, const Edge& b) { return encode_edge(a) < encode_edge(b); });
  return out;
}

std::string to_string(const Edge& e) {
  std::string s;
  for (int i = 0; i < e.colours(); ++i) s.push_back(static_cast<char>('0' + e[i]));
  return s;
}

Edge parse_edge(const Shape& shape, const std::string& digits) {
  if (static_cast<int>(digits.size()) != shape.colours()) {
    throw std::invalid_argument("edge string '" + digits + "' must have " +
                                std::to_string(shape.colours()) + " digits");
  }
  std::array<int, kMaxColours> choice{};
  for (int i = 0; i < shape.colours(); ++i) {
    if (digits[i] < '0' || digits[i] > '9') {
      throw std::invalid_argument("edge string '" + digits + "' is not all digits");
    }
    choice[i] = digits[i] - '0';
  }
  return Edge(shape, std::span<const int>(choice.data(), shape.colours()));
}

Transversal::Transversal(const Shape& shape, int omitted, std::span<const int> choice)
    : colours_(static_cast<std::uint8_t>(shape.colours())) {
  if (omitted < 0 || omitted >= shape.colours()) {
    throw std::invalid_argument("omitted colour " + std::to_string(omitted) + " out of range");
  }
  if (static_cast<int>(choice.size()) != shape.colours()) {
    throw std::invalid_argument("transversal choice needs one slot per colour");
  }
  omitted_ = static_cast<std::uint8_t>(omitted);
  for (int c = 0; c < shape.colours(); ++c) {
    if (c == omitted) continue;
    if (choice[c] < 0 || choice[c] > shape.dimension()) {
      throw std::invalid_argument("transversal index out of range");
    }
    choice_[c] = static_cast<std::uint8_t>(choice[c]);
  }
}

Transversal Transversal::from_indices(const Shape& shape, int omitted, std::span<const int> indices) {
  if (static_cast<int>(indices.size()) != shape.dimension()) {
    throw std::invalid_argument("transversal needs " + std::to_string(shape.dimension()) + " indices");
  }
  std::array<int, kMaxColours> choice{};
  int k = 0;
  for (int c = 0; c < shape.colours(); ++c) {
    if (c != omitted) choice[c] = indices[k++];
  }
  return Transversal(shape, omitted, std::span<const int>(choice.data(), shape.colours()));
}

int Transversal::operator[](int colour) const {
  if (colour == omitted_) throw std::out_of_range("transversal has no point of its omitted colour");
  return choice_[colour];
}

EdgeCode Transversal::code() const {
  EdgeCode code = 0;
  for (int c = colours_ - 1; c >= 0; --c) {
    if (c == omitted_) continue;
    code = code * colours_ + choice_[c];
  }
  return code;
}

bool Transversal::disjoint_from(const Transversal& other) const {
  if (other.omitted_ != omitted_) return false;
  for (int c = 0; c < colours_; ++c) {
    if (c != omitted_ && choice_[c] == other.choice_[c]) return false;
  }
  return true;
}

Transversal decode_transversal(EdgeCode code, const Shape& shape, int omitted) {
  if (code >= shape.transversal_space()) {
    throw std::invalid_argument("transversal code out of range");
  }
  std::array<int, kMaxColours> choice{};
  for (int c = 0; c < shape.colours(); ++c) {
    if (c == omitted) continue;
    choice[c] = static_cast<int>(code % shape.colours());
    code /= shape.colours();
  }
  return Transversal(shape, omitted, std::span<const int>(choice.data(), shape.colours()));
}

std::string to_string(const Transversal& t) {
  std::string s;
  for (int c = 0; c < t.colours(); ++c) {
    s.push_back(c == t.omitted_colour() ? '*' : static_cast<char>('0' + t[c]));
  }
  return s;
}

Octahedron::Octahedron(const Transversal& a, const Transversal& b) : first_(a), second_(b) {
  if (a.omitted_colour() != b.omitted_colour()) {
    throw std::invalid_argument("octahedron transversals omit different colours");
  }
  if (!a.disjoint_from(b)) {
    throw std::invalid_argument("octahedron transversals " + to_string(a) + " and " + to_string(b) +
                                " are not disjoint");
  }
  if (second_.code() < first_.code()) std::swap(first_, second_);
}

std::string to_string(const Octahedron& o) {
  return "(" + to_string(o.first()) + ", " + to_string(o.second()) + ")";
}

namespace {

// Calls visit(t) for every transversal omitting `colour` that avoids base
// coordinatewise, in code order.
bool for_each_disjoint(const Shape& shape, const Transversal& base,
                       const std::function<bool(const Transversal&)>& visit) {
  const int d = shape.dimension();
  const int omitted = base.omitted_colour();
  // Digit k ranges over the d labels different from base's label, ascending.
  std::array<int, kMaxColours> digit{};
  std::array<int, kMaxColours> colour_of{};
  int k = 0;
  for (int c = 0; c < shape.colours(); ++c) {
    if (c != omitted) colour_of[k++] = c;
  }
  std::array<int, kMaxColours> choice{};
  while (true) {
    for (int i = 0; i < d; ++i) {
      const int c = colour_of[i];
      const int skip = base[c];
      choice[c] = digit[i] < skip ? digit[i] : digit[i] + 1;
    }
    if (!visit(Transversal(shape, omitted, std::span<const int>(choice.data(), shape.colours())))) {
      return false;
    }
    int i = 0;
    // Most significant digit is the highest colour.
    while (i < d && ++digit[i] == d) digit[i++] = 0;
    if (i == d) return true;
  }
}

}  // namespace

std::vector<Octahedron> octahedra_with_base(const Shape& shape, const Transversal& base) {
  std::vector<Octahedron> out;
  for_each_disjoint(shape, base, [&](const Transversal& t) {
    out.emplace_back(base, t);
    return true;
  });
  return out;
}

bool for_each_octahedron(const Shape& shape, int colour,
                         const std::function<bool(const Octahedron&)>& visit) {
  if (colour < 0 || colour >= shape.colours()) {
    throw std::invalid_argument("colour out of range");
  }
  for (EdgeCode code = 0; code < shape.transversal_space(); ++code) {
    const Transversal first = decode_transversal(code, shape, colour);
    const bool go_on = for_each_disjoint(shape, first, [&](const Transversal& second) {
      if (second.code() < code) return true;
      return visit(Octahedron(first, second));
    });
    if (!go_on) return false;
  }
  return true;
}

std::vector<Octahedron> all_octahedra(const Shape& shape, int colour) {
  std::vector<Octahedron> out;
  out.reserve(octahedra_per_colour(shape));
  for_each_octahedron(shape, colour, [&](const Octahedron& o) {
    out.push_back(o);
    return true;
  });
  return out;
}

std::uint64_t octahedra_per_colour(const Shape& shape) {
  std::uint64_t n = 1;
  for (int i = 0; i < shape.dimension(); ++i) {
    n *= static_cast<std::uint64_t>(shape.colours()) * static_cast<std::uint64_t>(shape.dimension());
  }
  return n / 2;
}

EdgeSet::EdgeSet(const Shape& shape)
    : shape_(shape),
      bits_((shape.edge_space() + 63) / 64, 0),
      incidence_(static_cast<std::size_t>(shape.total_points()), 0) {}

EdgeSet EdgeSet::full(const Shape& shape) {
  EdgeSet h(shape);
  for (EdgeCode c = 0; c < shape.edge_space(); ++c) h.add(c);
  return h;
}

EdgeSet EdgeSet::from_codes(const Shape& shape, std::span<const EdgeCode> codes) {
  EdgeSet h(shape);
  for (EdgeCode c : codes) h.add(c);
  return h;
}

void EdgeSet::add(const Edge& e) {
  if (e.colours() != shape_.colours()) throw std::invalid_argument("edge shape mismatch");
  const EdgeCode code = encode_edge(e);
  if (contains(code)) throw std::invalid_argument("edge " + to_string(e) + " already present");
  bits_[code >> 6] |= std::uint64_t{1} << (code & 63);
  edges_.insert(std::upper_bound(edges_.begin(), edges_.end(), code), code);
  for (int c = 0; c < shape_.colours(); ++c) ++incidence_[point_slot(shape_, {c, e[c]})];
}

void EdgeSet::remove(const Edge& e) {
  if (e.colours() != shape_.colours()) throw std::invalid_argument("edge shape mismatch");
  const EdgeCode code = encode_edge(e);
  if (!contains(code)) throw std::invalid_argument("edge " + to_string(e) + " not present");
  bits_[code >> 6] &= ~(std::uint64_t{1} << (code & 63));
  edges_.erase(std::lower_bound(edges_.begin(), edges_.end(), code));
  for (int c = 0; c < shape_.colours(); ++c) --incidence_[point_slot(shape_, {c, e[c]})];
}

std::vector<Edge> EdgeSet::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (EdgeCode c : edges_) out.push_back(decode_edge(c, shape_));
  return out;
}

FormatError::FormatError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

EdgeSet read_edge_list(std::istream& in) {
  std::optional<EdgeSet> h;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!h) {
      if (line.rfind("d=", 0) != 0) throw FormatError(line_no, "expected header 'd=<n>'");
      int d = 0;
      try {
        std::size_t used = 0;
        d = std::stoi(line.substr(2), &used);
        if (used != line.size() - 2) throw std::invalid_argument("trailing characters");
        h.emplace(Shape(d));
      } catch (const std::exception& ex) {
        throw FormatError(line_no, "bad header '" + line + "': " + ex.what());
      }
      continue;
    }
    std::istringstream fields(line);
    std::vector<int> choice;
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        choice.push_back(std::stoi(token, &used));
        if (used != token.size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw FormatError(line_no, "bad index '" + token + "'");
      }
    }
    try {
      h->add(Edge(h->shape(), choice));
    } catch (const std::invalid_argument& ex) {
      throw FormatError(line_no, ex.what());
    }
  }
  if (!h) throw FormatError(line_no, "missing 'd=<n>' header");
  return std::move(*h);
}

void write_edge_list(std::ostream& out, const EdgeSet& edges) {
  out << "d=" << edges.shape().dimension() << '\n';
  for (const Edge& e : edges.edges()) {
    for (int c = 0; c < e.colours(); ++c) out << (c ? " " : "") << e[c];
    out << '\n';
  }
}

}  // namespace octa
