#include "octa/tables.hpp"

#include <bit>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace octa {

namespace {

int power(int base, int exp) {
  int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Whether edge e lies on the octahedron (*0..0, *u) ignoring colour 0.
bool on_base_octahedron(const Edge& e, std::span<const int> u) {
  for (std::size_t j = 0; j < u.size(); ++j) {
    const int x = e[static_cast<int>(j) + 1];
    if (x != 0 && x != u[j]) return false;
  }
  return true;
}

}  // namespace

LargeTable::LargeTable(const Shape& shape)
    : shape_(shape), rows_(static_cast<std::size_t>(power(shape.dimension(), shape.dimension())), 0) {}

int LargeTable::row_of(std::span<const int> u) const {
  const int d = shape_.dimension();
  if (static_cast<int>(u.size()) != d) throw std::invalid_argument("row transversal needs d labels");
  int row = 0;
  for (int j = d - 1; j >= 0; --j) {
    if (u[j] < 1 || u[j] > d) throw std::invalid_argument("row labels must be in 1..d");
    row = row * d + (u[j] - 1);
  }
  return row;
}

std::vector<int> LargeTable::transversal_of(int row) const {
  const int d = shape_.dimension();
  std::vector<int> u(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    u[j] = row % d + 1;
    row /= d;
  }
  return u;
}

int LargeTable::row_score(std::uint8_t bits) const {
  const int d = shape_.dimension();
  const int others = std::popcount(static_cast<unsigned>(bits >> 1));
  return (bits & 1U) ? d - others : others;
}

int LargeTable::toggle(const Edge& e) {
  const int d = shape_.dimension();
  const auto column_bit = static_cast<std::uint8_t>(1U << e[0]);
  // Coordinates of e that are zero leave the row label free; the others pin it.
  std::array<int, kMaxColours> free_colours{};
  int free_count = 0;
  int fixed_offset = 0;
  int stride = 1;
  std::array<int, kMaxColours> strides{};
  for (int j = 1; j <= d; ++j) {
    strides[j] = stride;
    if (e[j] == 0) {
      free_colours[free_count++] = j;
    } else {
      fixed_offset += (e[j] - 1) * stride;
    }
    stride *= d;
  }
  std::array<int, kMaxColours> digit{};
  int flipped = 0;
  while (true) {
    int row = fixed_offset;
    for (int k = 0; k < free_count; ++k) row += digit[k] * strides[free_colours[k]];
    std::uint8_t& bits = rows_[row];
    score_ -= row_score(bits);
    bits ^= column_bit;
    score_ += row_score(bits);
    ++flipped;
    int k = 0;
    while (k < free_count && ++digit[k] == d) digit[k++] = 0;
    if (k == free_count) break;
  }
  return flipped;
}

void LargeTable::set_row_bits(int row, std::uint8_t bits) {
  score_ += row_score(bits) - row_score(rows_[row]);
  rows_[row] = bits;
}

std::int64_t LargeTable::recount_score() const {
  std::int64_t s = 0;
  for (std::uint8_t bits : rows_) s += row_score(bits);
  return s;
}

LargeTable build_large_table(const EdgeSet& h) {
  LargeTable table(h.shape());
  const std::vector<Edge> edges = h.edges();
  for (int row = 0; row < table.rows(); ++row) {
    const std::vector<int> u = table.transversal_of(row);
    std::uint8_t bits = 0;
    for (const Edge& e : edges) {
      if (on_base_octahedron(e, u)) bits ^= static_cast<std::uint8_t>(1U << e[0]);
    }
    table.set_row_bits(row, bits);
  }
  return table;
}

std::int64_t score(const EdgeSet& h) { return build_large_table(h).score(); }

int apply_edge_delta(LargeTable& table, const EdgeSet& before, const Edge& e, Delta sense) {
  if (!(table.shape() == before.shape()) || e.colours() != before.shape().colours()) {
    throw std::invalid_argument("shape mismatch in edge delta");
  }
  const bool present = before.contains(e);
  if (sense == Delta::add && present) {
    throw std::invalid_argument("cannot add edge " + to_string(e) + ": already present");
  }
  if (sense == Delta::remove && !present) {
    throw std::invalid_argument("cannot remove edge " + to_string(e) + ": not present");
  }
  return table.toggle(e);
}

SmallTable::SmallTable(const Shape& shape)
    : shape_(shape), rows_(static_cast<std::size_t>(shape.dimension()), 0) {}

SmallTable build_small_table(const EdgeSet& h) {
  const Shape& shape = h.shape();
  SmallTable table(shape);
  for (int i = 1; i <= shape.dimension(); ++i) {
    const std::vector<int> u(static_cast<std::size_t>(shape.dimension()), i);
    std::uint8_t bits = 0;
    for (const Edge& e : h.edges()) {
      if (on_base_octahedron(e, u)) bits ^= static_cast<std::uint8_t>(1U << e[0]);
    }
    table.set_row_bits(i, bits);
  }
  return table;
}

SmallTable small_table_of(const LargeTable& large) {
  const Shape& shape = large.shape();
  SmallTable table(shape);
  for (int i = 1; i <= shape.dimension(); ++i) {
    const std::vector<int> u(static_cast<std::size_t>(shape.dimension()), i);
    table.set_row_bits(i, large.row_bits(large.row_of(u)));
  }
  return table;
}

RowMask first_rows(int b) { return b <= 0 ? 0 : (RowMask{1} << b) - 1; }

std::vector<TableEntry> small_table_mismatches(const SmallTable& table, RowMask odd) {
  std::vector<TableEntry> out;
  for (int r = 1; r <= table.rows(); ++r) {
    const bool want = (odd >> (r - 1)) & 1U;
    for (int c = 0; c < table.columns(); ++c) {
      if (table.entry(r, c) != want) out.push_back({r, c});
    }
  }
  return out;
}

RowMask odd_rows(const SmallTable& table) {
  const auto full = static_cast<std::uint8_t>((1U << table.columns()) - 1);
  RowMask mask = 0;
  for (int r = 1; r <= table.rows(); ++r) {
    if (table.row_bits(r) == full) mask |= RowMask{1} << (r - 1);
  }
  return mask;
}

bool rows_constant(const SmallTable& table) {
  const auto full = static_cast<std::uint8_t>((1U << table.columns()) - 1);
  for (int r = 1; r <= table.rows(); ++r) {
    const std::uint8_t bits = table.row_bits(r);
    if (bits != 0 && bits != full) return false;
  }
  return true;
}

void print_small_table(std::ostream& out, const SmallTable& table) {
  const int d = table.shape().dimension();
  const std::string pad(static_cast<std::size_t>(d + 1), ' ');
  out << pad;
  for (int c = 0; c < table.columns(); ++c) out << ' ' << c;
  out << '\n';
  for (int r = 1; r <= table.rows(); ++r) {
    out << '*' << std::string(static_cast<std::size_t>(d), static_cast<char>('0' + r));
    for (int c = 0; c < table.columns(); ++c) out << ' ' << (table.entry(r, c) ? 1 : 0);
    out << '\n';
  }
}

std::string format_small_table(const SmallTable& table) {
  std::ostringstream out;
  print_small_table(out, table);
  return out.str();
}

}  // namespace octa
