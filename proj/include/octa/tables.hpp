#ifndef OCTA_TABLES_HPP
#define OCTA_TABLES_HPP

// Parity tables relative to the base transversal *00...0.
//
// Row u of the large table is the octahedron (*00...0, *u_1...u_d) with every
// u_j in 1..d; column c is point c of colour 0. An entry is the parity of the
// number of edges e with e_0 = c and e_j in {0, u_j} for every j >= 1.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "octa/model.hpp"

namespace octa {

/// Bit r (0-based) set means small-table row r+1 (transversal *(r+1)...(r+1)) is designated odd.
using RowMask = std::uint32_t;

class LargeTable {
 public:
  explicit LargeTable(const Shape& shape);

  const Shape& shape() const { return shape_; }
  int rows() const { return static_cast<int>(rows_.size()); }
  int columns() const { return shape_.colours(); }

  /// Row of the second transversal u, given as u_1..u_d with each u_j in 1..d.
  int row_of(std::span<const int> u) const;
  /// Inverse of row_of.
  std::vector<int> transversal_of(int row) const;

  bool entry(int row, int column) const { return (rows_[row] >> column) & 1U; }
  std::uint8_t row_bits(int row) const { return rows_[row]; }
  /// Entries in columns 1..d disagreeing with column 0, summed over all rows.
  std::int64_t score() const { return score_; }

  /// Flips every entry the edge contributes to; returns the number of flipped entries.
  int toggle(const Edge& e);

  /// Overwrites one row, keeping the cached score in step.
  void set_row_bits(int row, std::uint8_t bits);

  /// Recomputes the score from the stored bits.
  std::int64_t recount_score() const;

  friend bool operator==(const LargeTable& a, const LargeTable& b) {
    return a.shape_ == b.shape_ && a.rows_ == b.rows_ && a.score_ == b.score_;
  }

 private:
  int row_score(std::uint8_t bits) const;

  Shape shape_;
  std::vector<std::uint8_t> rows_;
  std::int64_t score_ = 0;
};

/// Definitional construction: counts, for every row, the edges lying on its octahedron.
LargeTable build_large_table(const EdgeSet& h);

std::int64_t score(const EdgeSet& h);

enum class Delta { add, remove };

/// Updates `table` for adding or removing `e`, where `before` is the edge set the
/// table currently describes. Throws std::invalid_argument when the sense does not
/// match membership of e in `before`. Returns the number of flipped entries.
int apply_edge_delta(LargeTable& table, const EdgeSet& before, const Edge& e, Delta sense);

class SmallTable {
 public:
  explicit SmallTable(const Shape& shape);

  const Shape& shape() const { return shape_; }
  int rows() const { return shape_.dimension(); }
  int columns() const { return shape_.colours(); }
  /// `row` is the label i of the transversal *ii...i, in 1..d.
  bool entry(int row, int column) const { return (rows_[row - 1] >> column) & 1U; }
  std::uint8_t row_bits(int row) const { return rows_[row - 1]; }
  void set_row_bits(int row, std::uint8_t bits) { rows_[row - 1] = bits; }

  friend bool operator==(const SmallTable&, const SmallTable&) = default;

 private:
  Shape shape_;
  std::vector<std::uint8_t> rows_;
};

SmallTable build_small_table(const EdgeSet& h);
SmallTable small_table_of(const LargeTable& table);

struct TableEntry {
  int row = 0;  ///< 1..d
  int column = 0;

  friend auto operator<=>(const TableEntry&, const TableEntry&) = default;
};

/// Mask with the first b rows designated odd.
RowMask first_rows(int b);

/// Entries differing from their row's designated parity, row-major.
std::vector<TableEntry> small_table_mismatches(const SmallTable& table, RowMask odd_rows);

/// Rows whose bits are all ones; rows that are all zeros are even. Mixed rows make
/// the result meaningless, callers check constancy first.
RowMask odd_rows(const SmallTable& table);
bool rows_constant(const SmallTable& table);

/// Fixed layout: header of column labels, then one line per row "*ii..i  b b b ...".
void print_small_table(std::ostream& out, const SmallTable& table);
std::string format_small_table(const SmallTable& table);

}  // namespace octa

#endif  // OCTA_TABLES_HPP
