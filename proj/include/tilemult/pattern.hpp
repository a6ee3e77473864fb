/* tilemult: multiplier tiling with incomplete sub-multiplier tiles
 * SPDX-License-Identifier: MIT
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tilemult {

/// One partial-product position: x indexes X-operand bits, y indexes
/// Y-operand bits, the position's arithmetic weight is 2^(x+y).
struct Cell {
  std::uint8_t x = 0;
  std::uint8_t y = 0;

  friend bool operator==(const Cell& a, const Cell& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Cell& a, const Cell& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  }
  int column() const { return int(x) + int(y); }
  std::uint64_t weight() const { return std::uint64_t(1) << column(); }
};

/// Signedness of the two operand sub-words a tile multiplies.
struct Signedness {
  bool x_signed = false;
  bool y_signed = false;

  friend bool operator==(const Signedness&, const Signedness&) = default;
  bool any() const { return x_signed || y_signed; }
  std::string str() const {
    return std::string(x_signed ? "s" : "u") + (y_signed ? "s" : "u");
  }
};

/*! \brief A set of active partial-product cells in a bounded window.
 *
 * Cells are kept sorted by (y, x) and unique.  The canonical form used
 * throughout the search has at least one active cell with x = 0 and one
 * with y = 0 (least-significant alignment).
 */
struct GridPattern {
  std::uint8_t bound_x = 0;
  std::uint8_t bound_y = 0;
  std::vector<Cell> cells;

  GridPattern() = default;
  GridPattern(int bx, int by, std::vector<Cell> cs) : bound_x(std::uint8_t(bx)), bound_y(std::uint8_t(by)), cells(std::move(cs)) {
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    for (const Cell& c : cells)
      if (c.x >= bound_x || c.y >= bound_y) throw std::invalid_argument("cell out of bounds");
  }

  static GridPattern rect(int w, int h) {
    std::vector<Cell> cs;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) cs.push_back({std::uint8_t(x), std::uint8_t(y)});
    return GridPattern(w, h, std::move(cs));
  }

  /// Row-major bitmask with bit index y*bound_x + x; identical to the
  /// search enumeration index for the 4x4 window.
  static GridPattern from_mask(int bx, int by, std::uint64_t mask) {
    if (bx * by > 64) throw std::invalid_argument("mask window too large");
    std::vector<Cell> cs;
    for (int y = 0; y < by; ++y)
      for (int x = 0; x < bx; ++x)
        if (mask >> (y * bx + x) & 1) cs.push_back({std::uint8_t(x), std::uint8_t(y)});
    return GridPattern(bx, by, std::move(cs));
  }

  std::uint64_t mask() const {
    if (bound_x * bound_y > 64) throw std::domain_error("pattern too large for 64-bit mask");
    std::uint64_t m = 0;
    for (const Cell& c : cells) m |= std::uint64_t(1) << (c.y * bound_x + c.x);
    return m;
  }

  int area() const { return int(cells.size()); }
  bool empty() const { return cells.empty(); }

  bool has(int x, int y) const {
    return std::binary_search(cells.begin(), cells.end(), Cell{std::uint8_t(x), std::uint8_t(y)});
  }

  /// Sum of the weights of all active cells; equals the unsigned maximum value.
  std::uint64_t weight_sum() const {
    std::uint64_t s = 0;
    for (const Cell& c : cells) s += c.weight();
    return s;
  }

  bool is_canonical() const {
    if (cells.empty()) return false;
    bool x0 = false, y0 = false;
    for (const Cell& c : cells) {
      x0 |= c.x == 0;
      y0 |= c.y == 0;
    }
    return x0 && y0;
  }

  /// Translate so that min active x = 0 and min active y = 0. Idempotent.
  GridPattern canonical() const {
    if (cells.empty()) throw std::invalid_argument("cannot canonicalize empty pattern");
    int mx = 255, my = 255, hx = 0, hy = 0;
    for (const Cell& c : cells) {
      mx = std::min(mx, int(c.x));
      my = std::min(my, int(c.y));
      hx = std::max(hx, int(c.x));
      hy = std::max(hy, int(c.y));
    }
    std::vector<Cell> cs;
    cs.reserve(cells.size());
    for (const Cell& c : cells) cs.push_back({std::uint8_t(c.x - mx), std::uint8_t(c.y - my)});
    return GridPattern(hx - mx + 1, hy - my + 1, std::move(cs));
  }

  GridPattern transposed() const {
    std::vector<Cell> cs;
    cs.reserve(cells.size());
    for (const Cell& c : cells) cs.push_back({c.y, c.x});
    return GridPattern(bound_y, bound_x, std::move(cs));
  }

  /// Full m x n rectangle test (after canonicalization): true iff the
  /// cells are exactly the bounding-box rectangle.
  bool is_rect() const {
    if (cells.empty()) return false;
    int hx = 0, hy = 0;
    for (const Cell& c : cells) {
      hx = std::max(hx, int(c.x));
      hy = std::max(hy, int(c.y));
    }
    return int(cells.size()) == (hx + 1) * (hy + 1) && is_canonical();
  }

  int width() const {
    int hx = -1;
    for (const Cell& c : cells) hx = std::max(hx, int(c.x));
    return hx + 1;
  }
  int height() const {
    int hy = -1;
    for (const Cell& c : cells) hy = std::max(hy, int(c.y));
    return hy + 1;
  }

  std::string str() const {
    std::string s;
    for (int y = height() - 1; y >= 0; --y) {
      for (int x = width() - 1; x >= 0; --x) s += has(x, y) ? '#' : '.';
      s += '\n';
    }
    return s;
  }

  friend bool operator==(const GridPattern& a, const GridPattern& b) {
    return a.cells == b.cells;
  }
  friend bool operator<(const GridPattern& a, const GridPattern& b) { return a.cells < b.cells; }
};

inline int area(const GridPattern& p) { return p.area(); }

/*! \brief A multiplier problem instance: the w_x x w_y board of
 * partial-product positions, plus the truncation budget.
 *
 * For trunc_lsb = t > 0 the output drops the t least significant bits;
 * cells with weight below 2^t are individually optional, and the solver
 * enforces the collective budget sum(uncovered weights) <= 2^t - 1.
 */
struct Board {
  int w_x = 0;
  int w_y = 0;
  int trunc_lsb = 0;

  Board() = default;
  Board(int wx, int wy, int t = 0) : w_x(wx), w_y(wy), trunc_lsb(t) {
    if (wx < 1 || wy < 1) throw std::invalid_argument("board dimensions must be >= 1");
    if (wx > 64 || wy > 64) throw std::invalid_argument("boards beyond 64x64 unsupported");
    if (t < 0 || (t > 0 && t >= wx + wy)) throw std::invalid_argument("invalid truncation");
  }

  int cell_count() const { return w_x * w_y; }
  bool is_optional(int x, int y) const { return x + y < trunc_lsb; }
  bool is_optional(const Cell& c) const { return is_optional(c.x, c.y); }

  std::uint64_t trunc_budget() const {
    return trunc_lsb == 0 ? 0 : (std::uint64_t(1) << trunc_lsb) - 1;
  }

  std::vector<Cell> required_cells() const {
    std::vector<Cell> cs;
    for (int y = 0; y < w_y; ++y)
      for (int x = 0; x < w_x; ++x)
        if (!is_optional(x, y)) cs.push_back({std::uint8_t(x), std::uint8_t(y)});
    return cs;
  }
  std::vector<Cell> optional_cells() const {
    std::vector<Cell> cs;
    for (int y = 0; y < w_y; ++y)
      for (int x = 0; x < w_x; ++x)
        if (is_optional(x, y)) cs.push_back({std::uint8_t(x), std::uint8_t(y)});
    return cs;
  }

  friend bool operator==(const Board&, const Board&) = default;
};

inline int bit_length(std::uint64_t v) {
  int n = 0;
  while (v) {
    ++n;
    v >>= 1;
  }
  return n;
}

}  // namespace tilemult
