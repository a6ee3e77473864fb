/* tilemult: multiplier tiling with incomplete sub-multiplier tiles
 * SPDX-License-Identifier: MIT
 */

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tilemult/pattern.hpp"

namespace tilemult {

/// Maps a pattern's used operand bits to dense truth-table variables:
/// first the distinct x indices (ascending), then the distinct y indices.
struct TileInputs {
  std::vector<int> xs;
  std::vector<int> ys;

  explicit TileInputs(const GridPattern& p) {
    for (const Cell& c : p.cells) {
      if (std::find(xs.begin(), xs.end(), int(c.x)) == xs.end()) xs.push_back(c.x);
      if (std::find(ys.begin(), ys.end(), int(c.y)) == ys.end()) ys.push_back(c.y);
    }
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
  }

  int count() const { return int(xs.size() + ys.size()); }
  int var_of_x(int x) const {
    return int(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin());
  }
  int var_of_y(int y) const {
    return int(xs.size() + (std::lower_bound(ys.begin(), ys.end(), y) - ys.begin()));
  }
  std::string name(int var) const {
    if (var < int(xs.size())) return "x" + std::to_string(xs[var]);
    return "y" + std::to_string(ys[var - xs.size()]);
  }
  std::vector<std::string> names() const {
    std::vector<std::string> n;
    for (int i = 0; i < count(); ++i) n.push_back(name(i));
    return n;
  }
};

/*! \brief Bit-per-assignment table for one output column, n <= 8 inputs. */
struct BitTable {
  int n = 0;
  std::array<std::uint64_t, 4> w{0, 0, 0, 0};

  explicit BitTable(int vars = 0) : n(vars) {}

  std::uint64_t rows() const { return std::uint64_t(1) << n; }
  void set(std::uint32_t a) { w[a >> 6] |= std::uint64_t(1) << (a & 63); }
  bool get(std::uint32_t a) const { return w[a >> 6] >> (a & 63) & 1; }

  bool is_zero() const { return !(w[0] | w[1] | w[2] | w[3]); }
  bool is_const() const {
    if (is_zero()) return true;
    BitTable full = ones(n);
    return w == full.w;
  }
  static BitTable ones(int vars) {
    BitTable t(vars);
    std::uint64_t r = std::uint64_t(1) << vars;
    for (int i = 0; i < 4; ++i) {
      if (r >= 64) {
        t.w[i] = ~std::uint64_t(0);
        r -= 64;
      } else if (r > 0) {
        t.w[i] = (std::uint64_t(1) << r) - 1;
        r = 0;
      }
    }
    return t;
  }

  /// Table with assignment bit `var` flipped in the row index.
  BitTable toggled(int var) const {
    static constexpr std::uint64_t M[6] = {
        0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
        0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull};
    BitTable t(n);
    if (var < 6) {
      int s = 1 << var;
      for (int i = 0; i < 4; ++i) t.w[i] = ((w[i] & M[var]) << s) | ((w[i] & ~M[var]) >> s);
    } else if (var == 6) {
      t.w = {w[1], w[0], w[3], w[2]};
    } else {
      t.w = {w[2], w[3], w[0], w[1]};
    }
    return t;
  }

  bool depends_on(int var) const {
    BitTable t = toggled(var);
    return (w[0] ^ t.w[0]) | (w[1] ^ t.w[1]) | (w[2] ^ t.w[2]) | (w[3] ^ t.w[3]);
  }

  friend bool operator==(const BitTable& a, const BitTable& b) { return a.n == b.n && a.w == b.w; }
};

/*! \brief Tabulated tile output: the sum of the active partial products
 * for every assignment of the used operand bits.
 */
struct TruthTable {
  TileInputs inputs;
  std::vector<std::int32_t> rows;
  std::int32_t min_value = 0;
  std::int32_t max_value = 0;

  explicit TruthTable(const GridPattern& p, Signedness s = {}) : inputs(p) {
    int n = inputs.count();
    if (n > 8) throw std::invalid_argument("pattern uses more than 8 operand bits");
    int sign_x = -1, sign_y = -1;
    if (s.x_signed && !inputs.xs.empty()) sign_x = inputs.xs.back();
    if (s.y_signed && !inputs.ys.empty()) sign_y = inputs.ys.back();
    rows.resize(std::size_t(1) << n);
    struct PP {
      std::uint32_t mx, my;
      std::int32_t w;
    };
    std::vector<PP> pps;
    for (const Cell& c : p.cells) {
      std::int32_t w = std::int32_t(1) << c.column();
      if (int(c.x) == sign_x) w = -w;
      if (int(c.y) == sign_y) w = -w;
      pps.push_back({1u << inputs.var_of_x(c.x), 1u << inputs.var_of_y(c.y), w});
    }
    min_value = 0;
    max_value = 0;
    for (std::uint32_t a = 0; a < rows.size(); ++a) {
      std::int32_t v = 0;
      for (const PP& pp : pps)
        if ((a & pp.mx) && (a & pp.my)) v += pp.w;
      rows[a] = v;
      min_value = std::min(min_value, v);
      max_value = std::max(max_value, v);
    }
  }

  int var_count() const { return inputs.count(); }

  /// Bit column `bit` of the (two's complement, for signed tiles) value.
  BitTable column(int bit) const {
    BitTable t(var_count());
    for (std::uint32_t a = 0; a < rows.size(); ++a)
      if (std::uint32_t(rows[a]) >> bit & 1) t.set(a);
    return t;
  }
};

inline TruthTable build_truth_table(const GridPattern& p, Signedness s = {}) {
  return TruthTable(p, s);
}

/// Exact functional support of one output bit: variable i is in the
/// support iff toggling it flips the bit for some assignment.
inline std::vector<int> functional_support(const TruthTable& tt, int bit) {
  BitTable col = tt.column(bit);
  std::vector<int> sup;
  for (int v = 0; v < tt.var_count(); ++v)
    if (col.depends_on(v)) sup.push_back(v);
  return sup;
}

inline std::uint32_t support_mask(const BitTable& col, int vars) {
  std::uint32_t m = 0;
  for (int v = 0; v < vars; ++v)
    if (col.depends_on(v)) m |= 1u << v;
  return m;
}

/// Tight (min, max) of the tile value over all input assignments.
inline std::pair<std::int64_t, std::int64_t> value_range(const GridPattern& p, Signedness s = {}) {
  if (p.empty()) return {0, 0};
  if (!s.any()) return {0, std::int64_t(p.weight_sum())};
  TruthTable tt(p, s);
  return {tt.min_value, tt.max_value};
}

/// Minimal bit count for every value of the range (two's complement if
/// the range is partly negative).
inline int output_width(const GridPattern& p, Signedness s = {}) {
  auto [lo, hi] = value_range(p, s);
  if (lo >= 0) return bit_length(std::uint64_t(hi));
  int w = 1;
  while (!(-(std::int64_t(1) << (w - 1)) <= lo && hi <= (std::int64_t(1) << (w - 1)) - 1)) ++w;
  return w;
}

}  // namespace tilemult
