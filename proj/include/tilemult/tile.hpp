/* tilemult: multiplier tiling with incomplete sub-multiplier tiles
 * SPDX-License-Identifier: MIT
 */

#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tilemult/lut_map.hpp"
#include "tilemult/pattern.hpp"
#include "tilemult/quine_mccluskey.hpp"
#include "tilemult/rational.hpp"
#include "tilemult/truth_table.hpp"

namespace tilemult {

/// Cost bookkeeping runs in integer units of 1/20 LUT: a LUT is 20 units,
/// a compressor input bit is 13 units (= 0.65 LUT).
constexpr int kLutUnits = 20;
constexpr int kBitUnits = 13;

/// One output bit of a tile: weight 2^col relative to the tile origin.
struct BoolFunc {
  int col = 0;
  std::uint32_t support = 0;  // mask over the tile input variables
  BitTable table;             // over all tile input variables
  Sop sop;                    // minimized cover (filled for library tiles)
  int group = 0;              // tabulation group that produced this bit
};

enum class TileKind { searched, parametric_2xk, rectangular_base, helper };

inline const char* tile_kind_name(TileKind k) {
  switch (k) {
    case TileKind::searched: return "searched";
    case TileKind::parametric_2xk: return "parametric-2xk";
    case TileKind::rectangular_base: return "rectangular-base";
    case TileKind::helper: return "helper";
  }
  return "?";
}

/// Materialized LUT slot of a tile (pins are tile input variable ids).
struct TileSlot {
  std::vector<int> funcs;
  bool wide7 = false;
  int mux_var = -1;            // split variable for 7-input functions
  std::vector<int> pins;       // <= 6 pins (wide7: pins of the two halves)
  std::uint64_t init = 0;      // dual-output: low 32 = funcs[0], high 32 = funcs[1]
  std::uint64_t init2 = 0;     // second LUT of a 7-input function
};

struct TileDescriptor {
  GridPattern pattern;
  Signedness sign;
  TileKind kind = TileKind::searched;

  int area = 0;
  int w_out = 0;     // number of emitted output bits
  int cost_mult = 0; // 6-LUTs for the tile itself
  Rat cost_tile;     // cost_mult + 0.65 * w_out
  Rat efficiency;    // area / cost_tile
  std::int64_t min_value = 0;
  std::int64_t max_value = 0;

  bool carry_chain = false;  // parametric 2xk: LUT+carry realization
  int par_k = 0;
  bool par_transposed = false;  // k x 2 instead of 2 x k

  std::vector<BoolFunc> functions;
  std::vector<TileSlot> slots;
  std::vector<std::uint32_t> groups;  // cell-index masks of the tabulation groups
  bool cost_exact = true;             // partition search completed un-capped

  std::int64_t cost_units() const { return kLutUnits * cost_mult + kBitUnits * w_out; }
};

namespace detail {

/// Per-group tabulation: the non-constant bits of the group's value sum.
struct GroupEval {
  std::vector<int> cols;
  std::vector<std::uint32_t> supports;
  std::vector<BitTable> tables;
  std::uint64_t sum_weights = 0;
  bool mappable = true;  // no output bit with support of 8 inputs
  int bits() const { return int(cols.size()); }
};

/*! \brief Shared state for costing one canonical pattern.
 *
 * A tile may tabulate disjoint groups of its cells separately, emitting
 * each group's sum as an independent output vector; the cost of the tile
 * is taken over the best such decomposition (the fracturable-LUT pairing
 * runs globally across groups).  Groups whose bit ranges do not interact
 * are kept split, which is cost-neutral and prunes the enumeration.
 */
class TileAnalyzer {
 public:
  TileAnalyzer(const GridPattern& canon, Signedness s) : pat_(canon), sign_(s), inputs_(canon) {
    if (inputs_.count() > 8) throw std::invalid_argument("pattern uses more than 8 operand bits");
    nvars_ = inputs_.count();
    rows_ = std::uint32_t(1) << nvars_;
    cells_ = pat_.cells;
    std::sort(cells_.begin(), cells_.end(), [](const Cell& a, const Cell& b) {
      if (a.column() != b.column()) return a.column() < b.column();
      return a.x < b.x;
    });
    pp_.assign(cells_.size(), {});
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      std::uint32_t mx = 1u << inputs_.var_of_x(cells_[i].x);
      std::uint32_t my = 1u << inputs_.var_of_y(cells_[i].y);
      pp_[i].resize(rows_);
      for (std::uint32_t a = 0; a < rows_; ++a) pp_[i][a] = (a & mx) && (a & my);
    }
  }

  const TileInputs& inputs() const { return inputs_; }
  const std::vector<Cell>& ordered_cells() const { return cells_; }

  const GroupEval& eval_group(std::uint32_t mask) {
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    GroupEval g;
    std::vector<std::uint32_t> sums(rows_, 0);
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (!(mask >> i & 1)) continue;
      std::uint32_t w = std::uint32_t(1) << cells_[i].column();
      g.sum_weights += w;
      const auto& t = pp_[i];
      for (std::uint32_t a = 0; a < rows_; ++a) sums[a] += t[a] ? w : 0;
    }
    int top = bit_length(g.sum_weights);
    for (int b = 0; b < top; ++b) {
      BitTable col(nvars_);
      for (std::uint32_t a = 0; a < rows_; ++a)
        if (sums[a] >> b & 1) col.set(a);
      if (col.is_zero()) continue;  // constant-zero column, nothing emitted
      std::uint32_t sup = support_mask(col, nvars_);
      if (std::popcount(sup) >= 8) g.mappable = false;
      g.cols.push_back(b);
      g.supports.push_back(sup);
      g.tables.push_back(col);
    }
    return memo_.emplace(mask, std::move(g)).first->second;
  }

  struct Result {
    std::int64_t cost_units = 0;
    int bits = 0;
    int lut_count = 0;
    std::vector<std::uint32_t> groups;
    bool exact = true;
  };

  /// Branch-and-bound over cell partitions; cells are processed in weight
  /// order and may only join a group whose carry range they overlap.
  Result search(std::int64_t node_cap = 400000) {
    best_ = Result{};
    best_.cost_units = -1;
    nodes_ = 0;
    cap_ = node_cap;
    capped_ = false;
    std::vector<Grp> groups;
    recurse(0, groups, 0);
    best_.exact = !capped_;
    return best_;
  }

 private:
  struct Grp {
    std::uint32_t mask = 0;
    std::uint64_t sum = 0;
    int bits = 0;
    int reach() const { return bit_length(sum) - 1; }
  };

  void recurse(std::size_t idx, std::vector<Grp>& groups, int bits_so_far) {
    if (capped_) return;
    if (++nodes_ > cap_) {
      capped_ = true;
      return;
    }
    // Any completion emits at least bits_so_far bits, each costing 13
    // units plus at least half a LUT slot.
    if (best_.cost_units >= 0 &&
        std::int64_t(kBitUnits + kLutUnits / 2) * bits_so_far >= best_.cost_units)
      return;
    if (idx == cells_.size()) {
      evaluate_leaf(groups, bits_so_far);
      return;
    }
    int col = cells_[idx].column();
    // Join candidates ordered by descending carry reach (first dive then
    // behaves like the maximal-merge chain, a good incumbent).
    std::vector<int> order;
    for (int gi = 0; gi < int(groups.size()); ++gi)
      if (col <= groups[gi].reach()) order.push_back(gi);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (groups[a].reach() != groups[b].reach()) return groups[a].reach() > groups[b].reach();
      return a < b;
    });
    std::uint64_t w = cells_[idx].weight();
    for (int gi : order) {
      Grp saved = groups[gi];
      groups[gi].mask |= 1u << idx;
      groups[gi].sum += w;
      const GroupEval& ge = eval_group(groups[gi].mask);
      if (ge.mappable) {
        groups[gi].bits = ge.bits();
        recurse(idx + 1, groups, bits_so_far - saved.bits + groups[gi].bits);
      }
      groups[gi] = saved;
    }
    groups.push_back({1u << idx, w, 1});
    recurse(idx + 1, groups, bits_so_far + 1);
    groups.pop_back();
  }

  void evaluate_leaf(const std::vector<Grp>& groups, int bits_total) {
    std::vector<std::uint32_t> supports;
    supports.reserve(bits_total);
    for (const Grp& g : groups) {
      const GroupEval& ge = eval_group(g.mask);
      for (std::uint32_t s : ge.supports) supports.push_back(s);
    }
    auto luts = detail::min_lut_count(supports);
    if (!luts) return;
    std::int64_t cost = std::int64_t(kLutUnits) * *luts + std::int64_t(kBitUnits) * bits_total;
    if (best_.cost_units < 0 || cost < best_.cost_units) {
      best_.cost_units = cost;
      best_.bits = bits_total;
      best_.lut_count = *luts;
      best_.groups.clear();
      for (const Grp& g : groups) best_.groups.push_back(g.mask);
    }
  }

  GridPattern pat_;
  Signedness sign_;
  TileInputs inputs_;
  int nvars_ = 0;
  std::uint32_t rows_ = 0;
  std::vector<Cell> cells_;
  std::vector<std::vector<std::uint8_t>> pp_;
  std::map<std::uint32_t, GroupEval> memo_;
  Result best_;
  std::int64_t nodes_ = 0, cap_ = 0;
  bool capped_ = false;
};

inline std::uint64_t slot_init(const BitTable& t, const std::vector<int>& pins, int nvars,
                               bool low_half) {
  std::uint64_t init = 0;
  int span = low_half ? 32 : 64;
  for (int k = 0; k < span; ++k) {
    std::uint32_t a = 0;
    for (std::size_t p = 0; p < pins.size(); ++p)
      if (k >> p & 1) a |= 1u << pins[p];
    (void)nvars;
    if (t.get(a)) init |= std::uint64_t(1) << k;
  }
  return init;
}

}  // namespace detail

/// Lightweight costing used by the exhaustive search: no SOPs, no slots.
struct TileMetrics {
  int area = 0;
  int w_out = 0;
  int cost_mult = 0;
  std::int64_t cost_units = 0;
  bool exact = true;
  Rat cost_tile() const { return Rat(cost_units, kLutUnits); }
  Rat efficiency() const { return Rat(std::int64_t(area) * kLutUnits, cost_units); }
};

inline TileMetrics tile_metrics(const GridPattern& canon, Signedness s = {}) {
  detail::TileAnalyzer an(canon, s);
  auto r = an.search();
  if (r.cost_units < 0) throw std::domain_error("pattern not mappable to 6-LUTs");
  TileMetrics m;
  m.area = canon.area();
  m.w_out = r.bits;
  m.cost_mult = r.lut_count;
  m.cost_units = r.cost_units;
  m.exact = r.exact;
  return m;
}

/*! \brief Full descriptor of a LUT-mapped tile: metrics, minimized
 * equations and the fracturable-LUT slot assignment with init vectors.
 */
inline TileDescriptor describe_tile(const GridPattern& pattern, Signedness s = {},
                                    TileKind kind = TileKind::searched) {
  GridPattern canon = pattern.canonical();
  TileDescriptor d;
  d.pattern = canon;
  d.sign = s;
  d.kind = kind;
  d.area = canon.area();
  auto [lo, hi] = value_range(canon, s);
  d.min_value = lo;
  d.max_value = hi;

  detail::TileAnalyzer an(canon, s);
  if (s.any()) {
    // Signed tiles are informational only: tabulate jointly in two's
    // complement at the minimal width.
    TruthTable tt(canon, s);
    int w = output_width(canon, s);
    std::vector<std::uint32_t> supports;
    for (int b = 0; b < w; ++b) {
      BoolFunc f;
      f.col = b;
      f.table = tt.column(b);
      f.support = support_mask(f.table, tt.var_count());
      if (std::popcount(f.support) >= 8) throw std::domain_error("signed tile needs 8-input LUT");
      f.sop = qm_minimize_column(f.table, tt.var_count());
      f.group = 0;
      supports.push_back(f.support);
      d.functions.push_back(std::move(f));
    }
    d.w_out = w;
    auto plan = map_supports_to_luts(supports);
    if (!plan) throw std::domain_error("signed tile not mappable");
    d.cost_mult = plan->cost_mult;
    d.groups = {std::uint32_t((std::uint64_t(1) << canon.area()) - 1)};
    for (const LutSlot& sl : plan->slots) d.slots.push_back({sl.funcs, sl.wide7});
  } else {
    auto r = an.search();
    if (r.cost_units < 0) throw std::domain_error("pattern not mappable to 6-LUTs");
    d.w_out = r.bits;
    d.cost_mult = r.lut_count;
    d.cost_exact = r.exact;
    d.groups = r.groups;
    std::vector<std::uint32_t> supports;
    for (std::size_t gi = 0; gi < r.groups.size(); ++gi) {
      const auto& ge = an.eval_group(r.groups[gi]);
      for (int b = 0; b < ge.bits(); ++b) {
        BoolFunc f;
        f.col = ge.cols[b];
        f.support = ge.supports[b];
        f.table = ge.tables[b];
        f.sop = qm_minimize_column(f.table, an.inputs().count());
        f.group = int(gi);
        supports.push_back(f.support);
        d.functions.push_back(std::move(f));
      }
    }
    auto plan = map_supports_to_luts(supports);
    if (!plan) throw std::domain_error("pattern not mappable to 6-LUTs");
    d.cost_mult = plan->cost_mult;
    for (const LutSlot& sl : plan->slots) d.slots.push_back({sl.funcs, sl.wide7});
  }

  // Materialize slot pins and init vectors.
  int nvars = an.inputs().count();
  for (TileSlot& sl : d.slots) {
    if (sl.wide7) {
      const BoolFunc& f = d.functions[sl.funcs[0]];
      int split = 31 - std::countl_zero(f.support);  // highest support var
      sl.mux_var = split;
      for (int v = 0; v < nvars; ++v)
        if ((f.support >> v & 1) && v != split) sl.pins.push_back(v);
      BitTable lo6 = f.table, hi6 = f.table;
      // Cofactors: restrict the split variable.
      BitTable toggled = f.table.toggled(split);
      for (std::uint32_t a = 0; a < f.table.rows(); ++a) {
        bool bit = (a >> split & 1) ? toggled.get(a) : f.table.get(a);
        if (!bit) {
          lo6.w[a >> 6] &= ~(std::uint64_t(1) << (a & 63));
        } else {
          lo6.w[a >> 6] |= std::uint64_t(1) << (a & 63);
        }
        bool bith = (a >> split & 1) ? f.table.get(a) : toggled.get(a);
        if (!bith) {
          hi6.w[a >> 6] &= ~(std::uint64_t(1) << (a & 63));
        } else {
          hi6.w[a >> 6] |= std::uint64_t(1) << (a & 63);
        }
      }
      sl.init = detail::slot_init(lo6, sl.pins, nvars, false);
      sl.init2 = detail::slot_init(hi6, sl.pins, nvars, false);
    } else if (sl.funcs.size() == 2) {
      std::uint32_t u = d.functions[sl.funcs[0]].support | d.functions[sl.funcs[1]].support;
      for (int v = 0; v < nvars; ++v)
        if (u >> v & 1) sl.pins.push_back(v);
      std::uint64_t lo = detail::slot_init(d.functions[sl.funcs[0]].table, sl.pins, nvars, true);
      std::uint64_t hi = detail::slot_init(d.functions[sl.funcs[1]].table, sl.pins, nvars, true);
      sl.init = lo | (hi << 32);
    } else {
      std::uint32_t u = d.functions[sl.funcs[0]].support;
      for (int v = 0; v < nvars; ++v)
        if (u >> v & 1) sl.pins.push_back(v);
      sl.init = detail::slot_init(d.functions[sl.funcs[0]].table, sl.pins, nvars, false);
    }
  }

  d.cost_tile = Rat(d.cost_units(), kLutUnits);
  d.efficiency = Rat(std::int64_t(d.area) * kLutUnits, d.cost_units());
  return d;
}

/// Parametric 2xk (or transposed k x 2) rectangle realized on the fast
/// carry chain: k+1 LUTs, k+2 output bits regardless of k.
inline TileDescriptor rect_2xk_descriptor(int k, bool transposed = false) {
  if (k < 2) throw std::invalid_argument("parametric 2xk needs k >= 2");
  TileDescriptor d;
  d.pattern = transposed ? GridPattern::rect(k, 2) : GridPattern::rect(2, k);
  d.sign = {};
  d.kind = TileKind::parametric_2xk;
  d.carry_chain = true;
  d.par_k = k;
  d.par_transposed = transposed;
  d.area = 2 * k;
  d.w_out = k + 2;
  d.cost_mult = k + 1;
  d.min_value = 0;
  d.max_value = std::int64_t(3) * ((std::int64_t(1) << k) - 1);
  d.cost_tile = Rat(d.cost_units(), kLutUnits);
  d.efficiency = Rat(std::int64_t(d.area) * kLutUnits, d.cost_units());
  return d;
}

}  // namespace tilemult
