/* tilemult: multiplier tiling with incomplete sub-multiplier tiles
 * SPDX-License-Identifier: MIT
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tilemult/truth_table.hpp"

namespace tilemult {

/// Product term: `care` selects the variables in the cube, `value` their
/// polarity.  An empty care mask is the constant-1 term.
struct Cube {
  std::uint32_t care = 0;
  std::uint32_t value = 0;

  bool eval(std::uint32_t assignment) const { return (assignment & care) == value; }
  int literals() const { return std::popcount(care); }
  friend bool operator==(const Cube&, const Cube&) = default;
  friend bool operator<(const Cube& a, const Cube& b) {
    if (a.care != b.care) return a.care < b.care;
    return a.value < b.value;
  }
};

/// Minimized sum-of-products cover over the tile input variables.
struct Sop {
  std::vector<Cube> cubes;
  bool const_one = false;  // distinguishes empty cover (constant 0)

  bool eval(std::uint32_t assignment) const {
    if (const_one) return true;
    for (const Cube& c : cubes)
      if (c.eval(assignment)) return true;
    return false;
  }

  int literal_count() const {
    int n = 0;
    for (const Cube& c : cubes) n += c.literals();
    return n;
  }

  std::uint32_t variables() const {
    std::uint32_t v = 0;
    for (const Cube& c : cubes) v |= c.care;
    return v;
  }

  std::string str(const TileInputs& in) const {
    if (const_one) return "1";
    if (cubes.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < cubes.size(); ++i) {
      if (i) s += " + ";
      const Cube& c = cubes[i];
      bool first = true;
      for (int v = 0; v < in.count(); ++v) {
        if (!(c.care >> v & 1)) continue;
        if (!first) s += "*";
        s += in.name(v);
        if (!(c.value >> v & 1)) s += "'";
        first = false;
      }
    }
    return s;
  }
};

namespace detail {

struct Implicant {
  std::uint32_t value = 0;  // assignment bits on the cared positions
  std::uint32_t dash = 0;   // variables merged out
  friend bool operator<(const Implicant& a, const Implicant& b) {
    if (a.dash != b.dash) return a.dash < b.dash;
    return a.value < b.value;
  }
  friend bool operator==(const Implicant&, const Implicant&) = default;
};

}  // namespace detail

/*! \brief Exact two-level minimization of one output column.
 *
 * Classic Quine-McCluskey prime generation followed by an exact minimum
 * cover (essential primes plus branch-and-bound over the cyclic core,
 * i.e. Petrick's problem solved without the product expansion).  The
 * result is deterministic: minimum cube count, then minimum literal
 * count, then lexicographically smallest cube list.
 */
inline Sop qm_minimize_column(const BitTable& col, int nvars) {
  using detail::Implicant;
  Sop out;
  if (col.is_zero()) return out;
  if (col.is_const()) {
    out.const_one = true;
    return out;
  }

  // Reduce to the functional support so redundant inputs never appear.
  std::vector<int> sup;
  for (int v = 0; v < nvars; ++v)
    if (col.depends_on(v)) sup.push_back(v);
  int s = int(sup.size());

  std::vector<std::uint8_t> f(std::size_t(1) << s);
  for (std::uint32_t a = 0; a < f.size(); ++a) {
    std::uint32_t full = 0;
    for (int i = 0; i < s; ++i)
      if (a >> i & 1) full |= 1u << sup[i];
    f[a] = col.get(full);
  }

  std::vector<std::uint32_t> minterms;
  for (std::uint32_t a = 0; a < f.size(); ++a)
    if (f[a]) minterms.push_back(a);

  // Prime implicant generation.
  std::vector<Implicant> cur;
  for (std::uint32_t m : minterms) cur.push_back({m, 0});
  std::vector<Implicant> primes;
  while (!cur.empty()) {
    std::sort(cur.begin(), cur.end());
    cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
    std::vector<bool> merged(cur.size(), false);
    std::vector<Implicant> next;
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        if (cur[i].dash != cur[j].dash) continue;
        std::uint32_t diff = cur[i].value ^ cur[j].value;
        if (std::popcount(diff) != 1) continue;
        next.push_back({cur[i].value & ~diff, cur[i].dash | diff});
        merged[i] = merged[j] = true;
      }
    for (std::size_t i = 0; i < cur.size(); ++i)
      if (!merged[i]) primes.push_back(cur[i]);
    cur = std::move(next);
  }
  std::sort(primes.begin(), primes.end(), [s](const Implicant& a, const Implicant& b) {
    int la = s - std::popcount(a.dash), lb = s - std::popcount(b.dash);
    if (la != lb) return la < lb;  // larger cubes first
    if (a.dash != b.dash) return a.dash > b.dash;
    return a.value < b.value;
  });

  // Coverage sets.
  std::uint32_t mask_all = std::uint32_t(f.size()) - 1;
  auto covers = [&](const Implicant& p, std::uint32_t m) {
    return (m & ~p.dash & mask_all) == p.value;
  };
  std::vector<std::vector<int>> covered_by(minterms.size());
  for (std::size_t mi = 0; mi < minterms.size(); ++mi)
    for (std::size_t pi = 0; pi < primes.size(); ++pi)
      if (covers(primes[pi], minterms[mi])) covered_by[mi].push_back(int(pi));

  // Exact minimum cover: branch on the minterm with fewest candidates.
  std::vector<int> best, chosen;
  int best_lits = 0;
  std::vector<bool> done(minterms.size(), false);

  auto cover_lits = [&](const std::vector<int>& sel) {
    int n = 0;
    for (int pi : sel) n += s - std::popcount(primes[pi].dash);
    return n;
  };

  std::function<void()> bb = [&]() {
    if (!best.empty() && chosen.size() > best.size()) return;
    int pick = -1, pick_n = 1 << 30;
    for (std::size_t mi = 0; mi < minterms.size(); ++mi) {
      if (done[mi]) continue;
      int n = 0;
      for (int pi : covered_by[mi]) {
        bool already = std::find(chosen.begin(), chosen.end(), pi) != chosen.end();
        if (!already) ++n;
      }
      if (n < pick_n) {
        pick_n = n;
        pick = int(mi);
      }
    }
    if (pick < 0) {
      int lits = cover_lits(chosen);
      if (best.empty() || chosen.size() < best.size() ||
          (chosen.size() == best.size() && lits < best_lits)) {
        best = chosen;
        best_lits = lits;
      }
      return;
    }
    if (!best.empty() && chosen.size() + 1 > best.size()) return;
    for (int pi : covered_by[pick]) {
      if (std::find(chosen.begin(), chosen.end(), pi) != chosen.end()) continue;
      std::vector<std::size_t> newly;
      for (std::size_t mi = 0; mi < minterms.size(); ++mi)
        if (!done[mi] && covers(primes[pi], minterms[mi])) {
          done[mi] = true;
          newly.push_back(mi);
        }
      chosen.push_back(pi);
      bb();
      chosen.pop_back();
      for (std::size_t mi : newly) done[mi] = false;
    }
  };
  bb();

  std::sort(best.begin(), best.end());
  for (int pi : best) {
    const Implicant& p = primes[pi];
    Cube c;
    for (int i = 0; i < s; ++i) {
      if (p.dash >> i & 1) continue;
      c.care |= 1u << sup[i];
      if (p.value >> i & 1) c.value |= 1u << sup[i];
    }
    out.cubes.push_back(c);
  }
  std::sort(out.cubes.begin(), out.cubes.end());
  return out;
}

/// Spec-level entry point: minimize output bit `bit` of a tile table.
inline Sop qm_minimize(const TruthTable& tt, int bit) {
  return qm_minimize_column(tt.column(bit), tt.var_count());
}

}  // namespace tilemult
