/* tilemult: multiplier tiling with incomplete sub-multiplier tiles
 * SPDX-License-Identifier: MIT
 */

#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace tilemult {

/*! \brief Fracturable-LUT slot assignment.
 *
 * A 6-LUT holds one function of up to 6 inputs, or two functions whose
 * combined support has at most 5 inputs (the two 5-LUT halves share all
 * input pins).  A 7-input function occupies two 6-LUTs combined by the
 * dedicated mux.  Supports of 8 or more are not mappable.
 */
struct LutSlot {
  std::vector<int> funcs;  // indices into the tile's function list
  bool wide7 = false;      // true: a single 7-input function, 2 LUTs
  int lut_count() const { return wide7 ? 2 : 1; }
};

struct LutPlan {
  std::vector<LutSlot> slots;
  int cost_mult = 0;
};

namespace detail {

/// Exact minimum number of single LUTs for the <=5-input functions via
/// maximum matching on the "union support <= 5" compatibility graph.
class PairMatcher {
 public:
  PairMatcher(const std::vector<std::uint32_t>& supports) : supports_(supports) {
    n_ = int(supports.size());
    adj_.assign(n_, 0);
    all_compatible_ = true;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        if (std::popcount(supports_[i] | supports_[j]) <= 5) {
          adj_[i] |= 1u << j;
          adj_[j] |= 1u << i;
        } else {
          all_compatible_ = false;
        }
      }
  }

  int max_pairs() {
    if (n_ <= 1) return 0;
    if (all_compatible_) return n_ / 2;
    return solve((1u << n_) - 1);
  }

  /// Lexicographically-first optimal pairing (for deterministic plans).
  std::vector<std::pair<int, int>> best_pairing() {
    std::vector<std::pair<int, int>> pairs;
    std::uint32_t mask = (n_ >= 32) ? ~0u : ((1u << n_) - 1);
    int want = max_pairs();
    while (mask && want > 0) {
      int v = std::countr_zero(mask);
      std::uint32_t rest = mask & ~(1u << v);
      bool paired = false;
      std::uint32_t cand = adj_[v] & rest;
      while (cand) {
        int u = std::countr_zero(cand);
        cand &= cand - 1;
        std::uint32_t nm = rest & ~(1u << u);
        if (1 + solve(nm) == want) {
          pairs.push_back({v, u});
          mask = nm;
          --want;
          paired = true;
          break;
        }
      }
      if (!paired) mask = rest;
    }
    return pairs;
  }

 private:
  int solve(std::uint32_t mask) {
    if (!mask) return 0;
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    int v = std::countr_zero(mask);
    std::uint32_t rest = mask & ~(1u << v);
    int best = solve(rest);  // leave v unpaired
    std::uint32_t cand = adj_[v] & rest;
    while (cand) {
      int u = std::countr_zero(cand);
      cand &= cand - 1;
      best = std::max(best, 1 + solve(rest & ~(1u << u)));
      if (best == std::popcount(mask) / 2) break;  // cannot do better
    }
    memo_.emplace(mask, best);
    return best;
  }

  std::vector<std::uint32_t> supports_;
  std::vector<std::uint32_t> adj_;
  std::unordered_map<std::uint32_t, int> memo_;
  int n_ = 0;
  bool all_compatible_ = false;
};

/// Minimum LUT count for a set of function supports, or nullopt if some
/// support exceeds 7 inputs.  Fast path used by the pattern search.
inline std::optional<int> min_lut_count(const std::vector<std::uint32_t>& supports) {
  std::vector<std::uint32_t> small;
  int cost = 0;
  for (std::uint32_t s : supports) {
    int k = std::popcount(s);
    if (k >= 8) return std::nullopt;
    if (k == 7)
      cost += 2;
    else if (k == 6)
      cost += 1;
    else
      small.push_back(s);
  }
  PairMatcher m(small);
  cost += int(small.size()) - m.max_pairs();
  return cost;
}

}  // namespace detail

/// Full slot assignment over function supports; index order of `supports`
/// is the function index space of the resulting plan.
inline std::optional<LutPlan> map_supports_to_luts(const std::vector<std::uint32_t>& supports) {
  LutPlan plan;
  std::vector<std::uint32_t> small;
  std::vector<int> small_idx;
  for (int i = 0; i < int(supports.size()); ++i) {
    int k = std::popcount(supports[i]);
    if (k >= 8) return std::nullopt;
    if (k == 7) {
      plan.slots.push_back({{i}, true});
    } else if (k == 6) {
      plan.slots.push_back({{i}, false});
    } else {
      small.push_back(supports[i]);
      small_idx.push_back(i);
    }
  }
  detail::PairMatcher m(small);
  std::vector<bool> used(small.size(), false);
  for (auto [a, b] : m.best_pairing()) {
    plan.slots.push_back({{small_idx[a], small_idx[b]}, false});
    used[a] = used[b] = true;
  }
  for (int i = 0; i < int(small.size()); ++i)
    if (!used[i]) plan.slots.push_back({{small_idx[i]}, false});
  for (const LutSlot& s : plan.slots) plan.cost_mult += s.lut_count();
  return plan;
}

}  // namespace tilemult
