#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "slimrect/enumerate.hpp"
#include "slimrect/fork.hpp"
#include "slimrect/lattice.hpp"
#include "slimrect/rect.hpp"

namespace slimrect::test {

using Names = std::vector<std::vector<std::string>>;
using NamedCovers = std::vector<std::pair<std::string, std::string>>;

inline RawLattice raw_of(const Names& levels, const NamedCovers& covers) {
  RawLattice raw;
  std::map<std::string, ElementId> ids;
  for (const auto& level : levels) {
    raw.levels.emplace_back();
    for (const auto& name : level) {
      ids[name] = static_cast<ElementId>(raw.labels.size());
      raw.levels.back().push_back(ids[name]);
      raw.labels.push_back(name);
    }
  }
  for (const auto& [lo, hi] : covers) raw.covers.push_back({ids.at(lo), ids.at(hi)});
  return raw;
}

inline LeveledLattice build(const Names& levels, const NamedCovers& covers) {
  return make_lattice(raw_of(levels, covers));
}

inline ElementId id(const LeveledLattice& l, const std::string& name) { return l.find(name).value(); }

inline LeveledLattice chain(std::size_t n) {
  Names levels;
  NamedCovers covers;
  for (std::size_t k = 0; k < n; ++k) {
    levels.push_back({"c" + std::to_string(k)});
    if (k) covers.push_back({"c" + std::to_string(k - 1), "c" + std::to_string(k)});
  }
  return build(levels, covers);
}

inline LeveledLattice m3() {
  return build({{"0"}, {"a", "b", "c"}, {"1"}},
               {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}});
}

/// S7 as a fork in grid(2,2), renamed: o, x1, y1, a, m, b, t.
inline LeveledLattice s7() {
  auto g = grid(2, 2);
  auto l = insert_fork(g, cells4(g).front()).lattice;
  auto raw = l.raw();
  for (auto& s : raw.labels) {
    if (s == "g0_0") s = "o";
    else if (s == "g1_0") s = "a";
    else if (s == "g0_1") s = "b";
    else if (s == "g1_1") s = "t";
  }
  return make_lattice(raw);
}

/// Order dual with the same left-to-right order.
inline LeveledLattice dual(const LeveledLattice& l) {
  RawLattice raw = l.raw();
  std::reverse(raw.levels.begin(), raw.levels.end());
  for (auto& [lo, hi] : raw.covers) std::swap(lo, hi);
  return make_lattice(raw);
}

/// Every maximal chain of l through b, bottom to top.
inline std::vector<std::vector<ElementId>> maximal_chains_through(const LeveledLattice& l, ElementId b) {
  std::vector<std::vector<ElementId>> downs, ups, out;
  std::function<void(ElementId, std::vector<ElementId>&)> down = [&](ElementId x, std::vector<ElementId>& acc) {
    acc.push_back(x);
    if (l.down_covers(x).empty()) downs.emplace_back(acc.rbegin(), acc.rend());
    for (ElementId y : l.down_covers(x)) down(y, acc);
    acc.pop_back();
  };
  std::function<void(ElementId, std::vector<ElementId>&)> up = [&](ElementId x, std::vector<ElementId>& acc) {
    acc.push_back(x);
    if (l.up_covers(x).empty()) ups.push_back(acc);
    for (ElementId y : l.up_covers(x)) up(y, acc);
    acc.pop_back();
  };
  std::vector<ElementId> acc;
  down(b, acc);
  up(b, acc);
  for (const auto& d : downs)
    for (const auto& u : ups) {
      auto c = d;
      c.insert(c.end(), u.begin() + 1, u.end());
      out.push_back(std::move(c));
    }
  return out;
}

/// Shared desk-scale universe.
inline const Universe& universe_332() {
  static const Universe u = enumerate_sr(3, 3, 2);
  return u;
}

}  // namespace slimrect::test
