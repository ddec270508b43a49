#include "slimrect/lattice.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace slimrect {

namespace {

std::string join_ids(const std::vector<ElementId>& ids) {
  std::ostringstream out;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (k) out << ',';
    out << ids[k];
  }
  return out.str();
}

std::string describe(const std::vector<LatticeDefect>& defects) {
  std::ostringstream out;
  out << "invalid lattice (" << defects.size() << " defect" << (defects.size() == 1 ? "" : "s") << ")";
  for (std::size_t k = 0; k < defects.size() && k < 5; ++k)
    out << "; " << to_string(defects[k].kind) << ": " << defects[k].message;
  return out.str();
}

}  // namespace

const char* to_string(DefectKind kind) {
  switch (kind) {
    case DefectKind::not_a_lattice: return "not-a-lattice";
    case DefectKind::not_graded: return "not-graded";
    case DefectKind::crossing_edges: return "crossing-edges";
    case DefectKind::not_bounded: return "not-bounded";
  }
  return "?";
}

const char* to_string(Pattern p) {
  switch (p) {
    case Pattern::m3: return "M3";
    case Pattern::n5: return "N5";
    case Pattern::s7_covering: return "S7_covering";
    case Pattern::s7_peak: return "S7_peak";
  }
  return "?";
}

InvalidLattice::InvalidLattice(std::vector<LatticeDefect> defects)
    : std::runtime_error(describe(defects)), defects_(std::move(defects)) {}

ComparablePair::ComparablePair(ElementId a, ElementId b)
    : std::invalid_argument("elements " + std::to_string(a) + " and " + std::to_string(b) +
                            " are comparable") {}

std::optional<ElementId> LeveledLattice::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<ElementId>(it - labels_.begin());
}

bool LeveledLattice::covers(ElementId lower, ElementId upper) const {
  const auto& ups = up_[lower];
  return std::find(ups.begin(), ups.end(), upper) != ups.end();
}

std::vector<Edge> LeveledLattice::cover_edges() const {
  std::vector<Edge> edges;
  for (const auto& level : levels_)
    for (ElementId x : level)
      for (ElementId y : up_[x]) edges.emplace_back(x, y);
  return edges;
}

std::size_t LeveledLattice::cover_count() const {
  std::size_t n = 0;
  for (const auto& ups : up_) n += ups.size();
  return n;
}

RawLattice LeveledLattice::raw() const {
  return RawLattice{levels_, cover_edges(), labels_};
}

std::variant<LeveledLattice, std::vector<LatticeDefect>> validate(const RawLattice& raw) {
  std::size_t n = 0;
  for (const auto& level : raw.levels) {
    if (level.empty()) throw std::invalid_argument("empty level");
    n += level.size();
  }
  if (n == 0) throw std::invalid_argument("lattice has no elements");
  if (!raw.labels.empty() && raw.labels.size() != n)
    throw std::invalid_argument("label count does not match element count");

  std::vector<std::size_t> level_of(n, SIZE_MAX), pos(n, 0);
  for (std::size_t h = 0; h < raw.levels.size(); ++h) {
    for (std::size_t k = 0; k < raw.levels[h].size(); ++k) {
      ElementId x = raw.levels[h][k];
      if (x >= n) throw std::invalid_argument("element id " + std::to_string(x) + " out of range");
      if (level_of[x] != SIZE_MAX)
        throw std::invalid_argument("element id " + std::to_string(x) + " appears twice");
      level_of[x] = h;
      pos[x] = k;
    }
  }

  std::vector<std::vector<ElementId>> up(n), down(n);
  {
    std::set<Edge> seen;
    for (auto [lo, hi] : raw.covers) {
      if (lo >= n || hi >= n) throw std::invalid_argument("cover references unknown element");
      if (lo == hi) throw std::invalid_argument("cover from an element to itself");
      if (!seen.insert({lo, hi}).second) throw std::invalid_argument("duplicate cover");
      up[lo].push_back(hi);
      down[hi].push_back(lo);
    }
  }
  auto by_pos = [&](ElementId a, ElementId b) { return pos[a] < pos[b]; };
  for (auto& v : up) std::sort(v.begin(), v.end(), by_pos);
  for (auto& v : down) std::sort(v.begin(), v.end(), by_pos);

  std::vector<LatticeDefect> defects;
  const std::size_t last = raw.levels.size() - 1;

  if (raw.levels.front().size() != 1)
    defects.push_back({DefectKind::not_bounded, raw.levels.front(), "bottom level is not a singleton"});
  if (raw.levels.back().size() != 1)
    defects.push_back({DefectKind::not_bounded, raw.levels.back(), "top level is not a singleton"});
  for (ElementId x = 0; x < n; ++x) {
    if (level_of[x] > 0 && down[x].empty())
      defects.push_back({DefectKind::not_bounded, {x}, "element " + std::to_string(x) + " is an extra minimal element"});
    if (level_of[x] < last && up[x].empty())
      defects.push_back({DefectKind::not_bounded, {x}, "element " + std::to_string(x) + " is an extra maximal element"});
  }

  bool graded = true;
  for (auto [lo, hi] : raw.covers) {
    if (level_of[hi] != level_of[lo] + 1) {
      graded = false;
      defects.push_back({DefectKind::not_graded, {lo, hi},
                         "cover " + std::to_string(lo) + "<" + std::to_string(hi) + " skips or reverses levels"});
    }
  }

  // Two edges between the same pair of rows cross iff their endpoints are
  // ordered oppositely.
  if (graded) {
    std::vector<std::vector<Edge>> by_level(raw.levels.size());
    for (auto e : raw.covers) by_level[level_of[e.first]].push_back(e);
    for (const auto& edges : by_level) {
      for (std::size_t s = 0; s < edges.size(); ++s) {
        for (std::size_t t = s + 1; t < edges.size(); ++t) {
          auto [u1, v1] = edges[s];
          auto [u2, v2] = edges[t];
          bool cross = (pos[u1] < pos[u2] && pos[v1] > pos[v2]) || (pos[u1] > pos[u2] && pos[v1] < pos[v2]);
          if (cross)
            defects.push_back({DefectKind::crossing_edges, {u1, v1, u2, v2},
                               "edges " + std::to_string(u1) + "-" + std::to_string(v1) + " and " +
                                   std::to_string(u2) + "-" + std::to_string(v2) + " cross"});
        }
      }
    }
  }

  if (!graded) return defects;

  // Up-sets and down-sets by sweeping levels.
  std::vector<boost::dynamic_bitset<>> upset(n, boost::dynamic_bitset<>(n));
  std::vector<boost::dynamic_bitset<>> downset(n, boost::dynamic_bitset<>(n));
  for (std::size_t h = raw.levels.size(); h-- > 0;)
    for (ElementId x : raw.levels[h]) {
      upset[x].set(x);
      for (ElementId y : up[x]) upset[x] |= upset[y];
    }
  for (const auto& level : raw.levels)
    for (ElementId x : level) {
      downset[x].set(x);
      for (ElementId y : down[x]) downset[x] |= downset[y];
    }

  std::vector<ElementId> meet(n * n), join(n * n);
  bool is_lattice = true;
  auto extremal = [&](const boost::dynamic_bitset<>& bounds, const std::vector<boost::dynamic_bitset<>>& cone) {
    // Elements of `bounds` whose cone (down-set for minimal, up-set for
    // maximal) meets `bounds` only in themselves.
    std::vector<ElementId> out;
    for (auto z = bounds.find_first(); z != boost::dynamic_bitset<>::npos; z = bounds.find_next(z))
      if ((cone[z] & bounds).count() == 1) out.push_back(static_cast<ElementId>(z));
    return out;
  };
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId y = x; y < n; ++y) {
      auto ub = upset[x] & upset[y];
      auto lb = downset[x] & downset[y];
      auto joins = extremal(ub, downset);
      auto meets = extremal(lb, upset);
      if (joins.size() == 1) {
        join[x * n + y] = join[y * n + x] = joins[0];
      } else {
        is_lattice = false;
        std::vector<ElementId> w{x, y};
        w.insert(w.end(), joins.begin(), joins.begin() + std::min<std::size_t>(2, joins.size()));
        defects.push_back({DefectKind::not_a_lattice, w,
                           joins.empty() ? "no common upper bound of " + join_ids({x, y})
                                         : "several minimal upper bounds of " + join_ids({x, y}) + ": " + join_ids(joins)});
      }
      if (meets.size() == 1) {
        meet[x * n + y] = meet[y * n + x] = meets[0];
      } else {
        is_lattice = false;
        std::vector<ElementId> w{x, y};
        w.insert(w.end(), meets.begin(), meets.begin() + std::min<std::size_t>(2, meets.size()));
        defects.push_back({DefectKind::not_a_lattice, w,
                           meets.empty() ? "no common lower bound of " + join_ids({x, y})
                                         : "several maximal lower bounds of " + join_ids({x, y}) + ": " + join_ids(meets)});
      }
    }
  }

  if (!defects.empty() || !is_lattice) return defects;

  LeveledLattice l;
  l.levels_ = raw.levels;
  l.level_of_ = std::move(level_of);
  l.pos_ = std::move(pos);
  l.up_ = std::move(up);
  l.down_ = std::move(down);
  if (raw.labels.empty()) {
    l.labels_.resize(n);
    for (ElementId x = 0; x < n; ++x) l.labels_[x] = "e" + std::to_string(x);
  } else {
    l.labels_ = raw.labels;
  }
  l.upset_ = std::move(upset);
  l.meet_ = std::move(meet);
  l.join_ = std::move(join);
  return l;
}

LeveledLattice make_lattice(const RawLattice& raw) {
  auto result = validate(raw);
  if (auto* defects = std::get_if<std::vector<LatticeDefect>>(&result)) throw InvalidLattice(std::move(*defects));
  return std::move(std::get<LeveledLattice>(result));
}

namespace {

// Left-right comparison of two distinct elements at the same height using
// only the rotation system. The leftmost maximal chain through q splits the
// diagram; the first upward contact of p with that chain enters it either
// from the left or from the right.
class RotationOrder {
 public:
  RotationOrder(const std::vector<std::vector<ElementId>>& up, const std::vector<std::vector<ElementId>>& down)
      : up_(up), down_(down), on_chain_(up.size(), 0), pred_index_(up.size(), 0) {}

  bool left(ElementId p, ElementId q) {
    std::fill(on_chain_.begin(), on_chain_.end(), 0);
    on_chain_[q] = 1;
    for (ElementId w = q; !down_[w].empty();) {
      ElementId below = down_[w].front();
      pred_index_[w] = 0;
      on_chain_[below] = 1;
      w = below;
    }
    for (ElementId w = q; !up_[w].empty();) {
      ElementId above = up_[w].front();
      pred_index_[above] = index_of(down_[above], w);
      on_chain_[above] = 1;
      w = above;
    }
    ElementId cur = p;
    while (true) {
      if (up_[cur].empty()) throw std::logic_error("upward walk left the diagram");
      ElementId next = up_[cur].front();
      if (on_chain_[next]) return index_of(down_[next], cur) < pred_index_[next];
      cur = next;
    }
  }

 private:
  static std::size_t index_of(const std::vector<ElementId>& v, ElementId x) {
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
  }

  const std::vector<std::vector<ElementId>>& up_;
  const std::vector<std::vector<ElementId>>& down_;
  std::vector<char> on_chain_;
  std::vector<std::size_t> pred_index_;
};

}  // namespace

LeveledLattice embed(const std::vector<std::vector<ElementId>>& up,
                     const std::vector<std::vector<ElementId>>& down,
                     std::vector<std::string> labels) {
  const std::size_t n = up.size();
  if (down.size() != n) throw std::invalid_argument("embed: up/down size mismatch");

  // Longest-path heights in topological order.
  std::vector<std::size_t> indeg(n), height(n, 0);
  for (std::size_t x = 0; x < n; ++x) indeg[x] = down[x].size();
  std::queue<ElementId> ready;
  for (ElementId x = 0; x < n; ++x)
    if (indeg[x] == 0) ready.push(x);
  std::size_t visited = 0;
  while (!ready.empty()) {
    ElementId x = ready.front();
    ready.pop();
    ++visited;
    for (ElementId y : up[x]) {
      height[y] = std::max(height[y], height[x] + 1);
      if (--indeg[y] == 0) ready.push(y);
    }
  }
  if (visited != n) throw std::invalid_argument("embed: cover relation has a cycle");

  std::size_t levels = *std::max_element(height.begin(), height.end()) + 1;
  RawLattice raw;
  raw.levels.resize(levels);
  for (ElementId x = 0; x < n; ++x) raw.levels[height[x]].push_back(x);
  RotationOrder order(up, down);
  for (auto& level : raw.levels) std::sort(level.begin(), level.end(), [&](ElementId a, ElementId b) {
    return a != b && order.left(a, b);
  });
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y : up[x]) raw.covers.emplace_back(x, y);
  raw.labels = std::move(labels);

  LeveledLattice l = make_lattice(raw);
  for (ElementId x = 0; x < n; ++x) {
    auto u = l.up_covers(x);
    auto d = l.down_covers(x);
    if (!std::equal(u.begin(), u.end(), up[x].begin(), up[x].end()) ||
        !std::equal(d.begin(), d.end(), down[x].begin(), down[x].end()))
      throw std::logic_error("embed: derived level order disagrees with the rotation system");
  }
  return l;
}

std::optional<Edge> semimodularity_violation(const LeveledLattice& l) {
  const auto n = static_cast<ElementId>(l.size());
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b) {
      if (a == b) continue;
      if (l.covers(l.meet(a, b), a) && !l.covers(b, l.join(a, b))) return Edge{a, b};
    }
  return std::nullopt;
}

bool is_semimodular(const LeveledLattice& l) { return !semimodularity_violation(l); }

namespace {

Occurrence m3_occurrence(const LeveledLattice& l, ElementId lo, ElementId a, ElementId b, ElementId c, ElementId hi) {
  std::array<ElementId, 3> mid{a, b, c};
  std::sort(mid.begin(), mid.end(), [&](ElementId x, ElementId y) { return slimrect::left_of(l, x, y); });
  return Occurrence{Pattern::m3, {lo, mid[0], mid[1], mid[2], hi}};
}

std::optional<Occurrence> scan_m3(const LeveledLattice& l, const std::vector<ElementId>& domain) {
  for (std::size_t s = 0; s < domain.size(); ++s)
    for (std::size_t t = s + 1; t < domain.size(); ++t) {
      ElementId a = domain[s], b = domain[t];
      if (l.comparable(a, b)) continue;
      ElementId lo = l.meet(a, b), hi = l.join(a, b);
      for (std::size_t u = t + 1; u < domain.size(); ++u) {
        ElementId c = domain[u];
        if (l.comparable(a, c) || l.comparable(b, c)) continue;
        if (l.meet(a, c) == lo && l.meet(b, c) == lo && l.join(a, c) == hi && l.join(b, c) == hi) {
          return m3_occurrence(l, lo, a, b, c, hi);
        }
      }
    }
  return std::nullopt;
}

std::optional<Occurrence> scan_n5(const LeveledLattice& l, const std::vector<ElementId>& domain) {
  for (ElementId low : domain)
    for (ElementId high : domain) {
      if (!l.less(low, high)) continue;
      for (ElementId side : domain) {
        if (l.comparable(side, low) || l.comparable(side, high)) continue;
        ElementId o = l.meet(low, side), t = l.join(low, side);
        if (l.meet(high, side) == o && l.join(high, side) == t)
          return Occurrence{Pattern::n5, {o, low, high, side, t}};
      }
    }
  return std::nullopt;
}

std::vector<ElementId> all_elements(const LeveledLattice& l) {
  std::vector<ElementId> v(l.size());
  std::iota(v.begin(), v.end(), ElementId{0});
  return v;
}

std::vector<ElementId> ideal(const LeveledLattice& l, ElementId c) {
  std::vector<ElementId> v;
  for (ElementId x = 0; x < l.size(); ++x)
    if (l.leq(x, c)) v.push_back(x);
  return v;
}

// S7 role indices: o, xa, yb, a, b, m, t.
constexpr std::array<std::array<bool, 7>, 7> kS7Leq = [] {
  std::array<std::array<bool, 7>, 7> le{};
  for (int r = 0; r < 7; ++r) le[r][r] = true;
  for (int r = 0; r < 7; ++r) le[0][r] = true;
  le[1][3] = le[1][5] = le[1][6] = true;
  le[2][4] = le[2][5] = le[2][6] = true;
  le[3][6] = le[4][6] = le[5][6] = true;
  return le;
}();

constexpr std::array<std::pair<int, int>, 9> kS7Covers{{{0, 1}, {0, 2}, {1, 3}, {1, 5}, {2, 5}, {2, 4}, {3, 6}, {5, 6}, {4, 6}}};

int s7_meet(int r, int s) {
  int best = -1;
  for (int z = 0; z < 7; ++z)
    if (kS7Leq[z][r] && kS7Leq[z][s] && (best < 0 || kS7Leq[best][z])) best = z;
  return best;
}

int s7_join(int r, int s) {
  int best = -1;
  for (int z = 0; z < 7; ++z)
    if (kS7Leq[r][z] && kS7Leq[s][z] && (best < 0 || kS7Leq[z][best])) best = z;
  return best;
}

bool matches_s7(const LeveledLattice& l, const std::array<ElementId, 7>& e) {
  for (int r = 0; r < 7; ++r)
    for (int s = r + 1; s < 7; ++s) {
      if (e[r] == e[s]) return false;
      if (l.meet(e[r], e[s]) != e[s7_meet(r, s)] || l.join(e[r], e[s]) != e[s7_join(r, s)]) return false;
    }
  return true;
}

}  // namespace

std::optional<Occurrence> find_m3(const LeveledLattice& l) { return scan_m3(l, all_elements(l)); }
std::optional<Occurrence> find_n5(const LeveledLattice& l) { return scan_n5(l, all_elements(l)); }
bool is_slim(const LeveledLattice& l) { return !find_m3(l); }

std::optional<Occurrence> distributivity_violation(const LeveledLattice& l) {
  auto dom = all_elements(l);
  if (auto w = scan_n5(l, dom)) return w;
  return scan_m3(l, dom);
}

bool is_distributive(const LeveledLattice& l) { return !distributivity_violation(l); }

std::optional<Occurrence> ideal_distributivity_violation(const LeveledLattice& l, ElementId c) {
  auto dom = ideal(l, c);
  if (auto w = scan_n5(l, dom)) return w;
  return scan_m3(l, dom);
}

bool is_distributive_ideal(const LeveledLattice& l, ElementId c) { return !ideal_distributivity_violation(l, c); }

std::vector<S7Occurrence> find_s7(const LeveledLattice& l, S7Kind kind) {
  // Both kinds need a, m, b to be lower covers of t, so scan triples of
  // lower covers.
  std::vector<S7Occurrence> out;
  for (const auto& level : l.levels())
    for (ElementId t : level) {
      auto lows = l.down_covers(t);
      for (std::size_t ia = 0; ia < lows.size(); ++ia)
        for (std::size_t ib = ia + 1; ib < lows.size(); ++ib)
          for (std::size_t im = 0; im < lows.size(); ++im) {
            if (im == ia || im == ib) continue;
            ElementId a = lows[ia], b = lows[ib], m = lows[im];
            std::array<ElementId, 7> e{l.meet(a, b), l.meet(m, a), l.meet(m, b), a, b, m, t};
            if (!matches_s7(l, e)) continue;
            if (kind == S7Kind::covering) {
              bool all = std::all_of(kS7Covers.begin(), kS7Covers.end(),
                                     [&](auto rs) { return l.covers(e[rs.first], e[rs.second]); });
              if (!all) continue;
            }
            out.push_back(S7Occurrence{e[0], e[1], e[2], e[3], e[4], e[5], e[6], kind});
          }
    }
  return out;
}

std::vector<Occurrence> find_sublattice(const LeveledLattice& l, Pattern pattern) {
  std::vector<Occurrence> out;
  const auto n = static_cast<ElementId>(l.size());
  switch (pattern) {
    case Pattern::m3:
      for (ElementId a = 0; a < n; ++a)
        for (ElementId b = a + 1; b < n; ++b) {
          if (l.comparable(a, b)) continue;
          ElementId lo = l.meet(a, b), hi = l.join(a, b);
          for (ElementId c = b + 1; c < n; ++c) {
            if (l.comparable(a, c) || l.comparable(b, c)) continue;
            if (l.meet(a, c) == lo && l.meet(b, c) == lo && l.join(a, c) == hi && l.join(b, c) == hi)
              out.push_back(m3_occurrence(l, lo, a, b, c, hi));
          }
        }
      break;
    case Pattern::n5:
      for (ElementId low = 0; low < n; ++low)
        for (ElementId high = 0; high < n; ++high) {
          if (!l.less(low, high)) continue;
          for (ElementId side = 0; side < n; ++side) {
            if (l.comparable(side, low) || l.comparable(side, high)) continue;
            ElementId o = l.meet(low, side), t = l.join(low, side);
            if (l.meet(high, side) == o && l.join(high, side) == t) out.push_back({Pattern::n5, {o, low, high, side, t}});
          }
        }
      break;
    case Pattern::s7_covering:
    case Pattern::s7_peak:
      for (const auto& s : find_s7(l, pattern == Pattern::s7_covering ? S7Kind::covering : S7Kind::peak))
        out.push_back({pattern, {s.o, s.xa, s.yb, s.a, s.b, s.m, s.t}});
      break;
  }
  return out;
}

bool left_of_chain(const LeveledLattice& l, ElementId a, std::span<const ElementId> chain) {
  ElementId there = chain[l.height(a)];
  if (there == a) throw ComparablePair(a, a);
  return l.position(a) < l.position(there);
}

bool left_of(const LeveledLattice& l, ElementId a, ElementId b) {
  if (l.comparable(a, b)) throw ComparablePair(a, b);
  if (l.height(a) == l.height(b)) return l.position(a) < l.position(b);
  // Element at height(a) of the leftmost maximal chain through b.
  ElementId w = b;
  while (l.height(w) > l.height(a)) w = l.down_covers(w).front();
  while (l.height(w) < l.height(a)) w = l.up_covers(w).front();
  return l.position(a) < l.position(w);
}

std::vector<ElementId> interval_elements(const LeveledLattice& l, ElementId o, ElementId i) {
  std::vector<ElementId> out;
  if (!l.leq(o, i)) return out;
  for (std::size_t h = l.height(o); h <= l.height(i); ++h)
    for (ElementId x : l.levels()[h])
      if (l.leq(o, x) && l.leq(x, i)) out.push_back(x);
  return out;
}

IntervalLattice restrict_interval(const LeveledLattice& l, ElementId o, ElementId i) {
  if (!l.leq(o, i)) throw std::invalid_argument("restrict_interval: o is not below i");
  std::vector<ElementId> local(l.size(), ElementId(-1));
  std::vector<ElementId> parent;
  RawLattice raw;
  for (std::size_t h = l.height(o); h <= l.height(i); ++h) {
    raw.levels.emplace_back();
    for (ElementId x : l.levels()[h])
      if (l.leq(o, x) && l.leq(x, i)) {
        local[x] = static_cast<ElementId>(parent.size());
        parent.push_back(x);
        raw.levels.back().push_back(local[x]);
      }
  }
  for (ElementId x : parent) {
    raw.labels.push_back(l.label(x));
    for (ElementId y : l.up_covers(x))
      if (local[y] != ElementId(-1)) raw.covers.emplace_back(local[x], local[y]);
  }
  return IntervalLattice{make_lattice(raw), std::move(parent)};
}

}  // namespace slimrect
