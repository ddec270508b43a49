#include <algorithm>
#include <set>

#include "doctest.h"
#include "support.hpp"

using namespace slimrect;
using namespace slimrect::test;

namespace {

std::vector<LatticeDefect> defects_of(const RawLattice& raw) {
  auto v = validate(raw);
  REQUIRE(std::holds_alternative<std::vector<LatticeDefect>>(v));
  return std::get<std::vector<LatticeDefect>>(v);
}

bool has_kind(const std::vector<LatticeDefect>& ds, DefectKind k) {
  return std::any_of(ds.begin(), ds.end(), [&](const auto& d) { return d.kind == k; });
}

// N5 occurrence in role order (bottom, low, high, side, top), checked from the tables.
bool is_n5(const LeveledLattice& l, const std::vector<ElementId>& e) {
  ElementId z = e[0], lo = e[1], hi = e[2], s = e[3], t = e[4];
  return l.less(lo, hi) && !l.comparable(lo, s) && !l.comparable(hi, s) && l.meet(lo, s) == z &&
         l.meet(hi, s) == z && l.join(lo, s) == t && l.join(hi, s) == t;
}

}  // namespace

TEST_CASE("validate accepts a chain") {
  auto v = validate(chain(3).raw());
  CHECK(std::holds_alternative<LeveledLattice>(v));
}

TEST_CASE("validate: bowtie is not bounded") {
  auto ds = defects_of(raw_of({{"a", "b"}, {"c", "d"}}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}}));
  CHECK(has_kind(ds, DefectKind::not_bounded));
}

TEST_CASE("validate: two minimal upper bounds is not a lattice") {
  auto raw = raw_of({{"0"}, {"x", "y"}, {"u", "v"}, {"1"}},
                    {{"0", "x"}, {"0", "y"}, {"x", "u"}, {"x", "v"}, {"y", "u"}, {"y", "v"}, {"u", "1"}, {"v", "1"}});
  auto ds = defects_of(raw);
  CHECK(has_kind(ds, DefectKind::not_a_lattice));
  bool found = false;
  for (const auto& d : ds)
    if (d.kind == DefectKind::not_a_lattice && d.witness.size() >= 2) {
      std::set<ElementId> pair{d.witness[0], d.witness[1]};
      if (pair == std::set<ElementId>{1, 2}) {  // x, y
        found = true;
        std::set<ElementId> bounds(d.witness.begin() + 2, d.witness.end());
        CHECK(bounds == std::set<ElementId>{3, 4});  // u, v
      }
    }
  CHECK(found);
}

TEST_CASE("validate: crossing edges and skipped levels") {
  auto crossing = defects_of(raw_of({{"0"}, {"a", "b"}, {"c", "d"}, {"1"}},
                                    {{"0", "a"}, {"0", "b"}, {"a", "d"}, {"b", "c"}, {"c", "1"}, {"d", "1"}}));
  REQUIRE(crossing.size() == 1);
  CHECK(crossing[0].kind == DefectKind::crossing_edges);
  CHECK(crossing[0].witness.size() == 4);

  // The pentagon cannot be leveled: its two maximal chains differ in length.
  auto n5 = defects_of(raw_of({{"0"}, {"a", "c"}, {"b"}, {"1"}},
                              {{"0", "a"}, {"a", "b"}, {"0", "c"}, {"c", "1"}, {"b", "1"}}));
  CHECK(has_kind(n5, DefectKind::not_graded));
}

TEST_CASE("validate rejects malformed indices") {
  RawLattice raw;
  raw.levels = {{0}, {2}};
  CHECK_THROWS_AS(validate(raw), std::invalid_argument);
  raw.levels = {{0}, {}, {1}};
  CHECK_THROWS_AS(validate(raw), std::invalid_argument);
  raw.levels = {{0}, {1}};
  raw.covers = {{0, 1}, {0, 1}};
  CHECK_THROWS_AS(validate(raw), std::invalid_argument);
  CHECK_THROWS_AS(make_lattice(raw_of({{"a", "b"}}, {})), InvalidLattice);
}

TEST_CASE("meet, join and height") {
  auto g = grid(2, 2);
  auto [a, b] = std::pair{g.levels()[1][0], g.levels()[1][1]};
  CHECK(g.meet(a, a) == a);
  CHECK(g.meet(a, b) == g.bottom());
  CHECK(g.join(a, b) == g.top());

  auto s = s7();
  CHECK(s.meet(id(s, "m"), id(s, "a")) == id(s, "x1"));
  CHECK(s.meet(id(s, "m"), id(s, "b")) == id(s, "y1"));
  CHECK(s.height(s.bottom()) == 0);
  CHECK(s.height(id(s, "m")) == 2);
  CHECK(grid(3, 3).height(grid(3, 3).top()) == 4);
}

TEST_CASE("semimodularity") {
  CHECK(is_semimodular(grid(3, 3)));
  CHECK(is_semimodular(s7()));
  // The dual of S7 is graded and planar but not (upper) semimodular.
  auto d = dual(s7());
  auto w = semimodularity_violation(d);
  REQUIRE(w);
  auto [a, b] = *w;
  ElementId z = d.meet(a, b), j = d.join(a, b);
  CHECK(d.covers(z, a));
  CHECK_FALSE(d.covers(b, j));
}

TEST_CASE("slimness") {
  auto m = find_m3(m3());
  REQUIRE(m);
  CHECK(m->elements == std::vector<ElementId>{0, 1, 2, 3, 4});
  CHECK_FALSE(is_slim(m3()));
  CHECK(is_slim(grid(4, 3)));
  CHECK(is_slim(s7()));
  CHECK(find_sublattice(grid(4, 4), Pattern::m3).empty());
}

TEST_CASE("distributivity and principal ideals") {
  auto g = grid(3, 3);
  for (ElementId c = 0; c < g.size(); ++c) CHECK(is_distributive_ideal(g, c));
  CHECK(is_distributive(g));

  auto s = s7();
  CHECK(is_distributive_ideal(s, id(s, "m")));
  CHECK_FALSE(is_distributive_ideal(s, id(s, "t")));
  auto w = ideal_distributivity_violation(s, id(s, "t"));
  REQUIRE(w);
  CHECK(w->pattern == Pattern::n5);
  CHECK(is_n5(s, w->elements));

  std::vector<ElementId> expected{id(s, "o"), id(s, "y1"), id(s, "b"), id(s, "a"), id(s, "t")};
  auto all = find_sublattice(s, Pattern::n5);
  CHECK(std::any_of(all.begin(), all.end(), [&](const auto& o) { return o.elements == expected; }));
  for (const auto& o : all) CHECK(is_n5(s, o.elements));
}

TEST_CASE("left_of examples") {
  auto g = grid(2, 2);
  CHECK(left_of(g, g.levels()[1][0], g.levels()[1][1]));
  auto s = s7();
  CHECK_THROWS_AS(left_of(s, id(s, "x1"), id(s, "m")), ComparablePair);
  CHECK(left_of(s, id(s, "a"), id(s, "b")));
  CHECK_FALSE(left_of(s, id(s, "b"), id(s, "a")));
  CHECK(left_of(s, id(s, "x1"), id(s, "b")));
  CHECK(left_of(s, id(s, "a"), id(s, "y1")));
}

TEST_CASE("S7 occurrences") {
  auto s = s7();
  auto cov = find_sublattice(s, Pattern::s7_covering);
  REQUIRE(cov.size() == 1);
  CHECK(cov[0].elements == std::vector<ElementId>{id(s, "o"), id(s, "x1"), id(s, "y1"), id(s, "a"), id(s, "b"),
                                                  id(s, "m"), id(s, "t")});
  CHECK(find_sublattice(s, Pattern::s7_peak).size() == 1);
}

TEST_CASE("property: lattice laws, gradedness and planarity over the universe") {
  for (const auto& [code, m] : universe_332().members) {
    const auto& l = m.lattice;
    const ElementId n = static_cast<ElementId>(l.size());
    for (ElementId x = 0; x < n; ++x)
      for (ElementId y : l.up_covers(x)) REQUIRE(l.height(y) == l.height(x) + 1);
    for (ElementId x = 0; x < n; ++x)
      for (ElementId y = 0; y < n; ++y) {
        REQUIRE(l.meet(x, y) == l.meet(y, x));
        REQUIRE(l.join(x, y) == l.join(y, x));
        REQUIRE(l.meet(x, l.join(x, y)) == x);
        REQUIRE(l.join(x, l.meet(x, y)) == x);
        REQUIRE(l.leq(l.meet(x, y), x));
        for (ElementId z = 0; z < n; z += 3) {
          REQUIRE(l.meet(l.meet(x, y), z) == l.meet(x, l.meet(y, z)));
          REQUIRE(l.join(l.join(x, y), z) == l.join(x, l.join(y, z)));
        }
      }
    // Edges between adjacent rows, sorted by lower endpoint, have
    // non-decreasing upper endpoints.
    for (std::size_t h = 0; h + 1 < l.levels().size(); ++h) {
      std::size_t last = 0;
      for (ElementId x : l.levels()[h])
        for (ElementId y : l.up_covers(x)) {
          REQUIRE(l.position(y) >= last);
          last = l.position(y);
        }
    }
    CHECK(is_semimodular(l));
    CHECK(is_slim(l));
  }
}

TEST_CASE("property: left_of is a strict total relation on incomparable pairs, independent of the chain") {
  for (const auto& [code, m] : universe_332().members) {
    const auto& l = m.lattice;
    if (l.size() > 16) continue;
    for (ElementId b = 0; b < l.size(); ++b) {
      auto chains = maximal_chains_through(l, b);
      for (ElementId a = 0; a < l.size(); ++a) {
        if (l.comparable(a, b)) {
          CHECK_THROWS_AS(left_of(l, a, b), ComparablePair);
          continue;
        }
        bool ab = left_of(l, a, b);
        REQUIRE(ab != left_of(l, b, a));
        for (const auto& c : chains) REQUIRE(left_of_chain(l, a, c) == ab);
      }
    }
  }
}

TEST_CASE("property: peak occurrences contain covering ones") {
  for (const auto& [code, m] : universe_332().members) {
    auto cov = find_s7(m.lattice, S7Kind::covering);
    auto peak = find_s7(m.lattice, S7Kind::peak);
    for (auto c : cov) {
      c.kind = S7Kind::peak;
      CHECK(std::find(peak.begin(), peak.end(), c) != peak.end());
    }
  }
}

TEST_CASE("property: embedding rebuilt from cover rotations") {
  for (const auto& [code, m] : universe_332().members) {
    const auto& l = m.lattice;
    std::vector<std::vector<ElementId>> up(l.size()), down(l.size());
    for (ElementId x = 0; x < l.size(); ++x) {
      up[x].assign(l.up_covers(x).begin(), l.up_covers(x).end());
      down[x].assign(l.down_covers(x).begin(), l.down_covers(x).end());
    }
    auto e = embed(up, down, l.labels());
    CHECK(e.levels() == l.levels());
  }
}

TEST_CASE("property: interval restriction validates") {
  for (const auto& [code, m] : universe_332().members) {
    const auto& l = m.lattice;
    for (ElementId o = 0; o < l.size(); o += 2)
      for (ElementId i = 0; i < l.size(); ++i) {
        if (!l.leq(o, i)) continue;
        auto iv = restrict_interval(l, o, i);
        CHECK(iv.lattice.size() == interval_elements(l, o, i).size());
        auto again = validate(iv.lattice.raw());
        CHECK(std::holds_alternative<LeveledLattice>(again));
        for (ElementId x = 0; x < iv.lattice.size(); ++x)
          for (ElementId y = 0; y < iv.lattice.size(); ++y)
            REQUIRE(iv.parent[iv.lattice.meet(x, y)] == l.meet(iv.parent[x], iv.parent[y]));
      }
  }
}
