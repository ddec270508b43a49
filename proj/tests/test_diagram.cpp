#include <algorithm>

#include "doctest.h"
#include "slimrect/diagram.hpp"
#include "support.hpp"

using namespace slimrect;
using namespace slimrect::test;

namespace {

Point pt(long x, long y) { return Point{Rational(x), Rational(y)}; }

bool failed_on(const VerificationReport& r, ElementId a, ElementId b) {
  return std::any_of(r.failures.begin(), r.failures.end(), [&](const Failure& f) {
    return f.witness == std::vector<ElementId>{a, b};
  });
}

}  // namespace

TEST_CASE("psi") {
  auto s = s7();
  auto p = psi_map(s);
  CHECK(p[id(s, "o")] == GridCoord{0, 0});
  CHECK(p[id(s, "m")] == GridCoord{1, 1});
  CHECK(p[id(s, "a")] == GridCoord{2, 0});
  CHECK(p[id(s, "b")] == GridCoord{0, 2});
  CHECK(p[id(s, "t")] == GridCoord{2, 2});
  CHECK(psi_mirror_map(s)[id(s, "a")] == GridCoord{0, 2});

  auto g = grid(3, 4);
  auto pg = psi_map(g);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(pg[i * 4 + j] == GridCoord{i, j});
  CHECK_THROWS_AS(psi_map(chain(3)), std::invalid_argument);
}

TEST_CASE("natural diagram of S7") {
  auto s = s7();
  auto d = natural_diagram(s);
  CHECK(d.coords[id(s, "m")] == pt(0, 2));
  CHECK(d.coords[id(s, "t")] == pt(0, 4));
  CHECK(d.coords[id(s, "a")] == pt(-2, 2));
  CHECK(d.coords[id(s, "b")] == pt(2, 2));
  CHECK(d.coords[id(s, "x1")] == pt(-1, 1));

  std::size_t steep = 0, normal = 0;
  for (const auto& ec : classify_edges(d)) {
    if (ec.kind == EdgeKind::steep) {
      ++steep;
      CHECK(ec.edge == Edge{id(s, "m"), id(s, "t")});
    } else if (ec.kind == EdgeKind::normal_left || ec.kind == EdgeKind::normal_right) {
      ++normal;
    }
  }
  CHECK(steep == 1);
  CHECK(normal == 8);
  CHECK(peak_middle_edges(s) == std::vector<Edge>{{id(s, "m"), id(s, "t")}});

  auto mr = mirror_natural_diagram(s);
  CHECK(mr.coords[id(s, "a")] == pt(2, 2));
  CHECK(mr.coords[id(s, "b")] == pt(-2, 2));
  CHECK(mr.coords == reflect(d).coords);
  CHECK(reflect(reflect(d)).coords == d.coords);
}

TEST_CASE("unit checks") {
  auto s = s7();
  CHECK_THROWS_AS(natural_diagram(s, {Rational(1), Rational(0)}, {Rational(1), Rational(1)}), std::invalid_argument);
  CHECK_THROWS_AS(natural_diagram(s, {Rational(1)}, {Rational(1), Rational(1)}), std::invalid_argument);
  CHECK_THROWS_AS(natural_diagram(s, {Rational(-1), Rational(1)}, {Rational(1), Rational(1)}), std::invalid_argument);
}

TEST_CASE("edge classification") {
  CHECK(classify_edge(pt(0, 0), pt(-1, 1)) == EdgeKind::normal_left);
  CHECK(classify_edge(pt(0, 0), pt(2, 2)) == EdgeKind::normal_right);
  CHECK(classify_edge(pt(0, 0), pt(0, 5)) == EdgeKind::steep);
  CHECK(classify_edge(pt(0, 0), pt(1, 3)) == EdgeKind::steep);
  CHECK(classify_edge(pt(0, 0), pt(3, 1)) == EdgeKind::other);
  CHECK(classify_edge(pt(0, 0), pt(1, -1)) == EdgeKind::other);
  CHECK_THROWS_AS(classify_edge(pt(1, 1), pt(1, 1)), std::invalid_argument);

  auto g = natural_diagram(grid(3, 3));
  for (const auto& ec : classify_edges(g)) CHECK(ec.kind != EdgeKind::steep);
  for (const auto& ec : classify_edges(g)) CHECK(ec.kind != EdgeKind::other);
}

TEST_CASE("C1 and C2 checks") {
  auto s = s7();
  auto d = natural_diagram(s);
  CHECK(check_c1(s, d).ok());
  CHECK(check_c2(s, d).ok());
  CHECK(check_c1(grid(3, 3), natural_diagram(grid(3, 3))).ok());
  CHECK(check_c2(grid(3, 3), natural_diagram(grid(3, 3))).ok());

  auto bent = d;
  bent.coords[id(s, "m")] = pt(1, 3);  // m-t now at 135°
  auto r = check_c1(s, bent);
  CHECK_FALSE(r.ok());
  CHECK(failed_on(r, id(s, "m"), id(s, "t")));

  auto uneven = natural_diagram(s, {Rational(1), Rational(2)}, {Rational(1), Rational(1)});
  CHECK(check_c1(s, uneven).ok());
  CHECK_FALSE(check_c2(s, uneven).ok());

  auto missing = d;
  missing.edges.pop_back();
  CHECK_FALSE(check_c1(s, missing).ok());
}

TEST_CASE("coordinates_of") {
  auto s = s7();
  CHECK(coordinates_of(natural_diagram(s)) == psi_map(s));
  CHECK(coordinates_of(mirror_natural_diagram(s)) == psi_mirror_map(s));
  auto stretched = natural_diagram(s, {Rational(1, 3), Rational(5)}, {Rational(7, 2), Rational(2)});
  CHECK(coordinates_of(stretched) == psi_map(s));

  auto drawn = replay_drawn(ForkScript{2, 2, {{0, 0, 0}}});
  const auto& l = drawn.lattice;
  ElementId m = *l.find("m"), t = l.top();
  CHECK(drawn.diagram.coords[m].x == drawn.diagram.coords[t].x);  // vertical
  CHECK(coordinates_of(drawn.diagram)[m] == GridCoord{1, 1});

  auto bad = natural_diagram(s);
  bad.coords[id(s, "x1")] = pt(-3, 1);
  CHECK_THROWS_AS(coordinates_of(bad), MalformedDiagram);
}

TEST_CASE("natural equals C1, and C2 uniqueness") {
  auto s = s7();
  auto d = natural_diagram(s);
  auto r = verify_c1_equals_natural(s, d);
  CHECK(r.ok());
  CHECK(std::find(r.notes.begin(), r.notes.end(), "mirror") == r.notes.end());
  auto rm = verify_c1_equals_natural(s, mirror_natural_diagram(s));
  CHECK(rm.ok());
  CHECK(std::find(rm.notes.begin(), rm.notes.end(), "mirror") != rm.notes.end());

  CHECK(verify_c2_uniqueness(s, d, d).ok());
  CHECK(verify_c2_uniqueness(s, d, mirror_natural_diagram(s)).ok());
  auto big = natural_diagram(s, {Rational(3), Rational(3)}, {Rational(3), Rational(3)});
  for (auto& p : big.coords) p.x += Rational(5);
  CHECK(verify_c2_uniqueness(s, d, big).ok());
  CHECK_FALSE(verify_c2_uniqueness(s, d, natural_diagram(grid(3, 3))).ok());
  CHECK_FALSE(verify_c2_uniqueness(s, d, natural_diagram(s, {Rational(1), Rational(2)}, {Rational(1), Rational(1)})).ok());
}

TEST_CASE("validate_drawing") {
  auto s = s7();
  CHECK(validate_drawing(s, natural_diagram(s)).ok());
  auto crossed = natural_diagram(s);
  std::swap(crossed.coords[id(s, "x1")], crossed.coords[id(s, "y1")]);
  CHECK_FALSE(validate_drawing(s, crossed).ok());
  auto on_edge = natural_diagram(s);
  on_edge.coords[id(s, "m")] = pt(0, 3);  // m-t still upward; m no longer on an edge
  CHECK(validate_drawing(s, on_edge).ok());
  on_edge.coords[id(s, "b")] = pt(-1, 1);  // b on top of x1
  CHECK_FALSE(validate_drawing(s, on_edge).ok());
}

TEST_CASE("property: diagram laws over the universe") {
  for (const auto& [code, m] : universe_332().members) {
    const auto& l = m.lattice;
    auto f = rect_frame(l);
    auto d = natural_diagram(l);
    CHECK(check_c1(l, d).ok());
    CHECK(check_c2(l, d).ok());
    CHECK(validate_drawing(l, d).ok());
    CHECK(verify_psi_embedding(l).ok());

    // Steep iff middle edge of a peak S7.
    auto middles = peak_middle_edges(l);
    for (const auto& ec : classify_edges(d)) {
      bool middle = std::find(middles.begin(), middles.end(), ec.edge) != middles.end();
      CHECK((ec.kind == EdgeKind::steep) == middle);
    }

    // Uniform scaling keeps every class; uneven units keep psi.
    std::vector<Rational> lu(f.lower_left.size() - 1, Rational(3)), ru(f.lower_right.size() - 1, Rational(3));
    auto scaled = natural_diagram(l, lu, ru);
    auto c1 = classify_edges(d), c3 = classify_edges(scaled);
    for (std::size_t k = 0; k < c1.size(); ++k) CHECK(c1[k].kind == c3[k].kind);
    for (std::size_t k = 0; k < lu.size(); ++k) lu[k] = Rational(static_cast<long>(k) + 1, 2);
    CHECK(coordinates_of(natural_diagram(l, lu, ru)) == psi_map(l));

    auto drawn = replay_drawn(m.script);
    CHECK(validate_drawing(drawn.lattice, drawn.diagram).ok());
    CHECK(check_c1(drawn.lattice, drawn.diagram).ok());
    CHECK(verify_c1_equals_natural(drawn.lattice, drawn.diagram).ok());
  }
}
