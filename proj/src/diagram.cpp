#include "slimrect/diagram.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace slimrect {

namespace {

const Rational kZero(0);

std::string edge_name(const LeveledLattice& l, Edge e) { return l.label(e.first) + "-" + l.label(e.second); }

std::vector<Rational> partial_sums(const std::vector<Rational>& units) {
  std::vector<Rational> sums{Rational(0)};
  for (const auto& u : units) sums.push_back(sums.back() + u);
  return sums;
}

void check_units(const std::vector<Rational>& units, std::size_t expected, const char* side) {
  if (units.size() != expected)
    throw std::invalid_argument(std::string(side) + " units: expected " + std::to_string(expected) + ", got " +
                                std::to_string(units.size()));
  for (const auto& u : units)
    if (u <= kZero) throw std::invalid_argument(std::string(side) + " units must be positive");
}

// Coordinates along the two normal directions: U grows towards the upper
// left, V towards the upper right.
Rational axis_u(const Point& p) { return (p.y - p.x) / Rational(2); }
Rational axis_v(const Point& p) { return (p.y + p.x) / Rational(2); }
Point from_axes(const Rational& u, const Rational& v) { return Point{v - u, u + v}; }

int sign(const Rational& r) { return r > kZero ? 1 : (r < kZero ? -1 : 0); }

Rational cross(const Point& a, const Point& b, const Point& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
  if (cross(a, b, p) != kZero) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

std::vector<Rational> unit_steps(std::size_t n) { return std::vector<Rational>(n, Rational(1)); }

std::set<Edge> edge_set(const std::vector<Edge>& edges) { return {edges.begin(), edges.end()}; }

}  // namespace

const char* to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::normal_left: return "normal-left";
    case EdgeKind::normal_right: return "normal-right";
    case EdgeKind::steep: return "steep";
    case EdgeKind::other: return "other";
  }
  return "?";
}

GridCoord psi(const LeveledLattice& l, const RectFrame& frame, ElementId x) {
  return {l.height(l.meet(x, frame.left_corner)), l.height(l.meet(x, frame.right_corner))};
}

std::vector<GridCoord> psi_map(const LeveledLattice& l) {
  RectFrame frame = rect_frame(l);
  std::vector<GridCoord> out;
  for (ElementId x = 0; x < l.size(); ++x) out.push_back(psi(l, frame, x));
  return out;
}

std::vector<GridCoord> psi_mirror_map(const LeveledLattice& l) {
  auto out = psi_map(l);
  for (auto& [u, v] : out) std::swap(u, v);
  return out;
}

Diagram natural_diagram(const LeveledLattice& l, const std::vector<Rational>& left_units,
                        const std::vector<Rational>& right_units) {
  RectFrame frame = rect_frame(l);
  check_units(left_units, frame.lower_left.size() - 1, "left");
  check_units(right_units, frame.lower_right.size() - 1, "right");
  auto su = partial_sums(left_units), sv = partial_sums(right_units);
  Diagram d;
  d.left_units = left_units;
  d.right_units = right_units;
  d.edges = l.cover_edges();
  for (ElementId x = 0; x < l.size(); ++x) {
    auto [u, v] = psi(l, frame, x);
    d.coords.push_back(from_axes(su[u], sv[v]));
  }
  return d;
}

Diagram natural_diagram(const LeveledLattice& l) {
  RectFrame frame = rect_frame(l);
  return natural_diagram(l, unit_steps(frame.lower_left.size() - 1), unit_steps(frame.lower_right.size() - 1));
}

Diagram mirror_natural_diagram(const LeveledLattice& l, const std::vector<Rational>& left_units,
                               const std::vector<Rational>& right_units) {
  RectFrame frame = rect_frame(l);
  check_units(left_units, frame.lower_left.size() - 1, "left");
  check_units(right_units, frame.lower_right.size() - 1, "right");
  auto su = partial_sums(left_units), sv = partial_sums(right_units);
  Diagram d;
  d.left_units = left_units;
  d.right_units = right_units;
  d.edges = l.cover_edges();
  // (first, second) = (x∧c_r, x∧c_l): the first coordinate now runs in the
  // 135° direction, measured with the right-chain units.
  for (ElementId x = 0; x < l.size(); ++x) {
    auto [first, second] = psi(l, frame, x);
    std::swap(first, second);
    d.coords.push_back(from_axes(sv[first], su[second]));
  }
  return d;
}

Diagram mirror_natural_diagram(const LeveledLattice& l) {
  RectFrame frame = rect_frame(l);
  return mirror_natural_diagram(l, unit_steps(frame.lower_left.size() - 1),
                                unit_steps(frame.lower_right.size() - 1));
}

Diagram reflect(const Diagram& d) {
  Diagram out = d;
  for (auto& p : out.coords) p.x = -p.x;
  return out;
}

EdgeKind classify_edge(const Point& lower, const Point& upper) {
  Rational dx = upper.x - lower.x, dy = upper.y - lower.y;
  if (dx == kZero && dy == kZero) throw std::invalid_argument("zero-length edge");
  Rational adx = dx < kZero ? -dx : dx;
  if (dy > kZero && dy == adx) return dx < kZero ? EdgeKind::normal_left : EdgeKind::normal_right;
  if (dy > adx) return EdgeKind::steep;
  return EdgeKind::other;
}

std::vector<EdgeClass> classify_edges(const Diagram& d) {
  std::vector<EdgeClass> out;
  for (auto e : d.edges) out.push_back({e, classify_edge(d.coords[e.first], d.coords[e.second])});
  return out;
}

std::vector<Edge> peak_middle_edges(const LeveledLattice& l) {
  std::set<Edge> middles;
  for (const auto& s : find_s7(l, S7Kind::peak)) middles.insert({s.m, s.t});
  return {middles.begin(), middles.end()};
}

VerificationReport check_c1(const LeveledLattice& l, const Diagram& d) {
  VerificationReport report;
  report.title = "C1 diagram";
  bool same_edges = d.coords.size() == l.size() && edge_set(d.edges) == edge_set(l.cover_edges());
  report.record("edges are the covers", same_edges, "diagram edges differ from the cover relation");
  if (!same_edges) return report;
  auto middles = peak_middle_edges(l);
  std::set<Edge> middle_set(middles.begin(), middles.end());
  for (const auto& ec : classify_edges(d)) {
    bool middle = middle_set.count(ec.edge) > 0;
    if (middle) {
      report.record("peak middle edge is steep", ec.kind == EdgeKind::steep,
                    edge_name(l, ec.edge) + " is the middle edge of a peak S7 but is " + to_string(ec.kind),
                    {ec.edge.first, ec.edge.second});
    } else {
      bool normal = ec.kind == EdgeKind::normal_left || ec.kind == EdgeKind::normal_right;
      report.record("other edges are normal", normal, edge_name(l, ec.edge) + " is " + to_string(ec.kind),
                    {ec.edge.first, ec.edge.second});
    }
  }
  return report;
}

VerificationReport check_c2(const LeveledLattice& l, const Diagram& d) {
  VerificationReport report = check_c1(l, d);
  report.title = "C2 diagram";
  RectFrame frame = rect_frame(l);
  std::vector<Edge> lower;
  for (std::size_t k = 0; k + 1 < frame.lower_left.size(); ++k)
    lower.push_back({frame.lower_left[k], frame.lower_left[k + 1]});
  for (std::size_t k = 0; k + 1 < frame.lower_right.size(); ++k)
    lower.push_back({frame.lower_right[k], frame.lower_right[k + 1]});
  auto sq = [&](Edge e) {
    const auto& a = d.coords[e.first];
    const auto& b = d.coords[e.second];
    return (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
  };
  for (auto e : lower)
    report.record("lower boundary edges have equal length", sq(e) == sq(lower.front()),
                  edge_name(l, e) + " differs in length from " + edge_name(l, lower.front()), {e.first, e.second});
  return report;
}

std::vector<GridCoord> coordinates_of(const Diagram& d) {
  for (auto [lo, hi] : d.edges) {
    if (axis_u(d.coords[hi]) < axis_u(d.coords[lo]) || axis_v(d.coords[hi]) < axis_v(d.coords[lo]))
      throw MalformedDiagram("edge " + std::to_string(lo) + "-" + std::to_string(hi) +
                             " runs backwards along a normal axis");
  }
  std::set<Rational> us, vs;
  for (const auto& p : d.coords) {
    us.insert(axis_u(p));
    vs.insert(axis_v(p));
  }
  auto rank_of = [](const std::set<Rational>& s, const Rational& r) {
    return static_cast<std::size_t>(std::distance(s.begin(), s.find(r)));
  };
  std::vector<GridCoord> out;
  for (const auto& p : d.coords) out.push_back({rank_of(us, axis_u(p)), rank_of(vs, axis_v(p))});
  return out;
}

VerificationReport verify_c1_equals_natural(const LeveledLattice& l, const Diagram& d) {
  VerificationReport report = check_c1(l, d);
  report.title = "C1 diagram is natural";
  std::vector<GridCoord> coords;
  try {
    coords = coordinates_of(d);
  } catch (const MalformedDiagram& e) {
    report.record("projections are ordered", false, e.what());
    return report;
  }
  report.record("projections are ordered", true);
  auto direct = psi_map(l);
  auto mirrored = psi_mirror_map(l);
  if (coords == direct) {
    report.record("coordinates equal psi", true);
  } else if (coords == mirrored) {
    report.record("coordinates equal psi", true);
    report.notes.push_back("mirror");
  } else {
    for (ElementId x = 0; x < l.size(); ++x)
      if (coords[x] != direct[x] && coords[x] != mirrored[x]) {
        std::ostringstream msg;
        msg << l.label(x) << " projects to (" << coords[x].first << "," << coords[x].second << ") but psi gives ("
            << direct[x].first << "," << direct[x].second << ")";
        report.record("coordinates equal psi", false, msg.str(), {x});
        return report;
      }
    report.record("coordinates equal psi", false, "coordinates mix psi and its mirror");
  }
  return report;
}

VerificationReport verify_c2_uniqueness(const LeveledLattice& l, const Diagram& d1, const Diagram& d2) {
  VerificationReport report;
  report.title = "C2 diagrams agree up to symmetry";
  auto covers = edge_set(l.cover_edges());
  bool same = d1.coords.size() == l.size() && d2.coords.size() == l.size() && edge_set(d1.edges) == covers &&
              edge_set(d2.edges) == covers;
  report.record("diagrams draw the same lattice", same, "diagrams do not both draw this lattice");
  if (!same) return report;
  report.merge(check_c2(l, d1), "first");
  report.merge(check_c2(l, d2), "second");
  if (!report.ok()) return report;

  auto similar = [&](bool reflected) {
    const Point& b1 = d1.coords[l.bottom()];
    const Point& b2 = d2.coords[l.bottom()];
    Rational h1 = d1.coords[l.top()].y - b1.y, h2 = d2.coords[l.top()].y - b2.y;
    if (h1 <= kZero || h2 <= kZero) return false;
    Rational s = h2 / h1;
    for (ElementId x = 0; x < l.size(); ++x) {
      Rational x1 = d1.coords[x].x - b1.x, y1 = d1.coords[x].y - b1.y;
      if (reflected) x1 = -x1;
      if (d2.coords[x].x - b2.x != s * x1 || d2.coords[x].y - b2.y != s * y1) return false;
    }
    return true;
  };
  if (similar(false)) {
    report.record("similar up to reflection", true);
  } else if (similar(true)) {
    report.record("similar up to reflection", true);
    report.notes.push_back("mirror");
  } else {
    report.record("similar up to reflection", false, "no translation, scaling or reflection maps one onto the other");
  }
  return report;
}

VerificationReport verify_psi_embedding(const LeveledLattice& l) {
  VerificationReport report;
  report.title = "psi is a bounded meet-embedding";
  RectFrame frame = rect_frame(l);
  auto map = psi_map(l);
  const auto n = static_cast<ElementId>(l.size());
  report.record("psi(0) = (0,0)", map[l.bottom()] == GridCoord{0, 0}, "bottom is not sent to the origin",
                {l.bottom()});
  GridCoord top{frame.lower_left.size() - 1, frame.lower_right.size() - 1};
  report.record("psi(1) = top of grid", map[l.top()] == top, "top is not sent to the grid top", {l.top()});
  std::map<GridCoord, ElementId> seen;
  for (ElementId x = 0; x < n; ++x) {
    auto [it, fresh] = seen.emplace(map[x], x);
    report.record("psi injective", fresh, l.label(x) + " and " + l.label(it->second) + " share an image",
                  {x, it->second});
  }
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = x; y < n; ++y) {
      GridCoord expect{std::min(map[x].first, map[y].first), std::min(map[x].second, map[y].second)};
      report.record("psi preserves meets", map[l.meet(x, y)] == expect,
                    "psi(" + l.label(x) + "^" + l.label(y) + ") is not the componentwise minimum", {x, y});
    }
  return report;
}

VerificationReport validate_drawing(const LeveledLattice& l, const Diagram& d) {
  VerificationReport report;
  report.title = "diagram is a planar drawing";
  bool same = d.coords.size() == l.size() && edge_set(d.edges) == edge_set(l.cover_edges());
  report.record("edges are the covers", same, "diagram edges differ from the cover relation");
  if (!same) return report;
  for (auto [lo, hi] : d.edges)
    report.record("edges go upwards", d.coords[hi].y > d.coords[lo].y,
                  edge_name(l, {lo, hi}) + " does not go upwards", {lo, hi});
  for (std::size_t s = 0; s < d.edges.size(); ++s) {
    auto [a, b] = d.edges[s];
    const Point &pa = d.coords[a], &pb = d.coords[b];
    for (ElementId w = 0; w < l.size(); ++w) {
      if (w == a || w == b) continue;
      report.record("no element inside an edge", !on_segment(d.coords[w], pa, pb),
                    l.label(w) + " lies on edge " + edge_name(l, d.edges[s]), {w, a, b});
    }
    for (std::size_t t = s + 1; t < d.edges.size(); ++t) {
      auto [c, e] = d.edges[t];
      if (a == c || a == e || b == c || b == e) continue;
      const Point &pc = d.coords[c], &pe = d.coords[e];
      bool crossing = sign(cross(pa, pb, pc)) * sign(cross(pa, pb, pe)) < 0 &&
                      sign(cross(pc, pe, pa)) * sign(cross(pc, pe, pb)) < 0;
      report.record("edges do not cross", !crossing,
                    edge_name(l, d.edges[s]) + " crosses " + edge_name(l, d.edges[t]), {a, b, c, e});
    }
  }
  return report;
}

namespace {

std::vector<Rational> measure_units(const std::vector<ElementId>& chain, const Diagram& d, bool left) {
  std::vector<Rational> units;
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const Point &a = d.coords[chain[k]], &b = d.coords[chain[k + 1]];
    units.push_back(left ? axis_u(b) - axis_u(a) : axis_v(b) - axis_v(a));
  }
  return units;
}

// Open interval shared by every subdivided edge along one trajectory. The
// edges must be normal: constant `fixed` coordinate, growing `moving` one.
std::pair<Rational, Rational> common_range(const std::vector<Edge>& edges, const Diagram& d,
                                           Rational (*moving)(const Point&), Rational (*fixed)(const Point&)) {
  Rational lo = moving(d.coords[edges.front().first]), hi = moving(d.coords[edges.front().second]);
  for (auto [u, v] : edges) {
    if (fixed(d.coords[u]) != fixed(d.coords[v]))
      throw std::logic_error("draw_fork: trajectory edge is not normal");
    lo = std::max(lo, moving(d.coords[u]));
    hi = std::min(hi, moving(d.coords[v]));
  }
  if (!(lo < hi)) throw std::logic_error("draw_fork: trajectory edges share no common span");
  return {lo, hi};
}

}  // namespace

DrawnLattice draw_fork(const DrawnLattice& before, const Cell4& cell) {
  ForkResult fork = insert_fork(before.lattice, cell);
  const Diagram& old = before.diagram;
  auto [ulo, uhi] = common_range(fork.trace.left_edges, old, axis_u, axis_v);
  auto [vlo, vhi] = common_range(fork.trace.right_edges, old, axis_v, axis_u);

  // Vertical m-i edge needs u - v = U(i) - V(i); fall back to the middle of
  // both ranges when that line misses the box.
  const Point& top = old.coords[cell.i];
  Rational shift = axis_u(top) - axis_v(top);
  Rational lo = std::max(ulo, vlo + shift), hi = std::min(uhi, vhi + shift);
  Rational mu, mv;
  if (lo < hi) {
    mu = (lo + hi) / Rational(2);
    mv = mu - shift;
  } else {
    mu = (ulo + uhi) / Rational(2);
    mv = (vlo + vhi) / Rational(2);
  }

  Diagram d;
  d.coords = old.coords;
  d.coords.resize(fork.lattice.size());
  d.coords[fork.trace.m] = from_axes(mu, mv);
  for (std::size_t j = 0; j < fork.trace.left.size(); ++j)
    d.coords[fork.trace.left[j]] = from_axes(mu, axis_v(old.coords[fork.trace.left_edges[j].first]));
  for (std::size_t j = 0; j < fork.trace.right.size(); ++j)
    d.coords[fork.trace.right[j]] = from_axes(axis_u(old.coords[fork.trace.right_edges[j].first]), mv);
  d.edges = fork.lattice.cover_edges();
  RectFrame frame = rect_frame(fork.lattice);
  d.left_units = measure_units(frame.lower_left, d, true);
  d.right_units = measure_units(frame.lower_right, d, false);
  return DrawnLattice{std::move(fork.lattice), std::move(d)};
}

DrawnLattice replay_drawn(const ForkScript& script) {
  LeveledLattice g = grid(script.p, script.q);
  DrawnLattice cur{g, natural_diagram(g)};
  for (std::size_t j = 0; j < script.steps.size(); ++j) {
    auto cell = resolve(cur.lattice, script.steps[j]);
    if (!cell) throw ReplayError(j, "cell reference does not resolve to a 4-cell");
    cur = draw_fork(cur, *cell);
  }
  return cur;
}

}  // namespace slimrect
