#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "slimrect/fork.hpp"
#include "slimrect/lattice.hpp"
#include "slimrect/rect.hpp"
#include "slimrect/report.hpp"

namespace slimrect {

using Rational = boost::rational<std::int64_t>;

struct Point {
  Rational x, y;

  bool operator==(const Point&) const = default;
};

/// A drawing of a lattice: exact coordinates per element id, the drawn
/// edges, and the step lengths along the lower-left and lower-right
/// boundary chains.
struct Diagram {
  std::vector<Point> coords;
  std::vector<Edge> edges;
  std::vector<Rational> left_units;
  std::vector<Rational> right_units;
};

/// Grid coordinates (u, v): heights of x∧c_l and x∧c_r.
using GridCoord = std::pair<std::size_t, std::size_t>;

GridCoord psi(const LeveledLattice& l, const RectFrame& frame, ElementId x);
/// ψ for every element; throws std::invalid_argument if l is not rectangular.
std::vector<GridCoord> psi_map(const LeveledLattice& l);
/// Mirror map x ↦ (x∧c_r, x∧c_l).
std::vector<GridCoord> psi_mirror_map(const LeveledLattice& l);

/// u steps in the 135° direction, v steps in the 45° direction, with the
/// given per-step lengths: x at (V − U, U + V) where U, V are the partial
/// sums of the units. Throws std::invalid_argument on non-positive or
/// wrongly counted units.
Diagram natural_diagram(const LeveledLattice& l, const std::vector<Rational>& left_units,
                        const std::vector<Rational>& right_units);
/// All steps of length one.
Diagram natural_diagram(const LeveledLattice& l);

/// Diagram of the mirror map; the left-right reflection of natural_diagram
/// with the same units.
Diagram mirror_natural_diagram(const LeveledLattice& l, const std::vector<Rational>& left_units,
                               const std::vector<Rational>& right_units);
Diagram mirror_natural_diagram(const LeveledLattice& l);

Diagram reflect(const Diagram& d);

enum class EdgeKind { normal_left, normal_right, steep, other };

const char* to_string(EdgeKind k);

struct EdgeClass {
  Edge edge;
  EdgeKind kind;
};

/// normal: |Δy| = |Δx| going up (135° when Δx < 0, 45° when Δx > 0);
/// steep: Δy > |Δx|; anything else is other. Throws on zero-length edges.
EdgeKind classify_edge(const Point& lower, const Point& upper);
std::vector<EdgeClass> classify_edges(const Diagram& d);

/// Middle edges (m, t) of peak S7 sublattices.
std::vector<Edge> peak_middle_edges(const LeveledLattice& l);

VerificationReport check_c1(const LeveledLattice& l, const Diagram& d);
VerificationReport check_c2(const LeveledLattice& l, const Diagram& d);

class MalformedDiagram : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Projects every point onto the two normal axes and ranks the distinct
/// projection values per axis. Throws MalformedDiagram when an edge runs
/// backwards along an axis.
std::vector<GridCoord> coordinates_of(const Diagram& d);

/// Passes when coordinates_of(d) is ψ (or the mirror map, noted in the
/// report) pointwise.
VerificationReport verify_c1_equals_natural(const LeveledLattice& l, const Diagram& d);

/// Passes when d1 and d2 agree up to translation and positive scaling,
/// possibly after a left-right reflection.
VerificationReport verify_c2_uniqueness(const LeveledLattice& l, const Diagram& d1, const Diagram& d2);

/// ψ is a bound-preserving meet-embedding into the product of the lower
/// boundary chains.
VerificationReport verify_psi_embedding(const LeveledLattice& l);

/// Geometric validity: edge set equals the cover relation, y increases
/// along every edge, no two edges cross and no element sits inside an edge.
VerificationReport validate_drawing(const LeveledLattice& l, const Diagram& d);

struct DrawnLattice {
  LeveledLattice lattice;
  Diagram diagram;
};

/// Inserts a fork into a drawn lattice, keeping every existing point. The
/// new trajectories lie on normal lines through m, and the edge from m to
/// i is steep (vertical when the surrounding geometry allows it).
DrawnLattice draw_fork(const DrawnLattice& before, const Cell4& cell);

/// Unit natural diagram of grid(p, q) followed by draw_fork per step.
/// Throws ReplayError on an unresolvable step.
DrawnLattice replay_drawn(const ForkScript& script);

}  // namespace slimrect
