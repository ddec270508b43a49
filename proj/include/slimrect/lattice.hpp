#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace slimrect {

using ElementId = std::uint32_t;
using Edge = std::pair<ElementId, ElementId>;  // (lower, upper)

/// Unvalidated leveled structure as it comes from a file or a generator.
/// Element ids must be 0..N-1, each appearing in exactly one level.
struct RawLattice {
  std::vector<std::vector<ElementId>> levels;  // bottom level first, left to right
  std::vector<Edge> covers;
  std::vector<std::string> labels;  // empty, or one per element
};

enum class DefectKind { not_a_lattice, not_graded, crossing_edges, not_bounded };

const char* to_string(DefectKind kind);

struct LatticeDefect {
  DefectKind kind;
  std::vector<ElementId> witness;
  std::string message;
};

class InvalidLattice : public std::runtime_error {
 public:
  explicit InvalidLattice(std::vector<LatticeDefect> defects);
  const std::vector<LatticeDefect>& defects() const { return defects_; }

 private:
  std::vector<LatticeDefect> defects_;
};

/// Thrown by operations that are only defined for incomparable pairs.
class ComparablePair : public std::invalid_argument {
 public:
  ComparablePair(ElementId a, ElementId b);
};

class LeveledLattice;

std::variant<LeveledLattice, std::vector<LatticeDefect>> validate(const RawLattice& raw);

/// Finite graded lattice together with a planar embedding: levels are
/// horizontal rows, each stored left to right, and no two cover edges cross.
/// Immutable once constructed; meets and joins are tabulated.
class LeveledLattice {
 public:
  std::size_t size() const { return level_of_.size(); }
  ElementId bottom() const { return levels_.front().front(); }
  ElementId top() const { return levels_.back().front(); }
  /// Height of the top element.
  std::size_t length() const { return levels_.size() - 1; }

  const std::vector<std::vector<ElementId>>& levels() const { return levels_; }
  std::span<const ElementId> up_covers(ElementId x) const { return up_[x]; }
  std::span<const ElementId> down_covers(ElementId x) const { return down_[x]; }

  std::size_t height(ElementId x) const { return level_of_[x]; }
  std::size_t position(ElementId x) const { return pos_[x]; }
  ElementId at(std::size_t height, std::size_t index) const { return levels_[height][index]; }

  const std::string& label(ElementId x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<ElementId> find(const std::string& label) const;

  bool leq(ElementId x, ElementId y) const { return upset_[x].test(y); }
  bool less(ElementId x, ElementId y) const { return x != y && leq(x, y); }
  bool comparable(ElementId x, ElementId y) const { return leq(x, y) || leq(y, x); }
  bool covers(ElementId lower, ElementId upper) const;

  ElementId meet(ElementId x, ElementId y) const { return meet_[x * size() + y]; }
  ElementId join(ElementId x, ElementId y) const { return join_[x * size() + y]; }

  /// All cover edges, ordered by lower element (bottom-up, left to right),
  /// then by upper element left to right.
  std::vector<Edge> cover_edges() const;
  std::size_t cover_count() const;

  RawLattice raw() const;

 private:
  LeveledLattice() = default;
  friend std::variant<LeveledLattice, std::vector<LatticeDefect>> validate(const RawLattice&);

  std::vector<std::vector<ElementId>> levels_;
  std::vector<std::size_t> level_of_;
  std::vector<std::size_t> pos_;
  std::vector<std::vector<ElementId>> up_;
  std::vector<std::vector<ElementId>> down_;
  std::vector<std::string> labels_;
  std::vector<boost::dynamic_bitset<>> upset_;
  std::vector<ElementId> meet_;
  std::vector<ElementId> join_;
};

/// Validates or throws InvalidLattice carrying every defect.
LeveledLattice make_lattice(const RawLattice& raw);

/// Builds a leveled lattice from a combinatorial planar embedding: for each
/// element its upper and lower covers, both ordered left to right. Heights
/// and the left-to-right order inside each level are derived from the
/// embedding. Throws InvalidLattice if the result is not a planar lattice.
LeveledLattice embed(const std::vector<std::vector<ElementId>>& up,
                     const std::vector<std::vector<ElementId>>& down,
                     std::vector<std::string> labels);

// ---------------------------------------------------------------------------
// Order-theoretic predicates. Every negative answer comes with a witness.

/// A pair (a, b) with a∧b ≺ a but b not covered by a∨b.
std::optional<Edge> semimodularity_violation(const LeveledLattice& l);
bool is_semimodular(const LeveledLattice& l);

enum class Pattern { m3, n5, s7_covering, s7_peak };

const char* to_string(Pattern p);

/// A sublattice occurrence with elements listed in role order:
///   m3: bottom, a, b, c, top            (a, b, c left to right)
///   n5: bottom, low, high, side, top    (low < high; side incomparable to both)
///   s7: o, m∧a, m∧b, a, b, m, t
struct Occurrence {
  Pattern pattern;
  std::vector<ElementId> elements;
};

enum class S7Kind { covering, peak };

/// The seven-element lattice S7 (a fork over a square) embedded in L.
/// a is left of b; xa = m∧a, yb = m∧b, o = a∧b, t = a∨b.
struct S7Occurrence {
  ElementId o, xa, yb, a, b, m, t;
  S7Kind kind;

  bool operator==(const S7Occurrence&) const = default;
};

std::optional<Occurrence> find_m3(const LeveledLattice& l);
std::optional<Occurrence> find_n5(const LeveledLattice& l);
bool is_slim(const LeveledLattice& l);

/// M3- or N5-witness, or nothing when distributive.
std::optional<Occurrence> distributivity_violation(const LeveledLattice& l);
bool is_distributive(const LeveledLattice& l);
/// Same for the principal ideal ↓c, which is a sublattice of l.
std::optional<Occurrence> ideal_distributivity_violation(const LeveledLattice& l, ElementId c);
bool is_distributive_ideal(const LeveledLattice& l, ElementId c);

std::vector<S7Occurrence> find_s7(const LeveledLattice& l, S7Kind kind);
std::vector<Occurrence> find_sublattice(const LeveledLattice& l, Pattern pattern);

/// For incomparable a, b: a lies strictly left of the maximal chains through b.
/// Throws ComparablePair otherwise.
bool left_of(const LeveledLattice& l, ElementId a, ElementId b);

/// Same relation decided against an explicit maximal chain through b
/// (bottom to top, one element per level).
bool left_of_chain(const LeveledLattice& l, ElementId a, std::span<const ElementId> chain);

/// Interval [o, i] with the inherited embedding; heights shift so that o is
/// the new bottom. parent[k] is the id in l of element k of the interval.
struct IntervalLattice {
  LeveledLattice lattice;
  std::vector<ElementId> parent;
};

IntervalLattice restrict_interval(const LeveledLattice& l, ElementId o, ElementId i);

/// Elements of [o, i] in l, bottom-up and left to right.
std::vector<ElementId> interval_elements(const LeveledLattice& l, ElementId o, ElementId i);

}  // namespace slimrect
