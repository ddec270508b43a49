#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "slimrect/lattice.hpp"

namespace slimrect {

/// A 4-cell {o, c, d, i}: c and d are neighbouring upper covers of o (c on
/// the left) and neighbouring lower covers of i = c ∨ d.
struct Cell4 {
  ElementId o, c, d, i;

  bool operator==(const Cell4&) const = default;
};

/// Where a fork went: the new middle element and the elements subdividing
/// edges on the way down to the left and right boundaries. left_edges[j] is
/// the edge (in the old lattice) that left[j] subdivides.
struct ForkTrace {
  ElementId m;
  std::vector<ElementId> left;
  std::vector<ElementId> right;
  std::vector<Edge> left_edges;
  std::vector<Edge> right_edges;
};

/// Cell reference that survives insertions: level and position of o, and
/// the index of c among o's upper covers.
struct CellRef {
  std::size_t o_height;
  std::size_t o_index;
  std::size_t c_index;

  bool operator==(const CellRef&) const = default;
};

/// Grid dimensions plus fork insertions replayed in order.
struct ForkScript {
  std::size_t p = 2;
  std::size_t q = 2;
  std::vector<CellRef> steps;

  bool operator==(const ForkScript&) const = default;
};

class NotACell : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotMinimal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fork deletion did not reproduce the input under re-insertion.
class ForkDeletionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotSlimRectangular : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ReplayError : public std::invalid_argument {
 public:
  ReplayError(std::size_t step, const std::string& what);
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// All 4-cells ordered bottom-to-top by o, then left to right.
std::vector<Cell4> cells4(const LeveledLattice& l);
bool is_cell(const LeveledLattice& l, const Cell4& cell);

CellRef cell_ref(const LeveledLattice& l, const Cell4& cell);
std::optional<Cell4> resolve(const LeveledLattice& l, const CellRef& ref);

/// Edges subdivided by a fork at `cell`, computed on the lattice before
/// insertion: the left side walks down-left, the right side down-right.
struct ForkPlan {
  std::vector<Edge> left_edges;
  std::vector<Edge> right_edges;
};
ForkPlan plan_fork(const LeveledLattice& l, const Cell4& cell);

struct ForkResult {
  LeveledLattice lattice;
  ForkTrace trace;
};

/// L[C]. Existing ids and labels are kept; the new elements get ids
/// size(), size()+1, ... in the order m, left trajectory, right trajectory.
/// Throws NotACell.
ForkResult insert_fork(const LeveledLattice& l, const Cell4& cell);

/// Covering S7 occurrences; with minimal_only, those whose top has no
/// covering S7 strictly below it. Sorted by top height, top position, then
/// positions of a, m, b.
std::vector<S7Occurrence> find_covering_s7(const LeveledLattice& l, bool minimal_only);

struct DeletionResult {
  LeveledLattice lattice;
  Cell4 cell;  // {o, a, b, t} in the smaller lattice
  std::vector<ElementId> removed;
  std::vector<ElementId> kept;  // kept[k] = id in the input of element k of the result
};

enum class Minimality { required, unchecked };

/// Removes the fork of a covering S7 and returns the smaller lattice with
/// the square {o, a, b, t}. Kept elements retain their relative id order.
/// With Minimality::required (the default) a non-minimal S7 is rejected
/// with NotMinimal before anything else happens. Minimality::unchecked is
/// for undoing a fork that was just inserted. Either way the result is
/// re-forked and compared with the input; a mismatch throws
/// ForkDeletionError.
DeletionResult delete_fork(const LeveledLattice& l, const S7Occurrence& s7,
                           Minimality minimality = Minimality::required);

/// First minimal covering S7 by (top height, top position, a, m, b).
std::optional<S7Occurrence> canonical_minimal_s7(const LeveledLattice& l);

struct DecompositionStep {
  Cell4 cell;  // in the lattice before the fork is re-inserted
  bool c_ideal_distributive;
  bool d_ideal_distributive;
};

struct Decomposition {
  ForkScript script;
  std::vector<DecompositionStep> steps;  // aligned with script.steps
};

/// Throws NotSlimRectangular.
Decomposition decompose_detailed(const LeveledLattice& l);
ForkScript decompose(const LeveledLattice& l);
std::size_t rank(const LeveledLattice& l);

/// Every step count reachable by deleting minimal forks in any order.
std::set<std::size_t> ranks_over_all_choices(const LeveledLattice& l);

/// Throws ReplayError naming the failing step.
LeveledLattice replay(const ForkScript& script);

}  // namespace slimrect
