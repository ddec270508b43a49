#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "slimrect/lattice.hpp"
#include "slimrect/report.hpp"

namespace slimrect {

/// Corners and boundary chains of a rectangular lattice. The lower chains
/// run from the bottom to the corner, the upper chains from the corner to
/// the top.
struct RectFrame {
  ElementId left_corner;
  ElementId right_corner;
  std::vector<ElementId> lower_left;
  std::vector<ElementId> lower_right;
  std::vector<ElementId> upper_left;
  std::vector<ElementId> upper_right;
};

/// A rectangular interval [o, i] witnessed by complementary a left of b.
struct RectInterval {
  ElementId o, i, a, b;

  bool operator==(const RectInterval&) const = default;
  auto operator<=>(const RectInterval&) const = default;
};

struct CornerFailure {
  std::vector<ElementId> left_doubly_irreducible;
  std::vector<ElementId> right_doubly_irreducible;
  std::string reason;
};

/// Direct product of a p-element and a q-element chain. Element (i, j) has
/// id i*q + j and label "g<i>_<j>"; the p-chain (j = 0) is the lower-left
/// boundary, so (p-1, 0) is the left corner.
LeveledLattice grid(std::size_t p, std::size_t q);

/// Leftmost and rightmost maximal chains, bottom to top.
std::pair<std::vector<ElementId>, std::vector<ElementId>> boundary_chains(const LeveledLattice& l);

bool is_doubly_irreducible(const LeveledLattice& l, ElementId x);

std::variant<RectFrame, CornerFailure> corners(const LeveledLattice& l);
/// Throws std::invalid_argument when l is not rectangular.
RectFrame rect_frame(const LeveledLattice& l);

bool is_sps(const LeveledLattice& l);
bool is_sr(const LeveledLattice& l);

std::vector<RectInterval> rectangular_intervals(const LeveledLattice& l);

VerificationReport verify_main_theorem(const LeveledLattice& l);
VerificationReport verify_corollaries(const LeveledLattice& l);

}  // namespace slimrect
