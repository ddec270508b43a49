#pragma once

#include <cstdint>
#include <string>

#include "slimrect/lattice.hpp"

namespace slimrect {

/// Level-by-level serialization of a planar diagram: level sizes, then for
/// every element left to right the positions of its upper covers in the
/// next level. Equal codes mean equal planar diagrams.
struct CanonicalCode {
  std::string bytes;

  bool operator==(const CanonicalCode&) const = default;
  auto operator<=>(const CanonicalCode&) const = default;

  std::uint64_t hash() const;  // FNV-1a 64
  std::string hex() const;     // hash as 16 hex digits
};

/// Code of the diagram exactly as embedded.
CanonicalCode planar_code(const LeveledLattice& l);
/// Code of the left-right reflection.
CanonicalCode mirror_code(const LeveledLattice& l);
/// min(planar_code, mirror_code): identifies a diagram up to reflection.
CanonicalCode canonical_code(const LeveledLattice& l);

/// Left-right reflection of the embedding (same ids and labels).
LeveledLattice mirror(const LeveledLattice& l);

}  // namespace slimrect
