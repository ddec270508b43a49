#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "slimrect/canonical.hpp"
#include "slimrect/fork.hpp"
#include "slimrect/lattice.hpp"
#include "slimrect/report.hpp"

namespace slimrect {

struct EnumerationLimits {
  std::size_t max_elements = 60;
  std::size_t max_codes = 100000;
};

/// base with max_elements replaced by SLIMRECT_MAX_ELEMENTS when set.
/// Throws std::invalid_argument on a malformed value.
EnumerationLimits limits_from_env(EnumerationLimits base = {});

class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct UniverseMember {
  LeveledLattice lattice;  // replay(script) reproduces this embedding exactly
  ForkScript script;
};

/// Slim rectangular lattices reachable from grids up to the given size by
/// at most max_rank fork insertions, one representative per diagram up to
/// reflection.
struct Universe {
  std::size_t max_p = 2;
  std::size_t max_q = 2;
  std::size_t max_rank = 0;
  std::map<CanonicalCode, UniverseMember> members;

  std::size_t size() const { return members.size(); }
};

/// Breadth-first over grid(p, q), 2 ≤ p ≤ max_p, 2 ≤ q ≤ max_q, inserting a
/// fork at every 4-cell of every member of the previous rank. Throws
/// ResourceCapExceeded when a lattice or the universe outgrows the limits.
Universe enumerate_sr(std::size_t max_p, std::size_t max_q, std::size_t max_rank,
                      const EnumerationLimits& limits = {});

/// Independent slimness test: the join-irreducible elements have no
/// three-element antichain, i.e. they are covered by two chains.
bool oracle_join_irreducibles_two_chains(const LeveledLattice& l);

/// Brute-force order isomorphism, ignoring the embedding.
bool oracle_isomorphic(const LeveledLattice& a, const LeveledLattice& b);

/// Every theorem check over every member; failures carry the member's code
/// hash as context.
VerificationReport verify_universe(const Universe& u);

/// The checks verify_universe runs on one lattice.
VerificationReport verify_member(const LeveledLattice& l, const ForkScript* script = nullptr);

}  // namespace slimrect
