#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "slimrect/lattice.hpp"

namespace slimrect {

struct Failure {
  std::string check;
  std::string message;
  std::vector<ElementId> witness;
};

/// Outcome of a verification run: how many instances of each named check
/// were evaluated, and every failing instance with its witness.
struct VerificationReport {
  std::string title;
  std::map<std::string, std::size_t> checks;
  std::vector<Failure> failures;
  std::vector<std::string> notes;

  bool ok() const { return failures.empty(); }

  /// Counts one evaluation of `check`; records a failure when !passed.
  void record(const std::string& check, bool passed, const std::string& message = {},
              std::vector<ElementId> witness = {});

  /// Appends another report's counts, failures and notes, prefixing the
  /// failure messages with `context` when non-empty.
  void merge(const VerificationReport& other, const std::string& context = {});
};

}  // namespace slimrect
