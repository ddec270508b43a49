#include "slimrect/report.hpp"

namespace slimrect {

void VerificationReport::record(const std::string& check, bool passed, const std::string& message,
                                std::vector<ElementId> witness) {
  ++checks[check];
  if (!passed) failures.push_back({check, message, std::move(witness)});
}

void VerificationReport::merge(const VerificationReport& other, const std::string& context) {
  for (const auto& [name, count] : other.checks) checks[name] += count;
  for (const auto& f : other.failures)
    failures.push_back({f.check, context.empty() ? f.message : context + ": " + f.message, f.witness});
  for (const auto& n : other.notes) notes.push_back(context.empty() ? n : context + ": " + n);
}

}  // namespace slimrect
