#include "slimrect/rect.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace slimrect {

LeveledLattice grid(std::size_t p, std::size_t q) {
  if (p < 2 || q < 2) throw std::invalid_argument("grid needs chains of at least 2 elements");
  RawLattice raw;
  raw.levels.resize(p + q - 1);
  auto id = [q](std::size_t i, std::size_t j) { return static_cast<ElementId>(i * q + j); };
  raw.labels.resize(p * q);
  // Larger i sits further left, so a level is ordered by increasing j.
  for (std::size_t h = 0; h < p + q - 1; ++h)
    for (std::size_t j = 0; j < q; ++j)
      if (h >= j && h - j < p) raw.levels[h].push_back(id(h - j, j));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      raw.labels[id(i, j)] = "g" + std::to_string(i) + "_" + std::to_string(j);
      if (i + 1 < p) raw.covers.emplace_back(id(i, j), id(i + 1, j));
      if (j + 1 < q) raw.covers.emplace_back(id(i, j), id(i, j + 1));
    }
  return make_lattice(raw);
}

std::pair<std::vector<ElementId>, std::vector<ElementId>> boundary_chains(const LeveledLattice& l) {
  std::vector<ElementId> left{l.bottom()}, right{l.bottom()};
  while (!l.up_covers(left.back()).empty()) left.push_back(l.up_covers(left.back()).front());
  while (!l.up_covers(right.back()).empty()) right.push_back(l.up_covers(right.back()).back());
  return {left, right};
}

bool is_doubly_irreducible(const LeveledLattice& l, ElementId x) {
  return l.up_covers(x).size() == 1 && l.down_covers(x).size() == 1;
}

std::variant<RectFrame, CornerFailure> corners(const LeveledLattice& l) {
  auto [left, right] = boundary_chains(l);
  CornerFailure failure;
  for (std::size_t k = 1; k + 1 < left.size(); ++k)
    if (is_doubly_irreducible(l, left[k])) failure.left_doubly_irreducible.push_back(left[k]);
  for (std::size_t k = 1; k + 1 < right.size(); ++k)
    if (is_doubly_irreducible(l, right[k])) failure.right_doubly_irreducible.push_back(right[k]);

  if (failure.left_doubly_irreducible.size() != 1 || failure.right_doubly_irreducible.size() != 1) {
    failure.reason = "left boundary has " + std::to_string(failure.left_doubly_irreducible.size()) +
                     " and right boundary has " + std::to_string(failure.right_doubly_irreducible.size()) +
                     " non-bound doubly irreducible elements";
    return failure;
  }
  ElementId cl = failure.left_doubly_irreducible[0];
  ElementId cr = failure.right_doubly_irreducible[0];
  if (l.meet(cl, cr) != l.bottom() || l.join(cl, cr) != l.top()) {
    failure.reason = "corner candidates are not complementary";
    return failure;
  }
  if (!left_of(l, cl, cr)) {
    failure.reason = "left corner candidate is not left of the right one";
    return failure;
  }
  RectFrame frame{cl, cr, {}, {}, {}, {}};
  auto split = [](const std::vector<ElementId>& chain, ElementId corner, std::vector<ElementId>& lower,
                  std::vector<ElementId>& upper) {
    auto at = std::find(chain.begin(), chain.end(), corner);
    lower.assign(chain.begin(), at + 1);
    upper.assign(at, chain.end());
  };
  split(left, cl, frame.lower_left, frame.upper_left);
  split(right, cr, frame.lower_right, frame.upper_right);
  return frame;
}

RectFrame rect_frame(const LeveledLattice& l) {
  auto c = corners(l);
  if (auto* f = std::get_if<CornerFailure>(&c)) throw std::invalid_argument("lattice is not rectangular: " + f->reason);
  return std::get<RectFrame>(std::move(c));
}

bool is_sps(const LeveledLattice& l) { return is_semimodular(l) && is_slim(l); }

bool is_sr(const LeveledLattice& l) { return is_sps(l) && std::holds_alternative<RectFrame>(corners(l)); }

std::vector<RectInterval> rectangular_intervals(const LeveledLattice& l) {
  // Each incomparable pair a left of b spans exactly one interval.
  std::vector<RectInterval> out;
  const auto n = static_cast<ElementId>(l.size());
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b) {
      if (a == b || l.comparable(a, b) || !left_of(l, a, b)) continue;
      out.push_back({l.meet(a, b), l.join(a, b), a, b});
    }
  std::sort(out.begin(), out.end(), [&](const RectInterval& x, const RectInterval& y) {
    auto key = [&](const RectInterval& r) {
      return std::tuple(l.height(r.o), l.position(r.o), l.height(r.i), l.position(r.i), l.height(r.a),
                        l.position(r.a), l.height(r.b), l.position(r.b));
    };
    return key(x) < key(y);
  });
  return out;
}

namespace {

std::string interval_name(const LeveledLattice& l, const RectInterval& r) {
  return "[" + l.label(r.o) + "," + l.label(r.i) + "] with " + l.label(r.a) + "," + l.label(r.b);
}

bool is_chain(const LeveledLattice& l, const std::vector<ElementId>& xs) {
  for (std::size_t s = 0; s < xs.size(); ++s)
    for (std::size_t t = s + 1; t < xs.size(); ++t)
      if (!l.comparable(xs[s], xs[t])) return false;
  return true;
}

}  // namespace

VerificationReport verify_main_theorem(const LeveledLattice& l) {
  VerificationReport report;
  report.title = "rectangular intervals are slim rectangular";
  report.record("precondition: SPS", is_sps(l), "lattice is not slim semimodular");
  if (!report.ok()) return report;
  for (const auto& r : rectangular_intervals(l)) {
    auto sub = restrict_interval(l, r.o, r.i);
    report.record("interval is SR", is_sr(sub.lattice), interval_name(l, r) + " is not slim rectangular",
                  {r.o, r.i, r.a, r.b});
  }
  return report;
}

VerificationReport verify_corollaries(const LeveledLattice& l) {
  VerificationReport report;
  report.title = "rectangular interval corollaries";
  report.record("precondition: SPS", is_sps(l), "lattice is not slim semimodular");
  if (!report.ok()) return report;

  std::map<Edge, RectInterval> spans;
  for (const auto& r : rectangular_intervals(l)) spans.emplace(Edge{r.o, r.i}, r);

  for (const auto& [span, r] : spans) {
    auto [o, i] = span;
    auto sub = restrict_interval(l, o, i);
    auto c = corners(sub.lattice);
    const auto* frame = std::get_if<RectFrame>(&c);
    report.record("interval has corners", frame != nullptr, interval_name(l, r) + " has no corners", {o, i});
    if (!frame) continue;
    // Corners of I, not the witness pair.
    ElementId ca = sub.parent[frame->left_corner], cb = sub.parent[frame->right_corner];
    auto to_parent = [&](const std::vector<ElementId>& xs) {
      std::vector<ElementId> out;
      for (ElementId x : xs) out.push_back(sub.parent[x]);
      return out;
    };

    auto left_chain = interval_elements(l, o, ca);
    auto right_chain = interval_elements(l, o, cb);
    report.record("lower boundary intervals are chains", is_chain(l, left_chain) && is_chain(l, right_chain),
                  "[o,a] or [o,b] is not a chain in " + interval_name(l, r), {o, ca, cb});
    std::vector<ElementId> lower = to_parent(frame->lower_left);
    for (ElementId x : to_parent(frame->lower_right))
      if (std::find(lower.begin(), lower.end(), x) == lower.end()) lower.push_back(x);
    for (ElementId x : lower) {
      if (x == ca || x == cb) continue;
      std::size_t ups = 0;
      for (ElementId y : l.up_covers(x))
        if (l.leq(y, i)) ++ups;
      report.record("lower boundary is meet-reducible", ups >= 2,
                    l.label(x) + " is meet-irreducible in " + interval_name(l, r), {x, o, i});
    }
    for (ElementId x : interval_elements(l, o, i)) {
      ElementId rebuilt = l.join(l.meet(x, ca), l.meet(x, cb));
      report.record("x = (x^a) v (x^b)", rebuilt == x,
                    l.label(x) + " != (x^a)v(x^b) = " + l.label(rebuilt) + " in " + interval_name(l, r),
                    {x, ca, cb});
    }
  }

  const auto n = static_cast<ElementId>(l.size());
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b) {
      if (a == b || l.comparable(a, b) || !left_of(l, a, b)) continue;
      for (ElementId c = 0; c < n; ++c) {
        if (c == a || c == b || l.comparable(b, c) || l.comparable(a, c) || !left_of(l, b, c)) continue;
        ElementId rebuilt = l.join(l.meet(b, a), l.meet(b, c));
        report.record("b = (b^a) v (b^c)", rebuilt == b,
                      l.label(b) + " != (b^a)v(b^c) for a=" + l.label(a) + ", c=" + l.label(c), {a, b, c});
      }
    }
  return report;
}

}  // namespace slimrect
