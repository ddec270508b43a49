#include "slimrect/enumerate.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>

#include "slimrect/diagram.hpp"
#include "slimrect/parallel.hpp"
#include "slimrect/rect.hpp"

namespace slimrect {

namespace {

struct Child {
  CanonicalCode code;
  std::optional<LeveledLattice> lattice;
  ForkScript script;
};

void check_size(const LeveledLattice& l, const EnumerationLimits& limits) {
  if (l.size() > limits.max_elements)
    throw ResourceCapExceeded("lattice with " + std::to_string(l.size()) + " elements exceeds the cap of " +
                              std::to_string(limits.max_elements));
}

bool same_raw(const RawLattice& a, const RawLattice& b) {
  auto ea = a.covers, eb = b.covers;
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  return a.levels == b.levels && ea == eb && a.labels == b.labels;
}

}  // namespace

EnumerationLimits limits_from_env(EnumerationLimits base) {
  if (const char* v = std::getenv("SLIMRECT_MAX_ELEMENTS")) {
    char* end = nullptr;
    unsigned long long n = std::strtoull(v, &end, 10);
    if (end == v || *end != '\0' || n == 0)
      throw std::invalid_argument(std::string("SLIMRECT_MAX_ELEMENTS: not a positive integer: ") + v);
    base.max_elements = static_cast<std::size_t>(n);
  }
  return base;
}

Universe enumerate_sr(std::size_t max_p, std::size_t max_q, std::size_t max_rank, const EnumerationLimits& limits) {
  if (max_p < 2 || max_q < 2) throw std::invalid_argument("enumerate_sr: grid sides must be at least 2");
  Universe u;
  u.max_p = max_p;
  u.max_q = max_q;
  u.max_rank = max_rank;

  auto admit = [&](const CanonicalCode& code, LeveledLattice l, ForkScript script) -> bool {
    if (u.members.count(code)) return false;
    if (u.members.size() >= limits.max_codes)
      throw ResourceCapExceeded("universe exceeds " + std::to_string(limits.max_codes) + " codes");
    u.members.emplace(code, UniverseMember{std::move(l), std::move(script)});
    return true;
  };

  std::vector<CanonicalCode> frontier;
  for (std::size_t p = 2; p <= max_p; ++p)
    for (std::size_t q = 2; q <= max_q; ++q) {
      auto g = grid(p, q);
      check_size(g, limits);
      auto code = canonical_code(g);
      if (admit(code, g, ForkScript{p, q, {}})) frontier.push_back(code);
    }

  for (std::size_t r = 0; r < max_rank && !frontier.empty(); ++r) {
    std::vector<std::vector<Child>> children(frontier.size());
    parallel_for(frontier.size(), [&](std::size_t k) {
      const UniverseMember& parent = u.members.at(frontier[k]);
      for (const auto& cell : cells4(parent.lattice)) {
        auto child = insert_fork(parent.lattice, cell).lattice;
        check_size(child, limits);
        ForkScript script = parent.script;
        script.steps.push_back(cell_ref(parent.lattice, cell));
        children[k].push_back(Child{canonical_code(child), std::move(child), std::move(script)});
      }
    });
    std::vector<CanonicalCode> next;
    for (auto& group : children)
      for (auto& c : group)
        if (admit(c.code, std::move(*c.lattice), std::move(c.script))) next.push_back(c.code);
    frontier = std::move(next);
  }
  return u;
}

bool oracle_join_irreducibles_two_chains(const LeveledLattice& l) {
  std::vector<ElementId> j;
  for (ElementId x = 0; x < l.size(); ++x)
    if (l.down_covers(x).size() == 1) j.push_back(x);
  for (std::size_t a = 0; a < j.size(); ++a)
    for (std::size_t b = a + 1; b < j.size(); ++b) {
      if (l.comparable(j[a], j[b])) continue;
      for (std::size_t c = b + 1; c < j.size(); ++c)
        if (!l.comparable(j[a], j[c]) && !l.comparable(j[b], j[c])) return false;
    }
  return true;
}

bool oracle_isomorphic(const LeveledLattice& a, const LeveledLattice& b) {
  if (a.size() != b.size() || a.length() != b.length() || a.cover_count() != b.cover_count()) return false;
  for (std::size_t h = 0; h <= a.length(); ++h)
    if (a.levels()[h].size() != b.levels()[h].size()) return false;

  std::vector<ElementId> order;
  for (const auto& level : a.levels()) order.insert(order.end(), level.begin(), level.end());
  std::vector<std::optional<ElementId>> f(a.size());
  std::vector<bool> used(b.size(), false);

  std::function<bool(std::size_t)> extend = [&](std::size_t k) {
    if (k == order.size()) return true;
    ElementId x = order[k];
    for (ElementId y : b.levels()[a.height(x)]) {
      if (used[y] || a.up_covers(x).size() != b.up_covers(y).size() ||
          a.down_covers(x).size() != b.down_covers(y).size())
        continue;
      // Lower covers are mapped already; they must land on lower covers of y.
      bool ok = true;
      for (ElementId w : a.down_covers(x))
        if (!b.covers(*f[w], y)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      f[x] = y;
      used[y] = true;
      if (extend(k + 1)) return true;
      used[y] = false;
      f[x].reset();
    }
    return false;
  };
  return extend(0);
}

VerificationReport verify_member(const LeveledLattice& l, const ForkScript* script) {
  VerificationReport report;
  report.title = "member";
  auto m3 = find_m3(l);
  report.record("slim", !m3, "contains an M3 sublattice", m3 ? m3->elements : std::vector<ElementId>{});
  if (is_semimodular(l))
    report.record("slimness oracle", !m3 == oracle_join_irreducibles_two_chains(l),
                  "is_slim disagrees with the two-chains oracle");
  bool sr = is_sr(l);
  report.record("slim rectangular", sr, "not slim rectangular");
  if (!sr) return report;

  report.merge(verify_main_theorem(l));
  report.merge(verify_corollaries(l));

  auto natural = natural_diagram(l);
  report.merge(check_c1(l, natural), "natural");
  report.merge(check_c2(l, natural), "natural");
  report.merge(validate_drawing(l, natural), "natural");
  report.merge(verify_c2_uniqueness(l, natural, mirror_natural_diagram(l)), "natural vs mirror");
  report.merge(verify_psi_embedding(l));

  auto ranks = ranks_over_all_choices(l);
  report.record("rank invariance", ranks.size() == 1, std::to_string(ranks.size()) + " distinct ranks");

  auto dec = decompose_detailed(l);
  for (const auto& s : dec.steps)
    report.record("decomposition ideals distributive", s.c_ideal_distributive && s.d_ideal_distributive,
                  "an ideal at the fork cell is not distributive", {s.cell.o, s.cell.c, s.cell.d, s.cell.i});
  std::size_t r = dec.script.steps.size();
  report.record("decompose then replay", planar_code(replay(dec.script)) == planar_code(l),
                "replayed decomposition differs from the input");

  if (script) {
    report.record("script replay", planar_code(replay(*script)) == planar_code(l),
                  "the stored script does not reproduce the lattice");
    auto drawn = replay_drawn(*script);
    report.merge(validate_drawing(drawn.lattice, drawn.diagram), "replayed drawing");
    report.merge(verify_c1_equals_natural(drawn.lattice, drawn.diagram), "replayed drawing");
  }

  for (const auto& cell : cells4(l)) {
    auto ins = insert_fork(l, cell);
    const auto& tr = ins.trace;
    std::vector<ElementId> where{cell.o, cell.c, cell.d, cell.i};
    report.record("fork size", ins.lattice.size() == l.size() + 1 + tr.left.size() + tr.right.size(),
                  "unexpected size after fork", where);
    report.record("fork stays slim rectangular", is_sr(ins.lattice), "fork broke rectangularity", where);
    report.record("fork raises rank", rank(ins.lattice) == r + 1, "rank did not grow by one", where);
    S7Occurrence s7{cell.o, tr.left.front(), tr.right.front(), cell.c, cell.d, tr.m, cell.i, S7Kind::covering};
    bool back = false;
    try {
      auto del = delete_fork(ins.lattice, s7, Minimality::unchecked);
      back = same_raw(del.lattice.raw(), l.raw()) && planar_code(del.lattice) == planar_code(l) &&
             del.cell == cell;
    } catch (const std::exception&) {
      back = false;
    }
    report.record("fork round trip", back, "deleting the fork does not restore the lattice", where);
  }
  return report;
}

VerificationReport verify_universe(const Universe& u) {
  std::vector<const std::pair<const CanonicalCode, UniverseMember>*> items;
  for (const auto& kv : u.members) items.push_back(&kv);
  std::vector<VerificationReport> parts(items.size());
  parallel_for(items.size(), [&](std::size_t k) {
    try {
      parts[k] = verify_member(items[k]->second.lattice, &items[k]->second.script);
    } catch (const std::exception& e) {
      parts[k].record("member verification", false, std::string("exception: ") + e.what());
    }
  });
  VerificationReport report;
  report.title = "universe";
  for (std::size_t k = 0; k < items.size(); ++k) report.merge(parts[k], items[k]->first.hex());
  report.notes.push_back(std::to_string(items.size()) + " lattices");
  return report;
}

}  // namespace slimrect
