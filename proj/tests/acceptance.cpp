// Acceptance run: one PASS/FAIL line per criterion, with wall time and limit.
// Exits non-zero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "slimrect/canonical.hpp"
#include "slimrect/diagram.hpp"
#include "slimrect/io.hpp"
#include "support.hpp"

using namespace slimrect;
using namespace slimrect::test;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int number;
  std::string name;
  double limit_s;
  std::function<Outcome()> run;
};

std::string names(const LeveledLattice& l, const std::vector<ElementId>& ids) {
  std::string s = "[";
  for (std::size_t k = 0; k < ids.size(); ++k) s += (k ? ", " : "") + l.label(ids[k]);
  return s + "]";
}

std::string script_text(const ForkScript& s) {
  std::ostringstream out;
  out << "grid(" << s.p << "," << s.q << ")";
  for (const auto& c : s.steps) out << " (" << c.o_height << "," << c.o_index << "," << c.c_index << ")";
  return out.str();
}

// Counts failing members of a per-member report and names the smallest one.
struct Tally {
  std::size_t members = 0, failing_members = 0, failures = 0, checks = 0;
  std::map<std::string, std::size_t> by_check;
  const UniverseMember* smallest = nullptr;
  Failure first;

  void add(const UniverseMember& m, const VerificationReport& r) {
    ++members;
    for (const auto& [name, n] : r.checks) checks += n;
    if (r.ok()) return;
    ++failing_members;
    failures += r.failures.size();
    for (const auto& f : r.failures) ++by_check[f.check];
    if (!smallest || m.lattice.size() < smallest->lattice.size()) {
      smallest = &m;
      first = r.failures.front();
    }
  }

  Outcome outcome() const {
    Outcome o;
    o.pass = failing_members == 0 && checks > 0;
    std::ostringstream d;
    d << members << " lattices, " << checks << " checks";
    if (failing_members) {
      d << "; " << failures << " failures in " << failing_members << " lattices (";
      bool sep = false;
      for (const auto& [name, n] : by_check) d << (sep ? ", " : "") << name << ": " << n, sep = true;
      d << "); smallest: " << smallest->lattice.size() << " elements, " << script_text(smallest->script) << ", "
        << first.check << ": " << first.message << " " << names(smallest->lattice, first.witness);
    }
    o.detail = d.str();
    return o;
  }
};

const Universe& universe() {
  static const Universe u = enumerate_sr(3, 3, 2);
  return u;
}

const Universe& universe3() {
  static const Universe u = enumerate_sr(3, 3, 3);
  return u;
}

Outcome fork_round_trip() {
  std::size_t pairs = 0, bad = 0;
  std::string first;
  for (const auto& [code, m] : universe().members) {
    for (const auto& cell : cells4(m.lattice)) {
      ++pairs;
      auto ins = insert_fork(m.lattice, cell);
      const auto& tr = ins.trace;
      S7Occurrence s7{cell.o, tr.left.front(), tr.right.front(), cell.c, cell.d, tr.m, cell.i, S7Kind::covering};
      bool ok = false;
      try {
        ok = canonical_code(delete_fork(ins.lattice, s7, Minimality::unchecked).lattice) == code;
      } catch (const std::exception&) {
      }
      if (!ok && bad++ == 0) first = script_text(m.script) + " cell " + names(m.lattice, {cell.o, cell.c, cell.d, cell.i});
    }
  }
  Outcome o{bad == 0 && pairs > 0, std::to_string(universe().size()) + " lattices, " + std::to_string(pairs) +
                                       " cells, " + std::to_string(bad) + " mismatches"};
  if (bad) o.detail += "; first: " + first;
  return o;
}

Outcome structure() {
  Tally t;
  for (const auto& [code, m] : universe().members) {
    VerificationReport r;
    auto dec = decompose_detailed(m.lattice);
    r.record("decompose then replay", canonical_code(replay(dec.script)) == code, "code differs");
    for (const auto& s : dec.steps)
      r.record("distributive ideals", s.c_ideal_distributive && s.d_ideal_distributive, "ideal not distributive",
               {s.cell.c, s.cell.d});
    t.add(m, r);
  }
  return t.outcome();
}

Outcome rank_invariance() {
  Tally t;
  std::size_t max_rank = 0;
  for (const auto& [code, m] : universe3().members) {
    VerificationReport r;
    auto ranks = ranks_over_all_choices(m.lattice);
    r.record("unique rank", ranks.size() == 1, std::to_string(ranks.size()) + " ranks");
    if (ranks.size() == 1) {
      r.record("rank equals script length", *ranks.begin() == m.script.steps.size(), "rank differs from script");
      max_rank = std::max(max_rank, *ranks.begin());
    }
    t.add(m, r);
  }
  auto o = t.outcome();
  o.detail += "; ranks up to " + std::to_string(max_rank);
  return o;
}

Outcome main_theorem() {
  Tally t;
  std::size_t intervals = 0;
  for (const auto& [code, m] : universe().members) {
    auto r = verify_main_theorem(m.lattice);
    intervals += r.checks["interval is SR"];
    t.add(m, r);
  }
  auto o = t.outcome();
  o.detail += "; " + std::to_string(intervals) + " rectangular intervals";
  return o;
}

Outcome corollaries() {
  Tally t;
  std::size_t other = 0;
  auto tally = [&](const UniverseMember& m) {
    auto r = verify_corollaries(m.lattice);
    for (const auto& f : r.failures) other += f.check != "interval has corners";
    t.add(m, r);
  };
  for (const auto& [code, m] : universe().members) tally(m);
  UniverseMember g44{grid(4, 4), ForkScript{4, 4, {}}};
  tally(g44);
  auto g = grid(3, 3);
  UniverseMember top{insert_fork(g, cells4(g).back()).lattice, ForkScript{}};
  top.script = decompose(top.lattice);
  tally(top);
  auto o = t.outcome();
  o.detail += "; failures other than missing corners: " + std::to_string(other);
  return o;
}

Outcome psi_embedding() {
  Tally t;
  for (const auto& [code, m] : universe().members) t.add(m, verify_psi_embedding(m.lattice));
  return t.outcome();
}

Outcome c1_diagrams() {
  Tally t;
  std::size_t mirrored = 0;
  for (const auto& [code, m] : universe().members) {
    VerificationReport r;
    r.merge(check_c1(m.lattice, natural_diagram(m.lattice)), "natural");
    auto drawn = replay_drawn(m.script);
    r.merge(check_c1(drawn.lattice, drawn.diagram), "drawn");
    auto coords = coordinates_of(drawn.diagram);
    bool direct = coords == psi_map(drawn.lattice), mirror = coords == psi_mirror_map(drawn.lattice);
    r.record("coordinates equal psi or mirror psi", direct || mirror, "drawn coordinates differ");
    mirrored += !direct && mirror;
    t.add(m, r);
  }
  auto o = t.outcome();
  o.detail += "; " + std::to_string(mirrored) + " drawings matched the mirror map";
  return o;
}

Outcome c2_diagrams() {
  Tally t;
  for (const auto& [code, m] : universe().members) {
    VerificationReport r;
    auto natural = natural_diagram(m.lattice);
    r.merge(check_c2(m.lattice, natural));
    r.merge(verify_c2_uniqueness(m.lattice, natural, mirror_natural_diagram(m.lattice)));
    t.add(m, r);
  }
  return t.outcome();
}

Outcome slim_oracle() {
  std::size_t lattices = 0, bad = 0, controls = 0;
  auto agree = [&](const LeveledLattice& l) {
    ++lattices;
    bad += is_slim(l) != oracle_join_irreducibles_two_chains(l);
  };
  for (const auto& [code, m] : universe3().members) agree(m.lattice);
  // Negative controls: M3 alone and with a chain above or below.
  std::vector<LeveledLattice> negatives{
      m3(),
      build({{"0"}, {"a", "b", "c"}, {"1"}, {"2"}},
            {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}, {"1", "2"}}),
      build({{"z"}, {"0"}, {"a", "b", "c"}, {"1"}},
            {{"z", "0"}, {"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}}),
  };
  for (const auto& l : negatives) {
    agree(l);
    controls += !is_slim(l) && !oracle_join_irreducibles_two_chains(l);
  }
  return Outcome{bad == 0 && controls == negatives.size(),
                 std::to_string(lattices) + " lattices, " + std::to_string(bad) + " disagreements, " +
                     std::to_string(controls) + "/" + std::to_string(negatives.size()) + " M3 controls rejected"};
}

Outcome s7_figure() {
  auto s = s7();
  auto svg = render_svg(s, natural_diagram(s));
  auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (auto at = svg.find(needle); at != std::string::npos; at = svg.find(needle, at + 1)) ++n;
    return n;
  };
  std::size_t steep = count("class=\"steep\""), normal = count("class=\"normal\""), other = count("class=\"other\"");
  bool m_t = count("class=\"steep\" data-lower=\"m\" data-upper=\"t\"") == 1;
  return Outcome{steep == 1 && normal == 8 && other == 0 && m_t,
                 std::to_string(steep) + " steep (m-t: " + (m_t ? "yes" : "no") + "), " + std::to_string(normal) +
                     " normal, " + std::to_string(other) + " other"};
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "fork round trip over enumerate_sr(3,3,2)", 60, fork_round_trip},
      {2, "decompose/replay and distributive ideals", 60, structure},
      {3, "rank invariance over enumerate_sr(3,3,3)", 300, rank_invariance},
      {4, "rectangular intervals are slim rectangular", 120, main_theorem},
      {5, "corner corollaries (universe, grid(4,4), 14-element lattice)", 120, corollaries},
      {6, "psi meet-embedding", 30, psi_embedding},
      {7, "C1 natural diagrams and drawn coordinates", 60, c1_diagrams},
      {8, "C2 unit diagrams and uniqueness up to mirror", 30, c2_diagrams},
      {9, "is_slim agrees with the join-irreducible oracle", 30, slim_oracle},
      {10, "S7 natural diagram: one steep, eight normal edges", 10, s7_figure},
  };

  auto t0 = std::chrono::steady_clock::now();
  universe();
  universe3();
  double setup = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("setup: enumerate_sr(3,3,2) = %zu lattices, enumerate_sr(3,3,3) = %zu lattices, %.2f s\n",
              universe().size(), universe3().size(), setup);

  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = Outcome{false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs < c.limit_s;
    bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s %2d %s: %.2f s (limit %.0f s%s); %s\n", pass ? "PASS" : "FAIL", c.number, c.name.c_str(), secs,
                c.limit_s, in_time ? "" : ", exceeded", o.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
