#include "slimrect/fork.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <unordered_set>

#include "slimrect/canonical.hpp"
#include "slimrect/rect.hpp"

namespace slimrect {

namespace {

std::size_t index_in(std::span<const ElementId> v, ElementId x) {
  return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
}

void replace(std::vector<ElementId>& v, ElementId from, ElementId to) {
  auto it = std::find(v.begin(), v.end(), from);
  if (it == v.end()) throw std::logic_error("replace: element not in cover list");
  *it = to;
}

std::string fresh_label(std::unordered_set<std::string>& used, const std::string& base) {
  std::string name = base;
  for (int k = 2; used.count(name); ++k) name = base + "_" + std::to_string(k);
  used.insert(name);
  return name;
}

std::vector<std::vector<ElementId>> copy_lists(const LeveledLattice& l, bool up) {
  std::vector<std::vector<ElementId>> out(l.size());
  for (ElementId x = 0; x < l.size(); ++x) {
    auto s = up ? l.up_covers(x) : l.down_covers(x);
    out[x].assign(s.begin(), s.end());
  }
  return out;
}

}  // namespace

ReplayError::ReplayError(std::size_t step, const std::string& what)
    : std::invalid_argument("step " + std::to_string(step) + ": " + what), step_(step) {}

bool is_cell(const LeveledLattice& l, const Cell4& cell) {
  if (cell.o >= l.size() || cell.c >= l.size() || cell.d >= l.size() || cell.i >= l.size()) return false;
  auto ups = l.up_covers(cell.o);
  std::size_t kc = index_in(ups, cell.c), kd = index_in(ups, cell.d);
  if (kc >= ups.size() || kd != kc + 1) return false;
  if (l.join(cell.c, cell.d) != cell.i) return false;
  auto downs = l.down_covers(cell.i);
  std::size_t jc = index_in(downs, cell.c), jd = index_in(downs, cell.d);
  return jc < downs.size() && jd == jc + 1;
}

std::vector<Cell4> cells4(const LeveledLattice& l) {
  std::vector<Cell4> out;
  for (const auto& level : l.levels())
    for (ElementId o : level) {
      auto ups = l.up_covers(o);
      for (std::size_t k = 0; k + 1 < ups.size(); ++k) {
        Cell4 cell{o, ups[k], ups[k + 1], l.join(ups[k], ups[k + 1])};
        if (is_cell(l, cell)) out.push_back(cell);
      }
    }
  return out;
}

CellRef cell_ref(const LeveledLattice& l, const Cell4& cell) {
  return CellRef{l.height(cell.o), l.position(cell.o), index_in(l.up_covers(cell.o), cell.c)};
}

std::optional<Cell4> resolve(const LeveledLattice& l, const CellRef& ref) {
  if (ref.o_height >= l.levels().size() || ref.o_index >= l.levels()[ref.o_height].size()) return std::nullopt;
  ElementId o = l.at(ref.o_height, ref.o_index);
  auto ups = l.up_covers(o);
  if (ref.c_index + 1 >= ups.size()) return std::nullopt;
  Cell4 cell{o, ups[ref.c_index], ups[ref.c_index + 1], l.join(ups[ref.c_index], ups[ref.c_index + 1])};
  if (!is_cell(l, cell)) return std::nullopt;
  return cell;
}

ForkPlan plan_fork(const LeveledLattice& l, const Cell4& cell) {
  if (!is_cell(l, cell)) throw NotACell("not a 4-cell of the diagram");
  ForkPlan plan;
  // Left: the edge [u, v] continues into the cell whose upper-right edge it
  // is; the next edge is that cell's lower-left edge.
  for (Edge e{cell.o, cell.c};;) {
    plan.left_edges.push_back(e);
    auto [u, v] = e;
    auto downs = l.down_covers(v);
    std::size_t k = index_in(downs, u);
    if (k == 0) break;
    ElementId c2 = downs[k - 1];
    Cell4 next{l.meet(c2, u), c2, u, v};
    if (!is_cell(l, next)) break;
    e = {next.o, next.c};
  }
  for (Edge e{cell.o, cell.d};;) {
    plan.right_edges.push_back(e);
    auto [u, v] = e;
    auto downs = l.down_covers(v);
    std::size_t k = index_in(downs, u);
    if (k + 1 >= downs.size()) break;
    ElementId d2 = downs[k + 1];
    Cell4 next{l.meet(u, d2), u, d2, v};
    if (!is_cell(l, next)) break;
    e = {next.o, next.d};
  }
  return plan;
}

ForkResult insert_fork(const LeveledLattice& l, const Cell4& cell) {
  ForkPlan plan = plan_fork(l, cell);
  auto up = copy_lists(l, true);
  auto down = copy_lists(l, false);
  auto labels = l.labels();
  std::unordered_set<std::string> used(labels.begin(), labels.end());

  const auto n = static_cast<ElementId>(l.size());
  const std::size_t k = plan.left_edges.size(), r = plan.right_edges.size();
  const std::size_t total = n + 1 + k + r;
  up.resize(total);
  down.resize(total);
  labels.resize(total);

  ForkTrace trace;
  trace.m = n;
  trace.left_edges = plan.left_edges;
  trace.right_edges = plan.right_edges;
  labels[n] = fresh_label(used, "m");

  auto subdivide = [&](Edge e, ElementId z) {
    auto [u, v] = e;
    replace(up[u], v, z);
    replace(down[v], u, z);
    up[z] = {v};
    down[z] = {u};
  };

  for (std::size_t j = 0; j < k; ++j) {
    ElementId x = n + 1 + static_cast<ElementId>(j);
    trace.left.push_back(x);
    labels[x] = fresh_label(used, "x" + std::to_string(j + 1));
    subdivide(plan.left_edges[j], x);
    if (j == 0) {
      up[x].push_back(n);
    } else {
      ElementId prev = x - 1;
      up[x].push_back(prev);
      down[prev].insert(down[prev].begin(), x);
    }
  }
  for (std::size_t j = 0; j < r; ++j) {
    ElementId y = n + 1 + static_cast<ElementId>(k + j);
    trace.right.push_back(y);
    labels[y] = fresh_label(used, "y" + std::to_string(j + 1));
    subdivide(plan.right_edges[j], y);
    if (j == 0) {
      up[y].insert(up[y].begin(), n);
    } else {
      ElementId prev = y - 1;
      up[y].insert(up[y].begin(), prev);
      down[prev].push_back(y);
    }
  }
  down[n] = {trace.left.front(), trace.right.front()};
  up[n] = {cell.i};
  auto& top_downs = down[cell.i];
  top_downs.insert(std::find(top_downs.begin(), top_downs.end(), cell.c) + 1, n);

  return ForkResult{embed(up, down, std::move(labels)), std::move(trace)};
}

std::vector<S7Occurrence> find_covering_s7(const LeveledLattice& l, bool minimal_only) {
  auto all = find_s7(l, S7Kind::covering);
  std::vector<S7Occurrence> out;
  for (const auto& s : all) {
    bool minimal = std::none_of(all.begin(), all.end(), [&](const S7Occurrence& t) { return l.less(t.t, s.t); });
    if (!minimal_only || minimal) out.push_back(s);
  }
  auto key = [&](const S7Occurrence& s) {
    return std::tuple(l.height(s.t), l.position(s.t), l.position(s.a), l.position(s.m), l.position(s.b));
  };
  std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });
  return out;
}

std::optional<S7Occurrence> canonical_minimal_s7(const LeveledLattice& l) {
  auto minimal = find_covering_s7(l, true);
  if (minimal.empty()) return std::nullopt;
  return minimal.front();
}

DeletionResult delete_fork(const LeveledLattice& l, const S7Occurrence& s7, Minimality minimality) {
  S7Occurrence probe = s7;
  probe.kind = S7Kind::covering;
  auto candidates = find_covering_s7(l, minimality == Minimality::required);
  if (std::find(candidates.begin(), candidates.end(), probe) == candidates.end()) {
    if (minimality == Minimality::required) throw NotMinimal("not a minimal covering S7 of the lattice");
    throw ForkDeletionError("not a covering S7 of the lattice");
  }

  // Walk the trajectories down from m∧a and m∧b.
  struct Sub {
    ElementId z, u, v;
  };
  std::vector<Sub> subs;
  for (ElementId x = s7.xa;;) {
    auto d = l.down_covers(x);
    auto u = l.up_covers(x);
    if (u.size() != 2 || d.empty() || d.size() > 2) throw ForkDeletionError("left trajectory is not a fork trajectory");
    subs.push_back({x, d.back(), u.front()});
    if (d.size() == 1) break;
    x = d.front();
  }
  for (ElementId y = s7.yb;;) {
    auto d = l.down_covers(y);
    auto u = l.up_covers(y);
    if (u.size() != 2 || d.empty() || d.size() > 2) throw ForkDeletionError("right trajectory is not a fork trajectory");
    subs.push_back({y, d.front(), u.back()});
    if (d.size() == 1) break;
    y = d.back();
  }

  auto up = copy_lists(l, true);
  auto down = copy_lists(l, false);
  std::vector<char> gone(l.size(), 0);
  gone[s7.m] = 1;
  for (const auto& s : subs) gone[s.z] = 1;
  for (const auto& s : subs) {
    replace(up[s.u], s.z, s.v);
    replace(down[s.v], s.z, s.u);
  }

  DeletionResult result{LeveledLattice(l), {}, {}, {}};
  std::vector<ElementId> local(l.size(), ElementId(-1));
  for (ElementId x = 0; x < l.size(); ++x) {
    if (gone[x]) {
      result.removed.push_back(x);
    } else {
      local[x] = static_cast<ElementId>(result.kept.size());
      result.kept.push_back(x);
    }
  }
  std::vector<std::vector<ElementId>> up2, down2;
  std::vector<std::string> labels;
  for (ElementId x : result.kept) {
    auto remap = [&](const std::vector<ElementId>& v) {
      std::vector<ElementId> out;
      for (ElementId y : v)
        if (!gone[y]) out.push_back(local[y]);
      return out;
    };
    up2.push_back(remap(up[x]));
    down2.push_back(remap(down[x]));
    labels.push_back(l.label(x));
  }
  try {
    result.lattice = embed(up2, down2, std::move(labels));
  } catch (const InvalidLattice& e) {
    throw ForkDeletionError(std::string("removing the fork breaks the lattice: ") + e.what());
  }
  result.cell = Cell4{local[s7.o], local[s7.a], local[s7.b], local[s7.t]};

  if (!is_cell(result.lattice, result.cell)) throw ForkDeletionError("{o,a,b,t} is not a 4-cell after deletion");
  if (planar_code(insert_fork(result.lattice, result.cell).lattice) != planar_code(l))
    throw ForkDeletionError("re-inserting the fork does not reproduce the lattice");
  return result;
}

Decomposition decompose_detailed(const LeveledLattice& l) {
  if (!is_sr(l)) throw NotSlimRectangular("decompose needs a slim rectangular lattice");
  Decomposition out;
  LeveledLattice cur = l;
  std::vector<CellRef> refs;
  while (auto s7 = canonical_minimal_s7(cur)) {
    auto del = delete_fork(cur, *s7);
    refs.push_back(cell_ref(del.lattice, del.cell));
    out.steps.push_back({del.cell, is_distributive_ideal(del.lattice, del.cell.c),
                         is_distributive_ideal(del.lattice, del.cell.d)});
    cur = std::move(del.lattice);
  }
  RectFrame frame = rect_frame(cur);
  out.script.p = frame.lower_left.size();
  out.script.q = frame.lower_right.size();
  if (planar_code(cur) != planar_code(grid(out.script.p, out.script.q)))
    throw std::logic_error("decompose: fork deletion did not end at a grid");
  std::reverse(refs.begin(), refs.end());
  std::reverse(out.steps.begin(), out.steps.end());
  out.script.steps = std::move(refs);
  return out;
}

ForkScript decompose(const LeveledLattice& l) { return decompose_detailed(l).script; }

std::size_t rank(const LeveledLattice& l) { return decompose(l).steps.size(); }

namespace {

const std::set<std::size_t>& ranks_memo(const LeveledLattice& l, std::map<CanonicalCode, std::set<std::size_t>>& memo) {
  auto code = planar_code(l);
  if (auto it = memo.find(code); it != memo.end()) return it->second;
  std::set<std::size_t> ranks;
  auto choices = find_covering_s7(l, true);
  if (choices.empty()) ranks.insert(0);
  for (const auto& s7 : choices)
    for (std::size_t r : ranks_memo(delete_fork(l, s7).lattice, memo)) ranks.insert(r + 1);
  return memo.emplace(std::move(code), std::move(ranks)).first->second;
}

}  // namespace

std::set<std::size_t> ranks_over_all_choices(const LeveledLattice& l) {
  if (!is_sr(l)) throw NotSlimRectangular("rank needs a slim rectangular lattice");
  std::map<CanonicalCode, std::set<std::size_t>> memo;
  return ranks_memo(l, memo);
}

LeveledLattice replay(const ForkScript& script) {
  LeveledLattice cur = grid(script.p, script.q);
  for (std::size_t j = 0; j < script.steps.size(); ++j) {
    auto cell = resolve(cur, script.steps[j]);
    if (!cell) throw ReplayError(j, "cell reference does not resolve to a 4-cell");
    cur = insert_fork(cur, *cell).lattice;
    if (!is_sr(cur)) throw std::logic_error("replay: step " + std::to_string(j) + " left the slim rectangular class");
  }
  return cur;
}

}  // namespace slimrect
