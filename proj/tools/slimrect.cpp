// slimrect: command-line front end. Exit codes: 0 ok, 1 verification
// failure, 2 invalid input.

#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "slimrect/canonical.hpp"
#include "slimrect/diagram.hpp"
#include "slimrect/enumerate.hpp"
#include "slimrect/fork.hpp"
#include "slimrect/io.hpp"
#include "slimrect/rect.hpp"

using namespace slimrect;

namespace {

constexpr int kOk = 0, kFailed = 1, kBadInput = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty())
    std::cout << text;
  else
    write_text_file(out, text);
}

LatticeFile load_lattice(const std::string& path) { return lattice_from_json(read_json_file(path)); }

std::vector<std::size_t> parse_triple(const std::string& s, const char* what) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (part.empty() || used != part.size() || part[0] == '-') throw InputError(std::string("bad ") + what + ": " + s);
    out.push_back(v);
  }
  return out;
}

VerificationReport structure_report(const LeveledLattice& l) {
  VerificationReport r;
  r.title = "structure";
  auto ranks = ranks_over_all_choices(l);
  r.record("rank invariance", ranks.size() == 1, std::to_string(ranks.size()) + " distinct ranks");
  auto dec = decompose_detailed(l);
  for (const auto& s : dec.steps)
    r.record("decomposition ideals distributive", s.c_ideal_distributive && s.d_ideal_distributive,
             "an ideal at the fork cell is not distributive", {s.cell.o, s.cell.c, s.cell.d, s.cell.i});
  r.record("decompose then replay", planar_code(replay(dec.script)) == planar_code(l),
           "replayed decomposition differs from the input");
  return r;
}

VerificationReport diagram_report(const LeveledLattice& l) {
  VerificationReport r;
  r.title = "diagrams";
  auto d = natural_diagram(l);
  r.merge(check_c1(l, d), "natural");
  r.merge(check_c2(l, d), "natural");
  r.merge(validate_drawing(l, d), "natural");
  r.merge(verify_c1_equals_natural(l, d), "natural");
  r.merge(verify_c2_uniqueness(l, d, mirror_natural_diagram(l)), "natural vs mirror");
  r.merge(verify_psi_embedding(l));
  auto drawn = replay_drawn(decompose(l));
  r.merge(validate_drawing(drawn.lattice, drawn.diagram), "replayed drawing");
  r.merge(verify_c1_equals_natural(drawn.lattice, drawn.diagram), "replayed drawing");
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slim rectangular lattices: forks, decompositions, diagrams and checks"};
  app.require_subcommand(1);
  std::string out;
  int status = kOk;
  std::function<void()> action;

  auto* gen = app.add_subcommand("gen", "generate a lattice");
  auto* gen_grid = gen->add_subcommand("grid", "direct product of two chains");
  gen->require_subcommand(1);
  std::size_t gp = 0, gq = 0;
  gen_grid->add_option("P", gp, "elements of the lower-left chain")->required();
  gen_grid->add_option("Q", gq, "elements of the lower-right chain")->required();
  gen_grid->add_option("-o,--out", out, "output file (default stdout)");
  gen_grid->callback([&] {
    action = [&] {
      if (gp < 2 || gq < 2) throw InputError("grid sides must be at least 2");
      emit(dump(lattice_to_json(grid(gp, gq))), out);
    };
  });

  auto* fork = app.add_subcommand("fork", "insert or delete a fork");
  fork->require_subcommand(1);
  std::string file, cell, square;
  auto* ins = fork->add_subcommand("insert", "insert a fork into a 4-cell");
  ins->add_option("FILE", file, "lattice file")->required();
  auto* cell_opt = ins->add_option("--cell", cell, "cell as o_height,o_index,c_index");
  auto* square_opt = ins->add_option("--square", square, "cell as four element names o,c,d,i");
  cell_opt->excludes(square_opt);
  ins->add_option("-o,--out", out, "output file (default stdout)");
  ins->callback([&] {
    action = [&] {
      auto l = load_lattice(file).lattice;
      Cell4 c{};
      if (!cell.empty()) {
        auto v = parse_triple(cell, "--cell");
        if (v.size() != 3) throw InputError("--cell needs three numbers");
        auto r = resolve(l, CellRef{v[0], v[1], v[2]});
        if (!r) throw InputError("no 4-cell at " + cell);
        c = *r;
      } else if (!square.empty()) {
        std::vector<ElementId> ids;
        std::stringstream ss(square);
        std::string name;
        while (std::getline(ss, name, ',')) {
          auto id = l.find(name);
          if (!id) throw InputError("unknown element '" + name + "'");
          ids.push_back(*id);
        }
        if (ids.size() != 4) throw InputError("--square needs four names");
        c = Cell4{ids[0], ids[1], ids[2], ids[3]};
      } else {
        throw InputError("one of --cell or --square is required");
      }
      auto res = insert_fork(l, c);
      emit(dump(lattice_to_json(res.lattice)), out);
      std::cerr << "inserted " << res.lattice.label(res.trace.m) << " with " << res.trace.left.size()
                << " left and " << res.trace.right.size() << " right trajectory elements; "
                << res.lattice.size() << " elements\n";
    };
  });

  auto* del = fork->add_subcommand("delete", "delete the canonical minimal fork");
  del->add_option("FILE", file, "lattice file")->required();
  del->add_option("-o,--out", out, "output file (default stdout)");
  del->callback([&] {
    action = [&] {
      auto l = load_lattice(file).lattice;
      if (!is_sr(l)) throw InputError("not a slim rectangular lattice");
      auto s7 = canonical_minimal_s7(l);
      if (!s7) throw InputError("the lattice is a grid; there is no fork to delete");
      auto res = delete_fork(l, *s7);
      emit(dump(lattice_to_json(res.lattice)), out);
      std::cerr << "step " << dump(cell_ref_to_json(cell_ref(res.lattice, res.cell)));
    };
  });

  auto* dec = app.add_subcommand("decompose", "grid and fork script of a slim rectangular lattice");
  dec->add_option("FILE", file, "lattice file")->required();
  dec->add_option("-o,--out", out, "output file (default stdout)");
  dec->callback([&] {
    action = [&] {
      auto l = load_lattice(file).lattice;
      if (!is_sr(l)) throw InputError("not a slim rectangular lattice");
      emit(dump(script_to_json(decompose(l))), out);
    };
  });

  auto* rep = app.add_subcommand("replay", "build the lattice of a fork script");
  rep->add_option("SCRIPT", file, "script file")->required();
  rep->add_option("-o,--out", out, "output file (default stdout)");
  rep->callback([&] {
    action = [&] {
      auto s = script_from_json(read_json_file(file));
      emit(dump(lattice_to_json(replay(s))), out);
    };
  });

  auto* rk = app.add_subcommand("rank", "number of forks over the grid");
  rk->add_option("FILE", file, "lattice file")->required();
  rk->callback([&] {
    action = [&] {
      auto l = load_lattice(file).lattice;
      if (!is_sr(l)) throw InputError("not a slim rectangular lattice");
      std::cout << rank(l) << "\n";
    };
  });

  auto* ver = app.add_subcommand("verify", "run verification suites on one lattice");
  std::string suite = "all";
  bool as_json = false;
  ver->add_option("FILE", file, "lattice file")->required();
  ver->add_option("--suite", suite, "main | corollaries | diagrams | all")
      ->check(CLI::IsMember({"main", "corollaries", "diagrams", "all"}));
  ver->add_flag("--json", as_json, "print the report as JSON");
  ver->callback([&] {
    action = [&] {
      auto l = load_lattice(file).lattice;
      VerificationReport r;
      r.title = "verify " + suite;
      if (suite == "main" || suite == "all") r.merge(verify_main_theorem(l));
      if (suite == "corollaries" || suite == "all") r.merge(verify_corollaries(l));
      bool sr = is_sr(l);
      if (suite == "diagrams" || suite == "all") {
        r.record("slim rectangular", sr, "diagram checks need a slim rectangular lattice");
        if (sr) r.merge(diagram_report(l));
      }
      if (suite == "all" && sr) r.merge(structure_report(l));
      std::cout << (as_json ? dump(report_to_json(r, &l)) : report_to_text(r, &l));
      status = r.ok() ? kOk : kFailed;
    };
  });

  auto* en = app.add_subcommand("enumerate", "enumerate slim rectangular lattices by forks");
  std::string max_grid = "3,3", dir;
  std::size_t max_rank = 2;
  bool verify_all = false;
  en->add_option("--max-grid", max_grid, "largest grid as P,Q")->required();
  en->add_option("--max-rank", max_rank, "largest number of forks")->required();
  en->add_option("--out", dir, "output directory")->required();
  en->add_flag("--verify", verify_all, "run every check on every member");
  en->callback([&] {
    action = [&] {
      auto g = parse_triple(max_grid, "--max-grid");
      if (g.size() != 2 || g[0] < 2 || g[1] < 2) throw InputError("--max-grid needs P,Q with P,Q >= 2");
      Universe u;
      try {
        u = enumerate_sr(g[0], g[1], max_rank, limits_from_env());
      } catch (const ResourceCapExceeded& e) {
        throw InputError(std::string("resource cap: ") + e.what());
      }
      save_universe(u, dir);
      std::cout << u.size() << " lattices written to " << dir << "\n";
      if (verify_all) {
        auto r = verify_universe(u);
        std::cout << report_to_text(r);
        status = r.ok() ? kOk : kFailed;
      }
    };
  });

  auto* ren = app.add_subcommand("render", "draw a slim rectangular lattice");
  std::string format = "svg";
  bool natural = false, drawn = false, c2 = false;
  ren->add_option("FILE", file, "lattice file")->required();
  auto* nat_flag = ren->add_flag("--natural", natural, "natural diagram with unit steps (default)");
  auto* drawn_flag = ren->add_flag("--drawn", drawn, "diagram built fork by fork from the grid");
  nat_flag->excludes(drawn_flag);
  ren->add_flag("--c2", c2, "fail unless the diagram satisfies C2");
  ren->add_option("--format", format, "svg | tikz")->check(CLI::IsMember({"svg", "tikz"}));
  ren->add_option("-o,--out", out, "output file (default stdout)");
  ren->callback([&] {
    action = [&] {
      auto l = load_lattice(file).lattice;
      if (!is_sr(l)) throw InputError("not a slim rectangular lattice");
      LeveledLattice shown = l;
      Diagram d;
      if (drawn) {
        auto dl = replay_drawn(decompose(l));
        shown = dl.lattice;
        d = dl.diagram;
      } else {
        d = natural_diagram(l);
      }
      if (c2) {
        auto r = check_c2(shown, d);
        if (!r.ok()) {
          std::cerr << report_to_text(r, &shown);
          status = kFailed;
          return;
        }
      }
      emit(format == "svg" ? render_svg(shown, d) : render_tikz(shown, d), out);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }
  try {
    if (action) action();
  } catch (const InvalidLattice& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& d : e.defects()) std::cerr << "  " << to_string(d.kind) << ": " << d.message << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return status;
}
