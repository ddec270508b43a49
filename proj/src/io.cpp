#include "slimrect/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "slimrect/canonical.hpp"

namespace slimrect {

namespace {

std::string at(const std::string& base, std::size_t k) { return base + "/" + std::to_string(k); }
std::string at(const std::string& base, const std::string& key) { return base + "/" + key; }

void expect_object(const Json& j, const std::string& path, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "/" : path, "expected an object");
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key)) throw SchemaError(at(path, key), "unknown field");
}

const Json& field(const Json& j, const std::string& path, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(at(path, key), "missing field");
  return *it;
}

void expect_version(const Json& j) {
  const Json& v = field(j, "", "version");
  if (!v.is_number_integer() || v.get<long long>() != 1) throw SchemaError("/version", "expected 1");
}

std::size_t natural_number(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw SchemaError(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

const std::string& string_value(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get_ref<const std::string&>();
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  return out;
}

std::string tex_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '_' || c == '#' || c == '%' || c == '&' || c == '$' || c == '{' || c == '}') out += '\\';
    out += c;
  }
  return out;
}

const char* edge_class(EdgeKind k) {
  switch (k) {
    case EdgeKind::normal_left:
    case EdgeKind::normal_right: return "normal";
    case EdgeKind::steep: return "steep";
    default: return "other";
  }
}

std::string witness_text(const std::vector<ElementId>& w, const LeveledLattice* l) {
  std::string s;
  for (ElementId x : w) {
    if (!s.empty()) s += ", ";
    s += l && x < l->size() ? l->label(x) : std::to_string(x);
  }
  return s;
}

}  // namespace

SchemaError::SchemaError(std::string path, const std::string& what)
    : std::invalid_argument(path + ": " + what), path_(std::move(path)) {}

Json lattice_to_json(const LeveledLattice& l, const Json& meta) {
  Json levels = Json::array();
  for (const auto& level : l.levels()) {
    Json names = Json::array();
    for (ElementId x : level) names.push_back(l.label(x));
    levels.push_back(names);
  }
  Json covers = Json::array();
  for (auto [lo, hi] : l.cover_edges()) covers.push_back({l.label(lo), l.label(hi)});
  return Json{{"version", 1}, {"levels", levels}, {"covers", covers}, {"meta", meta}};
}

LatticeFile lattice_from_json(const Json& j) {
  expect_object(j, "", {"version", "levels", "covers", "meta"});
  expect_version(j);
  RawLattice raw;
  std::map<std::string, ElementId> ids;
  const Json& levels = field(j, "", "levels");
  if (!levels.is_array() || levels.empty()) throw SchemaError("/levels", "expected a non-empty array");
  for (std::size_t h = 0; h < levels.size(); ++h) {
    const Json& level = levels[h];
    if (!level.is_array() || level.empty()) throw SchemaError(at("/levels", h), "expected a non-empty array");
    raw.levels.emplace_back();
    for (std::size_t k = 0; k < level.size(); ++k) {
      const std::string& name = string_value(level[k], at(at("/levels", h), k));
      if (name.empty()) throw SchemaError(at(at("/levels", h), k), "empty name");
      if (ids.count(name)) throw SchemaError(at(at("/levels", h), k), "duplicate name '" + name + "'");
      ElementId id = static_cast<ElementId>(raw.labels.size());
      ids[name] = id;
      raw.labels.push_back(name);
      raw.levels.back().push_back(id);
    }
  }
  const Json& covers = field(j, "", "covers");
  if (!covers.is_array()) throw SchemaError("/covers", "expected an array");
  std::set<Edge> seen;
  for (std::size_t k = 0; k < covers.size(); ++k) {
    std::string path = at("/covers", k);
    const Json& c = covers[k];
    if (!c.is_array() || c.size() != 2) throw SchemaError(path, "expected [lower, upper]");
    ElementId ends[2];
    for (std::size_t s = 0; s < 2; ++s) {
      const std::string& name = string_value(c[s], at(path, s));
      auto it = ids.find(name);
      if (it == ids.end()) throw SchemaError(at(path, s), "undeclared name '" + name + "'");
      ends[s] = it->second;
    }
    if (ends[0] == ends[1]) throw SchemaError(path, "an element cannot cover itself");
    if (!seen.insert({ends[0], ends[1]}).second) throw SchemaError(path, "duplicate cover");
    raw.covers.push_back({ends[0], ends[1]});
  }
  LatticeFile out{make_lattice(raw), Json::object()};
  if (auto it = j.find("meta"); it != j.end()) {
    if (!it->is_object()) throw SchemaError("/meta", "expected an object");
    out.meta = *it;
  }
  return out;
}

Json cell_ref_to_json(const CellRef& ref) {
  return Json{{"o_height", ref.o_height}, {"o_index", ref.o_index}, {"c_index", ref.c_index}};
}

Json script_to_json(const ForkScript& s) {
  Json steps = Json::array();
  for (const auto& ref : s.steps) steps.push_back(cell_ref_to_json(ref));
  return Json{{"version", 1}, {"grid", {s.p, s.q}}, {"steps", steps}};
}

ForkScript script_from_json(const Json& j) {
  expect_object(j, "", {"version", "grid", "steps"});
  expect_version(j);
  ForkScript s;
  const Json& g = field(j, "", "grid");
  if (!g.is_array() || g.size() != 2) throw SchemaError("/grid", "expected [p, q]");
  s.p = natural_number(g[0], "/grid/0");
  s.q = natural_number(g[1], "/grid/1");
  if (s.p < 2) throw SchemaError("/grid/0", "must be at least 2");
  if (s.q < 2) throw SchemaError("/grid/1", "must be at least 2");
  const Json& steps = field(j, "", "steps");
  if (!steps.is_array()) throw SchemaError("/steps", "expected an array");
  for (std::size_t k = 0; k < steps.size(); ++k) {
    std::string path = at("/steps", k);
    expect_object(steps[k], path, {"o_height", "o_index", "c_index"});
    s.steps.push_back(CellRef{natural_number(field(steps[k], path, "o_height"), at(path, "o_height")),
                              natural_number(field(steps[k], path, "o_index"), at(path, "o_index")),
                              natural_number(field(steps[k], path, "c_index"), at(path, "c_index"))});
  }
  return s;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("/", std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Json report_to_json(const VerificationReport& r, const LeveledLattice* l) {
  Json checks = Json::object();
  for (const auto& [name, n] : r.checks) checks[name] = n;
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    Json w = Json::array();
    for (ElementId x : f.witness) {
      if (l && x < l->size())
        w.push_back(l->label(x));
      else
        w.push_back(x);
    }
    failures.push_back(Json{{"check", f.check}, {"message", f.message}, {"witness", w}});
  }
  return Json{{"title", r.title}, {"ok", r.ok()}, {"checks", checks}, {"failures", failures}, {"notes", r.notes}};
}

std::string report_to_text(const VerificationReport& r, const LeveledLattice* l) {
  std::ostringstream out;
  out << (r.title.empty() ? "report" : r.title) << ": " << (r.ok() ? "PASS" : "FAIL") << "\n";
  for (const auto& [name, n] : r.checks) out << "  " << name << ": " << n << " checked\n";
  for (const auto& f : r.failures) {
    out << "  FAIL " << f.check << ": " << f.message;
    if (!f.witness.empty()) out << " [" << witness_text(f.witness, l) << "]";
    out << "\n";
  }
  for (const auto& n : r.notes) out << "  note: " << n << "\n";
  return out.str();
}

std::string rational_to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  auto parse = [&](const std::string& part) -> std::int64_t {
    if (part.empty()) throw std::invalid_argument("bad rational '" + s + "'");
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad rational '" + s + "'");
    }
    if (used != part.size()) throw std::invalid_argument("bad rational '" + s + "'");
    return v;
  };
  std::int64_t num = parse(s.substr(0, slash));
  std::int64_t den = slash == std::string::npos ? 1 : parse(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return Rational(num, den);
}

Json diagram_to_json(const LeveledLattice& l, const Diagram& d) {
  Json coords = Json::object();
  for (ElementId x = 0; x < l.size(); ++x)
    coords[l.label(x)] = {rational_to_string(d.coords[x].x), rational_to_string(d.coords[x].y)};
  Json edges = Json::array();
  for (auto [lo, hi] : d.edges) edges.push_back({l.label(lo), l.label(hi)});
  Json lu = Json::array(), ru = Json::array();
  for (const auto& u : d.left_units) lu.push_back(rational_to_string(u));
  for (const auto& u : d.right_units) ru.push_back(rational_to_string(u));
  return Json{{"version", 1}, {"coords", coords}, {"edges", edges}, {"left_units", lu}, {"right_units", ru}};
}

Diagram diagram_from_json(const LeveledLattice& l, const Json& j) {
  expect_object(j, "", {"version", "coords", "edges", "left_units", "right_units"});
  expect_version(j);
  auto rational = [](const Json& v, const std::string& path) {
    try {
      return rational_from_string(string_value(v, path));
    } catch (const SchemaError&) {
      throw;
    } catch (const std::exception& e) {
      throw SchemaError(path, e.what());
    }
  };
  auto id_of = [&](const Json& v, const std::string& path) {
    auto id = l.find(string_value(v, path));
    if (!id) throw SchemaError(path, "unknown element");
    return *id;
  };
  Diagram d;
  d.coords.resize(l.size());
  const Json& coords = field(j, "", "coords");
  if (!coords.is_object() || coords.size() != l.size()) throw SchemaError("/coords", "expected one point per element");
  for (const auto& [name, pt] : coords.items()) {
    std::string path = at("/coords", name);
    ElementId x = id_of(Json(name), path);
    if (!pt.is_array() || pt.size() != 2) throw SchemaError(path, "expected [x, y]");
    d.coords[x] = Point{rational(pt[0], at(path, 0)), rational(pt[1], at(path, 1))};
  }
  const Json& edges = field(j, "", "edges");
  if (!edges.is_array()) throw SchemaError("/edges", "expected an array");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    std::string path = at("/edges", k);
    if (!edges[k].is_array() || edges[k].size() != 2) throw SchemaError(path, "expected [lower, upper]");
    d.edges.push_back({id_of(edges[k][0], at(path, 0)), id_of(edges[k][1], at(path, 1))});
  }
  for (const char* key : {"left_units", "right_units"}) {
    auto it = j.find(key);
    if (it == j.end()) continue;
    if (!it->is_array()) throw SchemaError(at("", key), "expected an array");
    auto& units = std::string(key) == "left_units" ? d.left_units : d.right_units;
    for (std::size_t k = 0; k < it->size(); ++k) units.push_back(rational((*it)[k], at(at("", key), k)));
  }
  return d;
}

std::string decimal6(const Rational& r) {
  // |r| * 10^6, rounded half away from zero, in exact integer arithmetic.
  std::int64_t num = r.numerator(), den = r.denominator();
  bool negative = num < 0;
  __int128 n = negative ? -static_cast<__int128>(num) : num;
  __int128 scaled = n * 1000000;
  __int128 q = scaled / den, rem = scaled % den;
  if (2 * rem >= den) ++q;
  __int128 whole = q / 1000000, frac = q % 1000000;
  std::string digits = std::to_string(static_cast<long long>(frac));
  std::string out = (negative && q != 0 ? "-" : "") + std::to_string(static_cast<long long>(whole)) + "." +
                    std::string(6 - digits.size(), '0') + digits;
  return out;
}

std::string render_svg(const LeveledLattice& l, const Diagram& d) {
  const Rational scale(40), margin(30);
  Rational minx(0), maxx(0), maxy(0);
  for (const auto& p : d.coords) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    maxy = std::max(maxy, p.y);
  }
  auto sx = [&](const Rational& x) { return decimal6(x * scale); };
  auto sy = [&](const Rational& y) { return decimal6(-y * scale); };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << decimal6(minx * scale - margin) << " "
      << decimal6(-maxy * scale - margin) << " " << decimal6((maxx - minx) * scale + margin * Rational(2)) << " "
      << decimal6(maxy * scale + margin * Rational(2)) << "\">\n";
  out << "<style>line{stroke:#000;stroke-width:1.5}line.steep{stroke:#b00;stroke-width:3}"
         "line.other{stroke:#888;stroke-dasharray:4 2}circle{fill:#fff;stroke:#000;stroke-width:1.5}"
         "text{font:11px sans-serif}</style>\n";
  out << "<g class=\"edges\">\n";
  for (const auto& ec : classify_edges(d)) {
    const Point &a = d.coords[ec.edge.first], &b = d.coords[ec.edge.second];
    out << "<line class=\"" << edge_class(ec.kind) << "\" data-lower=\"" << xml_escape(l.label(ec.edge.first))
        << "\" data-upper=\"" << xml_escape(l.label(ec.edge.second)) << "\" x1=\"" << sx(a.x) << "\" y1=\""
        << sy(a.y) << "\" x2=\"" << sx(b.x) << "\" y2=\"" << sy(b.y) << "\"/>\n";
  }
  out << "</g>\n<g class=\"elements\">\n";
  for (const auto& level : l.levels())
    for (ElementId x : level) {
      const Point& p = d.coords[x];
      out << "<circle class=\"element\" data-name=\"" << xml_escape(l.label(x)) << "\" cx=\"" << sx(p.x)
          << "\" cy=\"" << sy(p.y) << "\" r=\"4.000000\"/>\n";
      out << "<text x=\"" << decimal6(p.x * scale + Rational(7)) << "\" y=\"" << decimal6(-p.y * scale + Rational(4))
          << "\">" << xml_escape(l.label(x)) << "</text>\n";
    }
  out << "</g>\n</svg>\n";
  return out.str();
}

std::string render_tikz(const LeveledLattice& l, const Diagram& d) {
  std::ostringstream out;
  out << "\\begin{tikzpicture}[element/.style={circle,draw,fill=white,inner sep=1.5pt},"
         "normal/.style={},steep/.style={very thick},other/.style={dashed}]\n";
  for (const auto& ec : classify_edges(d)) {
    const Point &a = d.coords[ec.edge.first], &b = d.coords[ec.edge.second];
    out << "  \\draw[" << edge_class(ec.kind) << "] (" << decimal6(a.x) << "," << decimal6(a.y) << ") -- ("
        << decimal6(b.x) << "," << decimal6(b.y) << ");\n";
  }
  for (const auto& level : l.levels())
    for (ElementId x : level) {
      const Point& p = d.coords[x];
      out << "  \\node[element,label=right:{\\scriptsize " << tex_escape(l.label(x)) << "}] at (" << decimal6(p.x)
          << "," << decimal6(p.y) << ") {};\n";
    }
  out << "\\end{tikzpicture}\n";
  return out.str();
}

void save_universe(const Universe& u, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  Json members = Json::array();
  std::set<std::string> names;
  for (const auto& [code, m] : u.members) {
    std::string hex = code.hex();
    if (!names.insert(hex).second) throw std::runtime_error("code hash collision: " + hex);
    Json meta{{"code", hex}, {"rank", m.script.steps.size()}, {"script", script_to_json(m.script)}};
    write_text_file(dir / (hex + ".json"), dump(lattice_to_json(m.lattice, meta)));
    members.push_back(Json{{"hash", hex},
                           {"file", hex + ".json"},
                           {"elements", m.lattice.size()},
                           {"rank", m.script.steps.size()},
                           {"script", script_to_json(m.script)}});
  }
  Json index{{"version", 1},
             {"max_grid", {u.max_p, u.max_q}},
             {"max_rank", u.max_rank},
             {"count", u.members.size()},
             {"members", members}};
  write_text_file(dir / "index.json", dump(index));
}

}  // namespace slimrect
