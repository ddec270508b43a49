#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "slimrect/diagram.hpp"
#include "slimrect/enumerate.hpp"
#include "slimrect/fork.hpp"
#include "slimrect/lattice.hpp"
#include "slimrect/report.hpp"

namespace slimrect {

using Json = nlohmann::ordered_json;

/// JSON that does not match the expected layout. path() is a JSON-pointer
/// style location such as "/covers/3/1".
class SchemaError : public std::invalid_argument {
 public:
  SchemaError(std::string path, const std::string& what);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct LatticeFile {
  LeveledLattice lattice;
  Json meta = Json::object();
};

// Lattice files: {"version":1,"levels":[[name,...],...],"covers":[[lo,hi],...],"meta":{...}}
Json lattice_to_json(const LeveledLattice& l, const Json& meta = Json::object());
/// Throws SchemaError, or InvalidLattice for a well-formed file that is not
/// a planar lattice.
LatticeFile lattice_from_json(const Json& j);

// Script files: {"version":1,"grid":[p,q],"steps":[{"o_height":h,"o_index":k,"c_index":j},...]}
Json cell_ref_to_json(const CellRef& ref);
Json script_to_json(const ForkScript& s);
ForkScript script_from_json(const Json& j);

/// Parses text; syntax errors become SchemaError at "/".
Json parse_json(const std::string& text);
Json read_json_file(const std::filesystem::path& path);
/// Two-space indentation and a trailing newline.
std::string dump(const Json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Witness ids are shown as labels of l when given.
Json report_to_json(const VerificationReport& r, const LeveledLattice* l = nullptr);
std::string report_to_text(const VerificationReport& r, const LeveledLattice* l = nullptr);

/// Coordinates keyed by label, rationals as "num/den" strings.
Json diagram_to_json(const LeveledLattice& l, const Diagram& d);
Diagram diagram_from_json(const LeveledLattice& l, const Json& j);
std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);  // throws std::invalid_argument

/// Fixed six-digit decimal, rounded half away from zero.
std::string decimal6(const Rational& r);

/// Edges carry class "normal", "steep" or "other".
std::string render_svg(const LeveledLattice& l, const Diagram& d);
std::string render_tikz(const LeveledLattice& l, const Diagram& d);

/// One lattice file per member named <code hash>.json, plus index.json.
void save_universe(const Universe& u, const std::filesystem::path& dir);

}  // namespace slimrect
