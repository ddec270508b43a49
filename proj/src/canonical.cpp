#include "slimrect/canonical.hpp"

#include <algorithm>
#include <cstdio>

namespace slimrect {

namespace {

void put(std::string& out, std::size_t v) {
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>(v & 0xff));
}

CanonicalCode encode(const LeveledLattice& l, bool reflected) {
  const auto& levels = l.levels();
  auto index_in_level = [&](ElementId x) {
    std::size_t k = l.position(x);
    return reflected ? levels[l.height(x)].size() - 1 - k : k;
  };
  CanonicalCode code;
  put(code.bytes, levels.size());
  for (const auto& level : levels) put(code.bytes, level.size());
  for (const auto& level : levels) {
    for (std::size_t k = 0; k < level.size(); ++k) {
      ElementId x = reflected ? level[level.size() - 1 - k] : level[k];
      auto ups = l.up_covers(x);
      put(code.bytes, ups.size());
      std::vector<std::size_t> idx;
      for (ElementId y : ups) idx.push_back(index_in_level(y));
      std::sort(idx.begin(), idx.end());
      for (auto v : idx) put(code.bytes, v);
    }
  }
  return code;
}

}  // namespace

std::uint64_t CanonicalCode::hash() const {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string CanonicalCode::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

CanonicalCode planar_code(const LeveledLattice& l) { return encode(l, false); }
CanonicalCode mirror_code(const LeveledLattice& l) { return encode(l, true); }

CanonicalCode canonical_code(const LeveledLattice& l) { return std::min(planar_code(l), mirror_code(l)); }

LeveledLattice mirror(const LeveledLattice& l) {
  RawLattice raw = l.raw();
  for (auto& level : raw.levels) std::reverse(level.begin(), level.end());
  return make_lattice(raw);
}

}  // namespace slimrect
