#include "rgbwforge/scene_set.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "rgbwforge/error.hpp"
#include "rgbwforge/keyvalue.hpp"
#include "text_util.hpp"

namespace rgbwforge {

namespace fs = std::filesystem;

std::string gain_tag(double gain_db) { return text::exact(gain_db) + "db"; }

void write_scene_set(const SceneSet& set) {
  fs::create_directories(set.root);
  {
    std::ofstream meta(set.root / "sceneset.meta", std::ios::binary);
    if (!meta) throw IoError("cannot write scene set metadata in '" + set.root.string() + "'");
    meta << "gains=";
    for (std::size_t i = 0; i < set.gains.size(); ++i) meta << (i ? "," : "") << text::exact(set.gains[i]);
    meta << '\n';
  }
  std::ofstream csv(set.root / "scenes.csv", std::ios::binary);
  if (!csv) throw IoError("cannot write scene manifest in '" + set.root.string() + "'");
  csv << "id,scene,gain_db,dbinb,dbinc,gt\n";
  for (const SceneEntry& e : set.entries) {
    csv << e.id << ',' << e.scene << ',' << text::exact(e.gain_db) << ',' << e.dbinb.generic_string()
        << ',' << e.dbinc.generic_string() << ',' << (e.gt ? e.gt->generic_string() : "") << '\n';
  }
}

SceneSet load_scene_set(const fs::path& root) {
  SceneSet set;
  set.root = root;
  const KeyValues meta = KeyValues::load((root / "sceneset.meta").string());
  meta.reject_unknown({"gains"});
  for (auto part : text::split(meta.require("gains"), ',')) {
    const auto g = text::to_double(part);
    if (!g) throw ParseError("sceneset.meta: gains must be numbers");
    set.gains.push_back(*g);
  }

  std::ifstream csv(root / "scenes.csv");
  if (!csv) throw IoError("cannot open '" + (root / "scenes.csv").string() + "'");
  std::string line;
  std::size_t line_no = 0;
  std::set<std::string> ids;
  bool header = false;
  while (std::getline(csv, line)) {
    ++line_no;
    const auto body = text::trim(line);
    if (body.empty()) continue;
    const auto f = text::split(body, ',');
    if (!header) {
      if (body != "id,scene,gain_db,dbinb,dbinc,gt") {
        throw ParseError("scenes.csv: expected header id,scene,gain_db,dbinb,dbinc,gt", line_no);
      }
      header = true;
      continue;
    }
    if (f.size() != 6) throw ParseError("scenes.csv: expected 6 fields", line_no);
    SceneEntry e;
    e.id = std::string(f[0]);
    e.scene = std::string(f[1]);
    const auto g = text::to_double(f[2]);
    if (e.id.empty() || !g) throw ParseError("scenes.csv: invalid id or gain", line_no);
    e.gain_db = *g;
    if (std::find(set.gains.begin(), set.gains.end(), e.gain_db) == set.gains.end()) {
      throw ParseError("scenes.csv: gain " + text::exact(e.gain_db) + " is not declared", line_no);
    }
    if (!ids.insert(e.id).second) throw ParseError("scenes.csv: duplicate id '" + e.id + "'", line_no);
    e.dbinb = std::string(f[3]);
    e.dbinc = std::string(f[4]);
    if (!f[5].empty()) e.gt = fs::path(std::string(f[5]));
    for (const fs::path* p : {&e.dbinb, &e.dbinc, e.gt ? &*e.gt : nullptr}) {
      if (p && !fs::exists(root / *p)) {
        throw IoError("scene '" + e.id + "' references missing file '" + (root / *p).string() + "'");
      }
    }
    set.entries.push_back(std::move(e));
  }
  if (!header) throw ParseError("scenes.csv: empty manifest");
  return set;
}

}  // namespace rgbwforge
