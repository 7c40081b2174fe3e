#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace rgbwforge {

struct SceneEntry {
  std::string id;     ///< unique per entry, "<scene>_<gain>db"
  std::string scene;  ///< source scene name
  double gain_db = 0.0;
  std::filesystem::path dbinb;  ///< relative to the set root
  std::filesystem::path dbinc;
  std::optional<std::filesystem::path> gt;
};

/// A generated data set on disk.
///
/// The root holds `scenes.csv` (header id,scene,gain_db,dbinb,dbinc,gt; an
/// empty gt field means no ground truth) and `sceneset.meta` (key gains, the
/// declared comma-separated gain list).
struct SceneSet {
  std::filesystem::path root;
  std::vector<double> gains;
  std::vector<SceneEntry> entries;

  std::filesystem::path resolve(const std::filesystem::path& relative) const { return root / relative; }
};

/// Validates unique ids, existing files and gains within the declared set.
SceneSet load_scene_set(const std::filesystem::path& root);
void write_scene_set(const SceneSet& set);

std::string gain_tag(double gain_db);  ///< 24 -> "24db", 4.5 -> "4.5db"

}  // namespace rgbwforge
