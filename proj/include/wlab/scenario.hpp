#ifndef WLAB_SCENARIO_HPP
#define WLAB_SCENARIO_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace wlab {

/// A canned end-to-end experiment. Parameters default to the corresponding
/// figure's caption values; the map only carries overrides (including the
/// grid keys n, x_min, x_max).
struct ScenarioSpec {
  std::string name;  // free_packet | ho_eigenstate | anharmonic_ground | barrier
  std::map<std::string, double> params;
  std::filesystem::path out_dir;
};

/// Parses a plain-text key=value config ('#' starts a comment). The key
/// "name" selects the scenario; every other key must be numeric.
std::pair<std::optional<std::string>, std::map<std::string, double>>
parse_scenario_config(const std::filesystem::path& path);

/// Runs the scenario, writes every artifact plus manifest.json into
/// spec.out_dir, and returns the manifest. All artifacts are deterministic;
/// the only wall-clock content is the manifest's generated_at stamp.
nlohmann::json run_scenario(const ScenarioSpec& spec);

}  // namespace wlab

#endif  // WLAB_SCENARIO_HPP
