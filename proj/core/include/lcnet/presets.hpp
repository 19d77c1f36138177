#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace lcnet {

struct PresetInfo {
  std::string name;
  std::string description;
};

/// Built-in experiment configs, one per benchmark operator and input/output
/// setting.
const std::vector<PresetInfo>& presets();

/// Config document for a preset; throws std::invalid_argument if unknown.
nlohmann::json preset_config(std::string_view name);

}  // namespace lcnet
