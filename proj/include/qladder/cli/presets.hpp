#pragma once

// Named figure parameter sets. Each preset is a row of
// panels; each panel is one general-model curve plus its reference overlays.

#include <string>
#include <vector>

#include "qladder/limit_models.hpp"
#include "qladder/model_params.hpp"

namespace qladder::cli {

struct Panel {
  std::string id;     ///< e.g. "beta05-a20"; also accepted by `dynamics --preset`
  std::string label;  ///< legend / title text
  ModelParams params;
  std::vector<LimitSpec> overlays;
};

struct Preset {
  std::string name;
  double t_max = 0.0;
  int n_steps = 2000;
  std::vector<Panel> panels;
};

const std::vector<std::string>& preset_names();

/// Throws std::out_of_range for unknown names.
Preset resolve_preset(const std::string& name);

/// Looks a panel up by id across all presets; throws std::out_of_range.
std::pair<Preset, Panel> resolve_panel(const std::string& id);

}  // namespace qladder::cli
