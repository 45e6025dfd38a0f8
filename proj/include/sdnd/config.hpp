#ifndef SDND_CONFIG_HPP
#define SDND_CONFIG_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "sdnd/engine.hpp"

namespace sdnd {

/// Reads a run config document. Unknown keys are errors; every problem is
/// appended to `errors` rather than thrown. Fields absent from the document
/// keep the values already in `cfg`.
void apply_config_json(const nlohmann::json& doc, RunConfig& cfg, std::vector<std::string>& errors);

/// Fully resolved config, rationals as exact strings. Round-trips through
/// apply_config_json.
nlohmann::json config_to_json(const RunConfig& cfg);

nlohmann::json summary_to_json(const RunSummary& summary);

}  // namespace sdnd

#endif  // SDND_CONFIG_HPP
