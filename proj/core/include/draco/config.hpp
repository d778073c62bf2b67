#pragma once

#include <map>
#include <string>
#include <vector>

#include "draco/harness.hpp"

namespace draco {

// Flat `key = value` config text with dotted sections (code.P, attack.kind,
// train.*, out.dir). '#' starts a comment. Unknown keys are a hard error.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> parse_config_file(const std::string& path);

// "key=value" pairs layered on top of the file values.
void apply_overrides(std::map<std::string, std::string>& values,
                     const std::vector<std::string>& overrides);

// Validates every key against the schema and builds the experiment config.
// Seed precedence is handled by the caller (flag > DRACO_SEED > file).
ExperimentConfig config_from_values(const std::map<std::string, std::string>& values);

// The full key set, for diagnostics.
std::vector<std::string> known_config_keys();

}  // namespace draco
