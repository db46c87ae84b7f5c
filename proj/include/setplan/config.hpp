#pragma once
// Experiment configuration as flat key=value pairs.
//
// A run is described by an optional config file plus command-line
// --key=value overrides (later entries win).  Unknown keys, malformed
// values, and option combinations that contradict the chosen agent kind
// (for example a bottleneck size for the full-set agent) are rejected at
// parse time rather than silently ignored.

#include <string>
#include <utility>
#include <vector>

#include "setplan/train.hpp"

namespace setplan::cfg {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// "key = value" lines; '#' starts a comment; blank lines ignored.
KeyValues read_config_file(const std::string& path);

// Arguments of the form --key=value (or --key value).
KeyValues parse_cli(const std::vector<std::string>& args);

// Apply entries in order onto defaults and validate the result.
train::TrainConfig build_config(const KeyValues& entries);

// Echo a config as key=value lines (reparseable).
std::string serialize(const train::TrainConfig& c);

}  // namespace setplan::cfg
