#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "axisym/stepper.hpp"
#include "axisym/study.hpp"

namespace axisym {

struct Config {
  RunConfig run;
  StudySpec study;
};

// "key = value" lines; '#' starts a comment. Keys are the RunConfig and
// InitialDataParams field names plus study_p, study_times, study_base_n,
// study_base_m and study_reference (next | finest). Lists are comma
// separated; a number may carry a "*pi" suffix. Errors carry the line.
Config parse_config(std::istream& is);
Config load_config(const std::filesystem::path& path);

// Throws ConfigError(line, ...) on an unknown key or a malformed value.
void apply_config_key(Config& cfg, const std::string& key, const std::string& value,
                      int line = 0);

// Every run key as "key = value" lines that parse back to the same config.
std::string echo_config(const RunConfig& cfg);

}  // namespace axisym
