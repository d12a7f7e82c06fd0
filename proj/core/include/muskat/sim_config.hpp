// Strict key = value configuration for simulation runs.  Unknown sections or
// keys are errors, and validation reports every violation at once.
#pragma once

#include <string>
#include <vector>

#include "muskat/evolution.hpp"
#include "muskat/scenarios.hpp"

namespace muskat {

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const { return problems_; }

  private:
    std::vector<std::string> problems_;
};

struct SimConfig {
    ScenarioSpec scenario;
    int n = 256;
    RunParams params;
    std::string output_dir = "muskat-run";
};

/// Parse and fully validate a config document (INI-style sections of
/// key = value lines, '#' comments).  Throws ConfigError carrying the list of
/// all violations.
SimConfig parse_config(const std::string& text);

SimConfig load_config_file(const std::string& path);

}  // namespace muskat
