// Copyright 2026 The sps-norm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "spsnorm/bundled_presets.hpp"
#include "spsnorm/errors.hpp"
#include "spsnorm/scenario.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;

struct Overrides {
  std::string out_dir;
  int jobs = 1;
  std::optional<double> epsilon;
  std::optional<int> max_dim;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw spsnorm::Error("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<spsnorm::ScenarioConfig> load(const std::string& text, const Overrides& o) {
  auto configs = spsnorm::parse_config(text);
  for (auto& c : configs) {
    if (o.epsilon) c.tolerances.epsilon = *o.epsilon;
    if (o.max_dim) c.max_dimension = *o.max_dim;
    try {
      c.validate();
    } catch (const spsnorm::ValidationError& e) {
      throw spsnorm::ParseError(fmt::format("scenario '{}': {}", c.name, e.what()), 0);
    }
  }
  return configs;
}

int run_all(const std::vector<spsnorm::ScenarioConfig>& configs, const Overrides& o) {
  if (!o.out_dir.empty()) fs::create_directories(o.out_dir);
  bool partial = false;
  for (const auto& config : configs) {
    fs::path path = config.output;
    if (!o.out_dir.empty() && path.is_relative()) path = fs::path(o.out_dir) / path;
    const auto table = spsnorm::run_scenario(config, {.jobs = o.jobs});
    spsnorm::emit_csv(table, path.string());
    std::size_t failed = 0;
    for (const auto& row : table.rows) failed += row.error ? 1 : 0;
    std::cerr << fmt::format("{}: {} rows, {} failed -> {}\n", config.name, table.rows.size(),
                             failed, path.string());
    partial = partial || failed > 0;
  }
  return partial ? kExitPartial : kExitOk;
}

const spsnorm::BundledPreset* find_preset(const std::string& name) {
  for (const auto& p : spsnorm::bundled_presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-photon-source N-norms from filtered photon correlations"};
  app.set_version_flag("--version", SPSNORM_VERSION);
  app.require_subcommand(1);

  Overrides o;
  std::string target;
  auto add_run_flags = [&o](CLI::App* sub) {
    sub->add_option("--out", o.out_dir, "Directory for the CSV outputs");
    sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--epsilon", o.epsilon, "Initial sensor coupling")->check(CLI::PositiveNumber);
    sub->add_option("--max-dim", o.max_dim, "Composite Hilbert-space cap")->check(CLI::PositiveNumber);
  };

  auto* run = app.add_subcommand("run", "Run every scenario of a config file");
  run->add_option("config", target, "Config file")->required();
  add_run_flags(run);

  auto* preset = app.add_subcommand("preset", "Run a bundled preset (fig1, fig2a, fig2b)");
  preset->add_option("name", target, "Preset name")->required();
  add_run_flags(preset);

  auto* validate = app.add_subcommand("validate", "Parse and check a config without running it");
  validate->add_option("config", target, "Config file")->required();
  validate->add_option("--epsilon", o.epsilon, "Initial sensor coupling");
  validate->add_option("--max-dim", o.max_dim, "Composite Hilbert-space cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  std::vector<spsnorm::ScenarioConfig> configs;
  try {
    if (*preset) {
      const auto* p = find_preset(target);
      if (p == nullptr) {
        std::string names;
        for (const auto& b : spsnorm::bundled_presets()) names += fmt::format(" {}", b.name);
        std::cerr << fmt::format("unknown preset '{}'; available:{}\n", target, names);
        return kExitConfig;
      }
      configs = load(std::string(p->text), o);
    } else {
      configs = load(read_file(target), o);
    }
  } catch (const spsnorm::ParseError& e) {
    std::cerr << fmt::format("{}: {}\n", target, e.what());
    return kExitConfig;
  } catch (const spsnorm::Error& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  }

  if (*validate) {
    for (const auto& c : configs) std::cout << fmt::format("{}: ok ({})\n", c.name, c.preset);
    return kExitOk;
  }

  try {
    return run_all(configs, o);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  }
}
