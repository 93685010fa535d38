// Command-line front end. Parses flags, merges them over an optional JSON
// config file, runs the command and writes its artifacts to --out.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "qcopies/commands.hpp"
#include "qcopies/errors.hpp"

namespace {

std::string flag_name(std::string key) {
  for (auto& c : key)
    if (c == '_') c = '-';
  return "--" + key;
}

qcopies::Json read_config(const std::string& path) {
  if (path.empty()) return nullptr;
  std::ifstream in(path);
  if (!in) throw qcopies::ConfigError("cannot open config file " + path);
  try {
    return qcopies::Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw qcopies::ConfigError("config file " + path + ": " + e.what());
  }
}

void write_outputs(const qcopies::CommandOutput& out, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  for (const auto& [name, contents] : out.files) {
    std::ofstream f(fs::path(dir) / name, std::ios::binary);
    if (!f) throw qcopies::ConfigError("cannot write " + (fs::path(dir) / name).string());
    f << contents;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Copy budgeting, simulation and tomography for multi-qubit cat-state fidelity"};
  app.require_subcommand(1);

  struct Sub {
    CLI::App* app;
    std::map<std::string, std::string> values;
    bool coverage = false;
    std::string config, out;
  };
  std::map<std::string, Sub> subs;
  for (const auto& name : qcopies::command_names()) {
    auto& s = subs[name];
    s.app = app.add_subcommand(name, "run the " + name + " command");
    s.app->set_help_flag("--help", "print this help message and exit");
    s.app->add_option("--config", s.config, "JSON config file (flags override it)");
    s.app->add_option("--out", s.out, "directory for CSV/JSON artifacts");
    const auto defaults = qcopies::default_config(name);
    for (const auto& [key, def] : defaults.items()) {
      if (key == "coverage") {
        s.app->add_flag("--coverage", s.coverage, "run the coverage sweep");
        continue;
      }
      const std::string hint = def.is_null() ? "" : " (default " + def.dump() + ")";
      s.app->add_option(flag_name(key), s.values[key], key + hint);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  for (auto& [name, s] : subs) {
    if (!s.app->parsed()) continue;
    try {
      qcopies::Json flags = qcopies::Json::object();
      for (const auto& [key, value] : s.values)
        if (s.app->count(flag_name(key)) > 0) flags[key] = value;
      if (s.coverage) flags["coverage"] = true;
      const auto cfg = qcopies::merge_config(name, read_config(s.config), flags);
      const auto out = qcopies::run_command(name, cfg);
      std::cout << out.summary;
      if (!s.out.empty()) write_outputs(out, s.out);
      return 0;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return qcopies::exit_code_for(e);
    }
  }
  return 1;
}
