#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hermflow/serialize.hpp"

namespace hermflow::cli {

struct Context {
  std::filesystem::path out_dir;
  unsigned threads = 0;
  std::uint64_t seed = 0;
  Json artifacts = Json::array();

  /// Writes out_dir/name and records it.
  void write(const std::string& name, const std::string& content);
  void write(const std::string& name, const Json& j) { write(name, j.dump(2) + "\n"); }
};

/// Each run returns the summary fields; "ok" must be set.
struct Command {
  CLI::App* app = nullptr;
  std::function<Json(Context&)> run;
};

std::vector<Command> register_commands(CLI::App& app);

}  // namespace hermflow::cli
