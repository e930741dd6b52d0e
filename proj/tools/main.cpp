// hermflow command-line tool. Every subcommand writes its artifacts to the
// output directory and prints one JSON summary line on stdout.
//
// Exit codes: 0 success, 2 validation failure (bad input or a failed check),
// 3 numerical non-convergence, 64 usage error.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "hermflow/error.hpp"

using hermflow::Json;
using namespace hermflow::cli;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(),
                     [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

std::string scalar_token(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// Merges a flat JSON config into the argument list. Keys are long option
// names; "command" names the subcommand. Keys given on the command line are
// skipped, as is "out" when HERMFLOW_OUT_DIR is set.
std::vector<std::string> apply_config(std::vector<std::string> args, const std::vector<Command>& commands) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path);
  const Json cfg = Json::parse(in, nullptr, false);
  if (!cfg.is_object()) throw UsageError("config " + path + " is not a JSON object");

  const auto is_command = [&](const std::string& a) {
    return std::any_of(commands.begin(), commands.end(), [&](const Command& c) { return c.app->get_name() == a; });
  };
  if (std::none_of(args.begin(), args.end(), is_command)) {
    if (!cfg.contains("command")) throw UsageError("no subcommand on the command line or in " + path);
    args.insert(args.begin(), cfg["command"].get<std::string>());
  }
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command" || key == "config") continue;
    if (key == "out" && std::getenv("HERMFLOW_OUT_DIR") != nullptr) continue;
    const std::string flag = "--" + key;
    if (has_flag(args, flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_array()) {
      args.push_back(flag);
      for (const auto& v : value) args.push_back(scalar_token(v));
    } else if (!value.is_null()) {
      args.push_back(flag);
      args.push_back(scalar_token(value));
    }
  }
  return args;
}

Json typed(const std::string& s) {
  const Json j = Json::parse(s, nullptr, false);
  return j.is_discarded() ? Json(s) : j;
}

// Effective option values of the parsed run; feeding this file back through
// --config reproduces the run.
Json effective_config(const CLI::App& root, const CLI::App& sub) {
  Json cfg{{"command", sub.get_name()}};
  auto add = [&](const CLI::Option* opt) {
    const auto name = opt->get_single_name();
    if (name == "help" || name == "config" || name == "out") return;
    if (opt->get_items_expected_max() == 0) {
      cfg[name] = opt->count() > 0;
      return;
    }
    const bool many = opt->get_expected_max() > 1;
    if (opt->count() == 0) {
      if (!opt->get_default_str().empty()) cfg[name] = typed(opt->get_default_str());
      return;
    }
    if (many) {
      Json arr = Json::array();
      for (const auto& r : opt->results()) arr.push_back(typed(r));
      cfg[name] = arr;
    } else {
      cfg[name] = typed(opt->results().back());
    }
  };
  for (const auto* opt : root.get_options()) add(opt);
  for (const auto* opt : sub.get_options()) add(opt);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solenoidal Hermite spectral toolkit", "hermflow"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  std::string config, out;
  unsigned threads = 0;
  std::uint64_t seed = 0;
  app.add_option("--config", config, "Flat JSON file of option values; command-line flags win");
  app.add_option("--out", out, "Artifact directory (default: $HERMFLOW_OUT_DIR, else hermflow-out)");
  app.add_option("--threads", threads, "Worker cap for parallel steps, 0 = all cores");
  app.add_option("--seed", seed, "Seed for randomized checks");
  auto commands = register_commands(app);
  for (auto& c : commands) c.app->fallthrough();

  try {
    auto args = apply_config(std::vector<std::string>(argv + 1, argv + argc), commands);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  const auto it = std::find_if(commands.begin(), commands.end(), [](const Command& c) { return c.app->parsed(); });
  const Command& cmd = *it;
  Context ctx;
  if (!out.empty())
    ctx.out_dir = out;
  else if (const char* env = std::getenv("HERMFLOW_OUT_DIR"))
    ctx.out_dir = env;
  else
    ctx.out_dir = "hermflow-out";
  ctx.threads = threads;
  ctx.seed = seed;

  Json summary{{"schema", "hermflow/1"}, {"command", cmd.app->get_name()}};
  int rc = 0;
  try {
    ctx.write(cmd.app->get_name() + ".config.json", effective_config(app, *cmd.app));
    const Json result = cmd.run(ctx);
    summary.update(result);
    if (!result.value("ok", false)) rc = kExitValidation;
  } catch (const hermflow::ValidationError& e) {
    summary["ok"] = false;
    summary["error"] = Json{{"kind", "validation"}, {"message", e.what()}};
    rc = kExitValidation;
  } catch (const hermflow::ConvergenceError& e) {
    summary["ok"] = false;
    summary["error"] = Json{{"kind", "convergence"}, {"message", e.what()}, {"achieved", e.achieved()}};
    rc = kExitConvergence;
  } catch (const std::exception& e) {
    summary["ok"] = false;
    summary["error"] = Json{{"kind", "internal"}, {"message", e.what()}};
    rc = 1;
  }
  summary["artifacts"] = ctx.artifacts;
  std::cout << summary.dump() << "\n";
  return rc;
}
