#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "qforge/version.hpp"

namespace {

qf::Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) qf::raise(qf::Errc::ConfigError, "cannot read config: " + path);
  qf::Json j = qf::Json::parse(in, nullptr, false);
  if (j.is_discarded())
    qf::raise(qf::Errc::ConfigError, "config is not valid JSON: " + path);
  return j;
}

int env_verbosity() {
  const char* v = std::getenv("QF_LOG");
  if (!v) return 0;
  return std::atoi(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rational-point toolkit for split elliptic curves"};
  app.set_version_flag("--version", qf::kVersion);
  app.require_subcommand(1);

  const std::vector<std::string> names{"forge",   "scan",   "density", "avoid",
                                       "certify", "growth", "convert"};
  struct Opts {
    std::string config_path;
    std::string out_path;
    unsigned threads = 1;
    std::optional<qf::u64> seed;
  };
  std::map<std::string, Opts> opts;
  for (const auto& name : names) {
    CLI::App* sub = app.add_subcommand(name);
    Opts& o = opts[name];
    sub->add_option("--config", o.config_path, "JSON config path")->required();
    sub->add_option("--out", o.out_path, "output path (default stdout)");
    sub->add_option("--threads", o.threads, "worker threads for sweeps");
    sub->add_option("--seed", [&o](const CLI::results_t& res) {
      o.seed = std::stoull(res[0]);
      return true;
    }, "seed override (64-bit)");
  }

  CLI11_PARSE(app, argc, argv);

  for (const auto& name : names) {
    if (!app.got_subcommand(name)) continue;
    const Opts& o = opts[name];
    qf::cli::Invocation inv;
    inv.command = name;
    inv.out_path = o.out_path;
    inv.threads = o.threads;
    inv.seed_override = o.seed;
    inv.verbosity = env_verbosity();
    try {
      inv.config = load_config(o.config_path);
    } catch (const qf::Error& e) {
      qf::Json err{{"error",
                    {{"code", qf::errc_name(e.code())}, {"message", e.what()}}}};
      std::cout << err.dump(2) << "\n";
      return 2;
    }
    return qf::cli::run_command(inv);
  }
  return 2;
}
