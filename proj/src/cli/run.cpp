#include "cli/run.hpp"

#include "cli/commands.hpp"
#include "cli/output.hpp"
#include "weyl/error.hpp"
#include "weyl/kernels.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <iostream>
#include <map>

namespace weyl::cli {

namespace {

int report(const char* kind, const std::exception& e, int code) {
  std::cerr << "weyl_lab: " << kind << ": " << e.what() << "\n";
  return code;
}

int guarded(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const ResourceError& e) {
    return report("resource limit", e, 3);
  } catch (const PreconditionError& e) {
    return report("config error", e, 2);
  } catch (const DomainError& e) {
    return report("config error", e, 2);
  } catch (const NumericError& e) {
    return report("numeric failure", e, 1);
  } catch (const Error& e) {
    return report("error", e, 1);
  } catch (const std::filesystem::filesystem_error& e) {
    return report("i/o error", e, 1);
  }
}

void run_and_write(const std::string& sub, const Json& config, const std::filesystem::path& out) {
  // Everything is computed before the first file is written.
  const auto result = execute(sub, config);
  const auto manifest = write_outputs(out, sub, config, result);
  std::cout << manifest.string() << "\n";
}

}  // namespace

int run(int argc, char** argv) {
  if (const char* env = std::getenv("WEYL_LAB_THREADS")) {
    const std::string s(env);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || std::stoi(s) < 1) {
      std::cerr << "weyl_lab: config error: WEYL_LAB_THREADS must be a positive integer\n";
      return 2;
    }
  }
  kernels::configure_threads_from_env();

  CLI::App app{"Two-point Weyl law experiments on flat tori and the round sphere"};
  app.require_subcommand(1);
  std::string out_dir = ".";
  std::map<std::string, std::map<std::string, std::string>> values;
  for (const auto& spec : command_specs()) {
    auto* sub = app.add_subcommand(spec.name, spec.description);
    auto& store = values[spec.name];
    for (const auto& opt : spec.options) {
      store[opt.key] = opt.default_value;
      sub->add_option("--" + opt.key, store[opt.key], opt.help)->capture_default_str();
    }
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
  }
  std::string manifest_path;
  auto* replay = app.add_subcommand("replay", "rerun a manifest and rewrite its outputs");
  replay->add_option("manifest", manifest_path, "manifest JSON written by an earlier run")->required();
  replay->add_option("--out", out_dir, "output directory (default: the manifest's directory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (replay->parsed()) {
    return guarded([&] {
      const Json m = read_manifest(manifest_path);
      const std::filesystem::path dir =
          replay->count("--out") ? std::filesystem::path(out_dir) : std::filesystem::path(manifest_path).parent_path();
      run_and_write(m["subcommand"].get<std::string>(), m["full_config"], dir.empty() ? "." : dir);
    });
  }
  for (const auto& spec : command_specs()) {
    auto* sub = app.get_subcommand(spec.name);
    if (!sub->parsed()) continue;
    Json config = Json::object();
    for (const auto& opt : spec.options) config[opt.key] = values[spec.name][opt.key];
    return guarded([&] { run_and_write(spec.name, config, out_dir); });
  }
  return 2;
}

}  // namespace weyl::cli
