#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <string>

#include "CLI11.hpp"
#include "yp/cli.hpp"

int main(int argc, char** argv) {
  // Logs go to stderr so that stdout stays free for piping.
  auto logger = spdlog::stderr_color_mt("yp");
  logger->set_pattern("%^[%l]%$ %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* lvl = std::getenv("YP_LOG")) {
    const auto level = spdlog::level::from_str(lvl);
    if (level == spdlog::level::off && std::string(lvl) != "off")
      spdlog::warn("YP_LOG: unknown level '{}' (use trace, debug, info, warn, error, off)", lvl);
    else
      spdlog::set_level(level);
  }

  CLI::App app{"yp: Young differential equations with power-type coefficients"};
  app.require_subcommand(1);
  yp::cli::CommandLine cl;
  std::string config;
  std::uint64_t seed = 0;
  const char* help[] = {
      "sample fBm drivers (CSV/JSON, optionally YPGP binary)",
      "solve by the Lamperti transform, certify and check the fixed point",
      "averaged Riemann sums against the Lamperti increment",
      "multidimensional Young–Euler solve with ladder diagnostics",
      "ensemble of 1-D solves with pooled ladder fits",
      "Hölder norm and roughness modulus of a driver",
      "check the integrability certificate of a Lamperti solution",
  };
  for (std::size_t i = 0; i < yp::cli::commands().size(); ++i) {
    auto* sub = app.add_subcommand(yp::cli::commands()[i], help[i]);
    sub->add_option("--config", config, "key=value config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "single seed (overrides `seeds`)");
    sub->add_option("--jobs", cl.jobs, "parallel seeds")->check(CLI::PositiveNumber);
    sub->add_option("--out-dir", cl.out_dir, "output directory");
    sub->add_option("--format", cl.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--set", cl.overrides, "key=value override (repeatable)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : yp::cli::kConfigError;
  }
  for (auto* sub : app.get_subcommands()) {
    cl.command = sub->get_name();
    if (sub->count("--config")) cl.config_path = config;
    if (sub->count("--seed")) cl.seed = seed;
  }
  return yp::cli::run(cl);
}
