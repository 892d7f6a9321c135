#include "entroloss/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace entroloss;
  CLI::App app{"entroloss: entropy-type discontinuity jumps, bounds and suites"};
  app.require_subcommand(1);

  std::string config_path;
  std::int64_t seed = -1;
  std::string out = "entroloss_out";
  std::string format = "both";
  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration");
    sub->add_option("--seed", seed, "seed (overrides the config)")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", out, "output directory");
    sub->add_option("--format", format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));
  };
  common(app.add_subcommand("quantity", "evaluate one quantity on a state, channel or Hamiltonian"));
  common(app.add_subcommand("sequence", "dj estimates along a built-in family"));
  common(app.add_subcommand("suite", "run bound suites and write reports"));
  common(app.add_subcommand("report", "consolidate suite reports into a summary"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::config_error;
  }

  cli::Options o;
  o.command = app.get_subcommands().front()->get_name();
  o.out = out;
  if (seed >= 0) o.seed = static_cast<std::uint64_t>(seed);
  try {
    o.format = report::parse_format(format);
    if (!config_path.empty()) o.config = cli::load_config(config_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::config_error;
  }
  if (o.command == "quantity" && config_path.empty()) {
    std::cerr << "error: ConfigError: quantity needs --config\n";
    return cli::config_error;
  }
  return cli::run(std::move(o), std::cout, std::cerr);
}
