#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "sepfaces/cli.hpp"

namespace {

std::uint64_t env_seed() {
  const char* s = std::getenv("SEPFACES_SEED");
  if (s == nullptr || *s == '\0') return 0;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != std::string(s).size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw sepfaces::ConfigError(std::string("SEPFACES_SEED is not an unsigned integer: '") + s + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Face dimensions, witnesses and product-vector checks for separable states"};
  app.require_subcommand(1);

  sepfaces::RunConfig cfg;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool no_zero_set = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "root seed (default: $SEPFACES_SEED or 0)");
    sub->add_option("--format", cfg.format, "json, csv or md")->check(CLI::IsMember({"json", "csv", "md"}));
    sub->add_option("--out", out, "write the report here instead of stdout");
    sub->add_option("--threads", cfg.threads, "worker threads (0: hardware)");
    sub->add_option("--tol", cfg.tol, "assertion tolerance override");
  };

  auto* faces = app.add_subcommand("faces", "face-dimension table against the closed formulas");
  common(faces);
  faces->add_option("--shape", cfg.shapes, "shapes like 2x3 (repeatable)");
  faces->add_option("--samples", cfg.samples, "product vectors per hyperplane (>= 3d^2)");

  auto* witness = app.add_subcommand("witness", "W_b family report");
  common(witness);
  witness->add_option("--b", cfg.b, "family parameter in [0, inf]");
  witness->add_option("--grid", cfg.grid, "comma list of b values or log:N");
  witness->add_option("--starts", cfg.starts, "see-saw starts");
  witness->add_option("--zero-starts", cfg.zero_starts, "starts for zero-set recovery");
  witness->add_flag("--no-zero-set", no_zero_set, "skip zero-set recovery");
  witness->add_option("--trials", cfg.trials, "random product vectors for the b = 1 identities");

  auto* catalog = app.add_subcommand("catalog", "named states, the full boundary state and its certificate");
  common(catalog);
  catalog->add_option("--shape", cfg.shapes, "shapes to instantiate the named states on");
  catalog->add_option("--starts", cfg.starts, "see-saw starts for the certificate");

  auto* enumerate = app.add_subcommand("enumerate", "product vectors in generic 2xm subspaces");
  common(enumerate);
  enumerate->add_option("--shape", cfg.shapes, "2xm shapes (repeatable)");
  enumerate->add_option("--trials", cfg.trials, "random subspaces per shape");
  enumerate->add_option("--input", cfg.input, "JSON subspace {shape, basis} to enumerate instead");

  auto* cyclic = app.add_subcommand("cyclic", "cyclic inequality sampling");
  common(cyclic);
  cyclic->add_option("--trials", cfg.trials, "random samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.seed = seed ? *seed : env_seed();
    cfg.zero_set = !no_zero_set;
    const sepfaces::Report report = sepfaces::run_command(cfg);
    const std::string text = sepfaces::render(report, cfg.format);
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out);
      if (!f) throw sepfaces::ConfigError("cannot write " + out);
      f << text;
    }
    for (const auto& failure : report.failures) std::cerr << "FAIL: " << failure << "\n";
    return report.pass() ? 0 : 1;
  } catch (const sepfaces::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
