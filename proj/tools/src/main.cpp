#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace weaktile::cli;

int main(int argc, char** argv) {
  CLI::App app{"weaktile: exact tiling, spectrality and weak tiling certificates"};
  app.require_subcommand(1);

  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  app.add_option("--config", config_file, "flat key = value file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "sampling seed (default 0)");
  app.add_option("--workers", workers, "sweep worker threads");

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "build the instance at (p, q) and write its files");
  construct->add_option("--p", ca.p)->required();
  construct->add_option("--q", ca.q)->required();
  auto* bfile = construct->add_option("--b-file", ca.b_file, "set file for B (sibling .spectrum is used if present)");
  construct->add_flag("--b-search", "search for B (the default)")->excludes(bfile);
  construct->add_option("--out", ca.out, "output directory");

  CheckArgs ka;
  auto* check = app.add_subcommand("check", "decide a property of a set file");
  check->add_option("property", ka.property)->required()->check(CLI::IsMember({"tile", "spectral", "pdtile"}));
  check->add_option("set-file", ka.set_file)->required()->check(CLI::ExistingFile);
  check->add_option("--budget", ka.budget, "search nodes");
  check->add_option("--out", ka.out, "output directory");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "re-verify one structural property of an instance");
  verify->add_option("check", va.name, "non-tile|pd-tile|non-vanishing|counting (also l32..l35)")->required();
  verify->add_option("--instance", va.instance, "instance.json")->required()->check(CLI::ExistingFile);
  verify->add_option("--mode", va.mode, "exhaustive or sampled:<n>");
  verify->add_option("--out", va.out, "output directory (default: next to the instance)");
  verify->add_option("--candidate", va.candidate, "counting: spectrum candidate set file to refute");
  verify->add_option("--random-t", va.random_t, "non-tile: also check this many random shift maps");

  LiftArgs la;
  auto* lift = app.add_subcommand("lift", "periodize to Z^5 and export the cube description");
  lift->add_option("--instance", la.instance, "instance.json")->required()->check(CLI::ExistingFile);
  lift->add_option("--k", la.k, "period multiplier");
  lift->add_option("--out", la.out, "cubes file");
  lift->add_option("--mode", la.mode, "fundamental-domain check: exhaustive or sampled:<n>");
  lift->add_option("--w-mode", la.w_mode, "check of w on the box");

  SearchBArgs sa;
  auto* search = app.add_subcommand("search-b", "log-Hadamard search for a spectral set of size 2p in Z_p^dim");
  search->add_option("--p", sa.p)->required();
  search->add_option("--dim", sa.dim);
  search->add_option("--budget", sa.budget, "search nodes");
  search->add_option("--out", sa.out, "set file")->required();

  for (auto* sub : {construct, check, verify, lift, search}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kRejected;
  }

  Context ctx;
  ctx.command_line = "weaktile";
  for (int i = 1; i < argc; ++i) ctx.command_line += std::string(" ") + argv[i];

  return guarded([&]() -> int {
    ctx.config = Config::defaults();
    if (!config_file.empty()) ctx.config.load(config_file);
    if (seed) ctx.config.values["seed"] = *seed;
    if (workers) ctx.config.workers = *workers == 0 ? 1u : *workers;
    if (const char* env = std::getenv("WEAKTILE_WORKERS")) ctx.config.set("workers", env);
    ctx.config.apply();

    if (*construct) return cmd_construct(ctx, ca);
    if (*check) return cmd_check(ctx, ka);
    if (*verify) return cmd_verify(ctx, va);
    if (*lift) return cmd_lift(ctx, la);
    return cmd_search_b(ctx, sa);
  });
}
