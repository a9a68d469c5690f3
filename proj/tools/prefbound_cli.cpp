// prefbound: evaluate Euclidean-preference expressiveness bounds over
// parameter grids and emit plot-ready CSV.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "prefbound/errors.hpp"
#include "prefbound/oracles.hpp"
#include "prefbound/sweep.hpp"

namespace {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kInvalidArgs = 2, kCapacity = 3 };

struct RawOptions {
  std::string A, I, d;
  std::optional<int> K;
  std::string ball_mode;
  std::optional<std::uint64_t> trials, seed;
  std::string out = "-";
  int jobs = 1;
  double fault_inflate = 1.0;
  std::string config;
};

void add_sweep_options(CLI::App* sub, RawOptions& raw, bool with_verify_options) {
  // Config values are injected ahead of the command line; the last one wins.
  sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  sub->add_option("--A", raw.A, "alternatives range start:stop:step");
  sub->add_option("--I", raw.I, "individuals range start:stop:step");
  sub->add_option("--d", raw.d, "dimension range start:stop:step");
  sub->add_option("--K", raw.K, "truncation of the information-loss sum (default A(A-1)/2)");
  sub->add_option("--ball-mode", raw.ball_mode, "paper | exact")->check(CLI::IsMember({"paper", "exact"}));
  sub->add_option("--trials", raw.trials, "Monte Carlo trials per grid point");
  sub->add_option("--seed", raw.seed, "root seed");
  sub->add_option("--out", raw.out, "output path, '-' for stdout");
  sub->add_option("--jobs", raw.jobs, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  sub->add_option("--config", raw.config, "key=value file; flags take precedence");
  if (with_verify_options) {
    sub->add_option("--fault-inflate", raw.fault_inflate, "multiply the pathology bound (negative control)")
        ->group("");
  }
}

prefbound::SweepSpec resolve(prefbound::Subcommand cmd, const RawOptions& raw) {
  auto spec = prefbound::default_spec(cmd);
  if (!raw.A.empty()) spec.A = prefbound::IntRange::parse(raw.A);
  if (!raw.I.empty()) spec.I = prefbound::IntRange::parse(raw.I);
  if (!raw.d.empty()) spec.d = prefbound::IntRange::parse(raw.d);
  spec.K = raw.K;
  if (!raw.ball_mode.empty()) spec.ball_mode = prefbound::parse_ball_mode(raw.ball_mode);
  if (raw.trials) spec.trials = *raw.trials;
  if (raw.seed) spec.seed = *raw.seed;
  if (spec.trials < 1) throw prefbound::InvalidArgument("--trials must be >= 1");
  spec.out = raw.out;
  spec.jobs = raw.jobs;
  spec.fault_inflation = raw.fault_inflate;
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds on the expressiveness of d-dimensional Euclidean preference models"};
  app.require_subcommand(1);

  const std::map<std::string, prefbound::Subcommand> commands{
      {"bound-c", prefbound::Subcommand::bound_c},
      {"rhat", prefbound::Subcommand::rhat},
      {"info-loss", prefbound::Subcommand::info_loss},
      {"verify", prefbound::Subcommand::verify},
  };
  const std::map<std::string, std::string> descriptions{
      {"bound-c", "lower bound on the probability a uniform profile is not d-Euclidean"},
      {"rhat", "upper bound on the fraction of preferences representable at once"},
      {"info-loss", "lower bound on expected information loss (adjacent swaps)"},
      {"verify", "check every bound against brute-force and Monte Carlo oracles"},
  };

  RawOptions raw;
  for (const auto& [name, cmd] : commands) {
    add_sweep_options(app.add_subcommand(name, descriptions.at(name)), raw, cmd == prefbound::Subcommand::verify);
  }

  try {
    app.parse(argc, argv);
    if (!raw.config.empty()) {
      const std::string name = app.get_subcommands().front()->get_name();
      std::vector<std::string> args(argv + 1, argv + argc);
      const auto at = std::find(args.begin(), args.end(), name);
      std::vector<std::string> from_file;
      for (const auto& item : CLI::ConfigINI().from_file(raw.config)) {
        if (item.name == "++" || item.name == "--") continue;  // section markers
        if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents.front() == name)) continue;
        from_file.push_back("--" + item.name);
        from_file.insert(from_file.end(), item.inputs.begin(), item.inputs.end());
      }
      if (at != args.end()) args.insert(at + 1, from_file.begin(), from_file.end());
      std::reverse(args.begin(), args.end());
      raw = RawOptions{};
      app.parse(std::move(args));
    }
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalidArgs;
  }

  try {
    const auto* chosen = app.get_subcommands().front();
    const auto spec = resolve(commands.at(chosen->get_name()), raw);
    bool all_passed = true;
    const auto doc = prefbound::run_to_document(spec, &all_passed);

    if (spec.out == "-") {
      prefbound::write_csv(std::cout, doc);
    } else {
      std::ofstream file(spec.out, std::ios::binary);
      if (!file) {
        std::cerr << "error: cannot open output file '" << spec.out << "' for writing\n";
        return kInvalidArgs;
      }
      prefbound::write_csv(file, doc);
      if (!file) {
        std::cerr << "error: failed writing '" << spec.out << "'\n";
        return kInvalidArgs;
      }
    }
    if (spec.subcommand == prefbound::Subcommand::verify) {
      std::cerr << prefbound::summarize_report(doc.rows);
      return all_passed ? kOk : kVerifyFailed;
    }
    return kOk;
  } catch (const prefbound::CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCapacity;
  } catch (const prefbound::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidArgs;
  }
}
