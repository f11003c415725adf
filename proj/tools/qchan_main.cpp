#include <CLI11.hpp>

#include "qchan/commands.hpp"

// qchan: two-qubit coupling-channel simulator and intrusion-detection
// harness.  Subcommands: simulate, detect, roc, oracle-check.

int main(int argc, char** argv) {
  CLI::App app{"two-qubit coupling channel simulator and intrusion detector"};
  app.require_subcommand(1);

  qchan::CommonOptions sim_opt, det_opt;
  qchan::RocOptions roc_opt;
  qchan::OracleCheckOptions oracle_opt;

  auto add_common = [](CLI::App* cmd, qchan::CommonOptions& opt) {
    cmd->add_option("--config", opt.config, "scenario JSON file")->required();
    cmd->add_option("--out", opt.out, "output CSV file")->required();
    cmd->add_option("--seed", opt.seed,
                    "seed override (precedence: flag > QCHAN_SEED > config)");
    cmd->add_flag("--quiet", opt.quiet, "suppress the summary line");
  };

  CLI::App* sim = app.add_subcommand("simulate", "write per-trial outcome records");
  add_common(sim, sim_opt);

  CLI::App* det = app.add_subcommand("detect", "run detection campaigns");
  add_common(det, det_opt);

  CLI::App* roc = app.add_subcommand("roc", "sweep detection thresholds over both hypotheses");
  add_common(roc, roc_opt.common);
  roc->add_option("--grid", roc_opt.grid,
                  "threshold grid: \"lo:hi:count\" or comma-separated values "
                  "(default 0:1:201)");

  CLI::App* oracle = app.add_subcommand(
      "oracle-check", "compare closed-form probabilities against the unitary oracle");
  oracle->add_option("--trials", oracle_opt.trials, "random tuples to test")
      ->capture_default_str();
  oracle->add_option("--tol", oracle_opt.tolerance, "max allowed componentwise discrepancy")
      ->capture_default_str();
  oracle->add_option("--seed", oracle_opt.seed, "tuple-draw seed")->capture_default_str();
  oracle->add_flag("--quiet", oracle_opt.quiet, "only report on failure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the CLI11 message (or help text)
    return e.get_name() == "CallForHelp" ? 0 : 1;
  }

  if (sim->parsed()) return qchan::cmd_simulate(sim_opt);
  if (det->parsed()) return qchan::cmd_detect(det_opt);
  if (roc->parsed()) return qchan::cmd_roc(roc_opt);
  return qchan::cmd_oracle_check(oracle_opt);
}
