#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "discinterp/scenario.hpp"

namespace {

constexpr const char* kFooter = R"(Exit codes: 0 pass, 2 config error, 3 invariant failure, 4 numeric failure.

Output files (CSV with a header row, plus summary.json with every constant and invariant):
  check         conditions.csv  condition,value,witness_index
                nodes.csv       k,z_re,z_im,one_minus_modulus,N_half,korenblum_sum,lemma2_ratio,ln_abs_P_prime
                tsuji.csv       z_re,z_im,lhs,rhs,holds
  interpolate   interpolation.csv  k,z_re,z_im,b_re,b_im,f_re,f_im,rel_error,exponent
                growth.csv      r,lnM,psi_tilde,ratio
  oscillate     targets.csv     k,z_re,z_im,b_re,b_im
                residual.csv    z_re,z_im,residual
                zero_counts.csv center_re,center_im,radius,count_re,count_im,expected
                growth_a.csv    r,lnM,psi_tilde,ratio
  sharpness     sharpness.csv   m,n,N_value,target,ratio
                witness.csv     n,lower,upper,crossed,computed_log_ratio
  growth-curve  growth_curve.csv  x,psi,psi_tilde,psi_tilde_over_psi
                ladder.csv      t,ln_mu,upper,lower,upper_holds,lower_holds

See docs/output.md for the column definitions and the config schema.)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free interpolation and oscillation experiments in the unit disc"};
  app.footer(kFooter);
  app.require_subcommand(1);

  std::string config;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;

  for (const char* name : {"check", "interpolate", "oscillate", "sharpness", "growth-curve"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory")->required();
    sub->add_option("--seed", seed, "Override the scenario seed");
    sub->add_option("--threads", threads, "Worker threads (0 = all cores)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : discinterp::kExitConfig;
  }

  const std::string task_name = app.get_subcommands().front()->get_name();
  return discinterp::run_scenario(config, out_dir, discinterp::task_from_string(task_name), seed, threads, std::cout,
                                  std::cerr);
}
