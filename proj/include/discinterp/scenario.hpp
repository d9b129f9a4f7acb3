#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "discinterp/geometry.hpp"
#include "discinterp/growth.hpp"

namespace discinterp {

enum class Task { check, interpolate, oscillate, sharpness, growth_curve };

std::string to_string(Task task);
Task task_from_string(const std::string& name);

/// Process exit codes of the CLI.
enum ExitCode : int { kExitPass = 0, kExitConfig = 2, kExitInvariant = 3, kExitNumeric = 4 };

/// Invalid scenario: malformed JSON (with line and column) or a bad field (with its path).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SequenceSpec {
  enum class Kind { explicit_points, radial, perturbed_lattice, theorem5 };
  Kind kind = Kind::explicit_points;
  std::vector<cplx> points;     // explicit
  std::vector<double> radii;    // radial
  std::vector<double> thetas;   // radial: one angle per radius, or a single shared angle
  int levels = 3;               // perturbed_lattice: dyadic annuli 1 - 2^{-(j+1)}, j < levels
  int base_count = 4;           // perturbed_lattice: base_count 2^j points on level j
  double jitter = 0.2;          // perturbed_lattice: relative perturbation of angle and radius
  double rho = 1.0;             // theorem5
  int n_max = 5;                // theorem5
};

struct TargetsSpec {
  enum class Kind { none, explicit_values, random_admissible };
  Kind kind = Kind::none;
  std::vector<cplx> values;
  double constant = 1.0;  // random_admissible: ln|b_n| uniform in [-2, min(C psi~(1/(1-|z_n|)), 200)]
};

struct Scenario {
  Task task = Task::check;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  GrowthFunction growth = GrowthFunction::power(1.0);
  SequenceSpec sequence;
  TargetsSpec targets;
  double c0 = 8.0;
  double ladder_weight = 1.0;
  double delta = 0.5;
  double alpha = 2.0;
  std::vector<double> r_grid{0.5, 0.9, 0.99, 0.999};
  std::size_t theta_count = 256;
  std::size_t samples = 200;     // random z for Tsuji / residual checks
  double sample_radius = 0.9;    // random z are drawn from |z| <= sample_radius
  double sharpness_rho = 1.0;
  int sharpness_n_max = 20;
  double epsilon0 = 0.5;
  std::size_t t_points = 50;     // growth-curve: log grid of t in [1, t_max]
  double t_max = 1e4;
};

/// Parses scenario JSON text. `task` overrides the optional "task" field.
Scenario parse_scenario(const std::string& text, std::optional<Task> task = std::nullopt);
Scenario load_scenario(const std::filesystem::path& path, std::optional<Task> task = std::nullopt);

/// Deterministic for a fixed seed.
DiscSequence generate_sequence(const SequenceSpec& spec, std::uint64_t seed);
std::vector<cplx> generate_targets(const TargetsSpec& spec, const DiscSequence& seq, const GrowthFunction& gf,
                                   std::uint64_t seed);

struct OutputFile {
  std::string name;
  std::string contents;
};

struct TaskResult {
  int exit_code = kExitPass;
  std::vector<OutputFile> files;            // CSV tables plus summary.json
  std::vector<std::pair<std::string, std::string>> table;  // printed summary rows
};

/// Runs the scenario's task in memory. Throws ConfigError, or the library's numeric errors.
TaskResult run_task(const Scenario& scenario);

/// Loads, runs, writes all outputs into out_dir (nothing is written on config or numeric errors)
/// and prints the summary table. Returns an ExitCode.
int run_scenario(const std::filesystem::path& config, const std::filesystem::path& out_dir, Task task,
                 std::optional<std::uint64_t> seed, std::optional<unsigned> threads, std::ostream& out,
                 std::ostream& err);

}  // namespace discinterp
