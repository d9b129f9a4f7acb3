#include "discinterp/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "discinterp/counting.hpp"
#include "discinterp/errors.hpp"
#include "discinterp/interpolation.hpp"
#include "discinterp/oscillation.hpp"
#include "discinterp/parallel.hpp"
#include "discinterp/products.hpp"
#include "discinterp/sharpness.hpp"
#include "json.hpp"

namespace discinterp {

using json = nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ---------------------------------------------------------------- parsing

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

[[noreturn]] void field_error(const std::string& path, const std::string& message) {
  throw ConfigError("field '" + path + "': " + message);
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& item : obj.items())
    if (!keys.count(item.key())) field_error(join(path, item.key()), "unknown field");
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) field_error(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) field_error(path, "expected a finite number");
  return x;
}

std::int64_t as_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) field_error(path, "expected an integer");
  return v.get<std::int64_t>();
}

double number_or(const json& obj, const char* key, const std::string& path, double fallback) {
  return obj.contains(key) ? as_number(obj.at(key), join(path, key)) : fallback;
}

std::int64_t integer_or(const json& obj, const char* key, const std::string& path, std::int64_t fallback) {
  return obj.contains(key) ? as_integer(obj.at(key), join(path, key)) : fallback;
}

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) field_error(join(path, key), "missing");
  return obj.at(key);
}

cplx as_complex(const json& v, const std::string& path) {
  if (v.is_number()) return {as_number(v, path), 0.0};
  if (!v.is_array() || v.size() != 2) field_error(path, "expected [re, im] or a real number");
  return {as_number(v[0], path + "[0]"), as_number(v[1], path + "[1]")};
}

std::vector<cplx> complex_list(const json& v, const std::string& path) {
  if (!v.is_array()) field_error(path, "expected an array of [re, im] pairs");
  std::vector<cplx> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_complex(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<double> number_list(const json& v, const std::string& path) {
  if (!v.is_array()) field_error(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

GrowthFunction parse_growth(const json& v, const std::string& path) {
  if (!v.is_object()) field_error(path, "expected {\"family\": ..., \"param\": ...}");
  reject_unknown(v, path, {"family", "param"});
  const json& fam = require(v, "family", path);
  if (!fam.is_string()) field_error(join(path, "family"), "expected a string");
  GrowthFamily family;
  try {
    family = growth_family_from_string(fam.get<std::string>());
  } catch (const DomainError& e) {
    field_error(join(path, "family"), e.what());
  }
  const double param = as_number(require(v, "param", path), join(path, "param"));
  try {
    return GrowthFunction::make(family, param);
  } catch (const DomainError& e) {
    field_error(join(path, "param"), e.what());
  }
}

SequenceSpec parse_sequence(const json& v, const std::string& path) {
  SequenceSpec spec;
  if (v.is_array()) {
    spec.points = complex_list(v, path);
    return spec;
  }
  if (!v.is_object()) field_error(path, "expected a point list or a generator object");
  const json& gen = require(v, "generator", path);
  if (!gen.is_string()) field_error(join(path, "generator"), "expected a string");
  const std::string name = gen.get<std::string>();
  if (name == "explicit") {
    reject_unknown(v, path, {"generator", "points"});
    spec.points = complex_list(require(v, "points", path), join(path, "points"));
  } else if (name == "radial") {
    reject_unknown(v, path, {"generator", "radii", "theta", "thetas"});
    spec.kind = SequenceSpec::Kind::radial;
    spec.radii = number_list(require(v, "radii", path), join(path, "radii"));
    if (v.contains("thetas")) {
      spec.thetas = number_list(v.at("thetas"), join(path, "thetas"));
      if (spec.thetas.size() != spec.radii.size()) field_error(join(path, "thetas"), "length must match radii");
    } else {
      spec.thetas = {number_or(v, "theta", path, 0.0)};
    }
  } else if (name == "perturbed_lattice") {
    reject_unknown(v, path, {"generator", "levels", "base_count", "jitter"});
    spec.kind = SequenceSpec::Kind::perturbed_lattice;
    spec.levels = static_cast<int>(integer_or(v, "levels", path, spec.levels));
    spec.base_count = static_cast<int>(integer_or(v, "base_count", path, spec.base_count));
    spec.jitter = number_or(v, "jitter", path, spec.jitter);
    if (spec.levels < 1 || spec.levels > 20) field_error(join(path, "levels"), "must lie in [1, 20]");
    if (spec.base_count < 1 || spec.base_count > 4096) field_error(join(path, "base_count"), "must lie in [1, 4096]");
    if (!(spec.jitter >= 0.0 && spec.jitter < 1.0)) field_error(join(path, "jitter"), "must lie in [0, 1)");
  } else if (name == "theorem5") {
    reject_unknown(v, path, {"generator", "rho", "n_max"});
    spec.kind = SequenceSpec::Kind::theorem5;
    spec.rho = as_number(require(v, "rho", path), join(path, "rho"));
    spec.n_max = static_cast<int>(as_integer(require(v, "n_max", path), join(path, "n_max")));
    if (!(spec.rho > 0.0)) field_error(join(path, "rho"), "must be positive");
    if (spec.n_max < 1 || spec.n_max > 50) field_error(join(path, "n_max"), "must lie in [1, 50]");
  } else {
    field_error(join(path, "generator"), "unknown generator '" + name +
                                             "' (expected explicit, radial, perturbed_lattice or theorem5)");
  }
  return spec;
}

TargetsSpec parse_targets(const json& v, const std::string& path) {
  TargetsSpec spec;
  if (v.is_array()) {
    spec.kind = TargetsSpec::Kind::explicit_values;
    spec.values = complex_list(v, path);
    return spec;
  }
  if (!v.is_object()) field_error(path, "expected a value list or {\"random_admissible\": C}");
  reject_unknown(v, path, {"random_admissible"});
  spec.kind = TargetsSpec::Kind::random_admissible;
  spec.constant = as_number(require(v, "random_admissible", path), join(path, "random_admissible"));
  if (!(spec.constant > 0.0)) field_error(join(path, "random_admissible"), "must be positive");
  return spec;
}

std::string locate(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

// ---------------------------------------------------------------- output helpers

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(std::size_t x) { return std::to_string(x); }
std::string fmt(int x) { return std::to_string(x); }
std::string fmt(bool x) { return x ? "1" : "0"; }
std::string fmt(const std::string& s) { return s; }

class Csv {
 public:
  explicit Csv(std::initializer_list<const char*> header) {
    bool first = true;
    for (const char* h : header) {
      os_ << (first ? "" : ",") << h;
      first = false;
    }
    os_ << '\n';
  }
  template <class... Ts>
  void row(const Ts&... values) {
    bool first = true;
    ((os_ << (first ? "" : ",") << fmt(values), first = false), ...);
    os_ << '\n';
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

// ---------------------------------------------------------------- sampling

std::vector<cplx> random_disc_points(std::size_t count, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(std::polar(radius * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng)));
  return out;
}

double distance_to(const DiscSequence& seq, cplx z) {
  double d = std::numeric_limits<double>::infinity();
  for (const DiscPoint& p : seq.points()) d = std::min(d, std::abs(p.minus(z)));
  return d;
}

/// Random points with dist(z, Z) >= 0.1 (1 - |z|).
std::vector<cplx> random_free_points(const DiscSequence& seq, std::size_t count, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> out;
  for (std::size_t tries = 0; out.size() < count; ++tries) {
    if (tries > 1000 * (count + 1)) throw ConfigError("could not place sample points away from the nodes");
    const cplx z = std::polar(radius * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
    if (distance_to(seq, z) >= 0.1 * (1.0 - std::abs(z))) out.push_back(z);
  }
  return out;
}

// ---------------------------------------------------------------- tasks

struct Context {
  const Scenario& sc;
  TaskResult result;
  json summary;
  json invariants = json::object();

  void constant(const std::string& name, double value) {
    summary["constants"][name] = finite_or_null(value);
    result.table.emplace_back(name, fmt(value));
  }
  void invariant(const std::string& name, bool ok) {
    invariants[name] = ok;
    result.table.emplace_back("invariant " + name, ok ? "pass" : "FAIL");
    if (!ok) result.exit_code = kExitInvariant;
  }
  void file(const std::string& name, std::string contents) { result.files.push_back({name, std::move(contents)}); }
};

DiscSequence make_sequence(const Scenario& sc, json& summary) {
  try {
    DiscSequence seq = generate_sequence(sc.sequence, sc.seed);
    summary["nodes"] = seq.size();
    if (sc.sequence.kind == SequenceSpec::Kind::theorem5) {
      const SharpnessSequence full(sc.sequence.rho, sc.sequence.n_max);
      summary["paired_levels_kept"] = full.representable_levels();
      summary["paired_log_only_levels_dropped"] = sc.sequence.n_max - full.representable_levels();
    }
    return seq;
  } catch (const DomainError& e) {
    throw ConfigError(std::string("field 'sequence': ") + e.what());
  }
}

void require_nonempty(const DiscSequence& seq) {
  if (seq.empty()) throw ConfigError("field 'sequence': the sequence is empty");
}

std::string growth_csv(const std::vector<GrowthRow>& rows) {
  Csv csv{"r", "lnM", "psi_tilde", "ratio"};
  for (const GrowthRow& r : rows) csv.row(r.r, r.log_max_modulus, r.psi_tilde, r.ratio);
  return csv.str();
}

void run_check(Context& ctx) {
  const Scenario& sc = ctx.sc;
  const DiscSequence seq = make_sequence(sc, ctx.summary);
  require_nonempty(seq);
  const GrowthFunction& gf = sc.growth;
  const CanonicalProduct cp(seq, gf.genus());
  const std::vector<cplx> zs = random_disc_points(sc.samples, sc.sample_radius, sc.seed ^ 0x5eedULL);

  const ConditionReport conc = check_concentration(seq, gf, sc.delta);
  const ConditionReport kor = check_korenblum_sum(seq, gf, sc.delta);
  const EquivalenceReport eq = check_equivalence_ii_iii(seq, gf, sc.delta, sc.alpha);
  const SandwichReport nu = check_nu_from_N(seq, gf, sc.delta, sc.alpha, zs);
  const ConditionReport all_z = concentration_grid_constant(seq, gf, zs);
  const std::vector<double> seip_r{0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
  const double seip = seip_density_estimate(seq, seip_r, zs);
  const BestConstant l1 = lemma1_psi_bound(cp, gf, zs);
  const Lemma2Report l2 = lemma2_index_check(cp, sc.delta);
  const Proposition1Report p1 = proposition1_check(cp, gf);

  std::vector<TsujiReport> tsuji(zs.size());
  parallel_for(zs.size(), sc.threads, [&](std::size_t i) { tsuji[i] = tsuji_bound_check(cp, zs[i]); });
  std::size_t violations = 0;
  double worst = -std::numeric_limits<double>::infinity();
  Csv tsuji_csv{"z_re", "z_im", "lhs", "rhs", "holds"};
  for (std::size_t i = 0; i < zs.size(); ++i) {
    violations += tsuji[i].holds ? 0 : 1;
    worst = std::max(worst, tsuji[i].lhs - tsuji[i].rhs);
    tsuji_csv.row(zs[i].real(), zs[i].imag(), tsuji[i].lhs, tsuji[i].rhs, tsuji[i].holds);
  }

  Csv cond{"condition", "value", "witness_index"};
  cond.row(std::string("concentration"), conc.best_constant, conc.witness_index);
  cond.row(std::string("korenblum_sum"), kor.best_constant, kor.witness_index);
  cond.row(std::string("concentration_all_z_estimate"), all_z.best_constant, all_z.witness_index);
  cond.row(std::string("n_bound"), nu.n_bound.best_constant, nu.n_bound.witness_index);
  cond.row(std::string("ln_prime_bound"), p1.ln_prime_bound, p1.ln_prime_witness);
  cond.row(std::string("lemma1_psi_bound"), l1.best_constant, l1.witness_index);
  cond.row(std::string("lemma2_constant"), l2.constant, l2.witness_index);
  ctx.file("conditions.csv", cond.str());
  ctx.file("tsuji.csv", tsuji_csv.str());

  Csv nodes{"k", "z_re", "z_im", "one_minus_modulus", "N_half", "korenblum_sum", "lemma2_ratio", "ln_abs_P_prime"};
  for (std::size_t k = 0; k < seq.size(); ++k)
    nodes.row(k, seq[k].value().real(), seq[k].value().imag(), seq[k].one_minus_modulus(),
              counting_N_at_node(seq, k, 0.5 * seq[k].one_minus_modulus()), korenblum_sum_at_node(seq, k, sc.delta),
              l2.ratio[k], cp.log_prime_at_node(k).log_modulus);
  ctx.file("nodes.csv", nodes.str());

  ctx.constant("concentration", conc.best_constant);
  ctx.constant("korenblum_sum", kor.best_constant);
  ctx.constant("concentration_all_z_estimate", all_z.best_constant);
  ctx.constant("carleson_delta", carleson_delta(seq));
  ctx.constant("separation", seq.size() >= 2 ? separation(seq) : kNaN);
  ctx.constant("seip_density_estimate", seip);
  ctx.constant("equivalence_c_ii", eq.c_ii);
  ctx.constant("equivalence_c_iii", eq.c_iii);
  ctx.constant("equivalence_c_ii_wide", eq.c_ii_wide);
  ctx.constant("equivalence_ratio_bound", eq.ratio_bound);
  ctx.constant("n_bound", nu.n_bound.best_constant);
  ctx.constant("ln_prime_bound", p1.ln_prime_bound);
  ctx.constant("lemma1_psi_bound", l1.best_constant);
  ctx.constant("lemma2_constant", l2.constant);
  ctx.constant("tsuji_worst_margin", worst);
  ctx.summary["class_R"] = p1.class_R;

  const double per_term_cap = std::log(2.0 + sc.delta);
  ctx.invariant("tsuji_bound", violations == 0);
  ctx.invariant("equivalence_ii_iii", eq.lower_holds && eq.upper_holds);
  ctx.invariant("per_term_comparison", eq.pair_count == 0 || (eq.min_term >= -1e-12 && eq.max_term <= per_term_cap + 1e-12));
  ctx.invariant("nu_from_N_sandwich", nu.sandwich_holds);
}

void run_interpolate(Context& ctx) {
  const Scenario& sc = ctx.sc;
  const DiscSequence seq = make_sequence(sc, ctx.summary);
  require_nonempty(seq);
  std::vector<cplx> targets;
  try {
    targets = generate_targets(sc.targets, seq, sc.growth, sc.seed);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("field 'targets': ") + e.what());
  }
  const Interpolant f = build_interpolant(seq, targets, sc.growth, {sc.c0, sc.ladder_weight});
  Csv csv{"k", "z_re", "z_im", "b_re", "b_im", "f_re", "f_im", "rel_error", "exponent"};
  double worst = 0.0;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const cplx fk = f.eval_at_node(k);
    if (!std::isfinite(fk.real()) || !std::isfinite(fk.imag()))
      throw NumericError("interpolate: f(z_" + std::to_string(k) + ") is not finite");
    const double err = std::abs(fk - targets[k]) / (1.0 + std::abs(targets[k]));
    worst = std::max(worst, err);
    csv.row(k, seq[k].value().real(), seq[k].value().imag(), targets[k].real(), targets[k].imag(), fk.real(),
            fk.imag(), err, f.exponents()[k]);
  }
  ctx.file("interpolation.csv", csv.str());
  const std::vector<GrowthRow> rows = growth_report(f, sc.growth, sc.r_grid, sc.theta_count, sc.threads);
  ctx.file("growth.csv", growth_csv(rows));
  double max_ratio = -std::numeric_limits<double>::infinity();
  for (const GrowthRow& r : rows) max_ratio = std::max(max_ratio, r.ratio);

  ctx.constant("admissibility", f.targets().admissibility);
  ctx.constant("concentration", check_concentration(seq, sc.growth).best_constant);
  ctx.constant("max_relative_error", worst);
  ctx.constant("growth_ratio_max", max_ratio);
  ctx.summary["ladder_n_max"] = f.ladder().n_max();
  ctx.summary["genus"] = f.product().genus();
  ctx.invariant("interpolation_identity", worst < 1e-8);
}

void run_oscillate(Context& ctx) {
  const Scenario& sc = ctx.sc;
  const DiscSequence seq = make_sequence(sc, ctx.summary);
  require_nonempty(seq);
  const OscillationSolution sol = build_coefficient(seq, sc.growth, {sc.c0, sc.ladder_weight});
  const std::vector<cplx>& b = sol.gprime().targets().values;

  Csv targets{"k", "z_re", "z_im", "b_re", "b_im"};
  for (std::size_t k = 0; k < seq.size(); ++k)
    targets.row(k, seq[k].value().real(), seq[k].value().imag(), b[k].real(), b[k].imag());
  ctx.file("targets.csv", targets.str());

  const std::vector<cplx> zs = random_free_points(seq, sc.samples, sc.sample_radius, sc.seed ^ 0x0dd5ULL);
  std::vector<ResidualSample> res(zs.size());
  parallel_for(zs.size(), sc.threads, [&](std::size_t i) { res[i] = ode_residual(sol, zs[i]); });
  Csv residual{"z_re", "z_im", "residual"};
  double worst = 0.0;
  for (const ResidualSample& r : res) {
    if (!std::isfinite(r.residual)) throw NumericError("oscillate: non-finite residual");
    worst = std::max(worst, r.residual);
    residual.row(r.z.real(), r.z.imag(), r.residual);
  }
  ctx.file("residual.csv", residual.str());

  Csv counts{"center_re", "center_im", "radius", "count_re", "count_im", "expected"};
  bool counts_ok = true;
  auto count_row = [&](cplx c, double radius, int expected) {
    const cplx n = zero_count(sol, c, radius);
    counts_ok = counts_ok && std::abs(n - static_cast<double>(expected)) < 1e-6;
    counts.row(c.real(), c.imag(), radius, n.real(), n.imag(), expected);
  };
  for (std::size_t k = 0; k < seq.size(); ++k) count_row(seq[k].value(), sol.node_radius(k), 1);
  for (std::size_t i = 0; i < std::min<std::size_t>(zs.size(), 8); ++i)
    count_row(zs[i], 0.5 * std::min(distance_to(seq, zs[i]), 1.0 - std::abs(zs[i])), 0);
  ctx.file("zero_counts.csv", counts.str());

  const std::vector<GrowthRow> rows = growth_table(
      [&sol](cplx z) { return sol.log_coefficient(z).log_modulus; }, sc.growth, sc.r_grid, sc.theta_count,
      sc.threads);
  ctx.file("growth_a.csv", growth_csv(rows));
  double max_ratio = -std::numeric_limits<double>::infinity();
  for (const GrowthRow& r : rows) max_ratio = std::max(max_ratio, r.ratio);

  ctx.constant("target_constant", osc_target_constant(sol.product(), sc.growth, b));
  ctx.constant("max_residual", worst);
  ctx.constant("growth_ratio_max", max_ratio);
  ctx.invariant("ode_residual", worst < 1e-6);
  ctx.invariant("zero_counts", counts_ok);
}

void run_sharpness(Context& ctx) {
  const Scenario& sc = ctx.sc;
  const SharpnessSequence seq(sc.sharpness_rho, sc.sharpness_n_max);
  const std::vector<SharpnessCountRow> rows = sharpness_counting_check(seq);
  Csv table{"m", "n", "N_value", "target", "ratio"};
  for (const SharpnessCountRow& r : rows) table.row(r.m, r.level, r.N_value, r.target, r.ratio);
  ctx.file("sharpness.csv", table.str());
  const WitnessReport w = sharpness_growth_witness(seq, sc.epsilon0);
  Csv witness{"n", "lower", "upper", "crossed", "computed_log_ratio"};
  for (const WitnessRow& r : w.rows) witness.row(r.level, r.lower, r.upper, r.crossed, r.computed_log_ratio.value_or(kNaN));
  ctx.file("witness.csv", witness.str());
  for (const SharpnessCountRow& r : rows)
    if (!std::isfinite(r.N_value)) throw NumericError("sharpness: non-finite counting value");
  ctx.summary["representable_levels"] = seq.representable_levels();
  ctx.summary["crossing_level"] = w.crossing_level ? json(*w.crossing_level) : json(nullptr);
  ctx.constant("last_ratio", rows.back().ratio);
  ctx.result.table.emplace_back("crossing_level", w.crossing_level ? std::to_string(*w.crossing_level) : "none");
}

void run_growth_curve(Context& ctx) {
  const Scenario& sc = ctx.sc;
  const GrowthFunction& gf = sc.growth;
  const double lmax = std::log(sc.t_max);
  auto grid = [&](std::size_t i) {
    return sc.t_points == 1 ? 1.0 : std::exp(lmax * static_cast<double>(i) / static_cast<double>(sc.t_points - 1));
  };
  Csv curve{"x", "psi", "psi_tilde", "psi_tilde_over_psi"};
  for (std::size_t i = 0; i < sc.t_points; ++i) {
    const double x = grid(i);
    const double p = gf.psi(x), pt = gf.psi_tilde(x);
    curve.row(x, p, pt, p > 0.0 ? pt / p : kNaN);
  }
  ctx.file("growth_curve.csv", curve.str());

  const CoefficientLadder ladder = build_ladder_covering(gf, sc.c0, sc.t_max, sc.ladder_weight);
  Csv table{"t", "ln_mu", "upper", "lower", "upper_holds", "lower_holds"};
  std::vector<bool> ok(sc.t_points);
  for (std::size_t i = 0; i < sc.t_points; ++i) {
    const double t = grid(i);
    const double lmu = ladder.log_max_term(t);
    const double upper = 2.0 * gf.psi_tilde(sc.c0 * t);
    const double lower = 0.25 * gf.psi_tilde(std::max(1.0, sc.c0 * t / 2.0));
    const bool up = lmu <= upper, lo = lmu >= lower - 1e-6;
    ok[i] = up && lo;
    table.row(t, lmu, upper, lower, up, lo);
  }
  ctx.file("ladder.csv", table.str());
  std::optional<double> t0;
  for (std::size_t i = sc.t_points; i-- > 0 && ok[i];) t0 = grid(i);
  bool monotone = true;
  for (std::size_t n = 2; n < ladder.log_kappas().size(); ++n)
    monotone = monotone && ladder.log_kappas()[n] >= ladder.log_kappas()[n - 1];
  const PolyaEstimate polya = polya_order_estimate(gf);
  const ClassRReport cr = class_R_check(gf, std::max(2.0, sc.t_max));
  ctx.constant("polya_order", polya.analytic);
  ctx.constant("polya_order_numeric", polya.numeric);
  ctx.constant("class_R_ratio_sup", cr.ratio_sup);
  ctx.constant("t0", t0.value_or(kNaN));
  ctx.summary["class_R"] = cr.member;
  ctx.summary["ladder_n_max"] = ladder.n_max();
  ctx.invariant("kappa_nondecreasing", monotone);
}

}  // namespace

// ---------------------------------------------------------------- public API

std::string to_string(Task task) {
  switch (task) {
    case Task::check: return "check";
    case Task::interpolate: return "interpolate";
    case Task::oscillate: return "oscillate";
    case Task::sharpness: return "sharpness";
    case Task::growth_curve: return "growth-curve";
  }
  return "check";
}

Task task_from_string(const std::string& name) {
  for (Task t : {Task::check, Task::interpolate, Task::oscillate, Task::sharpness, Task::growth_curve})
    if (to_string(t) == name) return t;
  throw ConfigError("unknown task '" + name + "'");
}

Scenario parse_scenario(const std::string& text, std::optional<Task> task) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON at " + locate(text, e.byte) + ": " + e.what());
  }
  if (!root.is_object()) throw ConfigError("the scenario must be a JSON object");
  reject_unknown(root, "",
                 {"description", "task", "seed", "threads", "growth", "sequence", "targets", "C0", "ladder_weight",
                  "delta", "alpha", "r_grid", "theta_count", "samples", "sample_radius", "sharpness", "t_points",
                  "t_max"});
  Scenario sc;
  if (root.contains("task")) {
    if (!root["task"].is_string()) field_error("task", "expected a string");
    try {
      sc.task = task_from_string(root["task"].get<std::string>());
    } catch (const ConfigError& e) {
      field_error("task", e.what());
    }
  }
  if (task) sc.task = *task;
  const std::int64_t seed = integer_or(root, "seed", "", 0);
  if (seed < 0) field_error("seed", "must be >= 0");
  sc.seed = static_cast<std::uint64_t>(seed);
  const std::int64_t threads = integer_or(root, "threads", "", 1);
  if (threads < 0 || threads > 1024) field_error("threads", "must lie in [0, 1024]");
  sc.threads = static_cast<unsigned>(threads);
  if (root.contains("growth")) sc.growth = parse_growth(root["growth"], "growth");
  if (root.contains("sequence")) sc.sequence = parse_sequence(root["sequence"], "sequence");
  if (root.contains("targets")) sc.targets = parse_targets(root["targets"], "targets");
  sc.c0 = number_or(root, "C0", "", sc.c0);
  if (!(sc.c0 >= 2.0)) field_error("C0", "must be >= 2");
  sc.ladder_weight = number_or(root, "ladder_weight", "", sc.ladder_weight);
  if (!(sc.ladder_weight > 0.0)) field_error("ladder_weight", "must be positive");
  sc.delta = number_or(root, "delta", "", sc.delta);
  if (!(sc.delta > 0.0 && sc.delta < 1.0)) field_error("delta", "must lie in (0, 1)");
  sc.alpha = number_or(root, "alpha", "", sc.alpha);
  if (!(sc.alpha > 1.0)) field_error("alpha", "must be > 1");
  if (root.contains("r_grid")) {
    sc.r_grid = number_list(root["r_grid"], "r_grid");
    for (double r : sc.r_grid)
      if (!(r > 0.0 && r < 1.0)) field_error("r_grid", "radii must lie in (0, 1)");
  }
  const std::int64_t theta = integer_or(root, "theta_count", "", static_cast<std::int64_t>(sc.theta_count));
  if (theta < 1 || theta > 1 << 20) field_error("theta_count", "must lie in [1, 2^20]");
  sc.theta_count = static_cast<std::size_t>(theta);
  const std::int64_t samples = integer_or(root, "samples", "", static_cast<std::int64_t>(sc.samples));
  if (samples < 0 || samples > 1 << 20) field_error("samples", "must lie in [0, 2^20]");
  sc.samples = static_cast<std::size_t>(samples);
  sc.sample_radius = number_or(root, "sample_radius", "", sc.sample_radius);
  if (!(sc.sample_radius > 0.0 && sc.sample_radius < 1.0)) field_error("sample_radius", "must lie in (0, 1)");
  if (root.contains("sharpness")) {
    const json& s = root["sharpness"];
    if (!s.is_object()) field_error("sharpness", "expected an object");
    reject_unknown(s, "sharpness", {"rho", "n_max", "epsilon0"});
    sc.sharpness_rho = number_or(s, "rho", "sharpness", sc.sharpness_rho);
    sc.sharpness_n_max = static_cast<int>(integer_or(s, "n_max", "sharpness", sc.sharpness_n_max));
    sc.epsilon0 = number_or(s, "epsilon0", "sharpness", sc.epsilon0);
    if (!(sc.sharpness_rho > 0.0)) field_error("sharpness.rho", "must be positive");
    if (sc.sharpness_n_max < 1 || sc.sharpness_n_max > 50) field_error("sharpness.n_max", "must lie in [1, 50]");
    if (!(sc.epsilon0 >= 0.0)) field_error("sharpness.epsilon0", "must be >= 0");
  }
  const std::int64_t tp = integer_or(root, "t_points", "", static_cast<std::int64_t>(sc.t_points));
  if (tp < 1 || tp > 1 << 16) field_error("t_points", "must lie in [1, 65536]");
  sc.t_points = static_cast<std::size_t>(tp);
  sc.t_max = number_or(root, "t_max", "", sc.t_max);
  if (!(sc.t_max >= 1.0)) field_error("t_max", "must be >= 1");
  if (sc.task == Task::interpolate && sc.targets.kind == TargetsSpec::Kind::none)
    field_error("targets", "required for the interpolate task");
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path, std::optional<Task> task) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), task);
}

DiscSequence generate_sequence(const SequenceSpec& spec, std::uint64_t seed) {
  switch (spec.kind) {
    case SequenceSpec::Kind::explicit_points: return DiscSequence::from_values(spec.points);
    case SequenceSpec::Kind::radial: {
      std::vector<cplx> pts;
      for (std::size_t i = 0; i < spec.radii.size(); ++i)
        pts.push_back(std::polar(spec.radii[i], spec.thetas.size() == 1 ? spec.thetas[0] : spec.thetas[i]));
      return DiscSequence::from_values(pts);
    }
    case SequenceSpec::Kind::perturbed_lattice: {
      // Level j sits near |z| = 1 - 2^{-(j+1)} with base_count 2^j points, so neighbouring
      // points are pseudohyperbolically about equally far apart on every level.
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> u(-0.5, 0.5);
      std::vector<cplx> pts;
      for (int j = 0; j < spec.levels; ++j) {
        const double gap = std::exp2(-(j + 1));
        const std::size_t m = static_cast<std::size_t>(spec.base_count) << j;
        const double stagger = 0.5 * (j % 2);
        for (std::size_t i = 0; i < m; ++i) {
          const double theta = 2.0 * std::numbers::pi * (static_cast<double>(i) + stagger + spec.jitter * u(rng)) /
                               static_cast<double>(m);
          const double r = 1.0 - gap * (1.0 + spec.jitter * u(rng));
          pts.push_back(std::polar(r, theta));
        }
      }
      return DiscSequence::from_values(pts);
    }
    case SequenceSpec::Kind::theorem5: return SharpnessSequence(spec.rho, spec.n_max).representable_sequence();
  }
  return {};
}

std::vector<cplx> generate_targets(const TargetsSpec& spec, const DiscSequence& seq, const GrowthFunction& gf,
                                   std::uint64_t seed) {
  switch (spec.kind) {
    case TargetsSpec::Kind::none: return std::vector<cplx>(seq.size());
    case TargetsSpec::Kind::explicit_values:
      if (spec.values.size() != seq.size())
        throw DomainError(std::to_string(spec.values.size()) + " targets for " + std::to_string(seq.size()) + " nodes");
      return spec.values;
    case TargetsSpec::Kind::random_admissible: {
      std::mt19937_64 rng(seed ^ 0x7a6e7ULL);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      std::vector<cplx> out;
      for (const DiscPoint& p : seq.points()) {
        const double hi = std::min(spec.constant * gf.psi_tilde(1.0 / p.one_minus_modulus()), 200.0);
        const double log_mod = -2.0 + (hi + 2.0) * u(rng);
        out.push_back(std::polar(std::exp(log_mod), 2.0 * std::numbers::pi * u(rng)));
      }
      return out;
    }
  }
  return {};
}

TaskResult run_task(const Scenario& scenario) {
  Context ctx{scenario, {}, json::object()};
  ctx.summary["task"] = to_string(scenario.task);
  ctx.summary["seed"] = scenario.seed;
  ctx.summary["growth"] = {{"family", to_string(scenario.growth.family())}, {"param", scenario.growth.param()}};
  ctx.summary["constants"] = json::object();
  switch (scenario.task) {
    case Task::check: run_check(ctx); break;
    case Task::interpolate: run_interpolate(ctx); break;
    case Task::oscillate: run_oscillate(ctx); break;
    case Task::sharpness: run_sharpness(ctx); break;
    case Task::growth_curve: run_growth_curve(ctx); break;
  }
  ctx.summary["invariants"] = ctx.invariants;
  ctx.summary["exit_code"] = ctx.result.exit_code;
  ctx.file("summary.json", ctx.summary.dump(2) + "\n");
  return std::move(ctx.result);
}

int run_scenario(const std::filesystem::path& config, const std::filesystem::path& out_dir, Task task,
                 std::optional<std::uint64_t> seed, std::optional<unsigned> threads, std::ostream& out,
                 std::ostream& err) {
  TaskResult result;
  try {
    Scenario sc = load_scenario(config, task);
    if (seed) sc.seed = *seed;
    if (threads) sc.threads = *threads;
    result = run_task(sc);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const LadderTooShortError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const UnboundedConjugateError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const DomainError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    err << "cannot create output directory '" << out_dir.string() << "': " << ec.message() << '\n';
    return kExitConfig;
  }
  for (const OutputFile& f : result.files) {
    std::ofstream os(out_dir / f.name, std::ios::binary);
    os << f.contents;
    if (!os) {
      err << "cannot write '" << (out_dir / f.name).string() << "'\n";
      return kExitConfig;
    }
  }
  std::size_t width = 0;
  for (const auto& [name, value] : result.table) width = std::max(width, name.size());
  for (const auto& [name, value] : result.table) out << name << std::string(width - name.size() + 2, ' ') << value << '\n';
  return result.exit_code;
}

}  // namespace discinterp
