#include "htree/experiments.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <thread>

#include "htree/errors.hpp"
#include "htree/io.hpp"
#include "htree/lorentz.hpp"
#include "htree/poisson.hpp"
#include "htree/spectral.hpp"
#include "htree/transforms.hpp"

namespace htree {

using nlohmann::json;

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream,
                            std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(salt)};
  return std::mt19937_64(seq);
}

Eigen::VectorXcd gaussian_vector(std::mt19937_64& engine, Eigen::Index size) {
  std::normal_distribution<double> normal;
  Eigen::VectorXcd out(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    const double re = normal(engine);
    const double im = normal(engine);
    out[i] = {re, im};
  }
  return out;
}

std::string real_or_inf(double x) { return format_real(x); }

json config_json(const std::string& command, const ExperimentConfig& c) {
  return {{"command", command},       {"q", c.q},
          {"seed", c.seed},           {"depth", c.depth},
          {"grid", c.grid},           {"samples", c.samples},
          {"p", real_or_inf(c.p)},    {"r", real_or_inf(c.r)},
          {"alpha", c.alpha},         {"z_re", c.z_re},
          {"z_im", c.z_im},           {"support_radius", c.support_radius},
          {"nmax", c.nmax},           {"n_list", c.n_list},
          {"terms", c.terms},         {"mode", c.mode},
          {"input", c.input},         {"version", kVersion}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Runs task(i) for i in [0, count) on `threads` workers; each task writes only
// its own slot, so the result does not depend on the thread count.
template <typename Task>
void parallel_for(int count, int threads, Task&& task) {
  threads = std::clamp(threads, 1, std::max(count, 1));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) task(i);
    return;
  }
  std::vector<std::jthread> workers;
  for (int t = 0; t < threads; ++t)
    workers.emplace_back([&, t] {
      for (int i = t; i < count; i += threads) task(i);
    });
}

}  // namespace

TreeFunction random_tree_function(const TreeParams& tree, int radius,
                                  std::uint64_t seed, std::uint64_t stream_id) {
  auto engine = make_engine(seed, stream_id, static_cast<std::uint32_t>(radius));
  return {tree, radius, gaussian_vector(engine, ball_size(tree, radius))};
}

CylinderFunction random_cylinder_function(const TreeParams& tree, int depth,
                                          std::uint64_t seed,
                                          std::uint64_t stream_id) {
  auto engine = make_engine(seed, stream_id, 0x10000u + static_cast<std::uint32_t>(depth));
  return {tree, depth, gaussian_vector(engine, sphere_size(tree, depth))};
}

std::string csv_header(const std::string& command, const ExperimentConfig& c) {
  const TreeParams tree(c.q);
  std::string n_list;
  for (std::size_t i = 0; i < c.n_list.size(); ++i)
    n_list += (i ? ";" : "") + std::to_string(c.n_list[i]);
  std::string out = fmt::format("# htree {}\n", kVersion);
  out += fmt::format(
      "# config: command={} q={} seed={} depth={} grid={} samples={} p={} r={} "
      "alpha={} z_re={} z_im={} support_radius={} nmax={} n_list={} terms={} "
      "mode={} input={}\n",
      command, c.q, c.seed, c.depth, c.grid, c.samples, format_real(c.p),
      format_real(c.r), format_real(c.alpha), format_real(c.z_re),
      format_real(c.z_im), c.support_radius, c.nmax, n_list, c.terms, c.mode,
      c.input);
  out += fmt::format("# q={} tau={}\n", c.q, format_real(tree.tau()));
  return out;
}

CommandResult cmd_spherical(const ExperimentConfig& c) {
  const TreeParams tree(c.q);
  const SpectralParam z(tree, {c.z_re, c.z_im});
  if (c.nmax < 0) throw DomainError("nmax must be >= 0");
  const Eigen::VectorXcd table = spherical_table(z, c.nmax + 1);

  CommandResult result;
  result.output = csv_header("spherical", c) + "n,re,im,abs_scaled,degenerate\n";
  for (int n = 0; n <= c.nmax; ++n) {
    const double scaled = std::abs(table[n]) * std::pow(static_cast<double>(c.q), 0.5 * n);
    result.output += fmt::format("{},{},{},{},{}\n", n, format_real(table[n].real()),
                                 format_real(table[n].imag()), format_real(scaled),
                                 z.degenerate() ? 1 : 0);
  }
  if (c.check) {
    // radial eigen-recurrence (phi(n-1) + q phi(n+1)) / (q+1) = gamma phi(n)
    const Complex g = gamma(z);
    double worst = std::abs(table[1] - g * table[0]);
    for (int n = 1; n <= c.nmax; ++n)
      worst = std::max(worst, std::abs((table[n - 1] + static_cast<double>(c.q) * table[n + 1]) /
                                           static_cast<double>(c.q + 1) -
                                       g * table[n]));
    if (worst > 1e-12) result.exit_code = kExitCheckFailed;
  }
  return result;
}

CommandResult cmd_restriction(const ExperimentConfig& c) {
  const TreeParams tree(c.q);
  const std::string mode = c.mode.empty() ? "theorem-a" : c.mode;
  if (mode != "theorem-a" && mode != "theorem-b")
    throw DomainError("restriction mode must be theorem-a or theorem-b");
  if (c.support_radius < 1) throw DomainError("support radius must be >= 1");
  if (c.samples < 1) throw DomainError("need at least one sample");

  double p = 2;
  double r = 2;
  Complex zv;
  std::string norm_name;
  double norm_p = 2;
  double norm_r = 1;
  if (mode == "theorem-a") {
    p = c.p;
    r = c.r;
    if (!(p >= 1 && p < 2)) throw DomainError("theorem-a needs p in [1, 2)");
    const double pp = conjugate_exponent(p);
    if (!(r >= p && r <= pp))
      throw DomainError("theorem-a needs r in [p, p']");
    zv = {c.alpha, strip_delta(conjugate_exponent(r))};
    norm_p = p;
    if (p == 1) {
      norm_r = 1;
      norm_name = "l1";
    } else if (r == p || r == pp) {
      norm_r = 1;
      norm_name = "lorentz_p1";
    } else {
      norm_r = p;
      norm_name = "lp";
    }
  } else {
    zv = {c.alpha, 0.0};
    norm_name = "lorentz_21";
  }
  const SpectralParam z(tree, zv);

  const int radius = c.support_radius;
  const int reference = std::max(radius - 2, 1);
  const int tasks = 2 * c.samples;
  struct Row {
    int radius;
    double norm;
    double lhs;
  };
  std::vector<Row> rows(static_cast<std::size_t>(tasks));
  parallel_for(tasks, c.threads, [&](int t) {
    const int id = t % c.samples;
    const int rad = t < c.samples ? reference : radius;
    const TreeFunction f = random_tree_function(tree, rad, c.seed, static_cast<std::uint64_t>(id));
    rows[static_cast<std::size_t>(t)] = {rad, lorentz_norm(f, norm_p, norm_r),
                                         restriction_lhs(f, z, r)};
  });

  CommandResult result;
  result.output = csv_header("restriction", c) +
                  fmt::format("# norm={} z_re={} z_im={} r={}\n", norm_name,
                              format_real(z.value().real()), format_real(z.value().imag()),
                              format_real(r)) +
                  "seed,sample_id,radius,norm,lhs,ratio\n";
  double max_reference = 0;
  double max_ratio = 0;
  for (int t = 0; t < tasks; ++t) {
    const Row& row = rows[static_cast<std::size_t>(t)];
    const double ratio = row.lhs / row.norm;
    (t < c.samples ? max_reference : max_ratio) =
        std::max(t < c.samples ? max_reference : max_ratio, ratio);
    result.output += fmt::format("{},{},{},{},{},{}\n", c.seed, t % c.samples, row.radius,
                                 format_real(row.norm), format_real(row.lhs),
                                 format_real(ratio));
  }

  json summary = {{"config", config_json("restriction", c)},
                  {"mode", mode},
                  {"norm", norm_name},
                  {"z", {z.value().real(), z.value().imag()}},
                  {"r", real_or_inf(r)},
                  {"radius", radius},
                  {"reference_radius", reference},
                  {"max_ratio", max_ratio},
                  {"max_ratio_reference", max_reference}};

  bool passed = true;
  if (mode == "theorem-a" && p == 1) {
    const bool endpoint = std::max(max_ratio, max_reference) <= 1 + 1e-12;
    summary["check"] = "endpoint: max ratio <= 1 + 1e-12 (hard)";
    passed = endpoint;
  } else {
    const bool stable = max_ratio <= 2 * max_reference;
    summary["check"] =
        "heuristic: max ratio at radius R <= 2 x max ratio at radius R-2";
    summary["stable"] = stable;
    passed = stable;
    if (mode == "theorem-b") {
      // radial extremal witness conj(phi_z) on B(o,R) and B(o,2R)
      auto witness = [&](int rad) {
        Eigen::VectorXcd profile(rad + 1);
        for (int n = 0; n <= rad; ++n) profile[n] = std::conj(spherical(z, n));
        const TreeFunction f = TreeFunction::radial(tree, profile);
        return std::abs(spherical_transform(f, z)) / lorentz_norm(f, 2, 1);
      };
      const double w_small = witness(radius);
      const double w_large = witness(2 * radius);
      const bool divergent = w_large >= 1.5 * w_small;
      summary["witness_ratio"] = w_small;
      summary["witness_ratio_doubled_radius"] = w_large;
      summary["divergence"] = divergent;
      summary["divergence_rule"] =
          "heuristic: radial witness ratio grows >= 1.5x when the radius doubles";
      passed = passed && !divergent;
    }
  }
  summary["passed"] = passed;
  result.summary = dump(summary);
  result.exit_code = passed ? kExitOk : kExitCheckFailed;
  return result;
}

CommandResult cmd_eigen(const ExperimentConfig& c) {
  const TreeParams tree(c.q);
  const SpectralParam z(tree, {c.z_re, c.z_im});
  const std::string mode = c.mode.empty() ? "roundtrip" : c.mode;
  if (mode != "roundtrip" && mode != "characterize")
    throw DomainError("eigen mode must be roundtrip or characterize");

  json report = {{"config", config_json("eigen", c)}, {"mode", mode},
                 {"pole_point", z.pole_point()}};
  CommandResult result;

  TreeFunction u;
  CylinderFunction source;
  if (mode == "roundtrip") {
    if (c.depth < 0) throw DomainError("depth must be >= 0");
    source = random_cylinder_function(tree, c.depth, c.seed, 0);
    u = poisson_transform(z, source, c.depth);
  } else {
    if (c.input.empty()) throw DomainError("characterize needs --in <tree function JSON>");
    u = tree_function_from_json(read_json_file(c.input));
    if (!(u.tree() == tree)) throw DomainError("input q differs from --q");
  }

  try {
    const MartingaleRecovery recovery = martingale_from_eigenfunction(u, z);
    report["eigen_residual"] = recovery.eigen_residual;
    json levels = json::array();
    double worst = 0;
    const double exponent = conjugate_exponent(c.p);
    double sup_norm = 0;
    for (int n = 0; n <= u.radius(); ++n) {
      const auto& fn = recovery.martingale.entries[static_cast<std::size_t>(n)];
      json level = {{"level", n},
                    {"epsilon_residual", recovery.level_residuals[static_cast<std::size_t>(n)]}};
      worst = std::max(worst, recovery.level_residuals[static_cast<std::size_t>(n)]);
      const double norm = boundary_lp_norm(fn, exponent);
      sup_norm = std::max(sup_norm, norm);
      level["norm"] = norm;
      if (mode == "roundtrip") {
        const double error = (fn.values() - cond_expect(source, n).values()).cwiseAbs().maxCoeff();
        level["error"] = error;
        worst = std::max(worst, error);
      }
      levels.push_back(level);
    }
    report["levels"] = levels;
    report["norm_exponent"] = real_or_inf(exponent);
    report["sup_norm"] = sup_norm;
    report["martingale_defect"] = recovery.martingale.compatibility_defect();
    report["max_error"] = worst;
    const bool passed = worst < 1e-9;
    report["passed"] = passed;
    result.exit_code = passed ? kExitOk : kExitCheckFailed;
  } catch (const SingularSystem& e) {
    report["singular"] = true;
    report["singular_level"] = e.level();
    report["message"] = e.what();
    result.exit_code = kExitNumerical;
  } catch (const NotEigenfunction& e) {
    report["not_eigenfunction"] = true;
    report["eigen_residual"] = e.residual();
    result.exit_code = kExitCheckFailed;
  }
  result.output = dump(report);
  return result;
}

CommandResult cmd_bmn(const ExperimentConfig& c) {
  const TreeParams tree(c.q);
  const double s = c.z_re;
  if (c.terms < 0) throw DomainError("number of terms must be >= 0");
  const Complex cs = c_function(SpectralParam(tree, s));  // PoleError on (tau/2)Z
  const double target = 2 * std::norm(cs);

  CommandResult result;
  result.output = csv_header("bmn", c) + "n,direct_sum,closed_sum,cesaro,target,rel_gap\n";
  bool passed = true;
  for (int n : c.n_list) {
    const double direct = b_prime_sumsq(tree, n, c.terms, s);
    const double closed = b_prime_sumsq_closed(tree, n, c.terms, s);
    const double cesaro = c.terms > 0 ? direct / c.terms : 0.0;
    const double gap =
        direct == 0 && closed == 0 ? 0.0 : std::abs(direct - closed) / std::abs(direct);
    passed = passed && gap < 1e-9;
    if (c.check) passed = passed && std::abs(cesaro / target - 1) < 0.02;
    result.output += fmt::format("{},{},{},{},{},{}\n", n, format_real(direct),
                                 format_real(closed), format_real(cesaro),
                                 format_real(target), format_real(gap));
  }
  result.exit_code = passed ? kExitOk : kExitCheckFailed;
  return result;
}

CommandResult cmd_plancherel(const ExperimentConfig& c, bool with_parseval) {
  const TreeParams tree(c.q);
  const int radius = c.support_radius;
  if (radius < 0) throw DomainError("support radius must be >= 0");
  const std::string command = with_parseval ? "plancherel" : "invert";
  json report = {{"config", config_json(command, c)}};
  CommandResult result;

  const PlancherelMeasure measure = PlancherelMeasure::calibrate(tree);
  const double weight_sum = measure.weights(c.grid).sum();
  report["plancherel_constant"] = measure.constant();
  report["plancherel_constant_closed_form"] = PlancherelMeasure::closed_form_constant(tree);
  report["calibration_points"] = measure.calibration_points();
  report["weight_sum"] = weight_sum;

  bool passed = std::abs(weight_sum - 1) <= 1e-10;

  const Vertex origin = Vertex::root();
  const Vertex far = vertex_at(tree, std::min(radius, 2), 0);
  std::vector<std::pair<std::string, TreeFunction>> cases = {
      {"delta_o", TreeFunction::delta(tree, origin, radius)},
      {"delta_" + far.to_string(), TreeFunction::delta(tree, far, radius)}};
  for (int i = 0; i < c.samples; ++i)
    cases.emplace_back("random_" + std::to_string(i),
                       random_tree_function(tree, radius, c.seed, static_cast<std::uint64_t>(i)));

  std::vector<double> errors(cases.size());
  parallel_for(static_cast<int>(cases.size()), c.threads, [&](int i) {
    errors[static_cast<std::size_t>(i)] =
        invert(cases[static_cast<std::size_t>(i)].second, measure, c.grid).max_error;
  });
  const InversionReport first = invert(cases.front().second, measure, c.grid);
  json inversion = json::array();
  double max_error = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    inversion.push_back({{"case", cases[i].first}, {"max_error", errors[i]}});
    max_error = std::max(max_error, errors[i]);
  }
  report["inversion"] = inversion;
  report["max_inversion_error"] = max_error;
  report["delta_o_value_at_o"] = first.reconstruction.values()[0].real();
  if (!first.grid_warning.empty()) report["grid_warning"] = first.grid_warning;
  passed = passed && max_error < 1e-8;

  if (with_parseval) {
    const ParsevalReport self =
        parseval(cases[0].second, cases[0].second, measure, c.grid);
    const ParsevalReport cross =
        parseval(cases[0].second, cases[1].second, measure, c.grid);
    report["parseval_delta_o"] = self.residual;
    report["parseval_orthogonality_rhs"] = std::abs(cross.rhs);
    passed = passed && self.residual < 1e-10 && std::abs(cross.rhs) < 1e-8;

    std::vector<double> relative(static_cast<std::size_t>(c.samples));
    parallel_for(c.samples, c.threads, [&](int i) {
      const TreeFunction f1 =
          random_tree_function(tree, radius, c.seed, static_cast<std::uint64_t>(i));
      const TreeFunction f2 = random_tree_function(
          tree, radius, c.seed, static_cast<std::uint64_t>(c.samples + i));
      relative[static_cast<std::size_t>(i)] = parseval(f1, f2, measure, c.grid).relative;
    });
    const double worst =
        relative.empty() ? 0.0 : *std::max_element(relative.begin(), relative.end());
    report["parseval_max_relative_residual"] = worst;
    passed = passed && worst < 1e-8;
  }
  report["passed"] = passed;
  result.output = dump(report);
  result.exit_code = passed ? kExitOk : kExitCheckFailed;
  return result;
}

CommandResult cmd_poisson(const ExperimentConfig& c) {
  if (c.input.empty()) throw DomainError("poisson needs --in <cylinder function JSON>");
  const CylinderFunction f = cylinder_from_json(read_json_file(c.input));
  const SpectralParam z(f.tree(), {c.z_re, c.z_im});
  CommandResult result;
  result.output = tree_function_to_json(poisson_transform(z, f, c.support_radius)).dump(2) + "\n";
  return result;
}

CommandResult cmd_hft(const ExperimentConfig& c) {
  if (c.input.empty()) throw DomainError("hft needs --in <tree function JSON>");
  const TreeFunction f = tree_function_from_json(read_json_file(c.input));
  const SpectralParam z(f.tree(), {c.z_re, c.z_im});
  CommandResult result;
  result.output = cylinder_to_json(hf_transform(f, z)).dump(2) + "\n";
  return result;
}

CommandResult cmd_sample(const ExperimentConfig& c) {
  const TreeParams tree(c.q);
  const PlancherelMeasure measure = PlancherelMeasure::calibrate(tree);
  std::optional<TreeFunction> f;
  if (!c.input.empty()) {
    f = tree_function_from_json(read_json_file(c.input));
    if (!(f->tree() == tree)) throw DomainError("input q differs from --q");
  }
  const SpectralSample sample = sample_spectrum(measure, c.grid, f ? &*f : nullptr);

  CommandResult result;
  result.output = csv_header("sample", c) + "s,weight";
  if (!sample.transforms.empty())
    for (Eigen::Index i = 0; i < sample.transforms.front().size(); ++i)
      result.output += fmt::format(",re_{0},im_{0}", i);
  result.output += "\n";
  for (Eigen::Index j = 0; j < sample.grid.size(); ++j) {
    result.output += format_real(sample.grid[j]) + "," + format_real(sample.weights[j]);
    if (!sample.transforms.empty()) {
      const auto& g = sample.transforms[static_cast<std::size_t>(j)];
      for (Eigen::Index i = 0; i < g.size(); ++i)
        result.output += "," + format_real(g[i].real()) + "," + format_real(g[i].imag());
    }
    result.output += "\n";
  }
  return result;
}

}  // namespace htree
