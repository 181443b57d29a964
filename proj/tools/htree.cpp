// Command-line front end: one subcommand per experiment.
#include <CLI11.hpp>

#include <iostream>

#include "htree/errors.hpp"
#include "htree/experiments.hpp"
#include "htree/io.hpp"
#include "htree/spectral.hpp"

namespace {

using htree::CommandResult;
using htree::ExperimentConfig;

void add_common(CLI::App* sub, ExperimentConfig& c) {
  sub->add_option("--q", c.q, "branching number (tree degree q+1)")->check(CLI::Range(2, 1000));
  sub->add_option("--seed", c.seed, "64-bit RNG seed");
  sub->add_option("--out", c.out, "output file (default: stdout)");
  sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
  sub->add_flag("--check", c.check, "turn the command's sanity checks into the exit code");
}

void add_z(CLI::App* sub, ExperimentConfig& c) {
  sub->add_option("--z-re", c.z_re, "Re z");
  sub->add_option("--z-im", c.z_im, "Im z");
}

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity") return htree::kInfinity;
  std::size_t used = 0;
  const double value = std::stod(text, &used);
  if (used != text.size()) throw htree::DomainError("bad exponent: " + text);
  return value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic analysis on homogeneous trees"};
  app.set_version_flag("--version", std::string(htree::kVersion));
  app.require_subcommand(1);

  ExperimentConfig c;
  std::string p_text = "1";
  std::string r_text = "2";

  auto* spherical = app.add_subcommand("spherical", "table of the spherical function phi_z");
  add_common(spherical, c);
  add_z(spherical, c);
  spherical->add_option("--nmax", c.nmax, "last distance");

  auto* restriction = app.add_subcommand("restriction", "restriction inequality experiment");
  add_common(restriction, c);
  restriction->add_option("--mode", c.mode, "theorem-a | theorem-b")
      ->check(CLI::IsMember({"theorem-a", "theorem-b"}));
  restriction->add_option("--p", p_text, "Lebesgue exponent p (or inf)");
  restriction->add_option("--r", r_text, "boundary exponent r (or inf)");
  restriction->add_option("--alpha", c.alpha, "Re z on the spectral line");
  restriction->add_option("--samples", c.samples, "random functions per radius");
  restriction->add_option("--support-radius", c.support_radius, "support radius R");

  auto* eigen = app.add_subcommand("eigen", "eigenfunction / martingale correspondence");
  add_common(eigen, c);
  add_z(eigen, c);
  eigen->add_option("--mode", c.mode, "roundtrip | characterize")
      ->check(CLI::IsMember({"roundtrip", "characterize"}));
  eigen->add_option("--depth", c.depth, "boundary depth of the random source");
  eigen->add_option("--p", p_text, "report sup_n |F_n|_{p'}");
  eigen->add_option("--in", c.input, "tree function JSON (characterize)");

  auto* bmn = app.add_subcommand("bmn", "partial sums of squared B-coefficients");
  add_common(bmn, c);
  bmn->add_option("--z-re", c.z_re, "real spectral parameter s");
  bmn->add_option("--n", c.n_list, "indices n")->delimiter(',');
  bmn->add_option("--terms", c.terms, "partial-sum length N");

  auto* invert = app.add_subcommand("invert", "Fourier inversion round trips");
  auto* plancherel = app.add_subcommand("plancherel", "inversion plus Parseval identity");
  for (auto* sub : {invert, plancherel}) {
    add_common(sub, c);
    sub->add_option("--grid", c.grid, "spectral grid size M (power of two)");
    sub->add_option("--samples", c.samples, "random functions / pairs");
    sub->add_option("--support-radius", c.support_radius, "support radius R");
  }

  auto* poisson = app.add_subcommand("poisson", "Poisson transform of a cylinder function");
  add_common(poisson, c);
  add_z(poisson, c);
  poisson->add_option("--in", c.input, "cylinder function JSON")->required();
  poisson->add_option("--support-radius", c.support_radius, "output ball radius");

  auto* hft = app.add_subcommand("hft", "Fourier transform of a finitely supported function");
  add_common(hft, c);
  add_z(hft, c);
  hft->add_option("--in", c.input, "tree function JSON")->required();

  auto* sample = app.add_subcommand("sample", "spectral grid and Plancherel weights");
  add_common(sample, c);
  sample->add_option("--grid", c.grid, "spectral grid size M");
  sample->add_option("--in", c.input, "tree function JSON whose transform is sampled");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : htree::kExitUsage;
  }

  try {
    c.p = parse_exponent(p_text);
    c.r = parse_exponent(r_text);
    CommandResult result;
    if (*spherical) result = htree::cmd_spherical(c);
    else if (*restriction) result = htree::cmd_restriction(c);
    else if (*eigen) result = htree::cmd_eigen(c);
    else if (*bmn) result = htree::cmd_bmn(c);
    else if (*invert) result = htree::cmd_plancherel(c, false);
    else if (*plancherel) result = htree::cmd_plancherel(c, true);
    else if (*poisson) result = htree::cmd_poisson(c);
    else if (*hft) result = htree::cmd_hft(c);
    else result = htree::cmd_sample(c);

    if (c.out.empty()) {
      std::cout << result.output;
      if (!result.summary.empty()) std::cerr << result.summary;
    } else {
      htree::write_text_file(c.out, result.output);
      if (!result.summary.empty()) htree::write_text_file(c.out + ".summary.json", result.summary);
    }
    return result.exit_code;
  } catch (const htree::SingularSystem& e) {
    std::cerr << "singular system: " << e.what() << "\n";
    return htree::kExitNumerical;
  } catch (const htree::CalibrationError& e) {
    std::cerr << "calibration failed: " << e.what() << "\n";
    return htree::kExitNumerical;
  } catch (const htree::NotEigenfunction& e) {
    std::cerr << e.what() << "\n";
    return htree::kExitCheckFailed;
  } catch (const htree::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return htree::kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return htree::kExitUsage;
  }
}
