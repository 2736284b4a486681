#include "CLI11.hpp"

#include "ksl/clifford.hpp"
#include "ksl/common.hpp"
#include "ksl/io.hpp"
#include "ksl/krein.hpp"
#include "ksl/torus.hpp"

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct Options {
  int n = 2;
  int k = 0;
  int cutoff = 8;
  std::string theta = "zero";
  std::string reflection = "standard";
  std::string config_path;
  std::string estimator = "slope";
  double window = 0.75;
  std::string observable = "trace";
  std::vector<std::string> a_specs;
  std::string j_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
};

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  return dir.back() == '/' ? dir + name : dir + "/" + name;
}

ksl::io::ModelConfig make_config(const Options& opt) {
  if (!opt.config_path.empty())
    return ksl::io::parse_model_config(ksl::io::read_file(opt.config_path));
  ksl::io::ModelConfig config;
  config.n = opt.n;
  config.k = opt.k;
  config.cutoff = opt.cutoff;
  if (opt.theta != "zero")
    config.theta = ksl::io::parse_real_matrix_json(ksl::io::read_file(opt.theta));
  if (opt.reflection != "standard")
    config.reflection = ksl::io::parse_real_matrix_json(ksl::io::read_file(opt.reflection));
  return config;
}

// Observable grammar: each occurrence is "[scale*]u:c1,...,cn"; occurrences add.
ksl::torus::AlgebraElement parse_observable(const std::vector<std::string>& specs, int n) {
  if (specs.empty()) return ksl::torus::AlgebraElement::unit(n);
  ksl::torus::AlgebraElement acc(n);
  for (const std::string& spec : specs) {
    double scale = 1.0;
    std::string body = spec;
    if (const auto star = spec.find('*'); star != std::string::npos) {
      try {
        scale = std::stod(spec.substr(0, star));
      } catch (const std::exception&) {
        throw ksl::Error("--a: malformed scale in '" + spec + "'");
      }
      body = spec.substr(star + 1);
    }
    if (body.rfind("u:", 0) != 0)
      throw ksl::Error("--a: expected [scale*]u:c1,...,cn, got '" + spec + "'");
    ksl::torus::Mode y;
    std::string digits = body.substr(2);
    std::size_t pos = 0;
    while (pos <= digits.size()) {
      const auto comma = digits.find(',', pos);
      const std::string tok =
          digits.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        y.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw ksl::Error("--a: malformed mode component in '" + spec + "'");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (static_cast<int>(y.size()) != n)
      throw ksl::Error("--a: mode must have exactly n components");
    acc = acc + ksl::torus::AlgebraElement::u(y).scaled(ksl::Complex(scale, 0.0));
  }
  return acc;
}

int run_gamma(const Options& opt) {
  const ksl::clifford::Signature sig(opt.n, opt.k);
  const ksl::clifford::GammaRep rep = ksl::clifford::build_gamma(sig);
  const ksl::clifford::RelationReport report = ksl::clifford::verify_clifford_relations(rep);
  ksl::io::write_file(join_path(opt.out_dir, "gamma.json"),
                      ksl::io::gamma_report_json(rep, report, opt.seed));
  std::cout << "gamma (" << sig.n << "," << sig.k << ") dim " << rep.dim
            << " max violation " << ksl::io::fmt_float(report.max_violation())
            << (report.pass() ? " pass" : " FAIL") << "\n";
  return report.pass() ? 0 : 2;
}

int run_spectrum(const Options& opt) {
  const ksl::io::ModelConfig config = make_config(opt);
  const ksl::torus::Model model = ksl::io::build_model_from_config(config);
  ksl::io::write_file(join_path(opt.out_dir, "spectrum.csv"), ksl::io::spectrum_csv(model));
  std::cout << "spectrum: " << model.lattice.count << " modes, multiplicity "
            << model.lattice.spinor_dim << "\n";
  return 0;
}

int run_dixmier(const Options& opt) {
  const ksl::io::ModelConfig config = make_config(opt);
  const ksl::torus::Model model = ksl::io::build_model_from_config(config);
  const bool slope = opt.estimator == "slope";
  if (!slope && opt.estimator != "tail")
    throw ksl::Error("--estimator must be 'slope' or 'tail'");
  const ksl::krein::EstimatorMethod method = slope ? ksl::krein::EstimatorMethod::slope
                                                   : ksl::krein::EstimatorMethod::tail;

  ksl::krein::DixmierEstimate estimate;
  double target = 0.0;
  std::vector<double> table_sigma;

  if (opt.observable == "trace") {
    const ksl::torus::AlgebraElement a = parse_observable(opt.a_specs, model.sig.n);
    estimate = ksl::torus::trace_functional(model, a, ksl::torus::TracePower::delta_n,
                                            method, opt.window);
    target = ksl::torus::tau(a).real() / ksl::torus::c_constant(model.sig.n);
    table_sigma = ksl::torus::unit_trace_sigma(model, ksl::torus::TracePower::delta_n);
    const double a0 = ksl::torus::tau(a).real();
    for (double& v : table_sigma) v *= a0;
  } else if (opt.observable == "signature") {
    if (!slope) throw ksl::Error("the signature observable requires the slope estimator");
    if (!opt.a_specs.empty())
      throw ksl::Error("the signature observable is defined for the unit element only");
    const ksl::torus::SignatureRatio ratio = ksl::torus::signature_ratio(model, opt.window);
    estimate = ratio.numerator;
    estimate.value = ratio.value;
    estimate.value_imag = 0.0;
    estimate.scale = ratio.denominator.scale;
    estimate.converged = ratio.converged;
    target = ksl::torus::signature_target(model.sig);
    table_sigma = ksl::torus::unit_trace_sigma(model, ksl::torus::TracePower::d2_delta_n2);
  } else {
    throw ksl::Error("--observable must be 'trace' or 'signature'");
  }

  ksl::io::write_file(join_path(opt.out_dir, "dixmier.json"),
                      ksl::io::dixmier_report_json(estimate, target, opt.observable, config,
                                                   model.rational_theta));
  const auto rows = ksl::krein::convergence_table(table_sigma, opt.window);
  ksl::io::write_file(join_path(opt.out_dir, "convergence.csv"),
                      ksl::io::convergence_csv(rows));

  std::cout << "dixmier " << opt.observable << ": value "
            << ksl::io::fmt_float(estimate.value) << " target "
            << ksl::io::fmt_float(target)
            << (estimate.converged ? " converged" : " NOT CONVERGED") << "\n";
  if (!estimate.converged) {
    std::cerr << "non-convergence: residual " << ksl::io::fmt_float(estimate.residual)
              << " exceeds threshold for scale " << ksl::io::fmt_float(estimate.scale)
              << " over window [" << estimate.window_lo << ", " << estimate.window_hi
              << "]\n";
    return 3;
  }
  return 0;
}

int run_classify(const Options& opt) {
  const ksl::io::ModelConfig config = make_config(opt);
  const ksl::torus::Model model = ksl::io::build_model_from_config(config);
  if (opt.j_path.empty()) throw ksl::Error("classify requires --j <matrix file>");
  const ksl::CMatrix j_tilde =
      ksl::io::parse_complex_matrix_json(ksl::io::read_file(opt.j_path));
  const ksl::torus::AdmissibilityReport report =
      ksl::torus::admissibility_check(model, j_tilde);
  ksl::io::write_file(join_path(opt.out_dir, "classify.json"),
                      ksl::io::admissibility_report_json(report));
  std::cout << "classify: " << (report.pass ? "admissible" : "NOT admissible") << "\n";
  for (const auto& entry : report.entries)
    std::cout << "  " << entry.name << ": " << (entry.pass ? "pass" : "fail")
              << " (violation " << ksl::io::fmt_float(entry.violation) << ")\n";
  return report.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical workbench for semi-Riemannian spectral triples on deformed tori"};
  app.require_subcommand(1);
  app.footer("Environment: KSL_THREADS caps the worker thread count.");

  Options opt;

  auto add_model_flags = [&](CLI::App* cmd) {
    cmd->add_option("--n", opt.n, "Torus dimension")->capture_default_str();
    cmd->add_option("--k", opt.k, "Number of timelike directions")->capture_default_str();
    cmd->add_option("--M", opt.cutoff, "Lattice cutoff (box radius)")->capture_default_str();
    cmd->add_option("--theta", opt.theta, "Deformation matrix JSON file, or 'zero'")
        ->capture_default_str();
    cmd->add_option("--reflection", opt.reflection,
                    "Spacelike reflection JSON file, or 'standard'")
        ->capture_default_str();
    cmd->add_option("--config", opt.config_path,
                    "Model config JSON file (overrides --n/--k/--M/--theta/--reflection)");
  };
  auto add_common_flags = [&](CLI::App* cmd) {
    cmd->add_option("--out", opt.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--seed", opt.seed, "Seed echoed into reports")->capture_default_str();
  };

  CLI::App* gamma = app.add_subcommand("gamma", "Build a gamma representation and verify it");
  gamma->add_option("--n", opt.n, "Dimension")->capture_default_str();
  gamma->add_option("--k", opt.k, "Number of timelike directions")->capture_default_str();
  add_common_flags(gamma);

  CLI::App* spectrum = app.add_subcommand("spectrum", "Emit the truncated Delta_J spectrum");
  add_model_flags(spectrum);
  add_common_flags(spectrum);

  CLI::App* dixmier = app.add_subcommand("dixmier", "Dixmier-trace estimates and tables");
  add_model_flags(dixmier);
  add_common_flags(dixmier);
  dixmier->add_option("--estimator", opt.estimator, "Estimator: slope or tail")
      ->capture_default_str();
  dixmier->add_option("--window", opt.window, "Trailing log-scale window fraction in (0, 1]")
      ->capture_default_str();
  dixmier->add_option("--observable", opt.observable, "Observable: trace or signature")
      ->capture_default_str();
  dixmier->add_option("--a", opt.a_specs,
                      "Algebra element term '[scale*]u:c1,...,cn' (repeatable, terms add)");

  CLI::App* classify = app.add_subcommand("classify", "Admissibility check of a symmetry");
  add_model_flags(classify);
  add_common_flags(classify);
  classify->add_option("--j", opt.j_path, "Candidate fundamental symmetry JSON matrix file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (gamma->parsed()) return run_gamma(opt);
    if (spectrum->parsed()) return run_spectrum(opt);
    if (dixmier->parsed()) return run_dixmier(opt);
    if (classify->parsed()) return run_classify(opt);
  } catch (const ksl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
