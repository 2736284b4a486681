#pragma once

#include "ksl/clifford.hpp"
#include "ksl/common.hpp"
#include "ksl/krein.hpp"
#include "ksl/torus.hpp"

#include <optional>
#include <span>
#include <string>

namespace ksl::io {

// Fixed-width float format used by all CSV output: 17 significant digits.
std::string fmt_float(double x);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Real matrices are JSON arrays of rows; complex matrices use [re, im] pairs
// (plain numbers are accepted as real entries on input).
RMatrix parse_real_matrix_json(const std::string& text);
CMatrix parse_complex_matrix_json(const std::string& text);
std::string real_matrix_to_json(const RMatrix& m);
std::string complex_matrix_to_json(const CMatrix& m);

// Model configuration: { n, k, cutoff, theta: [[..]] | "zero",
// reflection: [[..]] | "standard" }.
struct ModelConfig {
  int n = 0;
  int k = 0;
  int cutoff = 0;
  std::optional<RMatrix> theta;       // absent = zero deformation
  std::optional<RMatrix> reflection;  // absent = standard reflection r0 = g
};

ModelConfig parse_model_config(const std::string& text);
std::string model_config_to_json(const ModelConfig& config);
torus::Model build_model_from_config(const ModelConfig& config);

// GammaRep with its relation report, as a self-describing JSON document.
std::string gamma_report_json(const clifford::GammaRep& rep,
                              const clifford::RelationReport& report,
                              std::uint64_t seed);

// One row per mode in ascending-eigenvalue order:
// y1,...,yn,eigenvalue,multiplicity.
std::string spectrum_csv(const torus::Model& model);

// N,sigma_N,sigma_over_logN,running_slope.
std::string convergence_csv(std::span<const krein::ConvergenceRow> rows);

// Estimate report carrying the target so acceptance runs are self-describing.
std::string dixmier_report_json(const krein::DixmierEstimate& estimate, double target,
                                const std::string& observable, const ModelConfig& config,
                                bool rational_theta_warning);

std::string admissibility_report_json(const torus::AdmissibilityReport& report);

}  // namespace ksl::io
