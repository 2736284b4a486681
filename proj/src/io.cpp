#include "ksl/io.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ksl::io {

namespace {

using nlohmann::json;

json complex_to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

json cmatrix_to_json_value(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json rmatrix_to_json_value(const RMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json parse_json(const std::string& text, const char* what) {
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) throw Error(std::string(what) + ": malformed JSON");
  return value;
}

RMatrix real_matrix_from_json(const json& value, const char* what) {
  if (!value.is_array() || value.empty())
    throw Error(std::string(what) + ": expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(value.size());
  const auto& first = value.at(0);
  if (!first.is_array() || first.empty())
    throw Error(std::string(what) + ": expected array rows");
  const auto cols = static_cast<Eigen::Index>(first.size());
  RMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = value.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw Error(std::string(what) + ": ragged matrix rows");
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto& entry = row.at(static_cast<std::size_t>(j));
      if (!entry.is_number()) throw Error(std::string(what) + ": non-numeric entry");
      m(i, j) = entry.get<double>();
    }
  }
  return m;
}

CMatrix complex_matrix_from_json(const json& value, const char* what) {
  if (!value.is_array() || value.empty())
    throw Error(std::string(what) + ": expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(value.size());
  const auto& first = value.at(0);
  if (!first.is_array() || first.empty())
    throw Error(std::string(what) + ": expected array rows");
  const auto cols = static_cast<Eigen::Index>(first.size());
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = value.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw Error(std::string(what) + ": ragged matrix rows");
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto& entry = row.at(static_cast<std::size_t>(j));
      if (entry.is_number()) {
        m(i, j) = Complex(entry.get<double>(), 0.0);
      } else if (entry.is_array() && entry.size() == 2 && entry.at(0).is_number() &&
                 entry.at(1).is_number()) {
        m(i, j) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
      } else {
        throw Error(std::string(what) + ": entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

json estimate_to_json(const krein::DixmierEstimate& est) {
  json out;
  out["value"] = est.value;
  out["value_imag"] = est.value_imag;
  out["method"] = est.method == krein::EstimatorMethod::slope ? "slope" : "tail";
  out["window"] = json::array({est.window_lo, est.window_hi});
  out["residual"] = est.residual;
  out["scale"] = est.scale;
  out["converged"] = est.converged;
  return out;
}

json model_config_to_json_value(const ModelConfig& config) {
  json out;
  out["n"] = config.n;
  out["k"] = config.k;
  out["cutoff"] = config.cutoff;
  if (config.theta)
    out["theta"] = rmatrix_to_json_value(*config.theta);
  else
    out["theta"] = "zero";
  if (config.reflection)
    out["reflection"] = rmatrix_to_json_value(*config.reflection);
  else
    out["reflection"] = "standard";
  return out;
}

}  // namespace

std::string fmt_float(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
  if (!out) throw Error("write failed: " + path);
}

RMatrix parse_real_matrix_json(const std::string& text) {
  return real_matrix_from_json(parse_json(text, "matrix"), "matrix");
}

CMatrix parse_complex_matrix_json(const std::string& text) {
  return complex_matrix_from_json(parse_json(text, "matrix"), "matrix");
}

std::string real_matrix_to_json(const RMatrix& m) { return rmatrix_to_json_value(m).dump(2); }

std::string complex_matrix_to_json(const CMatrix& m) { return cmatrix_to_json_value(m).dump(2); }

ModelConfig parse_model_config(const std::string& text) {
  const json value = parse_json(text, "model config");
  if (!value.is_object()) throw Error("model config: expected a JSON object");
  ModelConfig config;
  if (!value.contains("n") || !value.at("n").is_number_integer())
    throw Error("model config: integer field 'n' required");
  if (!value.contains("k") || !value.at("k").is_number_integer())
    throw Error("model config: integer field 'k' required");
  if (!value.contains("cutoff") || !value.at("cutoff").is_number_integer())
    throw Error("model config: integer field 'cutoff' required");
  config.n = value.at("n").get<int>();
  config.k = value.at("k").get<int>();
  config.cutoff = value.at("cutoff").get<int>();
  if (value.contains("theta") && !(value.at("theta").is_string() &&
                                   value.at("theta").get<std::string>() == "zero"))
    config.theta = real_matrix_from_json(value.at("theta"), "model config theta");
  if (value.contains("reflection") &&
      !(value.at("reflection").is_string() &&
        value.at("reflection").get<std::string>() == "standard"))
    config.reflection = real_matrix_from_json(value.at("reflection"), "model config reflection");
  return config;
}

std::string model_config_to_json(const ModelConfig& config) {
  return model_config_to_json_value(config).dump(2);
}

torus::Model build_model_from_config(const ModelConfig& config) {
  const clifford::Signature sig(config.n, config.k);
  const torus::Theta theta =
      config.theta ? torus::Theta(*config.theta) : torus::Theta::zero(config.n);
  const clifford::SpacelikeReflection refl =
      config.reflection ? clifford::SpacelikeReflection{*config.reflection}
                        : clifford::standard_reflection(sig);
  if (config.reflection) clifford::validate_reflection(sig, refl.r);
  return torus::build_model(sig, theta, refl, config.cutoff);
}

std::string gamma_report_json(const clifford::GammaRep& rep,
                              const clifford::RelationReport& report, std::uint64_t seed) {
  json out;
  out["n"] = rep.sig.n;
  out["k"] = rep.sig.k;
  out["dim"] = rep.dim;
  out["seed"] = seed;
  json gammas = json::array();
  for (const CMatrix& g : rep.gammas) gammas.push_back(cmatrix_to_json_value(g));
  out["gammas"] = std::move(gammas);
  out["chi"] = cmatrix_to_json_value(rep.chi);
  out["krein_gram"] = cmatrix_to_json_value(rep.krein_gram);
  json rel;
  rel["tol"] = report.tol;
  rel["max_violation"] = report.max_violation();
  rel["pass"] = report.pass();
  json entries = json::array();
  for (const auto& entry : report.entries) {
    json e;
    e["name"] = entry.name;
    e["violation"] = entry.violation;
    entries.push_back(std::move(e));
  }
  rel["entries"] = std::move(entries);
  out["relations"] = std::move(rel);
  return out.dump(2);
}

std::string spectrum_csv(const torus::Model& model) {
  const torus::ModeLattice& lat = model.lattice;
  std::string out;
  for (int i = 1; i <= lat.n; ++i) {
    out += 'y';
    out += std::to_string(i);
    out += ',';
  }
  out += "eigenvalue,multiplicity\n";
  for (std::size_t pos = 0; pos < lat.count; ++pos) {
    const std::size_t idx = lat.by_lambda[pos];
    const auto mode = lat.mode(idx);
    for (int i = 0; i < lat.n; ++i) {
      out += std::to_string(mode[static_cast<std::size_t>(i)]);
      out += ',';
    }
    out += fmt_float(lat.lambda[idx]);
    out += ',';
    out += std::to_string(lat.spinor_dim);
    out += '\n';
  }
  return out;
}

std::string convergence_csv(std::span<const krein::ConvergenceRow> rows) {
  std::string out = "N,sigma_N,sigma_over_logN,running_slope\n";
  for (const auto& row : rows) {
    out += std::to_string(row.n);
    out += ',';
    out += fmt_float(row.sigma);
    out += ',';
    out += fmt_float(row.quotient);
    out += ',';
    out += fmt_float(row.running_slope);
    out += '\n';
  }
  return out;
}

std::string dixmier_report_json(const krein::DixmierEstimate& estimate, double target,
                                const std::string& observable, const ModelConfig& config,
                                bool rational_theta_warning) {
  json out = estimate_to_json(estimate);
  out["observable"] = observable;
  out["target"] = target;
  const double abs_error = std::hypot(estimate.value - target, estimate.value_imag);
  out["abs_error"] = abs_error;
  out["rel_error"] = abs_error / (std::abs(target) > 0.0 ? std::abs(target) : 1.0);
  out["config"] = model_config_to_json_value(config);
  out["rational_theta_warning"] = rational_theta_warning;
  return out.dump(2);
}

std::string admissibility_report_json(const torus::AdmissibilityReport& report) {
  json out;
  out["pass"] = report.pass;
  json entries = json::array();
  for (const auto& entry : report.entries) {
    json e;
    e["name"] = entry.name;
    e["pass"] = entry.pass;
    e["violation"] = entry.violation;
    entries.push_back(std::move(e));
  }
  out["entries"] = std::move(entries);
  if (report.reflection) out["reflection"] = rmatrix_to_json_value(report.reflection->r);
  if (!report.note.empty()) out["note"] = report.note;
  return out.dump(2);
}

}  // namespace ksl::io
