// Copyright 2026 The qcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcorr/io.hpp"
#include "qcorr/qcorr.hpp"

namespace qcorr::cli {

enum ExitCode : int {
  kOk = 0,
  kParse = 2,
  kValidation = 3,
  kUnsupportedDims = 4,
  kArgumentRange = 5,
  kNoFeasibleWitness = 6,
};

inline std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return hex.str();
}

struct Options {
  int grid = 64;
  int refine = 200;
  bool json = false;
  std::uint64_t seed = 0;
  int terms = 8;
  int restarts = 8;
  double tol = 1e-10;
};

// Thrown inside commands; carries the process exit code.
struct Failure {
  int code;
  std::string message;
};

struct LoadedState {
  std::string sha256;
  DensityMatrix rho;
};

inline LoadedState load_state(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kParse, "cannot read " + path};
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  io::StateFile sf;
  try {
    sf = io::parse_state_file(text);
  } catch (const io::ParseError& e) {
    throw Failure{kParse, path + ": " + e.what()};
  } catch (const Error& e) {
    throw Failure{kParse, path + ": " + e.what()};
  }
  try {
    return {sha256_hex(text), validate_density(sf.matrix, sf.dims)};
  } catch (const Error& e) {
    throw Failure{kValidation, path + ": " + e.what()};
  }
}

inline void require_two_qubit_file(const DensityMatrix& rho) {
  if (rho.dims() != Dims{2, 2}) throw Failure{kUnsupportedDims, "this command needs dims [2, 2]"};
}

inline std::ostream& fmt(std::ostream& os) { return os << std::setprecision(12); }

inline std::string format_entry(Complex z) {
  // Round-off below 1e-14 is shown as zero so printed maps stay readable.
  const auto clean = [](double x) { return std::abs(x) < 1e-14 ? 0.0 : x; };
  const double re = clean(z.real());
  const double im = clean(z.imag());
  std::ostringstream os;
  os << std::setprecision(12) << re;
  if (im != 0.0) os << (im < 0 ? " - " : " + ") << std::abs(im) << "i";
  return os.str();
}

inline void print_matrix(std::ostream& os, const ComplexMatrix& m) {
  for (std::size_t i = 0; i < m.dim(); ++i) {
    os << " ";
    for (std::size_t j = 0; j < m.dim(); ++j) os << " " << std::setw(10) << format_entry(m(i, j));
    os << "\n";
  }
}

inline int cmd_measures(const std::string& path, const Options& opt, std::ostream& out) {
  const auto loaded = load_state(path);
  require_two_qubit_file(loaded.rho);
  OptimizerConfig cfg;
  cfg.grid_resolution = opt.grid;
  cfg.refine_iterations = opt.refine;
  cfg.tolerance = opt.tol;
  const MeasureReport m = compute_measures(loaded.rho, cfg);
  io::Report report;
  report.input_sha256 = loaded.sha256;
  report.dims = loaded.rho.dims();
  report.measures = io::measures_block(m);
  report.optimal_measurement = io::Report::Angles{m.theta, m.phi};
  report.warnings = m.warnings;
  if (opt.json) {
    out << io::to_json(report).dump(2) << "\n";
    return kOk;
  }
  fmt(out);
  out << "input sha256            " << loaded.sha256 << "\n"
      << "mutual information      " << m.mutual_information << " bits\n"
      << "quantum discord         " << m.discord << " bits\n"
      << "classical correlation   " << m.classical_correlation << " bits\n"
      << "one-way deficit         " << m.oneway_deficit << " bits\n"
      << "quantum deficit         " << m.quantum_deficit << " bits\n"
      << "optimal theta, phi      " << m.theta << ", " << m.phi << " rad\n"
      << "objective evaluations   " << m.diagnostics.evaluations << "\n";
  for (const auto& w : m.warnings) out << "warning: " << w << "\n";
  return kOk;
}

inline int cmd_bmap_demo(double p, const Options& opt, std::ostream& out) {
  if (!(p >= 0.0 && p <= 1.0)) throw Failure{kArgumentRange, "p must lie in [0, 1]"};
  const auto maps = build_measurement_maps(example_assignment_map(), example_extended_projectors());
  const auto cls = classify(maps.b);
  const auto spectrum = hermitian_eig(maps.b.tensor).eigenvalues;
  const ComplexMatrix rho_a = reduce(example_separable(p), {0}).matrix();
  const double residual = frobenius_norm(apply_amap(maps.a, rho_a) - rho_a);
  io::Report report;
  report.dims = {2, 2};
  report.bmap = io::Report::BMapResult{maps.b.tensor, spectrum, to_string(cls.verdict), residual};
  if (opt.json) {
    out << io::to_json(report).dump(2) << "\n";
    return kOk;
  }
  fmt(out);
  out << "B map (rows/cols 00, 01, 10, 11):\n";
  print_matrix(out, maps.b.tensor);
  out << "A map:\n";
  print_matrix(out, maps.a.tensor);
  out << "B eigenvalues           ";
  for (double e : spectrum) out << e << " ";
  out << "\nverdict                 " << to_string(cls.verdict) << " (min eigenvalue " << cls.min_eigenvalue << ")\n"
      << "insensitivity residual  " << residual << " (p = " << p << ")\n";
  return kOk;
}

inline int cmd_quantumness(const std::string& path, const Options& opt, std::ostream& out) {
  const auto loaded = load_state(path);
  require_two_qubit_file(loaded.rho);
  if (opt.terms < 4) throw Failure{kArgumentRange, "--terms must be >= 4"};
  if (opt.restarts < 0) throw Failure{kArgumentRange, "--restarts must be >= 0"};
  QuantumnessOptions qopt;
  qopt.terms = opt.terms;
  qopt.restarts = opt.restarts;
  qopt.seed = opt.seed;
  QuantumnessEstimate est;
  try {
    est = quantumness_upper_bound(loaded.rho, qopt);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NoFeasibleWitness) throw Failure{kNoFeasibleWitness, e.what()};
    throw;
  }
  io::Report report;
  report.input_sha256 = loaded.sha256;
  report.dims = loaded.rho.dims();
  report.quantumness = io::Report::Quantumness{est.upper_bound, est.marginal_residual, est.restarts_used};
  if (opt.json) {
    out << io::to_json(report).dump(2) << "\n";
    return kOk;
  }
  fmt(out);
  out << "input sha256            " << loaded.sha256 << "\n"
      << "quantumness upper bound " << est.upper_bound << " bits\n"
      << "marginal residual       " << est.marginal_residual << "\n"
      << "witness terms           " << est.witness.size() << "\n"
      << "restarts                " << est.restarts_used << "\n";
  for (const auto& r : est.restarts) {
    out << "  restart " << r.index << (r.index == 0 ? " (direct witness)" : "") << ": bound " << r.bound
        << ", residual " << r.marginal_residual << (r.feasible ? "" : " [infeasible]") << "\n";
  }
  return kOk;
}

inline int cmd_validate(const std::string& path, const Options& opt, std::ostream& out) {
  const auto loaded = load_state(path);
  const auto spectrum = hermitian_eig(loaded.rho.matrix()).eigenvalues;
  io::Report report;
  report.input_sha256 = loaded.sha256;
  report.dims = loaded.rho.dims();
  if (opt.json) {
    out << io::to_json(report).dump(2) << "\n";
    return kOk;
  }
  fmt(out);
  out << "valid density matrix\n"
      << "dims                    [";
  for (std::size_t i = 0; i < loaded.rho.dims().size(); ++i) out << (i ? ", " : "") << loaded.rho.dims()[i];
  out << "]\n"
      << "trace                   " << loaded.rho.matrix().trace().real() << "\n"
      << "min eigenvalue          " << spectrum.front() << "\n";
  return kOk;
}

// Parses argv and dispatches. Output goes to `out` only on success;
// diagnostics go to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum correlation measures and projective-measurement maps for small density matrices"};
  app.require_subcommand(1);
  Options opt;
  std::string path;
  double p = 0.5;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", opt.json, "Emit the JSON report");
    sub->add_option("--tol", opt.tol, "Clipping tolerance for reported measures");
  };
  auto* measures = app.add_subcommand("measures", "Mutual information, discord, C_A, one-way and quantum deficit");
  measures->add_option("path", path, "State file")->required();
  measures->add_option("--grid", opt.grid, "Grid points per angle (theta); phi uses twice as many");
  measures->add_option("--refine", opt.refine, "Nelder-Mead refinement iterations");
  add_common(measures);

  auto* bmap = app.add_subcommand("bmap-demo", "A/B maps of the worked projective-measurement example");
  bmap->add_option("p", p, "Mixing parameter in [0, 1]")->required();
  add_common(bmap);

  auto* quant = app.add_subcommand("quantumness", "Upper bound on the separable-distance quantumness");
  quant->add_option("path", path, "State file")->required();
  quant->add_option("--terms", opt.terms, "Product terms in the separable witness");
  quant->add_option("--restarts", opt.restarts, "Random restarts");
  quant->add_option("--seed", opt.seed, "Seed for the restarts");
  add_common(quant);

  auto* validate = app.add_subcommand("validate", "Check that a state file holds a density matrix");
  validate->add_option("path", path, "State file")->required();
  add_common(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kArgumentRange;
  }

  std::ostringstream buffer;
  try {
    int code = kOk;
    if (*measures) code = cmd_measures(path, opt, buffer);
    if (*bmap) code = cmd_bmap_demo(p, opt, buffer);
    if (*quant) code = cmd_quantumness(path, opt, buffer);
    if (*validate) code = cmd_validate(path, opt, buffer);
    out << buffer.str();
    return code;
  } catch (const Failure& f) {
    err << "error: " << f.message << "\n";
    return f.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::UnsupportedDimension: return kUnsupportedDims;
      case ErrorKind::OutOfRange: return kArgumentRange;
      case ErrorKind::NoFeasibleWitness: return kNoFeasibleWitness;
      default: return kValidation;
    }
  }
}

}  // namespace qcorr::cli
