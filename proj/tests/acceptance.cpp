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

// Acceptance suite. Each criterion prints one PASS/FAIL line. With no
// arguments every criterion runs; otherwise only the listed numbers.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qcorr/qcorr.hpp"
#include "support.hpp"

using namespace qcorr;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const ComplexMatrix kReferenceB{{1.0, 0.0, 0.0, 0.5}, {0.0, 0.0, 0.5, 0.0}, {0.0, 0.5, 0.0, 0.0}, {0.5, 0.0, 0.0, 1.0}};
const ComplexMatrix kReferenceA{{1.0, 0.0, 0.0, 0.0}, {0.0, 0.5, 0.5, 0.0}, {0.0, 0.5, 0.5, 0.0}, {0.0, 0.0, 0.0, 1.0}};

std::vector<double> p_values() {
  std::vector<double> ps;
  for (int k = 0; k <= 10; ++k) ps.push_back(k / 10.0);
  return ps;
}

const DensityMatrix& bell() {
  static const DensityMatrix rho = pure_state(Ket({kInvSqrt2, 0.0, 0.0, kInvSqrt2}), {2, 2});
  return rho;
}

MeasurementMaps worked_maps() { return build_measurement_maps(example_assignment_map(), example_extended_projectors()); }

Outcome b_matrix() {
  const double dev = max_abs(worked_maps().b.tensor - kReferenceB);
  return {dev < 1e-12, fmt("max entry deviation %.3e (tol 1e-12)", dev)};
}

Outcome ncp_spectrum() {
  const auto b = worked_maps().b;
  const auto ev = hermitian_eig(b.tensor).eigenvalues;
  const double expected[] = {-0.5, 0.5, 0.5, 1.5};
  double dev = 0.0;
  for (std::size_t k = 0; k < 4; ++k) dev = std::max(dev, std::abs(ev[k] - expected[k]));
  const auto cls = classify(b);
  return {dev < 1e-10 && cls.verdict == MapVerdict::NCP,
          fmt("eigenvalues (%.12g, %.12g, %.12g, %.12g), deviation %.3e (tol 1e-10), verdict %s", ev[0], ev[1], ev[2],
              ev[3], dev, to_string(cls.verdict))};
}

Outcome insensitivity() {
  double tri = 0.0, bi = 0.0, relent = 0.0;
  for (double p : p_values()) {
    const auto r = verify_example_insensitivity(p);
    tri = std::max(tri, r.residual_tripartite);
    bi = std::max(bi, r.residual_bipartite);
    relent = std::max(relent, r.relative_entropy);
  }
  return {tri < 1e-13 && bi < 1e-13 && relent < 1e-10,
          fmt("max pinching residual %.3e, max residual-state deviation %.3e (tol 1e-13), max S(rho||rho_R) %.3e (tol "
              "1e-10)",
              tri, bi, relent)};
}

Outcome amap_fixed_point() {
  const AMap literal = make_amap(kReferenceA);
  const AMap built = worked_maps().a;
  double dev = 0.0;
  for (double p : p_values()) {
    const ComplexMatrix rho_a = reduce(example_separable(p), {0}).matrix();
    dev = std::max(dev, frobenius_norm(apply_amap(literal, rho_a) - rho_a));
    dev = std::max(dev, frobenius_norm(apply_amap(built, rho_a) - rho_a));
  }
  return {dev < 1e-13, fmt("max deviation %.3e over p in {0, 0.1, ..., 1} (tol 1e-13)", dev)};
}

Outcome intermediates() {
  const auto maps = worked_maps();
  using namespace kets;
  const ComplexMatrix rho_i[] = {plus().projector(), minus().projector(), zero().projector(), one().projector()};
  const double q_rows[4][4] = {{1, 0, 0, 0}, {0, 0, 0.5, 0.5}, {0, 0, 1, 0}, {0, 1, 0, 0}};
  const ComplexMatrix eta[] = {plus().projector(), ComplexMatrix::identity(2) * 0.5, zero().projector(),
                               minus().projector()};
  double d_rho = 0.0, d_q = 0.0, d_eta = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    d_rho = std::max(d_rho, max_abs(maps.reduced_projectors[i] - rho_i[i]));
    d_eta = std::max(d_eta, max_abs(maps.eta[i] - eta[i]));
    for (std::size_t a = 0; a < 4; ++a) d_q = std::max(d_q, std::abs(maps.q[i][a] - q_rows[a][i]));
  }
  return {d_rho < 1e-13 && d_q < 1e-13 && d_eta < 1e-13,
          fmt("max deviation: reduced projectors %.3e, q %.3e, eta %.3e (tol 1e-13)", d_rho, d_q, d_eta)};
}

Outcome assignment_consistency() {
  const auto am = example_assignment_map();
  double dev = 0.0;
  for (double p : p_values()) {
    const ComplexMatrix rho_a = reduce(example_separable(p), {0}).matrix();
    const ComplexMatrix expected =
        p * (kets::one() * kets::zero()).projector() + (1.0 - p) * (kets::zero() * kets::plus()).projector();
    dev = std::max(dev, max_abs(assignment_apply(am, rho_a) - expected));
  }
  return {dev < 1e-13, fmt("max deviation %.3e (tol 1e-13)", dev)};
}

Outcome dual_basis() {
  const auto p = qubit_basis_P();
  const auto q = dual_Q(p);
  const Complex i(0.0, 1.0);
  const ComplexMatrix reference[] = {
      ComplexMatrix{{0.0, 0.5 * (1.0 - i)}, {0.5 * (1.0 + i), 1.0}},
      ComplexMatrix{{0.0, i}, {-i, 0.0}},
      pauli::z(),
      ComplexMatrix{{0.0, 0.5 * (-1.0 - i)}, {0.5 * (-1.0 + i), 1.0}},
  };
  std::string entry;
  double d_entry = 0.0;
  for (std::size_t a = 0; a < 4; ++a) {
    const double d = max_abs(q[a] - reference[a]);
    d_entry = std::max(d_entry, d);
    entry += fmt(" Q%zu %.3e", a + 1, d);
  }
  double d_bio = 0.0;
  ComplexMatrix sum(2);
  for (std::size_t a = 0; a < 4; ++a) {
    sum += q[a];
    for (std::size_t b = 0; b < 4; ++b)
      d_bio = std::max(d_bio, std::abs((p[a] * q[b]).trace() - Complex(a == b ? 1.0 : 0.0)));
  }
  const double d_sum = max_abs(sum - ComplexMatrix::identity(2));
  return {d_entry < 1e-13 && d_bio < 1e-13 && d_sum < 1e-13,
          fmt("entrywise vs reference Q:%s; Tr[P Q] - delta %.3e; sum Q - I %.3e (tol 1e-13)", entry.c_str(), d_bio,
              d_sum)};
}

Outcome discord_positivity() {
  const auto rho = example_separable(0.5);
  const double d = quantum_discord(rho).value;
  const double ref = oracle::brute_force_discord(testing_support::to_eigen(rho.matrix())).discord;
  return {d > 1e-3 && std::abs(d - ref) < 1e-4,
          fmt("discord %.12g bits, 721x1441 grid oracle %.12g, |diff| %.3e (tol 1e-4)", d, ref, std::abs(d - ref))};
}

Outcome zero_cases() {
  double worst[4] = {0, 0, 0, 0};
  double worst_c_product = 0.0;
  double worst_c_classical = 0.0;
  double max_mi_classical = 0.0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    const bool product = s < 20;
    const auto rho = product ? testing_support::random_product(s) : testing_support::random_classical(s);
    const auto r = compute_measures(rho);
    worst[0] = std::max(worst[0], r.discord);
    worst[1] = std::max(worst[1], r.classical_correlation);
    worst[2] = std::max(worst[2], r.oneway_deficit);
    worst[3] = std::max(worst[3], r.quantum_deficit);
    (product ? worst_c_product : worst_c_classical) =
        std::max(product ? worst_c_product : worst_c_classical, r.classical_correlation);
    if (!product) max_mi_classical = std::max(max_mi_classical, r.mutual_information);
  }
  const bool pass = worst[0] < 1e-8 && worst[1] < 1e-8 && worst[2] < 1e-8 && worst[3] < 1e-8;
  return {pass, fmt("max over 20 product + 20 classical states: discord %.3e, C_A %.3e (product %.3e, classical %.3e, "
                    "classical max I(A:B) %.3e), one-way %.3e, D_AB %.3e (tol 1e-8)",
                    worst[0], worst[1], worst_c_product, worst_c_classical, max_mi_classical, worst[2], worst[3])};
}

Outcome bell_oracles() {
  const auto r = compute_measures(bell());
  const auto q = quantumness_upper_bound(bell());
  const bool pass = std::abs(r.mutual_information - 2.0) < 1e-9 && std::abs(r.discord - 1.0) < 1e-3 &&
                    std::abs(r.oneway_deficit - 1.0) < 1e-3 && std::abs(q.upper_bound - 1.0) < 0.05;
  return {pass, fmt("I(A:B) %.12g (tol 1e-9), discord %.12g, one-way %.12g (tol 1e-3), quantumness bound %.12g (tol 0.05)",
                    r.mutual_information, r.discord, r.oneway_deficit, q.upper_bound)};
}

Outcome additivity() {
  double dev = 0.0;
  for (const auto& rho : testing_support::random_two_qubit_corpus(100, 5000)) {
    const auto r = compute_measures(rho);
    dev = std::max(dev, std::abs(r.discord + r.classical_correlation - r.mutual_information));
  }
  return {dev < 1e-9, fmt("max |discord + C_A - I(A:B)| over 100 states %.3e (tol 1e-9)", dev)};
}

Outcome relent_decomposition() {
  double d_dec = 0.0;
  double d_pinch = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto rho = random_density({2, 2}, 7000 + s);
    const auto m = basis_measurement(random_unitary(2, 8000 + s));
    const auto dec = discord_relative_entropy_decomposition(rho, m);
    d_dec = std::max(d_dec, std::abs(dec.direct - dec.via_relent));
    const ComplexMatrix rd = pinch(rho, m).matrix();
    const ComplexMatrix log_rd = matrix_log_on_support(rd);
    d_pinch = std::max(d_pinch, std::abs((rho.matrix() * log_rd).trace().real() - (rd * log_rd).trace().real()));
  }
  return {d_dec < 1e-9 && d_pinch < 1e-9,
          fmt("max decomposition deviation %.3e, max pinching identity deviation %.3e over 100 pairs (tol 1e-9)", d_dec,
              d_pinch)};
}

Outcome map_legality() {
  std::vector<AMap> maps{worked_maps().a, identity_amap(2), make_amap(kReferenceA)};
  for (double g : {0.1, 0.5, 0.9}) {
    const std::vector<ComplexMatrix> damping{ComplexMatrix{{1.0, 0.0}, {0.0, std::sqrt(1 - g)}},
                                             ComplexMatrix{{0.0, std::sqrt(g)}, {0.0, 0.0}}};
    maps.push_back(amap_from_kraus(damping));
    const double w = std::sqrt(g / 3.0);
    const std::vector<ComplexMatrix> depol{ComplexMatrix::identity(2) * std::sqrt(1 - g), pauli::x() * w,
                                           pauli::y() * w, pauli::z() * w};
    maps.push_back(amap_from_kraus(depol));
  }
  for (std::uint64_t s = 0; s < 4; ++s) {
    const ComplexMatrix u = random_unitary(2, 900 + s);
    const std::vector<ComplexMatrix> single{u};
    maps.push_back(amap_from_kraus(single));
  }
  double cond = 0.0, trace = 0.0, herm = 0.0;
  for (const auto& a : maps) {
    const auto c = check_amap_conditions(a);
    cond = std::max({cond, c.hermiticity_residual, c.trace_residual});
    for (std::uint64_t s = 0; s < 100; ++s) {
      const ComplexMatrix out = apply_amap(a, random_density({2}, 10000 + s).matrix());
      trace = std::max(trace, std::abs(out.trace() - Complex(1.0)));
      herm = std::max(herm, hermiticity_residual(out));
    }
  }
  return {cond < 1e-12 && trace < 1e-12 && herm < 1e-12,
          fmt("%zu maps: condition residual %.3e, trace error %.3e, hermiticity %.3e on 100 states (tol 1e-12)",
              maps.size(), cond, trace, herm)};
}

using Criterion = std::pair<const char*, std::function<Outcome()>>;

const std::map<int, Criterion>& criteria();

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome runtime() {
  const auto t0 = std::chrono::steady_clock::now();
  for (int k : {8, 10, 11}) (void)criteria().at(k).second();
  const double optimizer = seconds_since(t0);
  const auto t1 = std::chrono::steady_clock::now();
  for (const auto& [k, c] : criteria())
    if (k != 14) (void)c.second();
  const double all = seconds_since(t1);
  return {optimizer < 120.0 && all < 300.0,
          fmt("criteria 8+10+11 %.1f s (limit 120 s), criteria 1-13 %.1f s (limit 300 s)", optimizer, all)};
}

const std::map<int, Criterion>& criteria() {
  static const std::map<int, Criterion> table{
      {1, {"B-matrix reproduction", b_matrix}},
      {2, {"NCP spectrum", ncp_spectrum}},
      {3, {"Insensitivity of the worked example", insensitivity}},
      {4, {"A-map fixed point", amap_fixed_point}},
      {5, {"Intermediate quantities", intermediates}},
      {6, {"Assignment consistency", assignment_consistency}},
      {7, {"Dual basis", dual_basis}},
      {8, {"Discord of the separable example", discord_positivity}},
      {9, {"Zero cases", zero_cases}},
      {10, {"Bell state oracles", bell_oracles}},
      {11, {"Additivity of discord and C_A", additivity}},
      {12, {"Relative-entropy decomposition", relent_decomposition}},
      {13, {"Map legality", map_legality}},
      {14, {"Runtime budget", runtime}},
  };
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty())
    for (const auto& [k, c] : criteria()) selected.push_back(k);
  int failures = 0;
  for (int k : selected) {
    const auto it = criteria().find(k);
    if (it == criteria().end()) {
      std::fprintf(stderr, "unknown criterion %d\n", k);
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = it->second.second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %2d %s  %s: %s [%.2f s]\n", k, o.pass ? "PASS" : "FAIL", it->second.first, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
