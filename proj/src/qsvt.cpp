// Copyright 2026 The QCR Authors
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

#include "qcr/qsvt.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "qcr/errors.hpp"
#include "qcr/uncertainty.hpp"

namespace qcr {

QsvtCircuit build_qsvt(const LoadingCircuit& loading, std::span<const double> phases) {
  if (phases.empty() || phases.size() % 2 != 0) {
    throw ValidationError("build_qsvt: the phase count must be even and positive");
  }
  const std::size_t t = loading.loss_qubit;
  const std::size_t b = loading.layout.qubit(kAncillaQubit, 0);
  const CircuitOp a = loading.op;
  const CircuitOp a_dag = loading.op.adjoint();
  const CircuitOp open_cx = CircuitOp::x(b).controlled({Control{t, false}});
  const CircuitOp closed_cx = CircuitOp::x(b).controlled({Control{t, true}});

  std::vector<CircuitOp> ops;
  ops.reserve(4 * phases.size() + 2);
  ops.push_back(CircuitOp::h(b));
  for (std::size_t j = 1; j <= phases.size(); ++j) {
    const bool odd = j % 2 == 1;
    const CircuitOp& flip = odd ? open_cx : closed_cx;
    ops.push_back(odd ? a : a_dag);
    ops.push_back(flip);
    ops.push_back(CircuitOp::rz(b, -2.0 * phases[j - 1]));
    ops.push_back(flip);
  }
  ops.push_back(CircuitOp::h(b));
  return QsvtCircuit{CircuitOp::sequence(std::move(ops), "Q"), loading.layout, phases.size(), t, b,
                     std::vector<double>(phases.begin(), phases.end())};
}

std::vector<Amplitude> diagonal_amplitudes(const QsvtCircuit& qsvt) {
  const Register& c = qsvt.layout.get(kCounterpartyRegister);
  const std::size_t scenarios = std::size_t{1} << c.size;
  // Q only reads C, so one pass over the uniform superposition of C yields
  // every diagonal entry at once.
  std::vector<Amplitude> amps(std::size_t{1} << qsvt.layout.num_qubits(), 0.0);
  const double norm = 1.0 / std::sqrt(static_cast<double>(scenarios));
  for (std::size_t j = 0; j < scenarios; ++j) amps[j << c.first] = norm;
  Statevector state = Statevector::from_amplitudes(qsvt.layout, std::move(amps));
  state.apply(qsvt.op);
  std::vector<Amplitude> out(scenarios);
  for (std::size_t j = 0; j < scenarios; ++j) out[j] = state.amplitude(j << c.first) / norm;
  return out;
}

std::vector<double> diagonal_action(const QsvtCircuit& qsvt) {
  const auto amps = diagonal_amplitudes(qsvt);
  std::vector<double> out(amps.size());
  for (std::size_t j = 0; j < amps.size(); ++j) out[j] = amps[j].real();
  return out;
}

double ej_equivalence_check(double phi, std::span<const bool> projector) {
  const auto dim = static_cast<Eigen::Index>(projector.size());
  if (dim == 0 || dim > 16) throw ValidationError("ej_equivalence_check: system dimension must be 1..16");
  using Mat = Eigen::MatrixXcd;
  // Basis index 2 s + b: system state s, ancilla b.
  Mat pi = Mat::Zero(dim, dim);
  for (Eigen::Index s = 0; s < dim; ++s) pi(s, s) = projector[static_cast<std::size_t>(s)] ? 1.0 : 0.0;
  const Mat pi_perp = Mat::Identity(dim, dim) - pi;
  Mat x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  auto rz = [](double angle) {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = std::polar(1.0, -angle / 2);
    m(1, 1) = std::polar(1.0, angle / 2);
    return m;
  };
  auto kron = [](const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
      }
    }
    return out;
  };
  const Mat id2 = Mat::Identity(2, 2);
  const Mat flip = kron(pi, x) + kron(pi_perp, id2);
  const Mat r = flip * kron(Mat::Identity(dim, dim), rz(2 * phi)) * flip;
  const Mat e = kron(pi, rz(-2 * phi)) + kron(pi_perp, rz(2 * phi));
  return (r - e).cwiseAbs().maxCoeff();
}

}  // namespace qcr
