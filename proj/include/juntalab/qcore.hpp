#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "juntalab/instances.hpp"

namespace juntalab {

using cd = std::complex<double>;

// Named registers with local dimensions. The first register is the most
// significant: index = sum over registers of value * stride, last register
// fastest. Total dimension capped at 2^24.
class RegisterLayout {
 public:
  RegisterLayout(std::vector<std::pair<std::string, std::size_t>> regs);

  std::size_t total_dim() const { return total_; }
  std::size_t count() const { return regs_.size(); }
  std::size_t dim(const std::string& name) const;
  std::size_t stride(const std::string& name) const;
  int index_of(const std::string& name) const;

  std::size_t value_of(std::size_t basis_index, const std::string& name) const;

 private:
  std::vector<std::pair<std::string, std::size_t>> regs_;
  std::vector<std::size_t> strides_;
  std::size_t total_;
};

struct StateVector {
  RegisterLayout layout;
  Eigen::VectorXcd amps;

  static StateVector basis(const RegisterLayout& layout, std::size_t index);
  double norm() const { return amps.norm(); }
};

// Unitary as an explicit matrix, a composition, or a family of blocks keyed
// by a control register's basis value. Dense throughout; sizes here are small.
class UnitaryOp {
 public:
  static UnitaryOp from_matrix(Eigen::MatrixXcd m);
  static UnitaryOp composition(std::vector<UnitaryOp> factors);  // applied right to left
  // ctrl_dim blocks, each block_dim x block_dim; acts on ctrl (x) target with
  // the control as the more significant register.
  static UnitaryOp block_diagonal(std::vector<Eigen::MatrixXcd> blocks);

  std::size_t dim() const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  UnitaryOp inverse() const;
  // ancilla (x) system; applies this iff the control qubit is 1.
  UnitaryOp controlled() const;
  Eigen::MatrixXcd matrix() const;
  double unitarity_residual() const;

 private:
  UnitaryOp() = default;
  Eigen::MatrixXcd mat_;
};

// Applies the block-diagonal oracle to a state over registers ("I", "W").
// The I register indexes subsets; the empty-set branch plays the role of
// the reserved |0> state and always receives -I.
StateVector apply_block_oracle(const StateVector& state, const BlockOracle& oracle);

// Turns every block into a reflection while preserving the promise families:
// the workspace gains one basis element, and per subset the new block is the
// chain V^-1 O^-1 R_+ O V with V the Hadamard on the (old 0, new) plane and
// R_+ the reflection about (|0> + |new>)/sqrt(2).
BlockOracle reflectionize(const BlockOracle& oracle);

// Grover-style amplification of `prepare` applied to |0>: rounds of
// Q = -A R_0 A^-1 R_marked after the initial A.
struct AmplitudeAmplification {
  UnitaryOp op;                    // Q^rounds * A
  double success_probability;     // marked mass of op|0>
};
AmplitudeAmplification amplitude_amplify(const UnitaryOp& prepare,
                                         const std::vector<bool>& marked, int rounds);

// sin^2((2r+1) asin(sqrt(p))): the closed form the simulation must match.
double amplified_probability(double p, int rounds);

// Exact phase-estimation output distribution with `ancilla_bits` ancillas:
// P[j] = sum over eigenpairs of |<v|initial>|^2 K_a(phase - 2 pi j / 2^a).
// Uses a Schur decomposition; degenerate phases simply add their weights.
std::vector<double> phase_estimation(const UnitaryOp& u, const Eigen::VectorXcd& initial,
                                     int ancilla_bits);

// Spectral measure of `initial` under a unitary: (phase in [0, 2 pi), weight).
std::vector<std::pair<double, double>> spectral_measure(const Eigen::MatrixXcd& u,
                                                        const Eigen::VectorXcd& initial);

// The a-ancilla kernel: probability that the textbook circuit outputs j given
// eigenphase phi, as a function of theta = phi - 2 pi j / 2^a.
double phase_kernel(double theta, int ancilla_bits);

// Literal circuit: Hadamards, controlled powers, inverse QFT on the ancilla
// register; used as a cross-check oracle at tiny sizes.
std::vector<double> phase_estimation_circuit(const UnitaryOp& u,
                                             const Eigen::VectorXcd& initial,
                                             int ancilla_bits);

struct SpectralGapCheck {
  double lhs;   // ||P_delta Pi2 w||
  double rhs;   // (delta/2) ||w||
  bool pass;
};
SpectralGapCheck spectral_gap_check(const Eigen::MatrixXcd& pi1, const Eigen::MatrixXcd& pi2,
                                    const Eigen::VectorXcd& w, double delta);

// Distance of a phase from 0 on the circle, result in [0, pi].
double phase_distance(double phi);

}  // namespace juntalab
