#pragma once

#include <string>
#include <vector>

#include "qaoakit/circuit.hpp"
#include "qaoakit/hardware.hpp"

namespace qaoakit {

/// Constant per-gate error probabilities.
struct NoiseModel {
  double epsCnot = 5e-5;
  double epsH = 5e-6;
  double epsR = 5e-6;

  void validate() const;
  /// eps_H = eps_R = eps_CNOT / 10.
  static NoiseModel fromCnotError(double epsCnot);
};

/// Fit parameters for the two empirical SWAP-count laws and the
/// unsatisfied-edge law.
struct EmpiricalParams {
  double a = 5.9;    // degree law: N_SWAP = a d_G/d_H + b
  double b = -2.5;
  double mu = 0.73;  // size law: N_SWAP = mu (n - n0) sqrt(n) / d_H
  double nu = 1.71;  // unsatisfied edges: N_u = nu (n - n0) / sqrt(d_H)
};

/// Hardware-dependent zero offset of the size law: the largest n at which
/// every 3-regular graph still maps directly (3 for triangle, 2 for the
/// other lattices, n itself for fully connected hardware).
double sizeLawN0(LatticeKind kind, int n);

/// log F0 = N_CNOT log(1-eps_CNOT) + N_H log(1-eps_H) + N_R log(1-eps_R).
double logFidelityLowerBound(const GateCounts& counts, const NoiseModel& nm);
double fidelityLowerBound(const GateCounts& counts, const NoiseModel& nm);

/// M <= log(1-P) / log(1-F0), computed from log F0 so deep-underflow
/// fidelities still give finite answers. Returns at least 1.
double measurementsUpperBound(double f0, double pTarget);
double measurementsUpperBoundLog(double logF0, double pTarget);

/// Degree law, clamped at zero.
double empiricalNswapDegree(double dG, double dH, const EmpiricalParams& params);

/// Size law; zero on fully connected hardware (n0 = n).
double empiricalNswapSize(double n, double dH, double n0, const EmpiricalParams& params);

struct SweepSpec {
  std::vector<int> sizes;
  int p = 20;
  double dG = 3.0;
  double epsCnot = 5e-5;
  double pTarget = 0.99;
  std::vector<LatticeKind> lattices = {
      LatticeKind::HeavyHex, LatticeKind::Hexagon, LatticeKind::Square,
      LatticeKind::Triangle, LatticeKind::FullyConnected};
  EmpiricalParams params;

  void validate() const;
};

struct SweepRow {
  int n = 0;
  int p = 0;
  LatticeKind lattice = LatticeKind::Square;
  double dG = 0.0;
  double dH = 0.0;
  double epsCnot = 0.0;
  double nSwap = 0.0;
  double nCnot = 0.0;
  double logF0 = 0.0;
  double f0 = 0.0;
  double m = 0.0;
};

/// Closed-form scaling table: eta = n, N0 = 0, sigma = 3, SWAP counts from
/// the empirical size law per lattice.
std::vector<SweepRow> scalingSweep(const SweepSpec& spec);

std::string sweepCsvHeader();
std::string sweepRowCsv(const SweepRow& row);

}  // namespace qaoakit
