#include "qaoakit/estimator.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qaoakit {

void NoiseModel::validate() const {
  for (const double eps : {epsCnot, epsH, epsR}) {
    if (!(eps >= 0.0 && eps < 1.0))
      throw std::invalid_argument("NoiseModel: error rates must lie in [0, 1)");
  }
}

NoiseModel NoiseModel::fromCnotError(double epsCnot) {
  NoiseModel nm;
  nm.epsCnot = epsCnot;
  nm.epsH = epsCnot / 10.0;
  nm.epsR = epsCnot / 10.0;
  nm.validate();
  return nm;
}

double sizeLawN0(LatticeKind kind, int n) {
  switch (kind) {
    case LatticeKind::Triangle: return 3.0;
    case LatticeKind::HeavyHex:
    case LatticeKind::Hexagon:
    case LatticeKind::Square: return 2.0;
    case LatticeKind::FullyConnected: return static_cast<double>(n);
    default:
      throw std::invalid_argument("sizeLawN0: no size-law offset for " + latticeName(kind));
  }
}

double logFidelityLowerBound(const GateCounts& counts, const NoiseModel& nm) {
  nm.validate();
  if (counts.nCnot < 0 || counts.nH < 0 || counts.nR < 0)
    throw std::invalid_argument("logFidelityLowerBound: negative gate counts");
  return static_cast<double>(counts.nCnot) * std::log1p(-nm.epsCnot) +
         static_cast<double>(counts.nH) * std::log1p(-nm.epsH) +
         static_cast<double>(counts.nR) * std::log1p(-nm.epsR);
}

double fidelityLowerBound(const GateCounts& counts, const NoiseModel& nm) {
  return std::exp(logFidelityLowerBound(counts, nm));
}

double measurementsUpperBoundLog(double logF0, double pTarget) {
  if (!(pTarget > 0.0 && pTarget < 1.0))
    throw std::invalid_argument("measurementsUpperBound: target probability must be in (0, 1)");
  if (!(logF0 <= 0.0))
    throw std::invalid_argument("measurementsUpperBound: fidelity above 1");
  if (logF0 == 0.0) return 1.0;  // noiseless circuit
  const double logFail = std::log1p(-pTarget);
  const double f0 = std::exp(logF0);
  double m = 0.0;
  if (f0 > 1e-12) {
    m = logFail / std::log1p(-f0);
  } else {
    // log(1-F0) ~ -F0; evaluate the ratio fully in log space.
    m = std::exp(std::log(-logFail) - logF0);
  }
  return std::max(1.0, m);
}

double measurementsUpperBound(double f0, double pTarget) {
  if (!(f0 > 0.0 && f0 <= 1.0))
    throw std::invalid_argument("measurementsUpperBound: fidelity must be in (0, 1]");
  return measurementsUpperBoundLog(std::log(f0), pTarget);
}

double empiricalNswapDegree(double dG, double dH, const EmpiricalParams& params) {
  if (!(dH > 0.0)) throw std::invalid_argument("empiricalNswapDegree: need d_H > 0");
  return std::max(0.0, params.a * dG / dH + params.b);
}

double empiricalNswapSize(double n, double dH, double n0, const EmpiricalParams& params) {
  if (!(dH > 0.0)) throw std::invalid_argument("empiricalNswapSize: need d_H > 0");
  if (n < n0) throw std::invalid_argument("empiricalNswapSize: n below the lattice offset n0");
  return params.mu * (n - n0) * std::sqrt(n) / dH;
}

void SweepSpec::validate() const {
  if (sizes.empty()) throw std::invalid_argument("SweepSpec: no problem sizes");
  for (const int n : sizes)
    if (n < 1) throw std::invalid_argument("SweepSpec: sizes must be positive");
  if (p < 0) throw std::invalid_argument("SweepSpec: negative layer count");
  if (dG < 0) throw std::invalid_argument("SweepSpec: negative problem degree");
  if (!(epsCnot >= 0.0 && epsCnot < 1.0))
    throw std::invalid_argument("SweepSpec: eps_cnot must be in [0, 1)");
  if (!(pTarget > 0.0 && pTarget < 1.0))
    throw std::invalid_argument("SweepSpec: target probability must be in (0, 1)");
  if (lattices.empty()) throw std::invalid_argument("SweepSpec: no lattices");
}

std::vector<SweepRow> scalingSweep(const SweepSpec& spec) {
  spec.validate();
  const NoiseModel nm = NoiseModel::fromCnotError(spec.epsCnot);
  constexpr double kSigma = 3.0;

  std::vector<SweepRow> rows;
  rows.reserve(spec.sizes.size() * spec.lattices.size());
  for (const int n : spec.sizes) {
    for (const LatticeKind lattice : spec.lattices) {
      SweepRow row;
      row.n = n;
      row.p = spec.p;
      row.lattice = lattice;
      row.dG = spec.dG;
      row.epsCnot = spec.epsCnot;
      row.dH = lattice == LatticeKind::FullyConnected
                   ? static_cast<double>(n - 1)
                   : nominalInteriorDegree(lattice);
      const double n0 = sizeLawN0(lattice, n);
      row.nSwap = lattice == LatticeKind::FullyConnected
                      ? 0.0
                      : empiricalNswapSize(n, row.dH, n0, spec.params);

      // eta = n, N0 = 0.
      const double nH = 2.0 * n * spec.p + n;
      const double nR = spec.p * (n + n * (spec.dG + 2.0) / 2.0);
      row.nCnot = spec.p * n * spec.dG + spec.p * kSigma * row.nSwap;
      row.logF0 = row.nCnot * std::log1p(-nm.epsCnot) + nH * std::log1p(-nm.epsH) +
                  nR * std::log1p(-nm.epsR);
      row.f0 = std::exp(row.logF0);
      row.m = measurementsUpperBoundLog(row.logF0, spec.pTarget);
      rows.push_back(row);
    }
  }
  return rows;
}

std::string sweepCsvHeader() {
  return "n,p,lattice,d_G,d_H,eps_cnot,n_swap,n_cnot,f0,m";
}

std::string sweepRowCsv(const SweepRow& row) {
  std::ostringstream out;
  out.precision(17);
  out << row.n << ',' << row.p << ',' << latticeName(row.lattice) << ',' << row.dG << ','
      << row.dH << ',' << row.epsCnot << ',' << row.nSwap << ',' << row.nCnot << ','
      << row.f0 << ',' << row.m;
  return out.str();
}

}  // namespace qaoakit
