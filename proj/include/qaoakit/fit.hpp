#pragma once

#include <vector>

#include "qaoakit/hardware.hpp"

namespace qaoakit {

struct FitResult {
  std::vector<double> params;
  std::vector<double> stderrs;  // asymptotic standard errors per parameter
  double rmse = 0.0;            // plain RMSE of the residuals
  double rmseAdjusted = 0.0;    // denominator n_points - n_params
  long nPoints = 0;
};

/// Ordinary least squares via normal equations with partial pivoting.
/// `design` holds one row of predictor values per observation.
FitResult fitLinearModel(const std::vector<std::vector<double>>& design,
                         const std::vector<double>& y);

double rmse(const std::vector<double>& pred, const std::vector<double>& obs);

struct UnsatisfiedPoint {
  double n = 0;
  double dH = 0;
  double n0 = 0;
  double nU = 0;
};

/// Single-parameter fit of N_u = nu (n - n0) / sqrt(d_H). Fit per-lattice
/// subsets for the per-lattice variants.
FitResult fitUnsatisfiedEdges(const std::vector<UnsatisfiedPoint>& data);

/// Convenience builders for the two SWAP scaling models.
/// Degree law N_SWAP = a x + b with x = d_G/d_H; params come back (a, b).
FitResult fitDegreeLaw(const std::vector<double>& dgOverDh,
                       const std::vector<double>& nSwap);
/// Size law N_SWAP = mu x with x = (n - n0) sqrt(n) / d_H.
FitResult fitSizeLaw(const std::vector<double>& x, const std::vector<double>& nSwap);

}  // namespace qaoakit
