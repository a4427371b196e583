#include "qaoakit/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace qaoakit {

namespace {

// Inverts a small SPD-ish matrix by Gauss-Jordan with partial pivoting.
std::vector<std::vector<double>> invert(std::vector<std::vector<double>> m) {
  const std::size_t k = m.size();
  std::vector<std::vector<double>> inv(k, std::vector<double>(k, 0.0));
  for (std::size_t d = 0; d < k; ++d) inv[d][d] = 1.0;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    if (std::abs(m[pivot][col]) < 1e-12)
      throw std::invalid_argument("fitLinearModel: design matrix is rank deficient");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    const double scale = m[col][col];
    for (std::size_t c = 0; c < k; ++c) {
      m[col][c] /= scale;
      inv[col][c] /= scale;
    }
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = m[r][col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < k; ++c) {
        m[r][c] -= f * m[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

}  // namespace

FitResult fitLinearModel(const std::vector<std::vector<double>>& design,
                         const std::vector<double>& y) {
  const std::size_t n = design.size();
  if (n == 0 || y.size() != n)
    throw std::invalid_argument("fitLinearModel: empty design or length mismatch");
  const std::size_t k = design.front().size();
  if (k == 0) throw std::invalid_argument("fitLinearModel: no predictors");
  for (const auto& row : design)
    if (row.size() != k) throw std::invalid_argument("fitLinearModel: ragged design matrix");
  if (n <= k)
    throw std::invalid_argument("fitLinearModel: need more points than parameters");

  // Normal equations: (X^T X) beta = X^T y.
  std::vector<std::vector<double>> xtx(k, std::vector<double>(k, 0.0));
  std::vector<double> xty(k, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t a = 0; a < k; ++a) {
      xty[a] += design[r][a] * y[r];
      for (std::size_t b = 0; b < k; ++b) xtx[a][b] += design[r][a] * design[r][b];
    }
  }
  const auto inv = invert(xtx);

  FitResult fit;
  fit.nPoints = static_cast<long>(n);
  fit.params.assign(k, 0.0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) fit.params[a] += inv[a][b] * xty[b];

  double ss = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    double pred = 0.0;
    for (std::size_t a = 0; a < k; ++a) pred += design[r][a] * fit.params[a];
    const double res = y[r] - pred;
    ss += res * res;
  }
  fit.rmse = std::sqrt(ss / static_cast<double>(n));
  fit.rmseAdjusted = std::sqrt(ss / static_cast<double>(n - k));
  fit.stderrs.assign(k, 0.0);
  for (std::size_t a = 0; a < k; ++a)
    fit.stderrs[a] = fit.rmseAdjusted * std::sqrt(std::max(0.0, inv[a][a]));
  return fit;
}

double rmse(const std::vector<double>& pred, const std::vector<double>& obs) {
  if (pred.empty() || pred.size() != obs.size())
    throw std::invalid_argument("rmse: length mismatch or empty input");
  double ss = 0.0;
  for (std::size_t k = 0; k < pred.size(); ++k) {
    const double r = pred[k] - obs[k];
    ss += r * r;
  }
  return std::sqrt(ss / static_cast<double>(pred.size()));
}

FitResult fitUnsatisfiedEdges(const std::vector<UnsatisfiedPoint>& data) {
  std::vector<std::vector<double>> design;
  std::vector<double> y;
  design.reserve(data.size());
  y.reserve(data.size());
  for (const auto& pt : data) {
    if (!(pt.dH > 0)) throw std::invalid_argument("fitUnsatisfiedEdges: need d_H > 0");
    design.push_back({(pt.n - pt.n0) / std::sqrt(pt.dH)});
    y.push_back(pt.nU);
  }
  return fitLinearModel(design, y);
}

FitResult fitDegreeLaw(const std::vector<double>& dgOverDh,
                       const std::vector<double>& nSwap) {
  std::vector<std::vector<double>> design;
  design.reserve(dgOverDh.size());
  for (const double x : dgOverDh) design.push_back({x, 1.0});
  return fitLinearModel(design, nSwap);
}

FitResult fitSizeLaw(const std::vector<double>& x, const std::vector<double>& nSwap) {
  std::vector<std::vector<double>> design;
  design.reserve(x.size());
  for (const double v : x) design.push_back({v});
  return fitLinearModel(design, nSwap);
}

}  // namespace qaoakit
