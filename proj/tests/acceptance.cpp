// End-to-end acceptance gate. Each numbered check prints exactly one
// "PASS"/"FAIL" line; the binary exits nonzero if any hard check fails.
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "qaoakit/circuit.hpp"
#include "qaoakit/estimator.hpp"
#include "qaoakit/fit.hpp"
#include "qaoakit/graphs.hpp"
#include "qaoakit/hardware.hpp"
#include "qaoakit/router.hpp"

using namespace qaoakit;

namespace {

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("%s  [%d] %s%s%s\n", pass ? "PASS" : "FAIL", id, name,
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++failures;
}

std::string corpusPath() { return std::string(QAOAKIT_DATA_DIR) + "/graph7c.g6"; }

// 1. Exact gate-count oracle: synthesized + first-layer-cancelled circuits
//    match the closed forms, with n0 <= floor(n/2).
void check1() {
  const double tolExact = 0.0;  // counts are integers; agreement must be exact
  long checked = 0, bad = 0;
  auto verify = [&](const ProblemGraph& g) {
    const IsingInstance inst = IsingInstance::fromProblemGraph(g, 1.0, 1.0);
    for (const int p : {1, 3}) {
      Circuit c = synthesizeQaoa(inst, QaoaAngles::uniform(p, 0.4, 0.3));
      const long n0 = cancelFirstLayer(c);
      const GateCounts actual = countGates(c);
      const GateCounts expected = closedFormCounts(g.n, p, g.averageDegree(), g.n, n0);
      const bool ok = n0 <= g.n / 2 &&
                      std::abs(actual.nH - expected.nH) <= tolExact &&
                      std::abs(actual.nR - expected.nR) <= tolExact &&
                      std::abs(actual.nCnot - expected.nCnot) <= tolExact;
      ++checked;
      if (!ok) ++bad;
    }
  };
  for (const auto& g : loadGraph6File(corpusPath())) verify(g);
  std::mt19937_64 pick(7);
  for (int k = 0; k < 50; ++k) {
    const int n = 8 + 2 * static_cast<int>(pick() % 5);  // even n in 8..16
    verify(genRandomRegular(n, 3, pick()));
  }
  report(1, "gate-count oracle (exact, corpus + 50 random 3-regular)", bad == 0,
         std::to_string(checked) + " circuits checked, " + std::to_string(bad) +
             " mismatches");
}

// 2. Routing validity: every optimize output on the corpus x 4 lattices
//    verifies and respects the SWAP lower bound.
// 3. Soft gap report: mean (n_swap - lower bound) on the square lattice,
//    warn (not fail) above 6.
void check23() {
  const std::vector<LatticeKind> lattices = {LatticeKind::HeavyHex, LatticeKind::Hexagon,
                                             LatticeKind::Square, LatticeKind::Triangle};
  RoutingConfig cfg;  // shuffles = 10, iterations = 10
  const auto corpus = loadGraph6File(corpusPath());
  long total = 0, invalid = 0, belowBound = 0;
  double squareGapSum = 0.0;
  long squareCount = 0;
  for (const LatticeKind kind : lattices) {
    const HardwareGraph hw = gridFor(7, kind);
    for (const auto& g : corpus) {
      const IsingInstance inst = IsingInstance::fromProblemGraph(g);
      const RoutedResult r = optimize(inst, hw, cfg);
      const Circuit layer = synthesizeCostLayer(inst, 0.5, r.edgeOrder);
      ++total;
      if (!verifyRouted(layer, r, hw)) ++invalid;
      const long bound = swapLowerBound(g, hw);
      if (r.stats.nSwap < bound) ++belowBound;
      if (kind == LatticeKind::Square) {
        squareGapSum += static_cast<double>(r.stats.nSwap - bound);
        ++squareCount;
      }
    }
  }
  report(2, "routing validity (verify + lower bound, corpus x 4 lattices)",
         invalid == 0 && belowBound == 0,
         std::to_string(total) + " routes, " + std::to_string(invalid) + " invalid, " +
             std::to_string(belowBound) + " below bound");
  const double meanGap = squareGapSum / static_cast<double>(squareCount);
  const double gapTarget = 6.0;  // soft target; exceeding it only warns
  char buf[128];
  std::snprintf(buf, sizeof(buf), "mean gap %.3f (soft target <= %.1f)%s", meanGap,
                gapTarget, meanGap > gapTarget ? " [WARN: above soft target]" : "");
  report(3, "gap-to-lower-bound on square at n=7 (soft, reported)", true, buf);
}

// 4. Scaling-table reproduction at the reference operating point.
void check4() {
  SweepSpec spec;
  spec.sizes = {500};  // eps_cnot 5e-5, p=20, d_G=3, target 0.99 are defaults
  const auto rows = scalingSweep(spec);
  auto mOf = [&](const std::vector<SweepRow>& rs, LatticeKind k) {
    for (const auto& row : rs)
      if (row.lattice == k) return row.m;
    return -1.0;
  };

  bool pass = true;
  std::string detail;
  auto within = [&](double value, double lo, double hi, const char* label) {
    const bool ok = value >= lo && value <= hi;
    if (!ok) pass = false;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s=%.4g%s ", label, value, ok ? "" : "(!)");
    detail += buf;
  };

  within(mOf(rows, LatticeKind::FullyConnected), 20.0, 30.0, "M_fc");
  // factor-1.5 windows around 5e5 and 2e3
  within(mOf(rows, LatticeKind::HeavyHex), 5e5 / 1.5, 5e5 * 1.5, "M_hh");
  within(mOf(rows, LatticeKind::Triangle), 2e3 / 1.5, 2e3 * 1.5, "M_tri");

  SweepSpec worse = spec;
  worse.epsCnot = 1e-4;
  const auto wrows = scalingSweep(worse);
  double mMin = 1e300, mMax = 0.0;
  for (const auto& row : wrows) {
    if (row.lattice == LatticeKind::FullyConnected) continue;
    mMin = std::min(mMin, row.m);
    mMax = std::max(mMax, row.m);
  }
  // factor-2 windows around the reference four-lattice range endpoints
  within(mMin, 5e5 / 2.0, 5e5 * 2.0, "range_lo");
  within(mMax, 5e10 / 2.0, 5e10 * 2.0, "range_hi");

  SweepSpec dense = spec;
  dense.dG = 25.0;
  dense.lattices = {LatticeKind::FullyConnected};
  within(scalingSweep(dense)[0].m, 3e6 / 1.5, 3e6 * 1.5, "M_fc_d25");

  report(4, "measurement-bound reproduction at n=500", pass, detail);
}

// 5. log M is linear in p with slope -log f0 at fixed per-layer counts.
void check5() {
  const double slopeTol = 1e-3;
  // Noise strong enough that the fidelity is deep in the exponential
  // regime across the whole p range (log(1-F0) ~ -F0 holds exactly).
  const NoiseModel nm = NoiseModel::fromCnotError(5e-3);
  const int n = 200;
  const double dG = 3.0;
  // per-layer counts for one layer (eta = n, no cancellations)
  GateCounts layer;
  layer.nCnot = static_cast<long>(n * dG);
  layer.nH = 2L * n;
  layer.nR = static_cast<long>(n + n * (dG + 2.0) / 2.0);
  const double logF0Layer = logFidelityLowerBound(layer, nm);

  std::vector<std::vector<double>> design;
  std::vector<double> logM;
  for (int p = 10; p <= 40; ++p) {
    GateCounts counts;
    counts.nCnot = p * layer.nCnot;
    counts.nH = p * layer.nH + n;  // initial Hadamard wall
    counts.nR = p * layer.nR;
    const double m = measurementsUpperBoundLog(logFidelityLowerBound(counts, nm), 0.99);
    design.push_back({static_cast<double>(p), 1.0});
    logM.push_back(std::log(m));
  }
  const FitResult fit = fitLinearModel(design, logM);
  const double slope = fit.params[0];
  const double expected = -logF0Layer;
  const bool pass = std::abs(slope - expected) <= slopeTol;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "slope %.6f vs -log f0 %.6f (tol %.0e)", slope,
                expected, slopeTol);
  report(5, "log M grows linearly in p with slope -log f0", pass, buf);
}

// 6. Mean unsatisfied-edge ordering across lattice sparsities at n=20.
void check6() {
  const int n = 20, numGraphs = 30;
  const std::vector<LatticeKind> order = {LatticeKind::HeavyHex, LatticeKind::Hexagon,
                                          LatticeKind::Square, LatticeKind::Triangle};
  RoutingConfig cfg;
  cfg.shuffles = 2;
  cfg.iterations = 5;
  std::vector<double> meanNu;
  for (const LatticeKind kind : order) {
    const HardwareGraph hw = gridFor(n, kind);
    double sum = 0.0;
    for (int k = 0; k < numGraphs; ++k) {
      const ProblemGraph g = genRandomRegular(n, 3, 1000u + static_cast<unsigned>(k));
      const RoutedResult r = optimize(IsingInstance::fromProblemGraph(g), hw, cfg);
      sum += static_cast<double>(r.stats.nUnsatisfied);
    }
    meanNu.push_back(sum / numGraphs);
  }
  const bool pass = meanNu[0] >= meanNu[1] && meanNu[1] >= meanNu[2] &&
                    meanNu[2] >= meanNu[3];
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "mean N_u: heavy_hex %.2f >= hexagon %.2f >= square %.2f >= triangle %.2f",
                meanNu[0], meanNu[1], meanNu[2], meanNu[3]);
  report(6, "unsatisfied-edge ordering across lattices at n=20", pass, buf);
}

// 7. Monte-Carlo fit recovery of the reference scaling parameters.
void check7() {
  const double noiselessTol = 1e-9;
  const double trueA = 5.9, trueB = -2.5, trueMu = 0.73;

  // noiseless: exact recovery
  std::vector<double> xd, yd, xs, ys;
  for (int k = 1; k <= 20; ++k) {
    xd.push_back(0.3 * k);
    yd.push_back(trueA * 0.3 * k + trueB);
    const double xv = (10.0 * k - 2.0) * std::sqrt(10.0 * k) / 4.0;
    xs.push_back(xv);
    ys.push_back(trueMu * xv);
  }
  const FitResult fd = fitDegreeLaw(xd, yd);
  const FitResult fs = fitSizeLaw(xs, ys);
  const bool exactOk = std::abs(fd.params[0] - trueA) <= noiselessTol &&
                       std::abs(fd.params[1] - trueB) <= noiselessTol &&
                       std::abs(fs.params[0] - trueMu) <= noiselessTol;

  // 1000-seed Monte Carlo: 3-sigma coverage for both models
  const int trials = 1000;
  const double minCoverage = 0.95;
  int coveredDeg = 0, coveredSize = 0;
  for (int seed = 0; seed < trials; ++seed) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    std::normal_distribution<double> noise(0.0, 1.5);
    std::vector<double> ydn, ysn;
    for (std::size_t k = 0; k < xd.size(); ++k) ydn.push_back(yd[k] + noise(rng));
    for (std::size_t k = 0; k < xs.size(); ++k) ysn.push_back(ys[k] + noise(rng));
    const FitResult d = fitDegreeLaw(xd, ydn);
    const FitResult s = fitSizeLaw(xs, ysn);
    if (std::abs(d.params[0] - trueA) <= 3.0 * d.stderrs[0] &&
        std::abs(d.params[1] - trueB) <= 3.0 * d.stderrs[1])
      ++coveredDeg;
    if (std::abs(s.params[0] - trueMu) <= 3.0 * s.stderrs[0]) ++coveredSize;
  }
  const bool pass = exactOk &&
                    coveredDeg >= static_cast<int>(minCoverage * trials) &&
                    coveredSize >= static_cast<int>(minCoverage * trials);
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "noiseless %s; coverage degree %d/%d, size %d/%d (need >= %.0f%%)",
                exactOk ? "exact" : "NOT exact", coveredDeg, trials, coveredSize, trials,
                100.0 * minCoverage);
  report(7, "scaling-parameter fit recovery", pass, buf);
}

}  // namespace

int main() {
  check1();
  check23();
  check4();
  check5();
  check6();
  check7();
  if (failures > 0) {
    std::printf("ACCEPTANCE: %d check(s) failed\n", failures);
    return 1;
  }
  std::printf("ACCEPTANCE: all checks passed\n");
  return 0;
}
