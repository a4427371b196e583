#include "doctest.h"
#include "qaoakit/estimator.hpp"

#include <cmath>

using namespace qaoakit;

namespace {

GateCounts counts(long nCnot, long nH, long nR) {
  GateCounts c;
  c.nCnot = nCnot;
  c.nH = nH;
  c.nR = nR;
  return c;
}

}  // namespace

TEST_CASE("noise model") {
  CHECK_NOTHROW(NoiseModel{}.validate());
  const NoiseModel nm = NoiseModel::fromCnotError(1e-3);
  CHECK(nm.epsH == doctest::Approx(1e-4));
  CHECK(nm.epsR == doctest::Approx(1e-4));
  NoiseModel bad;
  bad.epsCnot = 1.0;
  CHECK_THROWS(bad.validate());
  bad.epsCnot = -0.1;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("fidelity lower bound") {
  SUBCASE("noiseless circuit has fidelity one") {
    const NoiseModel nm = NoiseModel::fromCnotError(0.0);
    CHECK(fidelityLowerBound(counts(100, 50, 50), nm) == doctest::Approx(1.0));
  }
  SUBCASE("single half-failing CNOT") {
    NoiseModel nm;
    nm.epsCnot = 0.5;
    nm.epsH = nm.epsR = 0.0;
    CHECK(fidelityLowerBound(counts(1, 0, 0), nm) == doctest::Approx(0.5));
  }
  SUBCASE("large fully connected benchmark point") {
    // n = 500, p = 20, d_G = 3: 30000 CNOTs, 20500 H, 35000 R
    const NoiseModel nm = NoiseModel::fromCnotError(5e-5);
    const double f0 = fidelityLowerBound(counts(30000, 20500, 35000), nm);
    CHECK(f0 == doctest::Approx(0.169).epsilon(0.01));
  }
  SUBCASE("rejects negative counts") {
    CHECK_THROWS(fidelityLowerBound(counts(-1, 0, 0), NoiseModel{}));
  }
}

TEST_CASE("measurement upper bound") {
  CHECK(measurementsUpperBound(0.99, 0.99) == doctest::Approx(1.0));
  CHECK(measurementsUpperBound(0.5, 0.99) == doctest::Approx(6.6439).epsilon(1e-3));
  // benchmark point continued: F0 ~ 0.169 -> M ~ 25
  const NoiseModel nm = NoiseModel::fromCnotError(5e-5);
  const double f0 = fidelityLowerBound(counts(30000, 20500, 35000), nm);
  CHECK(measurementsUpperBound(f0, 0.99) == doctest::Approx(24.9).epsilon(0.01));
  // floor at one measurement
  CHECK(measurementsUpperBound(1.0, 0.5) == doctest::Approx(1.0));
  CHECK_THROWS(measurementsUpperBound(0.0, 0.99));
  CHECK_THROWS(measurementsUpperBound(0.5, 1.0));
}

TEST_CASE("measurement bound survives deep fidelity underflow") {
  // logF0 = -500 underflows exp(logF0) far below the direct-ratio branch;
  // the log-space path gives M ~ -log(1-P) / F0 = exp(log(-log(0.01)) + 500)
  const double m = measurementsUpperBoundLog(-500.0, 0.99);
  CHECK(std::isfinite(m));
  CHECK(std::log(m) == doctest::Approx(500.0 + std::log(std::log(100.0))).epsilon(1e-12));
  // near the branch switch, M * F0 ~ -log(1-P) on both sides
  const double fLo = 1.1e-12, fHi = 0.9e-12;
  const double lo = measurementsUpperBoundLog(std::log(fLo), 0.99) * fLo;
  const double hi = measurementsUpperBoundLog(std::log(fHi), 0.99) * fHi;
  CHECK(lo == doctest::Approx(hi).epsilon(1e-6));
  CHECK(lo == doctest::Approx(std::log(100.0)).epsilon(1e-6));
}

TEST_CASE("measurement bound is monotone") {
  double prev = measurementsUpperBoundLog(std::log(0.9), 0.99);
  for (double f0 = 0.8; f0 > 1e-6; f0 *= 0.5) {
    const double m = measurementsUpperBoundLog(std::log(f0), 0.99);
    CHECK(m >= prev);
    prev = m;
  }
  // stricter targets cost more measurements
  CHECK(measurementsUpperBound(0.1, 0.999) > measurementsUpperBound(0.1, 0.9));
}

TEST_CASE("empirical swap laws") {
  const EmpiricalParams params;  // a = 5.9, b = -2.5, mu = 0.73
  SUBCASE("degree law hand value") {
    CHECK(empiricalNswapDegree(3.0, 2.0, params) == doctest::Approx(6.35));
  }
  SUBCASE("degree law clamps at zero") {
    CHECK(empiricalNswapDegree(0.1, 100.0, params) == 0.0);
  }
  SUBCASE("degree law grows linearly in d_G/d_H") {
    const double m1 = empiricalNswapDegree(10, 2, params);
    const double m2 = empiricalNswapDegree(20, 2, params);
    CHECK(m2 - m1 == doctest::Approx(5.9 * 5.0));
  }
  SUBCASE("size law hand values") {
    CHECK(empiricalNswapSize(100, 4.0, 2, params) ==
          doctest::Approx(0.73 * 98.0 * 10.0 / 4.0));
    CHECK(empiricalNswapSize(500, 2.5, 2, params) ==
          doctest::Approx(3251.7).epsilon(1e-3));
    CHECK(empiricalNswapSize(5, 4.0, 5, params) == 0.0);  // n = n0
  }
  SUBCASE("domain checks") {
    CHECK_THROWS(empiricalNswapDegree(3, 0, params));
    CHECK_THROWS(empiricalNswapSize(1, 4, 2, params));  // n < n0
  }
}

TEST_CASE("size-law offsets per lattice") {
  CHECK(sizeLawN0(LatticeKind::Triangle, 50) == 3.0);
  CHECK(sizeLawN0(LatticeKind::Square, 50) == 2.0);
  CHECK(sizeLawN0(LatticeKind::Hexagon, 50) == 2.0);
  CHECK(sizeLawN0(LatticeKind::HeavyHex, 50) == 2.0);
  CHECK(sizeLawN0(LatticeKind::FullyConnected, 50) == 50.0);
  CHECK_THROWS(sizeLawN0(LatticeKind::Custom, 50));
}

TEST_CASE("scaling sweep") {
  SweepSpec spec;
  spec.sizes = {100, 200, 500};
  const auto rows = scalingSweep(spec);
  REQUIRE(rows.size() == 15);  // 3 sizes x 5 lattices

  for (const auto& row : rows) {
    CHECK(row.p == 20);
    CHECK(row.f0 >= 0.0);
    CHECK(row.m >= 1.0);
    if (row.lattice == LatticeKind::FullyConnected) {
      CHECK(row.nSwap == 0.0);
      CHECK(row.nCnot == doctest::Approx(20.0 * row.n * 3.0));
    } else {
      CHECK(row.nSwap > 0.0);
    }
  }

  // benchmark points at n = 500
  for (const auto& row : rows) {
    if (row.n != 500) continue;
    if (row.lattice == LatticeKind::FullyConnected)
      CHECK(row.m == doctest::Approx(24.9).epsilon(0.01));
    if (row.lattice == LatticeKind::HeavyHex)
      CHECK(row.m == doctest::Approx(4.7e5).epsilon(0.05));
    if (row.lattice == LatticeKind::Triangle)
      CHECK(row.m == doctest::Approx(1572.0).epsilon(0.05));
  }

  // sparser hardware never needs fewer measurements at fixed n
  for (const int n : spec.sizes) {
    double mFc = 0, mTri = 0, mSq = 0, mHex = 0, mHh = 0;
    for (const auto& row : rows) {
      if (row.n != n) continue;
      switch (row.lattice) {
        case LatticeKind::FullyConnected: mFc = row.m; break;
        case LatticeKind::Triangle: mTri = row.m; break;
        case LatticeKind::Square: mSq = row.m; break;
        case LatticeKind::Hexagon: mHex = row.m; break;
        case LatticeKind::HeavyHex: mHh = row.m; break;
        default: break;
      }
    }
    CHECK(mFc <= mTri);
    CHECK(mTri <= mSq);
    CHECK(mSq <= mHex);
    CHECK(mHex <= mHh);
  }

  SUBCASE("doubled gate error inflates the range") {
    SweepSpec worse = spec;
    worse.epsCnot = 1e-4;
    const auto wrows = scalingSweep(worse);
    for (std::size_t k = 0; k < rows.size(); ++k) CHECK(wrows[k].m >= rows[k].m);
  }
  SUBCASE("validation") {
    SweepSpec bad;
    CHECK_THROWS(bad.validate());  // empty sizes
    bad.sizes = {10};
    bad.pTarget = 1.0;
    CHECK_THROWS(bad.validate());
  }
}

TEST_CASE("sweep csv") {
  CHECK(sweepCsvHeader() == "n,p,lattice,d_G,d_H,eps_cnot,n_swap,n_cnot,f0,m");
  SweepRow row;
  row.n = 10;
  row.p = 20;
  row.lattice = LatticeKind::Square;
  row.dG = 3.0;
  row.dH = 4.0;
  row.epsCnot = 5e-5;
  row.nSwap = 1.0 / 3.0;
  const std::string line = sweepRowCsv(row);
  CHECK(line.substr(0, 12) == "10,20,square");
  CHECK(line.find("0.33333333333333331") != std::string::npos);  // 17 digits
}
