#include "doctest.h"
#include "qaoakit/router.hpp"

#include <set>

using namespace qaoakit;

namespace {

ProblemGraph cycle(int n) {
  ProblemGraph g;
  g.n = n;
  for (int i = 0; i < n; ++i)
    g.edges.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

ProblemGraph complete(int n) {
  ProblemGraph g;
  g.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.edges.emplace_back(i, j);
  return g;
}

RoutingConfig quickConfig(int shuffles = 3, int iterations = 3) {
  RoutingConfig cfg;
  cfg.shuffles = shuffles;
  cfg.iterations = iterations;
  return cfg;
}

}  // namespace

TEST_CASE("random placement is injective and deterministic") {
  const HardwareGraph hw = buildLattice(LatticeKind::Square, 3, 3);
  const Placement p1 = randomPlacement(7, hw, 11);
  const Placement p2 = randomPlacement(7, hw, 11);
  const Placement p3 = randomPlacement(7, hw, 12);
  CHECK(p1.toSite == p2.toSite);
  CHECK(p1.toSite != p3.toSite);
  std::set<int> sites(p1.toSite.begin(), p1.toSite.end());
  CHECK(sites.size() == 7);
  for (const int s : p1.toSite) {
    CHECK(s >= 0);
    CHECK(s < 9);
    CHECK(p1.toLogical[s] >= 0);
    CHECK(p1.toSite[p1.toLogical[s]] == s);
  }
  CHECK_THROWS(randomPlacement(10, hw, 0));  // more qubits than sites
}

TEST_CASE("unsatisfied edge counting") {
  const HardwareGraph hw = buildLattice(LatticeKind::Square, 2, 2);
  // sites 0,1,2,3 laid out as a 2x2 ring: 0-1, 0-2, 1-3, 2-3
  SUBCASE("C4 placed along the ring is fully satisfied") {
    const Placement pl = Placement::fromSites({0, 1, 3, 2}, 4);
    CHECK(countUnsatisfiedEdges(cycle(4), pl, hw) == 0);
  }
  SUBCASE("K4 always leaves the two diagonals unsatisfied") {
    const Placement pl = Placement::fromSites({0, 1, 2, 3}, 4);
    CHECK(countUnsatisfiedEdges(complete(4), pl, hw) == 2);
  }
  SUBCASE("fully connected hardware satisfies everything") {
    const HardwareGraph fc = buildLattice(LatticeKind::FullyConnected, 1, 4);
    const Placement pl = Placement::fromSites({0, 1, 2, 3}, 4);
    CHECK(countUnsatisfiedEdges(complete(4), pl, fc) == 0);
  }
}

TEST_CASE("swap lower bound") {
  const HardwareGraph sq = gridFor(7, LatticeKind::Square);  // h_max = 4
  // K7: each vertex has degree 6, excess 2, ceil(2/3) = 1 each -> ceil(7/2) = 4
  CHECK(swapLowerBound(complete(7), sq) == 4);
  // C7 fits degree-wise
  CHECK(swapLowerBound(cycle(7), sq) == 0);
  // heavy-hex h_max = 3: excess 3, ceil(3/2) = 2 each -> ceil(14/2) = 7
  const HardwareGraph hh = gridFor(7, LatticeKind::HeavyHex);
  CHECK(swapLowerBound(complete(7), hh) == 7);
  // fully connected hardware never needs swaps
  const HardwareGraph fc = gridFor(7, LatticeKind::FullyConnected);
  CHECK(swapLowerBound(complete(7), fc) == 0);
}

TEST_CASE("routing a single layer produces a verifiable circuit") {
  const IsingInstance inst = IsingInstance::fromProblemGraph(complete(4), 1.0, 0.0);
  const HardwareGraph hw = buildLattice(LatticeKind::Square, 2, 2);
  const auto dist = allPairsDistance(hw);
  const Circuit layer = synthesizeCostLayer(inst, 0.5);
  const Placement pl = randomPlacement(4, hw, 3);
  const RoutedResult r = routeSabre(layer, hw, dist, pl, quickConfig(), 17);
  CHECK(verifyRouted(layer, r, hw));
  CHECK(r.stats.nSwap >= 1);  // K4 cannot map onto the 4-cycle directly
  CHECK(r.circuit.frame == Circuit::Frame::Physical);
}

TEST_CASE("optimize") {
  const IsingInstance inst =
      IsingInstance::fromProblemGraph(genRandomRegular(8, 3, 5), 1.0, 0.0);
  const HardwareGraph hw = gridFor(8, LatticeKind::Square);

  SUBCASE("deterministic per seed and independent of jobs") {
    RoutingConfig cfg = quickConfig();
    cfg.seed = 9;
    const RoutedResult a = optimize(inst, hw, cfg);
    const RoutedResult b = optimize(inst, hw, cfg);
    cfg.jobs = 4;
    const RoutedResult c = optimize(inst, hw, cfg);
    CHECK(a.stats.nSwap == b.stats.nSwap);
    CHECK(a.stats.cnotLayer == b.stats.cnotLayer);
    CHECK(a.initial.toSite == b.initial.toSite);
    CHECK(a.stats.nSwap == c.stats.nSwap);
    CHECK(a.stats.cnotLayer == c.stats.cnotLayer);
    CHECK(a.initial.toSite == c.initial.toSite);
  }
  SUBCASE("more trials never increase the best objective") {
    RoutingConfig small = quickConfig(1, 1);
    RoutingConfig large = quickConfig(4, 4);
    const RoutedResult rs = optimize(inst, hw, small);
    const RoutedResult rl = optimize(inst, hw, large);
    CHECK(rl.stats.cnotLayer <= rs.stats.cnotLayer);
  }
  SUBCASE("result is valid and respects the lower bound") {
    const RoutedResult r = optimize(inst, hw, quickConfig());
    const Circuit layer = synthesizeCostLayer(inst, 0.5, r.edgeOrder);
    CHECK(verifyRouted(layer, r, hw));
    CHECK(r.stats.nSwap >= swapLowerBound(inst.problemGraph(), hw));
    if (r.stats.sigmaDefined) {
      CHECK(r.stats.sigma >= 1.0);
      CHECK(r.stats.sigma <= 3.0);
    }
  }
  SUBCASE("single edge needs no swaps") {
    ProblemGraph g;
    g.n = 2;
    g.edges = {{0, 1}};
    const IsingInstance one = IsingInstance::fromProblemGraph(g, 1.0, 0.0);
    const RoutedResult r =
        optimize(one, buildLattice(LatticeKind::Square, 2, 2), quickConfig());
    CHECK(r.stats.nSwap == 0);
    CHECK(r.stats.nUnsatisfied == 0);
  }
}

TEST_CASE("verifier rejects corrupted circuits") {
  const IsingInstance inst = IsingInstance::fromProblemGraph(complete(4), 1.0, 0.0);
  const HardwareGraph hw = buildLattice(LatticeKind::Square, 2, 2);
  const Circuit layer = synthesizeCostLayer(inst, 0.5);
  RoutedResult r = routeSabre(layer, hw, allPairsDistance(hw), randomPlacement(4, hw, 3),
                              quickConfig(), 17);
  REQUIRE(verifyRouted(layer, r, hw));
  for (auto& g : r.circuit.gates) {
    if (g.kind == GateKind::Cnot && !g.erased) {
      std::swap(g.q0, g.q1);  // flipped control/target breaks the logical identity
      break;
    }
  }
  CHECK_FALSE(verifyRouted(layer, r, hw));
}

TEST_CASE("mirrored layer totals") {
  const IsingInstance inst =
      IsingInstance::fromProblemGraph(genRandomRegular(8, 3, 2), 1.0, 0.0);
  const HardwareGraph hw = gridFor(8, LatticeKind::Square);
  const RoutedResult r = optimize(inst, hw, quickConfig());

  for (const int p : {1, 3, 10}) {
    const GateCounts total = mirrorLayers(r, p);
    // H wall follows the closed form; repeating the layer repeats its
    // CNOT cost except the first-layer cancellation happens once.
    CHECK(total.nH == 2L * 8 * p + 8);
    CHECK(total.nCnot == p * r.stats.cnotLayer - r.stats.n0);
    CHECK(total.nSwap == p * r.stats.nSwap);
  }
}

TEST_CASE("routing config validation") {
  RoutingConfig cfg;
  cfg.shuffles = 0;
  CHECK_THROWS(cfg.validate());
  cfg = RoutingConfig{};
  cfg.decay = 1.5;
  CHECK_THROWS(cfg.validate());
  cfg = RoutingConfig{};
  cfg.jobs = 0;
  CHECK_THROWS(cfg.validate());
  CHECK_NOTHROW(RoutingConfig{}.validate());
}
