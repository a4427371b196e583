#include "qaoakit/router.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

namespace qaoakit {

Placement Placement::fromSites(std::vector<int> sites, int numSites) {
  Placement pl;
  pl.toSite = std::move(sites);
  pl.toLogical.assign(static_cast<std::size_t>(numSites), -1);
  for (std::size_t q = 0; q < pl.toSite.size(); ++q) {
    const int s = pl.toSite[q];
    if (s < 0 || s >= numSites)
      throw std::out_of_range("Placement: site index out of range");
    if (pl.toLogical[static_cast<std::size_t>(s)] != -1)
      throw std::invalid_argument("Placement: assignment is not injective");
    pl.toLogical[static_cast<std::size_t>(s)] = static_cast<int>(q);
  }
  return pl;
}

void RoutingConfig::validate() const {
  if (shuffles < 1 || iterations < 1)
    throw std::invalid_argument("RoutingConfig: shuffles and iterations must be >= 1");
  if (lookahead < 0) throw std::invalid_argument("RoutingConfig: lookahead must be >= 0");
  if (!(decay > 0.0 && decay <= 1.0))
    throw std::invalid_argument("RoutingConfig: decay must be in (0, 1]");
  if (lookaheadWindow < 0 || jobs < 1)
    throw std::invalid_argument("RoutingConfig: bad window or job count");
}

Placement randomPlacement(int n, const HardwareGraph& hw, std::uint64_t seed) {
  if (n > hw.numSites)
    throw std::invalid_argument("randomPlacement: more qubits than hardware sites");
  std::mt19937_64 rng(seed);
  std::vector<int> sites(static_cast<std::size_t>(hw.numSites));
  std::iota(sites.begin(), sites.end(), 0);
  for (int k = 0; k < n; ++k) {
    std::uniform_int_distribution<int> pick(k, hw.numSites - 1);
    std::swap(sites[static_cast<std::size_t>(k)], sites[static_cast<std::size_t>(pick(rng))]);
  }
  sites.resize(static_cast<std::size_t>(n));
  return Placement::fromSites(std::move(sites), hw.numSites);
}

long countUnsatisfiedEdges(const ProblemGraph& g, const Placement& pl,
                           const HardwareGraph& hw) {
  if (pl.numQubits() < g.n)
    throw std::invalid_argument("countUnsatisfiedEdges: placement does not cover all vertices");
  long unsat = 0;
  for (const auto& [i, j] : g.edges) {
    if (!hw.areAdjacent(pl.toSite[static_cast<std::size_t>(i)],
                        pl.toSite[static_cast<std::size_t>(j)]))
      ++unsat;
  }
  return unsat;
}

long swapLowerBound(const ProblemGraph& g, const HardwareGraph& hw) {
  const int hMax = hw.maxDegree();
  if (hMax < 2) throw std::invalid_argument("swapLowerBound: hardware max degree below 2");
  long sum = 0;
  for (const int d : g.degrees()) {
    const long delta = std::max(0, d - hMax);
    sum += (delta + hMax - 2) / (hMax - 1);  // ceil(delta / (hMax-1))
  }
  return (sum + 1) / 2;  // ceil(sum / 2)
}

namespace {

struct EdgeTerm {
  int tag = -1;
  int i = 0;
  int j = 0;
  double angle = 0.0;
};

std::vector<EdgeTerm> extractTrios(const Circuit& layer) {
  std::vector<EdgeTerm> terms;
  const auto& g = layer.gates;
  std::size_t k = 0;
  while (k < g.size()) {
    if (g[k].erased) {
      ++k;
      continue;
    }
    if (k + 2 >= g.size() || g[k].kind != GateKind::Cnot || g[k].tag < 0 ||
        g[k + 1].kind != GateKind::R || g[k + 1].tag != g[k].tag ||
        g[k + 2].kind != GateKind::Cnot || g[k + 2].tag != g[k].tag)
      throw std::invalid_argument("routeSabre: input must be a cost layer of tagged edge trios");
    terms.push_back({g[k].tag, g[k].q0, g[k].q1, g[k + 1].angle});
    k += 3;
  }
  return terms;
}

long firstLayerCancellations(const std::vector<EdgeTerm>& terms, int n) {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  long n0 = 0;
  for (const auto& t : terms) {
    if (!seen[static_cast<std::size_t>(t.i)] && !seen[static_cast<std::size_t>(t.j)]) ++n0;
    seen[static_cast<std::size_t>(t.i)] = 1;
    seen[static_cast<std::size_t>(t.j)] = 1;
  }
  return n0;
}

struct RouteCoreResult {
  std::vector<Gate> gates;  // physical frame, SWAP form
  std::vector<int> pos;     // final logical -> site
  long swaps = 0;
};

// Single forward SABRE-style pass over an ordered edge-term list.
RouteCoreResult routeCore(const std::vector<EdgeTerm>& terms, const HardwareGraph& hw,
                          const DistanceMatrix& dist, const Placement& pl,
                          const RoutingConfig& cfg, std::uint64_t seed) {
  const int numTerms = static_cast<int>(terms.size());
  const int numSites = hw.numSites;
  RouteCoreResult out;
  out.pos = pl.toSite;
  std::vector<int> at = pl.toLogical;
  std::mt19937_64 rng(seed);

  // Sequential dependencies: each term waits for the latest earlier term
  // on each of its qubits (SABRE sees the given order, not commutativity).
  std::vector<int> lastTerm(out.pos.size(), -1);
  std::vector<std::vector<int>> succs(static_cast<std::size_t>(numTerms));
  std::vector<int> indegree(static_cast<std::size_t>(numTerms), 0);
  for (int e = 0; e < numTerms; ++e) {
    const auto& t = terms[static_cast<std::size_t>(e)];
    std::set<int> preds;
    if (lastTerm[static_cast<std::size_t>(t.i)] >= 0)
      preds.insert(lastTerm[static_cast<std::size_t>(t.i)]);
    if (lastTerm[static_cast<std::size_t>(t.j)] >= 0)
      preds.insert(lastTerm[static_cast<std::size_t>(t.j)]);
    for (const int p : preds) {
      succs[static_cast<std::size_t>(p)].push_back(e);
      ++indegree[static_cast<std::size_t>(e)];
    }
    lastTerm[static_cast<std::size_t>(t.i)] = e;
    lastTerm[static_cast<std::size_t>(t.j)] = e;
  }

  std::set<int> front;
  std::vector<char> done(static_cast<std::size_t>(numTerms), 0);
  for (int e = 0; e < numTerms; ++e)
    if (indegree[static_cast<std::size_t>(e)] == 0) front.insert(e);

  std::vector<double> decay(out.pos.size(), 1.0);
  const double decayStep = 1.0 / cfg.decay;
  // Hard guard: per executed term the loop spends at most 4*numSites
  // heuristic swaps before the stall fallback walks the term home in at
  // most numSites more, so anything beyond this bound is a genuine bug.
  const long swapCap =
      std::max<long>(1, static_cast<long>(numTerms) * (5L * numSites + 2));
  long swapsSinceExec = 0;
  int lastSwapA = -1, lastSwapB = -1;  // sites of the previous SWAP, if no gate since
  int executed = 0;

  auto executeTerm = [&](int e) {
    const auto& t = terms[static_cast<std::size_t>(e)];
    const int si = out.pos[static_cast<std::size_t>(t.i)];
    const int sj = out.pos[static_cast<std::size_t>(t.j)];
    out.gates.push_back({GateKind::Cnot, si, sj, 0.0, t.tag});
    out.gates.push_back({GateKind::R, sj, -1, t.angle, t.tag});
    out.gates.push_back({GateKind::Cnot, si, sj, 0.0, t.tag});
    done[static_cast<std::size_t>(e)] = 1;
    ++executed;
    front.erase(e);
    for (const int s : succs[static_cast<std::size_t>(e)])
      if (--indegree[static_cast<std::size_t>(s)] == 0) front.insert(s);
    std::fill(decay.begin(), decay.end(), 1.0);
    swapsSinceExec = 0;
    lastSwapA = lastSwapB = -1;
  };

  auto applySwap = [&](int s, int t) {
    out.gates.push_back({GateKind::Swap, s, t});
    const int la = at[static_cast<std::size_t>(s)];
    const int lb = at[static_cast<std::size_t>(t)];
    std::swap(at[static_cast<std::size_t>(s)], at[static_cast<std::size_t>(t)]);
    if (la >= 0) {
      out.pos[static_cast<std::size_t>(la)] = t;
      decay[static_cast<std::size_t>(la)] *= decayStep;
    }
    if (lb >= 0) {
      out.pos[static_cast<std::size_t>(lb)] = s;
      decay[static_cast<std::size_t>(lb)] *= decayStep;
    }
    ++out.swaps;
    ++swapsSinceExec;
    lastSwapA = std::min(s, t);
    lastSwapB = std::max(s, t);
    if (out.swaps > swapCap)
      throw std::runtime_error("routeSabre: SWAP cap exceeded, heuristic failure");
  };

  const auto termDist = [&](const EdgeTerm& t, const std::vector<int>& pos) {
    return dist.dist[static_cast<std::size_t>(pos[static_cast<std::size_t>(t.i)])]
                    [static_cast<std::size_t>(pos[static_cast<std::size_t>(t.j)])];
  };

  while (!front.empty()) {
    // Execute everything currently adjacent, in index order.
    bool any = true;
    while (any) {
      any = false;
      for (const int e : front) {
        if (termDist(terms[static_cast<std::size_t>(e)], out.pos) == 1) {
          executeTerm(e);
          any = true;
          break;
        }
      }
    }
    if (front.empty()) break;

    // Deterministic fallback when the heuristic stalls: walk the lowest
    // front term's qubits together along a shortest path.
    if (swapsSinceExec > 4L * numSites) {
      const auto& t = terms[static_cast<std::size_t>(*front.begin())];
      while (termDist(t, out.pos) > 1) {
        const int si = out.pos[static_cast<std::size_t>(t.i)];
        const int sj = out.pos[static_cast<std::size_t>(t.j)];
        int step = -1;
        for (const int nb : hw.adjacency[static_cast<std::size_t>(si)]) {
          if (dist.dist[static_cast<std::size_t>(nb)][static_cast<std::size_t>(sj)] <
              dist.dist[static_cast<std::size_t>(si)][static_cast<std::size_t>(sj)]) {
            step = nb;
            break;
          }
        }
        applySwap(si, step);
      }
      continue;
    }

    // Candidate SWAPs: hardware edges touching a front-term qubit site.
    std::set<std::pair<int, int>> candidates;
    for (const int e : front) {
      const auto& t = terms[static_cast<std::size_t>(e)];
      for (const int q : {t.i, t.j}) {
        const int s = out.pos[static_cast<std::size_t>(q)];
        for (const int nb : hw.adjacency[static_cast<std::size_t>(s)])
          candidates.insert({std::min(s, nb), std::max(s, nb)});
      }
    }

    // Lookahead window: the next unexecuted terms beyond the front.
    std::vector<int> window;
    for (int e = 0; e < numTerms && static_cast<int>(window.size()) < cfg.lookaheadWindow;
         ++e) {
      if (!done[static_cast<std::size_t>(e)] && front.count(e) == 0) window.push_back(e);
    }

    double bestScore = std::numeric_limits<double>::infinity();
    std::vector<std::pair<int, int>> best;
    std::vector<int> trialPos = out.pos;
    for (const auto& [s, t] : candidates) {
      if (s == lastSwapA && t == lastSwapB && candidates.size() > 1)
        continue;  // skip the immediate undo of the previous SWAP
      const int la = at[static_cast<std::size_t>(s)];
      const int lb = at[static_cast<std::size_t>(t)];
      if (la >= 0) trialPos[static_cast<std::size_t>(la)] = t;
      if (lb >= 0) trialPos[static_cast<std::size_t>(lb)] = s;

      double frontSum = 0;
      for (const int e : front) frontSum += termDist(terms[static_cast<std::size_t>(e)], trialPos);
      double score = frontSum / static_cast<double>(front.size());
      if (!window.empty() && cfg.lookahead > 0) {
        double windowSum = 0;
        for (const int e : window)
          windowSum += termDist(terms[static_cast<std::size_t>(e)], trialPos);
        score += cfg.lookahead * windowSum / static_cast<double>(window.size());
      }
      double penalty = 1.0;
      if (la >= 0) penalty = std::max(penalty, decay[static_cast<std::size_t>(la)]);
      if (lb >= 0) penalty = std::max(penalty, decay[static_cast<std::size_t>(lb)]);
      score *= penalty;

      if (la >= 0) trialPos[static_cast<std::size_t>(la)] = s;
      if (lb >= 0) trialPos[static_cast<std::size_t>(lb)] = t;

      if (score < bestScore - 1e-12) {
        bestScore = score;
        best.assign(1, {s, t});
      } else if (score <= bestScore + 1e-12) {
        best.emplace_back(s, t);
      }
    }
    if (best.empty())
      throw std::runtime_error("routeSabre: no SWAP candidates for a blocked front");
    std::uniform_int_distribution<std::size_t> pick(0, best.size() - 1);
    const auto [s, t] = best[best.size() == 1 ? 0 : pick(rng)];
    applySwap(s, t);
  }

  return out;
}

RoutedResult assembleResult(const std::vector<EdgeTerm>& terms, RouteCoreResult core,
                            const HardwareGraph& hw, const Placement& initial) {
  RoutedResult result;
  result.initial = initial;
  result.stats.n = initial.numQubits();
  result.stats.numEdges = static_cast<long>(terms.size());

  Circuit routed;
  routed.numQubits = hw.numSites;
  routed.frame = Circuit::Frame::Physical;
  routed.gates = std::move(core.gates);
  cancelAdjacentSwapPairs(routed);

  result.stats.nSwap = countGates(routed).nSwap;
  Circuit expanded = expandSwaps(routed);
  cancelAdjacentCnots(expanded);
  const GateCounts expandedCounts = countGates(expanded);
  result.stats.cnotLayer = expandedCounts.nCnot;
  result.stats.depth = circuitDepth(expanded);
  result.stats.n0 = firstLayerCancellations(terms, initial.numQubits());

  GateCounts layerCounts;
  layerCounts.nSwap = result.stats.nSwap;
  fillSigma(layerCounts, result.stats.cnotLayer, 2L * result.stats.numEdges, 1);
  result.stats.sigma = layerCounts.sigma;
  result.stats.sigmaDefined = layerCounts.sigmaDefined;

  ProblemGraph pg;
  pg.n = initial.numQubits();
  for (const auto& t : terms) pg.edges.emplace_back(std::min(t.i, t.j), std::max(t.i, t.j));
  std::sort(pg.edges.begin(), pg.edges.end());
  result.stats.nUnsatisfied = countUnsatisfiedEdges(pg, initial, hw);

  result.final_ = Placement::fromSites(std::move(core.pos), hw.numSites);
  result.circuit = std::move(routed);
  return result;
}

}  // namespace

RoutedResult routeSabre(const Circuit& layer, const HardwareGraph& hw,
                        const DistanceMatrix& dist, const Placement& pl,
                        const RoutingConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  if (layer.frame != Circuit::Frame::Logical)
    throw std::invalid_argument("routeSabre: expected a logical-frame layer");
  if (layer.numQubits > hw.numSites)
    throw std::invalid_argument("routeSabre: more qubits than hardware sites");
  const auto terms = extractTrios(layer);
  auto core = routeCore(terms, hw, dist, pl, cfg, seed);
  RoutedResult result = assembleResult(terms, std::move(core), hw, pl);
  result.edgeOrder.reserve(terms.size());
  for (const auto& t : terms) result.edgeOrder.push_back(t.tag);
  return result;
}

RoutedResult optimize(const IsingInstance& inst, const HardwareGraph& hw,
                      const RoutingConfig& cfg) {
  cfg.validate();
  if (inst.n > hw.numSites)
    throw std::invalid_argument("optimize: more qubits than hardware sites");
  const DistanceMatrix dist = allPairsDistance(hw);
  const int numEdges = static_cast<int>(inst.edges.size());
  const int totalTrials = cfg.shuffles * cfg.iterations;

  // Per-shuffle edge orderings; shuffle 0 is the canonical baseline.
  std::vector<std::vector<int>> orders(static_cast<std::size_t>(cfg.shuffles));
  for (int s = 0; s < cfg.shuffles; ++s) {
    auto& order = orders[static_cast<std::size_t>(s)];
    order.resize(static_cast<std::size_t>(numEdges));
    std::iota(order.begin(), order.end(), 0);
    if (s > 0) {
      std::mt19937_64 rng(mixSeed(cfg.seed, 0xBEEF0000ULL + static_cast<std::uint64_t>(s)));
      std::shuffle(order.begin(), order.end(), rng);
    }
  }

  struct Trial {
    bool ok = false;
    RoutedResult result;
    std::string error;
  };
  std::vector<Trial> trials(static_cast<std::size_t>(totalTrials));

  auto runTrial = [&](int idx) {
    const int s = idx / cfg.iterations;
    const auto& order = orders[static_cast<std::size_t>(s)];
    std::vector<EdgeTerm> terms;
    terms.reserve(static_cast<std::size_t>(numEdges));
    for (const int e : order) {
      const auto& edge = inst.edges[static_cast<std::size_t>(e)];
      terms.push_back({e, edge.i, edge.j, 2.0 * 0.5 * edge.weight});
    }
    std::vector<EdgeTerm> reversed(terms.rbegin(), terms.rend());

    const std::uint64_t trialSeed = mixSeed(cfg.seed, 0x7157A1ULL + static_cast<std::uint64_t>(idx));
    Trial& trial = trials[static_cast<std::size_t>(idx)];
    try {
      const Placement p0 = randomPlacement(inst.n, hw, mixSeed(trialSeed, 1));
      // Bidirectional refinement: forward, reverse, then the kept forward
      // pass from the reverse pass's final placement.
      auto fwd = routeCore(terms, hw, dist, p0, cfg, mixSeed(trialSeed, 2));
      const Placement p1 = Placement::fromSites(std::move(fwd.pos), hw.numSites);
      auto rev = routeCore(reversed, hw, dist, p1, cfg, mixSeed(trialSeed, 3));
      const Placement p2 = Placement::fromSites(std::move(rev.pos), hw.numSites);
      auto fin = routeCore(terms, hw, dist, p2, cfg, mixSeed(trialSeed, 4));
      trial.result = assembleResult(terms, std::move(fin), hw, p2);
      trial.result.edgeOrder = order;
      trial.ok = true;
    } catch (const std::exception& e) {
      trial.error = e.what();
    }
  };

  if (cfg.jobs <= 1 || totalTrials == 1) {
    for (int idx = 0; idx < totalTrials; ++idx) runTrial(idx);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    const int numWorkers = std::min(cfg.jobs, totalTrials);
    workers.reserve(static_cast<std::size_t>(numWorkers));
    for (int w = 0; w < numWorkers; ++w) {
      workers.emplace_back([&] {
        while (true) {
          const int idx = next.fetch_add(1);
          if (idx >= totalTrials) return;
          runTrial(idx);
        }
      });
    }
    for (auto& w : workers) w.join();
  }

  // Associative min-reduction in trial-index order, so parallel and serial
  // runs agree exactly.
  int bestIdx = -1;
  for (int idx = 0; idx < totalTrials; ++idx) {
    const Trial& t = trials[static_cast<std::size_t>(idx)];
    if (!t.ok)
      throw std::runtime_error("optimize: trial " + std::to_string(idx) + " failed: " + t.error);
    if (bestIdx < 0) {
      bestIdx = idx;
      continue;
    }
    const auto& best = trials[static_cast<std::size_t>(bestIdx)].result.stats;
    const auto& cur = t.result.stats;
    if (cur.cnotLayer < best.cnotLayer ||
        (cur.cnotLayer == best.cnotLayer && cur.depth < best.depth))
      bestIdx = idx;
  }
  RoutedResult result = std::move(trials[static_cast<std::size_t>(bestIdx)].result);
  result.stats.eta = inst.eta();
  return result;
}

bool verifyRouted(const Circuit& logical, const RoutedResult& routed,
                  const HardwareGraph& hw) {
  std::vector<EdgeTerm> terms;
  try {
    terms = extractTrios(logical);
  } catch (const std::exception&) {
    return false;
  }

  struct TrioState {
    int stage = 0;  // 0: expect first CNOT, 1: expect R, 2: expect second CNOT
    int si = -1;
    int sj = -1;
    bool completed = false;
  };
  std::vector<TrioState> states;
  std::vector<int> tagToIdx;
  int maxTag = -1;
  for (const auto& t : terms) maxTag = std::max(maxTag, t.tag);
  tagToIdx.assign(static_cast<std::size_t>(maxTag + 1), -1);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (terms[k].tag < 0 || tagToIdx[static_cast<std::size_t>(terms[k].tag)] != -1)
      return false;  // duplicate or untagged trio
    tagToIdx[static_cast<std::size_t>(terms[k].tag)] = static_cast<int>(k);
  }
  states.assign(terms.size(), {});

  std::vector<int> at = routed.initial.toLogical;
  if (static_cast<int>(at.size()) != hw.numSites) return false;

  for (const auto& g : routed.circuit.gates) {
    // Erased gates are replayed too: cancelled pairs compose to identity.
    if (g.kind == GateKind::Swap) {
      if (!hw.areAdjacent(g.q0, g.q1)) return false;
      std::swap(at[static_cast<std::size_t>(g.q0)], at[static_cast<std::size_t>(g.q1)]);
      continue;
    }
    if (g.tag < 0 || g.tag > maxTag || tagToIdx[static_cast<std::size_t>(g.tag)] < 0)
      return false;
    const auto idx = static_cast<std::size_t>(tagToIdx[static_cast<std::size_t>(g.tag)]);
    const EdgeTerm& term = terms[idx];
    TrioState& st = states[idx];
    switch (st.stage) {
      case 0: {
        if (g.kind != GateKind::Cnot || !hw.areAdjacent(g.q0, g.q1)) return false;
        if (at[static_cast<std::size_t>(g.q0)] != term.i ||
            at[static_cast<std::size_t>(g.q1)] != term.j)
          return false;
        st.si = g.q0;
        st.sj = g.q1;
        st.stage = 1;
        break;
      }
      case 1: {
        if (g.kind != GateKind::R || g.q0 != st.sj) return false;
        if (at[static_cast<std::size_t>(g.q0)] != term.j) return false;
        if (g.angle != term.angle) return false;
        st.stage = 2;
        break;
      }
      case 2: {
        if (g.kind != GateKind::Cnot || g.q0 != st.si || g.q1 != st.sj) return false;
        if (at[static_cast<std::size_t>(g.q0)] != term.i ||
            at[static_cast<std::size_t>(g.q1)] != term.j)
          return false;
        st.stage = 0;
        st.completed = true;
        break;
      }
      default:
        return false;
    }
  }

  for (const auto& st : states)
    if (!st.completed || st.stage != 0) return false;
  return true;
}

GateCounts mirrorLayers(const RoutedResult& single, int p) {
  if (p < 1) throw std::invalid_argument("mirrorLayers: need p >= 1");
  const auto& st = single.stats;
  const double dG = st.n > 0 ? 2.0 * static_cast<double>(st.numEdges) / st.n : 0.0;
  GateCounts totals = closedFormCounts(st.n, p, dG, st.eta, st.n0);
  // p sigma N_SWAP, kept exact via the integer per-layer CNOT overhead.
  totals.nCnot += static_cast<long>(p) * (st.cnotLayer - 2L * st.numEdges);
  totals.nSwap = static_cast<long>(p) * st.nSwap;
  totals.sigma = st.sigma;
  totals.sigmaDefined = st.sigmaDefined;
  return totals;
}

}  // namespace qaoakit
