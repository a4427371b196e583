#pragma once

#include <cstdint>
#include <vector>

#include "qaoakit/circuit.hpp"
#include "qaoakit/graphs.hpp"
#include "qaoakit/hardware.hpp"

namespace qaoakit {

/// Injective logical-qubit -> hardware-site assignment.
struct Placement {
  std::vector<int> toSite;     // logical -> site
  std::vector<int> toLogical;  // site -> logical, -1 when empty

  static Placement fromSites(std::vector<int> sites, int numSites);
  [[nodiscard]] int numQubits() const { return static_cast<int>(toSite.size()); }
};

struct RoutingConfig {
  int shuffles = 10;      // outer loop over commuting-term orderings
  int iterations = 10;    // random initial placements per shuffle
  double lookahead = 10.0;
  int lookaheadWindow = 20;
  double decay = 0.7;     // in (0,1]; smaller penalizes reused qubits harder
  std::uint64_t seed = 0;
  int jobs = 1;

  void validate() const;
};

struct RoutedStats {
  long nSwap = 0;
  long n0 = 0;            // first-layer cancellations for the chosen ordering
  double sigma = 0.0;
  bool sigmaDefined = false;
  long nUnsatisfied = 0;  // problem edges non-adjacent under initial placement
  int depth = 0;          // CNOT-expanded depth after cancellations
  long cnotLayer = 0;     // single-layer CNOTs after expansion + cancellation
  // instance summary, used by mirrorLayers
  int n = 0;
  long numEdges = 0;
  int eta = 0;
};

/// Routed single cost layer. `circuit` is the physical-frame circuit in
/// SWAP form; cancelled SWAP pairs stay in place marked erased so the
/// verifier can replay them.
struct RoutedResult {
  Circuit circuit;
  Placement initial;
  Placement final_;
  RoutedStats stats;
  std::vector<int> edgeOrder;
};

/// Uniform injective placement, deterministic per seed.
Placement randomPlacement(int n, const HardwareGraph& hw, std::uint64_t seed);

/// Problem edges whose endpoint sites are not hardware-adjacent.
long countUnsatisfiedEdges(const ProblemGraph& g, const Placement& pl,
                           const HardwareGraph& hw);

/// Degree-based lower bound:
///   ceil( (1/2) sum_j ceil( max(0, d_G(j) - h_max) / (h_max - 1) ) ).
long swapLowerBound(const ProblemGraph& g, const HardwareGraph& hw);

/// One forward SABRE-style pass over a logical single cost layer: keep a
/// front set of blocked edge terms, execute whatever is adjacent, and
/// otherwise apply the best-scoring SWAP on hardware edges next to front
/// qubits (front + lookahead-window distance sums, decay penalty on
/// recently moved qubits, seeded tie-breaks).
RoutedResult routeSabre(const Circuit& layer, const HardwareGraph& hw,
                        const DistanceMatrix& dist, const Placement& pl,
                        const RoutingConfig& cfg, std::uint64_t seed);

/// Best-of shuffles x iterations trials by minimum post-cancellation CNOT
/// count, ties broken by lower depth then lower trial index. Shuffle 0 is
/// the canonical un-shuffled ordering. Deterministic per cfg.seed and
/// independent of cfg.jobs.
RoutedResult optimize(const IsingInstance& inst, const HardwareGraph& hw,
                      const RoutingConfig& cfg);

/// Replays the routed circuit while tracking the logical<->physical
/// permutation through SWAPs (erased gates re-inserted virtually): true
/// iff every two-qubit gate is hardware-adjacent and the multiset of
/// logical edge trios matches the logical layer.
bool verifyRouted(const Circuit& logical, const RoutedResult& routed,
                  const HardwareGraph& hw);

/// Totals for p layers under mirroring: the routed layer's SWAP overhead
/// repeats per layer, N_CNOT = (p n d_G - n0) + p sigma N_SWAP.
GateCounts mirrorLayers(const RoutedResult& single, int p);

}  // namespace qaoakit
