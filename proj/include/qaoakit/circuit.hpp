#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qaoakit/graphs.hpp"

namespace qaoakit {

enum class GateKind { H, R, Cnot, Swap };

/// Single gate. Two-qubit kinds use (q0, q1); R carries an angle in
/// radians with the convention R(theta) = exp(-i (theta/2) Z). Gates in an
/// edge trio CNOT.R.CNOT share the tag of their problem edge.
struct Gate {
  GateKind kind = GateKind::H;
  int q0 = 0;
  int q1 = -1;
  double angle = 0.0;
  int tag = -1;
  // Cancellation passes mark gates erased instead of deleting them, so the
  // routed-circuit verifier can replay the full sequence.
  bool erased = false;

  [[nodiscard]] bool isTwoQubit() const {
    return kind == GateKind::Cnot || kind == GateKind::Swap;
  }
  [[nodiscard]] bool touches(int q) const {
    return q0 == q || (isTwoQubit() && q1 == q);
  }
};

struct Circuit {
  enum class Frame { Logical, Physical };
  int numQubits = 0;
  Frame frame = Frame::Logical;
  std::vector<Gate> gates;

  /// Drops erased gates.
  [[nodiscard]] Circuit compacted() const;
  [[nodiscard]] std::size_t activeCount() const;
};

/// Exact tallies over active gates. sigma is undefined (NaN) when no
/// SWAPs are present.
struct GateCounts {
  long nH = 0;
  long nR = 0;
  long nCnot = 0;
  long nSwap = 0;
  long n0 = 0;
  double sigma = 0.0;
  bool sigmaDefined = false;
};

struct QaoaAngles {
  int p = 0;
  std::vector<double> gammas;
  std::vector<double> betas;

  static QaoaAngles uniform(int p, double gamma, double beta);
  void validate() const;
};

/// Full QAOA circuit over the instance: Hadamard wall, then per layer the
/// tagged edge trios in canonical edge order, field rotations, and the
/// H.R(2 beta).H mixer on every qubit.
Circuit synthesizeQaoa(const IsingInstance& inst, const QaoaAngles& angles);

/// Just the tagged edge trios of one cost layer, in the given edge order
/// (canonical order when `order` is empty). This is the router's input.
Circuit synthesizeCostLayer(const IsingInstance& inst, double gamma,
                            const std::vector<int>& order = {});

/// Fully connected closed-form counts:
///   N_H = 2np + n,  N_R = p(eta + n(d_G+2)/2),  N_CNOT = p n d_G - n0.
GateCounts closedFormCounts(int n, int p, double dG, int eta, long n0);

/// Left-to-right scan after the Hadamard wall: a CNOT whose operands are
/// both untouched since the wall acts trivially on |+>^n and is erased.
/// Returns the number of erased gates, at most floor(n/2).
long cancelFirstLayer(Circuit& c);

/// Expands every SWAP into three CNOTs. The palindrome orientation is
/// chosen to match the nearest same-pair CNOT neighbor so a cancellation
/// becomes available.
Circuit expandSwaps(const Circuit& c);

/// Erases adjacent identical-operand CNOT pairs with no intervening gate
/// on either operand, repeating to fixpoint.
void cancelAdjacentCnots(Circuit& c);

/// Erases adjacent same-pair SWAP pairs (an exact undo) before expansion.
void cancelAdjacentSwapPairs(Circuit& c);

/// Permutes the tagged edge trios uniformly at random within each cost
/// layer; every other gate stays in place.
Circuit shuffleEdgeTerms(const Circuit& c, std::uint64_t seed);

GateCounts countGates(const Circuit& c);

/// sigma per routed layer: extra CNOTs beyond the fully connected count,
/// per SWAP. Undefined when nSwap = 0.
void fillSigma(GateCounts& counts, long nCnotTotal, long nCnotFc, int p);

/// Circuit depth over active gates, each gate one time step.
int circuitDepth(const Circuit& c);

/// Line-per-gate text format: "H q", "R q angle [tag]",
/// "CNOT q0 q1 [tag]", "SWAP q0 q1 [tag]". Erased gates are dropped.
std::string circuitToText(const Circuit& c);
Circuit circuitFromText(std::string_view text, int numQubits,
                        Circuit::Frame frame = Circuit::Frame::Logical);

}  // namespace qaoakit
