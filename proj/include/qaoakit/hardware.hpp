#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qaoakit {

enum class LatticeKind {
  HeavyHex,
  Hexagon,
  Square,
  Triangle,
  FullyConnected,
  Custom,  // edge-list import; no family statistics
};

std::string latticeName(LatticeKind kind);
LatticeKind latticeFromName(std::string_view name);

/// Nominal interior-average degree of a lattice family (heavy-hex 2.5,
/// hexagon 3, square 4, triangle 6). Not defined for fully connected.
double nominalInteriorDegree(LatticeKind kind);

/// Coupling lattice: sites plus symmetric adjacency. Immutable once built.
struct HardwareGraph {
  LatticeKind kind = LatticeKind::Square;
  int rows = 0;
  int cols = 0;
  int numSites = 0;
  std::vector<std::pair<int, int>> edges;        // i < j, sorted
  std::vector<std::vector<int>> adjacency;       // per-site neighbor lists

  [[nodiscard]] bool areAdjacent(int s, int t) const;
  [[nodiscard]] int maxDegree() const;
  [[nodiscard]] bool isConnected() const;

  /// One edge per line, "s t".
  [[nodiscard]] std::string toEdgeListText() const;
  /// Dense 0/1 adjacency matrix, one CSV row per site.
  [[nodiscard]] std::string toAdjacencyCsv() const;
};

struct InteriorDegree {
  double value = 0.0;
  bool nominalFallback = false;  // true when no interior site exists
};

/// Planar lattice of the named family. Square is the rows x cols grid
/// graph; triangle adds one consistent diagonal per cell; hexagon is the
/// brick-wall tiling (vertical rungs on alternating parity); heavy-hex
/// subdivides every hexagon edge with a degree-2 site. FullyConnected
/// builds the complete graph on rows*cols sites.
HardwareGraph buildLattice(LatticeKind kind, int rows, int cols);

/// Smallest lattice of the family holding n qubits, extents
/// ceil(sqrt(n)) x ceil(sqrt(n)) (minimum 2 for the hexagon families).
HardwareGraph gridFor(int n, LatticeKind kind);

/// Average degree over non-perimeter coordination classes. Equals the
/// family constant once the lattice has interior sites; smaller lattices
/// fall back to the nominal value with the fallback flag set.
InteriorDegree interiorAverageDegree(const HardwareGraph& hw);

/// Exact BFS hop counts between all site pairs.
struct DistanceMatrix {
  std::vector<std::vector<int>> dist;
  [[nodiscard]] int operator()(int s, int t) const { return dist[s][t]; }
};

DistanceMatrix allPairsDistance(const HardwareGraph& hw);

/// Escape hatch: coupling map from edge-list text ("s t" per line).
HardwareGraph hardwareFromEdgeList(std::string_view text);

}  // namespace qaoakit
