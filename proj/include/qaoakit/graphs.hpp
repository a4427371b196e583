#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qaoakit {

/// Unweighted simple graph over vertices 0..n-1. Edges are stored sorted
/// with i < j, which is the canonical form used for hashing and shuffling.
struct ProblemGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  [[nodiscard]] double averageDegree() const;
  [[nodiscard]] std::vector<int> degrees() const;
  [[nodiscard]] bool isConnected() const;
  [[nodiscard]] bool hasEdge(int i, int j) const;
};

struct IsingEdge {
  int i;
  int j;
  double weight;
};

/// Quadratic problem instance: couplings J_ij on edges and local fields h_i.
struct IsingInstance {
  int n = 0;
  std::vector<IsingEdge> edges;
  std::vector<double> fields;  // length n, zero entries allowed

  /// Number of nonzero fields.
  [[nodiscard]] int eta() const;
  [[nodiscard]] ProblemGraph problemGraph() const;

  static IsingInstance fromProblemGraph(const ProblemGraph& g,
                                        double coupling = 1.0,
                                        double field = 0.0);
};

/// Decodes one line of standard graph6 text. Only single-byte sizes
/// (n <= 62) are accepted; longer encodings are rejected.
ProblemGraph parseGraph6(std::string_view line);

/// Canonical graph6 encoding of a graph, inverse of parseGraph6.
std::string encodeGraph6(const ProblemGraph& g);

/// Reads a graph6 corpus, one graph per line. Blank lines are skipped.
/// Parse failures carry the 1-based line number.
std::vector<ProblemGraph> loadGraph6File(const std::string& path);

/// Parses the Ising edge-list format: first data line is n, then lines
/// "i j J" (coupling) or "i h" (field). '#' starts a comment.
IsingInstance parseIsing(std::string_view text);
IsingInstance loadIsingFile(const std::string& path);

/// Simple connected d-regular graph on n vertices via the pairing model,
/// resampling with derived seeds until the result is simple and connected.
ProblemGraph genRandomRegular(int n, int d, std::uint64_t seed);

/// Stateless seed mixer used to derive per-trial RNG streams.
std::uint64_t mixSeed(std::uint64_t seed, std::uint64_t stream);

}  // namespace qaoakit
