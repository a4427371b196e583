#include "qaoakit/hardware.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace qaoakit {

std::string latticeName(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::HeavyHex: return "heavy_hex";
    case LatticeKind::Hexagon: return "hexagon";
    case LatticeKind::Square: return "square";
    case LatticeKind::Triangle: return "triangle";
    case LatticeKind::FullyConnected: return "fully_connected";
    case LatticeKind::Custom: return "custom";
  }
  throw std::invalid_argument("latticeName: unknown kind");
}

LatticeKind latticeFromName(std::string_view name) {
  if (name == "heavy_hex" || name == "heavy-hex") return LatticeKind::HeavyHex;
  if (name == "hexagon") return LatticeKind::Hexagon;
  if (name == "square") return LatticeKind::Square;
  if (name == "triangle") return LatticeKind::Triangle;
  if (name == "fully_connected" || name == "fully-connected")
    return LatticeKind::FullyConnected;
  if (name == "custom") return LatticeKind::Custom;
  throw std::invalid_argument("unknown lattice kind: " + std::string(name));
}

double nominalInteriorDegree(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::HeavyHex: return 2.5;
    case LatticeKind::Hexagon: return 3.0;
    case LatticeKind::Square: return 4.0;
    case LatticeKind::Triangle: return 6.0;
    default:
      throw std::invalid_argument("nominalInteriorDegree: no family constant for " +
                                  latticeName(kind));
  }
}

bool HardwareGraph::areAdjacent(int s, int t) const {
  if (s > t) std::swap(s, t);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(s, t));
}

int HardwareGraph::maxDegree() const {
  int m = 0;
  for (const auto& nbrs : adjacency) m = std::max(m, static_cast<int>(nbrs.size()));
  return m;
}

bool HardwareGraph::isConnected() const {
  if (numSites <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(numSites), 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int visited = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (const int w : adjacency[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++visited;
        q.push(w);
      }
    }
  }
  return visited == numSites;
}

std::string HardwareGraph::toEdgeListText() const {
  std::ostringstream out;
  for (const auto& [s, t] : edges) out << s << ' ' << t << '\n';
  return out.str();
}

std::string HardwareGraph::toAdjacencyCsv() const {
  std::ostringstream out;
  for (int s = 0; s < numSites; ++s) {
    for (int t = 0; t < numSites; ++t) {
      if (t) out << ',';
      out << (areAdjacent(s, t) ? 1 : 0);
    }
    out << '\n';
  }
  return out.str();
}

namespace {

HardwareGraph finalize(HardwareGraph hw, std::vector<std::pair<int, int>> edges) {
  for (auto& [s, t] : edges)
    if (s > t) std::swap(s, t);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  hw.edges = std::move(edges);
  hw.adjacency.assign(static_cast<std::size_t>(hw.numSites), {});
  for (const auto& [s, t] : hw.edges) {
    hw.adjacency[static_cast<std::size_t>(s)].push_back(t);
    hw.adjacency[static_cast<std::size_t>(t)].push_back(s);
  }
  for (auto& nbrs : hw.adjacency) std::sort(nbrs.begin(), nbrs.end());
  return hw;
}

std::vector<std::pair<int, int>> hexagonEdges(int rows, int cols) {
  // Brick-wall tiling: full horizontal rows, vertical rungs on even parity.
  std::vector<std::pair<int, int>> edges;
  const auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c + 1 < cols; ++c) edges.emplace_back(id(r, c), id(r, c + 1));
  for (int r = 0; r + 1 < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if ((r + c) % 2 == 0) edges.emplace_back(id(r, c), id(r + 1, c));
  return edges;
}

}  // namespace

HardwareGraph buildLattice(LatticeKind kind, int rows, int cols) {
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("buildLattice: extents must be positive");
  HardwareGraph hw;
  hw.kind = kind;
  hw.rows = rows;
  hw.cols = cols;
  const auto id = [cols](int r, int c) { return r * cols + c; };
  std::vector<std::pair<int, int>> edges;

  switch (kind) {
    case LatticeKind::Square:
    case LatticeKind::Triangle: {
      hw.numSites = rows * cols;
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
          if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
          if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
          if (kind == LatticeKind::Triangle && r + 1 < rows && c + 1 < cols)
            edges.emplace_back(id(r, c), id(r + 1, c + 1));
        }
      break;
    }
    case LatticeKind::Hexagon: {
      if (rows < 2 || cols < 2)
        throw std::invalid_argument("buildLattice: hexagon needs extents >= 2");
      hw.numSites = rows * cols;
      edges = hexagonEdges(rows, cols);
      break;
    }
    case LatticeKind::HeavyHex: {
      if (rows < 2 || cols < 2)
        throw std::invalid_argument("buildLattice: heavy_hex needs extents >= 2");
      const auto base = hexagonEdges(rows, cols);
      hw.numSites = rows * cols + static_cast<int>(base.size());
      int sub = rows * cols;
      for (const auto& [s, t] : base) {
        edges.emplace_back(s, sub);
        edges.emplace_back(sub, t);
        ++sub;
      }
      break;
    }
    case LatticeKind::FullyConnected: {
      hw.numSites = rows * cols;
      for (int s = 0; s < hw.numSites; ++s)
        for (int t = s + 1; t < hw.numSites; ++t) edges.emplace_back(s, t);
      break;
    }
    case LatticeKind::Custom:
      throw std::invalid_argument("buildLattice: custom lattices come from edge lists");
  }

  hw = finalize(std::move(hw), std::move(edges));
  if (!hw.isConnected())
    throw std::invalid_argument("buildLattice: degenerate extents give a disconnected lattice");
  return hw;
}

HardwareGraph gridFor(int n, LatticeKind kind) {
  if (n < 1) throw std::invalid_argument("gridFor: need n >= 1");
  if (kind == LatticeKind::FullyConnected)
    return buildLattice(kind, 1, n);
  int k = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  if ((kind == LatticeKind::Hexagon || kind == LatticeKind::HeavyHex) && k < 2) k = 2;
  if (k < 1) k = 1;
  while (true) {
    HardwareGraph hw = buildLattice(kind, k, k);
    if (hw.numSites >= n) return hw;
    ++k;  // unreachable for the built-in families, kept as a safety net
  }
}

InteriorDegree interiorAverageDegree(const HardwareGraph& hw) {
  if (hw.kind == LatticeKind::FullyConnected)
    return {static_cast<double>(hw.numSites - 1), false};
  if (hw.kind == LatticeKind::Custom) {
    double sum = 0;
    for (const auto& nbrs : hw.adjacency) sum += static_cast<double>(nbrs.size());
    return {hw.numSites ? sum / hw.numSites : 0.0, true};
  }

  if (hw.kind == LatticeKind::HeavyHex) {
    // Bimodal family: interior coordination classes are degree-3 branch
    // sites and degree-2 subdivision sites, averaged per class.
    bool hasBranch = false;
    for (const auto& nbrs : hw.adjacency)
      if (nbrs.size() == 3) {
        hasBranch = true;
        break;
      }
    return {2.5, !hasBranch};
  }

  const double nominal = nominalInteriorDegree(hw.kind);
  double sum = 0;
  int count = 0;
  for (const auto& nbrs : hw.adjacency) {
    if (static_cast<double>(nbrs.size()) >= nominal) {
      sum += static_cast<double>(nbrs.size());
      ++count;
    }
  }
  if (count == 0) return {nominal, true};
  return {sum / count, false};
}

DistanceMatrix allPairsDistance(const HardwareGraph& hw) {
  if (!hw.isConnected())
    throw std::invalid_argument("allPairsDistance: disconnected hardware graph");
  DistanceMatrix dm;
  dm.dist.assign(static_cast<std::size_t>(hw.numSites),
                 std::vector<int>(static_cast<std::size_t>(hw.numSites), -1));
  for (int src = 0; src < hw.numSites; ++src) {
    auto& row = dm.dist[static_cast<std::size_t>(src)];
    row[static_cast<std::size_t>(src)] = 0;
    std::queue<int> q;
    q.push(src);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (const int w : hw.adjacency[static_cast<std::size_t>(v)]) {
        if (row[static_cast<std::size_t>(w)] < 0) {
          row[static_cast<std::size_t>(w)] = row[static_cast<std::size_t>(v)] + 1;
          q.push(w);
        }
      }
    }
  }
  return dm;
}

HardwareGraph hardwareFromEdgeList(std::string_view text) {
  std::vector<std::pair<int, int>> edges;
  int maxSite = -1;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    int s = 0, t = 0;
    if (!(ls >> s)) continue;
    if (!(ls >> t))
      throw std::invalid_argument("edge list line " + std::to_string(lineno) +
                                  ": expected two site indices");
    if (s < 0 || t < 0 || s == t)
      throw std::invalid_argument("edge list line " + std::to_string(lineno) +
                                  ": invalid edge");
    edges.emplace_back(s, t);
    maxSite = std::max({maxSite, s, t});
  }
  HardwareGraph hw;
  hw.kind = LatticeKind::Custom;
  hw.numSites = maxSite + 1;
  hw.rows = 1;
  hw.cols = hw.numSites;
  hw = finalize(std::move(hw), std::move(edges));
  if (!hw.isConnected())
    throw std::invalid_argument("edge list: hardware graph must be connected");
  return hw;
}

}  // namespace qaoakit
