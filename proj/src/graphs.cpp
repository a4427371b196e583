#include "qaoakit/graphs.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qaoakit {

double ProblemGraph::averageDegree() const {
  if (n < 1) throw std::invalid_argument("averageDegree: empty graph");
  return 2.0 * static_cast<double>(edges.size()) / static_cast<double>(n);
}

std::vector<int> ProblemGraph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (const auto& [i, j] : edges) {
    ++deg[static_cast<std::size_t>(i)];
    ++deg[static_cast<std::size_t>(j)];
  }
  return deg;
}

bool ProblemGraph::isConnected() const {
  if (n <= 1) return true;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& [i, j] : edges) {
    adj[static_cast<std::size_t>(i)].push_back(j);
    adj[static_cast<std::size_t>(j)].push_back(i);
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int visited = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (const int w : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++visited;
        q.push(w);
      }
    }
  }
  return visited == n;
}

bool ProblemGraph::hasEdge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

int IsingInstance::eta() const {
  return static_cast<int>(
      std::count_if(fields.begin(), fields.end(), [](double h) { return h != 0.0; }));
}

ProblemGraph IsingInstance::problemGraph() const {
  ProblemGraph g;
  g.n = n;
  g.edges.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.weight != 0.0) g.edges.emplace_back(e.i, e.j);
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

IsingInstance IsingInstance::fromProblemGraph(const ProblemGraph& g,
                                              double coupling, double field) {
  IsingInstance inst;
  inst.n = g.n;
  inst.fields.assign(static_cast<std::size_t>(g.n), field);
  inst.edges.reserve(g.edges.size());
  for (const auto& [i, j] : g.edges) inst.edges.push_back({i, j, coupling});
  return inst;
}

namespace {

constexpr int kGraph6Base = 63;    // '?'
constexpr int kGraph6Max = 126;    // '~', also the multi-byte size marker

}  // namespace

ProblemGraph parseGraph6(std::string_view line) {
  if (line.empty()) throw std::invalid_argument("graph6: empty line");
  const int header = static_cast<unsigned char>(line[0]);
  if (header == kGraph6Max)
    throw std::invalid_argument("graph6: sizes above 62 are not supported");
  if (header < kGraph6Base || header > kGraph6Max)
    throw std::invalid_argument("graph6: malformed header byte");
  const int n = header - kGraph6Base;

  const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::size_t payload = (bits + 5) / 6;
  if (line.size() < 1 + payload) throw std::invalid_argument("graph6: truncated bit payload");
  if (line.size() > 1 + payload) throw std::invalid_argument("graph6: trailing garbage");

  ProblemGraph g;
  g.n = n;
  std::size_t bit = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++bit) {
      const int c = static_cast<unsigned char>(line[1 + bit / 6]);
      if (c < kGraph6Base || c > kGraph6Max)
        throw std::invalid_argument("graph6: invalid payload byte");
      const int val = c - kGraph6Base;
      if ((val >> (5 - bit % 6)) & 1) g.edges.emplace_back(i, j);
    }
  }
  // remaining padding bits must be zero in canonical encodings
  for (; bit < payload * 6; ++bit) {
    const int val = static_cast<unsigned char>(line[1 + bit / 6]) - kGraph6Base;
    if ((val >> (5 - bit % 6)) & 1)
      throw std::invalid_argument("graph6: nonzero padding bits");
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

std::string encodeGraph6(const ProblemGraph& g) {
  if (g.n < 0 || g.n > 62)
    throw std::invalid_argument("graph6: encoder supports 0 <= n <= 62");
  std::string out;
  out.push_back(static_cast<char>(g.n + kGraph6Base));
  const std::size_t bits = static_cast<std::size_t>(g.n) * (g.n - 1) / 2;
  std::vector<char> bitset(bits, 0);
  std::size_t bit = 0;
  for (int j = 1; j < g.n; ++j) {
    for (int i = 0; i < j; ++i, ++bit) {
      if (g.hasEdge(i, j)) bitset[bit] = 1;
    }
  }
  for (std::size_t k = 0; k < bits; k += 6) {
    int val = 0;
    for (std::size_t b = 0; b < 6; ++b) {
      val <<= 1;
      if (k + b < bits && bitset[k + b]) val |= 1;
    }
    out.push_back(static_cast<char>(val + kGraph6Base));
  }
  return out;
}

std::vector<ProblemGraph> loadGraph6File(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph6 file: " + path);
  std::vector<ProblemGraph> graphs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      graphs.push_back(parseGraph6(line));
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return graphs;
}

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> toks;
  std::string cur;
  for (const char c : line) {
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) toks.push_back(std::exchange(cur, {}));
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) toks.push_back(cur);
  return toks;
}

int parseIndex(const std::string& tok, std::size_t lineno) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw std::invalid_argument("line " + std::to_string(lineno) +
                                ": expected integer index, got '" + tok + "'");
  return v;
}

double parseReal(const std::string& tok, std::size_t lineno) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != tok.size())
    throw std::invalid_argument("line " + std::to_string(lineno) +
                                ": expected numeric value, got '" + tok + "'");
  return v;
}

}  // namespace

IsingInstance parseIsing(std::string_view text) {
  IsingInstance inst;
  std::set<std::pair<int, int>> seen;
  bool haveSize = false;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    std::string_view line = text.substr(
        start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++lineno;
    const auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (!haveSize) {
      if (toks.size() != 1)
        throw std::invalid_argument("line " + std::to_string(lineno) +
                                    ": expected vertex count");
      inst.n = parseIndex(toks[0], lineno);
      if (inst.n < 0)
        throw std::invalid_argument("line " + std::to_string(lineno) +
                                    ": negative vertex count");
      inst.fields.assign(static_cast<std::size_t>(inst.n), 0.0);
      haveSize = true;
      continue;
    }
    if (toks.size() == 2) {
      const int i = parseIndex(toks[0], lineno);
      if (i < 0 || i >= inst.n)
        throw std::out_of_range("line " + std::to_string(lineno) +
                                ": field index out of range");
      inst.fields[static_cast<std::size_t>(i)] = parseReal(toks[1], lineno);
    } else if (toks.size() == 3) {
      int i = parseIndex(toks[0], lineno);
      int j = parseIndex(toks[1], lineno);
      const double w = parseReal(toks[2], lineno);
      if (i == j)
        throw std::invalid_argument("line " + std::to_string(lineno) + ": self-loop");
      if (i > j) std::swap(i, j);
      if (i < 0 || j >= inst.n)
        throw std::out_of_range("line " + std::to_string(lineno) +
                                ": edge index out of range");
      if (!seen.insert({i, j}).second)
        throw std::invalid_argument("line " + std::to_string(lineno) +
                                    ": duplicate edge (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
      inst.edges.push_back({i, j, w});
    } else {
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": expected 'i j J' or 'i h'");
    }
  }
  if (!haveSize) throw std::invalid_argument("ising file: missing vertex count");
  std::sort(inst.edges.begin(), inst.edges.end(),
            [](const IsingEdge& a, const IsingEdge& b) {
              return std::make_pair(a.i, a.j) < std::make_pair(b.i, b.j);
            });
  return inst;
}

IsingInstance loadIsingFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open ising file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parseIsing(buf.str());
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::uint64_t mixSeed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined value
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ProblemGraph genRandomRegular(int n, int d, std::uint64_t seed) {
  if (n <= 0 || d < 0 || d >= n)
    throw std::invalid_argument("genRandomRegular: require 0 <= d < n");
  if ((static_cast<long long>(n) * d) % 2 != 0)
    throw std::invalid_argument("genRandomRegular: n*d must be even");

  constexpr int kMaxAttempts = 2000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::mt19937_64 rng(mixSeed(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * d);
    for (int v = 0; v < n; ++v)
      for (int k = 0; k < d; ++k) stubs.push_back(v);
    std::shuffle(stubs.begin(), stubs.end(), rng);

    std::set<std::pair<int, int>> edgeSet;
    bool ok = true;
    for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
      int a = stubs[k];
      int b = stubs[k + 1];
      if (a == b) {
        ok = false;
        break;
      }
      if (a > b) std::swap(a, b);
      if (!edgeSet.insert({a, b}).second) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    ProblemGraph g;
    g.n = n;
    g.edges.assign(edgeSet.begin(), edgeSet.end());
    if (g.isConnected()) return g;
  }
  throw std::runtime_error("genRandomRegular: retry limit exceeded");
}

}  // namespace qaoakit
