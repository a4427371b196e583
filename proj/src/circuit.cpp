#include "qaoakit/circuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qaoakit {

Circuit Circuit::compacted() const {
  Circuit out;
  out.numQubits = numQubits;
  out.frame = frame;
  out.gates.reserve(gates.size());
  for (const auto& g : gates)
    if (!g.erased) out.gates.push_back(g);
  return out;
}

std::size_t Circuit::activeCount() const {
  return static_cast<std::size_t>(
      std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return !g.erased; }));
}

QaoaAngles QaoaAngles::uniform(int p, double gamma, double beta) {
  QaoaAngles a;
  a.p = p;
  a.gammas.assign(static_cast<std::size_t>(p), gamma);
  a.betas.assign(static_cast<std::size_t>(p), beta);
  return a;
}

void QaoaAngles::validate() const {
  if (p < 0 || gammas.size() != static_cast<std::size_t>(p) ||
      betas.size() != static_cast<std::size_t>(p))
    throw std::invalid_argument("QaoaAngles: gammas/betas must have length p");
}

Circuit synthesizeQaoa(const IsingInstance& inst, const QaoaAngles& angles) {
  angles.validate();
  Circuit c;
  c.numQubits = inst.n;
  c.frame = Circuit::Frame::Logical;
  for (int q = 0; q < inst.n; ++q) c.gates.push_back({GateKind::H, q});
  for (int l = 0; l < angles.p; ++l) {
    const double gamma = angles.gammas[static_cast<std::size_t>(l)];
    const double beta = angles.betas[static_cast<std::size_t>(l)];
    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
      const auto& edge = inst.edges[e];
      const int tag = static_cast<int>(e);
      c.gates.push_back({GateKind::Cnot, edge.i, edge.j, 0.0, tag});
      c.gates.push_back({GateKind::R, edge.j, -1, 2.0 * gamma * edge.weight, tag});
      c.gates.push_back({GateKind::Cnot, edge.i, edge.j, 0.0, tag});
    }
    for (int q = 0; q < inst.n; ++q) {
      const double h = inst.fields[static_cast<std::size_t>(q)];
      if (h != 0.0) c.gates.push_back({GateKind::R, q, -1, 2.0 * gamma * h});
    }
    for (int q = 0; q < inst.n; ++q) {
      c.gates.push_back({GateKind::H, q});
      c.gates.push_back({GateKind::R, q, -1, 2.0 * beta});
      c.gates.push_back({GateKind::H, q});
    }
  }
  return c;
}

Circuit synthesizeCostLayer(const IsingInstance& inst, double gamma,
                            const std::vector<int>& order) {
  Circuit c;
  c.numQubits = inst.n;
  c.frame = Circuit::Frame::Logical;
  std::vector<int> idx(inst.edges.size());
  for (std::size_t e = 0; e < idx.size(); ++e) idx[e] = static_cast<int>(e);
  if (!order.empty()) {
    if (order.size() != inst.edges.size())
      throw std::invalid_argument("synthesizeCostLayer: order length mismatch");
    idx = order;
  }
  for (const int e : idx) {
    const auto& edge = inst.edges[static_cast<std::size_t>(e)];
    c.gates.push_back({GateKind::Cnot, edge.i, edge.j, 0.0, e});
    c.gates.push_back({GateKind::R, edge.j, -1, 2.0 * gamma * edge.weight, e});
    c.gates.push_back({GateKind::Cnot, edge.i, edge.j, 0.0, e});
  }
  return c;
}

GateCounts closedFormCounts(int n, int p, double dG, int eta, long n0) {
  if (n < 0 || p < 0 || dG < 0 || eta < 0 || n0 < 0)
    throw std::invalid_argument("closedFormCounts: negative input");
  if (n0 > n / 2)
    throw std::invalid_argument("closedFormCounts: n0 exceeds floor(n/2)");
  GateCounts counts;
  counts.nH = 2L * n * p + n;
  const double nr = p * (eta + n * (dG + 2.0) / 2.0);
  const double ncnot = static_cast<double>(p) * n * dG;
  counts.nR = std::lround(nr);
  counts.nCnot = std::lround(ncnot) - (p > 0 ? n0 : 0);
  counts.n0 = p > 0 ? n0 : 0;
  return counts;
}

long cancelFirstLayer(Circuit& c) {
  const std::size_t n = static_cast<std::size_t>(c.numQubits);
  if (c.gates.size() < n)
    throw std::invalid_argument("cancelFirstLayer: missing Hadamard wall");
  for (std::size_t k = 0; k < n; ++k)
    if (c.gates[k].kind != GateKind::H)
      throw std::invalid_argument("cancelFirstLayer: missing Hadamard wall");

  std::vector<char> seen(n, 0);
  long n0 = 0;
  for (std::size_t k = n; k < c.gates.size(); ++k) {
    Gate& g = c.gates[k];
    if (g.erased) continue;
    if (g.kind == GateKind::Cnot && !seen[static_cast<std::size_t>(g.q0)] &&
        !seen[static_cast<std::size_t>(g.q1)]) {
      g.erased = true;
      ++n0;
      continue;
    }
    seen[static_cast<std::size_t>(g.q0)] = 1;
    if (g.isTwoQubit()) seen[static_cast<std::size_t>(g.q1)] = 1;
  }
  return n0;
}

namespace {

// Index of the next active gate after `from` touching q0 or q1 of `g`,
// or npos.
std::size_t nextOnOperands(const Circuit& c, std::size_t from, const Gate& g) {
  for (std::size_t k = from + 1; k < c.gates.size(); ++k) {
    const Gate& h = c.gates[k];
    if (h.erased) continue;
    if (h.touches(g.q0) || (g.isTwoQubit() && h.touches(g.q1))) return k;
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

void cancelAdjacentCnots(Circuit& c) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < c.gates.size(); ++a) {
      Gate& ga = c.gates[a];
      if (ga.erased || ga.kind != GateKind::Cnot) continue;
      const std::size_t b = nextOnOperands(c, a, ga);
      if (b == static_cast<std::size_t>(-1)) continue;
      Gate& gb = c.gates[b];
      if (gb.kind == GateKind::Cnot && gb.q0 == ga.q0 && gb.q1 == ga.q1) {
        ga.erased = true;
        gb.erased = true;
        changed = true;
      }
    }
  }
}

void cancelAdjacentSwapPairs(Circuit& c) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < c.gates.size(); ++a) {
      Gate& ga = c.gates[a];
      if (ga.erased || ga.kind != GateKind::Swap) continue;
      const std::size_t b = nextOnOperands(c, a, ga);
      if (b == static_cast<std::size_t>(-1)) continue;
      Gate& gb = c.gates[b];
      const bool samePair = gb.kind == GateKind::Swap &&
                            ((gb.q0 == ga.q0 && gb.q1 == ga.q1) ||
                             (gb.q0 == ga.q1 && gb.q1 == ga.q0));
      if (samePair) {
        ga.erased = true;
        gb.erased = true;
        changed = true;
      }
    }
  }
}

Circuit expandSwaps(const Circuit& c) {
  Circuit out;
  out.numQubits = c.numQubits;
  out.frame = c.frame;
  out.gates.reserve(c.gates.size());
  for (std::size_t k = 0; k < c.gates.size(); ++k) {
    const Gate& g = c.gates[k];
    if (g.kind != GateKind::Swap) {
      out.gates.push_back(g);
      continue;
    }
    if (g.erased) {
      out.gates.push_back(g);  // kept for replay, never expanded
      continue;
    }
    // Pick the palindrome orientation matching the nearest same-pair CNOT.
    int ctrl = std::min(g.q0, g.q1);
    int tgt = std::max(g.q0, g.q1);
    bool found = false;
    for (std::size_t b = out.gates.size(); b-- > 0;) {
      const Gate& h = out.gates[b];
      if (h.erased) continue;
      if (!(h.touches(g.q0) || h.touches(g.q1))) continue;
      if (h.kind == GateKind::Cnot &&
          ((h.q0 == g.q0 && h.q1 == g.q1) || (h.q0 == g.q1 && h.q1 == g.q0))) {
        ctrl = h.q0;
        tgt = h.q1;
        found = true;
      }
      break;
    }
    if (!found) {
      for (std::size_t b = k + 1; b < c.gates.size(); ++b) {
        const Gate& h = c.gates[b];
        if (h.erased) continue;
        if (!(h.touches(g.q0) || h.touches(g.q1))) continue;
        if (h.kind == GateKind::Cnot &&
            ((h.q0 == g.q0 && h.q1 == g.q1) || (h.q0 == g.q1 && h.q1 == g.q0))) {
          ctrl = h.q0;
          tgt = h.q1;
        }
        break;
      }
    }
    out.gates.push_back({GateKind::Cnot, ctrl, tgt, 0.0, g.tag});
    out.gates.push_back({GateKind::Cnot, tgt, ctrl, 0.0, g.tag});
    out.gates.push_back({GateKind::Cnot, ctrl, tgt, 0.0, g.tag});
  }
  return out;
}

Circuit shuffleEdgeTerms(const Circuit& c, std::uint64_t seed) {
  Circuit out;
  out.numQubits = c.numQubits;
  out.frame = c.frame;
  out.gates.reserve(c.gates.size());
  std::mt19937_64 rng(seed);

  std::size_t k = 0;
  while (k < c.gates.size()) {
    // A trio is three consecutive gates sharing a nonnegative tag.
    const bool trioStart =
        c.gates[k].tag >= 0 && k + 2 < c.gates.size() &&
        c.gates[k].kind == GateKind::Cnot && c.gates[k + 1].tag == c.gates[k].tag &&
        c.gates[k + 2].tag == c.gates[k].tag;
    if (!trioStart) {
      out.gates.push_back(c.gates[k]);
      ++k;
      continue;
    }
    // Collect the maximal run of consecutive trios: one cost layer.
    std::vector<std::array<Gate, 3>> trios;
    while (k + 2 < c.gates.size() && c.gates[k].tag >= 0 &&
           c.gates[k].kind == GateKind::Cnot &&
           c.gates[k + 1].tag == c.gates[k].tag &&
           c.gates[k + 2].tag == c.gates[k].tag) {
      trios.push_back({c.gates[k], c.gates[k + 1], c.gates[k + 2]});
      k += 3;
    }
    std::shuffle(trios.begin(), trios.end(), rng);
    for (const auto& t : trios)
      for (const auto& g : t) out.gates.push_back(g);
  }
  return out;
}

GateCounts countGates(const Circuit& c) {
  GateCounts counts;
  for (const auto& g : c.gates) {
    if (g.erased) continue;
    switch (g.kind) {
      case GateKind::H: ++counts.nH; break;
      case GateKind::R: ++counts.nR; break;
      case GateKind::Cnot: ++counts.nCnot; break;
      case GateKind::Swap: ++counts.nSwap; break;
    }
  }
  return counts;
}

void fillSigma(GateCounts& counts, long nCnotTotal, long nCnotFc, int p) {
  if (counts.nSwap > 0 && p > 0) {
    counts.sigma = static_cast<double>(nCnotTotal - nCnotFc) /
                   (static_cast<double>(p) * static_cast<double>(counts.nSwap));
    counts.sigmaDefined = true;
  } else {
    counts.sigma = 0.0;
    counts.sigmaDefined = false;
  }
}

int circuitDepth(const Circuit& c) {
  std::vector<int> level(static_cast<std::size_t>(c.numQubits), 0);
  int depth = 0;
  for (const auto& g : c.gates) {
    if (g.erased) continue;
    int l = level[static_cast<std::size_t>(g.q0)];
    if (g.isTwoQubit()) l = std::max(l, level[static_cast<std::size_t>(g.q1)]);
    ++l;
    level[static_cast<std::size_t>(g.q0)] = l;
    if (g.isTwoQubit()) level[static_cast<std::size_t>(g.q1)] = l;
    depth = std::max(depth, l);
  }
  return depth;
}

std::string circuitToText(const Circuit& c) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& g : c.gates) {
    if (g.erased) continue;
    switch (g.kind) {
      case GateKind::H:
        out << "H " << g.q0;
        break;
      case GateKind::R:
        out << "R " << g.q0 << ' ' << g.angle;
        break;
      case GateKind::Cnot:
        out << "CNOT " << g.q0 << ' ' << g.q1;
        break;
      case GateKind::Swap:
        out << "SWAP " << g.q0 << ' ' << g.q1;
        break;
    }
    if (g.tag >= 0) out << ' ' << g.tag;
    out << '\n';
  }
  return out.str();
}

Circuit circuitFromText(std::string_view text, int numQubits, Circuit::Frame frame) {
  Circuit c;
  c.numQubits = numQubits;
  c.frame = frame;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    Gate g;
    auto readTag = [&] {
      int tag = -1;
      if (ls >> tag) g.tag = tag;
    };
    if (kind == "H") {
      g.kind = GateKind::H;
      if (!(ls >> g.q0)) goto malformed;
      readTag();
    } else if (kind == "R") {
      g.kind = GateKind::R;
      if (!(ls >> g.q0 >> g.angle)) goto malformed;
      readTag();
    } else if (kind == "CNOT" || kind == "SWAP") {
      g.kind = kind == "CNOT" ? GateKind::Cnot : GateKind::Swap;
      if (!(ls >> g.q0 >> g.q1)) goto malformed;
      readTag();
    } else {
      goto malformed;
    }
    if (g.q0 < 0 || g.q0 >= numQubits || (g.isTwoQubit() && (g.q1 < 0 || g.q1 >= numQubits)))
      throw std::out_of_range("circuit text line " + std::to_string(lineno) +
                              ": operand out of range");
    c.gates.push_back(g);
    continue;
  malformed:
    throw std::invalid_argument("circuit text line " + std::to_string(lineno) +
                                ": malformed gate");
  }
  return c;
}

}  // namespace qaoakit
