// qaoakit command-line front end: batch routing, resource estimation,
// scaling-law fits, and lattice export with reproducible manifests.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <map>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qaoakit/estimator.hpp"
#include "qaoakit/fit.hpp"
#include "qaoakit/graphs.hpp"
#include "qaoakit/hardware.hpp"
#include "qaoakit/router.hpp"

namespace {

using nlohmann::json;
using namespace qaoakit;

constexpr const char* kVersion = "1.0.0";
constexpr const char* kOutDirEnvVar = "QAOAKIT_OUT_DIR";

std::string defaultOutDir() {
  if (const char* env = std::getenv(kOutDirEnvVar); env != nullptr && *env != '\0')
    return env;
  return ".";
}

std::string isoTimestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

void writeFile(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path().empty() ? "."
                                                                 : path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void writeManifest(const std::filesystem::path& outDir, const std::string& subcommand,
                   const json& config, std::uint64_t seed) {
  json manifest;
  manifest["subcommand"] = subcommand;
  manifest["config"] = config;
  manifest["seed"] = seed;
  manifest["tool_version"] = kVersion;
  manifest["timestamp"] = isoTimestamp();
  writeFile(outDir / (subcommand + ".manifest.json"), manifest.dump(2) + "\n");
}

struct LatticeArgs {
  std::string name = "square";
  int rows = 0;  // 0 means "size for n automatically"
  int cols = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--lattice", name,
                    "coupling lattice: heavy_hex, hexagon, square, triangle, "
                    "fully_connected")
        ->capture_default_str();
    cmd->add_option("--rows", rows, "lattice rows (0 = auto-size for n)")
        ->capture_default_str();
    cmd->add_option("--cols", cols, "lattice columns (0 = auto-size for n)")
        ->capture_default_str();
  }

  [[nodiscard]] HardwareGraph build(int n) const {
    const LatticeKind kind = latticeFromName(name);
    if (rows > 0 || cols > 0) {
      if (rows <= 0 || cols <= 0)
        throw std::invalid_argument("--rows and --cols must be given together");
      return buildLattice(kind, rows, cols);
    }
    return gridFor(n, kind);
  }
};

const char* kRouteCsvHeader =
    "graph_id,lattice,n,d_G,d_H,n_swap,sigma,n0,n_u,depth,cnot_total,seed";

int cmdRoute(const std::string& graphsPath, const LatticeArgs& lattice,
             const RoutingConfig& cfg, int pLayers, const std::string& outDir) {
  const auto corpus = loadGraph6File(graphsPath);
  std::ostringstream csv;
  csv << kRouteCsvHeader << '\n';
  json statsRecords = json::array();

  for (std::size_t id = 0; id < corpus.size(); ++id) {
    const ProblemGraph& g = corpus[id];
    const IsingInstance inst = IsingInstance::fromProblemGraph(g);
    const HardwareGraph hw = lattice.build(g.n);
    const double dH = hw.kind == LatticeKind::FullyConnected
                          ? static_cast<double>(hw.numSites - 1)
                          : interiorAverageDegree(hw).value;
    const RoutedResult r = optimize(inst, hw, cfg);
    const GateCounts totals = mirrorLayers(r, pLayers);

    csv << id << ',' << latticeName(hw.kind) << ',' << g.n << ','
        << fmt(g.averageDegree()) << ',' << fmt(dH) << ',' << r.stats.nSwap << ','
        << (r.stats.sigmaDefined ? fmt(r.stats.sigma) : "nan") << ',' << r.stats.n0
        << ',' << r.stats.nUnsatisfied << ',' << r.stats.depth << ',' << totals.nCnot
        << ',' << cfg.seed << '\n';

    json rec;
    rec["graph_id"] = id;
    rec["lattice"] = latticeName(hw.kind);
    rec["n"] = g.n;
    rec["d_G"] = g.averageDegree();
    rec["d_H"] = dH;
    rec["n_swap"] = r.stats.nSwap;
    if (r.stats.sigmaDefined) rec["sigma"] = r.stats.sigma;
    rec["n0"] = r.stats.n0;
    rec["n_u"] = r.stats.nUnsatisfied;
    rec["depth"] = r.stats.depth;
    rec["cnot_layer"] = r.stats.cnotLayer;
    rec["cnot_total"] = totals.nCnot;
    rec["p_layers"] = pLayers;
    rec["swap_lower_bound"] = swapLowerBound(g, hw);
    statsRecords.push_back(rec);
  }

  const std::filesystem::path dir(outDir);
  writeFile(dir / "route.csv", csv.str());
  writeFile(dir / "route.json", statsRecords.dump(2) + "\n");
  json config;
  config["graphs"] = graphsPath;
  config["lattice"] = lattice.name;
  config["rows"] = lattice.rows;
  config["cols"] = lattice.cols;
  config["shuffles"] = cfg.shuffles;
  config["iterations"] = cfg.iterations;
  config["lookahead"] = cfg.lookahead;
  config["jobs"] = cfg.jobs;
  config["p_layers"] = pLayers;
  writeManifest(dir, "route", config, cfg.seed);
  std::cout << "route: " << corpus.size() << " graphs -> " << (dir / "route.csv").string()
            << '\n';
  return 0;
}

int cmdEstimate(const SweepSpec& spec, const std::string& outDir) {
  const auto rows = scalingSweep(spec);
  std::ostringstream csv;
  csv << sweepCsvHeader() << '\n';
  for (const auto& row : rows) csv << sweepRowCsv(row) << '\n';

  const std::filesystem::path dir(outDir);
  writeFile(dir / "estimate.csv", csv.str());
  json config;
  config["sizes"] = spec.sizes;
  config["p_layers"] = spec.p;
  config["d_G"] = spec.dG;
  config["eps_cnot"] = spec.epsCnot;
  config["p_target"] = spec.pTarget;
  std::vector<std::string> latticeNames;
  latticeNames.reserve(spec.lattices.size());
  for (const LatticeKind k : spec.lattices) latticeNames.push_back(latticeName(k));
  config["lattices"] = latticeNames;
  writeManifest(dir, "estimate", config, 0);
  std::cout << "estimate: " << rows.size() << " rows -> "
            << (dir / "estimate.csv").string() << '\n';
  return 0;
}

std::vector<std::map<std::string, std::string>> readCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CSV: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path);
  std::vector<std::string> header;
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) header.push_back(cell);
  }
  std::vector<std::map<std::string, std::string>> rows;
  long lineNo = 1;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::map<std::string, std::string> row;
    std::size_t col = 0;
    while (std::getline(ls, cell, ',')) {
      if (col >= header.size())
        throw std::runtime_error(path + ":" + std::to_string(lineNo) +
                                 ": more cells than header columns");
      row[header[col++]] = cell;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

double csvNumber(const std::map<std::string, std::string>& row, const std::string& key,
                 const std::string& path) {
  const auto it = row.find(key);
  if (it == row.end())
    throw std::runtime_error(path + ": missing required column '" + key + "'");
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(path + ": non-numeric value '" + it->second +
                             "' in column '" + key + "'");
  }
}

int cmdFit(const std::string& inputPath, const std::string& model,
           const std::string& outDir) {
  const auto rows = readCsv(inputPath);
  FitResult fit;
  if (model == "degree") {
    std::vector<double> x, y;
    for (const auto& row : rows) {
      x.push_back(csvNumber(row, "d_G", inputPath) / csvNumber(row, "d_H", inputPath));
      y.push_back(csvNumber(row, "n_swap", inputPath));
    }
    fit = fitDegreeLaw(x, y);
  } else if (model == "size") {
    std::vector<double> x, y;
    for (const auto& row : rows) {
      const double n = csvNumber(row, "n", inputPath);
      const double n0 = csvNumber(row, "n0", inputPath);
      const double dH = csvNumber(row, "d_H", inputPath);
      x.push_back((n - n0) * std::sqrt(n) / dH);
      y.push_back(csvNumber(row, "n_swap", inputPath));
    }
    fit = fitSizeLaw(x, y);
  } else if (model == "unsatisfied") {
    std::vector<UnsatisfiedPoint> data;
    for (const auto& row : rows) {
      UnsatisfiedPoint pt;
      pt.n = csvNumber(row, "n", inputPath);
      pt.dH = csvNumber(row, "d_H", inputPath);
      pt.n0 = csvNumber(row, "n0", inputPath);
      pt.nU = csvNumber(row, "n_u", inputPath);
      data.push_back(pt);
    }
    fit = fitUnsatisfiedEdges(data);
  } else {
    throw std::invalid_argument("unknown fit model '" + model +
                                "' (expected degree, size, or unsatisfied)");
  }

  json out;
  out["model"] = model;
  out["params"] = fit.params;
  out["stderr"] = fit.stderrs;
  out["rmse"] = fit.rmse;
  out["rmse_adjusted"] = fit.rmseAdjusted;
  out["n_points"] = fit.nPoints;

  const std::filesystem::path dir(outDir);
  writeFile(dir / "fit.json", out.dump(2) + "\n");
  json config;
  config["input"] = inputPath;
  config["model"] = model;
  writeManifest(dir, "fit", config, 0);
  std::cout << "fit: " << model << " on " << fit.nPoints << " points -> "
            << (dir / "fit.json").string() << '\n';
  return 0;
}

int cmdLattice(const LatticeArgs& lattice, bool adjacencyCsv, const std::string& outDir) {
  if (lattice.rows <= 0 || lattice.cols <= 0)
    throw std::invalid_argument("lattice export requires --rows and --cols");
  const HardwareGraph hw = buildLattice(latticeFromName(lattice.name), lattice.rows,
                                        lattice.cols);
  const std::filesystem::path dir(outDir);
  writeFile(dir / "lattice.edges", hw.toEdgeListText());
  if (adjacencyCsv) writeFile(dir / "lattice.adjacency.csv", hw.toAdjacencyCsv());
  json config;
  config["lattice"] = lattice.name;
  config["rows"] = lattice.rows;
  config["cols"] = lattice.cols;
  config["adjacency_csv"] = adjacencyCsv;
  writeManifest(dir, "lattice", config, 0);
  std::cout << "lattice: " << hw.numSites << " sites, " << hw.edges.size()
            << " edges -> " << (dir / "lattice.edges").string() << '\n';
  return 0;
}

int cmdLowerBound(const std::string& graphsPath, const LatticeArgs& lattice,
                  const std::string& outDir) {
  const auto corpus = loadGraph6File(graphsPath);
  std::ostringstream csv;
  csv << "graph_id,lattice,n,d_G,h_max,swap_lower_bound\n";
  for (std::size_t id = 0; id < corpus.size(); ++id) {
    const ProblemGraph& g = corpus[id];
    const HardwareGraph hw = lattice.build(g.n);
    csv << id << ',' << latticeName(hw.kind) << ',' << g.n << ','
        << fmt(g.averageDegree()) << ',' << hw.maxDegree() << ','
        << swapLowerBound(g, hw) << '\n';
  }
  const std::filesystem::path dir(outDir);
  writeFile(dir / "lower_bound.csv", csv.str());
  json config;
  config["graphs"] = graphsPath;
  config["lattice"] = lattice.name;
  config["rows"] = lattice.rows;
  config["cols"] = lattice.cols;
  writeManifest(dir, "lower-bound", config, 0);
  std::cout << "lower-bound: " << corpus.size() << " graphs -> "
            << (dir / "lower_bound.csv").string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QAOA routing and resource-estimation toolkit"};
  app.require_subcommand(1);

  std::string outDir = defaultOutDir();
  app.add_option("--out", outDir,
                 "output directory (default: $" + std::string(kOutDirEnvVar) +
                     " or the current directory)")
      ->capture_default_str();

  // route
  auto* route = app.add_subcommand("route", "route a graph6 corpus onto a lattice");
  std::string routeGraphs;
  route->add_option("--graphs", routeGraphs, "graph6 corpus, one graph per line")
      ->required();
  LatticeArgs routeLattice;
  routeLattice.attach(route);
  RoutingConfig cfg;
  route->add_option("--shuffles", cfg.shuffles, "edge-order shuffles per graph")
      ->capture_default_str();
  route->add_option("--iterations", cfg.iterations, "random placements per shuffle")
      ->capture_default_str();
  route->add_option("--lookahead", cfg.lookahead, "lookahead weight")
      ->capture_default_str();
  route->add_option("--seed", cfg.seed, "base RNG seed")->capture_default_str();
  route->add_option("--jobs", cfg.jobs, "parallel trial workers")->capture_default_str();
  int pLayers = 1;
  route->add_option("--p-layers", pLayers, "layer count for the reported CNOT totals")
      ->capture_default_str();

  // estimate
  auto* estimate = app.add_subcommand("estimate", "closed-form scaling sweep");
  SweepSpec spec;
  int nMin = 100, nMax = 1000, nStep = 100;
  estimate->add_option("--n-min", nMin, "smallest problem size")->capture_default_str();
  estimate->add_option("--n-max", nMax, "largest problem size")->capture_default_str();
  estimate->add_option("--n-step", nStep, "problem size increment")->capture_default_str();
  estimate->add_option("--p-layers", spec.p, "layer count")->capture_default_str();
  estimate->add_option("--d-g", spec.dG, "problem graph average degree")
      ->capture_default_str();
  estimate->add_option("--eps-cnot", spec.epsCnot, "CNOT error rate")
      ->capture_default_str();
  estimate->add_option("--p-target", spec.pTarget, "target success probability")
      ->capture_default_str();

  // fit
  auto* fitCmd = app.add_subcommand("fit", "fit a scaling law to a routing CSV");
  std::string fitInput, fitModel = "degree";
  fitCmd->add_option("--input", fitInput, "routing CSV to fit")->required();
  fitCmd->add_option("--model", fitModel, "degree, size, or unsatisfied")
      ->capture_default_str();

  // lattice
  auto* latticeCmd = app.add_subcommand("lattice", "export a coupling lattice");
  LatticeArgs latticeArgs;
  latticeArgs.attach(latticeCmd);
  bool adjacencyCsv = false;
  latticeCmd->add_flag("--adjacency-csv", adjacencyCsv,
                       "also export the dense adjacency matrix");

  // lower-bound
  auto* lower = app.add_subcommand("lower-bound",
                                   "degree-based SWAP lower bounds for a corpus");
  std::string lowerGraphs;
  lower->add_option("--graphs", lowerGraphs, "graph6 corpus, one graph per line")
      ->required();
  LatticeArgs lowerLattice;
  lowerLattice.attach(lower);

  CLI11_PARSE(app, argc, argv);

  try {
    if (route->parsed()) return cmdRoute(routeGraphs, routeLattice, cfg, pLayers, outDir);
    if (estimate->parsed()) {
      if (nMin < 1 || nMax < nMin || nStep < 1)
        throw std::invalid_argument("estimate: need 1 <= n-min <= n-max and n-step >= 1");
      for (int n = nMin; n <= nMax; n += nStep) spec.sizes.push_back(n);
      return cmdEstimate(spec, outDir);
    }
    if (fitCmd->parsed()) return cmdFit(fitInput, fitModel, outDir);
    if (latticeCmd->parsed()) return cmdLattice(latticeArgs, adjacencyCsv, outDir);
    if (lower->parsed()) return cmdLowerBound(lowerGraphs, lowerLattice, outDir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
