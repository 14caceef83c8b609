#include "vqco/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "vqco/io.hpp"
#include "vqco/rng.hpp"

namespace vqco {

std::string_view to_string(Ensemble e) {
  switch (e) {
    case Ensemble::ThreeRegular: return "three_regular";
    case Ensemble::NWS: return "nws";
    case Ensemble::SK: return "sk";
    case Ensemble::Custom: return "custom";
  }
  return "custom";
}

std::string_view to_string(Convention c) {
  return c == Convention::Physics ? "physics" : "computer_science";
}

Ensemble parse_ensemble(std::string_view name) {
  for (auto e : {Ensemble::ThreeRegular, Ensemble::NWS, Ensemble::SK, Ensemble::Custom}) {
    if (name == to_string(e)) return e;
  }
  throw std::invalid_argument("unknown ensemble '" + std::string(name) +
                              "' (expected three_regular, nws, sk or custom)");
}

Convention parse_convention(std::string_view name) {
  if (name == "physics") return Convention::Physics;
  if (name == "computer_science" || name == "cs") return Convention::ComputerScience;
  throw std::invalid_argument("unknown convention '" + std::string(name) + "'");
}

Convention default_convention(Ensemble e) {
  return e == Ensemble::SK ? Convention::Physics : Convention::ComputerScience;
}

void validate(const WeightedGraph& graph) {
  const int n = graph.n_vertices;
  if (n <= 0) throw std::invalid_argument("graph must have at least one vertex");
  std::vector<std::vector<bool>> seen(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  for (const auto& e : graph.edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw std::invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                  ") has a vertex outside [0, " + std::to_string(n) + ")");
    }
    if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) throw std::invalid_argument("edge endpoints must satisfy u < v");
    if (!std::isfinite(e.weight)) throw std::invalid_argument("edge weight must be finite");
    auto&& slot = seen[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)];
    if (slot) {
      throw std::invalid_argument("duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    }
    slot = true;
  }

  switch (graph.ensemble) {
    case Ensemble::ThreeRegular: {
      for (int d : degrees(graph)) {
        if (d != 3) throw std::invalid_argument("three_regular graph has a vertex of degree " + std::to_string(d));
      }
      for (const auto& e : graph.edges) {
        if (e.weight != 1.0) throw std::invalid_argument("three_regular weights must all be 1");
      }
      break;
    }
    case Ensemble::SK: {
      const auto complete = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
      if (graph.edges.size() != complete) throw std::invalid_argument("sk graph must be complete");
      for (const auto& e : graph.edges) {
        if (e.weight != 1.0 && e.weight != -1.0) throw std::invalid_argument("sk weights must be +1 or -1");
      }
      break;
    }
    case Ensemble::NWS: {
      for (const auto& e : graph.edges) {
        if (!(e.weight > 0.0 && e.weight <= 1.0)) throw std::invalid_argument("nws weights must lie in (0, 1]");
      }
      break;
    }
    case Ensemble::Custom:
      break;
  }
}

WeightedGraph make_graph(int n_vertices, std::vector<Edge> edges, Ensemble ensemble, std::uint64_t seed) {
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  WeightedGraph graph{n_vertices, std::move(edges), ensemble, seed};
  validate(graph);
  return graph;
}

namespace {

Edge ordered(int a, int b, double w) { return a < b ? Edge{a, b, w} : Edge{b, a, w}; }

}  // namespace

WeightedGraph gen_three_regular(int n, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("3-regular graphs need an even vertex count >= 4, got " + std::to_string(n));
  }
  Rng rng(seed);
  const auto un = static_cast<std::size_t>(n);
  std::vector<int> points(3 * un);
  for (std::size_t i = 0; i < points.size(); ++i) points[i] = static_cast<int>(i / 3);

  std::vector<std::vector<bool>> adjacent(un, std::vector<bool>(un));
  for (;;) {
    rng.shuffle(points.begin(), points.end());
    for (auto& row : adjacent) std::fill(row.begin(), row.end(), false);
    std::vector<Edge> edges;
    edges.reserve(points.size() / 2);
    bool simple = true;
    for (std::size_t i = 0; i < points.size(); i += 2) {
      const int a = points[i];
      const int b = points[i + 1];
      if (a == b || adjacent[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) {
        simple = false;
        break;
      }
      adjacent[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
      adjacent[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = true;
      edges.push_back(ordered(a, b, 1.0));
    }
    if (simple) return make_graph(n, std::move(edges), Ensemble::ThreeRegular, seed);
  }
}

WeightedGraph gen_nws(int n, int k, double p, std::uint64_t seed) {
  if (k <= 0 || k % 2 != 0) throw std::invalid_argument("nws neighbour count k must be positive and even");
  if (n <= k) throw std::invalid_argument("nws needs n > k, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("nws shortcut probability must lie in [0, 1]");

  Rng rng(seed);
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::vector<bool>> adjacent(un, std::vector<bool>(un));
  std::vector<int> degree(un, 0);
  std::vector<std::pair<int, int>> ring;
  auto connect = [&](int a, int b) {
    adjacent[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
    adjacent[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = true;
    ++degree[static_cast<std::size_t>(a)];
    ++degree[static_cast<std::size_t>(b)];
  };
  for (int offset = 1; offset <= k / 2; ++offset) {
    for (int u = 0; u < n; ++u) {
      const int v = (u + offset) % n;
      ring.emplace_back(u, v);
      connect(u, v);
    }
  }

  std::vector<std::pair<int, int>> pairs = ring;
  for (const auto& [u, v] : ring) {
    if (rng.uniform01() >= p) continue;
    if (degree[static_cast<std::size_t>(u)] >= n - 1) continue;
    int w = static_cast<int>(rng.below(un));
    while (w == u || adjacent[static_cast<std::size_t>(u)][static_cast<std::size_t>(w)]) {
      w = static_cast<int>(rng.below(un));
    }
    connect(u, w);
    pairs.emplace_back(u, w);
  }

  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) edges.push_back(ordered(a, b, rng.uniform_open_closed()));
  return make_graph(n, std::move(edges), Ensemble::NWS, seed);
}

WeightedGraph gen_sk(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("sk instances need at least 2 vertices");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v, rng.coin() ? 1.0 : -1.0});
  }
  return make_graph(n, std::move(edges), Ensemble::SK, seed);
}

WeightedGraph gen_complete_uniform(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("complete graphs need at least 2 vertices");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v, rng.uniform_open_closed()});
  }
  return make_graph(n, std::move(edges), Ensemble::Custom, seed);
}

double cut_cost(const WeightedGraph& graph, Bitstring z, Convention convention) {
  if (graph.n_vertices < 64 && (z >> graph.n_vertices) != 0) {
    throw std::invalid_argument("assignment has bits beyond vertex " + std::to_string(graph.n_vertices - 1));
  }
  double cost = 0.0;
  for (const auto& e : graph.edges) {
    const bool differ = (((z >> e.u) ^ (z >> e.v)) & 1U) != 0;
    if (convention == Convention::Physics) {
      cost += differ ? -e.weight : e.weight;
    } else if (differ) {
      cost -= e.weight;
    }
  }
  return cost;
}

double cut_cost(const WeightedGraph& graph, std::span<const std::uint8_t> bits, Convention convention) {
  if (bits.size() != static_cast<std::size_t>(graph.n_vertices)) {
    throw std::invalid_argument("assignment length " + std::to_string(bits.size()) + " does not match " +
                                std::to_string(graph.n_vertices) + " vertices");
  }
  if (graph.n_vertices > 63) throw std::invalid_argument("assignments longer than 63 bits are not supported");
  Bitstring z = 0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] > 1) throw std::invalid_argument("assignment entries must be 0 or 1");
    z |= Bitstring{bits[j]} << j;
  }
  return cut_cost(graph, z, convention);
}

Optimum brute_force_optimum(const WeightedGraph& graph, Convention convention) {
  if (graph.n_vertices > kMaxEnumerationVertices) {
    throw std::invalid_argument("brute force limited to " + std::to_string(kMaxEnumerationVertices) +
                                " vertices, got " + std::to_string(graph.n_vertices));
  }
  const Bitstring count = Bitstring{1} << graph.n_vertices;
  Optimum best{cut_cost(graph, Bitstring{0}, convention), {0}};
  for (Bitstring z = 1; z < count; ++z) {
    const double c = cut_cost(graph, z, convention);
    if (c < best.c_opt - kTieTolerance) {
      best.c_opt = c;
      best.optimal_set.assign(1, z);
    } else if (c <= best.c_opt + kTieTolerance) {
      best.optimal_set.push_back(z);
      best.c_opt = std::min(best.c_opt, c);
    }
  }
  return best;
}

VertexWeightProfile vertex_profile(const WeightedGraph& graph) {
  VertexWeightProfile profile{std::vector<double>(static_cast<std::size_t>(graph.n_vertices), 0.0)};
  for (const auto& e : graph.edges) {
    profile.rho[static_cast<std::size_t>(e.u)] += std::abs(e.weight);
    profile.rho[static_cast<std::size_t>(e.v)] += std::abs(e.weight);
  }
  return profile;
}

std::vector<int> degrees(const WeightedGraph& graph) {
  std::vector<int> d(static_cast<std::size_t>(graph.n_vertices), 0);
  for (const auto& e : graph.edges) {
    ++d[static_cast<std::size_t>(e.u)];
    ++d[static_cast<std::size_t>(e.v)];
  }
  return d;
}

WeightedGraph relabel(const WeightedGraph& graph, std::span<const int> new_to_old) {
  const auto n = static_cast<std::size_t>(graph.n_vertices);
  if (new_to_old.size() != n) throw std::invalid_argument("relabel permutation has the wrong length");
  std::vector<int> old_to_new(n, -1);
  for (std::size_t k = 0; k < n; ++k) {
    const int old = new_to_old[k];
    if (old < 0 || static_cast<std::size_t>(old) >= n || old_to_new[static_cast<std::size_t>(old)] != -1) {
      throw std::invalid_argument("relabel map is not a permutation");
    }
    old_to_new[static_cast<std::size_t>(old)] = static_cast<int>(k);
  }
  std::vector<Edge> edges;
  edges.reserve(graph.edges.size());
  for (const auto& e : graph.edges) {
    edges.push_back(ordered(old_to_new[static_cast<std::size_t>(e.u)], old_to_new[static_cast<std::size_t>(e.v)],
                            e.weight));
  }
  return make_graph(graph.n_vertices, std::move(edges), graph.ensemble, graph.seed);
}

void write_graph(std::ostream& out, const WeightedGraph& graph) {
  out << "n " << graph.n_vertices << ' ' << to_string(graph.ensemble) << ' ' << graph.seed << '\n';
  for (const auto& e : graph.edges) out << e.u << ' ' << e.v << ' ' << format_real(e.weight) << '\n';
}

WeightedGraph read_graph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("graph file is empty");
  std::istringstream header(line);
  std::string tag;
  std::string ensemble;
  int n = 0;
  std::uint64_t seed = 0;
  if (!(header >> tag >> n >> ensemble >> seed) || tag != "n") {
    throw std::invalid_argument("graph header must read 'n <n_vertices> <ensemble> <seed>'");
  }
  std::vector<Edge> edges;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    Edge e;
    if (!(row >> e.u >> e.v >> e.weight)) {
      throw std::invalid_argument("malformed edge on line " + std::to_string(line_no));
    }
    edges.push_back(e);
  }
  return make_graph(n, std::move(edges), parse_ensemble(ensemble), seed);
}

void save_graph(const std::filesystem::path& path, const WeightedGraph& graph) {
  std::ostringstream out;
  write_graph(out, graph);
  write_file_atomic(path, out.str());
}

WeightedGraph load_graph(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  return read_graph(in);
}

std::string bitstring_to_string(Bitstring z, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int j = 0; j < n; ++j) {
    if ((z >> j) & 1U) s[static_cast<std::size_t>(j)] = '1';
  }
  return s;
}

}  // namespace vqco
