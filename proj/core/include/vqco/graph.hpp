#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vqco {

/// Assignment of all vertices packed into an integer: bit j is vertex j.
/// The same little-endian layout indexes statevector amplitudes.
using Bitstring = std::uint64_t;

enum class Ensemble { ThreeRegular, NWS, SK, Custom };

/// Physics: C(z) = sum w_ij z_i z_j with bit 0 -> +1 and bit 1 -> -1.
/// ComputerScience: C(z) = -sum w_ij [bit_i != bit_j].
enum class Convention { Physics, ComputerScience };

std::string_view to_string(Ensemble e);
std::string_view to_string(Convention c);
Ensemble parse_ensemble(std::string_view name);
Convention parse_convention(std::string_view name);

/// Physics for SK, ComputerScience for everything else.
Convention default_convention(Ensemble e);

struct Edge {
  int u = 0;
  int v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct WeightedGraph {
  int n_vertices = 0;
  std::vector<Edge> edges;  // u < v, unique pairs, sorted
  Ensemble ensemble = Ensemble::Custom;
  std::uint64_t seed = 0;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;
};

/// Checks index range, u < v, uniqueness and the ensemble-specific weight and
/// degree rules. Throws std::invalid_argument on the first violation.
void validate(const WeightedGraph& graph);

/// Sorts edges by (u, v) and checks the result with validate().
WeightedGraph make_graph(int n_vertices, std::vector<Edge> edges,
                         Ensemble ensemble = Ensemble::Custom, std::uint64_t seed = 0);

/// Random simple 3-regular graph with unit weights, via the pairing model with
/// rejection of loops and multi-edges. Requires n even and n >= 4.
WeightedGraph gen_three_regular(int n, std::uint64_t seed);

/// Newman-Watts-Strogatz small world: ring lattice joining each vertex to its
/// k/2 neighbours on either side, then for every ring edge (u, v) a shortcut
/// (u, w) to a random new neighbour w with probability p. Weights are uniform
/// on (0, 1]. Requires k even and n > k.
WeightedGraph gen_nws(int n, int k, double p, std::uint64_t seed);

/// Sherrington-Kirkpatrick instance: complete graph, weights +1 or -1 with
/// equal probability.
WeightedGraph gen_sk(int n, std::uint64_t seed);

/// Complete graph with weights uniform on (0, 1]; tagged Custom.
WeightedGraph gen_complete_uniform(int n, std::uint64_t seed);

double cut_cost(const WeightedGraph& graph, Bitstring z, Convention convention);

/// Same as above for an explicit 0/1 vector; throws on length mismatch.
double cut_cost(const WeightedGraph& graph, std::span<const std::uint8_t> bits,
                Convention convention);

struct Optimum {
  double c_opt = 0.0;
  std::vector<Bitstring> optimal_set;  // ascending
};

inline constexpr int kMaxEnumerationVertices = 30;
inline constexpr double kTieTolerance = 1e-12;

/// Exhaustive minimum of cut_cost over all 2^n assignments. Values within
/// kTieTolerance of the minimum count as optimal.
Optimum brute_force_optimum(const WeightedGraph& graph, Convention convention);

struct VertexWeightProfile {
  std::vector<double> rho;  // rho[j] = sum of |w| over edges touching j
};

VertexWeightProfile vertex_profile(const WeightedGraph& graph);

std::vector<int> degrees(const WeightedGraph& graph);

/// Renames vertices: vertex `new_to_old[k]` of `graph` becomes vertex k.
WeightedGraph relabel(const WeightedGraph& graph, std::span<const int> new_to_old);

/// Text format:
///   n <n_vertices> <ensemble_tag> <seed>
///   u v w        (one line per edge, w with 17 significant digits)
void write_graph(std::ostream& out, const WeightedGraph& graph);
WeightedGraph read_graph(std::istream& in);
void save_graph(const std::filesystem::path& path, const WeightedGraph& graph);
WeightedGraph load_graph(const std::filesystem::path& path);

/// "0101" style rendering, character k is vertex k.
std::string bitstring_to_string(Bitstring z, int n);

}  // namespace vqco
