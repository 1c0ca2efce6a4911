#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "maghom/extended.hpp"

namespace maghom {

using VertexId = std::uint32_t;

/// Unordered vertex pair stored with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  static Edge make(VertexId a, VertexId b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Malformed edge-list input; carries the 1-based line number (0 when not tied to a line).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Structurally invalid graph (self-loop, out-of-range endpoint, empty vertex set).
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite simple undirected graph on vertices 0..n-1. Immutable.
class Graph {
 public:
  Graph() = default;
  /// Duplicate edges are collapsed; self-loops and out-of-range endpoints throw GraphError.
  Graph(std::size_t vertex_count, std::span<const Edge> edges);
  Graph(std::size_t vertex_count, std::initializer_list<std::pair<VertexId, VertexId>> edges);

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  /// Sorted lexicographically.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Sorted ascending.
  std::span<const VertexId> neighbors(VertexId x) const { return adjacency_.at(x); }
  std::size_t degree(VertexId x) const { return adjacency_.at(x).size(); }
  std::size_t max_degree() const noexcept;
  bool has_edge(VertexId a, VertexId b) const;
  /// Position of the edge in edges(), if present.
  std::optional<std::size_t> edge_index(VertexId a, VertexId b) const;

  /// Subgraph induced on `vertices`, relabelled so vertices[i] becomes i.
  Graph induced(std::span<const VertexId> vertices) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<VertexId>> adjacency_;
  std::vector<Edge> edges_;
};

// Standard small graphs used throughout tests and examples.
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph petersen_graph();
Graph disjoint_union(const Graph& a, const Graph& b);

/// Parses the edge-list format: lines "u v", optional "n <count>" header,
/// blank lines and '#' comments ignored.
Graph parse_graph(std::string_view text);
Graph read_graph_file(const std::filesystem::path& path);
/// Deterministic writer: "n <count>" header then edges in lexicographic order.
std::string write_graph(const Graph& g);

/// All-pairs hop distances with Infinity across components.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(const Graph& g);

  std::size_t size() const noexcept { return n_; }
  Extended at(VertexId x, VertexId y) const {
    auto d = raw(x, y);
    return d == kUnreachable ? kInfinity : Extended(d);
  }
  bool finite(VertexId x, VertexId y) const noexcept { return raw(x, y) != kUnreachable; }
  /// Hop count; precondition finite(x, y).
  std::uint32_t hops(VertexId x, VertexId y) const noexcept { return raw(x, y); }
  /// Largest finite distance within a component (0 for edgeless graphs).
  std::uint32_t max_finite() const noexcept;

 private:
  static constexpr std::uint32_t kUnreachable = UINT32_MAX;
  std::uint32_t raw(VertexId x, VertexId y) const noexcept { return d_[static_cast<std::size_t>(x) * n_ + y]; }

  std::size_t n_ = 0;
  std::vector<std::uint32_t> d_;
};

DistanceMatrix all_pairs_distances(const Graph& g);

/// Single-source BFS hop counts; nullopt marks unreachable vertices.
std::vector<std::optional<std::uint32_t>> bfs_distances(const Graph& g, VertexId source);

struct Component {
  VertexId id = 0;                ///< smallest vertex of the component
  std::vector<VertexId> vertices;  ///< ascending
  std::size_t edge_count = 0;

  std::size_t circuit_rank() const noexcept { return edge_count + 1 - vertices.size(); }
};

struct ComponentDecomposition {
  std::vector<Component> components;    ///< ordered by id
  std::vector<std::uint32_t> component_of;  ///< vertex -> index into components

  std::size_t count() const noexcept { return components.size(); }
};

ComponentDecomposition components(const Graph& g);

/// Shortest cycle through edge {u,v}: 1 + d_{G-e}(u,v). Throws std::invalid_argument
/// if the pair is not an edge.
Extended girth_edge(const Graph& g, Edge e);
/// As girth_edge, but stops searching once the cycle would exceed `limit`
/// (returns Infinity in that case).
Extended girth_edge_bounded(const Graph& g, Edge e, std::uint32_t limit);
Extended girth_vertex(const Graph& g, VertexId x);
Extended girth(const Graph& g);

struct GirthReport {
  Extended global = kInfinity;
  std::vector<Extended> per_vertex;
  std::vector<Extended> per_edge;  ///< aligned with Graph::edges()
};

GirthReport girth_report(const Graph& g);

/// #E - #V + number of components.
std::size_t circuit_rank(const Graph& g);

/// Number of (unlabelled) i-cycles for 3 <= i <= max_length; keys cover the whole range.
std::map<unsigned, std::uint64_t> count_cycles_up_to(const Graph& g, unsigned max_length);

struct PawfulResult {
  bool pawful = false;
  /// Pair at distance > 2 (or disconnected) when the diameter condition fails.
  std::optional<std::array<VertexId, 2>> diameter_witness;
  /// (x, y, z) with d(x,y)=d(y,z)=2, d(z,x)=1 and no common neighbour.
  std::optional<std::array<VertexId, 3>> triple_witness;
};

PawfulResult is_pawful(const Graph& g);

bool is_complete(const Graph& g);

/// Vertices lying in tree components (isolated vertices included).
std::size_t tree_vertex_count(const Graph& g);

}  // namespace maghom
