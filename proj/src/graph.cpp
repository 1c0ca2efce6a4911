#include "maghom/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>

namespace maghom {

Graph::Graph(std::size_t vertex_count, std::span<const Edge> edges) : adjacency_(vertex_count) {
  edges_.reserve(edges.size());
  for (const Edge& raw : edges) {
    if (raw.u == raw.v) throw GraphError("self-loop at vertex " + std::to_string(raw.u));
    if (raw.u >= vertex_count || raw.v >= vertex_count) {
      throw GraphError("edge endpoint out of range: " + std::to_string(raw.u) + " " + std::to_string(raw.v));
    }
    edges_.push_back(Edge::make(raw.u, raw.v));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (const Edge& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

namespace {

std::vector<Edge> to_edges(std::initializer_list<std::pair<VertexId, VertexId>> list) {
  std::vector<Edge> out;
  out.reserve(list.size());
  for (auto [a, b] : list) out.push_back(Edge{a, b});
  return out;
}

}  // namespace

Graph::Graph(std::size_t vertex_count, std::initializer_list<std::pair<VertexId, VertexId>> edges)
    : Graph(vertex_count, to_edges(edges)) {}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (const auto& nbrs : adjacency_) best = std::max(best, nbrs.size());
  return best;
}

bool Graph::has_edge(VertexId a, VertexId b) const {
  if (a >= adjacency_.size() || b >= adjacency_.size()) return false;
  const auto& nbrs = adjacency_[a];
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

std::optional<std::size_t> Graph::edge_index(VertexId a, VertexId b) const {
  if (a == b) return std::nullopt;
  Edge e = Edge::make(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

Graph Graph::induced(std::span<const VertexId> vertices) const {
  std::vector<std::uint32_t> relabel(adjacency_.size(), UINT32_MAX);
  for (std::size_t i = 0; i < vertices.size(); ++i) relabel.at(vertices[i]) = static_cast<std::uint32_t>(i);
  std::vector<Edge> sub;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (VertexId w : adjacency_[vertices[i]]) {
      auto j = relabel[w];
      if (j != UINT32_MAX && i < j) sub.push_back(Edge{static_cast<VertexId>(i), j});
    }
  }
  return Graph(vertices.size(), sub);
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back(Edge{static_cast<VertexId>(i), static_cast<VertexId>(i + 1)});
  return Graph(n, e);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw GraphError("cycle graph needs at least 3 vertices");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back(Edge::make(static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n)));
  return Graph(n, e);
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.push_back(Edge{static_cast<VertexId>(i), static_cast<VertexId>(j)});
  return Graph(n, e);
}

Graph petersen_graph() {
  std::vector<Edge> e;
  for (VertexId i = 0; i < 5; ++i) {
    e.push_back(Edge::make(i, (i + 1) % 5));          // outer 5-cycle
    e.push_back(Edge::make(i, i + 5));                // spokes
    e.push_back(Edge::make(i + 5, (i + 2) % 5 + 5));  // inner pentagram
  }
  return Graph(10, e);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> e = a.edges();
  auto shift = static_cast<VertexId>(a.vertex_count());
  for (const Edge& x : b.edges()) e.push_back(Edge{x.u + shift, x.v + shift});
  return Graph(a.vertex_count() + b.vertex_count(), e);
}

namespace {

std::optional<std::uint64_t> parse_uint(std::string_view tok) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  constexpr std::uint64_t kMaxVertices = 1U << 26;
  std::vector<Edge> edges;
  std::uint64_t header = 0;
  std::uint64_t max_id_plus_one = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks.size() != 2) throw ParseError(line_no, "expected two fields, got " + std::to_string(toks.size()));
    if (toks[0] == "n") {
      auto v = parse_uint(toks[1]);
      if (!v || *v > kMaxVertices) throw ParseError(line_no, "bad vertex count '" + std::string(toks[1]) + "'");
      header = *v;
      continue;
    }
    auto a = parse_uint(toks[0]);
    auto b = parse_uint(toks[1]);
    if (!a || !b) throw ParseError(line_no, "expected two non-negative vertex ids");
    if (*a >= kMaxVertices || *b >= kMaxVertices) throw ParseError(line_no, "vertex id too large");
    if (*a == *b) throw GraphError("line " + std::to_string(line_no) + ": self-loop at vertex " + std::to_string(*a));
    edges.push_back(Edge::make(static_cast<VertexId>(*a), static_cast<VertexId>(*b)));
    max_id_plus_one = std::max({max_id_plus_one, *a + 1, *b + 1});
  }
  std::uint64_t n = std::max(header, max_id_plus_one);
  if (n == 0) throw GraphError("graph has no vertices");
  return Graph(static_cast<std::size_t>(n), edges);
}

Graph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string write_graph(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.vertex_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

std::vector<std::optional<std::uint32_t>> bfs_distances(const Graph& g, VertexId source) {
  std::vector<std::optional<std::uint32_t>> dist(g.vertex_count());
  std::vector<VertexId> queue{source};
  dist.at(source) = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId v = queue[head];
    for (VertexId w : g.neighbors(v)) {
      if (!dist[w]) {
        dist[w] = *dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

DistanceMatrix::DistanceMatrix(const Graph& g) : n_(g.vertex_count()), d_(n_ * n_, kUnreachable) {
  std::vector<VertexId> queue;
  queue.reserve(n_);
  for (std::size_t s = 0; s < n_; ++s) {
    std::uint32_t* row = d_.data() + s * n_;
    row[s] = 0;
    queue.assign(1, static_cast<VertexId>(s));
    for (std::size_t head = 0; head < queue.size(); ++head) {
      VertexId v = queue[head];
      for (VertexId w : g.neighbors(v)) {
        if (row[w] == kUnreachable) {
          row[w] = row[v] + 1;
          queue.push_back(w);
        }
      }
    }
  }
}

std::uint32_t DistanceMatrix::max_finite() const noexcept {
  std::uint32_t best = 0;
  for (auto d : d_)
    if (d != kUnreachable) best = std::max(best, d);
  return best;
}

DistanceMatrix all_pairs_distances(const Graph& g) { return DistanceMatrix(g); }

ComponentDecomposition components(const Graph& g) {
  ComponentDecomposition out;
  const std::size_t n = g.vertex_count();
  out.component_of.assign(n, UINT32_MAX);
  for (VertexId s = 0; s < n; ++s) {
    if (out.component_of[s] != UINT32_MAX) continue;
    auto idx = static_cast<std::uint32_t>(out.components.size());
    Component comp;
    comp.id = s;
    comp.vertices.push_back(s);
    out.component_of[s] = idx;
    std::size_t degree_sum = 0;
    for (std::size_t head = 0; head < comp.vertices.size(); ++head) {
      VertexId v = comp.vertices[head];
      degree_sum += g.degree(v);
      for (VertexId w : g.neighbors(v)) {
        if (out.component_of[w] == UINT32_MAX) {
          out.component_of[w] = idx;
          comp.vertices.push_back(w);
        }
      }
    }
    std::sort(comp.vertices.begin(), comp.vertices.end());
    comp.edge_count = degree_sum / 2;
    out.components.push_back(std::move(comp));
  }
  return out;
}

Extended girth_edge_bounded(const Graph& g, Edge e, std::uint32_t limit) {
  if (!g.has_edge(e.u, e.v)) {
    throw std::invalid_argument("not an edge: " + std::to_string(e.u) + " " + std::to_string(e.v));
  }
  // BFS from u in G - e; the cycle closes when v is reached.
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> dist(n, UINT32_MAX);
  std::vector<VertexId> queue{e.u};
  dist[e.u] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId a = queue[head];
    if (dist[a] + 2 > limit) break;  // any further cycle would exceed the limit
    for (VertexId b : g.neighbors(a)) {
      if (a == e.u && b == e.v) continue;
      if (dist[b] != UINT32_MAX) continue;
      dist[b] = dist[a] + 1;
      if (b == e.v) return Extended(dist[b] + 1);
      queue.push_back(b);
    }
  }
  return kInfinity;
}

Extended girth_edge(const Graph& g, Edge e) { return girth_edge_bounded(g, e, UINT32_MAX); }

Extended girth_vertex(const Graph& g, VertexId x) {
  if (x >= g.vertex_count()) throw std::out_of_range("vertex out of range");
  Extended best = kInfinity;
  for (VertexId y : g.neighbors(x)) best = std::min(best, girth_edge(g, Edge::make(x, y)));
  return best;
}

Extended girth(const Graph& g) {
  Extended best = kInfinity;
  for (const Edge& e : g.edges()) {
    std::uint32_t limit = best.is_finite() ? static_cast<std::uint32_t>(best.value()) - 1 : UINT32_MAX;
    if (best.is_finite() && best.value() == 3) break;
    best = std::min(best, girth_edge_bounded(g, e, limit));
  }
  return best;
}

GirthReport girth_report(const Graph& g) {
  GirthReport r;
  r.per_vertex.assign(g.vertex_count(), kInfinity);
  r.per_edge.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    Extended ge = girth_edge(g, e);
    r.per_edge.push_back(ge);
    r.per_vertex[e.u] = std::min(r.per_vertex[e.u], ge);
    r.per_vertex[e.v] = std::min(r.per_vertex[e.v], ge);
    r.global = std::min(r.global, ge);
  }
  return r;
}

std::size_t circuit_rank(const Graph& g) {
  return g.edge_count() + components(g).count() - g.vertex_count();
}

std::map<unsigned, std::uint64_t> count_cycles_up_to(const Graph& g, unsigned max_length) {
  if (max_length < 3) throw std::invalid_argument("count_cycles_up_to needs max_length >= 3");
  std::vector<std::uint64_t> directed(max_length + 1, 0);
  const std::size_t n = g.vertex_count();
  std::vector<char> on_path(n, 0);
  struct Frame {
    VertexId v;
    std::size_t next;
  };
  std::vector<Frame> stack;
  // Each cycle is rooted at its smallest vertex and found once per direction.
  for (VertexId root = 0; root < n; ++root) {
    if (g.degree(root) < 2) continue;
    stack.assign(1, Frame{root, 0});
    on_path[root] = 1;
    while (!stack.empty()) {
      Frame& top = stack.back();
      auto nbrs = g.neighbors(top.v);
      if (top.next == nbrs.size()) {
        on_path[top.v] = 0;
        stack.pop_back();
        continue;
      }
      VertexId w = nbrs[top.next++];
      const std::size_t len = stack.size();  // vertices on the path
      if (w == root) {
        if (len >= 3) ++directed[len];
        continue;
      }
      if (w < root || on_path[w] || len >= max_length) continue;
      on_path[w] = 1;
      stack.push_back(Frame{w, 0});
    }
  }
  std::map<unsigned, std::uint64_t> out;
  for (unsigned i = 3; i <= max_length; ++i) out[i] = directed[i] / 2;
  return out;
}

PawfulResult is_pawful(const Graph& g) {
  PawfulResult r;
  const std::size_t n = g.vertex_count();
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> adj(n * words, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u * words + e.v / 64] |= std::uint64_t{1} << (e.v % 64);
    adj[e.v * words + e.u / 64] |= std::uint64_t{1} << (e.u % 64);
  }
  auto row = [&](VertexId v) { return std::span<const std::uint64_t>(adj.data() + v * words, words); };
  // Diameter <= 2: every non-adjacent pair has a common neighbour.
  for (VertexId x = 0; x < n; ++x) {
    for (VertexId y = x + 1; y < n; ++y) {
      if (g.has_edge(x, y)) continue;
      auto rx = row(x), ry = row(y);
      bool common = false;
      for (std::size_t w = 0; w < words && !common; ++w) common = (rx[w] & ry[w]) != 0;
      if (!common) {
        r.diameter_witness = std::array<VertexId, 2>{x, y};
        return r;
      }
    }
  }
  // With diameter <= 2, distance 2 means "distinct and non-adjacent".
  std::vector<std::uint64_t> candidates(words);
  for (const Edge& e : g.edges()) {
    auto rx = row(e.u), rz = row(e.v);
    for (std::size_t w = 0; w < words; ++w) candidates[w] = ~(rx[w] | rz[w]);
    candidates[e.u / 64] &= ~(std::uint64_t{1} << (e.u % 64));
    candidates[e.v / 64] &= ~(std::uint64_t{1} << (e.v % 64));
    if (n % 64 != 0) candidates[words - 1] &= (std::uint64_t{1} << (n % 64)) - 1;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t bits = candidates[w];
      while (bits != 0) {
        auto y = static_cast<VertexId>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
        auto ry = row(y);
        bool common = false;
        for (std::size_t k = 0; k < words && !common; ++k) common = (rx[k] & ry[k] & rz[k]) != 0;
        if (!common) {
          r.triple_witness = std::array<VertexId, 3>{e.u, y, e.v};
          return r;
        }
      }
    }
  }
  r.pawful = true;
  return r;
}

bool is_complete(const Graph& g) {
  const std::size_t n = g.vertex_count();
  return g.edge_count() == n * (n - 1) / 2;
}

std::size_t tree_vertex_count(const Graph& g) {
  std::size_t total = 0;
  for (const Component& c : components(g).components)
    if (c.circuit_rank() == 0) total += c.vertices.size();
  return total;
}

}  // namespace maghom
