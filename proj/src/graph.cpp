#include "bhs/graph.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

namespace bhs {

std::string to_string(const EdgeId& e) {
  return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

Footprint Footprint::from_edges(int node_count, const std::vector<PortedEdge>& edges) {
  if (node_count <= 0) throw GraphError("graph needs at least one node");
  Footprint fp;
  std::vector<std::vector<std::optional<HalfEdge>>> slots(node_count);
  std::vector<int> deg(node_count, 0);
  std::set<EdgeId> seen;
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= node_count || e.v < 0 || e.v >= node_count)
      throw GraphError("edge endpoint out of range");
    if (e.u == e.v) throw GraphError("self-loop at node " + std::to_string(e.u));
    if (!seen.insert(EdgeId::of(e.u, e.v)).second)
      throw GraphError("multi-edge " + to_string(EdgeId::of(e.u, e.v)));
    ++deg[e.u];
    ++deg[e.v];
  }
  for (int v = 0; v < node_count; ++v) slots[v].resize(deg[v]);
  auto place = [&](NodeId at, Port p, HalfEdge h) {
    if (p < 0 || p >= deg[at])
      throw GraphError("port " + std::to_string(p) + " out of range at node " + std::to_string(at));
    if (slots[at][p]) throw GraphError("duplicate port " + std::to_string(p) + " at node " + std::to_string(at));
    slots[at][p] = h;
  };
  for (const auto& e : edges) {
    place(e.u, e.pu, HalfEdge{e.v, e.pv});
    place(e.v, e.pv, HalfEdge{e.u, e.pu});
  }
  fp.adj_.resize(node_count);
  for (int v = 0; v < node_count; ++v) {
    for (auto& s : slots[v]) fp.adj_[v].push_back(*s);
  }
  fp.edge_count_ = static_cast<int>(edges.size());

  // Connectivity.
  std::vector<char> seen_node(node_count, 0);
  std::vector<NodeId> stack{0};
  seen_node[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (const auto& h : fp.adj_[v]) {
      if (!seen_node[h.neighbor]) {
        seen_node[h.neighbor] = 1;
        ++reached;
        stack.push_back(h.neighbor);
      }
    }
  }
  if (reached != node_count) throw GraphError("graph is not connected");
  return fp;
}

void Footprint::check_node(NodeId v) const {
  if (v < 0 || v >= node_count()) throw GraphError("unknown node " + std::to_string(v));
}

int Footprint::degree(NodeId v) const {
  check_node(v);
  return static_cast<int>(adj_[v].size());
}

int Footprint::max_degree() const {
  int d = 0;
  for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
  return d;
}

HalfEdge Footprint::neighbor_via_port(NodeId v, Port p) const {
  check_node(v);
  if (p < 0 || p >= static_cast<int>(adj_[v].size()))
    throw GraphError("port " + std::to_string(p) + " out of range at node " + std::to_string(v));
  return adj_[v][p];
}

Port Footprint::port_to(NodeId from, NodeId to) const {
  check_node(from);
  const auto& a = adj_[from];
  for (std::size_t p = 0; p < a.size(); ++p) {
    if (a[p].neighbor == to) return static_cast<Port>(p);
  }
  return kNoPort;
}

std::vector<EdgeId> Footprint::edges() const {
  std::vector<EdgeId> out;
  for (NodeId v = 0; v < node_count(); ++v) {
    for (const auto& h : adj_[v]) {
      if (v < h.neighbor) out.push_back({v, h.neighbor});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Footprint::PortedEdge> Footprint::ported_edges() const {
  std::vector<PortedEdge> out;
  for (const auto& e : edges()) {
    out.push_back({e.u, e.v, port_to(e.u, e.v), port_to(e.v, e.u)});
  }
  return out;
}

std::vector<EdgeId> Footprint::bridges() const {
  // Tarjan low-link, iterative.
  const int n = node_count();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<EdgeId> out;
  int timer = 0;
  struct Frame {
    NodeId v;
    NodeId parent;
    std::size_t next;
  };
  std::vector<Frame> stack;
  disc[0] = low[0] = timer++;
  stack.push_back({0, -1, 0});
  while (!stack.empty()) {
    auto& f = stack.back();
    if (f.next < adj_[f.v].size()) {
      NodeId w = adj_[f.v][f.next++].neighbor;
      if (w == f.parent) continue;
      if (disc[w] == -1) {
        disc[w] = low[w] = timer++;
        stack.push_back({w, f.v, 0});
      } else {
        low[f.v] = std::min(low[f.v], disc[w]);
      }
    } else {
      Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        auto& up = stack.back();
        low[up.v] = std::min(low[up.v], low[done.v]);
        if (low[done.v] > disc[up.v]) out.push_back(EdgeId::of(up.v, done.v));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SnapshotCheck validate_snapshot(const Footprint& fp, const std::optional<EdgeId>& missing) {
  SnapshotCheck res;
  if (!missing) return res;
  if (!fp.has_edge(missing->u, missing->v)) {
    res.ok = false;
    return res;
  }
  const int n = fp.node_count();
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{missing->u};
  seen[missing->u] = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (Port p = 0; p < fp.degree(v); ++p) {
      NodeId w = fp.neighbor_via_port(v, p).neighbor;
      if (EdgeId::of(v, w) == *missing || seen[w]) continue;
      seen[w] = 1;
      stack.push_back(w);
    }
  }
  if (seen[missing->v]) return res;
  res.ok = false;
  for (NodeId v = 0; v < n; ++v)
    if (seen[v]) res.component.push_back(v);
  return res;
}

namespace {

// Adds edges assigning the next free port at each endpoint.
class Builder {
 public:
  explicit Builder(int n) : n_(n), next_(n, 0) {}
  void add(NodeId u, NodeId v) { edges_.push_back({u, v, next_[u]++, next_[v]++}); }
  Footprint build() const { return Footprint::from_edges(n_, edges_); }

 private:
  int n_;
  std::vector<Port> next_;
  std::vector<Footprint::PortedEdge> edges_;
};

}  // namespace

Footprint make_ring(int n) {
  if (n < 3) throw GraphError("ring needs n >= 3");
  std::vector<Footprint::PortedEdge> es;
  for (int v = 0; v < n; ++v) es.push_back({v, (v + 1) % n, 0, 1});
  return Footprint::from_edges(n, es);
}

Footprint make_path(int n) {
  if (n < 2) throw GraphError("path needs n >= 2");
  std::vector<Footprint::PortedEdge> es;
  for (int v = 0; v + 1 < n; ++v) {
    Port pv = 0;
    Port pw = (v + 1 == n - 1) ? 0 : 1;
    es.push_back({v, v + 1, pv, pw});
  }
  return Footprint::from_edges(n, es);
}

Footprint make_star(int leaves) {
  if (leaves < 1) throw GraphError("star needs at least one leaf");
  std::vector<Footprint::PortedEdge> es;
  for (int k = 0; k < leaves; ++k) es.push_back({0, k + 1, k, 0});
  return Footprint::from_edges(leaves + 1, es);
}

Footprint make_torus(int rows, int cols) {
  if (rows < 3 || cols < 3) throw GraphError("torus needs rows, cols >= 3");
  std::vector<Footprint::PortedEdge> es;
  auto id = [&](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      es.push_back({id(r, c), id(r, (c + 1) % cols), 0, 1});
      es.push_back({id(r, c), id((r + 1) % rows, c), 2, 3});
    }
  }
  return Footprint::from_edges(rows * cols, es);
}

Footprint make_complete(int n) {
  if (n < 2) throw GraphError("complete graph needs n >= 2");
  std::vector<Footprint::PortedEdge> es;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) es.push_back({u, v, v - 1, u});
  }
  return Footprint::from_edges(n, es);
}

Footprint make_random_connected(int n, int m, std::uint64_t seed) {
  if (n < 2) throw GraphError("random graph needs n >= 2");
  if (m < n - 1 || m > n * (n - 1) / 2)
    throw GraphError("infeasible edge count " + std::to_string(m) + " for n=" + std::to_string(n));
  std::mt19937_64 rng(seed);
  auto below = [&](std::uint64_t k) { return static_cast<int>(rng() % k); };
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[below(i + 1)]);
  Builder b(n);
  std::set<EdgeId> used;
  for (int i = 1; i < n; ++i) {
    NodeId u = order[i];
    NodeId v = order[below(i)];
    b.add(u, v);
    used.insert(EdgeId::of(u, v));
  }
  std::vector<EdgeId> rest;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!used.count({u, v})) rest.push_back({u, v});
  for (int k = static_cast<int>(rest.size()) - 1; k > 0; --k) std::swap(rest[k], rest[below(k + 1)]);
  for (int k = 0; k < m - (n - 1); ++k) b.add(rest[k].u, rest[k].v);
  return b.build();
}

Footprint generate(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw GraphError("bad graph spec '" + spec + "'");
  std::string kind = spec.substr(0, colon);
  std::string args = spec.substr(colon + 1);
  for (auto& ch : args)
    if (ch == ',' || ch == 'x') ch = ' ';
  std::istringstream in(args);
  std::vector<long long> nums;
  long long x;
  while (in >> x) nums.push_back(x);
  if (!in.eof()) throw GraphError("bad graph spec '" + spec + "'");
  auto need = [&](std::size_t k) {
    if (nums.size() != k) throw GraphError("bad graph spec '" + spec + "'");
  };
  if (kind == "ring") return need(1), make_ring(static_cast<int>(nums[0]));
  if (kind == "path") return need(1), make_path(static_cast<int>(nums[0]));
  if (kind == "star") return need(1), make_star(static_cast<int>(nums[0]));
  if (kind == "complete") return need(1), make_complete(static_cast<int>(nums[0]));
  if (kind == "torus") return need(2), make_torus(static_cast<int>(nums[0]), static_cast<int>(nums[1]));
  if (kind == "random") {
    need(3);
    return make_random_connected(static_cast<int>(nums[0]), static_cast<int>(nums[1]),
                                 static_cast<std::uint64_t>(nums[2]));
  }
  if (kind == "file") return load_graph_file(spec.substr(colon + 1));
  throw GraphError("unknown graph kind '" + kind + "'");
}

void write_graph(std::ostream& out, const Footprint& fp) {
  out << fp.node_count() << ' ' << fp.edge_count() << '\n';
  for (const auto& e : fp.ported_edges()) out << e.u << ' ' << e.v << ' ' << e.pu << ' ' << e.pv << '\n';
}

Footprint read_graph(std::istream& in) {
  int n = 0, m = 0;
  if (!(in >> n >> m)) throw GraphError("missing 'n m' header");
  std::vector<Footprint::PortedEdge> es(m);
  for (auto& e : es) {
    if (!(in >> e.u >> e.v >> e.pu >> e.pv)) throw GraphError("truncated edge list");
  }
  return Footprint::from_edges(n, es);
}

Footprint load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file " + path);
  return read_graph(in);
}

}  // namespace bhs
