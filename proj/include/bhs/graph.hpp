#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bhs {

using NodeId = int;
using Port = int;  // -1 means "no port"

inline constexpr Port kNoPort = -1;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical undirected edge name, u < v.
struct EdgeId {
  NodeId u = 0;
  NodeId v = 0;

  static EdgeId of(NodeId a, NodeId b) { return a < b ? EdgeId{a, b} : EdgeId{b, a}; }

  friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

std::string to_string(const EdgeId& e);

struct HalfEdge {
  NodeId neighbor = 0;
  Port neighbor_port = 0;

  friend bool operator==(const HalfEdge&, const HalfEdge&) = default;
};

/// Static, port-labeled, simple, connected graph. Immutable once built.
///
/// adjacency(v)[p] is the edge behind port p of v. Ports at each node are
/// therefore exactly 0..degree(v)-1.
class Footprint {
 public:
  Footprint() = default;

  /// Builds from a port-explicit edge list: (u, v, port at u, port at v).
  /// Throws GraphError unless the result is a connected simple graph with a
  /// bijective port labeling at every node.
  struct PortedEdge {
    NodeId u, v;
    Port pu, pv;
  };
  static Footprint from_edges(int node_count, const std::vector<PortedEdge>& edges);

  int node_count() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return edge_count_; }

  int degree(NodeId v) const;
  int max_degree() const;

  /// (neighbor, entry port at neighbor). Throws on out-of-range port.
  HalfEdge neighbor_via_port(NodeId v, Port p) const;

  /// Port at `from` leading to `to`, or kNoPort if not adjacent.
  Port port_to(NodeId from, NodeId to) const;

  bool has_edge(NodeId a, NodeId b) const { return port_to(a, b) != kNoPort; }

  EdgeId edge_via_port(NodeId v, Port p) const {
    return EdgeId::of(v, neighbor_via_port(v, p).neighbor);
  }

  /// All edges in canonical order.
  std::vector<EdgeId> edges() const;
  std::vector<PortedEdge> ported_edges() const;

  /// Bridges in canonical order.
  std::vector<EdgeId> bridges() const;

  friend bool operator==(const Footprint&, const Footprint&) = default;

 private:
  std::vector<std::vector<HalfEdge>> adj_;
  int edge_count_ = 0;

  void check_node(NodeId v) const;
};

/// Result of a connectivity check with one edge removed.
struct SnapshotCheck {
  bool ok = true;
  /// When !ok: the nodes reachable from the removed edge's smaller endpoint.
  std::vector<NodeId> component;

  explicit operator bool() const { return ok; }
};

SnapshotCheck validate_snapshot(const Footprint& fp, const std::optional<EdgeId>& missing);

// Deterministic generators. Port conventions:
//   ring   : port 0 -> (v+1) mod n (clockwise), port 1 -> (v-1) mod n
//   path   : node 0 port 0 -> 1; interior v port 0 -> v+1, port 1 -> v-1;
//            last node port 0 -> n-2
//   star   : centre 0, port k -> leaf k+1; leaves use port 0
//   torus  : node r*cols+c; port 0 right, 1 left, 2 down, 3 up (r,c >= 3)
//   complete: port order at v lists other nodes ascending
//   random_connected: random spanning tree then extra edges, ports in
//                     insertion order; mt19937_64 seeded with `seed`
Footprint make_ring(int n);
Footprint make_path(int n);
Footprint make_star(int leaves);
Footprint make_torus(int rows, int cols);
Footprint make_complete(int n);
Footprint make_random_connected(int n, int m, std::uint64_t seed);

/// Parses "ring:8", "path:5", "star:4", "torus:3x3", "complete:4",
/// "random:N,M,SEED". Throws GraphError on anything else.
Footprint generate(const std::string& spec);

// Text format: header "n m", then per edge "u v pu pv".
void write_graph(std::ostream& out, const Footprint& fp);
Footprint read_graph(std::istream& in);
Footprint load_graph_file(const std::string& path);

}  // namespace bhs
