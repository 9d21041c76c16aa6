#include <gtest/gtest.h>

#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "bhs/graph.hpp"

using namespace bhs;

namespace {

// Independent connectivity oracle: BFS over the port-explicit edge list.
bool connected_without(const Footprint& fp, std::optional<EdgeId> skip) {
  const int n = fp.node_count();
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : fp.ported_edges()) {
    if (skip && EdgeId::of(e.u, e.v) == *skip) continue;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<bool> seen(n, false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  int count = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = true;
        ++count;
        q.push(u);
      }
  }
  return count == n;
}

std::vector<Footprint> sample_graphs() {
  std::vector<Footprint> out{make_ring(3), make_ring(7), make_path(2), make_path(6), make_star(4),
                             make_torus(3, 3), make_torus(3, 4), make_complete(5)};
  std::mt19937 rng(99);
  for (int i = 0; i < 40; ++i) {
    const int n = 2 + static_cast<int>(rng() % 8);
    const int max_m = n * (n - 1) / 2;
    const int m = n - 1 + static_cast<int>(rng() % (max_m - n + 2));
    out.push_back(make_random_connected(n, m, rng()));
  }
  return out;
}

}  // namespace

TEST(Degree, RingNode) { EXPECT_EQ(make_ring(5).degree(2), 2); }

TEST(Degree, StarCentre) { EXPECT_EQ(make_star(4).degree(0), 4); }

TEST(Degree, RandomGraphMatchesAdjacencyRecount) {
  const Footprint fp = make_random_connected(6, 9, 7);
  std::vector<int> count(6, 0);
  for (const auto& e : fp.ported_edges()) {
    ++count[e.u];
    ++count[e.v];
  }
  for (int v = 0; v < 6; ++v) EXPECT_EQ(fp.degree(v), count[v]) << "node " << v;
}

TEST(Degree, UnknownNodeThrows) { EXPECT_THROW(make_ring(4).degree(4), GraphError); }

TEST(NeighborViaPort, RingClockwise) {
  const HalfEdge h = make_ring(4).neighbor_via_port(0, 0);
  EXPECT_EQ(h.neighbor, 1);
  EXPECT_EQ(h.neighbor_port, 1);
}

TEST(NeighborViaPort, StarCentre) {
  const HalfEdge h = make_star(4).neighbor_via_port(0, 3);
  EXPECT_EQ(h.neighbor, 4);
  EXPECT_EQ(h.neighbor_port, 0);
}

TEST(NeighborViaPort, PortOutOfRangeThrows) {
  EXPECT_THROW(make_ring(4).neighbor_via_port(0, 2), GraphError);
  EXPECT_THROW(make_ring(4).neighbor_via_port(0, -1), GraphError);
}

TEST(GraphProperties, PortsAreBijectiveAndSymmetric) {
  for (const auto& fp : sample_graphs()) {
    for (NodeId v = 0; v < fp.node_count(); ++v) {
      std::set<NodeId> nbrs;
      for (Port p = 0; p < fp.degree(v); ++p) {
        const HalfEdge h = fp.neighbor_via_port(v, p);
        ASSERT_NE(h.neighbor, v) << "self-loop";
        nbrs.insert(h.neighbor);
        const HalfEdge back = fp.neighbor_via_port(h.neighbor, h.neighbor_port);
        EXPECT_EQ(back.neighbor, v);
        EXPECT_EQ(back.neighbor_port, p);
      }
      EXPECT_EQ(static_cast<int>(nbrs.size()), fp.degree(v)) << "multi-edge at " << v;
    }
    EXPECT_TRUE(connected_without(fp, std::nullopt));
  }
}

TEST(GraphProperties, SnapshotOkIffNotBridge) {
  for (const auto& fp : sample_graphs()) {
    const auto bridges = fp.bridges();
    for (const auto& e : fp.edges()) {
      const bool oracle = connected_without(fp, e);
      EXPECT_EQ(validate_snapshot(fp, e).ok, oracle) << to_string(e);
      EXPECT_EQ(std::binary_search(bridges.begin(), bridges.end(), e), !oracle) << to_string(e);
    }
  }
}

TEST(ValidateSnapshot, PathBridgeReportsComponent) {
  const auto r = validate_snapshot(make_path(3), EdgeId::of(0, 1));
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.component, std::vector<NodeId>{0});
}

TEST(ValidateSnapshot, CycleMinusAnyEdgeIsOk) {
  const Footprint fp = make_ring(4);
  for (const auto& e : fp.edges()) EXPECT_TRUE(validate_snapshot(fp, e).ok);
}

TEST(ValidateSnapshot, NoMissingEdgeIsOk) {
  for (const auto& fp : sample_graphs()) EXPECT_TRUE(validate_snapshot(fp, std::nullopt).ok);
}

TEST(Generate, RingThreeIsTriangle) {
  const Footprint fp = generate("ring:3");
  EXPECT_EQ(fp.edge_count(), 3);
  for (NodeId v = 0; v < 3; ++v) EXPECT_EQ(fp.degree(v), 2);
}

TEST(Generate, RandomIsDeterministic) {
  EXPECT_EQ(generate("random:6,9,1"), generate("random:6,9,1"));
  EXPECT_EQ(generate("random:6,9,1").edge_count(), 9);
}

TEST(Generate, PathTwoIsSingleEdge) {
  const Footprint fp = generate("path:2");
  EXPECT_EQ(fp.node_count(), 2);
  EXPECT_EQ(fp.edge_count(), 1);
}

TEST(Generate, InfeasibleParametersThrow) {
  EXPECT_THROW(generate("random:4,2,1"), GraphError);
  EXPECT_THROW(generate("random:4,7,1"), GraphError);
  EXPECT_THROW(generate("blob:3"), GraphError);
}

TEST(Generate, TorusAndCompleteShapes) {
  const Footprint t = generate("torus:3x3");
  EXPECT_EQ(t.node_count(), 9);
  EXPECT_EQ(t.edge_count(), 18);
  EXPECT_EQ(generate("complete:4").edge_count(), 6);
}

TEST(FromEdges, RejectsBrokenLabelings) {
  // Port 1 used twice at node 0.
  EXPECT_THROW(Footprint::from_edges(3, {{0, 1, 1, 0}, {0, 2, 1, 0}}), GraphError);
  // Disconnected.
  EXPECT_THROW(Footprint::from_edges(4, {{0, 1, 0, 0}, {2, 3, 0, 0}}), GraphError);
  // Multi-edge.
  EXPECT_THROW(Footprint::from_edges(2, {{0, 1, 0, 0}, {0, 1, 1, 1}}), GraphError);
}

TEST(GraphFile, RoundTripIsBitExact) {
  for (const auto& fp : sample_graphs()) {
    std::ostringstream a;
    write_graph(a, fp);
    std::istringstream in(a.str());
    const Footprint back = read_graph(in);
    EXPECT_EQ(back, fp);
    std::ostringstream b;
    write_graph(b, back);
    EXPECT_EQ(a.str(), b.str());
  }
}

TEST(GraphFile, MalformedInputThrows) {
  std::istringstream in("3 2\n0 1 0 0\n");
  EXPECT_THROW(read_graph(in), GraphError);
}
