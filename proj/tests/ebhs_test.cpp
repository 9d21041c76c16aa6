#include <gtest/gtest.h>

#include <map>

#include "bhs/ebhs.hpp"
#include "bhs/exploration.hpp"
#include "bhs/harness.hpp"

using namespace bhs;

namespace {

std::shared_ptr<const Footprint> shared(Footprint fp) { return std::make_shared<const Footprint>(std::move(fp)); }

EbhsConfig config(std::shared_ptr<const Footprint> fp, NodeId home, std::optional<Emergence> e) {
  EbhsConfig c;
  c.footprint = std::move(fp);
  c.home = home;
  c.emergence = e;
  return c;
}

bool survivor(const EbhsResult& r) { return r.outcome.dead.size() < 4; }

}  // namespace

TEST(EbhsValidate, RejectsExcludedConfigurations) {
  auto fp = shared(make_ring(4));
  EXPECT_THROW(validate_ebhs(config(fp, 0, Emergence{0, 0, 1})), std::invalid_argument);
  EXPECT_THROW(validate_ebhs(config(fp, 4, std::nullopt)), std::invalid_argument);
  EXPECT_THROW(validate_ebhs(config(fp, 0, Emergence{9, 2, 1})), std::invalid_argument);
  EXPECT_THROW(validate_ebhs(config(fp, 0, Emergence{1, 2, 8})), std::invalid_argument);
  EXPECT_NO_THROW(validate_ebhs(config(fp, 0, Emergence{0, 1, 1})));
  EXPECT_THROW(run_ebhs(config(fp, 0, Emergence{0, 0, 1})), std::invalid_argument);
}

TEST(EbhsChain, Classify) {
  EXPECT_EQ(classify(2, 2), ChainMove::backward);
  EXPECT_EQ(classify(1, 2), ChainMove::forward);
  EXPECT_EQ(sub_rounds(ChainMove::backward), 4);
  EXPECT_EQ(sub_rounds(ChainMove::forward), 7);
}

TEST(EbhsChain, BackwardMoveAfterLeadIsSwallowed) {
  // path:2, the lead pair stands on node 1 when it turns into the black hole.
  auto fp = shared(make_path(2));
  const auto r = run_ebhs(config(fp, 0, Emergence{1, 1, 1}));
  EXPECT_EQ(r.outcome.verdict, Verdict::solved);
  EXPECT_EQ(r.outcome.dead, (std::vector<AgentId>{3, 4}));
  ASSERT_EQ(r.outcome.detected.size(), 1u);
  EXPECT_EQ(r.outcome.detected[0].declarer, 1);
  EXPECT_EQ(r.outcome.detected[0].node, 0);
  EXPECT_EQ(r.declaration_tick, 2);
}

TEST(EbhsChain, HomeEmergesBehindTheLead) {
  auto fp = shared(make_path(2));
  const auto r = run_ebhs(config(fp, 0, Emergence{0, 1, 1}));
  EXPECT_EQ(r.outcome.verdict, Verdict::solved);
  EXPECT_EQ(r.outcome.dead, (std::vector<AgentId>{1, 2, 3}));
  ASSERT_EQ(r.outcome.detected.size(), 1u);
  EXPECT_EQ(r.outcome.detected[0].declarer, 4);
  EXPECT_EQ(r.outcome.detected[0].node, 1);
}

TEST(EbhsChain, ForwardMoveIntoTheBlackHole) {
  // path:3 from 0: the chain walks 0 -> 1 -> 2; node 2 is already a black hole.
  auto fp = shared(make_path(3));
  const auto r = run_ebhs(config(fp, 0, Emergence{2, 0, 1}));
  EXPECT_EQ(r.outcome.verdict, Verdict::solved);
  EXPECT_TRUE(survivor(r));
  for (const auto& d : r.outcome.detected) EXPECT_EQ(fp->neighbor_via_port(d.node, d.port).neighbor, 2);
}

TEST(EbhsChain, ControlNeverDeclares) {
  for (const auto& g : harness::corpus()) {
    const auto r = run_ebhs(config(g.fp, 0, std::nullopt));
    EXPECT_TRUE(r.outcome.detected.empty()) << g.name;
    EXPECT_TRUE(r.outcome.dead.empty()) << g.name;
  }
}

TEST(EbhsProperties, LeadProjectsTheSingleAgentWalk) {
  for (const auto& g : harness::corpus()) {
    for (NodeId home = 0; home < g.fp->node_count(); home += 2) {
      const auto r = run_ebhs(config(g.fp, home, std::nullopt));
      DfsExplorer ex(*g.fp);
      const auto walk = single_walk(ex, *g.fp, home, static_cast<long>(r.lead_positions.size()) - 1);
      EXPECT_EQ(r.lead_positions, walk) << g.name << " home " << home;
    }
  }
}

TEST(EbhsProperties, SubRoundCountsMatchMoveKinds) {
  // Oracle: on a simple graph, a chain move is backward exactly when the walk
  // returns to the node it just left.
  for (const auto& g : harness::corpus()) {
    const auto r = run_ebhs(config(g.fp, 0, std::nullopt));
    std::map<long, int> per_round;
    for (const auto& [round, sub] : r.tick_labels) ++per_round[round];
    const auto& w = r.lead_positions;
    EXPECT_EQ(per_round[0], 1);
    for (std::size_t k = 1; k + 1 < w.size(); ++k) {
      const int expect = w[k + 1] == w[k - 1] ? 4 : 7;
      EXPECT_EQ(per_round[static_cast<long>(k)], expect) << g.name << " round " << k;
    }
  }
}

TEST(EbhsProperties, EveryEmergenceOnSmallGraphs) {
  for (const char* spec : {"ring:4", "path:4", "complete:4", "torus:3x3", "random:6,8,2"}) {
    auto fp = shared(generate(spec));
    const long rounds = 2 * (4 * fp->edge_count() + 4);
    for (NodeId v = 0; v < fp->node_count(); ++v) {
      for (long round = 0; round <= rounds; ++round) {
        for (int sub = 1; sub <= (round == 0 ? 1 : 7); ++sub) {
          if (v == 0 && round == 0) continue;
          const auto r = run_ebhs(config(fp, 0, Emergence{v, round, sub}));
          ASSERT_EQ(r.outcome.verdict, Verdict::solved) << spec << " " << v << "@" << round << "." << sub;
          ASSERT_TRUE(survivor(r));
          ASSERT_TRUE(r.declaration_tick && r.emergence_tick);
          EXPECT_LE(*r.declaration_tick - *r.emergence_tick, 7 * r.period);
        }
      }
    }
  }
}

TEST(EbhsOracle, RingFiveAllBackendsClean) {
  for (auto k : {BackendKind::dfs, BackendKind::uxs_known_n}) {
    harness::EbhsJob job{{"ring:5", shared(make_ring(5))}, 0, k, 2};
    harness::EbhsStats st;
    const auto rep = harness::oracle_ebhs(job, &st);
    EXPECT_TRUE(rep.ok()) << rep.summary();
    EXPECT_GT(st.runs, 0);
  }
}

TEST(EbhsRun, Deterministic) {
  auto fp = shared(generate("random:7,10,5"));
  const auto a = run_ebhs(config(fp, 3, Emergence{5, 9, 4}));
  const auto b = run_ebhs(config(fp, 3, Emergence{5, 9, 4}));
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.outcome.detected, b.outcome.detected);
}
