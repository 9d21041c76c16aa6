#include <algorithm>

#include "bhs/harness.hpp"

namespace bhs::harness {

namespace {

CorpusGraph named(const std::string& spec) { return {spec, std::make_shared<const Footprint>(generate(spec))}; }

// Ports are assigned in edge-list order at each endpoint.
CorpusGraph from_pairs(const std::string& name, int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> next(n, 0);
  std::vector<Footprint::PortedEdge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v, next[u]++, next[v]++});
  return {name, std::make_shared<const Footprint>(Footprint::from_edges(n, edges))};
}

}  // namespace

std::string random_corpus_spec(int seed) {
  const int n = 4 + seed % 5;
  const int max_m = std::min(14, n * (n - 1) / 2);
  const int m = n - 1 + (3 * seed) % (max_m - n + 2);
  return "random:" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(seed);
}

std::vector<CorpusGraph> corpus() {
  std::vector<CorpusGraph> out;
  for (int n = 4; n <= 10; ++n) out.push_back(named("ring:" + std::to_string(n)));
  for (int n = 4; n <= 8; ++n) out.push_back(named("path:" + std::to_string(n)));
  for (int s = 1; s <= 10; ++s) out.push_back(named(random_corpus_spec(s)));
  out.push_back(named("complete:4"));
  out.push_back(named("torus:3x3"));
  return out;
}

std::vector<CorpusGraph> small_graphs(int n_max) {
  std::vector<CorpusGraph> out;
  if (n_max >= 2) out.push_back(from_pairs("small:K2", 2, {{0, 1}}));
  if (n_max >= 3) {
    out.push_back(from_pairs("small:P3", 3, {{0, 1}, {1, 2}}));
    out.push_back(from_pairs("small:K3", 3, {{0, 1}, {1, 2}, {2, 0}}));
  }
  if (n_max >= 4) {
    out.push_back(from_pairs("small:P4", 4, {{0, 1}, {1, 2}, {2, 3}}));
    out.push_back(from_pairs("small:star3", 4, {{0, 1}, {0, 2}, {0, 3}}));
    out.push_back(from_pairs("small:paw", 4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}}));
    out.push_back(from_pairs("small:C4", 4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
    out.push_back(from_pairs("small:diamond", 4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}));
    out.push_back(from_pairs("small:K4", 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  }
  return out;
}

std::vector<std::string> adversary_set(const Footprint& fp) {
  std::vector<std::string> out{"none"};
  for (int s = 1; s <= 20; ++s) out.push_back("random:" + std::to_string(s));
  out.push_back("block-smallest");
  for (const auto& d : enumerate_decisions(fp)) {
    if (d.missing) out.push_back("persistent:" + std::to_string(d.missing->u) + "," + std::to_string(d.missing->v));
  }
  return out;
}

}  // namespace bhs::harness
