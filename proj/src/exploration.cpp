#include "bhs/exploration.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace bhs {

Port uxs_step(Port entry, long symbol, int degree) {
  if (degree <= 0) throw std::invalid_argument("uxs_step: degree must be positive");
  const long p = entry < 0 ? 0 : entry;
  return static_cast<Port>((p + symbol) % degree);
}

std::vector<long> guess_schedule(int count) {
  std::vector<long> out;
  long n = 2;
  for (int i = 0; i < count; ++i, n *= 2) out.push_back(n);
  return out;
}

namespace {

// Compact port-labeled adjacency: adj[v][p] = (neighbor, port at neighbor).
using Adj = std::vector<std::vector<std::pair<int, int>>>;

Adj to_adj(const Footprint& fp) {
  Adj adj(fp.node_count());
  for (NodeId v = 0; v < fp.node_count(); ++v) {
    for (Port p = 0; p < fp.degree(v); ++p) {
      auto h = fp.neighbor_via_port(v, p);
      adj[v].push_back({h.neighbor, h.neighbor_port});
    }
  }
  return adj;
}

bool covers(const std::vector<int>& seq, const Adj& adj, int start, int entry) {
  const int n = static_cast<int>(adj.size());
  std::vector<char> seen(n, 0);
  seen[start] = 1;
  int left = n - 1;
  int cur = start;
  int in = entry;
  for (int b : seq) {
    if (left == 0) break;
    const int d = static_cast<int>(adj[cur].size());
    const auto [u, q] = adj[cur][(in + b) % d];
    cur = u;
    in = q;
    if (!seen[cur]) {
      seen[cur] = 1;
      --left;
    }
  }
  return left == 0;
}

struct Instance {
  const Adj* adj;
  int start;
  int entry;
};

// All connected simple graphs on n labeled nodes with every port labeling.
void exhaustive_family(int n, std::vector<Adj>& out) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
  const int P = static_cast<int>(pairs.size());
  for (int mask = 1; mask < (1 << P); ++mask) {
    std::vector<std::vector<int>> inc(n);  // incident pair indices per node
    for (int i = 0; i < P; ++i) {
      if (mask & (1 << i)) {
        inc[pairs[i].first].push_back(i);
        inc[pairs[i].second].push_back(i);
      }
    }
    // connectivity
    std::vector<int> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int x) {
      while (comp[x] != x) x = comp[x] = comp[comp[x]];
      return x;
    };
    for (int i = 0; i < P; ++i)
      if (mask & (1 << i)) comp[find(pairs[i].first)] = find(pairs[i].second);
    bool connected = true;
    for (int v = 0; v < n; ++v) connected = connected && find(v) == find(0);
    if (!connected) continue;

    // Iterate over every permutation of every node's incident list.
    std::vector<std::vector<int>> order = inc;
    for (auto& o : order) std::sort(o.begin(), o.end());
    while (true) {
      Adj adj(n);
      for (int v = 0; v < n; ++v) adj[v].resize(order[v].size());
      for (int v = 0; v < n; ++v) {
        for (int p = 0; p < static_cast<int>(order[v].size()); ++p) {
          const int e = order[v][p];
          const int u = pairs[e].first == v ? pairs[e].second : pairs[e].first;
          const int q = static_cast<int>(std::find(order[u].begin(), order[u].end(), e) - order[u].begin());
          adj[v][p] = {u, q};
        }
      }
      out.push_back(std::move(adj));
      int v = 0;
      while (v < n && !std::next_permutation(order[v].begin(), order[v].end())) ++v;
      if (v == n) break;
    }
  }
}

Adj relabel(const Footprint& fp, std::mt19937_64& rng) {
  const int n = fp.node_count();
  std::vector<std::vector<int>> perm(n);
  for (int v = 0; v < n; ++v) {
    perm[v].resize(fp.degree(v));
    std::iota(perm[v].begin(), perm[v].end(), 0);
    std::shuffle(perm[v].begin(), perm[v].end(), rng);
  }
  Adj adj(n);
  for (int v = 0; v < n; ++v) adj[v].resize(fp.degree(v));
  for (int v = 0; v < n; ++v) {
    for (Port p = 0; p < fp.degree(v); ++p) {
      auto h = fp.neighbor_via_port(v, p);
      adj[v][perm[v][p]] = {h.neighbor, perm[h.neighbor][h.neighbor_port]};
    }
  }
  return adj;
}

void sampled_family(int n, std::vector<Adj>& out) {
  std::vector<Footprint> base;
  base.push_back(make_ring(n));
  base.push_back(make_path(n));
  base.push_back(make_star(n - 1));
  base.push_back(make_complete(n));
  const int max_m = std::min(n * (n - 1) / 2, 14);
  for (int m = n - 1; m <= max_m; ++m)
    for (std::uint64_t seed = 1; seed <= 10; ++seed) base.push_back(make_random_connected(n, m, seed));
  std::mt19937_64 rng(0xC0FFEEull + static_cast<std::uint64_t>(n));
  for (const auto& fp : base) {
    out.push_back(to_adj(fp));
    for (int k = 0; k < 3; ++k) out.push_back(relabel(fp, rng));
  }
}

std::filesystem::path cache_path(int n_max) {
  const char* dir = std::getenv("BHS_LAB_CACHE");
  if (!dir || !*dir) return {};
  return std::filesystem::path(dir) / ("uxs-n" + std::to_string(n_max) + "-v1.txt");
}

std::vector<int> search_uxs(int n_max) {
  std::vector<Adj> family;
  for (int n = 2; n <= n_max; ++n) {
    if (n <= 4)
      exhaustive_family(n, family);
    else
      sampled_family(n, family);
  }
  std::vector<Instance> inst;
  for (const auto& adj : family)
    for (int s = 0; s < static_cast<int>(adj.size()); ++s)
      for (int e = 0; e < static_cast<int>(adj[s].size()); ++e) inst.push_back({&adj, s, e});

  std::mt19937_64 rng(0x5EEDull * 31 + static_cast<std::uint64_t>(n_max));
  std::uniform_int_distribution<int> sym(0, 2 * n_max - 1);
  for (std::size_t len = 1; len <= (1u << 16); len *= 2) {
    for (int attempt = 0; attempt < 32; ++attempt) {
      std::vector<int> seq(len);
      for (auto& b : seq) b = sym(rng);
      bool ok = true;
      for (const auto& i : inst) {
        if (!covers(seq, *i.adj, i.start, i.entry)) {
          ok = false;
          break;
        }
      }
      if (ok) return seq;
    }
  }
  throw std::runtime_error("find_uxs: search budget exhausted for n_max=" + std::to_string(n_max));
}

}  // namespace

std::vector<int> find_uxs(int n_max) {
  if (n_max < 2 || n_max > kUxsMaxNodes)
    throw std::runtime_error("find_uxs: n_max must be in [2, " + std::to_string(kUxsMaxNodes) + "]");
  const auto path = cache_path(n_max);
  if (!path.empty() && std::filesystem::exists(path)) {
    std::ifstream in(path);
    std::vector<int> seq;
    int b;
    while (in >> b) seq.push_back(b);
    if (!seq.empty()) return seq;
  }
  auto seq = search_uxs(n_max);
  if (!path.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    const auto tmp = path.string() + ".tmp" + std::to_string(std::random_device{}());
    {
      std::ofstream out(tmp);
      for (int b : seq) out << b << '\n';
    }
    std::filesystem::rename(tmp, path, ec);
  }
  return seq;
}

bool uxs_covers(const std::vector<int>& seq, const Footprint& fp, NodeId start, Port entry) {
  return covers(seq, to_adj(fp), start, entry);
}

BackendKind backend_from_string(const std::string& s) {
  if (s == "dfs") return BackendKind::dfs;
  if (s == "uxs") return BackendKind::uxs;
  if (s == "uxs-known-n") return BackendKind::uxs_known_n;
  throw std::invalid_argument("unknown backend '" + s + "'");
}

const char* to_string(BackendKind k) {
  switch (k) {
    case BackendKind::dfs: return "dfs";
    case BackendKind::uxs: return "uxs";
    case BackendKind::uxs_known_n: return "uxs-known-n";
  }
  return "?";
}

DfsExplorer::DfsExplorer(const Footprint& fp) : slots_(fp.node_count()), m_(fp.edge_count()) {
  for (NodeId v = 0; v < fp.node_count(); ++v) degree_.push_back(fp.degree(v));
}

Port DfsExplorer::first_after(const Slot& s, int degree) const {
  for (Port p = s.recent + 1; p < degree; ++p)
    if (p != s.parent) return p;
  return kNoPort;
}

Port DfsExplorer::next(NodeId at, Port entry) {
  Slot& s = slots_[at];
  const int d = degree_[at];
  if (s.epoch != epoch_) {
    s = {epoch_, entry, kNoPort};
  } else if (last_explore_ && entry != kNoPort) {
    last_explore_ = false;  // non-tree edge: go straight back
    return entry;
  }
  Port p = first_after(s, d);
  if (p == kNoPort && s.parent != kNoPort) {
    s.recent = s.parent;
    last_explore_ = false;
    return s.parent;
  }
  if (p == kNoPort) {
    ++epoch_;
    s = {epoch_, kNoPort, kNoPort};
    p = first_after(s, d);
  }
  s.recent = p;
  last_explore_ = true;
  return p;
}

UxsExplorer::UxsExplorer(const Footprint& fp, std::vector<std::vector<int>> passes) : passes_(std::move(passes)) {
  for (NodeId v = 0; v < fp.node_count(); ++v) degree_.push_back(fp.degree(v));
  if (passes_.empty()) throw std::invalid_argument("UxsExplorer needs at least one pass");
  for (const auto& p : passes_)
    if (p.empty()) throw std::invalid_argument("UxsExplorer: empty pass");
}

Port UxsExplorer::next(NodeId at, Port entry) {
  const int b = passes_[pass_][pos_];
  if (++pos_ == passes_[pass_].size()) {
    pos_ = 0;
    pass_ = (pass_ + 1) % passes_.size();
  }
  return uxs_step(entry, b, degree_[at]);
}

long UxsExplorer::period() const {
  long total = 0;
  for (const auto& p : passes_) total += static_cast<long>(p.size());
  return total;
}

std::unique_ptr<Explorer> make_explorer(BackendKind kind, const Footprint& fp) {
  const int n = fp.node_count();
  switch (kind) {
    case BackendKind::dfs:
      return std::make_unique<DfsExplorer>(fp);
    case BackendKind::uxs: {
      if (n > kUxsMaxNodes) throw std::runtime_error("uxs backend supports at most 8 nodes");
      std::vector<std::vector<int>> passes;
      for (long g : guess_schedule(3)) passes.push_back(find_uxs(static_cast<int>(g)));
      return std::make_unique<UxsExplorer>(fp, std::move(passes));
    }
    case BackendKind::uxs_known_n: {
      if (n > kUxsMaxNodes) throw std::runtime_error("uxs backend supports at most 8 nodes");
      return std::make_unique<UxsExplorer>(fp, std::vector<std::vector<int>>{find_uxs(std::max(2, n))});
    }
  }
  throw std::invalid_argument("bad backend");
}

std::vector<NodeId> single_walk(Explorer& ex, const Footprint& fp, NodeId home, long moves) {
  std::vector<NodeId> out{home};
  NodeId cur = home;
  Port entry = kNoPort;
  for (long i = 0; i < moves; ++i) {
    const Port p = ex.next(cur, entry);
    const auto h = fp.neighbor_via_port(cur, p);
    cur = h.neighbor;
    entry = h.neighbor_port;
    out.push_back(cur);
  }
  return out;
}

}  // namespace bhs
