#include "bhs/ebhs.hpp"

#include <array>
#include <stdexcept>

namespace bhs {

void validate_ebhs(const EbhsConfig& cfg) {
  if (!cfg.footprint) throw std::invalid_argument("no graph");
  const auto& fp = *cfg.footprint;
  if (fp.node_count() < 2) throw std::invalid_argument("ebhs needs at least two nodes");
  if (cfg.home < 0 || cfg.home >= fp.node_count()) throw std::invalid_argument("home out of range");
  if (fp.degree(cfg.home) == 0) throw std::invalid_argument("home has no incident edge");
  if (cfg.emergence) {
    const auto& e = *cfg.emergence;
    if (e.node < 0 || e.node >= fp.node_count()) throw std::invalid_argument("emergence node out of range");
    if (e.round < 0 || e.sub_round < 1 || e.sub_round > 7) throw std::invalid_argument("bad emergence time");
    if (e.node == cfg.home && e.round == 0) throw std::invalid_argument("the black hole cannot emerge at the home in round 0");
  }
}

long default_ebhs_horizon(long period, const std::optional<Emergence>& e) {
  if (!e) return 3 * 7 * (period + 1) + 1;
  return 7 * (e->round + 1) + 10 * 7 * (period + 1) + 1;
}

namespace {

constexpr int A1 = 1, A2 = 2, A3 = 3, A4 = 4;

class Chain {
 public:
  Chain(const EbhsConfig& cfg, std::unique_ptr<Explorer> ex) : cfg_(cfg), fp_(*cfg.footprint), ex_(std::move(ex)) {
    pos_.fill(cfg.home);
    alive_.fill(true);
    res_.period = ex_->period();
    horizon_ = cfg.horizon_ticks > 0 ? cfg.horizon_ticks : default_ebhs_horizon(res_.period, cfg.emergence);
  }

  EbhsResult run() {
    res_.lead_positions.push_back(cfg_.home);
    round_zero();
    while (!done_ && tick_ < horizon_) chain_round();
    finish();
    return std::move(res_);
  }

 private:
  const EbhsConfig& cfg_;
  const Footprint& fp_;
  std::unique_ptr<Explorer> ex_;
  EbhsResult res_;
  std::array<NodeId, 5> pos_{};
  std::array<bool, 5> alive_{};
  ChainState cs_;
  long tick_ = 0;
  long horizon_ = 0;
  bool bh_active_ = false;
  bool done_ = false;
  int sub_ = 1;
  std::vector<std::pair<int, Port>> moves_;  // pending moves of the current tick

  bool at(int a, NodeId v) const { return alive_[a] && pos_[a] == v; }

  void emit(int a, EventKind k, NodeId at, std::string detail) {
    if (!cfg_.record_trace) return;
    res_.trace.push_back({cs_.round, sub_, a, k, at, std::move(detail)});
  }

  void begin_tick(int sub) {
    sub_ = sub;
    res_.tick_labels.push_back({cs_.round, sub});
    if (cfg_.emergence && !bh_active_) {
      const auto& e = *cfg_.emergence;
      if (std::make_pair(cs_.round, sub) >= std::make_pair(e.round, e.sub_round)) {
        bh_active_ = true;
        res_.emergence_tick = tick_;
        for (int a = A1; a <= A4; ++a) {
          if (at(a, e.node)) kill(a);
        }
      }
    }
  }

  void kill(int a) {
    alive_[a] = false;
    res_.outcome.dead.push_back(a);
    emit(a, EventKind::died, pos_[a], "");
  }

  void move(int a, Port p) {
    if (alive_[a]) moves_.push_back({a, p});
  }

  void declare(int a, NodeId v, Port p) {
    res_.outcome.detected.push_back({a, v, p, cs_.round, sub_});
    emit(a, EventKind::declared_bh, v, "port=" + std::to_string(p));
  }

  // Lowest-numbered alive agent among the given ones at v, or 0.
  int first_at(std::initializer_list<int> who, NodeId v) const {
    for (int a : who)
      if (at(a, v)) return a;
    return 0;
  }

  void end_tick() {
    for (auto [a, p] : moves_) {
      const auto h = fp_.neighbor_via_port(pos_[a], p);
      pos_[a] = h.neighbor;
      emit(a, EventKind::move_ok, h.neighbor, "port=" + std::to_string(p));
      if (bh_active_ && h.neighbor == cfg_.emergence->node) kill(a);
    }
    moves_.clear();
    ++tick_;
    if (!res_.outcome.detected.empty()) {
      res_.declaration_tick = tick_ - 1;
      done_ = true;
    }
    bool any = false;
    for (int a = A1; a <= A4; ++a) any = any || alive_[a];
    if (!any) done_ = true;
  }

  void round_zero() {
    begin_tick(1);
    const Port p = ex_->next(cfg_.home, kNoPort);
    const auto h = fp_.neighbor_via_port(cfg_.home, p);
    move(A3, p);
    move(A4, p);
    end_tick();
    cs_ = {cfg_.home, h.neighbor, p, h.neighbor_port, 1};
    res_.lead_positions.push_back(cs_.v2);
  }

  void chain_round() {
    const auto [v1, v2, p1, p2, r] = cs_;
    const Port p3 = ex_->next(v2, p2);
    const auto far = fp_.neighbor_via_port(v2, p3);
    const NodeId v3 = far.neighbor;
    const Port p3in = far.neighbor_port;
    const bool back = classify(p3, p2) == ChainMove::backward;

    auto tick = [&](int s, auto&& body) {
      if (done_ || tick_ >= horizon_) return false;
      begin_tick(s);
      body();
      end_tick();
      return !done_;
    };

    bool ok = true;
    if (back) {
      ok = ok && tick(1, [&] { move(A3, p2); });
      ok = ok && tick(2, [&] {
        if (int d = first_at({A1, A2}, v1)) {
          if (!at(A3, v1)) {
            declare(d, v1, p1);
          } else {
            move(A1, p1);
            move(A2, p1);
          }
        }
      });
      ok = ok && tick(3, [&] {
        if (!at(A4, v2)) return;
        if (!at(A1, v2) && !at(A2, v2))
          declare(A4, v2, p2);
        else
          move(A4, p2);
      });
      ok = ok && tick(4, [&] {
        if (at(A3, v1) && !at(A4, v1)) declare(A3, v1, p1);
      });
      if (ok) {
        cs_ = {v2, v1, p2, p1, r + 1};
        res_.lead_positions.push_back(cs_.v2);
      }
      return;
    }

    ok = ok && tick(1, [&] { move(A3, p2); });
    ok = ok && tick(2, [&] {
      if (int d = first_at({A1, A2}, v1)) {
        if (!at(A3, v1))
          declare(d, v1, p1);
        else
          move(A3, p1);
      }
    });
    ok = ok && tick(3, [&] {
      if (at(A4, v2)) {
        if (!at(A3, v2))
          declare(A4, v2, p2);
        else
          move(A4, p3);
      }
      if (at(A2, v1)) move(A2, p1);
    });
    ok = ok && tick(4, [&] {
      if (!at(A3, v2)) return;
      if (!at(A2, v2))
        declare(A3, v2, p2);
      else
        move(A2, p2);
    });
    ok = ok && tick(5, [&] {
      if (!at(A1, v1)) return;
      if (!at(A2, v1)) {
        declare(A1, v1, p1);
      } else {
        move(A1, p1);
        move(A2, p1);
      }
    });
    ok = ok && tick(6, [&] {
      if (!at(A3, v2)) return;
      if (!at(A1, v2) && !at(A2, v2)) declare(A3, v2, p2);
      move(A3, p3);
    });
    ok = ok && tick(7, [&] {
      if (at(A4, v3) && !at(A3, v3)) declare(A4, v3, p3in);
    });
    if (ok) {
      cs_ = {v2, v3, p3, p3in, r + 1};
      res_.lead_positions.push_back(cs_.v2);
    }
  }

  void finish() {
    auto& o = res_.outcome;
    res_.ticks = tick_;
    o.rounds_elapsed = tick_;
    if (o.detected.empty()) {
      o.verdict = Verdict::unsolved_horizon;
      return;
    }
    o.verdict = Verdict::solved;
    for (const auto& d : o.detected) {
      const bool right = bh_active_ && fp_.neighbor_via_port(d.node, d.port).neighbor == cfg_.emergence->node;
      if (!right) {
        o.verdict = Verdict::violation;
        o.violation = "false declaration by a" + std::to_string(d.declarer) + " at node " + std::to_string(d.node) +
                      " port " + std::to_string(d.port);
        res_.diagnostics.push_back(o.violation);
      }
    }
  }
};

}  // namespace

EbhsResult run_ebhs(const EbhsConfig& cfg, const Explorer& backend) {
  validate_ebhs(cfg);
  Chain c(cfg, backend.clone());
  return c.run();
}

EbhsResult run_ebhs(const EbhsConfig& cfg) {
  validate_ebhs(cfg);
  auto ex = make_explorer(cfg.backend, *cfg.footprint);
  Chain c(cfg, std::move(ex));
  return c.run();
}

}  // namespace bhs
