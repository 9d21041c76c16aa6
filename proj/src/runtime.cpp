#include "bhs/runtime.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace bhs {

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::move_ok: return "move_ok";
    case EventKind::move_blocked: return "move_blocked";
    case EventKind::died: return "died";
    case EventKind::wrote_wb: return "wrote_wb";
    case EventKind::erased_wb: return "erased_wb";
    case EventKind::declared_bh: return "declared_bh";
    case EventKind::terminated: return "terminated";
    case EventKind::group_formed: return "group_formed";
    case EventKind::followed: return "followed";
  }
  return "?";
}

std::optional<EventKind> event_kind_from_string(const std::string& s) {
  for (auto k : {EventKind::move_ok, EventKind::move_blocked, EventKind::died, EventKind::wrote_wb,
                 EventKind::erased_wb, EventKind::declared_bh, EventKind::terminated,
                 EventKind::group_formed, EventKind::followed}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::solved: return "solved";
    case Verdict::unsolved_horizon: return "unsolved_horizon";
    case Verdict::violation: return "violation";
  }
  return "?";
}

bool LocalView::present(AgentId id) const { return find(id) != nullptr; }

const AgentState* LocalView::find(AgentId id) const {
  for (const auto& o : others)
    if (o.id == id) return &o;
  return nullptr;
}

std::optional<std::string> resolve_wb_writes(Whiteboard& wb,
                                             const std::vector<std::pair<AgentId, WbOp>>& requests) {
  using K = WbOp::Kind;
  for (const auto& [who, op] : requests) {
    if (op.kind != K::erase_mark) continue;
    if (wb.marked1 && wb.marked1->owner == op.mark.owner) {
      wb.marked1.reset();
    } else if (wb.marked2 && wb.marked2->owner == op.mark.owner) {
      wb.marked2.reset();
    } else {
      return "agent " + std::to_string(who) + " erased a missing mark of agent " + std::to_string(op.mark.owner);
    }
  }
  int travel_writes = 0, mark_writes = 0;
  bool stamped = false;
  for (const auto& [who, op] : requests) {
    switch (op.kind) {
      case K::set_travel:
        if (++travel_writes > 1) return "two travel writes in one round (atmost_travel_info)";
        wb.travel = op.travel;
        break;
      case K::stamp_group:
        // Concurrent stamps from different groups keep the smallest id.
        if (!stamped || op.grp_id < wb.grp_id) wb.grp_id = op.grp_id;
        wb.grp = true;
        stamped = true;
        break;
      case K::write_mark:
        if (++mark_writes > 1) return "two marked writes in one round";
        if (!wb.marked1) {
          wb.marked1 = op.mark;
        } else if (!wb.marked2) {
          wb.marked2 = op.mark;
        } else {
          return "agent " + std::to_string(who) + " wrote a mark with both slots full (atmost_marked_info)";
        }
        break;
      case K::erase_mark:
        break;
    }
  }
  return std::nullopt;
}

World::World(std::shared_ptr<const Footprint> fp, NodeId black_hole, const std::vector<Placement>& placement,
             ComputeFn algorithm, bool record_trace)
    : fp_(std::move(fp)), black_hole_(black_hole), algorithm_(std::move(algorithm)), record_(record_trace) {
  if (black_hole_ < 0 || black_hole_ >= fp_->node_count()) throw GraphError("black hole node out of range");
  if (placement.empty()) throw std::invalid_argument("no agents placed");
  std::set<AgentId> ids;
  for (const auto& p : placement) {
    if (p.node < 0 || p.node >= fp_->node_count()) throw std::invalid_argument("agent placed on unknown node");
    if (p.node == black_hole_) throw std::invalid_argument("agent placed on the black hole");
    if (p.id < 1 || !ids.insert(p.id).second) throw std::invalid_argument("agent ids must be distinct and >= 1");
    AgentState a;
    a.id = p.id;
    a.position = p.node;
    agents_.push_back(a);
  }
  std::sort(agents_.begin(), agents_.end(), [](const auto& x, const auto& y) { return x.id < y.id; });
  wbs_.resize(fp_->node_count());
}

LocalView World::view_of(const AgentState& a) const {
  LocalView v;
  v.round = round_;
  v.degree = fp_->degree(a.position);
  v.wb = wbs_[a.position];
  for (const auto& o : agents_) {
    if (o.alive && o.id != a.id && o.position == a.position) v.others.push_back(o);
  }
  return v;
}

RoundPlan World::plan() const {
  RoundPlan p;
  p.round = round_;
  p.actions.resize(agents_.size());
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    const auto& a = agents_[i];
    if (!a.alive || a.mode == Mode::terminated) {
      p.actions[i].next = a;
      continue;
    }
    p.actions[i] = algorithm_(a, view_of(a));
    const auto& mv = p.actions[i].move;
    if (mv && *mv >= 0 && *mv < fp_->degree(a.position)) {
      p.moves.push_back({a.id, a.position, *mv, fp_->edge_via_port(a.position, *mv)});
    }
  }
  return p;
}

void World::emit(std::optional<int> sub, AgentId a, EventKind k, NodeId at, std::string detail) {
  if (record_) trace_.push_back({round_, sub, a, k, at, std::move(detail)});
}

void World::fail(const std::string& why) {
  outcome_.verdict = Verdict::violation;
  outcome_.violation = "round " + std::to_string(round_) + ": " + why;
  finished_ = true;
}

namespace {

std::string describe(const WbOp& op) {
  switch (op.kind) {
    case WbOp::Kind::set_travel:
      return "travel owner=" + std::to_string(op.travel.owner) + " parent=" + std::to_string(op.travel.parent) +
             " recent=" + std::to_string(op.travel.recent) + (op.travel.group ? " group" : "");
    case WbOp::Kind::write_mark:
      return "mark port=" + std::to_string(op.mark.port) + " owner=" + std::to_string(op.mark.owner);
    case WbOp::Kind::erase_mark:
      return "mark owner=" + std::to_string(op.mark.owner);
    case WbOp::Kind::stamp_group:
      return "grp grp_id=" + std::to_string(op.grp_id);
  }
  return {};
}

}  // namespace

void World::commit(const RoundPlan& plan, const AdversaryDecision& decision) {
  if (finished_) return;
  if (!decision.diagnostic.empty()) diagnostics_.push_back(decision.diagnostic);
  if (!validate_snapshot(*fp_, decision.missing)) {
    fail("snapshot violates 1-interval connectivity");
    return;
  }
  const bool even = round_ % 2 == 0;

  // Whiteboards, grouped per node in agent-id order.
  std::map<NodeId, std::vector<std::pair<AgentId, WbOp>>> per_node;
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    for (const auto& op : plan.actions[i].wb) per_node[agents_[i].position].push_back({agents_[i].id, op});
  }
  for (auto& [node, reqs] : per_node) {
    if (auto err = resolve_wb_writes(wbs_[node], reqs)) {
      fail(*err + " at node " + std::to_string(node));
      return;
    }
  }

  bool any_blocked = false;
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    auto& a = agents_[i];
    if (!a.alive || a.mode == Mode::terminated) continue;
    const Action& act = plan.actions[i];
    const NodeId at = a.position;

    for (const auto& op : act.wb) {
      emit(std::nullopt, a.id, op.kind == WbOp::Kind::erase_mark ? EventKind::erased_wb : EventKind::wrote_wb, at,
           describe(op));
    }
    for (const auto& [k, d] : act.notes) {
      if (k == EventKind::group_formed) outcome_.group_formed = true;
      emit(std::nullopt, a.id, k, at, d);
    }

    AgentState next = act.next;
    next.id = a.id;
    next.position = a.position;
    next.alive = true;
    next.pin = a.pin;
    next.success = a.success;
    const bool was_terminated = a.mode == Mode::terminated;
    a = next;
    if (!was_terminated && a.mode == Mode::terminated) emit(std::nullopt, a.id, EventKind::terminated, at, "");

    if (act.declare) {
      if (*act.declare < 0 || *act.declare >= fp_->degree(at)) {
        fail("agent " + std::to_string(a.id) + " declared an out-of-range port");
        return;
      }
      outcome_.detected.push_back({a.id, at, *act.declare, round_, std::nullopt});
      emit(std::nullopt, a.id, EventKind::declared_bh, at, "port=" + std::to_string(*act.declare));
    }

    if (act.move) {
      const Port p = *act.move;
      if (p < 0 || p >= fp_->degree(at)) {
        fail("agent " + std::to_string(a.id) + " chose out-of-range port " + std::to_string(p));
        return;
      }
      if (!even) {
        fail("agent " + std::to_string(a.id) + " moved in an odd round");
        return;
      }
      const HalfEdge h = fp_->neighbor_via_port(at, p);
      if (decision.missing && *decision.missing == EdgeId::of(at, h.neighbor)) {
        a.success = false;
        any_blocked = true;
        emit(std::nullopt, a.id, EventKind::move_blocked, at, "port=" + std::to_string(p));
      } else {
        a.position = h.neighbor;
        a.pin = h.neighbor_port;
        a.success = true;
        emit(std::nullopt, a.id, EventKind::move_ok, h.neighbor, "port=" + std::to_string(p));
        if (a.position == black_hole_) {
          a.alive = false;
          outcome_.dead.push_back(a.id);
          emit(std::nullopt, a.id, EventKind::died, a.position, "");
        }
      }
    }
  }
  if (any_blocked) ++outcome_.blocked_rounds;
  ++round_;
  outcome_.rounds_elapsed = round_;

  if (!outcome_.detected.empty()) {
    settle_verdict();
    finished_ = true;
    return;
  }
  bool active = std::any_of(agents_.begin(), agents_.end(),
                            [](const auto& a) { return a.alive && a.mode != Mode::terminated; });
  if (!active) {
    outcome_.verdict = Verdict::unsolved_horizon;
    outcome_.violation = "no active agent left";
    finished_ = true;
  }
}

void World::settle_verdict() {
  for (const auto& d : outcome_.detected) {
    if (fp_->neighbor_via_port(d.node, d.port).neighbor != black_hole_) {
      outcome_.verdict = Verdict::violation;
      outcome_.violation = "false declaration by agent " + std::to_string(d.declarer) + " at node " +
                           std::to_string(d.node) + " port " + std::to_string(d.port);
      return;
    }
  }
  outcome_.verdict = Verdict::solved;
}

void World::step(Strategy& adversary) {
  if (finished_) return;
  RoundPlan p = plan();
  AdversaryView view{round_, fp_.get(), &agents_, &wbs_, p.moves};
  commit(p, decide(adversary, view));
}

void World::finalize_horizon() {
  if (finished_) return;
  outcome_.verdict = Verdict::unsolved_horizon;
  finished_ = true;
}

namespace {

template <typename T>
void put(std::string& s, T v) {
  s.append(reinterpret_cast<const char*>(&v), sizeof(v));
}

}  // namespace

std::string World::state_key() const {
  auto is_current = [&](AgentId owner, std::uint32_t epoch) {
    for (const auto& a : agents_)
      if (a.id == owner) return a.alive && a.mode != Mode::terminated && a.epoch == epoch;
    return false;
  };
  std::string s;
  put(s, static_cast<char>(round_ % 2));
  for (const auto& a : agents_) {
    put(s, a.id);
    put(s, a.alive);
    if (!a.alive) continue;
    put(s, a.position);
    put(s, a.mode);
    put(s, a.grp);
    put(s, a.grp_id);
    put(s, a.role);
    // Nobody reads the rest of a terminated agent's memory.
    if (a.mode == Mode::terminated) continue;
    put(s, a.state);
    // The success bit is only read in the odd round right after a move.
    if (round_ % 2 != 0) put(s, a.success);
    put(s, a.pout);
    put(s, a.pin);
    put(s, a.icm_phase);
    put(s, a.follow_id);
    put(s, a.icm_own);
    put(s, a.retry_port);
    put(s, a.moved_direct);
    put(s, a.gphase);
    put(s, a.gport);
    put(s, a.gwatch);
    put(s, a.hphase);
  }
  for (const auto& w : wbs_) {
    put(s, static_cast<char>(w.travel.has_value()));
    if (w.travel) {
      put(s, w.travel->owner);
      put(s, w.travel->parent);
      put(s, w.travel->recent);
      // Epochs only ever grow and are only compared with the owner's
      // current one, so "is current" is all that matters.
      put(s, static_cast<char>(is_current(w.travel->owner, w.travel->epoch)));
      put(s, w.travel->group);
    }
    for (const auto* m : {&w.marked1, &w.marked2}) {
      put(s, static_cast<char>(m->has_value()));
      if (*m) {
        put(s, (*m)->port);
        put(s, (*m)->owner);
      }
    }
    put(s, w.grp);
    put(s, w.grp_id);
  }
  return s;
}

long default_horizon(const Footprint& fp, NodeId black_hole) {
  const long m = fp.edge_count();
  return 4L * 152 * m * fp.degree(black_hole) + 64L * m * m;
}

RunResult run(const RunConfig& cfg, const ComputeFn& algorithm, Strategy& adversary) {
  World w(cfg.footprint, cfg.black_hole, cfg.placement, algorithm, cfg.record_trace);
  const long horizon = cfg.horizon > 0 ? cfg.horizon : default_horizon(*cfg.footprint, cfg.black_hole);
  while (!w.finished() && w.round() < horizon) w.step(adversary);
  w.finalize_horizon();
  return {w.outcome(), w.trace(), w.diagnostics()};
}

std::vector<Placement> scatter_agents(const Footprint& fp, NodeId black_hole, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const long n = fp.node_count();
  const long range = std::max<long>(n * n, 4L * count);
  std::set<AgentId> ids;
  while (static_cast<int>(ids.size()) < count) ids.insert(static_cast<AgentId>(1 + rng() % range));
  std::vector<NodeId> safe;
  for (NodeId v = 0; v < n; ++v)
    if (v != black_hole) safe.push_back(v);
  std::vector<AgentId> order(ids.begin(), ids.end());
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
  std::vector<Placement> out;
  for (AgentId id : order) out.push_back({safe[rng() % safe.size()], id});
  return out;
}

}  // namespace bhs
