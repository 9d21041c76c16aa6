#include "bhs/scattered.hpp"

#include <algorithm>
#include <string>

#include "bhs/rooted.hpp"

namespace bhs::scattered {

namespace {

Action wait(const AgentState& self) {
  Action a;
  a.next = self;
  return a;
}

// The DFS state only switches once the move succeeds (see compute_odd).
Action direct_move(AgentState next, Port port) {
  Action a;
  next.pout = port;
  next.moved_direct = true;
  a.next = next;
  a.move = port;
  return a;
}

Action terminate(const AgentState& self) {
  Action a;
  a.next = self;
  a.next.mode = Mode::terminated;
  return a;
}

bool is_candidate(const AgentState& a) { return !a.grp && a.mode != Mode::terminated; }

}  // namespace

bool settled(const AgentState& a) { return a.alive && a.icm_phase == IcmPhase::idle && is_candidate(a); }

std::optional<Port> detect(const LocalView& view, AgentId self) {
  const auto& m1 = view.wb.marked1;
  const auto& m2 = view.wb.marked2;
  if (!m1 || !m2 || m1->port != m2->port) return std::nullopt;
  auto here = [&](AgentId id) { return id == self || view.present(id); };
  if (here(m1->owner) || here(m2->owner)) return std::nullopt;
  return m1->port;
}

Action icm_start(const AgentState& self, Port port, bool own_dfs) {
  Action a;
  a.next = self;
  a.next.icm_phase = IcmPhase::probing;
  a.next.pout = port;
  a.next.icm_own = own_dfs;
  a.next.moved_direct = false;
  a.next.state = DfsState::explore;
  a.wb.push_back(WbOp::write(port, self.id));
  a.move = port;
  return a;
}

Action icm_advance(const AgentState& self, const LocalView& view) {
  Action a;
  a.next = self;
  const bool even = view.round % 2 == 0;
  switch (self.icm_phase) {
    case IcmPhase::idle:
      break;
    case IcmPhase::probing:
      if (even) break;  // resolved in the odd round that follows the attempt
      if (self.success) {
        a.next.icm_phase = IcmPhase::at_far;
      } else {
        // Blocked: the mark goes away and the ICM starts afresh later.
        a.wb.push_back(WbOp::erase(self.id));
        a.next.icm_phase = IcmPhase::idle;
        a.next.retry_port = self.icm_own ? self.pout : kNoPort;
      }
      break;
    case IcmPhase::at_far:
      if (even) {
        a.move = self.pin;
      } else if (self.success) {
        a.next.icm_phase = IcmPhase::deleting;
      }
      break;
    case IcmPhase::deleting:
      if (even) {
        a.wb.push_back(WbOp::erase(self.id));
        a.next.icm_phase = IcmPhase::final_move;
        a.move = self.pout;
      }
      break;
    case IcmPhase::final_move:
      if (even) {
        a.move = self.pout;
      } else if (self.success) {
        a.next.icm_phase = IcmPhase::idle;
        a.next.state = DfsState::explore;
        a.next.retry_port = kNoPort;
        a.next.pout = kNoPort;
      }
      break;
  }
  return a;
}

DfsStep dfs_next(const AgentState& self, const LocalView& view) {
  DfsStep step;
  const auto& t = view.wb.travel;
  const bool mine = t && !t->group && t->owner == self.id && t->epoch == self.epoch;
  auto first_port_after = [&](Port after, Port parent) -> Port {
    for (Port p = after + 1; p < view.degree; ++p)
      if (p != parent) return p;
    return kNoPort;
  };
  if (!mine) {
    const Port parent = (self.state == DfsState::explore && self.pin >= 0) ? self.pin : kNoPort;
    const Port next = first_port_after(kNoPort, parent);
    TravelEntry e{self.id, parent, kNoPort, self.epoch, false};
    if (next != kNoPort) {
      e.recent = next;
      step = {DfsStep::Kind::explore, next, e};
    } else if (parent != kNoPort) {
      e.recent = parent;
      step = {DfsStep::Kind::backtrack, parent, e};
    }
    return step;
  }
  if (self.state == DfsState::explore && self.pin >= 0) {
    // Reached a node of the current traversal over a non-tree edge.
    return {DfsStep::Kind::bounce, self.pin, std::nullopt};
  }
  TravelEntry e = *t;
  const Port next = first_port_after(t->recent, t->parent);
  if (next != kNoPort) {
    e.recent = next;
    return {DfsStep::Kind::explore, next, e};
  }
  if (t->parent != kNoPort) {
    e.recent = t->parent;
    return {DfsStep::Kind::backtrack, t->parent, e};
  }
  return step;
}

namespace {

Action own_dfs(const AgentState& self, const LocalView& view) {
  AgentState me = self;
  if (me.mode != Mode::own_dfs) {
    me.mode = Mode::own_dfs;
    me.follow_id = kNoAgent;
    me.retry_port = kNoPort;
    ++me.epoch;
  }
  if (me.retry_port != kNoPort) return icm_start(me, me.retry_port, true);
  DfsStep s = dfs_next(me, view);
  Action a;
  switch (s.kind) {
    case DfsStep::Kind::explore:
      a = icm_start(me, s.port, true);
      break;
    case DfsStep::Kind::backtrack:
    case DfsStep::Kind::bounce:
      a = direct_move(me, s.port);
      break;
    case DfsStep::Kind::finished:
      return wait(me);
  }
  if (s.write) a.wb.insert(a.wb.begin(), WbOp::set(*s.write));
  return a;
}

Action follow(const AgentState& self, AgentId leader, Port port) {
  AgentState me = self;
  me.mode = Mode::follower;
  me.follow_id = leader;
  me.retry_port = kNoPort;
  Action a = icm_start(me, port, false);
  a.notes.push_back({EventKind::followed, "leader=" + std::to_string(leader)});
  return a;
}

}  // namespace

Action compute_even(const AgentState& self, const LocalView& view) {
  const bool group_seen = view.wb.grp || std::any_of(view.others.begin(), view.others.end(),
                                                     [](const AgentState& o) { return o.grp; });
  // An agent about to make its final ICM crossing has already erased its
  // mark, so it counts toward a group here.
  if (!group_seen && (self.icm_phase == IcmPhase::idle || self.icm_phase == IcmPhase::final_move)) {
    std::vector<AgentId> members{self.id};
    for (const auto& o : view.others)
      if (is_candidate(o) && (o.icm_phase == IcmPhase::idle || o.icm_phase == IcmPhase::final_move))
        members.push_back(o.id);
    if (static_cast<int>(members.size()) >= kGroupSize) {
      std::sort(members.begin(), members.end());
      Action a = rooted::form_group(self, members);
      a.next.icm_phase = IcmPhase::idle;
      return a;
    }
  }
  if (self.icm_phase != IcmPhase::idle) return icm_advance(self, view);
  if (group_seen) return terminate(self);

  std::vector<AgentId> settled_ids{self.id};
  int candidates = 1;
  for (const auto& o : view.others) {
    if (settled(o)) settled_ids.push_back(o.id);
    if (is_candidate(o)) ++candidates;
  }
  std::sort(settled_ids.begin(), settled_ids.end());
  if (auto port = detect(view, self.id)) {
    Action a = wait(self);
    a.declare = *port;
    a.next.mode = Mode::terminated;
    return a;
  }
  if (candidates >= kGroupSize) return wait(self);  // let the mid-ICM agents finish
  if (settled_ids.front() != self.id) return wait(self);

  const auto& m1 = view.wb.marked1;
  const auto& m2 = view.wb.marked2;
  if (m1 && m2) return wait(self);
  const std::optional<MarkEntry> mark = m1 ? m1 : m2;
  if (mark && view.present(mark->owner)) return wait(self);

  AgentId leader = kNoAgent;
  Port via = kNoPort;
  if (mark && mark->owner < self.id) {
    leader = mark->owner;
    via = mark->port;
  }
  const auto& t = view.wb.travel;
  if (t && !t->group && t->owner < self.id && t->recent != kNoPort && (leader == kNoAgent || t->owner < leader)) {
    leader = t->owner;
    via = t->recent;
  }
  if (leader != kNoAgent) return follow(self, leader, via);
  return own_dfs(self, view);
}

Action compute_odd(const AgentState& self, const LocalView& view) {
  if (self.icm_phase != IcmPhase::idle) return icm_advance(self, view);
  Action a = wait(self);
  if (self.moved_direct && self.success) a.next.state = DfsState::backtrack;
  a.next.moved_direct = false;
  return a;
}

Action compute(const AgentState& self, const LocalView& view) {
  if (self.grp) return rooted::compute(self, view);
  return view.round % 2 == 0 ? compute_even(self, view) : compute_odd(self, view);
}

}  // namespace bhs::scattered
