#include "bhs/rooted.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "bhs/scattered.hpp"

namespace bhs::rooted {

namespace {

bool in_group(const AgentState& o, AgentId gid) { return o.grp && o.grp_id == gid; }

bool active_leader(const AgentState& a) { return a.grp && slot_of(a) == kLeader && a.mode != Mode::terminated; }

// Everybody at the node, self included.
std::vector<const AgentState*> everyone(const AgentState& self, const LocalView& view) {
  std::vector<const AgentState*> out{&self};
  for (const auto& o : view.others) out.push_back(&o);
  return out;
}

const AgentState* with_role(const std::vector<const AgentState*>& hs, AgentId gid, int role) {
  for (const auto* a : hs)
    if (in_group(*a, gid) && a->role == role) return a;
  return nullptr;
}

bool present(const std::vector<const AgentState*>& hs, AgentId id) {
  return std::any_of(hs.begin(), hs.end(), [&](const AgentState* a) { return a->id == id; });
}

bool has_mark_of(const Whiteboard& wb, AgentId owner, Port port) {
  return (wb.marked1 && wb.marked1->owner == owner && wb.marked1->port == port) ||
         (wb.marked2 && wb.marked2->owner == owner && wb.marked2->port == port);
}

// Owner of a mark on `port` who is not here: it crossed and has not come back.
AgentId absent_mark_owner(const Whiteboard& wb, Port port, const std::vector<const AgentState*>& hs) {
  for (const auto& m : {wb.marked1, wb.marked2})
    if (m && m->port == port && !present(hs, m->owner)) return m->owner;
  return kNoAgent;
}

bool must_yield(AgentId gid, const LocalView& view) {
  if (view.wb.grp && view.wb.grp_id < gid) return true;
  return std::any_of(view.others.begin(), view.others.end(), [&](const AgentState& o) {
    return o.grp && o.grp_id < gid && o.mode != Mode::terminated;
  });
}

// Ports handed out this round to the teams of group `gid` that are ready to
// leave, in team order, skipping ports some team at the node is still busy on.
struct Rotor {
  std::vector<std::pair<int, Port>> picks;  // (leader rank, port)
  Port last = kNoPort;
};

Rotor hand_out(const std::vector<const AgentState*>& hs, AgentId gid, const LocalView& view) {
  Rotor r;
  const int degree = view.degree;
  if (degree <= 0) return r;
  std::vector<bool> busy(degree, false);
  for (const auto* a : hs)
    if (active_leader(*a) && a->gphase != GroupPhase::select && a->gport >= 0 && a->gport < degree)
      busy[a->gport] = true;
  const auto& t = view.wb.travel;
  Port ptr = t && t->group && t->owner == gid ? t->recent : kNoPort;

  std::vector<const AgentState*> ready;
  for (const auto* a : hs)
    if (in_group(*a, gid) && active_leader(*a) && a->gphase == GroupPhase::select &&
        with_role(hs, gid, a->role + kHelper1) && with_role(hs, gid, a->role + kHelper2))
      ready.push_back(a);
  std::sort(ready.begin(), ready.end(), [](const AgentState* x, const AgentState* y) { return x->role < y->role; });

  for (const auto* L : ready) {
    for (int k = 1; k <= degree; ++k) {
      const Port p = static_cast<Port>((ptr + k) % degree);
      if (busy[p]) continue;
      busy[p] = true;
      ptr = p;
      r.picks.push_back({L->role, p});
      break;
    }
  }
  r.last = ptr;
  return r;
}

// Decision of one team at its leader's node, shared by every member there.
struct Plan {
  AgentState g;  // leader's state after the round; team fields are copied from it
  bool stop = false;
  std::optional<Port> declare;
  std::optional<Port> h1_cross;
  std::optional<Port> h2_cross;
  std::optional<Port> all_move;
  std::optional<TravelEntry> travel;
  bool stamp = false;
};

Plan make_plan(const AgentState& self, const AgentState& L, const LocalView& view,
               const std::vector<const AgentState*>& hs) {
  Plan p;
  p.g = L;
  const AgentId gid = L.grp_id;
  const AgentState* h1 = with_role(hs, gid, L.role + kHelper1);
  const AgentState* h2 = with_role(hs, gid, L.role + kHelper2);

  if (L.gphase == GroupPhase::select && must_yield(gid, view)) {
    p.stop = true;
    return p;
  }
  if (auto port = scattered::detect(view, self.id)) {
    p.declare = *port;
    return p;
  }

  // The lowest-ranked active leader of the group writes for everybody here.
  const AgentState* writer = nullptr;
  for (const auto* a : hs)
    if (in_group(*a, gid) && active_leader(*a) && (!writer || a->role < writer->role)) writer = a;
  const bool is_writer = writer && writer->role == L.role;
  if (is_writer && (!view.wb.grp || view.wb.grp_id > gid)) p.stamp = true;
  const Rotor r = hand_out(hs, gid, view);
  // Only one travel write per node per round: a larger group never writes next to a smaller one.
  if (is_writer && !r.picks.empty() && !must_yield(gid, view)) p.travel = TravelEntry{gid, kNoPort, r.last, 0, true};

  switch (L.gphase) {
    case GroupPhase::select: {
      for (auto [role, port] : r.picks) {
        if (role != L.role) continue;
        p.h1_cross = port;
        p.g.gphase = GroupPhase::probe;
        p.g.gport = port;
        p.g.gwatch = absent_mark_owner(view.wb, port, hs);
      }
      break;
    }
    case GroupPhase::probe:
      if (h1 && h1->hphase == HelperPhase::home) {
        p.h1_cross = L.gport;  // blocked: try again
        p.g.gwatch = absent_mark_owner(view.wb, L.gport, hs);
      } else if (h1) {
        p.all_move = L.gport;
        p.g.gphase = GroupPhase::move;
      } else if (L.gwatch != kNoAgent && !present(hs, L.gwatch) && has_mark_of(view.wb, L.gwatch, L.gport)) {
        // h1 crossed while the mark's owner, alive, would have crossed back.
        p.declare = L.gport;
      } else if (h2) {
        p.h2_cross = L.gport;
        p.g.gphase = GroupPhase::confirm;
      }
      break;
    case GroupPhase::confirm:
      if (h2) {
        p.h2_cross = L.gport;  // blocked together with h1's return: try again
      } else if (h1) {
        p.all_move = L.gport;
        p.g.gphase = GroupPhase::move;
      } else {
        p.declare = L.gport;
      }
      break;
    case GroupPhase::move:
      p.all_move = L.gport;
      break;
  }
  return p;
}

Action stay(const AgentState& self) {
  Action a;
  a.next = self;
  return a;
}

Action even_away(const AgentState& self) {
  Action a = stay(self);
  if (slot_of(self) == kHelper1 && self.hphase == HelperPhase::out) {
    a.move = self.pin;
    a.next.icm_phase = IcmPhase::at_far;
  }
  return a;
}

Action even(const AgentState& self, const LocalView& view) {
  const auto hs = everyone(self, view);
  const AgentState* L = with_role(hs, self.grp_id, team_of(self) * kTeamSize + kLeader);
  if (!L) return even_away(self);

  Action a = stay(self);
  if (L->mode == Mode::terminated) {
    a.next.mode = Mode::terminated;
    return a;
  }
  const Plan p = make_plan(self, *L, view, hs);
  a.next.gphase = p.g.gphase;
  a.next.gport = p.g.gport;
  a.next.gwatch = p.g.gwatch;

  if (p.stop) {
    a.next.mode = Mode::terminated;
    return a;
  }
  const int slot = slot_of(self);
  if (p.declare) {
    if (slot == kLeader) {
      a.declare = p.declare;
      a.next.mode = Mode::terminated;
    }
    return a;
  }
  if (slot == kLeader) {
    if (p.stamp) a.wb.push_back(WbOp::stamp(self.grp_id));
    if (p.travel) a.wb.push_back(WbOp::set(*p.travel));
  }
  const std::optional<Port> cross = slot == kHelper1 ? p.h1_cross : slot == kHelper2 ? p.h2_cross : std::nullopt;
  if (cross) {
    a.move = *cross;
    a.next.icm_phase = IcmPhase::probing;
    return a;
  }
  a.next.hphase = HelperPhase::home;
  if (p.all_move) {
    a.move = *p.all_move;
    a.next.moved_direct = true;
  }
  return a;
}

Action odd(const AgentState& self) {
  Action a = stay(self);
  auto& n = a.next;
  switch (self.icm_phase) {
    case IcmPhase::probing:
      n.icm_phase = IcmPhase::idle;
      if (self.success)
        n.hphase = slot_of(self) == kHelper1 ? HelperPhase::out : HelperPhase::parked;
      else
        n.hphase = HelperPhase::home;
      return a;
    case IcmPhase::at_far:
      n.icm_phase = IcmPhase::idle;
      if (self.success) n.hphase = HelperPhase::back;
      return a;
    default:
      break;
  }
  if (self.moved_direct) {
    n.moved_direct = false;
    if (self.success) n.gphase = GroupPhase::select;
  }
  return a;
}

}  // namespace

Action form_group(const AgentState& self, const std::vector<AgentId>& members) {
  Action a;
  auto& n = a.next;
  n = self;
  n.grp = true;
  n.grp_id = members.front();
  n.mode = Mode::group_member;
  n.role = 0;
  for (std::size_t i = 0; i < members.size(); ++i)
    if (members[i] == self.id) n.role = static_cast<int>(i);
  const int teams = static_cast<int>(members.size()) / kTeamSize;
  if (n.role >= teams * kTeamSize) n.mode = Mode::terminated;
  n.gphase = GroupPhase::select;
  n.gport = kNoPort;
  n.gwatch = kNoAgent;
  n.hphase = HelperPhase::home;
  n.moved_direct = false;
  a.notes.push_back({EventKind::group_formed,
                     "grp_id=" + std::to_string(n.grp_id) + " size=" + std::to_string(members.size())});
  return a;
}

Action compute(const AgentState& self, const LocalView& view) {
  return view.round % 2 == 0 ? even(self, view) : odd(self);
}

Action standalone(const AgentState& self, const LocalView& view) {
  if (self.grp) return compute(self, view);
  std::vector<AgentId> members{self.id};
  for (const auto& o : view.others) members.push_back(o.id);
  std::sort(members.begin(), members.end());
  return form_group(self, members);
}

bool leader_lost(const std::vector<AgentId>& dead, const std::vector<AgentId>& ids) {
  std::vector<AgentId> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t teams = sorted.size() / kTeamSize;
  for (std::size_t t = 0; t < teams; ++t)
    if (std::find(dead.begin(), dead.end(), sorted[t * kTeamSize + kLeader]) != dead.end()) return true;
  return false;
}

}  // namespace bhs::rooted
