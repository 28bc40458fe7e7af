// Local moves on slice diagrams that preserve the skein class, and the skein
// triple of a crossing.
#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "kbsm/diagram.hpp"
#include "kbsm/error.hpp"

namespace kbsm {

enum class Move { FramedKinkPair, R2, R3, ArrowCancel, ArrowSlide, EventCommute };

inline const char* move_name(Move m) {
  switch (m) {
    case Move::FramedKinkPair: return "FramedKinkPair";
    case Move::R2: return "R2";
    case Move::R3: return "R3";
    case Move::ArrowCancel: return "ArrowCancel";
    case Move::ArrowSlide: return "ArrowSlide";
    case Move::EventCommute: return "EventCommute";
  }
  return "?";
}

inline constexpr std::array<Move, 6> all_moves{Move::FramedKinkPair, Move::R2,         Move::R3,
                                               Move::ArrowCancel,    Move::ArrowSlide, Move::EventCommute};

/// Where a move acts. For insertions `index` is the slice (the gap before
/// event `index`) and `position` the strand; for the other moves `index` is the
/// first event of the matched pattern.
struct MoveSite {
  std::size_t index = 0;
  int position = 1;
  int sign = 1;  // orientation of inserted crossings or arrows
  bool insert = true;

  std::string str() const {
    return std::string(insert ? "insert" : "at") + " index=" + std::to_string(index) +
           " position=" + std::to_string(position) + " sign=" + std::to_string(sign);
  }
  friend bool operator==(const MoveSite&, const MoveSite&) = default;
};

namespace detail {

inline bool opposite_crossings(const Event& a, const Event& b) {
  return a.is_crossing() && b.is_crossing() && a.pos == b.pos && a.kind != b.kind;
}
inline bool opposite_arrows(const Event& a, const Event& b) {
  return a.kind == EventKind::Arrow && b.kind == EventKind::Arrow && a.pos == b.pos && a.sign == -b.sign;
}

inline std::vector<Event> kink_pair(int p, int sign) {
  return {Event::cap(p), Event::cross(p, sign),  Event::cup(p + 1),
          Event::cap(p), Event::cross(p, -sign), Event::cup(p + 1)};
}

inline bool kink_pair_at(const std::vector<Event>& ev, std::size_t i) {
  if (i + 6 > ev.size() || !ev[i + 1].is_crossing()) return false;
  const int p = ev[i].pos;
  auto want = kink_pair(p, ev[i + 1].crossing_sign());
  return std::equal(want.begin(), want.end(), ev.begin() + static_cast<std::ptrdiff_t>(i));
}

// s_i^a s_{i+1}^b s_i^c = s_{i+1}^c s_i^b s_{i+1}^a holds when b equals a or c.
inline bool r3_at(const std::vector<Event>& ev, std::size_t i) {
  if (i + 3 > ev.size()) return false;
  const Event &a = ev[i], &b = ev[i + 1], &c = ev[i + 2];
  if (!a.is_crossing() || !b.is_crossing() || !c.is_crossing()) return false;
  if (a.pos != c.pos || (b.pos != a.pos + 1 && b.pos != a.pos - 1)) return false;
  return a.kind == b.kind || b.kind == c.kind;
}

// Disjoint consecutive events: 1 if the second sits above the first, -1 if below, 0 otherwise.
inline int commute_side(const Event& e1, const Event& e2) {
  if (e2.pos >= e1.pos + e1.out_width()) return 1;
  if (e2.pos + e2.in_width() <= e1.pos) return -1;
  return 0;
}

// Arrow at `i` next to a cap before it or a cup after it, on one of its legs.
inline bool slide_at(const std::vector<Event>& ev, std::size_t i) {
  if (i >= ev.size() || ev[i].kind != EventKind::Arrow) return false;
  const int p = ev[i].pos;
  if (i > 0 && ev[i - 1].kind == EventKind::Cap && (p == ev[i - 1].pos || p == ev[i - 1].pos + 1)) return true;
  if (i + 1 < ev.size() && ev[i + 1].kind == EventKind::Cup && (p == ev[i + 1].pos || p == ev[i + 1].pos + 1))
    return true;
  return false;
}

[[noreturn]] inline void not_applicable(Move m, const MoveSite& s, const std::string& why) {
  throw MoveNotApplicable(std::string(move_name(m)) + " " + s.str() + ": " + why);
}

inline void check_insert_site(const SliceDiagram& d, Move m, const MoveSite& s, int need) {
  if (s.index > d.events.size()) not_applicable(m, s, "slice index out of range");
  const int n = d.strand_counts()[s.index];
  if (s.position < 1 || s.position + need - 1 > n) not_applicable(m, s, "no such strand");
}

}  // namespace detail

/// Applies a move; throws MoveNotApplicable if the site does not fit.
///   FramedKinkPair  insert or delete a positive and a negative kink on one strand
///   R2              insert or delete two opposite crossings of the same strands
///   R3              replace a braid-relation triple by its other side
///   ArrowCancel     insert or delete two opposite arrows on one strand
///   ArrowSlide      move an arrow around the turn of the adjacent cap or cup
///   EventCommute    swap two consecutive events on disjoint strands
inline SliceDiagram apply_move(const SliceDiagram& d, Move m, const MoveSite& s) {
  using namespace detail;
  SliceDiagram out = d;
  auto& ev = out.events;
  const auto at = [&](std::size_t i) { return ev.begin() + static_cast<std::ptrdiff_t>(i); };
  switch (m) {
    case Move::FramedKinkPair:
      if (s.insert) {
        check_insert_site(d, m, s, 1);
        auto ins = kink_pair(s.position, s.sign);
        ev.insert(at(s.index), ins.begin(), ins.end());
      } else {
        if (!kink_pair_at(ev, s.index)) not_applicable(m, s, "no kink pair here");
        ev.erase(at(s.index), at(s.index + 6));
      }
      break;
    case Move::R2:
      if (s.insert) {
        check_insert_site(d, m, s, 2);
        ev.insert(at(s.index), {Event::cross(s.position, s.sign), Event::cross(s.position, -s.sign)});
      } else {
        if (s.index + 1 >= ev.size() || !opposite_crossings(ev[s.index], ev[s.index + 1]))
          not_applicable(m, s, "no opposite crossing pair here");
        ev.erase(at(s.index), at(s.index + 2));
      }
      break;
    case Move::R3: {
      if (!r3_at(ev, s.index)) not_applicable(m, s, "no braid triple here");
      const Event a = ev[s.index], b = ev[s.index + 1], c = ev[s.index + 2];
      ev[s.index] = {c.kind, b.pos, 0};
      ev[s.index + 1] = {b.kind, a.pos, 0};
      ev[s.index + 2] = {a.kind, b.pos, 0};
      break;
    }
    case Move::ArrowCancel:
      if (s.insert) {
        check_insert_site(d, m, s, 1);
        ev.insert(at(s.index), {Event::arrow(s.position, s.sign), Event::arrow(s.position, -s.sign)});
      } else {
        if (s.index + 1 >= ev.size() || !opposite_arrows(ev[s.index], ev[s.index + 1]))
          not_applicable(m, s, "no opposite arrow pair here");
        ev.erase(at(s.index), at(s.index + 2));
      }
      break;
    case Move::ArrowSlide: {
      if (!slide_at(ev, s.index)) not_applicable(m, s, "no arrow beside a cap or cup");
      Event& a = ev[s.index];
      const bool by_cap = s.index > 0 && ev[s.index - 1].kind == EventKind::Cap &&
                          (a.pos == ev[s.index - 1].pos || a.pos == ev[s.index - 1].pos + 1);
      const int base = by_cap ? ev[s.index - 1].pos : ev[s.index + 1].pos;
      a.pos = a.pos == base ? base + 1 : base;
      a.sign = -a.sign;
      break;
    }
    case Move::EventCommute: {
      if (s.index + 1 >= ev.size()) not_applicable(m, s, "needs two events");
      Event e1 = ev[s.index], e2 = ev[s.index + 1];
      const int side = commute_side(e1, e2);
      if (side == 0) not_applicable(m, s, "events share a strand");
      if (side > 0) {
        e2.pos += e1.in_width() - e1.out_width();
      } else {
        e1.pos += e2.out_width() - e2.in_width();
      }
      ev[s.index] = e2;
      ev[s.index + 1] = e1;
      break;
    }
  }
  return out;
}

/// Every site at which the move applies, insertions of both signs included.
inline std::vector<MoveSite> move_sites(const SliceDiagram& d, Move m) {
  using namespace detail;
  std::vector<MoveSite> out;
  const auto& ev = d.events;
  const auto counts = d.strand_counts();
  auto insertions = [&](int width) {
    for (std::size_t s = 0; s < counts.size(); ++s)
      for (int p = 1; p + width - 1 <= counts[s]; ++p)
        for (int sign : {1, -1}) out.push_back({s, p, sign, true});
  };
  switch (m) {
    case Move::FramedKinkPair:
      insertions(1);
      for (std::size_t i = 0; i < ev.size(); ++i)
        if (kink_pair_at(ev, i)) out.push_back({i, 0, 0, false});
      break;
    case Move::R2:
      insertions(2);
      for (std::size_t i = 0; i + 1 < ev.size(); ++i)
        if (opposite_crossings(ev[i], ev[i + 1])) out.push_back({i, 0, 0, false});
      break;
    case Move::R3:
      for (std::size_t i = 0; i < ev.size(); ++i)
        if (r3_at(ev, i)) out.push_back({i, 0, 0, false});
      break;
    case Move::ArrowCancel:
      insertions(1);
      for (std::size_t i = 0; i + 1 < ev.size(); ++i)
        if (opposite_arrows(ev[i], ev[i + 1])) out.push_back({i, 0, 0, false});
      break;
    case Move::ArrowSlide:
      for (std::size_t i = 0; i < ev.size(); ++i)
        if (slide_at(ev, i)) out.push_back({i, 0, 0, false});
      break;
    case Move::EventCommute:
      for (std::size_t i = 0; i + 1 < ev.size(); ++i)
        if (commute_side(ev[i], ev[i + 1]) != 0) out.push_back({i, 0, 0, false});
      break;
  }
  return out;
}

struct SkeinTriple {
  SliceDiagram plus;      // the crossing made positive
  SliceDiagram zero;      // its A-smoothing
  SliceDiagram infinity;  // its A^-1-smoothing
};

/// Skein triple at the crossing with the given 0-based ordinal among crossings.
/// plus = A * zero + A^-1 * infinity in the skein module.
inline SkeinTriple skein_triple(const SliceDiagram& d, std::size_t crossing) {
  std::size_t seen = 0;
  for (std::size_t i = 0; i < d.events.size(); ++i) {
    if (!d.events[i].is_crossing()) continue;
    if (seen++ != crossing) continue;
    const int p = d.events[i].pos;
    const auto at = [](SliceDiagram& x, std::size_t j) { return x.events.begin() + static_cast<std::ptrdiff_t>(j); };
    SkeinTriple t{d, d, d};
    t.plus.events[i] = Event::cross_pos(p);
    t.zero.events[i] = Event::cup(p);
    t.zero.events.insert(at(t.zero, i + 1), Event::cap(p));
    t.infinity.events.erase(at(t.infinity, i));
    return t;
  }
  throw NotACrossing("diagram has " + std::to_string(seen) + " crossings, index " + std::to_string(crossing) +
                     " requested");
}

}  // namespace kbsm
