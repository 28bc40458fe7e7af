// Arrow diagrams in the annulus as slice sequences.
//
// The annulus is cut along a radius and the diagram is read in the S^1
// direction as a list of events acting on the strands that cross the current
// radial slice. Positions are 1-based from the inner boundary. The closure
// glues position j after the last event to position j before the first.
//
//   cap i        new arc whose ends become strands i, i+1
//   cup i        strands i, i+1 joined and removed
//   x+ i, x- i   crossing of strands i, i+1
//   a+ i, a- i   arrow on strand i, pointing along (+) or against (-) S^1
#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kbsm/error.hpp"
#include "kbsm/laurent.hpp"

namespace kbsm {

enum class EventKind { Cap, Cup, CrossPos, CrossNeg, Arrow };

struct Event {
  EventKind kind = EventKind::Arrow;
  int pos = 1;
  int sign = 0;  // +1 or -1 for arrows, 0 otherwise

  static Event cap(int i) { return {EventKind::Cap, i, 0}; }
  static Event cup(int i) { return {EventKind::Cup, i, 0}; }
  static Event cross_pos(int i) { return {EventKind::CrossPos, i, 0}; }
  static Event cross_neg(int i) { return {EventKind::CrossNeg, i, 0}; }
  static Event cross(int i, int sign) { return sign > 0 ? cross_pos(i) : cross_neg(i); }
  static Event arrow(int i, int sign) { return {EventKind::Arrow, i, sign > 0 ? 1 : -1}; }

  bool is_crossing() const { return kind == EventKind::CrossPos || kind == EventKind::CrossNeg; }
  int crossing_sign() const { return kind == EventKind::CrossPos ? 1 : kind == EventKind::CrossNeg ? -1 : 0; }
  /// Strands consumed below and produced above the event's block.
  int in_width() const { return kind == EventKind::Cap ? 0 : kind == EventKind::Arrow ? 1 : 2; }
  int out_width() const { return kind == EventKind::Cup ? 0 : kind == EventKind::Arrow ? 1 : 2; }

  std::string str() const {
    switch (kind) {
      case EventKind::Cap: return "cap " + std::to_string(pos);
      case EventKind::Cup: return "cup " + std::to_string(pos);
      case EventKind::CrossPos: return "x+ " + std::to_string(pos);
      case EventKind::CrossNeg: return "x- " + std::to_string(pos);
      case EventKind::Arrow: return std::string(sign > 0 ? "a+ " : "a- ") + std::to_string(pos);
    }
    return {};
  }
  friend bool operator==(const Event&, const Event&) = default;
};

struct SliceDiagram {
  int base_strands = 0;
  std::vector<Event> events;

  std::size_t crossing_count() const {
    return static_cast<std::size_t>(std::count_if(events.begin(), events.end(), [](const Event& e) { return e.is_crossing(); }));
  }

  /// Strand counts of the slices: entry s lies before event s, the last entry after all events.
  std::vector<int> strand_counts() const {
    std::vector<int> n{base_strands};
    for (const auto& e : events) n.push_back(n.back() + e.out_width() - e.in_width());
    return n;
  }

  /// File form: "strands k" then one event per line.
  std::string str() const {
    std::string out = "strands " + std::to_string(base_strands) + "\n";
    for (const auto& e : events) out += e.str() + "\n";
    return out;
  }

  /// Parses the file form. Blank lines and text after '#' are ignored.
  static SliceDiagram parse(std::string_view text) {
    SliceDiagram d;
    bool have_header = false;
    std::size_t line_start = 0;
    while (line_start <= text.size()) {
      std::size_t end = text.find('\n', line_start);
      if (end == std::string_view::npos) end = text.size();
      std::string line(text.substr(line_start, end - line_start));
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream in(line);
      std::string word;
      if (in >> word) {
        long long value = 0;
        std::string extra;
        if (!(in >> value)) throw ParseError("diagram: expected an integer after '" + word + "'", line_start);
        if (in >> extra) throw ParseError("diagram: trailing text '" + extra + "'", line_start);
        if (value < -1000000 || value > 1000000) throw ParseError("diagram: integer out of range", line_start);
        const int v = static_cast<int>(value);
        if (!have_header) {
          if (word != "strands") throw ParseError("diagram: expected 'strands <k>' first", line_start);
          if (v < 0) throw ParseError("diagram: negative strand count", line_start);
          d.base_strands = v;
          have_header = true;
        } else if (word == "cap") {
          d.events.push_back(Event::cap(v));
        } else if (word == "cup") {
          d.events.push_back(Event::cup(v));
        } else if (word == "x+") {
          d.events.push_back(Event::cross_pos(v));
        } else if (word == "x-") {
          d.events.push_back(Event::cross_neg(v));
        } else if (word == "a+") {
          d.events.push_back(Event::arrow(v, 1));
        } else if (word == "a-") {
          d.events.push_back(Event::arrow(v, -1));
        } else {
          throw ParseError("diagram: unknown event '" + word + "'", line_start);
        }
      }
      line_start = end + 1;
    }
    if (!have_header) throw ParseError("diagram: missing 'strands <k>' line", 0);
    return d;
  }

  friend bool operator==(const SliceDiagram&, const SliceDiagram&) = default;
};

struct ValidationIssue {
  enum class Kind { StrandCountMismatch, EventOutOfRange };
  Kind kind;
  std::size_t event;  // offending event index, or events.size() for the closure
  std::string message;
};

/// Empty when the diagram is well formed; otherwise the first problem found.
inline std::vector<ValidationIssue> validate(const SliceDiagram& d) {
  using K = ValidationIssue::Kind;
  if (d.base_strands < 0) return {{K::StrandCountMismatch, 0, "negative strand count"}};
  int n = d.base_strands;
  for (std::size_t i = 0; i < d.events.size(); ++i) {
    const Event& e = d.events[i];
    const std::string where = "event " + std::to_string(i) + " (" + e.str() + ")";
    if (e.kind == EventKind::Cup && n < 2)
      return {{K::StrandCountMismatch, i, where + ": removes strands below zero"}};
    if (e.kind == EventKind::Arrow && e.sign != 1 && e.sign != -1)
      return {{K::EventOutOfRange, i, where + ": arrow sign must be +1 or -1"}};
    const int top = e.kind == EventKind::Cap ? n + 1 : n - e.in_width() + 1;
    if (e.pos < 1 || e.pos > top)
      return {{K::EventOutOfRange, i, where + ": position outside 1.." + std::to_string(top)}};
    n += e.out_width() - e.in_width();
  }
  if (n != d.base_strands)
    return {{K::StrandCountMismatch, d.events.size(),
             "closure: " + std::to_string(n) + " strands at the end, " + std::to_string(d.base_strands) + " at the start"}};
  return {};
}

inline void require_valid(const SliceDiagram& d) {
  auto issues = validate(d);
  if (!issues.empty()) throw DiagramError("invalid diagram: " + issues.front().message);
}

// ---------------------------------------------------------------------------
// Crossingless diagrams

/// A trivial circle with the circles directly inside it.
struct CircleTree {
  int net = 0;
  std::vector<CircleTree> children;  // sorted

  friend std::strong_ordering operator<=>(const CircleTree& a, const CircleTree& b) {
    if (auto c = a.net <=> b.net; c != 0) return c;
    return std::lexicographical_compare_three_way(a.children.begin(), a.children.end(), b.children.begin(),
                                                  b.children.end());
  }
  friend bool operator==(const CircleTree&, const CircleTree&) = default;

  std::string str() const {
    std::string s = std::to_string(net);
    if (!children.empty()) {
      s += '(';
      for (std::size_t i = 0; i < children.size(); ++i) {
        if (i) s += ' ';
        s += children[i].str();
      }
      s += ')';
    }
    return s;
  }
};

/// Essential curves inner to outer with their net arrows, and the forest of
/// trivial circles in each of the essential.size() + 1 regions.
struct CrosslessDiagram {
  std::vector<int> essential;
  std::vector<std::vector<CircleTree>> regions{1};

  void canonicalize() {
    for (auto& r : regions) sort_forest(r);
  }

  /// Deletes arrowless circles with nothing inside, repeatedly. Returns how many went.
  int strip_null_circles() {
    int removed = 0;
    for (auto& r : regions) removed += strip(r);
    return removed;
  }

  std::size_t circle_count() const {
    std::size_t n = 0;
    for (const auto& r : regions) n += count(r);
    return n;
  }

  /// e.g. "[0 | 1(2) | ]": regions separated by essential nets.
  std::string str() const {
    std::string s = "[";
    for (std::size_t g = 0; g < regions.size(); ++g) {
      if (g) s += " |" + std::to_string(essential[g - 1]) + "| ";
      for (std::size_t i = 0; i < regions[g].size(); ++i) {
        if (i) s += ' ';
        s += regions[g][i].str();
      }
    }
    return s + "]";
  }

  friend std::strong_ordering operator<=>(const CrosslessDiagram&, const CrosslessDiagram&) = default;
  friend bool operator==(const CrosslessDiagram&, const CrosslessDiagram&) = default;

 private:
  static void sort_forest(std::vector<CircleTree>& f) {
    for (auto& t : f) sort_forest(t.children);
    std::sort(f.begin(), f.end());
  }
  static int strip(std::vector<CircleTree>& f) {
    int removed = 0;
    for (auto& t : f) removed += strip(t.children);
    const auto before = f.size();
    std::erase_if(f, [](const CircleTree& t) { return t.net == 0 && t.children.empty(); });
    return removed + static_cast<int>(before - f.size());
  }
  static std::size_t count(const std::vector<CircleTree>& f) {
    std::size_t n = f.size();
    for (const auto& t : f) n += count(t.children);
    return n;
  }
};

/// One closed curve of a crossingless diagram.
struct TracedCurve {
  int winding = 0;  // signed number of passes through the closure, in traversal order
  int net = 0;      // net arrows under the orientation convention
  std::vector<std::pair<int, int>> segments;  // (slice, position) pairs visited
  bool essential() const { return winding != 0; }
};

namespace detail {

// Curve tracing through a crossingless event list. Segment (s, p) is strand p
// of slice s; it is drawn from (4s+1, 2p) to (4s+3, 2p) in the plane of
// (S^1 coordinate, radial coordinate), lifted to the universal cover so that
// trivial circles close up and their orientation is the sign of their area.
class Tracer {
 public:
  explicit Tracer(const SliceDiagram& d) : d_(d), E_(static_cast<int>(d.events.size())) {
    counts_ = d.strand_counts();
    offset_.assign(counts_.size(), 0);
    for (int s = 0; s + 1 < static_cast<int>(counts_.size()); ++s) offset_[s + 1] = offset_[s] + counts_[s];
    const int total = E_ == 0 ? d.base_strands : offset_[E_];
    next_right_.assign(total, Link{});
    next_left_.assign(total, Link{});
    if (E_ > 0) build();
  }

  std::vector<TracedCurve> curves() {
    std::vector<TracedCurve> out;
    if (E_ == 0) {
      for (int p = 1; p <= d_.base_strands; ++p) out.push_back({1, 0, {{0, p}}});
      return out;
    }
    std::vector<char> seen(next_right_.size(), 0);
    for (int s = 0; s < E_; ++s) {
      for (int p = 1; p <= counts_[s]; ++p) {
        if (seen[id(s, p)]) continue;
        out.push_back(trace(s, p, seen));
      }
    }
    return out;
  }

 private:
  struct Link {
    int seg = -1;
    bool at_left = false;  // which end of the target segment is reached
    int arrow = 0;         // arrow met on the way, signed by the direction of travel
    int wrap = 0;          // +1 / -1 when the link crosses the closure in +S^1 / -S^1
  };

  int id(int s, int p) const { return offset_[s] + p - 1; }
  int slice_of(int seg) const {
    return static_cast<int>(std::upper_bound(offset_.begin(), offset_.begin() + E_, seg) - offset_.begin()) - 1;
  }

  void build() {
    for (int s = 0; s < E_; ++s) {
      const Event& e = d_.events[s];
      const int t = (s + 1) % E_;
      const int wrap = s + 1 == E_ ? 1 : 0;
      const int n = counts_[s];
      auto pass = [&](int p, int q, int arrow) {
        next_right_[id(s, p)] = {id(t, q), true, arrow, wrap};
        next_left_[id(t, q)] = {id(s, p), false, -arrow, -wrap};
      };
      const int shift = e.out_width() - e.in_width();
      for (int p = 1; p <= n; ++p) {
        if (p < e.pos) pass(p, p, 0);
        else if (p >= e.pos + e.in_width()) pass(p, p + shift, 0);
      }
      switch (e.kind) {
        case EventKind::Arrow: pass(e.pos, e.pos, e.sign); break;
        case EventKind::Cap:
          next_left_[id(t, e.pos)] = {id(t, e.pos + 1), true, 0, 0};
          next_left_[id(t, e.pos + 1)] = {id(t, e.pos), true, 0, 0};
          break;
        case EventKind::Cup:
          next_right_[id(s, e.pos)] = {id(s, e.pos + 1), false, 0, 0};
          next_right_[id(s, e.pos + 1)] = {id(s, e.pos), false, 0, 0};
          break;
        default: throw DiagramError("tracing requires a crossingless diagram");
      }
    }
  }

  TracedCurve trace(int s0, int p0, std::vector<char>& seen) {
    TracedCurve c;
    const int start = id(s0, p0);
    const long long period = 4LL * E_;
    long long shift = 0;  // lift of the S^1 coordinate
    long long twice_area = 0;
    long long px = 0, py = 0, fx = 0, fy = 0;
    bool first = true;
    auto vertex = [&](long long x, long long y) {
      if (first) {
        fx = x;
        fy = y;
        first = false;
      } else {
        twice_area += px * y - x * py;
      }
      px = x;
      py = y;
    };
    int arrows = 0;
    int seg = start;
    bool forward = true;  // entered at the left end
    do {
      seen[seg] = 1;
      const int s = slice_of(seg);
      const int p = seg - offset_[s] + 1;
      c.segments.emplace_back(s, p);
      const long long xl = 4LL * s + 1 + shift, xr = 4LL * s + 3 + shift, y = 2LL * p;
      vertex(forward ? xl : xr, y);
      vertex(forward ? xr : xl, y);
      const Link& l = forward ? next_right_[seg] : next_left_[seg];
      arrows += l.arrow;
      c.winding += l.wrap;
      shift += period * l.wrap;
      seg = l.seg;
      forward = l.at_left;
    } while (!(seg == start && forward));
    twice_area += px * fy - fx * py;
    if (c.winding != 0) {
      c.net = c.winding > 0 ? arrows : -arrows;
    } else {
      // Trivial circles are oriented counterclockwise in the strip picture
      // (S^1 to the right, radius upwards), i.e. with positive area.
      c.net = twice_area > 0 ? arrows : -arrows;
    }
    return c;
  }

  const SliceDiagram& d_;
  int E_;
  std::vector<int> counts_;
  std::vector<int> offset_;
  std::vector<Link> next_right_, next_left_;
};

}  // namespace detail

}  // namespace kbsm
