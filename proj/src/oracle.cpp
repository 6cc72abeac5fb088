// Brute-force reachability over full scheduler states. Kept independent of
// the greedy engine in dance.cpp: move semantics are re-derived here from
// the code and the rule, over per-segment progress counts.

#include <cstdint>
#include <deque>
#include <unordered_map>
#include <vector>

#include "knotdance/dance.hpp"

namespace knotdance {

namespace {

using State = std::vector<std::uint8_t>;

struct StateHash {
  size_t operator()(const State& s) const {
    size_t h = 1469598103934665603ull;
    for (std::uint8_t b : s) {
      h ^= b;
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct Step {
  int seg = -1;
  int seg2 = -1;  // set for rendezvous
};

struct SegmentMap {
  std::vector<int> start;   // per segment
  std::vector<int> len;     // per segment
  std::vector<int> seg_of;  // per passage
  std::vector<int> offset;  // per passage, position within its segment

  SegmentMap(const DiagramCode& code, const Configuration& config) {
    const int L = code.length();
    const auto& starts = config.starts();
    const int n = static_cast<int>(starts.size());
    start = starts;
    len.resize(static_cast<size_t>(n));
    seg_of.assign(static_cast<size_t>(L), -1);
    offset.assign(static_cast<size_t>(L), -1);
    for (int i = 0; i < n; ++i) {
      const int next = starts[static_cast<size_t>((i + 1) % n)];
      // The single segment of a lone dancer is the whole circle.
      len[static_cast<size_t>(i)] = n == 1 ? L : (next - starts[static_cast<size_t>(i)] + L) % L;
      for (int k = 0; k < len[static_cast<size_t>(i)]; ++k) {
        const int j = (starts[static_cast<size_t>(i)] + k) % L;
        seg_of[static_cast<size_t>(j)] = i;
        offset[static_cast<size_t>(j)] = k;
      }
    }
  }

  int frontier(int seg, const State& counts) const {
    const int L = static_cast<int>(seg_of.size());
    return (start[static_cast<size_t>(seg)] + counts[static_cast<size_t>(seg)]) % L;
  }
};

}  // namespace

std::optional<Trace> oracle_try_dance(const DiagramCode& code, const Configuration& config,
                                      std::size_t state_limit) {
  config.check_against(code);
  if (code.empty()) return Trace(config, {});
  if (code.length() > 255)
    throw ResourceLimit("oracle states use 8-bit progress counters, code length " +
                        std::to_string(code.length()) + " exceeds 255");

  const Rule rule = config.rule();
  const SegmentMap seg(code, config);
  const int n = config.dancers();

  const auto consumed = [&](const State& counts, int passage) {
    return counts[static_cast<size_t>(seg.seg_of[static_cast<size_t>(passage)])] >
           seg.offset[static_cast<size_t>(passage)];
  };

  const auto step_options = [&](const State& counts) {
    std::vector<Step> out;
    for (int i = 0; i < n; ++i) {
      if (counts[static_cast<size_t>(i)] >= seg.len[static_cast<size_t>(i)]) continue;
      const int j = seg.frontier(i, counts);
      switch (code[j].kind) {
        case PassageKind::Over:
          if (rule.classical == ClassicalRule::OverFirst || consumed(counts, code.partner(j)))
            out.push_back({i, -1});
          break;
        case PassageKind::Under:
          if (rule.classical == ClassicalRule::UnderFirst || consumed(counts, code.partner(j)))
            out.push_back({i, -1});
          break;
        case PassageKind::Virtual:
          if (rule.virtualRule == VirtualRule::Unrestricted) {
            out.push_back({i, -1});
          } else {
            // Generate each rendezvous once, from the lower segment; the
            // k < i case is discovered when the outer loop scans k.
            const int q = code.partner(j);
            const int k = seg.seg_of[static_cast<size_t>(q)];
            if (k > i && counts[static_cast<size_t>(k)] == seg.offset[static_cast<size_t>(q)])
              out.push_back({i, k});
          }
          break;
      }
    }
    return out;
  };

  State initial(static_cast<size_t>(n), 0);
  State goal(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) goal[static_cast<size_t>(i)] = static_cast<std::uint8_t>(seg.len[static_cast<size_t>(i)]);

  std::vector<State> arena{initial};
  std::vector<int> parent{-1};
  std::vector<Step> via{{}};
  std::unordered_map<State, int, StateHash> index{{initial, 0}};
  std::deque<int> queue{0};
  int found = -1;

  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    if (arena[static_cast<size_t>(cur)] == goal) {
      found = cur;
      break;
    }
    const State counts = arena[static_cast<size_t>(cur)];
    for (const Step& s : step_options(counts)) {
      State next = counts;
      ++next[static_cast<size_t>(s.seg)];
      if (s.seg2 >= 0) ++next[static_cast<size_t>(s.seg2)];
      if (index.contains(next)) continue;
      if (arena.size() >= state_limit)
        throw ResourceLimit("oracle state count exceeded " + std::to_string(state_limit));
      index.emplace(next, static_cast<int>(arena.size()));
      queue.push_back(static_cast<int>(arena.size()));
      arena.push_back(std::move(next));
      parent.push_back(cur);
      via.push_back(s);
    }
  }
  if (found < 0) return std::nullopt;

  std::vector<Step> path;
  for (int cur = found; parent[static_cast<size_t>(cur)] >= 0; cur = parent[static_cast<size_t>(cur)])
    path.push_back(via[static_cast<size_t>(cur)]);
  std::reverse(path.begin(), path.end());

  // Assign dancer identities along the reconstructed schedule. Under the
  // smoothing rule the dancers working two rendezvousing segments trade
  // places afterwards.
  std::vector<int> label(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) label[static_cast<size_t>(i)] = i;
  State counts(static_cast<size_t>(n), 0);
  std::vector<Move> moves;
  int time = 0;
  for (const Step& s : path) {
    Move m;
    m.time = time++;
    m.dancer = label[static_cast<size_t>(s.seg)];
    m.passage = seg.frontier(s.seg, counts);
    if (s.seg2 >= 0) {
      m.dancer2 = label[static_cast<size_t>(s.seg2)];
      m.passage2 = seg.frontier(s.seg2, counts);
      ++counts[static_cast<size_t>(s.seg)];
      ++counts[static_cast<size_t>(s.seg2)];
      if (rule.virtualRule == VirtualRule::Smoothing)
        std::swap(label[static_cast<size_t>(s.seg)], label[static_cast<size_t>(s.seg2)]);
    } else {
      ++counts[static_cast<size_t>(s.seg)];
    }
    moves.push_back(m);
  }
  return Trace(config, std::move(moves));
}

}  // namespace knotdance
