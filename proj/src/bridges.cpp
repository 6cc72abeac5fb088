#include "knotdance/bridges.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "knotdance/search.hpp"

namespace knotdance {

BridgeReport find_bridges(const DiagramCode& code) {
  const int L = code.length();
  BridgeReport report;

  bool has_over = false;
  std::vector<int> unders;
  for (int i = 0; i < L; ++i) {
    if (code[i].kind == PassageKind::Over) has_over = true;
    if (code[i].kind == PassageKind::Under) unders.push_back(i);
  }
  if (!has_over) return report;

  if (unders.empty()) {
    // Unreachable for valid codes (an overcrossing implies an undercrossing)
    // but the whole circle is one run in that case.
    BridgeRun run;
    for (int i = 0; i < L; ++i) run.passages.push_back(i);
    report.runs.push_back(std::move(run));
    report.count = 1;
    return report;
  }

  for (size_t u = 0; u < unders.size(); ++u) {
    const int from = unders[u];
    const int to = unders[(u + 1) % unders.size()];
    BridgeRun run;
    bool run_has_over = false;
    for (int j = (from + 1) % L; j != to; j = (j + 1) % L) {
      run.passages.push_back(j);
      if (code[j].kind == PassageKind::Over) run_has_over = true;
    }
    if (!run.passages.empty() && run_has_over) report.runs.push_back(std::move(run));
  }
  std::sort(report.runs.begin(), report.runs.end(),
            [](const BridgeRun& a, const BridgeRun& b) { return a.start() < b.start(); });
  report.count = static_cast<int>(report.runs.size());
  return report;
}

int bridge_count(const DiagramCode& code) { return find_bridges(code).count; }

std::vector<int> bridge_starts(const DiagramCode& code) {
  std::vector<int> starts;
  for (const BridgeRun& run : find_bridges(code).runs) starts.push_back(run.start());
  return starts;
}

DiagramCode bridge_slide(const DiagramCode& code, const Trace& trace, int dancer) {
  validate_trace(code, trace);
  if (trace.config().rule().classical != ClassicalRule::OverFirst)
    throw PreconditionViolated("bridge slide needs an over-first dance");
  if (dancer < 0 || dancer >= trace.config().dancers())
    throw PreconditionViolated("no such dancer");

  const int L = code.length();
  const auto& starts = trace.config().starts();
  const int n = static_cast<int>(starts.size());
  const int s = starts[static_cast<size_t>(dancer)];
  const int gap = n == 1 ? L : (starts[static_cast<size_t>((dancer + 1) % n)] - s + L) % L;

  std::vector<int> seg;  // absolute passage indices of the dancer's segment
  seg.reserve(static_cast<size_t>(gap));
  for (int k = 0; k < gap; ++k) seg.push_back((s + k) % L);
  const auto in_segment = [&](int abs) { return (abs - s + L) % L < gap; };

  // The dancer's path must read: bridge 1, the inter-bridge underpass, then
  // a second bridge.
  int idx = 0;
  bool bridge1_has_over = false;
  while (idx < gap && code[seg[static_cast<size_t>(idx)]].kind != PassageKind::Under) {
    if (code[seg[static_cast<size_t>(idx)]].kind == PassageKind::Over) bridge1_has_over = true;
    ++idx;
  }
  if (!bridge1_has_over)
    throw PreconditionViolated("dancer does not start on a bridge");
  if (idx == gap)
    throw PreconditionViolated("dancer covers fewer than two bridges");

  int next_over = -1;
  for (int k = idx; k < gap; ++k) {
    if (code[seg[static_cast<size_t>(k)]].kind == PassageKind::Over) {
      next_over = k;
      break;
    }
  }
  if (next_over < 0)
    throw PreconditionViolated("dancer covers fewer than two bridges");
  int last_under = -1;
  for (int k = idx; k < next_over; ++k)
    if (code[seg[static_cast<size_t>(k)]].kind == PassageKind::Under) last_under = k;

  std::vector<int> underpass;  // absolute indices, segment order
  for (int k = idx; k <= last_under; ++k) underpass.push_back(seg[static_cast<size_t>(k)]);

  // Full maximal non-under run beginning the second bridge.
  std::vector<int> overrun;
  for (int j = seg[static_cast<size_t>(last_under + 1)];
       code[j].kind != PassageKind::Under; j = (j + 1) % L) {
    if (!in_segment(j))
      throw PreconditionViolated("second bridge extends beyond the dancer's segment");
    overrun.push_back(j);
  }

  std::map<int, int> uses;
  for (int j : underpass) ++uses[code[j].crossing];
  for (int j : overrun) ++uses[code[j].crossing];
  for (const auto& [id, count] : uses)
    if (count > 1)
      throw PreconditionViolated("crossing " + std::to_string(id) +
                                 " occurs twice across the underpass and over-run");

  int fresh = 0;
  for (int i = 0; i < L; ++i) fresh = std::max(fresh, code[i].crossing);

  std::vector<std::vector<Passage>> before(static_cast<size_t>(L));
  std::vector<std::vector<Passage>> after(static_cast<size_t>(L));
  for (int x : underpass) {
    for (int y : overrun) {
      const int id = ++fresh;
      const bool classical = code[x].kind == PassageKind::Under &&
                             code[y].kind == PassageKind::Over;
      before[static_cast<size_t>(code.partner(x))].push_back(
          {id, classical ? PassageKind::Over : PassageKind::Virtual});
      after[static_cast<size_t>(code.partner(y))].push_back(
          {id, classical ? PassageKind::Under : PassageKind::Virtual});
    }
  }

  std::vector<bool> relocated(static_cast<size_t>(L), false);
  for (int j : underpass) relocated[static_cast<size_t>(j)] = true;

  std::vector<Passage> result;
  result.reserve(static_cast<size_t>(L) + 2 * underpass.size() * overrun.size());
  for (int j = 0; j < L; ++j) {
    for (const Passage& p : before[static_cast<size_t>(j)]) result.push_back(p);
    if (!relocated[static_cast<size_t>(j)]) result.push_back(code[j]);
    for (const Passage& p : after[static_cast<size_t>(j)]) result.push_back(p);
    if (j == overrun.back())
      for (int u : underpass) result.push_back(code[u]);
  }

  DiagramCode slid(std::move(result));
  if (bridge_count(slid) != bridge_count(code) - 1)
    throw std::logic_error("bridge slide did not reduce the bridge count by one");
  return slid;
}

namespace {

std::vector<int> bridges_covered(const DiagramCode& code, const Configuration& config) {
  const BridgeReport report = find_bridges(code);
  const auto& starts = config.starts();
  const int n = static_cast<int>(starts.size());
  const int L = code.length();
  std::vector<int> covered(static_cast<size_t>(n), 0);
  for (const BridgeRun& run : report.runs) {
    for (int d = 0; d < n; ++d) {
      const int gap = n == 1 ? L : (starts[static_cast<size_t>((d + 1) % n)] -
                                    starts[static_cast<size_t>(d)] + L) % L;
      if ((run.start() - starts[static_cast<size_t>(d)] + L) % L < gap) {
        ++covered[static_cast<size_t>(d)];
        break;
      }
    }
  }
  return covered;
}

}  // namespace

ReduceResult reduce_to_bridge_minimal(const DiagramCode& code) {
  if (code.classical_crossings() == 0)
    throw PreconditionViolated("reduction needs at least one classical crossing");

  const Rule rule{ClassicalRule::OverFirst, VirtualRule::Unrestricted};
  DiagramCode cur = code;
  MinDanceResult mr = min_dancers(cur, rule, /*restrict_starts=*/true);
  const int target = mr.dancers;

  int slides = 0;
  const int max_iterations = bridge_count(cur) + 1;
  for (int iter = 0; iter < max_iterations; ++iter) {
    const std::vector<int> covered = bridges_covered(cur, mr.config);
    bool slid = false;
    std::exception_ptr last_error;
    for (int d = 0; d < static_cast<int>(covered.size()); ++d) {
      if (covered[static_cast<size_t>(d)] < 2) continue;
      try {
        cur = bridge_slide(cur, mr.trace, d);
        slid = true;
        break;
      } catch (const PreconditionViolated&) {
        last_error = std::current_exception();
      }
    }
    if (!slid) {
      if (last_error) std::rethrow_exception(last_error);
      break;
    }
    ++slides;
    mr = min_dancers(cur, rule, /*restrict_starts=*/true);
    if (mr.dancers != target)
      throw std::logic_error("bridge slide changed the minimal dance number");
  }

  return {cur, mr.trace, target, bridge_count(cur), slides};
}

}  // namespace knotdance
