#include "knotdance/dance.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace knotdance {

ClassicalRule opposite(ClassicalRule r) {
  return r == ClassicalRule::OverFirst ? ClassicalRule::UnderFirst : ClassicalRule::OverFirst;
}

std::string rule_name(const Rule& rule) {
  std::string s = rule.classical == ClassicalRule::OverFirst ? "over-first" : "under-first";
  switch (rule.virtualRule) {
    case VirtualRule::Unrestricted:
      s += "/unrestricted";
      break;
    case VirtualRule::Coincident:
      s += "/coincident";
      break;
    case VirtualRule::Smoothing:
      s += "/smoothing";
      break;
  }
  return s;
}

Configuration::Configuration(std::vector<int> starts, Rule rule)
    : starts_(std::move(starts)), rule_(rule) {
  if (starts_.empty())
    throw InvalidConfiguration("a configuration needs at least one start");
  std::sort(starts_.begin(), starts_.end());
  if (std::adjacent_find(starts_.begin(), starts_.end()) != starts_.end())
    throw InvalidConfiguration("duplicate start position");
  if (starts_.front() < 0)
    throw InvalidConfiguration("negative start position");
}

void Configuration::check_against(const DiagramCode& code) const {
  if (is_trivial()) {
    if (!code.empty())
      throw InvalidConfiguration("trivial configuration only fits the empty code");
    return;
  }
  if (code.empty())
    throw InvalidConfiguration("non-trivial configuration on the empty code");
  if (starts_.back() >= code.length())
    throw InvalidConfiguration("start position " + std::to_string(starts_.back()) +
                               " out of range [0," + std::to_string(code.length()) + ")");
}

Trace::Trace(Configuration config, std::vector<Move> moves)
    : config_(std::move(config)), moves_(std::move(moves)) {}

int Trace::rendezvous_count() const {
  int n = 0;
  for (const Move& m : moves_)
    if (m.rendezvous()) ++n;
  return n;
}

namespace {

// Replay state shared by the greedy engine, the validator and the trace
// transforms. The oracle (oracle.cpp) deliberately re-implements the move
// semantics from scratch.
struct EngineState {
  const DiagramCode& code;
  Rule rule;
  std::vector<int> pos;        // current arc index per dancer
  std::vector<bool> finished;
  std::vector<bool> consumed;  // per passage
  std::vector<bool> is_start;  // per arc index
  int consumed_count = 0;

  EngineState(const DiagramCode& c, const Configuration& config) : code(c), rule(config.rule()) {
    pos = config.starts();
    finished.assign(pos.size(), false);
    consumed.assign(static_cast<size_t>(code.length()), false);
    is_start.assign(static_cast<size_t>(code.length()), false);
    for (int s : pos) is_start[static_cast<size_t>(s)] = true;
  }

  int dancers() const { return static_cast<int>(pos.size()); }
  int length() const { return code.length(); }

  bool single_enabled(int d) const {
    if (finished[static_cast<size_t>(d)]) return false;
    const int j = pos[static_cast<size_t>(d)];
    switch (code[j].kind) {
      case PassageKind::Over:
        return rule.classical == ClassicalRule::OverFirst ||
               consumed[static_cast<size_t>(code.partner(j))];
      case PassageKind::Under:
        return rule.classical == ClassicalRule::UnderFirst ||
               consumed[static_cast<size_t>(code.partner(j))];
      case PassageKind::Virtual:
        return rule.virtualRule == VirtualRule::Unrestricted;
    }
    return false;
  }

  // Dancer able to rendezvous with d right now, or -1. The partner passage
  // of a virtual crossing belongs to exactly one frontier, so the partner
  // dancer is unique if present.
  int rendezvous_partner(int d) const {
    if (rule.virtualRule == VirtualRule::Unrestricted) return -1;
    if (finished[static_cast<size_t>(d)]) return -1;
    const int j = pos[static_cast<size_t>(d)];
    if (code[j].kind != PassageKind::Virtual) return -1;
    const int q = code.partner(j);
    for (int e = 0; e < dancers(); ++e) {
      if (e == d || finished[static_cast<size_t>(e)]) continue;
      if (pos[static_cast<size_t>(e)] == q) return e;
    }
    return -1;
  }

  void consume(int j) {
    if (consumed[static_cast<size_t>(j)])
      throw std::logic_error("passage advanced twice");
    consumed[static_cast<size_t>(j)] = true;
    ++consumed_count;
  }

  void land(int d, int arc) {
    pos[static_cast<size_t>(d)] = arc;
    if (is_start[static_cast<size_t>(arc)]) finished[static_cast<size_t>(d)] = true;
  }

  void apply_single(int d) {
    const int j = pos[static_cast<size_t>(d)];
    consume(j);
    land(d, (j + 1) % length());
  }

  void apply_rendezvous(int d, int e) {
    const int j = pos[static_cast<size_t>(d)];
    const int q = pos[static_cast<size_t>(e)];
    consume(j);
    consume(q);
    if (rule.virtualRule == VirtualRule::Smoothing) {
      // Paths exchange: each dancer exits on the other's strand.
      land(d, (q + 1) % length());
      land(e, (j + 1) % length());
    } else {
      land(d, (j + 1) % length());
      land(e, (q + 1) % length());
    }
  }

  // Unconsumed passages that could be advanced right now (by a single
  // advance or as half of a rendezvous).
  std::vector<bool> ready_passages() const {
    std::vector<bool> ready(static_cast<size_t>(length()), false);
    for (int d = 0; d < dancers(); ++d) {
      if (finished[static_cast<size_t>(d)]) continue;
      if (single_enabled(d)) ready[static_cast<size_t>(pos[static_cast<size_t>(d)])] = true;
      const int e = rendezvous_partner(d);
      if (e >= 0) {
        ready[static_cast<size_t>(pos[static_cast<size_t>(d)])] = true;
        ready[static_cast<size_t>(pos[static_cast<size_t>(e)])] = true;
      }
    }
    return ready;
  }
};

struct EnabledMove {
  bool rendezvous = false;
  int dancer = -1;
  int dancer2 = -1;
};

// Tie-break order: rendezvous moves first, then single advances, lowest
// dancer first within each class. Index 0 is the default greedy pick.
std::vector<EnabledMove> enabled_moves(const EngineState& st) {
  std::vector<EnabledMove> out;
  for (int d = 0; d < st.dancers(); ++d) {
    const int e = st.rendezvous_partner(d);
    if (e > d) out.push_back({true, d, e});
  }
  for (int d = 0; d < st.dancers(); ++d)
    if (st.single_enabled(d)) out.push_back({false, d, -1});
  return out;
}

Move apply_and_log(EngineState& st, const EnabledMove& em, int time) {
  Move m;
  m.time = time;
  if (em.rendezvous) {
    m.dancer = em.dancer;
    m.passage = st.pos[static_cast<size_t>(em.dancer)];
    m.dancer2 = em.dancer2;
    m.passage2 = st.pos[static_cast<size_t>(em.dancer2)];
    st.apply_rendezvous(em.dancer, em.dancer2);
  } else {
    m.dancer = em.dancer;
    m.passage = st.pos[static_cast<size_t>(em.dancer)];
    st.apply_single(em.dancer);
  }
  return m;
}

}  // namespace

std::optional<Trace> try_dance(const DiagramCode& code, const Configuration& config) {
  return try_dance(code, config, MoveSelector{});
}

std::optional<Trace> try_dance(const DiagramCode& code, const Configuration& config,
                               const MoveSelector& select) {
  config.check_against(code);
  if (code.empty()) return Trace(config, {});

  EngineState st(code, config);
  std::vector<Move> moves;
  int time = 0;
  while (true) {
    const auto options = enabled_moves(st);
    if (options.empty()) break;
    const size_t pick = select ? select(options.size()) % options.size() : 0;
    const std::vector<bool> ready_before = st.ready_passages();
    moves.push_back(apply_and_log(st, options[pick], time++));
    // Monotone enabling: a ready passage stays ready until advanced.
    const std::vector<bool> ready_after = st.ready_passages();
    for (int j = 0; j < st.length(); ++j)
      if (ready_before[static_cast<size_t>(j)] && !st.consumed[static_cast<size_t>(j)] &&
          !ready_after[static_cast<size_t>(j)])
        throw std::logic_error("enabled passage became disabled");
  }
  if (st.consumed_count != code.length()) return std::nullopt;
  return Trace(config, std::move(moves));
}

void validate_trace(const DiagramCode& code, const Trace& trace) {
  const Configuration& config = trace.config();
  config.check_against(code);
  if (code.empty()) {
    if (!trace.moves().empty()) throw InvalidTrace("moves on the empty code");
    return;
  }

  EngineState st(code, config);
  const Rule rule = config.rule();
  for (size_t k = 0; k < trace.moves().size(); ++k) {
    const Move& m = trace.moves()[k];
    if (m.time != static_cast<int>(k))
      throw InvalidTrace("move " + std::to_string(k) + " has time " + std::to_string(m.time));
    if (m.dancer < 0 || m.dancer >= st.dancers())
      throw InvalidTrace("move " + std::to_string(k) + " names an unknown dancer");
    if (m.rendezvous()) {
      if (rule.virtualRule == VirtualRule::Unrestricted)
        throw InvalidTrace("rendezvous under the unrestricted rule");
      if (m.dancer2 < 0 || m.dancer2 >= st.dancers() || m.dancer2 == m.dancer)
        throw InvalidTrace("rendezvous needs two distinct dancers");
      if (st.finished[static_cast<size_t>(m.dancer)] ||
          st.finished[static_cast<size_t>(m.dancer2)])
        throw InvalidTrace("rendezvous with a finished dancer");
      if (st.pos[static_cast<size_t>(m.dancer)] != m.passage ||
          st.pos[static_cast<size_t>(m.dancer2)] != m.passage2)
        throw InvalidTrace("rendezvous dancers are not at the recorded passages");
      if (code[m.passage].kind != PassageKind::Virtual ||
          code.partner(m.passage) != m.passage2)
        throw InvalidTrace("rendezvous passages are not one virtual crossing");
      st.apply_rendezvous(m.dancer, m.dancer2);
    } else {
      if (st.finished[static_cast<size_t>(m.dancer)])
        throw InvalidTrace("advance of a finished dancer");
      if (st.pos[static_cast<size_t>(m.dancer)] != m.passage)
        throw InvalidTrace("dancer " + std::to_string(m.dancer) + " is not before passage " +
                           std::to_string(m.passage));
      if (!st.single_enabled(m.dancer))
        throw InvalidTrace("move " + std::to_string(k) + " violates the " +
                           rule_name(rule) + " rule at passage " + std::to_string(m.passage));
      st.apply_single(m.dancer);
    }
  }

  if (st.consumed_count != code.length())
    throw InvalidTrace("only " + std::to_string(st.consumed_count) + " of " +
                       std::to_string(code.length()) + " passages advanced");
  for (int d = 0; d < st.dancers(); ++d)
    if (!st.finished[static_cast<size_t>(d)])
      throw InvalidTrace("dancer " + std::to_string(d) + " did not finish");

  const auto& starts = config.starts();
  const int n = static_cast<int>(starts.size());
  if (rule.virtualRule == VirtualRule::Smoothing) {
    std::vector<int> finals = st.pos;
    std::sort(finals.begin(), finals.end());
    if (finals != starts) throw InvalidTrace("final positions are not the start positions");
  } else {
    for (int d = 0; d < n; ++d)
      if (st.pos[static_cast<size_t>(d)] != starts[static_cast<size_t>((d + 1) % n)])
        throw InvalidTrace("dancer " + std::to_string(d) +
                           " did not finish at the next start");
  }

  // Independent status check on top of the per-move enabling checks.
  const StatusTable table = status_table(code, trace);
  for (const auto& row : table.rows)
    for (int v : row) {
      if (rule.classical == ClassicalRule::OverFirst && v < 0)
        throw InvalidTrace("negative crossing status under the over-first rule");
      if (rule.classical == ClassicalRule::UnderFirst && v > 0)
        throw InvalidTrace("positive crossing status under the under-first rule");
    }
}

StatusTable status_table(const DiagramCode& code, const Trace& trace) {
  StatusTable table;
  std::map<int, int> column;
  for (int i = 0; i < code.length(); ++i)
    if (code[i].kind != PassageKind::Virtual) column.emplace(code[i].crossing, 0);
  int k = 0;
  for (auto& [id, col] : column) {
    col = k++;
    table.crossings.push_back(id);
  }

  std::vector<int> current(column.size(), 0);
  table.rows.push_back(current);
  auto bump = [&](int passage) {
    const Passage& p = code[passage];
    if (p.kind == PassageKind::Over)
      ++current[static_cast<size_t>(column[p.crossing])];
    else if (p.kind == PassageKind::Under)
      --current[static_cast<size_t>(column[p.crossing])];
  };
  for (const Move& m : trace.moves()) {
    bump(m.passage);
    if (m.rendezvous()) bump(m.passage2);
    table.rows.push_back(current);
  }
  return table;
}

Trace retrograde_trace(const DiagramCode& code, const Trace& trace) {
  validate_trace(code, trace);
  const int L = code.length();
  if (L == 0) return trace;

  const DiagramCode rev = reverse_code(code);
  const auto& starts = trace.config().starts();
  std::vector<int> new_starts;
  new_starts.reserve(starts.size());
  for (int s : starts) new_starts.push_back((L - s) % L);
  const Rule new_rule{opposite(trace.config().rule().classical),
                      trace.config().rule().virtualRule};
  Configuration new_config(std::move(new_starts), new_rule);

  // Replay the moves backwards on the reversed code; whoever stands before
  // the mirrored passage is the dancer acting in reversed time.
  EngineState st(rev, new_config);
  auto dancer_at = [&](int arc) {
    for (int d = 0; d < st.dancers(); ++d)
      if (!st.finished[static_cast<size_t>(d)] && st.pos[static_cast<size_t>(d)] == arc)
        return d;
    throw InvalidTrace("retrograde replay lost a dancer");
  };

  std::vector<Move> moves;
  int time = 0;
  for (auto it = trace.moves().rbegin(); it != trace.moves().rend(); ++it) {
    Move m;
    m.time = time++;
    if (it->rendezvous()) {
      m.passage = L - 1 - it->passage;
      m.passage2 = L - 1 - it->passage2;
      m.dancer = dancer_at(m.passage);
      m.dancer2 = dancer_at(m.passage2);
      st.apply_rendezvous(m.dancer, m.dancer2);
    } else {
      m.passage = L - 1 - it->passage;
      m.dancer = dancer_at(m.passage);
      if (!st.single_enabled(m.dancer))
        throw InvalidTrace("retrograde replay produced an illegal move");
      st.apply_single(m.dancer);
    }
    moves.push_back(m);
  }

  Trace result(std::move(new_config), std::move(moves));
  validate_trace(rev, result);
  return result;
}

namespace {

Trace exchange_rendezvous_paths(const DiagramCode& code, const Trace& trace,
                                VirtualRule from, VirtualRule to) {
  validate_trace(code, trace);
  if (trace.config().rule().virtualRule != from)
    throw InvalidTrace("trace does not follow the expected virtual rule");

  // Running permutation: label[i] = identity of the dancer currently walking
  // in place of input-dancer i. Swapping at each rendezvous converts between
  // "keep your strand" and "trade strands" bookkeeping.
  std::vector<int> label(static_cast<size_t>(trace.config().dancers()));
  for (size_t i = 0; i < label.size(); ++i) label[i] = static_cast<int>(i);

  std::vector<Move> moves;
  moves.reserve(trace.moves().size());
  for (const Move& orig : trace.moves()) {
    Move m = orig;
    m.dancer = label[static_cast<size_t>(orig.dancer)];
    if (m.rendezvous()) {
      m.dancer2 = label[static_cast<size_t>(orig.dancer2)];
      std::swap(label[static_cast<size_t>(orig.dancer)],
                label[static_cast<size_t>(orig.dancer2)]);
    }
    moves.push_back(m);
  }

  Configuration config(trace.config().is_trivial()
                           ? Configuration::trivial({trace.config().rule().classical, to})
                           : Configuration(trace.config().starts(),
                                           {trace.config().rule().classical, to}));
  Trace result(std::move(config), std::move(moves));
  validate_trace(code, result);
  return result;
}

}  // namespace

Trace coincident_to_smoothing(const DiagramCode& code, const Trace& trace) {
  return exchange_rendezvous_paths(code, trace, VirtualRule::Coincident,
                                   VirtualRule::Smoothing);
}

Trace smoothing_to_coincident(const DiagramCode& code, const Trace& trace) {
  return exchange_rendezvous_paths(code, trace, VirtualRule::Smoothing,
                                   VirtualRule::Coincident);
}

namespace {

std::string dancer_label(int d) {
  if (d < 26) return std::string(1, static_cast<char>('A' + d));
  return "d" + std::to_string(d);
}

}  // namespace

std::string render_trace_table(const DiagramCode& code, const Trace& trace) {
  if (code.empty() || trace.moves().empty())
    throw InvalidTrace("nothing to render");
  validate_trace(code, trace);

  const int L = code.length();
  const int T = static_cast<int>(trace.moves().size());

  // Dancer locations per time step.
  EngineState st(code, trace.config());
  std::vector<std::vector<std::string>> cells;
  auto snapshot = [&]() {
    std::vector<std::string> row(static_cast<size_t>(L));
    for (int d = 0; d < st.dancers(); ++d)
      row[static_cast<size_t>(st.pos[static_cast<size_t>(d)])] += dancer_label(d);
    return row;
  };
  cells.push_back(snapshot());
  for (const Move& m : trace.moves()) {
    if (m.rendezvous())
      st.apply_rendezvous(m.dancer, m.dancer2);
    else
      st.apply_single(m.dancer);
    cells.push_back(snapshot());
  }

  const StatusTable statuses = status_table(code, trace);

  std::vector<std::string> headers;
  headers.reserve(static_cast<size_t>(L));
  for (int i = 0; i < L; ++i) headers.push_back(passage_token(code[i]));
  std::vector<size_t> width(static_cast<size_t>(L));
  for (int i = 0; i < L; ++i) {
    width[static_cast<size_t>(i)] = headers[static_cast<size_t>(i)].size();
    for (int t = 0; t <= T; ++t)
      width[static_cast<size_t>(i)] =
          std::max(width[static_cast<size_t>(i)], cells[static_cast<size_t>(t)][static_cast<size_t>(i)].size());
  }
  std::vector<std::string> status_headers;
  std::vector<size_t> status_width;
  for (int id : statuses.crossings) {
    status_headers.push_back("C" + std::to_string(id));
    status_width.push_back(status_headers.back().size());
  }
  for (const auto& row : statuses.rows)
    for (size_t k = 0; k < row.size(); ++k)
      status_width[k] = std::max(status_width[k], std::to_string(row[k]).size());

  const size_t time_width = std::max<size_t>(1, std::to_string(T).size());
  std::ostringstream out;
  auto pad = [&](const std::string& s, size_t w) {
    out << s << std::string(w - s.size(), ' ');
  };

  pad("t", time_width);
  out << " |";
  for (int i = 0; i < L; ++i) {
    out << ' ';
    pad(headers[static_cast<size_t>(i)], width[static_cast<size_t>(i)]);
  }
  out << " |";
  for (size_t k = 0; k < status_headers.size(); ++k) {
    out << ' ';
    pad(status_headers[k], status_width[k]);
  }
  out << '\n';

  for (int t = 0; t <= T; ++t) {
    pad(std::to_string(t), time_width);
    out << " |";
    for (int i = 0; i < L; ++i) {
      out << ' ';
      pad(cells[static_cast<size_t>(t)][static_cast<size_t>(i)], width[static_cast<size_t>(i)]);
    }
    out << " |";
    const auto& row = statuses.rows[static_cast<size_t>(t)];
    for (size_t k = 0; k < row.size(); ++k) {
      out << ' ';
      pad(std::to_string(row[k]), status_width[k]);
    }
    out << '\n';
  }
  return out.str();
}

std::size_t default_state_limit() {
  static const std::size_t limit = [] {
    if (const char* env = std::getenv("KNOTDANCE_STATE_LIMIT")) {
      const long long v = std::atoll(env);
      if (v > 0) return static_cast<std::size_t>(v);
    }
    return static_cast<std::size_t>(10'000'000);
  }();
  return limit;
}

}  // namespace knotdance
