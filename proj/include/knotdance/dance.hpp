#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "knotdance/gauss_code.hpp"

namespace knotdance {

enum class ClassicalRule { OverFirst, UnderFirst };
enum class VirtualRule { Unrestricted, Coincident, Smoothing };

struct Rule {
  ClassicalRule classical = ClassicalRule::OverFirst;
  VirtualRule virtualRule = VirtualRule::Unrestricted;

  friend bool operator==(const Rule&, const Rule&) = default;
};

ClassicalRule opposite(ClassicalRule r);
std::string rule_name(const Rule& rule);

/// Dancer start positions (arc indices, sorted and distinct) plus a rule.
/// Dancer i's segment runs from starts()[i] forward to the next start;
/// segments partition the code.
///
/// The trivial configuration (empty starts) stands for one dancer on a
/// crossingless diagram and is valid only against the empty code.
class Configuration {
 public:
  Configuration(std::vector<int> starts, Rule rule);
  static Configuration trivial(Rule rule) { return Configuration(rule); }

  const std::vector<int>& starts() const { return starts_; }
  Rule rule() const { return rule_; }
  bool is_trivial() const { return starts_.empty(); }
  int dancers() const { return starts_.empty() ? 1 : static_cast<int>(starts_.size()); }

  /// Throws InvalidConfiguration unless the starts fit the code's length.
  void check_against(const DiagramCode& code) const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  explicit Configuration(Rule rule) : rule_(rule) {}

  std::vector<int> starts_;
  Rule rule_;
};

/// A single advance of one dancer, or a synchronized rendezvous of two
/// dancers through the two passages of one virtual crossing.
struct Move {
  int time = 0;
  int dancer = -1;
  int passage = -1;
  int dancer2 = -1;   // set only for rendezvous
  int passage2 = -1;  // set only for rendezvous

  bool rendezvous() const { return dancer2 >= 0; }

  friend bool operator==(const Move&, const Move&) = default;
};

/// A timestamped schedule of moves for a configuration.
class Trace {
 public:
  Trace(Configuration config, std::vector<Move> moves);

  const Configuration& config() const { return config_; }
  const std::vector<Move>& moves() const { return moves_; }
  int rendezvous_count() const;

  friend bool operator==(const Trace&, const Trace&) = default;

 private:
  Configuration config_;
  std::vector<Move> moves_;
};

/// Crossing-status table: for each classical crossing c and time t, the
/// number of over-advances minus under-advances of c in the first t moves.
struct StatusTable {
  std::vector<int> crossings;          // sorted classical crossing ids
  std::vector<std::vector<int>> rows;  // rows[t][k] = C(crossings[k], t)
};

StatusTable status_table(const DiagramCode& code, const Trace& trace);

/// Replays the trace against the code; throws InvalidTrace with a reason if
/// any move is illegal under the trace's rule or the dance is incomplete.
void validate_trace(const DiagramCode& code, const Trace& trace);

/// Greedy saturation: repeatedly applies any enabled move until none is
/// enabled; succeeds iff every passage was advanced. Deterministic
/// tie-break: rendezvous before single advances, lowest dancer first.
std::optional<Trace> try_dance(const DiagramCode& code, const Configuration& config);

/// Chooses among the currently enabled moves; used to exercise confluence
/// with randomized tie-breaking. Receives the number of enabled moves and
/// returns the index of the move to apply.
using MoveSelector = std::function<size_t(size_t)>;

std::optional<Trace> try_dance(const DiagramCode& code, const Configuration& config,
                               const MoveSelector& select);

/// Oracle state cap; KNOTDANCE_STATE_LIMIT overrides the default of 1e7.
std::size_t default_state_limit();

/// Breadth-first search over full scheduler states, exploring every enabled
/// move; an implementation of the dance semantics independent of the greedy
/// engine. Throws ResourceLimit when the visited-state count exceeds limit.
std::optional<Trace> oracle_try_dance(const DiagramCode& code, const Configuration& config,
                                      std::size_t state_limit = default_state_limit());

/// Time-reverses a valid dance: returns a trace for reverse_code(code) under
/// the opposite classical rule, starting from the images of the original
/// ending positions. Applying it twice yields the original trace.
Trace retrograde_trace(const DiagramCode& code, const Trace& trace);

/// Path-exchange correspondence between coincident and smoothing dances:
/// the (passage, time) events are unchanged; downstream dancer identities
/// swap at every rendezvous. The two functions are mutually inverse.
Trace coincident_to_smoothing(const DiagramCode& code, const Trace& trace);
Trace smoothing_to_coincident(const DiagramCode& code, const Trace& trace);

/// Plain-text table: columns labeled by the code's tokens, one row per move
/// showing dancer locations, per-row crossing statuses at the right.
std::string render_trace_table(const DiagramCode& code, const Trace& trace);

}  // namespace knotdance
