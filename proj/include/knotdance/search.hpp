#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "knotdance/braid.hpp"
#include "knotdance/bridges.hpp"
#include "knotdance/dance.hpp"
#include "knotdance/gauss_code.hpp"

namespace knotdance {

struct MinDanceResult {
  int dancers = 0;
  Configuration config;
  Trace trace;
};

/// Least dancer count admitting a valid dance under the rule, found by
/// enumerating start sets of size 1, 2, ... in lexicographic order; the
/// witness is the lexicographically least minimal configuration.
///
/// With restrict_starts, candidate starts are limited to bridge starts. The
/// restriction is sound only for the over-first/unrestricted rule on codes
/// with at least one bridge, so anything else falls back to all arc
/// positions. Crossingless codes yield the trivial one-dancer result. Throws
/// Infeasible if no dancer count works (possible only for
/// coincident/smoothing rules).
MinDanceResult min_dancers(const DiagramCode& code, Rule rule, bool restrict_starts = false);

/// Minimal dancer counts for all five rules, with witnesses. overFirst and
/// underFirst pair the classical rule with unrestricted virtual passage;
/// entries are empty only when the search is infeasible.
struct DanceNumbers {
  int overFirst = 0;
  int underFirst = 0;
  std::optional<int> unrestricted;
  std::optional<int> coincident;
  std::optional<int> smoothing;

  std::optional<MinDanceResult> overFirstWitness;
  std::optional<MinDanceResult> underFirstWitness;
  std::optional<MinDanceResult> unrestrictedWitness;
  std::optional<MinDanceResult> coincidentWitness;
  std::optional<MinDanceResult> smoothingWitness;
};

/// Computes all entries by search; the smoothing entry is cross-checked
/// against the coincident witness pushed through the path-exchange
/// transform (throws std::logic_error on disagreement).
DanceNumbers dance_numbers(const DiagramCode& code);

/// Yields every valid code with exactly the given crossing counts, one
/// representative per canonical-rotation class, in a fixed deterministic
/// order. Returns false when the sink stopped the enumeration early.
/// Throws ResourceLimit when classical_count + virtual_count > 5.
bool enumerate_codes(int classical_count, int virtual_count,
                     const std::function<bool(const DiagramCode&)>& sink);

std::vector<DiagramCode> enumerate_codes(int classical_count, int virtual_count);

namespace detail {
/// Enumeration core without the desk-scale guard; acceptance searches with
/// their own budgets use this.
bool enumerate_codes_unbounded(int classical_count, int virtual_count,
                               const std::function<bool(const DiagramCode&)>& sink);
}  // namespace detail

struct PropertyResult {
  std::string name;
  int checked = 0;
  int failed = 0;
  std::vector<std::string> counterexamples;  // serialized codes (or words)

  bool passed() const { return failed == 0; }
};

struct PropertyReport {
  std::vector<PropertyResult> properties;

  bool all_passed() const;
  std::string to_text() const;
};

struct CheckOptions {
  // Greedy/oracle agreement is checked for every start set up to this size.
  int oracleMaxDancers = 3;
  bool includeOracleEquivalence = true;
  // Random single-component braid words for the braid bound property.
  int braidWordCount = 20;
  int braidMaxStrands = 3;
  int braidMaxLetters = 6;
  unsigned braidSeed = 12345;
  std::size_t stateLimit = default_state_limit();
};

/// Runs the full property suite over the corpus; failures are report
/// content, never exceptions.
PropertyReport check_properties(const std::vector<DiagramCode>& corpus,
                                const CheckOptions& options = {});

/// Deterministic sample of braid words whose closures are knots.
std::vector<BraidWord> random_knot_words(int count, int max_strands, int max_letters,
                                         unsigned seed);

}  // namespace knotdance
