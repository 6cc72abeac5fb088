#pragma once

#include <vector>

#include "knotdance/dance.hpp"
#include "knotdance/gauss_code.hpp"

namespace knotdance {

/// Maximal cyclic run of passages containing no classical undercrossing and
/// at least one overcrossing. Virtual passages do not break a run and may
/// appear inside it.
struct BridgeRun {
  std::vector<int> passages;  // passage indices in cyclic order

  int start() const { return passages.front(); }

  friend bool operator==(const BridgeRun&, const BridgeRun&) = default;
};

struct BridgeReport {
  std::vector<BridgeRun> runs;  // ordered by start index
  int count = 0;                // count == 0 iff the code has no overcrossing

  friend bool operator==(const BridgeReport&, const BridgeReport&) = default;
};

BridgeReport find_bridges(const DiagramCode& code);
int bridge_count(const DiagramCode& code);

/// Arc indices at which a bridge begins (candidate dancer starts).
std::vector<int> bridge_starts(const DiagramCode& code);

/// Slides the given dancer's first inter-bridge underpass past the over-run
/// beginning its second bridge, merging the two bridges. New crossings are
/// created between every strand crossing the underpass and every strand
/// crossing the over-run; a pair of classical crossings yields a classical
/// crossing (underpass side over, over-run side under), any pair involving
/// a virtual crossing yields a virtual crossing. Fresh identifiers count up
/// from the largest existing one.
///
/// Precondition (throws PreconditionViolated): the trace is a valid
/// over-first dance, the dancer's segment traverses at least two bridges,
/// the second bridge's over-run lies inside the segment, and no crossing
/// identifier occurs twice within the underpass and over-run combined.
///
/// Postcondition (checked): the bridge count drops by exactly one.
DiagramCode bridge_slide(const DiagramCode& code, const Trace& trace, int dancer);

struct ReduceResult {
  DiagramCode code;
  Trace trace;
  int dancers = 0;
  int bridges = 0;
  int slides = 0;
};

/// Iterates bridge slides on minimal over-first dances (starts restricted to
/// bridge starts) until the bridge count equals the minimal dancer count.
/// The returned code has bridge count == dancer count == the minimal dance
/// number of the input. Requires at least one classical crossing.
ReduceResult reduce_to_bridge_minimal(const DiagramCode& code);

}  // namespace knotdance
