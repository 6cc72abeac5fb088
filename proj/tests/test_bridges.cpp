#include "knotdance/bridges.hpp"

#include <algorithm>

#include "doctest.h"
#include "knotdance/search.hpp"

using namespace knotdance;

namespace {

const Rule kOver{ClassicalRule::OverFirst, VirtualRule::Unrestricted};

// Independent bridge counter: rotate the code so it begins at an
// undercrossing, then scan linearly, splitting at undercrossings and
// counting the pieces that contain an overcrossing.
int oracle_bridge_count(const DiagramCode& code) {
  const int n = code.length();
  int first_under = -1;
  bool has_over = false;
  for (int i = 0; i < n; ++i) {
    if (code[i].kind == PassageKind::Under && first_under < 0) first_under = i;
    if (code[i].kind == PassageKind::Over) has_over = true;
  }
  if (!has_over) return 0;
  if (first_under < 0) return 1;

  int count = 0;
  bool piece_has_over = false;
  for (int k = 1; k <= n; ++k) {
    const Passage& p = code[(first_under + k) % n];
    if (p.kind == PassageKind::Under) {
      if (piece_has_over) ++count;
      piece_has_over = false;
    } else if (p.kind == PassageKind::Over) {
      piece_has_over = true;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("bridge counts of the worked examples") {
  CHECK(bridge_count(parse_code("1+ 2- 3+ 1- 2+ 3-")) == 3);
  CHECK(bridge_starts(parse_code("1+ 2- 3+ 1- 2+ 3-")) == std::vector<int>{0, 2, 4});
  CHECK(bridge_count(parse_code("1+ 2+ 1- 2-")) == 1);
  CHECK(bridge_starts(parse_code("1+ 2+ 1- 2-")) == std::vector<int>{0});
  CHECK(bridge_count(parse_code("")) == 0);
  CHECK(bridge_count(parse_code("v1 v1")) == 0);
  CHECK(bridge_count(parse_code("1+ 1-")) == 1);

  // One over-run wraps the cycle: 2+ v3 . 1+; the oracle settles the count.
  const DiagramCode vt = parse_code("1+ 2- v3 1- 2+ v3");
  CHECK(oracle_bridge_count(vt) == 1);
  CHECK(bridge_count(vt) == 1);
  REQUIRE(find_bridges(vt).runs.size() == 1);
  CHECK(find_bridges(vt).runs[0].passages == std::vector<int>{4, 5, 0});
}

TEST_CASE("bridge runs agree with the oracle over the small corpus") {
  for (int c = 0; c <= 3; ++c) {
    for (int v = 0; v <= 1; ++v) {
      for (const DiagramCode& code : enumerate_codes(c, v)) {
        CAPTURE(serialize_code(code));
        const BridgeReport report = find_bridges(code);
        CHECK(report.count == oracle_bridge_count(code));
        CHECK(report.count == static_cast<int>(report.runs.size()));
        for (const BridgeRun& run : report.runs) {
          bool has_over = false;
          for (int j : run.passages) {
            CHECK(code[j].kind != PassageKind::Under);
            if (code[j].kind == PassageKind::Over) has_over = true;
          }
          CHECK(has_over);
        }
      }
    }
  }
}

TEST_CASE("bridge slide on the trefoil merges two bridges") {
  const DiagramCode t = parse_code("1+ 2- 3+ 1- 2+ 3-");
  auto trace = try_dance(t, Configuration({0, 2}, kOver));
  REQUIRE(trace.has_value());

  // Dancer 0 covers one bridge only.
  CHECK_THROWS_AS(bridge_slide(t, *trace, 0), PreconditionViolated);

  const DiagramCode slid = bridge_slide(t, *trace, 1);
  CHECK(serialize_code(slid) == "4+ 1+ 2- 4- 3+ 2+ 1- 3-");
  CHECK(bridge_count(slid) == 2);
  CHECK(try_dance(slid, Configuration({0, 4}, kOver)).has_value());
  CHECK(min_dancers(slid, kOver).dancers == 2);
}

TEST_CASE("bridge slide rejects a shared crossing between the two passes") {
  // Dancer A's inter-bridge underpass contains v2 whose partner sits in the
  // over-run of A's second bridge.
  const DiagramCode code = parse_code("1+ 3- v2 4- v2 5+ 1- 3+ 4+ 5-");
  auto trace = try_dance(code, Configuration({0, 7}, kOver));
  REQUIRE(trace.has_value());
  CHECK_THROWS_AS(bridge_slide(code, *trace, 0), PreconditionViolated);
}

TEST_CASE("bridge slide across a virtual crossing creates virtual crossings") {
  const DiagramCode code = parse_code("1+ 3- v2 4- 5+ 1- 3+ 4+ 5- v2");
  REQUIRE(bridge_count(code) == 3);
  const MinDanceResult mr = min_dancers(code, kOver, true);
  REQUIRE(mr.dancers == 2);
  REQUIRE(mr.config.starts() == std::vector<int>{4, 6});

  // Dancer 1 covers the bridges starting at 6 and 9.
  const DiagramCode slid = bridge_slide(code, mr.trace, 1);
  CHECK(serialize_code(slid) == "1+ 5- 3- v2 v6 4- v6 7+ 5+ 1- 7- 3+ 4+ v2");
  CHECK(bridge_count(slid) == 2);
  CHECK(min_dancers(slid, kOver).dancers == 2);
}

TEST_CASE("slides preserve the minimal dance number over the classical corpus") {
  for (int c = 2; c <= 3; ++c) {
    for (const DiagramCode& code : enumerate_codes(c, 0)) {
      const MinDanceResult mr = min_dancers(code, kOver, true);
      const std::vector<int> starts = mr.config.starts();
      const std::vector<int> bridges = bridge_starts(code);
      for (int d = 0; d < mr.dancers; ++d) {
        const int from = starts[static_cast<size_t>(d)];
        const int to = starts[static_cast<size_t>((d + 1) % starts.size())];
        const int L = code.length();
        const int gap = mr.dancers == 1 ? L : (to - from + L) % L;
        int covered = 0;
        for (int b : bridges)
          if ((b - from + L) % L < gap) ++covered;
        if (covered < 2) continue;
        CAPTURE(serialize_code(code));
        const DiagramCode slid = bridge_slide(code, mr.trace, d);
        CHECK(bridge_count(slid) == bridge_count(code) - 1);
        CHECK(min_dancers(slid, kOver).dancers == mr.dancers);
      }
    }
  }
}

TEST_CASE("reduce_to_bridge_minimal worked examples") {
  SUBCASE("trefoil reduces to two bridges in one slide") {
    const ReduceResult rr = reduce_to_bridge_minimal(parse_code("1+ 2- 3+ 1- 2+ 3-"));
    CHECK(serialize_code(rr.code) == "4+ 1+ 2- 4- 3+ 2+ 1- 3-");
    CHECK(rr.bridges == 2);
    CHECK(rr.dancers == 2);
    CHECK(rr.slides == 1);
    validate_trace(rr.code, rr.trace);
  }
  SUBCASE("already-minimal codes are returned unchanged") {
    const DiagramCode e = parse_code("1+ 2- 2+ 1-");
    const ReduceResult rr = reduce_to_bridge_minimal(e);
    CHECK(rr.code == e);
    CHECK(rr.slides == 0);
    CHECK(rr.bridges == 2);
    CHECK(rr.dancers == 2);
  }
  SUBCASE("single kink") {
    const DiagramCode kink = parse_code("1+ 1-");
    const ReduceResult rr = reduce_to_bridge_minimal(kink);
    CHECK(rr.code == kink);
    CHECK(rr.bridges == 1);
    CHECK(rr.dancers == 1);
  }
  SUBCASE("needs a classical crossing") {
    CHECK_THROWS_AS(reduce_to_bridge_minimal(parse_code("v1 v1")), PreconditionViolated);
    CHECK_THROWS_AS(reduce_to_bridge_minimal(parse_code("")), PreconditionViolated);
  }
  SUBCASE("virtual code with a classical part") {
    const ReduceResult rr = reduce_to_bridge_minimal(parse_code("1+ 3- v2 4- 5+ 1- 3+ 4+ 5- v2"));
    CHECK(rr.bridges == rr.dancers);
    CHECK(rr.dancers == 2);
  }
}

TEST_CASE("reduction on virtual codes certifies or refuses, never lies") {
  int reduced = 0;
  int refused = 0;
  for (int c = 1; c <= 2; ++c) {
    for (int v = 1; v <= 2; ++v) {
      for (const DiagramCode& code : enumerate_codes(c, v)) {
        CAPTURE(serialize_code(code));
        try {
          const ReduceResult rr = reduce_to_bridge_minimal(code);
          CHECK(rr.bridges == rr.dancers);
          CHECK(rr.dancers == min_dancers(code, kOver).dancers);
          ++reduced;
        } catch (const PreconditionViolated&) {
          // A slide blocked by a shared virtual crossing is a legal outcome.
          ++refused;
        }
      }
    }
  }
  CHECK(reduced > 0);
  INFO("reduced " << reduced << ", refused " << refused);
}
