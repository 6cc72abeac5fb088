#include "knotdance/search.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"

using namespace knotdance;

namespace {

const Rule kOver{ClassicalRule::OverFirst, VirtualRule::Unrestricted};
const Rule kUnder{ClassicalRule::UnderFirst, VirtualRule::Unrestricted};
const Rule kCoincident{ClassicalRule::OverFirst, VirtualRule::Coincident};

// Brute-force enumeration oracle: all sequences over the token alphabet for
// the exact crossing counts, validated and deduplicated by canonical form.
std::set<std::string> brute_force_classes(int classical, int virtuals) {
  const int length = 2 * (classical + virtuals);
  std::vector<Passage> alphabet;
  for (int id = 1; id <= classical; ++id) {
    alphabet.push_back({id, PassageKind::Over});
    alphabet.push_back({id, PassageKind::Under});
  }
  for (int id = classical + 1; id <= classical + virtuals; ++id) {
    alphabet.push_back({id, PassageKind::Virtual});
    alphabet.push_back({id, PassageKind::Virtual});
  }

  std::set<std::string> classes;
  std::vector<Passage> seq;
  std::vector<bool> used(alphabet.size(), false);
  const auto recurse = [&](auto&& self) -> void {
    if (static_cast<int>(seq.size()) == length) {
      try {
        classes.insert(serialize_code(canonical_rotation(DiagramCode(seq))));
      } catch (const ValidationError&) {
      }
      return;
    }
    for (size_t i = 0; i < alphabet.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      seq.push_back(alphabet[i]);
      self(self);
      seq.pop_back();
      used[i] = false;
    }
  };
  if (length == 0)
    classes.insert("");
  else
    recurse(recurse);
  return classes;
}

}  // namespace

TEST_CASE("min_dancers worked examples") {
  const DiagramCode t = parse_code("1+ 2- 3+ 1- 2+ 3-");
  const MinDanceResult mt = min_dancers(t, kOver);
  CHECK(mt.dancers == 2);
  CHECK(mt.config.starts() == std::vector<int>{0, 2});

  const DiagramCode e = parse_code("1+ 2- 2+ 1-");
  CHECK(min_dancers(e, kUnder).dancers == 1);
  CHECK(min_dancers(e, kUnder).config.starts() == std::vector<int>{1});
  CHECK(min_dancers(e, kOver).dancers == 2);
  CHECK(min_dancers(e, kOver).config.starts() == std::vector<int>{0, 2});

  const DiagramCode vk = parse_code("v1 v1");
  CHECK(min_dancers(vk, kOver).dancers == 1);
  CHECK(min_dancers(vk, kCoincident).dancers == 2);

  CHECK(min_dancers(parse_code("1+ 2+ 1- 2-"), kOver).dancers == 1);
  CHECK(min_dancers(parse_code("1+ 2+ 1- 2-"), kOver).config.starts() ==
        std::vector<int>{0});
}

TEST_CASE("restricted search matches the unrestricted minimum on examples") {
  const DiagramCode t = parse_code("1+ 2- 3+ 1- 2+ 3-");
  const MinDanceResult restricted = min_dancers(t, kOver, true);
  CHECK(restricted.dancers == 2);
  CHECK(restricted.config.starts() == std::vector<int>{0, 2});
  // Bridgeless codes fall back to all starts.
  CHECK(min_dancers(parse_code("v1 v1"), kOver, true).dancers == 1);
  // Bridge starts are an over-first notion; under-first ignores the flag.
  CHECK(min_dancers(parse_code("1+ 2- 2+ 1-"), kUnder, true).dancers == 1);
  CHECK(min_dancers(parse_code("1+ 2- 2+ 1-"),
                    {ClassicalRule::OverFirst, VirtualRule::Coincident}, true)
            .dancers == 2);
}

TEST_CASE("dance_numbers worked examples") {
  const DanceNumbers t = dance_numbers(parse_code("1+ 2- 3+ 1- 2+ 3-"));
  CHECK(t.overFirst == 2);
  CHECK(t.underFirst == 2);
  CHECK(t.unrestricted == 2);
  CHECK(t.coincident == 2);
  CHECK(t.smoothing == 2);

  const DanceNumbers vk = dance_numbers(parse_code("v1 v1"));
  CHECK(vk.overFirst == 1);
  CHECK(vk.underFirst == 1);
  CHECK(vk.unrestricted == 1);
  CHECK(vk.coincident == 2);
  CHECK(vk.smoothing == 2);
  REQUIRE(vk.smoothingWitness.has_value());
  CHECK(vk.smoothingWitness->trace.config().rule().virtualRule == VirtualRule::Smoothing);
  validate_trace(parse_code("v1 v1"), vk.smoothingWitness->trace);

  const DanceNumbers empty = dance_numbers(parse_code(""));
  CHECK(empty.overFirst == 1);
  CHECK(empty.underFirst == 1);
  CHECK(empty.unrestricted == 1);
  CHECK(empty.coincident == 1);
  CHECK(empty.smoothing == 1);
}

TEST_CASE("enumerate_codes small counts") {
  const auto kink = enumerate_codes(1, 0);
  REQUIRE(kink.size() == 1);
  CHECK(serialize_code(kink[0]) == "1+ 1-");

  const auto vkink = enumerate_codes(0, 1);
  REQUIRE(vkink.size() == 1);
  CHECK(serialize_code(vkink[0]) == "v1 v1");

  const auto none = enumerate_codes(0, 0);
  REQUIRE(none.size() == 1);
  CHECK(none[0].empty());
}

TEST_CASE("enumerate_codes matches the brute-force oracle") {
  for (int c = 0; c <= 2; ++c) {
    for (int v = 0; v <= 1; ++v) {
      if (2 * (c + v) > 6) continue;
      CAPTURE(c);
      CAPTURE(v);
      const std::set<std::string> expected = brute_force_classes(c, v);
      std::set<std::string> got;
      for (const DiagramCode& code : enumerate_codes(c, v)) {
        // Each representative is its own canonical form, emitted once.
        CHECK(code == canonical_rotation(code));
        CHECK(got.insert(serialize_code(code)).second);
      }
      CHECK(got == expected);
    }
  }
}

TEST_CASE("enumerate_codes honours the desk-scale guard") {
  CHECK_THROWS_AS(enumerate_codes(6, 0), ResourceLimit);
  CHECK_THROWS_AS(enumerate_codes(3, 3), ResourceLimit);
  // The sink can stop the stream early.
  int seen = 0;
  const bool completed = enumerate_codes(2, 0, [&](const DiagramCode&) {
    return ++seen < 2;
  });
  CHECK_FALSE(completed);
  CHECK(seen == 2);
}

TEST_CASE("a 2-crossing code can need more over-first than under-first dancers") {
  bool found = false;
  for (const DiagramCode& code : enumerate_codes(2, 0)) {
    const DanceNumbers dn = dance_numbers(code);
    if (dn.underFirst == 1 && dn.overFirst == 2) found = true;
  }
  CHECK(found);
}

TEST_CASE("check_properties passes on small corpora") {
  std::vector<DiagramCode> corpus;
  for (int c = 0; c <= 2; ++c)
    for (int v = 0; v <= 1; ++v)
      for (DiagramCode& code : enumerate_codes(c, v)) corpus.push_back(std::move(code));

  CheckOptions options;
  options.braidWordCount = 8;
  const PropertyReport report = check_properties(corpus, options);
  INFO(report.to_text());
  CHECK(report.all_passed());
  for (const PropertyResult& p : report.properties) CHECK(p.checked > 0);
}

TEST_CASE("feasibility fallback: one dancer per arc always works") {
  for (int c = 0; c <= 2; ++c) {
    for (int v = 0; v <= 1; ++v) {
      for (const DiagramCode& code : enumerate_codes(c, v)) {
        if (code.empty()) continue;
        std::vector<int> all(static_cast<size_t>(code.length()));
        for (int i = 0; i < code.length(); ++i) all[static_cast<size_t>(i)] = i;
        CHECK(try_dance(code, Configuration(all, kOver)).has_value());
        CHECK(try_dance(code, Configuration(all, kUnder)).has_value());
        if (code.length() >= 2)
          CHECK(try_dance(code, Configuration(all, kCoincident)).has_value());
      }
    }
  }
}

TEST_CASE("greedy equals oracle on sampled 12-passage codes") {
  std::mt19937 rng(6021023);
  // Any arrangement of a full over/under/virtual multiset is a valid code.
  std::vector<Passage> tokens;
  for (int id = 1; id <= 4; ++id) {
    tokens.push_back({id, PassageKind::Over});
    tokens.push_back({id, PassageKind::Under});
  }
  for (int id = 5; id <= 6; ++id) {
    tokens.push_back({id, PassageKind::Virtual});
    tokens.push_back({id, PassageKind::Virtual});
  }

  const std::vector<Rule> rules = {
      kOver,
      kUnder,
      kCoincident,
      {ClassicalRule::OverFirst, VirtualRule::Smoothing},
      {ClassicalRule::UnderFirst, VirtualRule::Coincident},
      {ClassicalRule::UnderFirst, VirtualRule::Smoothing}};

  for (int sample = 0; sample < 200; ++sample) {
    std::shuffle(tokens.begin(), tokens.end(), rng);
    const DiagramCode code(tokens);
    const int n = 1 + static_cast<int>(rng() % 4);
    std::vector<int> arcs(static_cast<size_t>(code.length()));
    std::iota(arcs.begin(), arcs.end(), 0);
    std::shuffle(arcs.begin(), arcs.end(), rng);
    arcs.resize(static_cast<size_t>(n));
    const Configuration config(arcs, rules[rng() % rules.size()]);
    CAPTURE(serialize_code(code));
    const auto greedy = try_dance(code, config);
    const auto oracle = oracle_try_dance(code, config);
    CHECK(greedy.has_value() == oracle.has_value());
    if (greedy) validate_trace(code, *greedy);
    if (oracle) validate_trace(code, *oracle);
  }
}

TEST_CASE("greedy equals oracle over all small configurations") {
  for (int c = 0; c <= 2; ++c) {
    for (int v = 0; v <= 1; ++v) {
      for (const DiagramCode& code : enumerate_codes(c, v)) {
        if (code.empty()) continue;
        std::vector<Rule> rules = {kOver, kUnder};
        if (code.virtual_crossings() > 0) {
          rules.push_back(kCoincident);
          rules.push_back({ClassicalRule::OverFirst, VirtualRule::Smoothing});
        }
        for (const Rule& rule : rules) {
          for (int a = 0; a < code.length(); ++a) {
            for (int b = a; b < code.length(); ++b) {
              std::vector<int> starts = a == b ? std::vector<int>{a}
                                               : std::vector<int>{a, b};
              const Configuration config(starts, rule);
              CAPTURE(serialize_code(code));
              CAPTURE(a);
              CAPTURE(b);
              CHECK(try_dance(code, config).has_value() ==
                    oracle_try_dance(code, config).has_value());
            }
          }
        }
      }
    }
  }
}
