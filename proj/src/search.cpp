#include "knotdance/search.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace knotdance {

namespace {

// Lexicographic k-subsets of candidates (candidates are sorted ascending).
class Combinations {
 public:
  Combinations(const std::vector<int>& candidates, int k)
      : candidates_(candidates), k_(k), indices_(static_cast<size_t>(k)) {
    std::iota(indices_.begin(), indices_.end(), 0);
    done_ = k > static_cast<int>(candidates.size());
  }

  bool done() const { return done_; }

  std::vector<int> current() const {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(k_));
    for (int i : indices_) out.push_back(candidates_[static_cast<size_t>(i)]);
    return out;
  }

  void next() {
    const int n = static_cast<int>(candidates_.size());
    int i = k_ - 1;
    while (i >= 0 && indices_[static_cast<size_t>(i)] == n - k_ + i) --i;
    if (i < 0) {
      done_ = true;
      return;
    }
    ++indices_[static_cast<size_t>(i)];
    for (int j = i + 1; j < k_; ++j)
      indices_[static_cast<size_t>(j)] = indices_[static_cast<size_t>(j - 1)] + 1;
  }

 private:
  const std::vector<int>& candidates_;
  int k_;
  std::vector<int> indices_;
  bool done_ = false;
};

MinDanceResult trivial_result(Rule rule) {
  Configuration config = Configuration::trivial(rule);
  return {1, config, Trace(config, {})};
}

}  // namespace

MinDanceResult min_dancers(const DiagramCode& code, Rule rule, bool restrict_starts) {
  if (code.empty()) return trivial_result(rule);

  std::vector<int> candidates;
  if (restrict_starts && rule.classical == ClassicalRule::OverFirst &&
      rule.virtualRule == VirtualRule::Unrestricted)
    candidates = bridge_starts(code);
  if (candidates.empty()) {
    candidates.resize(static_cast<size_t>(code.length()));
    std::iota(candidates.begin(), candidates.end(), 0);
  }

  for (int n = 1; n <= static_cast<int>(candidates.size()); ++n) {
    for (Combinations combos(candidates, n); !combos.done(); combos.next()) {
      Configuration config(combos.current(), rule);
      if (auto trace = try_dance(code, config))
        return {n, config, std::move(*trace)};
    }
  }
  throw Infeasible("no configuration with up to " + std::to_string(candidates.size()) +
                   " dancers dances the code under the " + rule_name(rule) + " rule");
}

DanceNumbers dance_numbers(const DiagramCode& code) {
  DanceNumbers dn;
  if (code.empty()) {
    dn.overFirst = dn.underFirst = 1;
    dn.unrestricted = dn.coincident = dn.smoothing = 1;
    dn.overFirstWitness =
        trivial_result({ClassicalRule::OverFirst, VirtualRule::Unrestricted});
    dn.underFirstWitness =
        trivial_result({ClassicalRule::UnderFirst, VirtualRule::Unrestricted});
    dn.unrestrictedWitness = dn.overFirstWitness;
    dn.coincidentWitness =
        trivial_result({ClassicalRule::OverFirst, VirtualRule::Coincident});
    dn.smoothingWitness =
        trivial_result({ClassicalRule::OverFirst, VirtualRule::Smoothing});
    return dn;
  }

  MinDanceResult over =
      min_dancers(code, {ClassicalRule::OverFirst, VirtualRule::Unrestricted});
  MinDanceResult under =
      min_dancers(code, {ClassicalRule::UnderFirst, VirtualRule::Unrestricted});
  dn.overFirst = over.dancers;
  dn.underFirst = under.dancers;
  // The unrestricted number pairs over-first with free virtual passage,
  // which is the same rule pair as overFirst.
  dn.unrestricted = over.dancers;
  dn.unrestrictedWitness = over;
  dn.overFirstWitness = std::move(over);
  dn.underFirstWitness = std::move(under);

  try {
    MinDanceResult coincident =
        min_dancers(code, {ClassicalRule::OverFirst, VirtualRule::Coincident});
    dn.coincident = coincident.dancers;

    // Smoothing via the path-exchange transform of the coincident witness,
    // cross-checked by an independent search.
    Trace smooth = coincident_to_smoothing(code, coincident.trace);
    MinDanceResult independent =
        min_dancers(code, {ClassicalRule::OverFirst, VirtualRule::Smoothing});
    if (independent.dancers != coincident.dancers)
      throw std::logic_error("coincident and smoothing minima disagree on " +
                             serialize_code(code));
    dn.smoothing = coincident.dancers;
    dn.smoothingWitness =
        MinDanceResult{coincident.dancers, smooth.config(), smooth};
    dn.coincidentWitness = std::move(coincident);
  } catch (const Infeasible&) {
    // Verify the dual search agrees that no dancer count works.
    try {
      min_dancers(code, {ClassicalRule::OverFirst, VirtualRule::Smoothing});
      throw std::logic_error("smoothing feasible but coincident is not on " +
                             serialize_code(code));
    } catch (const Infeasible&) {
    }
  }
  return dn;
}

namespace detail {

namespace {

struct OpenCrossing {
  int id = 0;
  PassageKind pending = PassageKind::Over;  // kind the second visit must have
};

class CodeEnumerator {
 public:
  CodeEnumerator(int classical, int virtuals,
                 const std::function<bool(const DiagramCode&)>& sink)
      : classical_(classical), virtuals_(virtuals),
        total_(2 * (classical + virtuals)), sink_(sink) {}

  // Emits every first-appearance-labeled valid sequence that equals its own
  // canonical rotation: exactly one representative per cyclic class.
  bool run() {
    recurse();
    return !stopped_;
  }

 private:
  void recurse() {
    if (stopped_) return;
    const int placed = static_cast<int>(seq_.size());
    if (placed == total_) {
      DiagramCode code(seq_);
      if (code == canonical_rotation(code) && !sink_(code)) stopped_ = true;
      return;
    }
    const int remaining = total_ - placed;
    const int open_count = static_cast<int>(open_.size());
    const bool may_open = open_count + 1 <= remaining - 1;

    for (PassageKind kind :
         {PassageKind::Over, PassageKind::Under, PassageKind::Virtual}) {
      for (size_t i = 0; i < open_.size() && !stopped_; ++i)
        if (open_[i].pending == kind) close_at(i);
      if (stopped_) return;
      if (!may_open) continue;
      if (kind == PassageKind::Virtual) {
        if (opened_virtual_ < virtuals_) open_new(kind, PassageKind::Virtual);
      } else if (opened_classical_ < classical_) {
        open_new(kind, kind == PassageKind::Over ? PassageKind::Under
                                                 : PassageKind::Over);
      }
      if (stopped_) return;
    }
  }

  void close_at(size_t i) {
    const OpenCrossing entry = open_[i];
    open_.erase(open_.begin() + static_cast<long>(i));
    seq_.push_back({entry.id, entry.pending});
    recurse();
    seq_.pop_back();
    open_.insert(open_.begin() + static_cast<long>(i), entry);
  }

  void open_new(PassageKind emitted, PassageKind pending) {
    const int id = next_id_++;
    if (emitted == PassageKind::Virtual)
      ++opened_virtual_;
    else
      ++opened_classical_;
    open_.push_back({id, pending});
    seq_.push_back({id, emitted});
    recurse();
    seq_.pop_back();
    open_.pop_back();
    if (emitted == PassageKind::Virtual)
      --opened_virtual_;
    else
      --opened_classical_;
    --next_id_;
  }

  int classical_;
  int virtuals_;
  int total_;
  const std::function<bool(const DiagramCode&)>& sink_;
  std::vector<Passage> seq_;
  std::vector<OpenCrossing> open_;
  int opened_classical_ = 0;
  int opened_virtual_ = 0;
  int next_id_ = 1;
  bool stopped_ = false;
};

}  // namespace

bool enumerate_codes_unbounded(int classical_count, int virtual_count,
                               const std::function<bool(const DiagramCode&)>& sink) {
  if (classical_count < 0 || virtual_count < 0)
    throw std::invalid_argument("negative crossing count");
  if (classical_count == 0 && virtual_count == 0) return sink(DiagramCode{});
  return CodeEnumerator(classical_count, virtual_count, sink).run();
}

}  // namespace detail

bool enumerate_codes(int classical_count, int virtual_count,
                     const std::function<bool(const DiagramCode&)>& sink) {
  if (classical_count + virtual_count > 5)
    throw ResourceLimit("enumeration capped at 5 total crossings, asked for " +
                        std::to_string(classical_count + virtual_count));
  return detail::enumerate_codes_unbounded(classical_count, virtual_count, sink);
}

std::vector<DiagramCode> enumerate_codes(int classical_count, int virtual_count) {
  std::vector<DiagramCode> out;
  enumerate_codes(classical_count, virtual_count, [&](const DiagramCode& code) {
    out.push_back(code);
    return true;
  });
  return out;
}

bool PropertyReport::all_passed() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.passed(); });
}

std::string PropertyReport::to_text() const {
  std::ostringstream out;
  for (const PropertyResult& p : properties) {
    if (p.passed()) {
      out << "PASS " << p.name << " (" << p.checked << " checks)\n";
    } else {
      out << "FAIL " << p.name << " (" << p.failed << "/" << p.checked << " failed)";
      if (!p.counterexamples.empty()) out << " e.g. \"" << p.counterexamples.front() << "\"";
      out << '\n';
    }
  }
  return out.str();
}

std::vector<BraidWord> random_knot_words(int count, int max_strands, int max_letters,
                                         unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<BraidWord> words;
  if (max_strands < 2) max_strands = 2;
  std::uniform_int_distribution<int> strands_dist(2, max_strands);
  std::uniform_int_distribution<int> letters_dist(1, max_letters);
  std::uniform_int_distribution<int> kind_dist(0, 2);
  while (static_cast<int>(words.size()) < count) {
    BraidWord word;
    word.strands = strands_dist(rng);
    const int letters = letters_dist(rng);
    std::uniform_int_distribution<int> index_dist(1, word.strands - 1);
    for (int i = 0; i < letters; ++i) {
      BraidLetter l;
      l.kind = static_cast<BraidLetterKind>(kind_dist(rng));
      l.index = index_dist(rng);
      word.letters.push_back(l);
    }
    if (closure_components(word) == 1) words.push_back(std::move(word));
  }
  return words;
}

namespace {

struct PropertyAccumulator {
  PropertyResult& result;

  void check(bool ok, const std::string& counterexample) {
    ++result.checked;
    if (!ok) {
      ++result.failed;
      if (result.counterexamples.size() < 5)
        result.counterexamples.push_back(counterexample);
    }
  }

  template <typename F>
  void check_throws_nothing(F&& f, const std::string& counterexample) {
    ++result.checked;
    try {
      f();
    } catch (const std::exception& e) {
      ++result.failed;
      if (result.counterexamples.size() < 5)
        result.counterexamples.push_back(counterexample + " (" + e.what() + ")");
    }
  }
};

std::vector<Rule> rules_for(const DiagramCode& code) {
  std::vector<Rule> rules = {{ClassicalRule::OverFirst, VirtualRule::Unrestricted},
                             {ClassicalRule::UnderFirst, VirtualRule::Unrestricted}};
  if (code.virtual_crossings() > 0) {
    rules.push_back({ClassicalRule::OverFirst, VirtualRule::Coincident});
    rules.push_back({ClassicalRule::OverFirst, VirtualRule::Smoothing});
    rules.push_back({ClassicalRule::UnderFirst, VirtualRule::Coincident});
    rules.push_back({ClassicalRule::UnderFirst, VirtualRule::Smoothing});
  }
  return rules;
}

}  // namespace

PropertyReport check_properties(const std::vector<DiagramCode>& corpus,
                                const CheckOptions& options) {
  PropertyReport report;
  for (const char* name :
       {"retrograde-duality", "start-at-bridge", "upper-bound",
        "pipeline-bridge-equals-dance", "unrestricted-le-coincident",
        "coincident-equals-smoothing", "no-virtual-collapse", "greedy-equals-oracle",
        "braid-bound", "negative-control"})
    report.properties.push_back({name, 0, 0, {}});

  PropertyAccumulator retrograde{report.properties[0]};
  PropertyAccumulator start_at_bridge{report.properties[1]};
  PropertyAccumulator upper_bound{report.properties[2]};
  PropertyAccumulator pipeline{report.properties[3]};
  PropertyAccumulator rule_order{report.properties[4]};
  PropertyAccumulator coincident_smoothing{report.properties[5]};
  PropertyAccumulator collapse{report.properties[6]};
  PropertyAccumulator oracle_equiv{report.properties[7]};
  PropertyAccumulator braid_bound{report.properties[8]};
  PropertyAccumulator negative{report.properties[9]};

  for (const DiagramCode& code : corpus) {
    const std::string text = serialize_code(code);
    DanceNumbers dn;
    try {
      dn = dance_numbers(code);
    } catch (const std::exception& e) {
      coincident_smoothing.check(false, text + " (" + e.what() + ")");
      continue;
    }

    retrograde.check_throws_nothing(
        [&] {
          const MinDanceResult rev = min_dancers(
              reverse_code(code), {ClassicalRule::UnderFirst, VirtualRule::Unrestricted});
          if (rev.dancers != dn.overFirst)
            throw std::runtime_error("minima differ: " + std::to_string(dn.overFirst) +
                                     " vs " + std::to_string(rev.dancers));
          if (!code.empty()) retrograde_trace(code, dn.overFirstWitness->trace);
        },
        text);

    if (bridge_count(code) >= 1) {
      start_at_bridge.check_throws_nothing(
          [&] {
            const MinDanceResult restricted = min_dancers(
                code, {ClassicalRule::OverFirst, VirtualRule::Unrestricted}, true);
            if (restricted.dancers != dn.overFirst)
              throw std::runtime_error("restricted search found " +
                                       std::to_string(restricted.dancers));
          },
          text);
      upper_bound.check(dn.overFirst <= bridge_count(code) &&
                            dn.unrestricted.value_or(0) <= bridge_count(code),
                        text);
    }

    if (code.classical_crossings() >= 1 && code.virtual_crossings() == 0) {
      pipeline.check_throws_nothing(
          [&] {
            const ReduceResult rr = reduce_to_bridge_minimal(code);
            if (rr.bridges != rr.dancers || rr.dancers != dn.overFirst)
              throw std::runtime_error("reduced to " + std::to_string(rr.bridges) +
                                       " bridges, " + std::to_string(rr.dancers) +
                                       " dancers");
          },
          text);
    }

    if (dn.coincident) {
      rule_order.check(dn.unrestricted.value_or(0) <= *dn.coincident, text);
      coincident_smoothing.check_throws_nothing(
          [&] {
            if (dn.smoothing != dn.coincident)
              throw std::runtime_error("values differ");
            if (code.empty()) return;
            const Trace smooth = coincident_to_smoothing(code, dn.coincidentWitness->trace);
            const Trace back = smoothing_to_coincident(code, smooth);
            if (!(back == dn.coincidentWitness->trace))
              throw std::runtime_error("transform round-trip changed the trace");
          },
          text);
    }

    if (code.virtual_crossings() == 0)
      collapse.check(dn.unrestricted == dn.overFirst && dn.coincident == dn.overFirst &&
                         dn.smoothing == dn.overFirst,
                     text);

    if (options.includeOracleEquivalence && !code.empty()) {
      bool agree = true;
      std::string mismatch;
      std::vector<int> all(static_cast<size_t>(code.length()));
      std::iota(all.begin(), all.end(), 0);
      for (const Rule& rule : rules_for(code)) {
        for (int n = 1; n <= std::min(options.oracleMaxDancers, code.length()) && agree;
             ++n) {
          for (Combinations combos(all, n); !combos.done() && agree; combos.next()) {
            Configuration config(combos.current(), rule);
            const bool greedy = try_dance(code, config).has_value();
            const bool oracle =
                oracle_try_dance(code, config, options.stateLimit).has_value();
            if (greedy != oracle) {
              agree = false;
              std::ostringstream what;
              what << text << " starts";
              for (int s : combos.current()) what << ' ' << s;
              what << " rule " << rule_name(rule) << " greedy=" << greedy
                   << " oracle=" << oracle;
              mismatch = what.str();
            }
          }
        }
      }
      oracle_equiv.check(agree, mismatch.empty() ? text : mismatch);
    }
  }

  for (const BraidWord& word :
       random_knot_words(options.braidWordCount, options.braidMaxStrands,
                         options.braidMaxLetters, options.braidSeed)) {
    braid_bound.check_throws_nothing(
        [&] {
          const BraidSchedule schedule = braid_schedule(word);
          const MinDanceResult mr = min_dancers(
              schedule.code, {ClassicalRule::OverFirst, VirtualRule::Coincident});
          if (mr.dancers > word.strands)
            throw std::runtime_error("coincident number " + std::to_string(mr.dancers) +
                                     " exceeds " + std::to_string(word.strands) +
                                     " strands");
        },
        serialize_braid(word));
  }

  // Negative control: a deliberately truncated witness must be rejected.
  for (const DiagramCode& code : corpus) {
    if (code.empty()) continue;
    const MinDanceResult mr =
        min_dancers(code, {ClassicalRule::OverFirst, VirtualRule::Unrestricted});
    if (mr.trace.moves().size() < 2) continue;
    std::vector<Move> truncated(mr.trace.moves().begin(), mr.trace.moves().end() - 1);
    bool rejected = false;
    try {
      validate_trace(code, Trace(mr.config, std::move(truncated)));
    } catch (const InvalidTrace&) {
      rejected = true;
    }
    negative.check(rejected, serialize_code(code));
    break;
  }

  return report;
}

}  // namespace knotdance
