// Command-line interface: compute, reduce, trace, closure, enumerate, check.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "knotdance/braid.hpp"
#include "knotdance/bridges.hpp"
#include "knotdance/dance.hpp"
#include "knotdance/gauss_code.hpp"
#include "knotdance/search.hpp"

using nlohmann::json;
using namespace knotdance;

namespace {

struct InputLine {
  int number = 0;
  std::string text;
};

// One code per line; lines whose first non-blank character is '#' are
// comments. A blank line is the empty (crossingless) code.
std::vector<InputLine> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open input file '" + path + "'");
  std::vector<InputLine> lines;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos && line[first] == '#') continue;
    lines.push_back({number, line});
  }
  return lines;
}

Rule rule_from_name(const std::string& name) {
  if (name == "over" || name == "unrestricted")
    return {ClassicalRule::OverFirst, VirtualRule::Unrestricted};
  if (name == "under") return {ClassicalRule::UnderFirst, VirtualRule::Unrestricted};
  if (name == "coincident") return {ClassicalRule::OverFirst, VirtualRule::Coincident};
  if (name == "smoothing") return {ClassicalRule::OverFirst, VirtualRule::Smoothing};
  throw Error("unknown rule '" + name + "'");
}

json bridges_to_json(const BridgeReport& report) {
  json runs = json::array();
  for (const BridgeRun& run : report.runs) runs.push_back(run.passages);
  return {{"count", report.count}, {"runs", runs}};
}

json moves_to_json(const DiagramCode& code, const std::vector<Move>& moves) {
  json out = json::array();
  for (const Move& m : moves) {
    if (m.rendezvous()) {
      out.push_back({{"t", m.time},
                     {"kind", "rendezvous"},
                     {"dancers", {m.dancer, m.dancer2}},
                     {"passages", {m.passage, m.passage2}},
                     {"crossing", code[m.passage].crossing}});
    } else {
      out.push_back({{"t", m.time},
                     {"kind", "advance"},
                     {"dancer", m.dancer},
                     {"passage", m.passage}});
    }
  }
  return out;
}

json trace_to_json(const DiagramCode& code, const Trace& trace) {
  return {{"starts", trace.config().starts()},
          {"rule", rule_name(trace.config().rule())},
          {"moves", moves_to_json(code, trace.moves())}};
}

json bounds_to_json(const DiagramCode& code, const BridgeReport& bridges,
                    const DanceNumbers& dn) {
  // Knot-level certified upper bounds from this diagram; the crossingless
  // diagram certifies the unknot convention br = b1 = 1.
  json bounds;
  const int b1 = bridges.count == 0 ? 1 : bridges.count;
  bounds["b1"] = b1;
  if (code.virtual_crossings() == 0) bounds["br"] = b1;
  bounds["da"] = dn.overFirst;
  if (dn.unrestricted) bounds["da_u"] = *dn.unrestricted;
  if (dn.coincident) bounds["da_c"] = *dn.coincident;
  if (dn.smoothing) bounds["da_s"] = *dn.smoothing;
  return bounds;
}

std::string starts_text(const Configuration& config) {
  std::string out;
  for (int s : config.starts()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(s);
  }
  return out.empty() ? "trivial" : out;
}

struct ComputeOptions {
  std::string rule = "all";
  bool restrictStarts = false;
  bool withTrace = false;
  bool jsonLines = false;
};

int cmd_compute(const std::string& path, const ComputeOptions& opts) {
  bool any_error = false;
  for (const InputLine& line : read_lines(path)) {
    try {
      const DiagramCode code = parse_code(line.text);
      const BridgeReport bridges = find_bridges(code);
      json record{{"line", line.number}, {"code", serialize_code(code)}};
      record["bridges"] = bridges_to_json(bridges);

      std::ostringstream text;
      text << "line " << line.number << ": " << serialize_code(code) << "\n"
           << "  bridges: " << bridges.count;
      if (bridges.count > 0) {
        text << " (starts";
        for (const BridgeRun& run : bridges.runs) text << ' ' << run.start();
        text << ")";
      }
      text << "\n";

      if (opts.rule == "all") {
        const DanceNumbers dn = dance_numbers(code);
        json dance{{"overFirst", dn.overFirst}, {"underFirst", dn.underFirst}};
        dance["unrestricted"] = dn.unrestricted ? json(*dn.unrestricted) : json();
        dance["coincident"] = dn.coincident ? json(*dn.coincident) : json();
        dance["smoothing"] = dn.smoothing ? json(*dn.smoothing) : json();
        record["dance"] = dance;
        record["bounds"] = bounds_to_json(code, bridges, dn);
        text << "  over-first: " << dn.overFirst << "  under-first: " << dn.underFirst
             << "  unrestricted: "
             << (dn.unrestricted ? std::to_string(*dn.unrestricted) : "infeasible")
             << "  coincident: "
             << (dn.coincident ? std::to_string(*dn.coincident) : "infeasible")
             << "  smoothing: "
             << (dn.smoothing ? std::to_string(*dn.smoothing) : "infeasible") << "\n";
        if (opts.withTrace && dn.overFirstWitness && !code.empty()) {
          record["trace"] = trace_to_json(code, dn.overFirstWitness->trace);
          text << render_trace_table(code, dn.overFirstWitness->trace);
        }
      } else {
        const Rule rule = rule_from_name(opts.rule);
        const MinDanceResult mr = min_dancers(code, rule, opts.restrictStarts);
        record["rule"] = rule_name(rule);
        record["dancers"] = mr.dancers;
        record["starts"] = mr.config.starts();
        text << "  " << rule_name(rule) << ": " << mr.dancers << " (starts "
             << starts_text(mr.config) << ")\n";
        if (opts.withTrace && !code.empty()) {
          record["trace"] = trace_to_json(code, mr.trace);
          text << render_trace_table(code, mr.trace);
        }
      }

      if (opts.jsonLines)
        std::cout << record.dump() << "\n";
      else
        std::cout << text.str();
    } catch (const Error& e) {
      any_error = true;
      if (opts.jsonLines)
        std::cout << json{{"line", line.number}, {"error", e.what()}}.dump() << "\n";
      else
        std::cout << "line " << line.number << ": error: " << e.what() << "\n";
    }
  }
  return any_error ? 2 : 0;
}

int cmd_reduce(const std::string& path, bool jsonLines) {
  bool any_error = false;
  for (const InputLine& line : read_lines(path)) {
    try {
      const DiagramCode code = parse_code(line.text);
      json record{{"line", line.number}, {"code", serialize_code(code)}};
      std::ostringstream text;
      text << "line " << line.number << ": " << serialize_code(code) << "\n";
      if (code.classical_crossings() == 0) {
        record["status"] = "no-classical-crossings";
        text << "  no-classical-crossings\n";
      } else {
        const ReduceResult rr = reduce_to_bridge_minimal(code);
        const int before = bridge_count(code);
        record["status"] = rr.slides == 0 ? "already-minimal" : "reduced";
        record["reduced"] = serialize_code(rr.code);
        record["bridgesBefore"] = before;
        record["bridgesAfter"] = rr.bridges;
        record["dancers"] = rr.dancers;
        record["slides"] = rr.slides;
        if (rr.slides == 0) {
          text << "  already-minimal: bridges " << rr.bridges << " = dancers "
               << rr.dancers << "\n";
        } else {
          text << "  reduced: " << serialize_code(rr.code) << "\n  bridges: " << before
               << " -> " << rr.bridges << ", dancers: " << rr.dancers << ", slides: "
               << rr.slides << "\n";
        }
      }
      if (jsonLines)
        std::cout << record.dump() << "\n";
      else
        std::cout << text.str();
    } catch (const Error& e) {
      any_error = true;
      if (jsonLines)
        std::cout << json{{"line", line.number}, {"error", e.what()}}.dump() << "\n";
      else
        std::cout << "line " << line.number << ": error: " << e.what() << "\n";
    }
  }
  return any_error ? 2 : 0;
}

int cmd_trace(const std::optional<std::string>& path,
              const std::optional<std::string>& codeText, const std::string& ruleName,
              const std::string& startsSpec, bool restrictStarts, bool jsonLines) {
  std::vector<InputLine> lines;
  if (codeText) {
    lines.push_back({1, *codeText});
  } else if (path) {
    lines = read_lines(*path);
  } else {
    throw Error("trace needs an input file or --code");
  }

  bool any_error = false;
  for (const InputLine& line : lines) {
    try {
      const DiagramCode code = parse_code(line.text);
      if (code.empty()) throw Error("nothing to trace on the empty code");
      const Rule rule = rule_from_name(ruleName);
      std::optional<Trace> trace;
      if (!startsSpec.empty()) {
        std::vector<int> starts;
        std::istringstream ss(startsSpec);
        std::string item;
        while (std::getline(ss, item, ',')) starts.push_back(std::stoi(item));
        trace = try_dance(code, Configuration(starts, rule));
        if (!trace) throw Error("configuration admits no valid dance");
      } else {
        trace = min_dancers(code, rule, restrictStarts).trace;
      }
      const std::string table = render_trace_table(code, *trace);
      if (jsonLines) {
        json record{{"line", line.number},
                    {"code", serialize_code(code)},
                    {"trace", trace_to_json(code, *trace)},
                    {"table", table}};
        std::cout << record.dump() << "\n";
      } else {
        std::cout << "line " << line.number << ": " << serialize_code(code) << "\n"
                  << table;
      }
    } catch (const Error& e) {
      any_error = true;
      if (jsonLines)
        std::cout << json{{"line", line.number}, {"error", e.what()}}.dump() << "\n";
      else
        std::cout << "line " << line.number << ": error: " << e.what() << "\n";
    }
  }
  return any_error ? 2 : 0;
}

int cmd_closure(const std::string& wordText, bool withSchedule, bool jsonLines) {
  const BraidWord word = parse_braid(wordText);
  if (withSchedule) {
    const BraidSchedule schedule = braid_schedule(word);
    if (jsonLines) {
      json record{{"word", serialize_braid(word)},
                  {"code", serialize_code(schedule.code)},
                  {"dancers", schedule.trace.config().dancers()},
                  {"trace", trace_to_json(schedule.code, schedule.trace)}};
      std::cout << record.dump() << "\n";
    } else {
      std::cout << serialize_code(schedule.code) << "\n";
      if (!schedule.code.empty())
        std::cout << render_trace_table(schedule.code, schedule.trace);
    }
  } else {
    const DiagramCode code = braid_closure(word);
    if (jsonLines)
      std::cout << json{{"word", serialize_braid(word)}, {"code", serialize_code(code)}}
                       .dump()
                << "\n";
    else
      std::cout << serialize_code(code) << "\n";
  }
  return 0;
}

int cmd_enumerate(int classical, int virtuals, bool jsonLines) {
  enumerate_codes(classical, virtuals, [&](const DiagramCode& code) {
    if (jsonLines)
      std::cout << json{{"code", serialize_code(code)}}.dump() << "\n";
    else
      std::cout << serialize_code(code) << "\n";
    return true;
  });
  return 0;
}

int cmd_check(int maxClassical, int maxVirtual, bool jsonLines) {
  if (maxClassical + maxVirtual > 5)
    throw ResourceLimit("check capped at 5 total crossings, asked for " +
                        std::to_string(maxClassical + maxVirtual));
  std::vector<DiagramCode> corpus;
  for (int c = 0; c <= maxClassical; ++c)
    for (int v = 0; v <= maxVirtual; ++v)
      for (DiagramCode& code : enumerate_codes(c, v)) corpus.push_back(std::move(code));

  const PropertyReport report = check_properties(corpus);
  if (jsonLines) {
    for (const PropertyResult& p : report.properties) {
      json record{{"property", p.name},
                  {"checked", p.checked},
                  {"failed", p.failed},
                  {"counterexamples", p.counterexamples}};
      std::cout << record.dump() << "\n";
    }
  } else {
    std::cout << "corpus: " << corpus.size() << " codes (<= " << maxClassical
              << " classical, <= " << maxVirtual << " virtual)\n"
              << report.to_text();
  }
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"danceability and bridge numbers of (virtual) knot diagrams"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json-lines"}))
      ->capture_default_str();

  std::string computeInput;
  ComputeOptions computeOpts;
  auto* compute = app.add_subcommand("compute", "bridge and dance numbers per code line");
  compute->add_option("input", computeInput, "file of code lines")->required();
  compute->add_option("--rule", computeOpts.rule, "rule to minimize")
      ->check(CLI::IsMember({"over", "under", "unrestricted", "coincident", "smoothing", "all"}))
      ->capture_default_str();
  compute->add_flag("--restrict-starts", computeOpts.restrictStarts,
                    "restrict candidate starts to bridge starts");
  compute->add_flag("--trace", computeOpts.withTrace, "include a witness trace");

  std::string reduceInput;
  auto* reduce = app.add_subcommand("reduce", "bridge-slide reduction per code line");
  reduce->add_option("input", reduceInput, "file of code lines")->required();

  std::optional<std::string> traceInput;
  std::optional<std::string> traceCode;
  std::string traceRule = "over";
  std::string traceStarts;
  bool traceRestrict = false;
  auto* trace = app.add_subcommand("trace", "print a dance table");
  trace->add_option("input", traceInput, "file of code lines");
  trace->add_option("--code", traceCode, "one code given inline");
  trace->add_option("--rule", traceRule, "rule")
      ->check(CLI::IsMember({"over", "under", "unrestricted", "coincident", "smoothing"}))
      ->capture_default_str();
  trace->add_option("--starts", traceStarts, "comma-separated start arcs (else minimal)");
  trace->add_flag("--restrict-starts", traceRestrict,
                  "restrict minimal search to bridge starts");

  std::string closureWord;
  bool closureSchedule = false;
  auto* closure = app.add_subcommand("closure", "Gauss code of a braid closure");
  closure->add_option("word", closureWord, "braid word, e.g. \"n=2 s1 s1 s1\"")->required();
  closure->add_flag("--schedule", closureSchedule, "also print the coincident dance");

  int enumClassical = 0;
  int enumVirtual = 0;
  auto* enumerate = app.add_subcommand("enumerate", "codes with exact crossing counts");
  enumerate->add_option("--classical", enumClassical, "classical crossing count")
      ->capture_default_str();
  enumerate->add_option("--virtual", enumVirtual, "virtual crossing count")
      ->capture_default_str();

  int checkClassical = 3;
  int checkVirtual = 0;
  auto* check = app.add_subcommand("check", "run the property suite on small codes");
  check->add_option("--max-classical", checkClassical, "max classical crossings")
      ->capture_default_str();
  check->add_option("--max-virtual", checkVirtual, "max virtual crossings")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  const bool jsonLines = format == "json-lines";

  try {
    if (compute->parsed()) {
      computeOpts.jsonLines = jsonLines;
      return cmd_compute(computeInput, computeOpts);
    }
    if (reduce->parsed()) return cmd_reduce(reduceInput, jsonLines);
    if (trace->parsed())
      return cmd_trace(traceInput, traceCode, traceRule, traceStarts, traceRestrict,
                       jsonLines);
    if (closure->parsed()) return cmd_closure(closureWord, closureSchedule, jsonLines);
    if (enumerate->parsed()) return cmd_enumerate(enumClassical, enumVirtual, jsonLines);
    if (check->parsed()) return cmd_check(checkClassical, checkVirtual, jsonLines);
  } catch (const ResourceLimit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
