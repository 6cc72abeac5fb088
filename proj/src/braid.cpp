#include "knotdance/braid.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace knotdance {

namespace {

int parse_index(std::string_view s, const std::string& token, int strands) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || value <= 0)
    throw SyntaxError("malformed braid token '" + token + "'");
  if (value > strands - 1)
    throw IndexOutOfRange("letter index " + std::to_string(value) + " needs at least " +
                          std::to_string(value + 1) + " strands, word has " +
                          std::to_string(strands));
  return value;
}

}  // namespace

BraidWord parse_braid(const std::string& text) {
  std::istringstream in(text);
  std::string token;
  if (!(in >> token)) throw SyntaxError("empty braid word, expected n=<k>");
  if (token.rfind("n=", 0) != 0)
    throw SyntaxError("braid word must start with n=<k>, got '" + token + "'");

  BraidWord word;
  {
    const std::string_view s = std::string_view(token).substr(2);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), word.strands);
    if (ec != std::errc{} || ptr != s.data() + s.size() || word.strands < 1)
      throw SyntaxError("malformed strand count '" + token + "'");
  }

  while (in >> token) {
    BraidLetter letter;
    switch (token.front()) {
      case 's':
        letter.kind = BraidLetterKind::Sigma;
        break;
      case 'S':
        letter.kind = BraidLetterKind::SigmaInv;
        break;
      case 'v':
        letter.kind = BraidLetterKind::Tau;
        break;
      default:
        throw SyntaxError("malformed braid token '" + token + "'");
    }
    letter.index = parse_index(std::string_view(token).substr(1), token, word.strands);
    word.letters.push_back(letter);
  }
  return word;
}

std::string serialize_braid(const BraidWord& word) {
  std::string out = "n=" + std::to_string(word.strands);
  for (const BraidLetter& l : word.letters) {
    out += ' ';
    switch (l.kind) {
      case BraidLetterKind::Sigma:
        out += 's';
        break;
      case BraidLetterKind::SigmaInv:
        out += 'S';
        break;
      case BraidLetterKind::Tau:
        out += 'v';
        break;
    }
    out += std::to_string(l.index);
  }
  return out;
}

int closure_components(const BraidWord& word) {
  const int n = word.strands;
  std::vector<int> top(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    int pos = j + 1;
    for (const BraidLetter& l : word.letters) {
      if (pos == l.index)
        pos = l.index + 1;
      else if (pos == l.index + 1)
        pos = l.index;
    }
    top[static_cast<size_t>(j)] = pos - 1;
  }
  std::vector<bool> seen(static_cast<size_t>(n), false);
  int cycles = 0;
  for (int j = 0; j < n; ++j) {
    if (seen[static_cast<size_t>(j)]) continue;
    ++cycles;
    for (int k = j; !seen[static_cast<size_t>(k)]; k = top[static_cast<size_t>(k)])
      seen[static_cast<size_t>(k)] = true;
  }
  return cycles;
}

namespace {

// Everything the closure traversal learns, reused by braid_schedule.
struct ClosureData {
  DiagramCode code;
  std::vector<int> strand_start;             // bottom of strand position j -> arc index
  std::map<std::pair<int, int>, int> visit;  // (letter, entering position) -> passage index
};

ClosureData traverse_closure(const BraidWord& word) {
  const int components = closure_components(word);
  if (components != 1) throw NotAKnot(components);

  ClosureData data;
  data.strand_start.assign(static_cast<size_t>(word.strands), -1);
  if (word.letters.empty()) {
    // Single strand, crossingless closure.
    data.strand_start[0] = 0;
    return data;
  }

  std::vector<Passage> passages;
  int pos = 1;
  do {
    data.strand_start[static_cast<size_t>(pos - 1)] = static_cast<int>(passages.size());
    for (int l = 0; l < static_cast<int>(word.letters.size()); ++l) {
      const BraidLetter& letter = word.letters[static_cast<size_t>(l)];
      if (pos != letter.index && pos != letter.index + 1) continue;
      const bool from_left = pos == letter.index;
      Passage p;
      p.crossing = l + 1;
      switch (letter.kind) {
        case BraidLetterKind::Sigma:
          p.kind = from_left ? PassageKind::Over : PassageKind::Under;
          break;
        case BraidLetterKind::SigmaInv:
          p.kind = from_left ? PassageKind::Under : PassageKind::Over;
          break;
        case BraidLetterKind::Tau:
          p.kind = PassageKind::Virtual;
          break;
      }
      data.visit[{l, pos}] = static_cast<int>(passages.size());
      passages.push_back(p);
      pos = from_left ? letter.index + 1 : letter.index;
    }
  } while (pos != 1);

  data.code = DiagramCode(std::move(passages));
  return data;
}

}  // namespace

DiagramCode braid_closure(const BraidWord& word) { return traverse_closure(word).code; }

BraidSchedule braid_schedule(const BraidWord& word) {
  ClosureData data = traverse_closure(word);
  const Rule rule{ClassicalRule::OverFirst, VirtualRule::Coincident};
  if (data.code.empty())
    return {data.code, Trace(Configuration::trivial(rule), {})};

  // Dancer ids follow sorted start order.
  std::vector<int> starts = data.strand_start;
  std::sort(starts.begin(), starts.end());
  std::vector<int> dancer_at(static_cast<size_t>(word.strands));  // per strand position
  for (int j = 0; j < word.strands; ++j) {
    const auto it = std::find(starts.begin(), starts.end(),
                              data.strand_start[static_cast<size_t>(j)]);
    dancer_at[static_cast<size_t>(j)] = static_cast<int>(it - starts.begin());
  }

  std::vector<Move> moves;
  int time = 0;
  for (int l = 0; l < static_cast<int>(word.letters.size()); ++l) {
    const BraidLetter& letter = word.letters[static_cast<size_t>(l)];
    const int left = dancer_at[static_cast<size_t>(letter.index - 1)];
    const int right = dancer_at[static_cast<size_t>(letter.index)];
    const int left_passage = data.visit.at({l, letter.index});
    const int right_passage = data.visit.at({l, letter.index + 1});

    if (letter.kind == BraidLetterKind::Tau) {
      Move m;
      m.time = time++;
      m.dancer = left;
      m.passage = left_passage;
      m.dancer2 = right;
      m.passage2 = right_passage;
      moves.push_back(m);
    } else {
      const bool left_is_over = letter.kind == BraidLetterKind::Sigma;
      Move over;
      over.time = time++;
      over.dancer = left_is_over ? left : right;
      over.passage = left_is_over ? left_passage : right_passage;
      moves.push_back(over);
      Move under;
      under.time = time++;
      under.dancer = left_is_over ? right : left;
      under.passage = left_is_over ? right_passage : left_passage;
      moves.push_back(under);
    }
    std::swap(dancer_at[static_cast<size_t>(letter.index - 1)],
              dancer_at[static_cast<size_t>(letter.index)]);
  }

  Trace trace(Configuration(starts, rule), std::move(moves));
  validate_trace(data.code, trace);
  return {data.code, std::move(trace)};
}

}  // namespace knotdance
