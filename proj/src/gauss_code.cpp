#include "knotdance/gauss_code.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>
#include <utility>

namespace knotdance {

namespace {

int kind_rank(PassageKind k) {
  switch (k) {
    case PassageKind::Over:
      return 0;
    case PassageKind::Under:
      return 1;
    case PassageKind::Virtual:
      return 2;
  }
  return 3;
}

std::pair<int, int> passage_key(const Passage& p) {
  return {kind_rank(p.kind), p.crossing};
}

bool lex_less(const std::vector<Passage>& a, const std::vector<Passage>& b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [](const Passage& x, const Passage& y) { return passage_key(x) < passage_key(y); });
}

// Parses a full positive integer; rejects partial matches like "1a".
int parse_positive_int(std::string_view s, const std::string& token) {
  int value = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || value <= 0)
    throw SyntaxError("malformed token '" + token + "'");
  return value;
}

}  // namespace

std::string passage_token(const Passage& p) {
  switch (p.kind) {
    case PassageKind::Over:
      return std::to_string(p.crossing) + "+";
    case PassageKind::Under:
      return std::to_string(p.crossing) + "-";
    case PassageKind::Virtual:
      return "v" + std::to_string(p.crossing);
  }
  return "?";
}

DiagramCode::DiagramCode(std::vector<Passage> passages) : passages_(std::move(passages)) {
  // id -> (indices seen, kinds seen)
  std::map<int, std::vector<int>> seen;
  for (int i = 0; i < length(); ++i) {
    const Passage& p = passages_[static_cast<size_t>(i)];
    if (p.crossing <= 0)
      throw ValidationError("crossing identifier " + std::to_string(p.crossing) +
                            " is not positive");
    seen[p.crossing].push_back(i);
  }

  partner_.assign(passages_.size(), -1);
  for (const auto& [id, indices] : seen) {
    if (indices.size() != 2)
      throw ValidationError("crossing " + std::to_string(id) + " appears " +
                            std::to_string(indices.size()) + " times, expected 2");
    const Passage& a = passages_[static_cast<size_t>(indices[0])];
    const Passage& b = passages_[static_cast<size_t>(indices[1])];
    const bool a_virtual = a.kind == PassageKind::Virtual;
    const bool b_virtual = b.kind == PassageKind::Virtual;
    if (a_virtual != b_virtual)
      throw ValidationError("crossing " + std::to_string(id) +
                            " is used as both classical and virtual");
    if (a_virtual) {
      ++virtual_;
    } else {
      if (a.kind == b.kind)
        throw ValidationError("crossing " + std::to_string(id) + " appears with kind " +
                              (a.kind == PassageKind::Over ? "Over" : "Under") + " twice");
      ++classical_;
    }
    partner_[static_cast<size_t>(indices[0])] = indices[1];
    partner_[static_cast<size_t>(indices[1])] = indices[0];
  }
}

DiagramCode parse_code(const std::string& text) {
  std::vector<Passage> passages;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    Passage p;
    if (token.front() == 'v') {
      p.kind = PassageKind::Virtual;
      p.crossing = parse_positive_int(std::string_view(token).substr(1), token);
    } else if (token.back() == '+' || token.back() == '-') {
      p.kind = token.back() == '+' ? PassageKind::Over : PassageKind::Under;
      p.crossing =
          parse_positive_int(std::string_view(token).substr(0, token.size() - 1), token);
    } else {
      throw SyntaxError("malformed token '" + token + "'");
    }
    passages.push_back(p);
  }
  return DiagramCode(std::move(passages));
}

std::string serialize_code(const DiagramCode& code) {
  std::string out;
  for (int i = 0; i < code.length(); ++i) {
    if (i != 0) out += ' ';
    out += passage_token(code[i]);
  }
  return out;
}

DiagramCode reverse_code(const DiagramCode& code) {
  std::vector<Passage> passages(code.passages().rbegin(), code.passages().rend());
  return DiagramCode(std::move(passages));
}

DiagramCode canonical_rotation(const DiagramCode& code) {
  const int n = code.length();
  if (n == 0) return code;

  std::vector<Passage> best;
  for (int r = 0; r < n; ++r) {
    std::vector<Passage> candidate;
    candidate.reserve(static_cast<size_t>(n));
    std::map<int, int> relabel;
    int next_id = 1;
    for (int i = 0; i < n; ++i) {
      Passage p = code[(r + i) % n];
      auto [it, inserted] = relabel.try_emplace(p.crossing, next_id);
      if (inserted) ++next_id;
      p.crossing = it->second;
      candidate.push_back(p);
    }
    if (best.empty() || lex_less(candidate, best)) best = std::move(candidate);
  }
  return DiagramCode(std::move(best));
}

bool cyclic_equal(const DiagramCode& a, const DiagramCode& b) {
  if (a.length() != b.length()) return false;
  return canonical_rotation(a) == canonical_rotation(b);
}

}  // namespace knotdance
