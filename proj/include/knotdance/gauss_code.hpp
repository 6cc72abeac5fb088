#pragma once

#include <string>
#include <vector>

#include "knotdance/errors.hpp"

namespace knotdance {

enum class PassageKind { Over, Under, Virtual };

/// One visit of the traversal to a crossing.
struct Passage {
  int crossing = 0;  // positive identifier, no ordering semantics
  PassageKind kind = PassageKind::Over;

  friend bool operator==(const Passage&, const Passage&) = default;
};

/// Token form: "3+" (over), "3-" (under), "v3" (virtual).
std::string passage_token(const Passage& p);

/// Extended Gauss code of an oriented diagram: a cyclic sequence of passages.
///
/// Invariants (checked at construction): every classical crossing id appears
/// exactly once over and once under; every virtual id appears exactly twice
/// as Virtual; no id is both classical and virtual. operator== is positional;
/// use cyclic_equal for rotation-invariant comparison.
class DiagramCode {
 public:
  DiagramCode() = default;
  explicit DiagramCode(std::vector<Passage> passages);

  int length() const { return static_cast<int>(passages_.size()); }
  bool empty() const { return passages_.empty(); }
  const Passage& operator[](int i) const { return passages_[static_cast<size_t>(i)]; }
  const std::vector<Passage>& passages() const { return passages_; }

  /// Index of the other passage of the same crossing.
  int partner(int i) const { return partner_[static_cast<size_t>(i)]; }

  int classical_crossings() const { return classical_; }
  int virtual_crossings() const { return virtual_; }

  friend bool operator==(const DiagramCode& a, const DiagramCode& b) {
    return a.passages_ == b.passages_;
  }

 private:
  std::vector<Passage> passages_;
  std::vector<int> partner_;
  int classical_ = 0;
  int virtual_ = 0;
};

/// Parses whitespace-separated tokens `<int>+`, `<int>-`, `v<int>` with
/// positive ids. Throws SyntaxError on malformed tokens, ValidationError
/// when the pairing invariants fail.
DiagramCode parse_code(const std::string& text);

/// Inverse of parse_code from index 0.
std::string serialize_code(const DiagramCode& code);

/// Reverses the traversal (orientation flip); kinds are unchanged.
DiagramCode reverse_code(const DiagramCode& code);

/// Lexicographically least rotation after relabeling crossings in
/// first-appearance order. Idempotent; constant on rotation orbits.
DiagramCode canonical_rotation(const DiagramCode& code);

/// Rotation-invariant equality.
bool cyclic_equal(const DiagramCode& a, const DiagramCode& b);

}  // namespace knotdance
