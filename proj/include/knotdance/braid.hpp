#pragma once

#include <string>
#include <vector>

#include "knotdance/dance.hpp"
#include "knotdance/gauss_code.hpp"

namespace knotdance {

enum class BraidLetterKind { Sigma, SigmaInv, Tau };

struct BraidLetter {
  BraidLetterKind kind = BraidLetterKind::Sigma;
  int index = 0;  // crossing between strand positions index and index+1

  friend bool operator==(const BraidLetter&, const BraidLetter&) = default;
};

/// Word in the virtual braid generators: sigma(i) positive classical,
/// sigma_inv(i) negative classical, tau(i) virtual.
struct BraidWord {
  int strands = 1;
  std::vector<BraidLetter> letters;

  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

/// Grammar: "n=<k>" then letters `s<i>` (sigma), `S<i>` (sigma inverse),
/// `v<i>` (tau). Throws SyntaxError / IndexOutOfRange.
BraidWord parse_braid(const std::string& text);

std::string serialize_braid(const BraidWord& word);

/// Number of components of the word's closure (cycles of the strand
/// permutation).
int closure_components(const BraidWord& word);

/// Extended Gauss code of the closure, traversed from the bottom of strand 1
/// in the upward braid orientation. At sigma(i) the strand moving from
/// position i to i+1 passes over; at sigma_inv(i) it passes under. Crossing
/// ids are letter positions (1-based). Throws NotAKnot when the closure has
/// more than one component.
DiagramCode braid_closure(const BraidWord& word);

struct BraidSchedule {
  DiagramCode code;
  Trace trace;
};

/// Closure code plus the constructive coincident dance: one dancer per
/// strand, advancing level by level; the over-strand dancer takes each
/// classical crossing first and tau letters become rendezvous moves.
BraidSchedule braid_schedule(const BraidWord& word);

}  // namespace knotdance
