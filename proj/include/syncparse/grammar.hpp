#ifndef SYNCPARSE_GRAMMAR_HPP
#define SYNCPARSE_GRAMMAR_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "syncparse/permutation.hpp"

namespace syncparse {
namespace grammar {

// One symbol of a rule component: either a terminal token or an indexed
// nonterminal occurrence. Indices are canonical after parsing: the left
// component reads 1..r left to right.
struct Symbol {
  bool is_nonterminal = false;
  std::string name;  // terminal token text, or nonterminal name
  int index = 0;     // linking index; 0 for terminals

  bool operator==(const Symbol& o) const {
    return is_nonterminal == o.is_nonterminal && name == o.name && index == o.index;
  }
  bool operator<(const Symbol& o) const {
    if (is_nonterminal != o.is_nonterminal) return is_nonterminal < o.is_nonterminal;
    if (name != o.name) return name < o.name;
    return index < o.index;
  }
};

// A synchronous rule: two components rewritten together, nonterminal
// occurrences linked by index.
struct SynchronousRule {
  std::string label;  // s1, s2, ... in file order
  std::string left_lhs, right_lhs;
  std::vector<Symbol> left_rhs, right_rhs;
  int r = 0;  // number of linked pairs

  // Left-side nonterminal names in canonical index order (entry i-1 is the
  // name at index i), and the right-side names per canonical index.
  std::vector<std::string> left_nt_names, right_nt_names;
};

struct SCFG {
  std::set<std::string> nonterminals;
  std::set<std::string> terminals;
  std::string start;
  std::vector<SynchronousRule> rules;
};

// A pair of token strings.
struct SentencePair {
  std::vector<std::string> w1, w2;

  bool operator==(const SentencePair& o) const { return w1 == o.w1 && w2 == o.w2; }
  bool operator<(const SentencePair& o) const {
    if (w1 != o.w1) return w1 < o.w1;
    return w2 < o.w2;
  }
  int total_length() const { return static_cast<int>(w1.size() + w2.size()); }
};

// Raised when the bounded membership oracle cannot certify an answer within
// its derivation budget.
class BoundExceeded : public std::runtime_error {
public:
  explicit BoundExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// Parses the line-oriented grammar format:
//   # comment
//   start: X
//   LHS1 -> sym sym ... ; LHS2 -> sym sym ...
// where an uppercase identifier followed by [k] is an indexed nonterminal and
// a lowercase identifier or single-quoted string is a terminal. Indices are
// renumbered so each rule's left component reads 1..r. Errors carry
// line/column positions.
SCFG parse_grammar(const std::string& text);

std::string format_grammar(const SCFG& g);

// The permutation read off the right component: pi(j) is the canonical index
// of the j-th right-side nonterminal. Requires rule.r >= 1.
Permutation rule_permutation(const SynchronousRule& rule);

// All sentence pairs derivable from [S(1), S(1)] in at most max_steps
// canonical (leftmost-in-left) rule applications.
std::set<SentencePair> enumerate_translations(const SCFG& g, int max_steps);

// Bounded-enumeration membership: true iff p is derivable. Prunes on derived
// terminal prefixes and per-side lengths; throws BoundExceeded when the step
// budget runs out before rejection is certain (cannot happen for grammars
// whose every rule application adds at least one terminal).
bool pair_membership_oracle(const SCFG& g, const SentencePair& p);

// Number of distinct canonical derivations of p found by bounded enumeration.
// Same budget behavior as pair_membership_oracle.
long long count_derivations_oracle(const SCFG& g, const SentencePair& p);

// Splits on whitespace when present, otherwise one token per character.
std::vector<std::string> tokenize_sentence(const std::string& text);

}  // namespace grammar
}  // namespace syncparse

#endif
