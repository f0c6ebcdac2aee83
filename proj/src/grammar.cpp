#include "syncparse/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>

namespace syncparse {
namespace grammar {

namespace {

struct Token {
  std::string text;
  int column = 0;    // 1-based position in the line
  bool quoted = false;
};

[[noreturn]] void fail(int line, int column, const std::string& msg) {
  std::ostringstream os;
  os << "line " << line << ", column " << column << ": " << msg;
  throw InputError(os.str());
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Splits a rule-line fragment into tokens, honoring single-quoted terminals.
std::vector<Token> scan_tokens(const std::string& text, int line, int col_base) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    int col = col_base + static_cast<int>(i);
    if (c == '\'') {
      size_t close = text.find('\'', i + 1);
      if (close == std::string::npos) fail(line, col, "unterminated quoted terminal");
      out.push_back({text.substr(i + 1, close - i - 1), col, true});
      if (out.back().text.empty()) fail(line, col, "empty quoted terminal");
      i = close + 1;
    } else {
      size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
             text[j] != '\'')
        ++j;
      out.push_back({text.substr(i, j - i), col, false});
      i = j;
    }
  }
  return out;
}

// Strips a trailing comment, leaving quoted apostrophes alone.
std::string strip_comment(const std::string& line) {
  bool in_quote = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '\'') in_quote = !in_quote;
    else if (line[i] == '#' && !in_quote) return line.substr(0, i);
  }
  return line;
}

struct RawSymbol {
  Symbol sym;
  int column = 0;
};

// Classifies one token: NAME[k] nonterminal, or identifier/quoted terminal.
RawSymbol classify(const Token& tok, int line) {
  RawSymbol out;
  out.column = tok.column;
  if (tok.quoted) {
    out.sym.name = tok.text;
    return out;
  }
  const std::string& t = tok.text;
  if (std::isupper(static_cast<unsigned char>(t[0]))) {
    size_t open = t.find('[');
    if (open == std::string::npos)
      fail(line, tok.column, "nonterminal '" + t + "' is missing its [index]");
    if (t.back() != ']') fail(line, tok.column, "malformed index on '" + t + "'");
    std::string name = t.substr(0, open);
    std::string num = t.substr(open + 1, t.size() - open - 2);
    for (char c : name)
      if (!ident_char(c)) fail(line, tok.column, "bad nonterminal name '" + name + "'");
    if (num.empty() || !std::all_of(num.begin(), num.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        }))
      fail(line, tok.column, "bad index in '" + t + "'");
    int idx = 0;
    try {
      idx = std::stoi(num);
    } catch (const std::exception&) {
      fail(line, tok.column, "index out of range in '" + t + "'");
    }
    if (idx <= 0) fail(line, tok.column, "index must be positive in '" + t + "'");
    out.sym.is_nonterminal = true;
    out.sym.name = name;
    out.sym.index = idx;
    return out;
  }
  for (char c : t)
    if (!ident_char(c))
      fail(line, tok.column, "unexpected character in token '" + t + "'");
  out.sym.name = t;
  return out;
}

struct RawComponent {
  std::string lhs;
  int lhs_column = 0;
  std::vector<RawSymbol> rhs;
};

RawComponent parse_component(const std::string& text, int line, int col_base) {
  std::vector<Token> toks = scan_tokens(text, line, col_base);
  if (toks.empty()) fail(line, col_base, "empty rule component");
  RawComponent out;
  const Token& head = toks[0];
  if (head.quoted || !std::isupper(static_cast<unsigned char>(head.text[0])))
    fail(line, head.column, "rule left-hand side must be a nonterminal name");
  for (char c : head.text)
    if (!ident_char(c)) fail(line, head.column, "bad nonterminal name '" + head.text + "'");
  out.lhs = head.text;
  out.lhs_column = head.column;
  if (toks.size() < 2 || toks[1].quoted || toks[1].text != "->")
    fail(line, head.column, "expected '->' after '" + head.text + "'");
  for (size_t i = 2; i < toks.size(); ++i) out.rhs.push_back(classify(toks[i], line));
  return out;
}

}  // namespace

SCFG parse_grammar(const std::string& text) {
  SCFG g;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool saw_start_header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip_comment(raw);
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;

    if (line.compare(first, 6, "start:") == 0) {
      if (saw_start_header) fail(line_no, static_cast<int>(first) + 1, "duplicate start header");
      if (!g.rules.empty())
        fail(line_no, static_cast<int>(first) + 1, "start header must precede the rules");
      std::vector<Token> toks =
          scan_tokens(line.substr(first + 6), line_no, static_cast<int>(first) + 7);
      if (toks.size() != 1 || toks[0].quoted)
        fail(line_no, static_cast<int>(first) + 7, "start header takes one nonterminal name");
      g.start = toks[0].text;
      saw_start_header = true;
      continue;
    }

    // One synchronous rule: two components split on the top-level semicolon.
    bool in_quote = false;
    size_t semi = std::string::npos;
    for (size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '\'') in_quote = !in_quote;
      else if (line[i] == ';' && !in_quote) {
        if (semi != std::string::npos)
          fail(line_no, static_cast<int>(i) + 1, "more than one ';' in rule");
        semi = i;
      }
    }
    if (semi == std::string::npos)
      fail(line_no, static_cast<int>(first) + 1, "rule needs two components separated by ';'");

    RawComponent left = parse_component(line.substr(0, semi), line_no, 1);
    RawComponent right =
        parse_component(line.substr(semi + 1), line_no, static_cast<int>(semi) + 2);

    // The input indices must pair the two sides off exactly.
    std::map<int, int> left_order;  // input index -> canonical index
    int r = 0;
    for (const RawSymbol& rs : left.rhs) {
      if (!rs.sym.is_nonterminal) continue;
      if (left_order.count(rs.sym.index))
        fail(line_no, rs.column, "index " + std::to_string(rs.sym.index) +
                                     " used twice in the left component");
      left_order[rs.sym.index] = ++r;
    }
    std::map<int, int> right_seen;  // input index -> position in right rhs
    SynchronousRule rule;
    rule.left_lhs = left.lhs;
    rule.right_lhs = right.lhs;
    rule.r = r;
    rule.left_nt_names.resize(r);
    rule.right_nt_names.resize(r);
    for (const RawSymbol& rs : left.rhs) {
      Symbol s = rs.sym;
      if (s.is_nonterminal) {
        s.index = left_order[s.index];
        rule.left_nt_names[s.index - 1] = s.name;
      }
      rule.left_rhs.push_back(s);
    }
    int right_count = 0;
    for (const RawSymbol& rs : right.rhs) {
      Symbol s = rs.sym;
      if (s.is_nonterminal) {
        ++right_count;
        auto it = left_order.find(s.index);
        if (it == left_order.end())
          fail(line_no, rs.column, "index " + std::to_string(s.index) +
                                       " does not appear in the left component");
        if (right_seen.count(s.index))
          fail(line_no, rs.column, "index " + std::to_string(s.index) +
                                       " used twice in the right component");
        right_seen[s.index] = 1;
        s.index = it->second;
        rule.right_nt_names[s.index - 1] = s.name;
      }
      rule.right_rhs.push_back(s);
    }
    if (right_count != r)
      fail(line_no, right.lhs_column,
           "left component links " + std::to_string(r) + " nonterminals, right links " +
               std::to_string(right_count));

    rule.label = "s" + std::to_string(g.rules.size() + 1);
    g.rules.push_back(std::move(rule));
  }

  if (g.rules.empty()) throw InputError("grammar has no rules");
  if (g.start.empty()) g.start = g.rules[0].left_lhs;

  // Collect the alphabet and check the name spaces stay apart.
  auto note_symbol = [&g](const Symbol& s) {
    if (s.is_nonterminal)
      g.nonterminals.insert(s.name);
    else
      g.terminals.insert(s.name);
  };
  for (const SynchronousRule& rule : g.rules) {
    g.nonterminals.insert(rule.left_lhs);
    g.nonterminals.insert(rule.right_lhs);
    for (const Symbol& s : rule.left_rhs) note_symbol(s);
    for (const Symbol& s : rule.right_rhs) note_symbol(s);
  }
  for (const std::string& t : g.terminals)
    if (g.nonterminals.count(t))
      throw InputError("'" + t + "' used as both terminal and nonterminal");
  if (!g.nonterminals.count(g.start))
    throw InputError("start symbol '" + g.start + "' never appears in the rules");
  std::set<std::string> with_rules;
  for (const SynchronousRule& rule : g.rules) {
    with_rules.insert(rule.left_lhs);
    with_rules.insert(rule.right_lhs);
  }
  for (const std::string& nt : g.nonterminals)
    if (!with_rules.count(nt))
      throw InputError("nonterminal '" + nt + "' has no rules");
  return g;
}

namespace {

std::string format_symbol(const Symbol& s) {
  if (s.is_nonterminal) return s.name + "[" + std::to_string(s.index) + "]";
  bool plain = !s.name.empty() && std::islower(static_cast<unsigned char>(s.name[0]));
  for (char c : s.name)
    if (!ident_char(c)) plain = false;
  return plain ? s.name : "'" + s.name + "'";
}

}  // namespace

std::string format_grammar(const SCFG& g) {
  std::ostringstream os;
  os << "start: " << g.start << "\n";
  for (const SynchronousRule& rule : g.rules) {
    os << rule.left_lhs << " ->";
    for (const Symbol& s : rule.left_rhs) os << ' ' << format_symbol(s);
    os << " ; " << rule.right_lhs << " ->";
    for (const Symbol& s : rule.right_rhs) os << ' ' << format_symbol(s);
    os << "\n";
  }
  return os.str();
}

Permutation rule_permutation(const SynchronousRule& rule) {
  if (rule.r < 1) throw InputError("rule " + rule.label + " has no linked nonterminals");
  Permutation p;
  for (const Symbol& s : rule.right_rhs)
    if (s.is_nonterminal) p.image.push_back(s.index);
  p.validate();
  return p;
}

namespace {

// A sentential form pair mid-derivation. Link ids are unique across the pair.
struct Form {
  std::vector<Symbol> left, right;
  int next_id = 1;

  bool finished() const {
    for (const Symbol& s : left)
      if (s.is_nonterminal) return false;
    return true;
  }
};

Form start_form(const SCFG& g) {
  Form f;
  Symbol s;
  s.is_nonterminal = true;
  s.name = g.start;
  s.index = 1;
  f.left.push_back(s);
  f.right.push_back(s);
  f.next_id = 2;
  return f;
}

// Index of the leftmost nonterminal in the left component, or -1.
int leftmost_nt(const Form& f) {
  for (size_t i = 0; i < f.left.size(); ++i)
    if (f.left[i].is_nonterminal) return static_cast<int>(i);
  return -1;
}

// Rewrites the linked pair of left position pos with the given rule,
// assigning fresh link ids to the new pairs.
Form apply_rule(const Form& f, int pos, const SynchronousRule& rule) {
  Form out;
  out.next_id = f.next_id;
  std::vector<int> fresh(rule.r + 1, 0);
  for (int i = 1; i <= rule.r; ++i) fresh[i] = out.next_id++;
  int link = f.left[pos].index;

  out.left.reserve(f.left.size() + rule.left_rhs.size());
  for (size_t i = 0; i < f.left.size(); ++i) {
    if (static_cast<int>(i) == pos) {
      for (Symbol s : rule.left_rhs) {
        if (s.is_nonterminal) s.index = fresh[s.index];
        out.left.push_back(s);
      }
    } else {
      out.left.push_back(f.left[i]);
    }
  }
  out.right.reserve(f.right.size() + rule.right_rhs.size());
  for (const Symbol& old : f.right) {
    if (old.is_nonterminal && old.index == link) {
      for (Symbol s : rule.right_rhs) {
        if (s.is_nonterminal) s.index = fresh[s.index];
        out.right.push_back(s);
      }
    } else {
      out.right.push_back(old);
    }
  }
  return out;
}

// Rules applicable to the linked pair at left position pos.
std::vector<const SynchronousRule*> candidate_rules(const SCFG& g, const Form& f, int pos) {
  int link = f.left[pos].index;
  const std::string& lname = f.left[pos].name;
  std::string rname;
  for (const Symbol& s : f.right)
    if (s.is_nonterminal && s.index == link) {
      rname = s.name;
      break;
    }
  std::vector<const SynchronousRule*> out;
  for (const SynchronousRule& rule : g.rules)
    if (rule.left_lhs == lname && rule.right_lhs == rname) out.push_back(&rule);
  return out;
}

std::vector<std::string> terminal_string(const std::vector<Symbol>& side) {
  std::vector<std::string> out;
  for (const Symbol& s : side) out.push_back(s.name);
  return out;
}

std::string serialize(const Form& f) {
  // Link ids are renamed by first appearance so equivalent forms collide.
  std::map<int, int> rename;
  std::ostringstream os;
  auto emit = [&](const std::vector<Symbol>& side) {
    for (const Symbol& s : side) {
      if (s.is_nonterminal) {
        auto it = rename.find(s.index);
        int id;
        if (it == rename.end()) {
          id = static_cast<int>(rename.size()) + 1;
          rename[s.index] = id;
        } else {
          id = it->second;
        }
        os << '<' << s.name << ':' << id << '>';
      } else {
        os << '[' << s.name << ']';
      }
    }
    os << '|';
  };
  emit(f.left);
  emit(f.right);
  return os.str();
}

}  // namespace

std::set<SentencePair> enumerate_translations(const SCFG& g, int max_steps) {
  std::set<SentencePair> out;
  std::set<std::string> seen;
  std::deque<std::pair<Form, int>> queue;
  queue.emplace_back(start_form(g), 0);
  seen.insert(serialize(queue.front().first));
  while (!queue.empty()) {
    auto [form, steps] = std::move(queue.front());
    queue.pop_front();
    int pos = leftmost_nt(form);
    if (pos < 0) {
      SentencePair p;
      p.w1 = terminal_string(form.left);
      p.w2 = terminal_string(form.right);
      out.insert(std::move(p));
      continue;
    }
    if (steps >= max_steps) continue;
    for (const SynchronousRule* rule : candidate_rules(g, form, pos)) {
      Form next = apply_rule(form, pos, *rule);
      std::string key = serialize(next);
      if (seen.insert(std::move(key)).second) queue.emplace_back(std::move(next), steps + 1);
    }
  }
  return out;
}

namespace {

// In-order run containment checks shared by both components. Returns false
// when the form can no longer derive w.
bool form_compatible(const std::vector<Symbol>& form, const std::vector<std::string>& w) {
  // Terminal count can only grow.
  size_t terminals = 0;
  for (const Symbol& s : form)
    if (!s.is_nonterminal) ++terminals;
  if (terminals > w.size()) return false;

  // Split the form into terminal runs around nonterminals.
  std::vector<std::vector<std::string>> runs(1);
  bool any_nt = false;
  for (const Symbol& s : form) {
    if (s.is_nonterminal) {
      any_nt = true;
      runs.emplace_back();
    } else {
      runs.back().push_back(s.name);
    }
  }
  if (!any_nt) return runs[0] == w;

  const std::vector<std::string>& first = runs.front();
  const std::vector<std::string>& last = runs.back();
  if (first.size() + last.size() > w.size()) return false;
  for (size_t i = 0; i < first.size(); ++i)
    if (w[i] != first[i]) return false;
  for (size_t i = 0; i < last.size(); ++i)
    if (w[w.size() - last.size() + i] != last[i]) return false;

  // Middle runs must occur in order between the pinned ends.
  size_t lo = first.size(), hi = w.size() - last.size();
  for (size_t ri = 1; ri + 1 < runs.size(); ++ri) {
    const std::vector<std::string>& run = runs[ri];
    if (run.empty()) continue;
    bool placed = false;
    while (lo + run.size() <= hi) {
      if (std::equal(run.begin(), run.end(), w.begin() + lo)) {
        lo += run.size();
        placed = true;
        break;
      }
      ++lo;
    }
    if (!placed) return false;
  }
  return true;
}

struct SearchState {
  const SCFG* g = nullptr;
  const SentencePair* target = nullptr;
  int budget = 0;
  bool budget_hit = false;
  long long matches = 0;
  bool stop_at_first = false;
  bool done = false;
};

void search(SearchState& st, const Form& form, int steps) {
  if (st.done) return;
  int pos = leftmost_nt(form);
  if (pos < 0) {
    if (terminal_string(form.left) == st.target->w1 &&
        terminal_string(form.right) == st.target->w2) {
      ++st.matches;
      if (st.stop_at_first) st.done = true;
    }
    return;
  }
  if (steps >= st.budget) {
    st.budget_hit = true;
    return;
  }
  for (const SynchronousRule* rule : candidate_rules(*st.g, form, pos)) {
    Form next = apply_rule(form, pos, *rule);
    if (!form_compatible(next.left, st.target->w1)) continue;
    if (!form_compatible(next.right, st.target->w2)) continue;
    search(st, next, steps + 1);
    if (st.done) return;
  }
}

long long run_search(const SCFG& g, const SentencePair& p, bool stop_at_first) {
  SearchState st;
  st.g = &g;
  st.target = &p;
  st.budget = p.total_length() + 4;
  st.stop_at_first = stop_at_first;
  Form f = start_form(g);
  if (form_compatible(f.left, p.w1) && form_compatible(f.right, p.w2)) search(st, f, 0);
  if (st.budget_hit && !st.done)
    throw BoundExceeded("derivation budget exhausted before membership was settled");
  return st.matches;
}

}  // namespace

bool pair_membership_oracle(const SCFG& g, const SentencePair& p) {
  return run_search(g, p, true) > 0;
}

long long count_derivations_oracle(const SCFG& g, const SentencePair& p) {
  return run_search(g, p, false);
}

std::vector<std::string> tokenize_sentence(const std::string& text) {
  bool has_space = text.find_first_of(" \t") != std::string::npos;
  std::vector<std::string> out;
  if (has_space) {
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) out.push_back(tok);
  } else {
    for (char c : text) out.emplace_back(1, c);
  }
  return out;
}

}  // namespace grammar
}  // namespace syncparse
