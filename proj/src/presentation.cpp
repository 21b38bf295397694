#include "sigmacalc/presentation.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <set>
#include <sstream>

#include "sigmacalc/expression_parser.hpp"

namespace sigmacalc {

namespace {
std::atomic<std::size_t> g_default_budget{Presentation::kDefaultRewriteBudget};
}  // namespace

void Presentation::set_default_rewrite_budget(std::size_t steps) { g_default_budget = steps; }
std::size_t Presentation::default_rewrite_budget() { return g_default_budget; }


ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " +
                                        std::to_string(column) + ": " + message
                                  : "column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

Presentation::Presentation(std::string name, std::vector<Generator> generators)
    : name_(std::move(name)), generators_(std::move(generators)) {
  std::set<std::string> seen;
  for (const auto& g : generators_) {
    if (g.symbol == "q") throw std::invalid_argument("'q' is reserved for the scalar parameter");
    if (g.weight <= 0) throw std::invalid_argument("generator weight must be positive");
    if (!seen.insert(g.symbol).second) {
      throw std::invalid_argument("duplicate generator '" + g.symbol + "'");
    }
  }
  if (generators_.size() > 120) throw std::invalid_argument("too many generators");
}

std::optional<std::size_t> Presentation::index_of(std::string_view symbol) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].symbol == symbol) return i;
  }
  return std::nullopt;
}

std::vector<std::string> Presentation::symbols() const {
  std::vector<std::string> out;
  for (const auto& g : generators_) out.push_back(g.symbol);
  return out;
}

int Presentation::weight(const Word& w) const {
  int s = 0;
  for (char c : w) s += generators_[static_cast<std::size_t>(c)].weight;
  return s;
}

int Presentation::charge(const Word& w) const {
  int s = 0;
  for (char c : w) s += generators_[static_cast<std::size_t>(c)].charge;
  return s;
}

std::optional<int> Presentation::charge(const NCElement& x) const {
  std::optional<int> c;
  for (const auto& [w, coeff] : x) {
    const int k = charge(w);
    if (c && *c != k) return std::nullopt;
    c = k;
  }
  return c;
}

bool Presentation::less(const Word& u, const Word& v) const {
  const int wu = weight(u);
  const int wv = weight(v);
  if (wu != wv) return wu < wv;
  return u < v;
}

std::optional<std::string> Presentation::add_relation(const NCElement& lhs, const NCElement& rhs) {
  NCElement diff = lhs - rhs;
  if (normal_form(diff).is_zero()) {
    return "redundant relation: " + to_string(lhs) + " = " + to_string(rhs);
  }
  const Word* lead = nullptr;
  for (const auto& [w, c] : diff) {
    if (!lead || less(*lead, w)) lead = &w;
  }
  const bool lhs_is_word = lhs.size() == 1 && lhs.begin()->second.is_one();
  if (lead->empty() || (lhs_is_word && *lead != lhs.begin()->first)) {
    throw std::invalid_argument("unorientable relation: " + to_string(lhs) + " = " +
                                to_string(rhs));
  }
  const Word key = *lead;
  if (rule_index_.count(key)) {
    throw std::invalid_argument("unorientable relation: leading word " + word_string(key) +
                                " already has a rule");
  }
  const RationalFunction c = diff.coefficient(key);
  NCElement replacement = diff;
  replacement.add_term(key, -c);
  replacement *= -c.inverse();
  {
    std::lock_guard lock(cache_mutex_);
    cache_.clear();
    confluent_.reset();
  }
  rule_index_.emplace(key, rules_.size());
  rules_.push_back({key, std::move(replacement)});
  if (std::find(rule_lengths_.begin(), rule_lengths_.end(), key.size()) == rule_lengths_.end()) {
    rule_lengths_.push_back(key.size());
    std::sort(rule_lengths_.begin(), rule_lengths_.end());
  }
  return std::nullopt;
}

std::optional<std::pair<std::size_t, const RewriteRule*>> Presentation::find_redex(
    const Word& w) const {
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    for (std::size_t len : rule_lengths_) {
      if (pos + len > w.size()) break;
      auto it = rule_index_.find(w.substr(pos, len));
      if (it != rule_index_.end()) return std::make_pair(pos, &rules_[it->second]);
    }
  }
  return std::nullopt;
}

bool Presentation::is_irreducible(const Word& w) const { return !find_redex(w).has_value(); }

NCElement Presentation::reduce(const Word& w, std::size_t& steps) const {
  {
    std::lock_guard lock(cache_mutex_);
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
  }
  auto redex = find_redex(w);
  NCElement result;
  if (!redex) {
    result = NCElement(w);
  } else {
    if (++steps > budget_) throw RewritingBudgetExceeded();
    const auto [pos, rule] = *redex;
    const Word prefix = w.substr(0, pos);
    const Word suffix = w.substr(pos + rule->lead.size());
    for (const auto& [v, c] : rule->replacement) {
      NCElement part = reduce(prefix + v + suffix, steps);
      part *= c;
      result += part;
    }
  }
  std::lock_guard lock(cache_mutex_);
  cache_.emplace(w, result);
  return result;
}

NCElement Presentation::normal_form(const Word& w) const {
  std::size_t steps = 0;
  return reduce(w, steps);
}

NCElement Presentation::normal_form(const NCElement& x) const {
  std::size_t steps = 0;
  NCElement out;
  for (const auto& [w, c] : x) {
    NCElement part = reduce(w, steps);
    part *= c;
    out += part;
  }
  return out;
}

NCElement Presentation::multiply(const NCElement& x, const NCElement& y) const {
  NCElement out;
  std::size_t steps = 0;
  for (const auto& [u, a] : x) {
    for (const auto& [v, b] : y) {
      NCElement part = reduce(u + v, steps);
      part *= a * b;
      out += part;
    }
  }
  return out;
}

ConfluenceReport Presentation::check_local_confluence(std::size_t max_length) const {
  ConfluenceReport report;
  auto resolve = [&](const Word& word, const NCElement& left, const NCElement& right) {
    ++report.overlaps_checked;
    NCElement l = normal_form(left);
    NCElement r = normal_form(right);
    if (l != r) report.unresolved.push_back({word, std::move(l), std::move(r)});
  };
  auto splice = [](const Word& prefix, const NCElement& middle, const Word& suffix) {
    NCElement out;
    for (const auto& [v, c] : middle) out.add_term(prefix + v + suffix, c);
    return out;
  };
  for (const auto& r1 : rules_) {
    for (const auto& r2 : rules_) {
      const Word& a = r1.lead;
      const Word& b = r2.lead;
      // Overlap: a proper suffix of a equals a proper prefix of b.
      for (std::size_t k = 1; k < std::min(a.size(), b.size()); ++k) {
        if (a.compare(a.size() - k, k, b, 0, k) != 0) continue;
        const Word word = a + b.substr(k);
        if (word.size() > max_length) continue;
        resolve(word, splice({}, r1.replacement, b.substr(k)),
                splice(a.substr(0, a.size() - k), r2.replacement, {}));
      }
      // Inclusion: b occurs strictly inside a.
      if (&r1 != &r2 && b.size() < a.size() && a.size() <= max_length) {
        for (std::size_t pos = 0; pos + b.size() <= a.size(); ++pos) {
          if (a.compare(pos, b.size(), b) != 0) continue;
          resolve(a, r1.replacement,
                  splice(a.substr(0, pos), r2.replacement, a.substr(pos + b.size())));
        }
      }
    }
  }
  return report;
}

bool Presentation::confluent() const {
  {
    std::lock_guard lock(cache_mutex_);
    if (confluent_) return *confluent_;
  }
  std::size_t longest = 0;
  for (const auto& r : rules_) longest = std::max(longest, r.lead.size());
  const bool ok = check_local_confluence(2 * longest).confluent();
  std::lock_guard lock(cache_mutex_);
  confluent_ = ok;
  return ok;
}

std::vector<Word> Presentation::basis_up_to_degree(std::size_t degree) const {
  if (!confluent()) throw NotConfluent();
  std::vector<Word> out{Word{}};
  std::vector<Word> frontier{Word{}};
  for (std::size_t len = 1; len <= degree; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (std::size_t g = 0; g < generators_.size(); ++g) {
        Word v = w + static_cast<char>(g);
        bool reducible = false;
        for (std::size_t l : rule_lengths_) {
          if (l > v.size()) break;
          if (rule_index_.count(v.substr(v.size() - l))) {
            reducible = true;
            break;
          }
        }
        if (!reducible) next.push_back(std::move(v));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  std::sort(out.begin(), out.end(), [this](const Word& a, const Word& b) { return less(a, b); });
  return out;
}

std::string Presentation::word_string(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (char c : w) {
    if (!out.empty()) out += ' ';
    out += generators_[static_cast<std::size_t>(c)].symbol;
  }
  return out;
}

namespace {

std::string join_terms(const std::vector<std::pair<std::string, RationalFunction>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [body, c] : terms) {
    std::string piece;
    if (c.is_one()) {
      piece = body;
    } else if ((-c).is_one()) {
      piece = "-" + body;
    } else {
      std::string cs = c.to_string();
      if (c.needs_parentheses()) cs = "(" + cs + ")";
      piece = body == "1" ? cs : cs + " " + body;
    }
    if (out.empty()) {
      out = piece;
    } else if (piece.front() == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out;
}

}  // namespace

std::string Presentation::to_string(const NCElement& x) const {
  std::vector<std::pair<std::string, RationalFunction>> terms;
  for (const auto& [w, c] : x) terms.emplace_back(word_string(w), c);
  return join_terms(terms);
}

std::string format_tensor(const Tensor& t, std::span<const Presentation* const> legs) {
  std::vector<std::pair<std::string, RationalFunction>> terms;
  for (const auto& [k, c] : t) {
    std::string body;
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (i) body += " (x) ";
      body += "(" + legs[i]->word_string(k[i]) + ")";
    }
    terms.emplace_back(body, c);
  }
  return join_terms(terms);
}

// ---------------------------------------------------------------------------
// Document parsing

namespace {

struct LineCursor {
  std::string_view text;
  std::size_t pos = 0;
  int line = 0;

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  int column() const { return static_cast<int>(pos) + 1; }
  bool at_end() {
    skip_space();
    return pos >= text.size();
  }
  std::string word() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '=') {
      ++pos;
    }
    if (start == pos) throw ParseError("expected a token", line, column());
    return std::string(text.substr(start, pos - start));
  }
  long integer() {
    skip_space();
    const int col = column();
    std::string w = word();
    try {
      std::size_t used = 0;
      long v = std::stol(w, &used);
      if (used != w.size()) throw std::invalid_argument(w);
      return v;
    } catch (const std::exception&) {
      throw ParseError("expected an integer, found '" + w + "'", line, col);
    }
  }
  void expect_equals() {
    skip_space();
    if (pos >= text.size() || text[pos] != '=') throw ParseError("expected '='", line, column());
    ++pos;
  }
};

bool ident_start_char(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  std::size_t i = 1;
  while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
  while (i < s.size() && s[i] == '*') ++i;
  return i == s.size();
}

std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

void check_parentheses(std::string_view text, int line, int offset) {
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')' && --depth < 0) {
      throw ParseError("unbalanced parenthesis", line, offset + static_cast<int>(i) + 1);
    }
  }
  if (depth != 0) {
    throw ParseError("unbalanced parenthesis", line, offset + static_cast<int>(text.size()) + 1);
  }
}

}  // namespace

Document parse_document(std::string_view text) {
  Document doc;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    LineCursor cur{strip_comment(raw), 0, line_no};
    if (cur.at_end()) continue;
    const int keyword_col = cur.column();
    const std::string keyword = cur.word();
    if (keyword == "algebra") {
      AlgebraBlock block;
      const std::string name = cur.word();
      block.presentation = std::make_shared<Presentation>(name, std::vector<Generator>{});
      doc.algebras.push_back(std::move(block));
      continue;
    }
    if (keyword == "seed") {
      const std::string symbol = cur.word();
      cur.expect_equals();
      const int col = cur.column();
      std::string expr(cur.text.substr(cur.pos));
      check_parentheses(expr, line_no, col - 1);
      doc.seeds.push_back({keyword, symbol, expr, line_no, col});
      continue;
    }
    if (doc.algebras.empty()) {
      throw ParseError("'" + keyword + "' before any 'algebra' line", line_no, keyword_col);
    }
    AlgebraBlock& block = doc.algebras.back();
    if (keyword == "gen") {
      if (!block.presentation->rules().empty()) {
        throw ParseError("generators must precede relations", line_no, keyword_col);
      }
      const int sym_col = cur.column();
      Generator g;
      g.symbol = cur.word();
      if (!ident_start_char(g.symbol)) {
        throw ParseError("invalid generator symbol '" + g.symbol + "'", line_no, sym_col);
      }
      while (!cur.at_end()) {
        const std::string attr = cur.word();
        if (attr == "charge") {
          g.charge = static_cast<int>(cur.integer());
        } else if (attr == "weight") {
          g.weight = static_cast<int>(cur.integer());
        } else {
          throw ParseError("unknown generator attribute '" + attr + "'", line_no, cur.column());
        }
      }
      auto gens = block.presentation->generators();
      gens.push_back(g);
      try {
        block.presentation = std::make_shared<Presentation>(block.presentation->name(), gens);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line_no, sym_col);
      }
      continue;
    }
    if (keyword == "rel") {
      cur.skip_space();
      const std::size_t eq = cur.text.find('=', cur.pos);
      if (eq == std::string_view::npos) throw ParseError("expected '='", line_no, cur.column());
      const int lhs_col = cur.column();
      std::string_view lhs_text = cur.text.substr(cur.pos, eq - cur.pos);
      std::string_view rhs_text = cur.text.substr(eq + 1);
      check_parentheses(lhs_text, line_no, lhs_col - 1);
      check_parentheses(rhs_text, line_no, static_cast<int>(eq) + 1);
      const auto syms = block.presentation->symbols();
      NCElement lhs = parse_expression(lhs_text, syms, line_no, lhs_col - 1);
      NCElement rhs = parse_expression(rhs_text, syms, line_no, static_cast<int>(eq) + 1);
      try {
        if (auto warning = block.presentation->add_relation(lhs, rhs)) {
          block.warnings.push_back("line " + std::to_string(line_no) + ": " + *warning);
        }
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line_no, lhs_col);
      }
      continue;
    }
    if (keyword == "delta" || keyword == "eps" || keyword == "antipode" ||
        keyword == "antipode_inv") {
      const int sym_col = cur.column();
      const std::string symbol = cur.word();
      if (!block.presentation->index_of(symbol)) {
        throw ParseError("unknown generator '" + symbol + "'", line_no, sym_col);
      }
      cur.expect_equals();
      const int col = cur.column();
      std::string expr(cur.text.substr(cur.pos));
      check_parentheses(expr, line_no, col - 1);
      block.structure.push_back({keyword, symbol, expr, line_no, col});
      continue;
    }
    throw ParseError("unknown keyword '" + keyword + "'", line_no, keyword_col);
  }
  return doc;
}

}  // namespace sigmacalc
