// Presented algebras: generators, oriented rewrite rules, normal forms,
// overlap (diamond lemma) checks and truncated monomial bases.

#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sigmacalc/combination.hpp"

namespace sigmacalc {

struct Generator {
  std::string symbol;
  int charge = 0;
  /// Weight in the term order. Length truncation always counts letters.
  int weight = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class RewritingBudgetExceeded : public std::runtime_error {
 public:
  RewritingBudgetExceeded() : std::runtime_error("rewriting budget exceeded") {}
};

class NotConfluent : public std::runtime_error {
 public:
  NotConfluent() : std::runtime_error("basis requires confluence") {}
};

struct RewriteRule {
  Word lead;
  NCElement replacement;
};

struct OverlapAmbiguity {
  Word word;
  NCElement left_resolution;
  NCElement right_resolution;
};

struct ConfluenceReport {
  std::size_t overlaps_checked = 0;
  std::vector<OverlapAmbiguity> unresolved;
  bool confluent() const { return unresolved.empty(); }
};

/// A finitely presented algebra over Q(q) with a rewriting system oriented by
/// weighted degree-lexicographic order (earlier generators are smaller).
/// Build it with add_relation, then share it as const: every query is pure.
class Presentation {
 public:
  static constexpr std::size_t kDefaultRewriteBudget = 1'000'000;

  Presentation(std::string name, std::vector<Generator> generators);

  /// Orients lhs = rhs into a rule. Returns a warning when the relation is
  /// already a consequence of the earlier rules. Throws std::invalid_argument
  /// ("unorientable relation ...") when lhs is a word that is not the leading
  /// term of lhs - rhs.
  std::optional<std::string> add_relation(const NCElement& lhs, const NCElement& rhs);

  const std::string& name() const { return name_; }
  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<RewriteRule>& rules() const { return rules_; }
  std::optional<std::size_t> index_of(std::string_view symbol) const;
  std::vector<std::string> symbols() const;

  /// Strict term order: weight, then lexicographic by generator index.
  bool less(const Word& u, const Word& v) const;
  int weight(const Word& w) const;
  int charge(const Word& w) const;
  /// Common charge of all terms, if there is one.
  std::optional<int> charge(const NCElement& x) const;

  void set_rewrite_budget(std::size_t steps) { budget_ = steps; }
  /// Budget given to presentations constructed afterwards.
  static void set_default_rewrite_budget(std::size_t steps);
  static std::size_t default_rewrite_budget();
  std::size_t rewrite_budget() const { return budget_; }

  NCElement normal_form(const Word& w) const;
  NCElement normal_form(const NCElement& x) const;
  bool is_irreducible(const Word& w) const;

  NCElement one() const { return NCElement(Word{}); }
  NCElement generator(std::size_t i) const { return normal_form(Word(1, static_cast<char>(i))); }
  NCElement multiply(const NCElement& x, const NCElement& y) const;
  NCElement multiply(const Word& u, const Word& v) const { return normal_form(u + v); }

  /// Checks every overlap ambiguity between rule leads with total length at
  /// most max_length, plus inclusion ambiguities.
  ConfluenceReport check_local_confluence(std::size_t max_length) const;
  bool confluent() const;

  /// All irreducible words of length <= degree, sorted by the term order.
  std::vector<Word> basis_up_to_degree(std::size_t degree) const;

  std::string word_string(const Word& w) const;
  std::string to_string(const NCElement& x) const;

 private:
  NCElement reduce(const Word& w, std::size_t& steps) const;
  std::optional<std::pair<std::size_t, const RewriteRule*>> find_redex(const Word& w) const;

  std::string name_;
  std::vector<Generator> generators_;
  std::vector<RewriteRule> rules_;
  std::unordered_map<Word, std::size_t> rule_index_;
  std::vector<std::size_t> rule_lengths_;
  std::size_t budget_ = default_rewrite_budget();

  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<Word, NCElement> cache_;
  mutable std::optional<bool> confluent_;
};

using PresentationPtr = std::shared_ptr<const Presentation>;

/// Renders a tensor as "c (w1) (x) (w2) + ..." using one presentation per leg.
std::string format_tensor(const Tensor& t, std::span<const Presentation* const> legs);

/// A structure-map line (delta, eps, antipode, antipode_inv, seed) kept as
/// text until the algebras it refers to are known.
struct StructureLine {
  std::string keyword;
  std::string symbol;
  std::string expression;
  int line = 0;
  int column = 0;
};

struct AlgebraBlock {
  std::shared_ptr<Presentation> presentation;
  std::vector<StructureLine> structure;
  std::vector<std::string> warnings;
};

struct Document {
  std::vector<AlgebraBlock> algebras;
  std::vector<StructureLine> seeds;
};

/// Parses the line-oriented presentation format:
///   algebra <name>
///   gen <symbol> charge <int> [weight <int>]
///   rel <word> = <nc-polynomial>
///   delta|eps|antipode|antipode_inv <symbol> = <expression>
///   seed <h-word> = <tensor expression>
/// '#' starts a comment.
Document parse_document(std::string_view text);

}  // namespace sigmacalc
