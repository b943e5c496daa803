#ifndef TERMKIT_RECOGNIZER_HPP
#define TERMKIT_RECOGNIZER_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "termkit/aligner.hpp"
#include "termkit/termbank.hpp"

// Tokenization, rule-based suffix stripping, and greedy leftmost-longest
// term matching over stemmed token sequences.

namespace termkit {

struct Token {
  std::string text;
  std::size_t offset = 0;  // byte offset into the original line
};

// Splits on whitespace, then peels leading/trailing characters that are
// neither letters nor ASCII digits into single-character tokens. Hyphens
// and apostrophes inside words stay put. Throws ParseError on malformed
// UTF-8.
std::vector<Token> tokenize(std::string_view line);

// Surfaces only, for callers that do not need offsets.
std::vector<std::string> tokenize_text(std::string_view line);

// tokenize_text + case folding; the token form used for alignment
// training and scoring.
std::vector<std::string> tokenize_folded(std::string_view line);

// Ordered suffix-strip rules for one language. File format, UTF-8 TSV:
//
//   #lang=<code> min_stem=<n> fold_case=<0|1>
//   suffix<TAB>replacement<TAB>min_remaining
//
// Rules are kept sorted by descending suffix length. A replacement equal
// to its suffix acts as a blocker: it matches and changes nothing.
class StemmerRuleSet {
 public:
  struct Rule {
    std::u32string suffix;
    std::u32string replacement;
    int min_remaining = 0;
  };

  static StemmerRuleSet load(std::istream& input);
  static StemmerRuleSet load_file(const std::string& path);

  // No rules; stemming is case folding only (or identity when fold=false).
  static StemmerRuleSet identity(std::string language = "",
                                 bool fold_case = true);

  StemmerRuleSet(std::string language, int min_stem_length, bool fold_case,
                 std::vector<Rule> rules);

  // Case-folds if configured, then applies the first rule whose suffix
  // matches and whose result keeps at least max(min_remaining,
  // min_stem_length) codepoints. At most one rule fires.
  std::string stem(std::string_view token) const;
  std::u32string stem(const std::u32string& token) const;

  const std::string& language() const { return language_; }
  int min_stem_length() const { return min_stem_length_; }
  bool fold_case() const { return fold_case_; }
  const std::vector<Rule>& rules() const { return rules_; }

 private:
  std::string language_;
  int min_stem_length_ = 3;
  bool fold_case_ = true;
  std::vector<Rule> rules_;
};

std::vector<std::string> stem_tokens(std::span<const std::string> tokens,
                                     const StemmerRuleSet& rules);

// Stemmed multi-token keys mapping to one term entry each (one sense per
// key, first entry wins). Immutable after build_index.
class TermIndex {
 public:
  struct Entry {
    int entry_id = 0;
    std::string selected_target;
  };

  struct CollisionWarning {
    std::string key;
    int kept_entry_id = 0;
    int dropped_entry_id = 0;
  };

  const Entry* find(const std::string& key) const;
  std::size_t max_key_len() const { return max_key_len_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<CollisionWarning>& warnings() const { return warnings_; }

  // Joins stemmed tokens into the canonical key form.
  static std::string make_key(std::span<const std::string> stemmed_tokens);

 private:
  friend TermIndex build_index(const TermCollection&,
                               std::span<const SelectionResult>,
                               const StemmerRuleSet&);

  std::unordered_map<std::string, Entry> entries_;
  std::size_t max_key_len_ = 1;
  std::vector<CollisionWarning> warnings_;
};

// Keys every entry by its stemmed, tokenized source surface and stores the
// selected equivalent. selections[i] must carry entries[i].id; the chosen
// rank picks the stored target. Throws InvariantError when an entry's
// source tokenizes to nothing or the selections do not line up.
TermIndex build_index(const TermCollection& collection,
                      std::span<const SelectionResult> selections,
                      const StemmerRuleSet& rules);

struct TermMatch {
  std::size_t begin = 0;  // token span [begin, end)
  std::size_t end = 0;
  int entry_id = 0;
  std::string selected_target;
};

// Greedy leftmost-longest scan: at each position the longest stemmed key
// wins and the scan resumes after it, so matches never overlap.
std::vector<TermMatch> recognize(std::span<const std::string> tokens,
                                 const TermIndex& index,
                                 const StemmerRuleSet& rules);

}  // namespace termkit

#endif
