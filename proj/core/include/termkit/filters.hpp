#ifndef TERMKIT_FILTERS_HPP
#define TERMKIT_FILTERS_HPP

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "termkit/recognizer.hpp"
#include "termkit/termbank.hpp"

// The three term-collection filters and the pipeline driver. All filters
// are pure: they drop entries or equivalents but never edit a surviving
// surface.

namespace termkit {

// Document frequencies over stemmed tokens; documents are lines of the
// supplied corpus.
struct IdfTable {
  std::size_t doc_count = 0;
  std::map<std::string, std::size_t> df;

  void save(std::ostream& output) const;
  static IdfTable load(std::istream& input);
  static IdfTable load_file(const std::string& path);
};

// ln(N / df(stem)); unseen stems use df = 1. Always in [0, ln N].
double idf_value(const IdfTable& table, const std::string& stem);

// df counts documents containing each stemmed token at least once.
// Throws ConfigError on an empty corpus.
IdfTable build_idf(std::span<const std::vector<std::string>> documents,
                   const StemmerRuleSet& stemmer);

// One document per line; lines are tokenized with the shared tokenizer.
IdfTable build_idf_from_lines(std::istream& input,
                              const StemmerRuleSet& stemmer);

// Per-side symbol verdicts. A side passes iff every character is a
// Unicode letter, an ASCII digit, an apostrophe (U+0027/U+2019), a
// whitespace character, or a hyphen (U+002D/U+2010).
struct SymbolVerdict {
  bool source_ok = false;
  std::vector<bool> equivalent_ok;

  bool entry_survives() const;
};

SymbolVerdict symbol_filter(const TermEntry& entry);

// True = drop: one case-folded side strictly longer than the other and
// containing it as a contiguous substring. Symmetric; equal strings kept.
bool containment_drops(std::string_view source, std::string_view equivalent);

// Minimum IDF over the stemmed source-side tokens.
double idf_score(const TermEntry& entry, const IdfTable& table,
                 const StemmerRuleSet& stemmer);

// Keep iff idf_score >= threshold.
bool idf_keeps(const TermEntry& entry, const IdfTable& table,
               double threshold, const StemmerRuleSet& stemmer);

struct FilterConfig {
  bool symbol = true;
  bool containment = true;
  std::optional<double> idf_threshold;  // engaged when set
  const IdfTable* idf_table = nullptr;  // required iff idf_threshold set
  const StemmerRuleSet* stemmer = nullptr;  // required iff idf_threshold set
};

struct FilterReport {
  struct Drop {
    int entry_id = 0;
    std::string filter;  // "symbol", "containment", "idf"
    std::string reason;
  };
  struct EquivalentDrop {
    int entry_id = 0;
    int rank = 0;  // rank in the input entry
    std::string filter;
  };

  std::vector<int> kept;
  std::vector<Drop> dropped;
  std::vector<EquivalentDrop> equivalents_dropped;

  // TSV rows `entry_id<TAB>filter_name<TAB>reason`, one per dropped entry,
  // in input order.
  void write(std::ostream& output) const;
};

// Applies symbol, then containment (per surviving equivalent), then IDF.
// Entry order and remaining-equivalent order are preserved; equivalent
// ranks are reassigned contiguously in the output. Throws ConfigError
// when the IDF filter is enabled without a table or stemmer.
std::pair<TermCollection, FilterReport> run_filter_pipeline(
    const TermCollection& collection, const FilterConfig& config);

}  // namespace termkit

#endif
