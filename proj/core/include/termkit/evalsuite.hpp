#ifndef TERMKIT_EVALSUITE_HPP
#define TERMKIT_EVALSUITE_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "termkit/aligner.hpp"
#include "termkit/recognizer.hpp"

namespace termkit {

// One annotated term occurrence: a source token span plus every target
// rendering the evaluation accepts for it.
struct TermAnnotation {
  std::size_t begin = 0;  // source token span, end exclusive
  std::size_t end = 0;
  std::vector<std::string> variants;  // non-empty
};

struct EvalInstance {
  std::vector<std::string> source;
  std::vector<std::string> hypothesis;
  std::vector<std::string> reference;
  std::vector<TermAnnotation> terms;
};

enum class MatchMode { kExact, kLemmatized };

struct AccuracyResult {
  double accuracy = 0.0;  // meaningless when total == 0
  std::size_t found = 0;
  std::size_t total = 0;

  bool defined() const { return total > 0; }
};

// Fraction of term occurrences for which any acceptable variant appears as
// a contiguous token subsequence of the hypothesis. Lemmatized mode stems
// both sides first.
AccuracyResult term_accuracy(std::span<const EvalInstance> instances,
                             MatchMode mode, const StemmerRuleSet& stemmer);

// Mean positional-context overlap for term occurrences found (lemmatized)
// in both hypothesis and reference: up to n stemmed tokens each side of
// the occurrence, term tokens excluded; per-occurrence score is
// |multiset intersection| / max(|reference window|, 1). 0 when no
// occurrence is found in both.
double window_overlap(std::span<const EvalInstance> instances, std::size_t n,
                      const StemmerRuleSet& stemmer);

struct TerResult {
  double edits = 0.0;             // weighted edits including shift costs
  double reference_weight = 0.0;  // weighted reference length
  std::size_t shifts = 0;

  double rate() const { return edits / reference_weight; }
};

// Translation edit rate: weighted edit distance (substitution cost is the
// heavier of the two tokens, insertions/deletions cost the edited token's
// weight) plus greedy block shifts, each costing the heaviest weight in
// the shifted block, over the weighted reference length. Empty weight
// spans mean all ones. InvariantError on an empty reference or a weight
// span whose size differs from its token span.
TerResult ter(std::span<const std::string> hypothesis,
              std::span<const std::string> reference,
              std::span<const double> hypothesis_weights = {},
              std::span<const double> reference_weights = {});

inline constexpr double kDefaultTermWeight = 2.0;

struct TokenWeights {
  std::vector<double> hypothesis;
  std::vector<double> reference;
};

// Weight 2.0 (configurable) on every token covered by a lemmatized match
// of any acceptable variant, on both sides; 1.0 elsewhere.
TokenWeights term_weights(const EvalInstance& instance,
                          const StemmerRuleSet& stemmer,
                          double term_weight = kDefaultTermWeight);

// Corpus-level BLEU-4 in [0,100]: geometric mean of clipped n-gram
// precisions times brevity penalty min(1, exp(1 - ref_len/hyp_len)).
// Any zero precision yields 0. InvariantError on mismatched list lengths
// or an empty reference.
double bleu(std::span<const std::vector<std::string>> hypotheses,
            std::span<const std::vector<std::string>> references);

struct EvalOptions {
  double term_weight = kDefaultTermWeight;
};

struct EvalReport {
  double exact_accuracy = 0.0;  // NaN when term_count == 0
  double lemma_accuracy = 0.0;  // NaN when term_count == 0
  double window2 = 0.0;
  double window3 = 0.0;
  double one_minus_term = 0.0;  // 1 - corpus TERm
  double bleu = 0.0;
  std::size_t term_count = 0;

  bool accuracy_defined() const { return term_count > 0; }
};

EvalReport evaluate(std::span<const EvalInstance> instances,
                    const StemmerRuleSet& stemmer,
                    const EvalOptions& options = {});

// key=value lines followed by a tab-separated summary table. Undefined
// accuracies render as "n/a".
void write_report(const EvalReport& report, std::ostream& output);

struct BilingualTerm {
  std::string source;
  std::string target;
};

struct CoverageReport {
  std::size_t unique_total = 0;
  std::size_t unique_ge1 = 0;
  std::size_t unique_ge10 = 0;
  std::size_t running_total = 0;
  std::size_t running_ge1 = 0;
  std::size_t running_ge10 = 0;
};

// A term pair occurs in a sentence pair when its stemmed source tokens are
// a contiguous subsequence of the stemmed source sentence and likewise on
// the target side. Unique counts classify pairs by training occurrences;
// running counts weight each pair by its occurrence count in eval_data
// (weight 1 each when eval_data is null). InvariantError on an empty
// training corpus.
CoverageReport coverage(std::span<const BilingualTerm> terms,
                        const ParallelCorpus& training,
                        const ParallelCorpus* eval_data,
                        const StemmerRuleSet& source_stemmer,
                        const StemmerRuleSet& target_stemmer);

void write_report(const CoverageReport& report, std::ostream& output);

}  // namespace termkit

#endif
