#ifndef TERMKIT_ALIGNER_HPP
#define TERMKIT_ALIGNER_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "termkit/termbank.hpp"

// Lexical translation probabilities trained with Model-1 style EM, and the
// two translation-equivalent selection strategies built on top of them.
// Training is sequential and deterministic: the same corpus and iteration
// count reproduce probabilities bit for bit.

namespace termkit {

struct SentencePair {
  std::vector<std::string> source;
  std::vector<std::string> target;
};

struct ParallelCorpus {
  std::vector<SentencePair> pairs;
};

// Pull interface over sentence pairs so EM can re-scan large corpora from
// disk instead of holding them in memory. reset() rewinds to the start.
class PairSource {
 public:
  virtual ~PairSource() = default;
  virtual std::optional<SentencePair> next() = 0;
  virtual void reset() = 0;
};

class MemoryPairSource final : public PairSource {
 public:
  explicit MemoryPairSource(const ParallelCorpus& corpus)
      : corpus_(corpus) {}
  std::optional<SentencePair> next() override;
  void reset() override { index_ = 0; }

 private:
  const ParallelCorpus& corpus_;
  std::size_t index_ = 0;
};

// Line-aligned plain-text pair of files, or a single two-column TSV when
// `target_path` is empty. Lines are tokenized and case folded. Throws
// ParseError with the offending line number on malformed UTF-8, an empty
// side, or mismatched file lengths.
class FilePairSource final : public PairSource {
 public:
  FilePairSource(std::string source_path, std::string target_path);
  ~FilePairSource() override;
  std::optional<SentencePair> next() override;
  void reset() override;

 private:
  struct Impl;
  Impl* impl_;
};

// Conditional probabilities prob(target | source) with a reserved NULL
// source token. Rows are normalized: for every source token with mass,
// the row sums to 1 within 1e-6. Immutable once trained; safe to share.
class LexiconModel {
 public:
  static constexpr std::string_view kNullToken = "<NULL>";

  // 0.0 for pairs outside the trained support.
  double prob(std::string_view source, std::string_view target) const;

  bool knows_target(std::string_view target) const;
  std::size_t source_vocab_size() const { return source_tokens_.size(); }
  std::size_t target_vocab_size() const { return target_tokens_.size(); }
  int trained_iterations() const { return trained_iterations_; }

  // Corpus log-likelihood measured at the start of each EM iteration;
  // non-decreasing by the EM guarantee.
  const std::vector<double>& log_likelihood_history() const {
    return likelihood_history_;
  }

  // Text persistence: `source<TAB>target<TAB>prob`, one row per parameter
  // with prob >= prune_threshold, sorted by source then target token.
  void save(std::ostream& output, double prune_threshold = 1e-6) const;
  static LexiconModel load(std::istream& input);
  static LexiconModel load_file(const std::string& path);

  struct ProbRow {
    std::string source;
    std::string target;
    double prob;
  };
  static LexiconModel from_rows(const std::vector<ProbRow>& rows);

  // Visits every stored parameter, sorted by source then target token.
  void for_each_probability(
      const std::function<void(std::string_view source,
                               std::string_view target, double prob)>& visit)
      const;

 private:
  friend LexiconModel train_lexicon(PairSource&, int);

  std::uint32_t source_id(std::string_view token) const;
  std::uint32_t target_id(std::string_view token) const;

  std::vector<std::string> source_tokens_;  // [0] is the NULL token
  std::vector<std::string> target_tokens_;
  std::unordered_map<std::string, std::uint32_t> source_ids_;
  std::unordered_map<std::string, std::uint32_t> target_ids_;
  // Per source id, (target id, prob) sorted by target id.
  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows_;
  int trained_iterations_ = 0;
  std::vector<double> likelihood_history_;
};

// Standard Model-1 EM with a NULL source token prepended to every source
// sentence; initialization is uniform over the target vocabulary. Throws
// ConfigError for iterations < 1 and ParseError/InvariantError for an
// empty corpus or empty sentence sides.
LexiconModel train_lexicon(PairSource& corpus, int iterations);
LexiconModel train_lexicon(const ParallelCorpus& corpus, int iterations);

struct ScoreOptions {
  // Substituted for a target token's summed probability mass when that
  // mass falls below it (unseen inflections stay finite in log space).
  double floor = 1e-9;
};

// Mean per-target-token log probability:
//   (1/|T|) * sum_t log( max(sum_{s in S+NULL} prob(t|s), floor) / (|S|+1) )
double score_equivalent(const LexiconModel& model,
                        std::span<const std::string> source_term,
                        std::span<const std::string> equivalent,
                        const ScoreOptions& options = {});

enum class SelectionStrategy { kFirst, kAlignment };

struct SelectionResult {
  int entry_id = 0;
  int chosen_rank = 0;
  std::vector<double> scores;  // empty when scoring was bypassed
  SelectionStrategy strategy = SelectionStrategy::kFirst;
};

// Picks rank 0 unconditionally; never consults a model.
SelectionResult select_first(const TermEntry& entry);

// Picks the equivalent with the highest alignment score; ties break to the
// lowest rank, single-equivalent entries bypass scoring.
SelectionResult select_by_alignment(const TermEntry& entry,
                                    const LexiconModel& model,
                                    const ScoreOptions& options = {});

}  // namespace termkit

#endif
