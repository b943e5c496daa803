#ifndef TERMKIT_ANNOTATOR_HPP
#define TERMKIT_ANNOTATOR_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "termkit/aligner.hpp"
#include "termkit/recognizer.hpp"

namespace termkit {

enum class Factor : char {
  kSource = 's',  // token belongs to a recognized source term
  kTarget = 't',  // injected target lemma
  kWord = 'w',    // ordinary token
};

struct FactoredToken {
  std::string surface;
  Factor factor = Factor::kWord;

  bool operator==(const FactoredToken&) const = default;
};

// Invariant: every maximal run of t tokens is immediately preceded by an
// s token; surfaces are non-empty and never contain '|'.
struct AnnotatedSentence {
  std::vector<FactoredToken> tokens;

  bool operator==(const AnnotatedSentence&) const = default;
};

struct AnnotateOptions {
  std::size_t max_len = 196;  // hard budget on annotated token count
};

// Marks matched spans with s, injects each match's selected target tokens
// (factor t) right after the span, leaves the rest w. Matches are applied
// left to right; a match whose insertion would push the sentence past
// max_len is skipped and its tokens stay w. Overlapping matches are a
// recognizer contract violation and raise InvariantError.
AnnotatedSentence annotate_inference(std::span<const std::string> sentence,
                                     std::span<const TermMatch> matches,
                                     const AnnotateOptions& options = {});

// Drops t tokens and factor marks; inverse of annotate_inference on the
// source tokenization.
std::vector<std::string> strip_annotation(const AnnotatedSentence& sentence);

std::string render_factored(const AnnotatedSentence& sentence);

// Parses "tok|s tok|t tok|w". ParseError on a missing or unknown factor.
AnnotatedSentence parse_factored(std::string_view line);

using LemmaTable = std::unordered_map<std::string, std::string>;

struct TrainingAnnotateOptions {
  double rate = 0.1;              // per-content-token annotation probability
  double confidence_floor = 0.5;  // skip tokens whose best prob(t|s) is below
  std::uint64_t seed = 0;
};

// Stochastic training-data annotation. For each source content token
// sampled at `rate`, picks the target-sentence token maximizing prob(t|s);
// if that probability clears the floor, the source token becomes s and the
// target token's lemma (identity fallback) is inserted after it as t.
// Model lookups are case-folded; surfaces pass through untouched.
// Randomness is derived from (seed, sentence_index), so corpus-level runs
// are reproducible under any work order.
AnnotatedSentence annotate_training(const SentencePair& pair,
                                    const LexiconModel& model,
                                    const LemmaTable& lemmas,
                                    const TrainingAnnotateOptions& options,
                                    std::size_t sentence_index);

}  // namespace termkit

#endif
