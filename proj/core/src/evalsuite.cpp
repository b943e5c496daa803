#include "termkit/evalsuite.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <unordered_map>

#include "termkit/errors.hpp"

namespace termkit {

namespace {

std::string format_number(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> pieces;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t') ++i;
    if (i > start) pieces.emplace_back(text.substr(start, i - start));
  }
  return pieces;
}

std::optional<std::size_t> find_subsequence(
    std::span<const std::string> haystack,
    std::span<const std::string> needle, std::size_t from = 0) {
  if (needle.empty() || haystack.size() < needle.size()) return std::nullopt;
  for (std::size_t i = from; i + needle.size() <= haystack.size(); ++i) {
    bool hit = true;
    for (std::size_t k = 0; k < needle.size(); ++k)
      if (haystack[i + k] != needle[k]) {
        hit = false;
        break;
      }
    if (hit) return i;
  }
  return std::nullopt;
}

struct Located {
  std::size_t begin;
  std::size_t length;
};

// Variants are tried in list order; the first one present wins and its
// leftmost occurrence is the anchor.
std::optional<Located> locate_variant(
    std::span<const std::string> stemmed_text,
    const std::vector<std::string>& variants, const StemmerRuleSet& stemmer) {
  for (const std::string& variant : variants) {
    const std::vector<std::string> raw = split_whitespace(variant);
    const std::vector<std::string> needle = stem_tokens(raw, stemmer);
    if (const auto pos = find_subsequence(stemmed_text, needle))
      return Located{*pos, needle.size()};
  }
  return std::nullopt;
}

bool variant_hits(std::span<const std::string> text,
                  const std::vector<std::string>& variants, MatchMode mode,
                  const StemmerRuleSet& stemmer) {
  for (const std::string& variant : variants) {
    std::vector<std::string> needle = split_whitespace(variant);
    if (mode == MatchMode::kLemmatized) needle = stem_tokens(needle, stemmer);
    if (find_subsequence(text, needle)) return true;
  }
  return false;
}

// Weighted Levenshtein: substitution charges the heavier token,
// insertion/deletion charge the edited token.
double edit_distance(std::span<const std::string> hyp,
                     std::span<const std::string> ref,
                     std::span<const double> hyp_w,
                     std::span<const double> ref_w) {
  const std::size_t h = hyp.size();
  const std::size_t r = ref.size();
  std::vector<double> previous(r + 1);
  std::vector<double> current(r + 1);
  previous[0] = 0.0;
  for (std::size_t j = 1; j <= r; ++j)
    previous[j] = previous[j - 1] + ref_w[j - 1];
  for (std::size_t i = 1; i <= h; ++i) {
    current[0] = previous[0] + hyp_w[i - 1];
    for (std::size_t j = 1; j <= r; ++j) {
      const double substitution =
          previous[j - 1] + (hyp[i - 1] == ref[j - 1]
                                 ? 0.0
                                 : std::max(hyp_w[i - 1], ref_w[j - 1]));
      const double deletion = previous[j] + hyp_w[i - 1];
      const double insertion = current[j - 1] + ref_w[j - 1];
      current[j] = std::min({substitution, deletion, insertion});
    }
    std::swap(previous, current);
  }
  return previous[r];
}

// Keeps shift enumeration tractable on long sentences; never binds on the
// oracle-checked lengths.
constexpr std::size_t kMaxShiftBlock = 10;

struct ShiftState {
  std::vector<std::string> tokens;
  std::vector<double> weights;
};

void apply_shift(const ShiftState& in, std::size_t begin, std::size_t end,
                 std::size_t destination, ShiftState& out) {
  // destination indexes the sequence with the block removed.
  out.tokens.clear();
  out.weights.clear();
  const std::size_t n = in.tokens.size();
  std::vector<std::size_t> rest;
  rest.reserve(n - (end - begin));
  for (std::size_t i = 0; i < n; ++i)
    if (i < begin || i >= end) rest.push_back(i);
  for (std::size_t k = 0; k <= rest.size(); ++k) {
    if (k == destination)
      for (std::size_t i = begin; i < end; ++i) {
        out.tokens.push_back(in.tokens[i]);
        out.weights.push_back(in.weights[i]);
      }
    if (k < rest.size()) {
      out.tokens.push_back(in.tokens[rest[k]]);
      out.weights.push_back(in.weights[rest[k]]);
    }
  }
}

}  // namespace

TerResult ter(std::span<const std::string> hypothesis,
              std::span<const std::string> reference,
              std::span<const double> hypothesis_weights,
              std::span<const double> reference_weights) {
  if (reference.empty()) throw InvariantError("TER needs a non-empty reference");
  std::vector<double> hyp_w(hypothesis_weights.begin(),
                            hypothesis_weights.end());
  std::vector<double> ref_w(reference_weights.begin(),
                            reference_weights.end());
  if (hyp_w.empty()) hyp_w.assign(hypothesis.size(), 1.0);
  if (ref_w.empty()) ref_w.assign(reference.size(), 1.0);
  if (hyp_w.size() != hypothesis.size() || ref_w.size() != reference.size())
    throw InvariantError("weight span does not match its token span");
  for (const double w : hyp_w)
    if (!(w > 0.0)) throw InvariantError("token weights must be positive");
  for (const double w : ref_w)
    if (!(w > 0.0)) throw InvariantError("token weights must be positive");

  TerResult result;
  for (const double w : ref_w) result.reference_weight += w;

  ShiftState state{{hypothesis.begin(), hypothesis.end()}, std::move(hyp_w)};
  double current = edit_distance(state.tokens, reference, state.weights, ref_w);
  double shift_cost_total = 0.0;

  ShiftState candidate;
  ShiftState best_state;
  while (state.tokens.size() >= 2) {
    double best = current;
    double best_cost = 0.0;
    bool improved = false;
    const std::size_t n = state.tokens.size();
    for (std::size_t begin = 0; begin < n; ++begin) {
      const std::size_t max_end = std::min(n, begin + kMaxShiftBlock);
      for (std::size_t end = begin + 1; end <= max_end; ++end) {
        const std::size_t positions = n - (end - begin);
        for (std::size_t dest = 0; dest <= positions; ++dest) {
          if (dest == begin) continue;  // identity move
          apply_shift(state, begin, end, dest, candidate);
          const double d =
              edit_distance(candidate.tokens, reference, candidate.weights,
                            ref_w);
          if (d < best) {
            best = d;
            best_state = candidate;
            best_cost = *std::max_element(state.weights.begin() + begin,
                                          state.weights.begin() + end);
            improved = true;
          }
        }
      }
    }
    if (!improved) break;
    state = best_state;
    current = best;
    shift_cost_total += best_cost;
    ++result.shifts;
  }
  result.edits = current + shift_cost_total;
  return result;
}

AccuracyResult term_accuracy(std::span<const EvalInstance> instances,
                             MatchMode mode, const StemmerRuleSet& stemmer) {
  AccuracyResult result;
  for (const EvalInstance& instance : instances) {
    std::vector<std::string> text = instance.hypothesis;
    if (mode == MatchMode::kLemmatized)
      text = stem_tokens(instance.hypothesis, stemmer);
    for (const TermAnnotation& term : instance.terms) {
      if (term.variants.empty())
        throw InvariantError("term occurrence without acceptable variants");
      ++result.total;
      if (variant_hits(text, term.variants, mode, stemmer)) ++result.found;
    }
  }
  result.accuracy = result.total
                        ? static_cast<double>(result.found) /
                              static_cast<double>(result.total)
                        : 0.0;
  return result;
}

double window_overlap(std::span<const EvalInstance> instances, std::size_t n,
                      const StemmerRuleSet& stemmer) {
  if (n == 0) throw ConfigError("window size must be at least 1");

  const auto window_of = [n](std::span<const std::string> text,
                             const Located& at) {
    std::vector<std::string> window;
    const std::size_t lo = at.begin > n ? at.begin - n : 0;
    for (std::size_t i = lo; i < at.begin; ++i) window.push_back(text[i]);
    const std::size_t term_end = at.begin + at.length;
    const std::size_t hi = std::min(text.size(), term_end + n);
    for (std::size_t i = term_end; i < hi; ++i) window.push_back(text[i]);
    return window;
  };

  double sum = 0.0;
  std::size_t found = 0;
  for (const EvalInstance& instance : instances) {
    const std::vector<std::string> hyp =
        stem_tokens(instance.hypothesis, stemmer);
    const std::vector<std::string> ref =
        stem_tokens(instance.reference, stemmer);
    for (const TermAnnotation& term : instance.terms) {
      const auto in_hyp = locate_variant(hyp, term.variants, stemmer);
      if (!in_hyp) continue;
      const auto in_ref = locate_variant(ref, term.variants, stemmer);
      if (!in_ref) continue;

      const std::vector<std::string> hyp_window = window_of(hyp, *in_hyp);
      std::vector<std::string> ref_window = window_of(ref, *in_ref);

      std::size_t intersection = 0;
      std::vector<bool> used(ref_window.size(), false);
      for (const std::string& token : hyp_window)
        for (std::size_t i = 0; i < ref_window.size(); ++i)
          if (!used[i] && ref_window[i] == token) {
            used[i] = true;
            ++intersection;
            break;
          }
      sum += static_cast<double>(intersection) /
             static_cast<double>(std::max<std::size_t>(ref_window.size(), 1));
      ++found;
    }
  }
  return found ? sum / static_cast<double>(found) : 0.0;
}

TokenWeights term_weights(const EvalInstance& instance,
                          const StemmerRuleSet& stemmer, double term_weight) {
  if (!(term_weight > 0.0))
    throw ConfigError("term weight must be positive");
  TokenWeights weights;
  weights.hypothesis.assign(instance.hypothesis.size(), 1.0);
  weights.reference.assign(instance.reference.size(), 1.0);

  const std::vector<std::string> hyp =
      stem_tokens(instance.hypothesis, stemmer);
  const std::vector<std::string> ref =
      stem_tokens(instance.reference, stemmer);

  const auto mark = [&](std::span<const std::string> text,
                        std::vector<double>& out,
                        const std::vector<std::string>& variant) {
    const std::vector<std::string> needle =
        stem_tokens(variant, stemmer);
    std::size_t from = 0;
    while (const auto pos = find_subsequence(text, needle, from)) {
      for (std::size_t i = *pos; i < *pos + needle.size(); ++i)
        out[i] = term_weight;
      from = *pos + 1;
    }
  };

  for (const TermAnnotation& term : instance.terms)
    for (const std::string& variant : term.variants) {
      const std::vector<std::string> raw = split_whitespace(variant);
      if (raw.empty()) continue;
      mark(hyp, weights.hypothesis, raw);
      mark(ref, weights.reference, raw);
    }
  return weights;
}

double bleu(std::span<const std::vector<std::string>> hypotheses,
            std::span<const std::vector<std::string>> references) {
  if (hypotheses.size() != references.size())
    throw InvariantError("hypothesis/reference count mismatch");

  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;
  std::size_t matched[4] = {0, 0, 0, 0};
  std::size_t total[4] = {0, 0, 0, 0};

  std::unordered_map<std::string, std::size_t> hyp_counts;
  std::unordered_map<std::string, std::size_t> ref_counts;
  const auto ngram_at = [](const std::vector<std::string>& tokens,
                           std::size_t i, std::size_t n) {
    std::string key = tokens[i];
    for (std::size_t k = 1; k < n; ++k) {
      key += ' ';
      key += tokens[i + k];
    }
    return key;
  };

  for (std::size_t s = 0; s < hypotheses.size(); ++s) {
    const auto& hyp = hypotheses[s];
    const auto& ref = references[s];
    if (ref.empty()) throw InvariantError("empty reference sentence");
    hyp_len += hyp.size();
    ref_len += ref.size();
    for (std::size_t n = 1; n <= 4; ++n) {
      if (hyp.size() < n) continue;
      hyp_counts.clear();
      ref_counts.clear();
      for (std::size_t i = 0; i + n <= hyp.size(); ++i)
        ++hyp_counts[ngram_at(hyp, i, n)];
      for (std::size_t i = 0; i + n <= ref.size(); ++i)
        ++ref_counts[ngram_at(ref, i, n)];
      total[n - 1] += hyp.size() - n + 1;
      for (const auto& [key, count] : hyp_counts) {
        const auto it = ref_counts.find(key);
        if (it != ref_counts.end())
          matched[n - 1] += std::min(count, it->second);
      }
    }
  }

  if (hyp_len == 0) return 0.0;
  double log_sum = 0.0;
  for (std::size_t n = 0; n < 4; ++n) {
    if (matched[n] == 0 || total[n] == 0) return 0.0;
    log_sum += std::log(static_cast<double>(matched[n]) /
                        static_cast<double>(total[n]));
  }
  const double brevity =
      hyp_len >= ref_len
          ? 1.0
          : std::exp(1.0 - static_cast<double>(ref_len) /
                               static_cast<double>(hyp_len));
  return 100.0 * brevity * std::exp(log_sum / 4.0);
}

EvalReport evaluate(std::span<const EvalInstance> instances,
                    const StemmerRuleSet& stemmer,
                    const EvalOptions& options) {
  EvalReport report;
  const AccuracyResult exact =
      term_accuracy(instances, MatchMode::kExact, stemmer);
  const AccuracyResult lemma =
      term_accuracy(instances, MatchMode::kLemmatized, stemmer);
  report.term_count = exact.total;
  const double undefined = std::numeric_limits<double>::quiet_NaN();
  report.exact_accuracy = exact.defined() ? exact.accuracy : undefined;
  report.lemma_accuracy = lemma.defined() ? lemma.accuracy : undefined;
  report.window2 = window_overlap(instances, 2, stemmer);
  report.window3 = window_overlap(instances, 3, stemmer);

  std::vector<std::vector<std::string>> hypotheses;
  std::vector<std::vector<std::string>> references;
  hypotheses.reserve(instances.size());
  references.reserve(instances.size());
  double edits = 0.0;
  double reference_weight = 0.0;
  for (const EvalInstance& instance : instances) {
    hypotheses.push_back(instance.hypothesis);
    references.push_back(instance.reference);
    const TokenWeights weights =
        term_weights(instance, stemmer, options.term_weight);
    const TerResult sentence =
        ter(instance.hypothesis, instance.reference, weights.hypothesis,
            weights.reference);
    edits += sentence.edits;
    reference_weight += sentence.reference_weight;
  }
  report.one_minus_term =
      instances.empty() ? 1.0 : 1.0 - edits / reference_weight;
  report.bleu = bleu(hypotheses, references);
  return report;
}

void write_report(const EvalReport& report, std::ostream& output) {
  const auto accuracy_text = [&](double value) {
    return report.accuracy_defined() ? format_number(value)
                                     : std::string("n/a");
  };
  output << "term_count=" << report.term_count << '\n'
         << "exact_accuracy=" << accuracy_text(report.exact_accuracy) << '\n'
         << "lemma_accuracy=" << accuracy_text(report.lemma_accuracy) << '\n'
         << "window2=" << format_number(report.window2) << '\n'
         << "window3=" << format_number(report.window3) << '\n'
         << "one_minus_term=" << format_number(report.one_minus_term) << '\n'
         << "bleu=" << format_number(report.bleu) << '\n'
         << '\n'
         << "BLEU\tAccuracy\tWindow 2\tWindow 3\t1 - TERm\n"
         << format_number(report.bleu) << '\t'
         << accuracy_text(report.lemma_accuracy) << '\t'
         << format_number(report.window2) << '\t'
         << format_number(report.window3) << '\t'
         << format_number(report.one_minus_term) << '\n';
}

CoverageReport coverage(std::span<const BilingualTerm> terms,
                        const ParallelCorpus& training,
                        const ParallelCorpus* eval_data,
                        const StemmerRuleSet& source_stemmer,
                        const StemmerRuleSet& target_stemmer) {
  if (training.pairs.empty())
    throw InvariantError("coverage needs a non-empty training corpus");

  struct StemmedPair {
    std::vector<std::string> source;
    std::vector<std::string> target;
  };
  const auto stem_corpus = [&](const ParallelCorpus& corpus) {
    std::vector<StemmedPair> stemmed;
    stemmed.reserve(corpus.pairs.size());
    for (const SentencePair& pair : corpus.pairs)
      stemmed.push_back({stem_tokens(pair.source, source_stemmer),
                         stem_tokens(pair.target, target_stemmer)});
    return stemmed;
  };
  const std::vector<StemmedPair> train = stem_corpus(training);
  std::vector<StemmedPair> eval;
  if (eval_data != nullptr) eval = stem_corpus(*eval_data);

  CoverageReport report;
  for (const BilingualTerm& term : terms) {
    const std::vector<std::string> source_needle =
        stem_tokens(tokenize_folded(term.source), source_stemmer);
    const std::vector<std::string> target_needle =
        stem_tokens(tokenize_folded(term.target), target_stemmer);

    const auto occurrences = [&](const std::vector<StemmedPair>& corpus) {
      std::size_t count = 0;
      for (const StemmedPair& pair : corpus)
        if (find_subsequence(pair.source, source_needle) &&
            find_subsequence(pair.target, target_needle))
          ++count;
      return count;
    };
    const std::size_t in_training = occurrences(train);
    const std::size_t weight = eval_data ? occurrences(eval) : 1;

    report.unique_total += 1;
    report.running_total += weight;
    if (in_training >= 1) {
      report.unique_ge1 += 1;
      report.running_ge1 += weight;
    }
    if (in_training >= 10) {
      report.unique_ge10 += 1;
      report.running_ge10 += weight;
    }
  }
  return report;
}

void write_report(const CoverageReport& report, std::ostream& output) {
  output << "unique_total=" << report.unique_total << '\n'
         << "unique_ge1=" << report.unique_ge1 << '\n'
         << "unique_ge10=" << report.unique_ge10 << '\n'
         << "running_total=" << report.running_total << '\n'
         << "running_ge1=" << report.running_ge1 << '\n'
         << "running_ge10=" << report.running_ge10 << '\n';
}

}  // namespace termkit
