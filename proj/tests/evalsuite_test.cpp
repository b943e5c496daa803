#include "termkit/evalsuite.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "termkit/errors.hpp"
#include "termkit/recognizer.hpp"
#include "testutil.hpp"

using namespace termkit;

namespace {

StemmerRuleSet english_rules() {
  std::istringstream rules(
      "#lang=en min_stem=3 fold_case=1\n"
      "sses\tss\t3\n"
      "ies\ty\t3\n"
      "ing\t\t4\n"
      "ed\t\t3\n"
      "ss\tss\t2\n"
      "s\t\t3\n");
  return StemmerRuleSet::load(rules);
}

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < text.size() && text[i] != ' ') ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

TermAnnotation term(std::vector<std::string> variants) {
  TermAnnotation annotation;
  annotation.variants = std::move(variants);
  return annotation;
}

EvalInstance instance_of(std::string_view hypothesis,
                         std::string_view reference,
                         std::vector<TermAnnotation> terms = {}) {
  EvalInstance instance;
  instance.hypothesis = words(hypothesis);
  instance.reference = words(reference);
  instance.terms = std::move(terms);
  return instance;
}

}  // namespace

TEST_SUITE("evalsuite") {

TEST_CASE("term accuracy is the found fraction over all occurrences") {
  const StemmerRuleSet identity = StemmerRuleSet::identity();
  const std::vector<EvalInstance> instances = {
      instance_of("the flu spread fast", "the flu spread fast",
                  {term({"flu"})}),
      instance_of("cases rose again", "flu cases rose", {term({"flu"})}),
      instance_of("a flu epidemic hit", "the flu epidemic hit",
                  {term({"flu epidemic"})}),
      instance_of("wash your hands often", "wash your hands often",
                  {term({"hands"})}),
  };

  const AccuracyResult exact =
      term_accuracy(instances, MatchMode::kExact, identity);
  CHECK(exact.total == 4);
  CHECK(exact.found == 3);
  CHECK(exact.accuracy == 0.75);
  CHECK(exact.defined());
}

TEST_CASE("multi-token variants must appear contiguously") {
  const StemmerRuleSet identity = StemmerRuleSet::identity();
  const std::vector<EvalInstance> scattered = {
      instance_of("flu bad epidemic", "x", {term({"flu epidemic"})})};
  CHECK(term_accuracy(scattered, MatchMode::kExact, identity).found == 0);

  const std::vector<EvalInstance> adjacent = {
      instance_of("the flu epidemic", "x", {term({"flu epidemic"})})};
  CHECK(term_accuracy(adjacent, MatchMode::kExact, identity).found == 1);
}

TEST_CASE("any acceptable variant counts as found") {
  const StemmerRuleSet identity = StemmerRuleSet::identity();
  const std::vector<EvalInstance> instances = {instance_of(
      "an outbreak began", "x", {term({"epidemic", "outbreak"})})};
  const AccuracyResult result =
      term_accuracy(instances, MatchMode::kExact, identity);
  CHECK(result.found == 1);
  CHECK(result.total == 1);
}

TEST_CASE("lemmatized matching accepts inflected renderings") {
  const StemmerRuleSet rules = english_rules();
  const std::vector<EvalInstance> instances = {
      instance_of("infections spread quickly", "x", {term({"infection"})})};

  const AccuracyResult exact =
      term_accuracy(instances, MatchMode::kExact, rules);
  const AccuracyResult lemma =
      term_accuracy(instances, MatchMode::kLemmatized, rules);
  CHECK(exact.found == 0);
  CHECK(lemma.found == 1);
  CHECK(lemma.accuracy > exact.accuracy);
}

TEST_CASE("term accuracy rejects occurrences without variants") {
  const StemmerRuleSet identity = StemmerRuleSet::identity();
  const std::vector<EvalInstance> instances = {
      instance_of("a b", "a b", {term({})})};
  CHECK_THROWS_AS(term_accuracy(instances, MatchMode::kExact, identity),
                  InvariantError);
}

TEST_CASE("term accuracy with no occurrences is undefined") {
  const StemmerRuleSet identity = StemmerRuleSet::identity();
  const std::vector<EvalInstance> instances = {instance_of("a b", "a b")};
  const AccuracyResult result =
      term_accuracy(instances, MatchMode::kExact, identity);
  CHECK(result.total == 0);
  CHECK_FALSE(result.defined());
}

TEST_CASE("window overlap compares term contexts") {
  const StemmerRuleSet identity = StemmerRuleSet::identity();
  const std::vector<EvalInstance> instances = {
      instance_of("the big dog barks loud", "a big dog barks loudly",
                  {term({"dog"})})};
  // hyp window {the, big, barks, loud}, ref window {a, big, barks, loudly}:
  // 2 shared over 4 reference tokens.
  CHECK(window_overlap(instances, 2, identity) == 0.5);
}

TEST_CASE("window overlap clips at sentence edges") {
  const StemmerRuleSet identity = StemmerRuleSet::identity();
  const std::vector<EvalInstance> instances = {
      instance_of("dog runs", "dog walks", {term({"dog"})})};
  // Left windows are empty; right windows are {runs} and {walks}.
  CHECK(window_overlap(instances, 2, identity) == 0.0);

  const std::vector<EvalInstance> shared = {
      instance_of("dog runs", "dog runs", {term({"dog"})})};
  CHECK(window_overlap(shared, 2, identity) == 1.0);
}

TEST_CASE("window overlap counts shared tokens with multiplicity") {
  const StemmerRuleSet identity = StemmerRuleSet::identity();
  const std::vector<EvalInstance> instances = {
      instance_of("x x dog y q", "x x dog y z", {term({"dog"})})};
  // Windows {x, x, y, q} and {x, x, y, z}: both x copies count.
  CHECK(window_overlap(instances, 2, identity) == 0.75);
}

TEST_CASE("window overlap skips occurrences missing from either side") {
  const StemmerRuleSet identity = StemmerRuleSet::identity();
  const std::vector<EvalInstance> instances = {
      instance_of("a dog b", "a dog b", {term({"dog"}), term({"cat"})}),
      instance_of("a cow b", "no match here", {term({"cow"})}),
  };
  // Only the dog occurrence is found on both sides; its windows agree.
  CHECK(window_overlap(instances, 2, identity) == 1.0);

  const std::vector<EvalInstance> none = {
      instance_of("a b", "c d", {term({"dog"})})};
  CHECK(window_overlap(none, 2, identity) == 0.0);
}

TEST_CASE("window overlap anchors on the first variant present") {
  const StemmerRuleSet identity = StemmerRuleSet::identity();
  // Both variants occur; anchoring at "cat" gives full overlap while the
  // "dog" contexts disagree.
  const std::vector<EvalInstance> instances = {
      instance_of("p cat q dog r", "p cat q dog z",
                  {term({"cat", "dog"})})};
  CHECK(window_overlap(instances, 1, identity) == 1.0);
}

TEST_CASE("window overlap anchors on the leftmost occurrence") {
  const StemmerRuleSet identity = StemmerRuleSet::identity();
  // Leftmost "cat" has window {z, q}; the rightmost one would score 0.
  const std::vector<EvalInstance> instances = {
      instance_of("z cat q cat w", "z cat b", {term({"cat"})})};
  CHECK(window_overlap(instances, 1, identity) == 0.5);
}

TEST_CASE("window overlap validates the window size") {
  const StemmerRuleSet identity = StemmerRuleSet::identity();
  const std::vector<EvalInstance> instances = {
      instance_of("a dog b", "a dog b", {term({"dog"})})};
  CHECK_THROWS_AS(window_overlap(instances, 0, identity), ConfigError);
}

TEST_CASE("ter of identical sentences is zero") {
  const std::vector<std::string> tokens = words("the flu spread fast");
  const TerResult result = ter(tokens, tokens);
  CHECK(result.edits == 0.0);
  CHECK(result.shifts == 0);
  CHECK(result.reference_weight == 4.0);
  CHECK(result.rate() == 0.0);
}

TEST_CASE("a block shift replaces two substitutions") {
  const std::vector<std::string> hyp = words("b a");
  const std::vector<std::string> ref = words("a b");
  const TerResult result = ter(hyp, ref);
  CHECK(result.shifts == 1);
  CHECK(result.edits == 1.0);
  CHECK(result.reference_weight == 2.0);
  CHECK(result.rate() == 0.5);
}

TEST_CASE("plain edits cost the edited token's weight") {
  const std::vector<std::string> sub_hyp = words("a x");
  const std::vector<std::string> sub_ref = words("a y");
  const std::vector<double> sub_hyp_w = {1.0, 3.0};
  const std::vector<double> sub_ref_w = {1.0, 2.0};
  // Substitution charges the heavier side.
  CHECK(ter(sub_hyp, sub_ref, sub_hyp_w, sub_ref_w).edits == 3.0);

  const std::vector<std::string> del_hyp = words("a b c");
  const std::vector<std::string> del_ref = words("a c");
  const std::vector<double> del_w = {1.0, 5.0, 1.0};
  CHECK(ter(del_hyp, del_ref, del_w, {}).edits == 5.0);

  const std::vector<std::string> ins_hyp = words("a");
  const std::vector<std::string> ins_ref = words("a b");
  const std::vector<double> ins_w = {1.0, 7.0};
  const TerResult insertion = ter(ins_hyp, ins_ref, {}, ins_w);
  CHECK(insertion.edits == 7.0);
  CHECK(insertion.reference_weight == 8.0);
}

TEST_CASE("a shift costs the heaviest weight in the moved block") {
  const std::vector<std::string> hyp = words("b a");
  const std::vector<std::string> ref = words("a b");
  const std::vector<double> heavy_b = {4.0, 1.0};
  // The first improving shift found moves "b"; its weight is charged.
  const TerResult result = ter(hyp, ref, heavy_b, {});
  CHECK(result.shifts == 1);
  CHECK(result.edits == 4.0);
}

TEST_CASE("scaling all weights scales edits and preserves the rate") {
  const std::vector<std::string> hyp = words("c a b x");
  const std::vector<std::string> ref = words("a b c y");
  const std::vector<double> hyp_w = {2.0, 1.0, 1.0, 3.0};
  const std::vector<double> ref_w = {1.0, 1.0, 2.0, 2.0};
  std::vector<double> hyp_2x = hyp_w;
  std::vector<double> ref_2x = ref_w;
  for (double& w : hyp_2x) w *= 2.0;
  for (double& w : ref_2x) w *= 2.0;

  const TerResult base = ter(hyp, ref, hyp_w, ref_w);
  const TerResult scaled = ter(hyp, ref, hyp_2x, ref_2x);
  CHECK(scaled.edits == 2.0 * base.edits);
  CHECK(scaled.shifts == base.shifts);
  CHECK(scaled.rate() == base.rate());
}

TEST_CASE("ter validates its inputs") {
  const std::vector<std::string> tokens = words("a b");
  const std::vector<std::string> none;
  CHECK_THROWS_AS(ter(tokens, none), InvariantError);

  const std::vector<double> short_w = {1.0};
  CHECK_THROWS_AS(ter(tokens, tokens, short_w, {}), InvariantError);
  CHECK_THROWS_AS(ter(tokens, tokens, {}, short_w), InvariantError);

  const std::vector<double> zero_w = {1.0, 0.0};
  CHECK_THROWS_AS(ter(tokens, tokens, zero_w, {}), InvariantError);
  const std::vector<double> negative_w = {1.0, -1.0};
  CHECK_THROWS_AS(ter(tokens, tokens, {}, negative_w), InvariantError);
}

TEST_CASE("greedy shifting matches the true minimum on short pairs") {
  const std::vector<std::string> alphabet = {"a", "b"};
  std::vector<testutil::Tokens> sequences;
  for (std::size_t len = 1; len <= 3; ++len) {
    const std::size_t count = 1u << len;  // 2^len sequences
    for (std::size_t code = 0; code < count; ++code) {
      testutil::Tokens tokens;
      for (std::size_t i = 0; i < len; ++i)
        tokens.push_back(alphabet[(code >> i) & 1]);
      sequences.push_back(std::move(tokens));
    }
  }
  for (const auto& hyp : sequences)
    for (const auto& ref : sequences) {
      const TerResult greedy = ter(hyp, ref);
      const int oracle = testutil::ter_true_minimum(hyp, ref);
      CHECK(greedy.edits == static_cast<double>(oracle));
    }
}

TEST_CASE("greedy shifting is bounded by one-shot and true optima") {
  testutil::Rng rng(29);
  const std::vector<std::string> alphabet = {"a", "b", "c"};
  for (int round = 0; round < 150; ++round) {
    testutil::Tokens hyp;
    testutil::Tokens ref;
    const std::size_t hyp_len = 1 + rng.below(5);
    const std::size_t ref_len = 1 + rng.below(5);
    for (std::size_t i = 0; i < hyp_len; ++i)
      hyp.push_back(alphabet[rng.below(alphabet.size())]);
    for (std::size_t i = 0; i < ref_len; ++i)
      ref.push_back(alphabet[rng.below(alphabet.size())]);

    const double greedy = ter(hyp, ref).edits;
    CHECK(static_cast<double>(testutil::ter_true_minimum(hyp, ref)) <=
          greedy);
    CHECK(greedy <=
          static_cast<double>(testutil::ter_best_single_shift(hyp, ref)));
  }
}

TEST_CASE("term weights mark lemmatized matches on both sides") {
  const StemmerRuleSet rules = english_rules();
  EvalInstance instance =
      instance_of("the dogs bark", "a dog barks", {term({"dog"})});

  const TokenWeights weights = term_weights(instance, rules);
  CHECK(weights.hypothesis == std::vector<double>{1.0, 2.0, 1.0});
  CHECK(weights.reference == std::vector<double>{1.0, 2.0, 1.0});
}

TEST_CASE("term weights cover every occurrence and variant") {
  const StemmerRuleSet identity = StemmerRuleSet::identity();
  EvalInstance instance = instance_of("flu x flu cold", "flu y",
                                      {term({"flu", "cold"})});
  const TokenWeights weights = term_weights(instance, identity, 3.0);
  CHECK(weights.hypothesis == std::vector<double>{3.0, 1.0, 3.0, 3.0});
  CHECK(weights.reference == std::vector<double>{3.0, 1.0});
}

TEST_CASE("term weights ignore blank variants and reject bad weights") {
  const StemmerRuleSet identity = StemmerRuleSet::identity();
  EvalInstance instance = instance_of("a b", "a b", {term({" "})});
  const TokenWeights weights = term_weights(instance, identity);
  CHECK(weights.hypothesis == std::vector<double>{1.0, 1.0});

  CHECK_THROWS_AS(term_weights(instance, identity, 0.0), ConfigError);
  CHECK_THROWS_AS(term_weights(instance, identity, -2.0), ConfigError);
}

TEST_CASE("bleu of an identical corpus is exactly one hundred") {
  const std::vector<std::vector<std::string>> sentences = {
      words("the flu spread very fast today"),
      words("wash your hands with soap"),
  };
  CHECK(bleu(sentences, sentences) == 100.0);
}

TEST_CASE("bleu matches the clipped n-gram computation by hand") {
  const std::vector<std::vector<std::string>> hyp = {
      words("the cat sat on the mat")};
  const std::vector<std::vector<std::string>> ref = {
      words("the cat sat on a mat")};
  // Precisions 5/6, 3/5, 2/4, 1/3; equal lengths, no brevity penalty.
  const double expected =
      100.0 * std::pow((5.0 / 6.0) * (3.0 / 5.0) * (2.0 / 4.0) * (1.0 / 3.0),
                       0.25);
  CHECK(bleu(hyp, ref) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("bleu applies the brevity penalty to short hypotheses") {
  const std::vector<std::vector<std::string>> hyp = {words("a b c d")};
  const std::vector<std::vector<std::string>> ref = {words("a b c d e")};
  CHECK(bleu(hyp, ref) ==
        doctest::Approx(100.0 * std::exp(1.0 - 5.0 / 4.0)).epsilon(1e-9));

  const std::vector<std::vector<std::string>> longer = {words("a b c d e")};
  const std::vector<std::vector<std::string>> shorter = {words("a b c d")};
  // No reward or penalty for running long.
  CHECK(bleu(longer, shorter) ==
        doctest::Approx(100.0 * std::pow(4.0 / 5.0 * 3.0 / 4.0 * 2.0 / 3.0 *
                                             1.0 / 2.0,
                                         0.25))
            .epsilon(1e-9));
}

TEST_CASE("bleu pools counts over the corpus") {
  const std::vector<std::vector<std::string>> hyp = {words("a b c d e"),
                                                     words("x y z w")};
  const std::vector<std::vector<std::string>> ref = {words("a b c d e"),
                                                     words("p q r s")};
  // Pooled precisions 5/9, 4/7, 3/5, 2/3; a per-sentence mean would be 50.
  const double expected = 100.0 * std::pow(120.0 / 945.0, 0.25);
  CHECK(bleu(hyp, ref) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("bleu is zero without a four-gram match") {
  const std::vector<std::vector<std::string>> hyp = {words("a b c d")};
  const std::vector<std::vector<std::string>> ref = {words("a x c y")};
  CHECK(bleu(hyp, ref) == 0.0);

  // A corpus of sentences shorter than four tokens has no four-grams.
  const std::vector<std::vector<std::string>> tiny = {words("a b")};
  CHECK(bleu(tiny, tiny) == 0.0);

  const std::vector<std::vector<std::string>> none;
  CHECK(bleu(none, none) == 0.0);
}

TEST_CASE("bleu validates corpus shape") {
  const std::vector<std::vector<std::string>> two = {words("a"), words("b")};
  const std::vector<std::vector<std::string>> one = {words("a")};
  CHECK_THROWS_AS(bleu(two, one), InvariantError);

  const std::vector<std::vector<std::string>> blank = {{}};
  CHECK_THROWS_AS(bleu(one, blank), InvariantError);
}

TEST_CASE("evaluate combines the metrics over a corpus") {
  const StemmerRuleSet rules = english_rules();
  const std::vector<EvalInstance> instances = {
      instance_of("the cat runs", "the dog runs", {term({"dog"})})};

  const EvalReport report = evaluate(instances, rules);
  CHECK(report.term_count == 1);
  CHECK(report.exact_accuracy == 0.0);
  CHECK(report.lemma_accuracy == 0.0);
  CHECK(report.window2 == 0.0);
  CHECK(report.window3 == 0.0);
  // One substitution on a weight-2 reference token over weight 4.
  CHECK(report.one_minus_term == 0.5);
  CHECK(report.bleu == 0.0);
}

TEST_CASE("evaluate on a perfect hypothesis maxes every metric") {
  const StemmerRuleSet identity = StemmerRuleSet::identity();
  const std::vector<EvalInstance> instances = {
      instance_of("the flu epidemic ended early", "the flu epidemic ended early",
                  {term({"flu epidemic"})})};

  const EvalReport report = evaluate(instances, identity);
  CHECK(report.exact_accuracy == 1.0);
  CHECK(report.lemma_accuracy == 1.0);
  CHECK(report.window2 == 1.0);
  CHECK(report.window3 == 1.0);
  CHECK(report.one_minus_term == 1.0);
  CHECK(report.bleu == 100.0);
  CHECK(report.accuracy_defined());
}

TEST_CASE("evaluate propagates a bad term weight") {
  const StemmerRuleSet identity = StemmerRuleSet::identity();
  const std::vector<EvalInstance> instances = {
      instance_of("a b", "a b", {term({"a"})})};
  EvalOptions options;
  options.term_weight = 0.0;
  CHECK_THROWS_AS(evaluate(instances, identity, options), ConfigError);
}

TEST_CASE("reports render key-value lines and a summary row") {
  const StemmerRuleSet rules = english_rules();
  const std::vector<EvalInstance> instances = {
      instance_of("the cat runs", "the dog runs", {term({"dog"})})};

  std::ostringstream out;
  write_report(evaluate(instances, rules), out);
  CHECK(out.str() ==
        "term_count=1\n"
        "exact_accuracy=0\n"
        "lemma_accuracy=0\n"
        "window2=0\n"
        "window3=0\n"
        "one_minus_term=0.5\n"
        "bleu=0\n"
        "\n"
        "BLEU\tAccuracy\tWindow 2\tWindow 3\t1 - TERm\n"
        "0\t0\t0\t0\t0.5\n");
}

TEST_CASE("undefined accuracies render as n/a") {
  const StemmerRuleSet identity = StemmerRuleSet::identity();
  const std::vector<EvalInstance> instances = {
      instance_of("a b c d", "a b c d")};

  std::ostringstream out;
  write_report(evaluate(instances, identity), out);
  const std::vector<std::string> lines = testutil::split_lines(out.str());
  REQUIRE(lines.size() == 10);
  CHECK(lines[0] == "term_count=0");
  CHECK(lines[1] == "exact_accuracy=n/a");
  CHECK(lines[2] == "lemma_accuracy=n/a");
  CHECK(lines.back() == "100\tn/a\t0\t0\t1");
}

TEST_CASE("coverage classifies terms by training frequency") {
  const StemmerRuleSet identity = StemmerRuleSet::identity();
  ParallelCorpus training;
  for (int i = 0; i < 12; ++i)
    training.pairs.push_back({words("the flu season"), words("la grippe arrive")});
  for (int i = 0; i < 2; ++i)
    training.pairs.push_back({words("a cold day"), words("un rhume leger")});
  training.pairs.push_back({words("fever dreams"), words("les reves")});
  training.pairs.push_back({words("nothing"), words("rien")});

  const std::vector<BilingualTerm> terms = {
      {"flu", "grippe"}, {"cold", "rhume"}, {"fever", "fievre"}};

  const CoverageReport plain =
      coverage(terms, training, nullptr, identity, identity);
  CHECK(plain.unique_total == 3);
  CHECK(plain.unique_ge1 == 2);
  CHECK(plain.unique_ge10 == 1);
  // Without evaluation data every term weighs one.
  CHECK(plain.running_total == 3);
  CHECK(plain.running_ge1 == 2);
  CHECK(plain.running_ge10 == 1);

  ParallelCorpus eval;
  for (int i = 0; i < 5; ++i)
    eval.pairs.push_back({words("flu again"), words("encore la grippe")});
  for (int i = 0; i < 2; ++i)
    eval.pairs.push_back({words("high fever"), words("forte fievre")});

  const CoverageReport weighted =
      coverage(terms, training, &eval, identity, identity);
  CHECK(weighted.unique_total == 3);
  CHECK(weighted.unique_ge1 == 2);
  CHECK(weighted.unique_ge10 == 1);
  CHECK(weighted.running_total == 7);
  CHECK(weighted.running_ge1 == 5);
  CHECK(weighted.running_ge10 == 5);
}

TEST_CASE("coverage needs contiguous in-order phrases on both sides") {
  const StemmerRuleSet identity = StemmerRuleSet::identity();
  ParallelCorpus training;
  training.pairs.push_back({words("the flu season"), words("la grippe")});

  const std::vector<BilingualTerm> in_order = {{"flu season", "grippe"}};
  CHECK(coverage(in_order, training, nullptr, identity, identity).unique_ge1 ==
        1);

  const std::vector<BilingualTerm> reversed = {{"season flu", "grippe"}};
  CHECK(coverage(reversed, training, nullptr, identity, identity).unique_ge1 ==
        0);

  const std::vector<BilingualTerm> target_miss = {{"flu", "rhume"}};
  CHECK(coverage(target_miss, training, nullptr, identity, identity)
            .unique_ge1 == 0);
}

TEST_CASE("coverage folds case and applies the stemmers") {
  const StemmerRuleSet rules = english_rules();
  ParallelCorpus training;
  training.pairs.push_back({words("Infections Spread"), words("les infections")});

  const std::vector<BilingualTerm> terms = {{"INFECTION", "infectionS"}};
  CHECK(coverage(terms, training, nullptr, rules, rules).unique_ge1 == 1);
}

TEST_CASE("coverage rejects an empty training corpus") {
  const StemmerRuleSet identity = StemmerRuleSet::identity();
  const ParallelCorpus empty;
  const std::vector<BilingualTerm> terms = {{"a", "b"}};
  CHECK_THROWS_AS(coverage(terms, empty, nullptr, identity, identity),
                  InvariantError);
}

TEST_CASE("coverage agrees with a direct tally on random corpora") {
  testutil::Rng rng(31);
  const std::vector<std::string> vocabulary = {"ape", "bat", "cow",
                                               "dog", "elk", "fox"};
  const auto sentence = [&]() {
    std::vector<std::string> tokens;
    const std::size_t len = 3 + rng.below(6);
    for (std::size_t i = 0; i < len; ++i)
      tokens.push_back(vocabulary[rng.below(vocabulary.size())]);
    return tokens;
  };

  ParallelCorpus training;
  for (int i = 0; i < 40; ++i) training.pairs.push_back({sentence(), sentence()});
  ParallelCorpus eval;
  for (int i = 0; i < 15; ++i) eval.pairs.push_back({sentence(), sentence()});

  std::vector<BilingualTerm> terms;
  for (int i = 0; i < 10; ++i) {
    const auto phrase = [&]() {
      std::string text = vocabulary[rng.below(vocabulary.size())];
      if (rng.below(2) == 0) {
        text += ' ';
        text += vocabulary[rng.below(vocabulary.size())];
      }
      return text;
    };
    terms.push_back({phrase(), phrase()});
  }

  // Independent tally: substring search over space-joined sentences.
  const auto render = [](const std::vector<std::string>& tokens) {
    std::string joined = " ";
    for (const std::string& token : tokens) {
      joined += token;
      joined += ' ';
    }
    return joined;
  };
  const auto count_in = [&](const ParallelCorpus& corpus,
                            const BilingualTerm& term) {
    const std::string source = " " + term.source + " ";
    const std::string target = " " + term.target + " ";
    std::size_t count = 0;
    for (const SentencePair& pair : corpus.pairs)
      if (render(pair.source).find(source) != std::string::npos &&
          render(pair.target).find(target) != std::string::npos)
        ++count;
    return count;
  };

  CoverageReport expected;
  for (const BilingualTerm& term : terms) {
    const std::size_t in_training = count_in(training, term);
    const std::size_t weight = count_in(eval, term);
    expected.unique_total += 1;
    expected.running_total += weight;
    if (in_training >= 1) {
      expected.unique_ge1 += 1;
      expected.running_ge1 += weight;
    }
    if (in_training >= 10) {
      expected.unique_ge10 += 1;
      expected.running_ge10 += weight;
    }
  }

  const StemmerRuleSet identity = StemmerRuleSet::identity();
  const CoverageReport actual =
      coverage(terms, training, &eval, identity, identity);
  CHECK(actual.unique_total == expected.unique_total);
  CHECK(actual.unique_ge1 == expected.unique_ge1);
  CHECK(actual.unique_ge10 == expected.unique_ge10);
  CHECK(actual.running_total == expected.running_total);
  CHECK(actual.running_ge1 == expected.running_ge1);
  CHECK(actual.running_ge10 == expected.running_ge10);
}

TEST_CASE("coverage report renders one line per counter") {
  CoverageReport report;
  report.unique_total = 9;
  report.unique_ge1 = 7;
  report.unique_ge10 = 3;
  report.running_total = 100;
  report.running_ge1 = 95;
  report.running_ge10 = 60;

  std::ostringstream out;
  write_report(report, out);
  CHECK(out.str() ==
        "unique_total=9\n"
        "unique_ge1=7\n"
        "unique_ge10=3\n"
        "running_total=100\n"
        "running_ge1=95\n"
        "running_ge10=60\n");
}

}  // TEST_SUITE
