#include "termkit/annotator.hpp"

#include <algorithm>
#include <random>

#include "termkit/errors.hpp"
#include "termkit/unicode.hpp"

namespace termkit {

namespace {

FactoredToken make_token(std::string surface, Factor factor) {
  if (surface.empty())
    throw InvariantError("factored token with empty surface");
  if (surface.find('|') != std::string::npos)
    throw InvariantError("token contains the factor separator: " + surface);
  return {std::move(surface), factor};
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

bool is_content_token(const std::string& token) {
  for (const char32_t cp : unicode::decode_utf8(token))
    if (unicode::is_letter(cp) || unicode::is_ascii_digit(cp)) return true;
  return false;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

AnnotatedSentence annotate_inference(std::span<const std::string> sentence,
                                     std::span<const TermMatch> matches,
                                     const AnnotateOptions& options) {
  std::vector<TermMatch> ordered(matches.begin(), matches.end());
  std::sort(ordered.begin(), ordered.end(),
            [](const TermMatch& a, const TermMatch& b) {
              return a.begin < b.begin;
            });
  std::size_t previous_end = 0;
  for (const TermMatch& match : ordered) {
    if (match.begin >= match.end || match.end > sentence.size())
      throw InvariantError("term match outside the sentence");
    if (match.begin < previous_end)
      throw InvariantError("overlapping term matches");
    previous_end = match.end;
  }

  AnnotatedSentence annotated;
  annotated.tokens.reserve(sentence.size());
  std::size_t budget_used = sentence.size();
  std::size_t cursor = 0;
  for (const TermMatch& match : ordered) {
    const std::vector<std::string> injected =
        split_whitespace(match.selected_target);
    const bool fits = budget_used + injected.size() <= options.max_len &&
                      !injected.empty();
    for (; cursor < match.begin; ++cursor)
      annotated.tokens.push_back(
          make_token(sentence[cursor], Factor::kWord));
    for (; cursor < match.end; ++cursor)
      annotated.tokens.push_back(make_token(
          sentence[cursor], fits ? Factor::kSource : Factor::kWord));
    if (fits) {
      for (const std::string& token : injected)
        annotated.tokens.push_back(make_token(token, Factor::kTarget));
      budget_used += injected.size();
    }
  }
  for (; cursor < sentence.size(); ++cursor)
    annotated.tokens.push_back(make_token(sentence[cursor], Factor::kWord));
  return annotated;
}

std::vector<std::string> strip_annotation(const AnnotatedSentence& sentence) {
  std::vector<std::string> tokens;
  for (const FactoredToken& token : sentence.tokens)
    if (token.factor != Factor::kTarget) tokens.push_back(token.surface);
  return tokens;
}

std::string render_factored(const AnnotatedSentence& sentence) {
  std::string line;
  for (const FactoredToken& token : sentence.tokens) {
    if (!line.empty()) line += ' ';
    line += token.surface;
    line += '|';
    line += static_cast<char>(token.factor);
  }
  return line;
}

AnnotatedSentence parse_factored(std::string_view line) {
  AnnotatedSentence sentence;
  for (const std::string& piece : split_whitespace(line)) {
    const std::size_t bar = piece.rfind('|');
    if (bar == std::string::npos)
      throw ParseError("token without a factor: " + piece);
    const std::string_view surface(piece.data(), bar);
    const std::string_view mark(piece.data() + bar + 1,
                                piece.size() - bar - 1);
    if (surface.empty())
      throw ParseError("factored token with empty surface: " + piece);
    if (surface.find('|') != std::string_view::npos)
      throw ParseError("surface contains the factor separator: " + piece);
    Factor factor;
    if (mark == "s")
      factor = Factor::kSource;
    else if (mark == "t")
      factor = Factor::kTarget;
    else if (mark == "w")
      factor = Factor::kWord;
    else
      throw ParseError("unknown factor '" + std::string(mark) +
                       "' in token: " + piece);
    sentence.tokens.push_back({std::string(surface), factor});
  }
  // Adjacency check: t runs must follow an s token.
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    if (sentence.tokens[i].factor != Factor::kTarget) continue;
    if (i == 0 || sentence.tokens[i - 1].factor == Factor::kWord)
      throw ParseError("t-factored token not preceded by a term token");
  }
  return sentence;
}

AnnotatedSentence annotate_training(const SentencePair& pair,
                                    const LexiconModel& model,
                                    const LemmaTable& lemmas,
                                    const TrainingAnnotateOptions& options,
                                    std::size_t sentence_index) {
  if (options.rate < 0.0 || options.rate > 1.0)
    throw ConfigError("annotation rate must lie in [0,1]");

  std::mt19937_64 rng(splitmix64(options.seed) ^
                      splitmix64(sentence_index + 1));
  const auto draw = [&rng] {
    // 53-bit mantissa draw; stable across platforms, unlike
    // std::uniform_real_distribution.
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };

  AnnotatedSentence annotated;
  annotated.tokens.reserve(pair.source.size());
  for (const std::string& token : pair.source) {
    const bool sampled =
        is_content_token(token) && draw() < options.rate;
    if (!sampled) {
      annotated.tokens.push_back(make_token(token, Factor::kWord));
      continue;
    }
    double best = 0.0;
    const std::string* best_target = nullptr;
    const std::string folded_source = unicode::fold_case_utf8(token);
    for (const std::string& target : pair.target) {
      const double p =
          model.prob(folded_source, unicode::fold_case_utf8(target));
      if (p > best) {
        best = p;
        best_target = &target;
      }
    }
    if (best_target == nullptr || best <= options.confidence_floor) {
      annotated.tokens.push_back(make_token(token, Factor::kWord));
      continue;
    }
    annotated.tokens.push_back(make_token(token, Factor::kSource));
    const auto lemma_it = lemmas.find(*best_target);
    const std::string& lemma =
        lemma_it == lemmas.end() ? *best_target : lemma_it->second;
    std::vector<std::string> pieces = split_whitespace(lemma);
    if (pieces.empty()) pieces.push_back(*best_target);
    for (const std::string& piece : pieces)
      annotated.tokens.push_back(make_token(piece, Factor::kTarget));
  }
  return annotated;
}

}  // namespace termkit
