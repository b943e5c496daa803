#include "termkit/recognizer.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "termkit/errors.hpp"
#include "termkit/unicode.hpp"

namespace termkit {

namespace {

bool is_word_char(char32_t cp) {
  return unicode::is_letter(cp) || unicode::is_ascii_digit(cp);
}

struct Codepoint {
  char32_t cp;
  std::size_t offset;  // byte offset
  std::size_t bytes;
};

std::vector<Codepoint> decode_with_offsets(std::string_view line) {
  // The strict decoder validates the whole line (and reports the byte
  // offset of any bad sequence); offsets are then recovered from the
  // encoded lengths.
  const std::u32string decoded = unicode::decode_utf8(line);
  std::vector<Codepoint> out;
  out.reserve(decoded.size());
  std::size_t pos = 0;
  for (const char32_t cp : decoded) {
    const std::size_t len =
        cp < 0x80 ? 1 : cp < 0x800 ? 2 : cp < 0x10000 ? 3 : 4;
    out.push_back({cp, pos, len});
    pos += len;
  }
  return out;
}

}  // namespace

std::vector<Token> tokenize(std::string_view line) {
  const std::vector<Codepoint> cps = decode_with_offsets(line);
  std::vector<Token> tokens;

  const auto emit = [&](std::size_t first, std::size_t last) {
    // [first, last] inclusive range over cps
    const std::size_t begin = cps[first].offset;
    const std::size_t end = cps[last].offset + cps[last].bytes;
    tokens.push_back(
        {std::string(line.substr(begin, end - begin)), begin});
  };

  std::size_t i = 0;
  while (i < cps.size()) {
    if (unicode::is_whitespace(cps[i].cp)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < cps.size() && !unicode::is_whitespace(cps[j].cp)) ++j;
    // Chunk [i, j). Find the word core, if any.
    std::size_t core_begin = i;
    while (core_begin < j && !is_word_char(cps[core_begin].cp)) ++core_begin;
    if (core_begin == j) {
      for (std::size_t k = i; k < j; ++k) emit(k, k);
    } else {
      std::size_t core_end = j - 1;
      while (!is_word_char(cps[core_end].cp)) --core_end;
      for (std::size_t k = i; k < core_begin; ++k) emit(k, k);
      emit(core_begin, core_end);
      for (std::size_t k = core_end + 1; k < j; ++k) emit(k, k);
    }
    i = j;
  }
  return tokens;
}

std::vector<std::string> tokenize_text(std::string_view line) {
  std::vector<std::string> out;
  for (auto& token : tokenize(line)) out.push_back(std::move(token.text));
  return out;
}

std::vector<std::string> tokenize_folded(std::string_view line) {
  std::vector<std::string> out = tokenize_text(line);
  for (auto& token : out) token = unicode::fold_case_utf8(token);
  return out;
}

StemmerRuleSet::StemmerRuleSet(std::string language, int min_stem_length,
                               bool fold_case, std::vector<Rule> rules)
    : language_(std::move(language)),
      min_stem_length_(min_stem_length),
      fold_case_(fold_case),
      rules_(std::move(rules)) {
  if (min_stem_length_ < 1)
    throw ConfigError("min_stem must be at least 1");
  for (auto& rule : rules_) {
    if (rule.suffix.empty())
      throw ConfigError("stemmer rule with empty suffix");
    if (rule.replacement.size() > rule.suffix.size())
      throw ConfigError("stemmer replacement longer than its suffix");
    if (rule.min_remaining < 0)
      throw ConfigError("negative min_remaining in stemmer rule");
    if (fold_case_) {
      rule.suffix = unicode::fold_case(rule.suffix);
      rule.replacement = unicode::fold_case(rule.replacement);
    }
  }
  std::stable_sort(rules_.begin(), rules_.end(),
                   [](const Rule& a, const Rule& b) {
                     return a.suffix.size() > b.suffix.size();
                   });
}

StemmerRuleSet StemmerRuleSet::identity(std::string language,
                                        bool fold_case) {
  return StemmerRuleSet(std::move(language), 1, fold_case, {});
}

StemmerRuleSet StemmerRuleSet::load(std::istream& input) {
  std::string line;
  std::size_t line_no = 0;

  std::string language;
  int min_stem = 3;
  bool fold = true;
  bool saw_header = false;
  std::vector<Rule> rules;

  while (std::getline(input, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (saw_header) continue;  // later comments are ignored
      saw_header = true;
      std::istringstream header(line.substr(1));
      std::string field;
      while (header >> field) {
        const std::size_t eq = field.find('=');
        if (eq == std::string::npos)
          throw ParseError("malformed header field: " + field, line_no);
        const std::string key = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);
        if (key == "lang") {
          language = value;
        } else if (key == "min_stem") {
          min_stem = std::stoi(value);
        } else if (key == "fold_case") {
          fold = value != "0";
        } else {
          throw ParseError("unknown header field: " + key, line_no);
        }
      }
      continue;
    }

    std::vector<std::string> columns;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        columns.push_back(line.substr(start));
        break;
      }
      columns.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (columns.size() != 3)
      throw ParseError("expected suffix<TAB>replacement<TAB>min_remaining",
                       line_no);
    Rule rule;
    rule.suffix = unicode::decode_utf8(columns[0]);
    rule.replacement = unicode::decode_utf8(columns[1]);
    try {
      rule.min_remaining = std::stoi(columns[2]);
    } catch (const std::exception&) {
      throw ParseError("min_remaining is not an integer", line_no);
    }
    rules.push_back(std::move(rule));
  }
  return StemmerRuleSet(std::move(language), min_stem, fold,
                        std::move(rules));
}

StemmerRuleSet StemmerRuleSet::load_file(const std::string& path) {
  std::ifstream input(path, std::ios::binary);
  if (!input) throw ConfigError("cannot open stemmer rules: " + path);
  return load(input);
}

std::u32string StemmerRuleSet::stem(const std::u32string& token) const {
  const std::u32string folded =
      fold_case_ ? unicode::fold_case(token) : token;
  const std::size_t min_result =
      static_cast<std::size_t>(min_stem_length_);
  for (const Rule& rule : rules_) {
    if (rule.suffix.size() > folded.size()) continue;
    if (folded.compare(folded.size() - rule.suffix.size(),
                       rule.suffix.size(), rule.suffix) != 0)
      continue;
    const std::size_t result_len =
        folded.size() - rule.suffix.size() + rule.replacement.size();
    if (result_len <
        std::max(min_result, static_cast<std::size_t>(rule.min_remaining)))
      continue;
    std::u32string out =
        folded.substr(0, folded.size() - rule.suffix.size());
    out += rule.replacement;
    return out;
  }
  return folded;
}

std::string StemmerRuleSet::stem(std::string_view token) const {
  return unicode::encode_utf8(stem(unicode::decode_utf8(token)));
}

std::vector<std::string> stem_tokens(std::span<const std::string> tokens,
                                     const StemmerRuleSet& rules) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) out.push_back(rules.stem(token));
  return out;
}

std::string TermIndex::make_key(
    std::span<const std::string> stemmed_tokens) {
  std::string key;
  for (std::size_t i = 0; i < stemmed_tokens.size(); ++i) {
    if (i > 0) key += ' ';
    key += stemmed_tokens[i];
  }
  return key;
}

const TermIndex::Entry* TermIndex::find(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

TermIndex build_index(const TermCollection& collection,
                      std::span<const SelectionResult> selections,
                      const StemmerRuleSet& rules) {
  if (selections.size() != collection.entries.size())
    throw InvariantError("one selection per entry is required");

  TermIndex index;
  for (std::size_t i = 0; i < collection.entries.size(); ++i) {
    const TermEntry& entry = collection.entries[i];
    const SelectionResult& selection = selections[i];
    if (selection.entry_id != entry.id)
      throw InvariantError("selection/entry id mismatch at position " +
                           std::to_string(i));
    if (selection.chosen_rank < 0 ||
        static_cast<std::size_t>(selection.chosen_rank) >=
            entry.equivalents.size())
      throw InvariantError("selection rank out of range for entry " +
                           std::to_string(entry.id));

    const std::vector<std::string> tokens =
        tokenize_text(entry.source_surface);
    if (tokens.empty())
      throw InvariantError("source term of entry " +
                           std::to_string(entry.id) +
                           " tokenizes to nothing");
    const std::string key =
        TermIndex::make_key(stem_tokens(tokens, rules));

    TermIndex::Entry candidate{
        entry.id, entry.equivalents[selection.chosen_rank].surface};
    auto [it, inserted] = index.entries_.emplace(key, candidate);
    if (!inserted) {
      // One sense per key: the lower entry id wins.
      if (candidate.entry_id < it->second.entry_id) {
        index.warnings_.push_back({key, candidate.entry_id,
                                   it->second.entry_id});
        it->second = candidate;
      } else {
        index.warnings_.push_back({key, it->second.entry_id,
                                   candidate.entry_id});
      }
      continue;
    }
    index.max_key_len_ = std::max(index.max_key_len_, tokens.size());
  }
  return index;
}

std::vector<TermMatch> recognize(std::span<const std::string> tokens,
                                 const TermIndex& index,
                                 const StemmerRuleSet& rules) {
  std::vector<TermMatch> matches;
  if (tokens.empty() || index.size() == 0) return matches;

  const std::vector<std::string> stemmed = stem_tokens(tokens, rules);
  std::size_t pos = 0;
  while (pos < stemmed.size()) {
    const std::size_t longest =
        std::min(index.max_key_len(), stemmed.size() - pos);
    bool matched = false;
    for (std::size_t len = longest; len >= 1; --len) {
      const std::string key = TermIndex::make_key(
          std::span<const std::string>(stemmed.data() + pos, len));
      if (const TermIndex::Entry* entry = index.find(key)) {
        matches.push_back(
            {pos, pos + len, entry->entry_id, entry->selected_target});
        pos += len;
        matched = true;
        break;
      }
    }
    if (!matched) ++pos;
  }
  return matches;
}

}  // namespace termkit
