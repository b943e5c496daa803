#include "termkit/filters.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "termkit/errors.hpp"
#include "termkit/unicode.hpp"

namespace termkit {

namespace {

bool symbol_allowed(char32_t cp) {
  return unicode::is_letter(cp) || unicode::is_ascii_digit(cp) ||
         unicode::is_whitespace(cp) || cp == U'\'' || cp == U'’' ||
         cp == U'-' || cp == U'‐';
}

// First disallowed codepoint, or nullopt when the side is clean.
std::optional<char32_t> first_disallowed(std::string_view text) {
  for (char32_t cp : unicode::decode_utf8(text))
    if (!symbol_allowed(cp)) return cp;
  return std::nullopt;
}

}  // namespace

SymbolVerdict symbol_filter(const TermEntry& entry) {
  SymbolVerdict verdict;
  verdict.source_ok = !first_disallowed(entry.source_surface).has_value();
  verdict.equivalent_ok.reserve(entry.equivalents.size());
  for (const auto& eq : entry.equivalents)
    verdict.equivalent_ok.push_back(
        !first_disallowed(eq.surface).has_value());
  return verdict;
}

bool SymbolVerdict::entry_survives() const {
  if (!source_ok) return false;
  for (bool ok : equivalent_ok)
    if (ok) return true;
  return false;
}

bool containment_drops(std::string_view source,
                       std::string_view equivalent) {
  const std::u32string a =
      unicode::fold_case(unicode::decode_utf8(source));
  const std::u32string b =
      unicode::fold_case(unicode::decode_utf8(equivalent));
  if (a.size() > b.size()) return a.find(b) != std::u32string::npos;
  if (b.size() > a.size()) return b.find(a) != std::u32string::npos;
  return false;  // equal length: neither side is strictly longer
}

IdfTable build_idf(std::span<const std::vector<std::string>> documents,
                   const StemmerRuleSet& stemmer) {
  if (documents.empty()) throw ConfigError("IDF corpus is empty");
  IdfTable table;
  table.doc_count = documents.size();
  std::set<std::string> seen;
  for (const auto& document : documents) {
    seen.clear();
    for (const auto& token : document) seen.insert(stemmer.stem(token));
    for (const auto& stem : seen) ++table.df[stem];
  }
  return table;
}

IdfTable build_idf_from_lines(std::istream& input,
                              const StemmerRuleSet& stemmer) {
  IdfTable table;
  std::string line;
  std::size_t line_no = 0;
  std::set<std::string> seen;
  while (std::getline(input, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> tokens;
    try {
      tokens = tokenize_text(line);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
    ++table.doc_count;
    seen.clear();
    for (const auto& token : tokens) seen.insert(stemmer.stem(token));
    for (const auto& stem : seen) ++table.df[stem];
  }
  if (table.doc_count == 0) throw ConfigError("IDF corpus is empty");
  return table;
}

double idf_value(const IdfTable& table, const std::string& stem) {
  const auto it = table.df.find(stem);
  const std::size_t df = it == table.df.end() ? 1 : it->second;
  return std::log(static_cast<double>(table.doc_count) /
                  static_cast<double>(df));
}

double idf_score(const TermEntry& entry, const IdfTable& table,
                 const StemmerRuleSet& stemmer) {
  double score = std::numeric_limits<double>::infinity();
  for (const auto& token : tokenize_text(entry.source_surface))
    score = std::min(score, idf_value(table, stemmer.stem(token)));
  return score;
}

bool idf_keeps(const TermEntry& entry, const IdfTable& table,
               double threshold, const StemmerRuleSet& stemmer) {
  return idf_score(entry, table, stemmer) >= threshold;
}

void IdfTable::save(std::ostream& output) const {
  output << "#docs=" << doc_count << '\n';
  for (const auto& [stem, df_value] : df)
    output << stem << '\t' << df_value << '\n';
}

IdfTable IdfTable::load(std::istream& input) {
  IdfTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(input, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("#docs=", 0) == 0) {
      table.doc_count = std::stoull(line.substr(6));
      continue;
    }
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("expected stem<TAB>df", line_no);
    table.df[line.substr(0, tab)] = std::stoull(line.substr(tab + 1));
  }
  if (table.doc_count == 0)
    throw ParseError("IDF table is missing its #docs header");
  for (const auto& [stem, df_value] : table.df)
    if (df_value < 1 || df_value > table.doc_count)
      throw ParseError("df out of range for stem: " + stem);
  return table;
}

IdfTable IdfTable::load_file(const std::string& path) {
  std::ifstream input(path, std::ios::binary);
  if (!input) throw ConfigError("cannot open IDF table: " + path);
  return load(input);
}

void FilterReport::write(std::ostream& output) const {
  for (const auto& drop : dropped)
    output << drop.entry_id << '\t' << drop.filter << '\t' << drop.reason
           << '\n';
}

std::pair<TermCollection, FilterReport> run_filter_pipeline(
    const TermCollection& collection, const FilterConfig& config) {
  if (config.idf_threshold.has_value()) {
    if (config.idf_table == nullptr)
      throw ConfigError("IDF filter enabled without an IDF table");
    if (config.stemmer == nullptr)
      throw ConfigError("IDF filter enabled without stemmer rules");
    if (*config.idf_threshold < 0)
      throw ConfigError("IDF threshold must be non-negative");
  }

  TermCollection kept;
  kept.source_lang = collection.source_lang;
  kept.target_lang = collection.target_lang;
  FilterReport report;

  for (const TermEntry& entry : collection.entries) {
    TermEntry survivor;
    survivor.id = entry.id;
    survivor.source_surface = entry.source_surface;

    if (config.symbol) {
      const SymbolVerdict verdict = symbol_filter(entry);
      if (!verdict.source_ok) {
        report.dropped.push_back(
            {entry.id, "symbol", "source contains a disallowed symbol"});
        continue;
      }
      for (std::size_t i = 0; i < entry.equivalents.size(); ++i) {
        if (verdict.equivalent_ok[i])
          survivor.equivalents.push_back(entry.equivalents[i]);
        else
          report.equivalents_dropped.push_back(
              {entry.id, entry.equivalents[i].rank, "symbol"});
      }
      if (survivor.equivalents.empty()) {
        report.dropped.push_back(
            {entry.id, "symbol",
             "no equivalents free of disallowed symbols"});
        continue;
      }
    } else {
      survivor.equivalents = entry.equivalents;
    }

    if (config.containment) {
      std::vector<TargetEquivalent> remaining;
      for (const auto& eq : survivor.equivalents) {
        if (containment_drops(survivor.source_surface, eq.surface))
          report.equivalents_dropped.push_back(
              {entry.id, eq.rank, "containment"});
        else
          remaining.push_back(eq);
      }
      survivor.equivalents = std::move(remaining);
      if (survivor.equivalents.empty()) {
        report.dropped.push_back(
            {entry.id, "containment",
             "one side contains the other as a substring"});
        continue;
      }
    }

    if (config.idf_threshold.has_value()) {
      const double score =
          idf_score(entry, *config.idf_table, *config.stemmer);
      if (score < *config.idf_threshold) {
        std::ostringstream reason;
        reason << "source IDF " << score << " below threshold "
               << *config.idf_threshold;
        report.dropped.push_back({entry.id, "idf", reason.str()});
        continue;
      }
    }

    // Ranks stay contiguous in the output entry.
    for (std::size_t i = 0; i < survivor.equivalents.size(); ++i)
      survivor.equivalents[i].rank = static_cast<int>(i);
    report.kept.push_back(entry.id);
    kept.entries.push_back(std::move(survivor));
  }
  return {std::move(kept), std::move(report)};
}

}  // namespace termkit
