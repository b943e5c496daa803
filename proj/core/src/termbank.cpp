#include "termkit/termbank.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "termkit/errors.hpp"
#include "termkit/unicode.hpp"

namespace termkit {

namespace {

// Splits on the exact " | " delimiter. Pieces are trimmed afterwards.
std::vector<std::string> split_equivalents(std::string_view column) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = column.find(kEquivalentDelimiter, start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(column.substr(start));
      break;
    }
    parts.emplace_back(column.substr(start, pos - start));
    start = pos + kEquivalentDelimiter.size();
  }
  return parts;
}

}  // namespace

std::string trim(std::string_view text) {
  const std::u32string decoded = unicode::decode_utf8(text);
  std::size_t begin = 0;
  std::size_t end = decoded.size();
  while (begin < end && unicode::is_whitespace(decoded[begin])) ++begin;
  while (end > begin && unicode::is_whitespace(decoded[end - 1])) --end;
  return unicode::encode_utf8(decoded.substr(begin, end - begin));
}

TermCollection parse_term_collection(std::istream& input,
                                     const std::string& source_lang,
                                     const std::string& target_lang) {
  if (source_lang.empty() || target_lang.empty())
    throw ConfigError("language codes must be non-empty");

  TermCollection collection;
  collection.source_lang = source_lang;
  collection.target_lang = target_lang;

  std::string line;
  std::size_t line_no = 0;
  int next_id = 0;
  while (std::getline(input, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    try {
      if (trim(line).empty()) continue;

      const std::size_t first_tab = line.find('\t');
      if (first_tab == std::string::npos)
        throw ParseError("expected two tab-separated columns, found one");
      if (line.find('\t', first_tab + 1) != std::string::npos)
        throw ParseError("expected two tab-separated columns, found more");

      TermEntry entry;
      entry.id = next_id;
      entry.source_surface =
          trim(std::string_view(line).substr(0, first_tab));
      if (entry.source_surface.empty())
        throw ParseError("empty source term");

      const auto pieces =
          split_equivalents(std::string_view(line).substr(first_tab + 1));
      int rank = 0;
      for (const auto& piece : pieces) {
        TargetEquivalent eq;
        eq.surface = trim(piece);
        if (eq.surface.empty())
          throw ParseError("empty translation equivalent");
        eq.rank = rank++;
        entry.equivalents.push_back(std::move(eq));
      }
      collection.entries.push_back(std::move(entry));
      ++next_id;
    } catch (const ParseError& e) {
      // UTF-8 errors from trim arrive without a line; attach it.
      if (e.line() != 0) throw;
      throw ParseError(e.what(), line_no);
    }
  }
  return collection;
}

TermCollection parse_term_collection_file(const std::string& path,
                                          const std::string& source_lang,
                                          const std::string& target_lang) {
  std::ifstream input(path, std::ios::binary);
  if (!input) throw ConfigError("cannot open term collection: " + path);
  return parse_term_collection(input, source_lang, target_lang);
}

void write_term_collection(const TermCollection& collection,
                           std::ostream& output) {
  for (const auto& entry : collection.entries) {
    output << entry.source_surface << '\t';
    for (std::size_t i = 0; i < entry.equivalents.size(); ++i) {
      if (i > 0) output << kEquivalentDelimiter;
      output << entry.equivalents[i].surface;
    }
    output << '\n';
  }
}

std::string write_term_collection_string(const TermCollection& collection) {
  std::ostringstream out;
  write_term_collection(collection, out);
  return out.str();
}

}  // namespace termkit
