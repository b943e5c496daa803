#ifndef TERMKIT_TERMBANK_HPP
#define TERMKIT_TERMBANK_HPP

#include <iosfwd>
#include <string>
#include <vector>

// Bilingual term collections and their TSV form. One line per entry:
//
//   source term<TAB>equivalent 1 | equivalent 2 | ...
//
// The equivalent delimiter is the exact three-character string " | ";
// a bare "|" without surrounding spaces is term content. No header row,
// no quoting. Collections are immutable once built and safe to share
// across threads.

namespace termkit {

struct TargetEquivalent {
  std::string surface;  // trimmed, non-empty
  int rank = 0;         // 0-based position in the entry's original list
};

struct TermEntry {
  int id = 0;  // 0-based position among parsed entries
  std::string source_surface;
  std::vector<TargetEquivalent> equivalents;  // non-empty, ranks 0..n-1
};

struct TermCollection {
  std::string source_lang;
  std::string target_lang;
  std::vector<TermEntry> entries;
};

inline constexpr std::string_view kEquivalentDelimiter = " | ";

// Parses a whole collection. Blank lines are skipped. Throws ParseError
// (carrying the 1-based line number) on a line without exactly two
// tab-separated columns, on an empty source or equivalent after trimming,
// and on malformed UTF-8.
TermCollection parse_term_collection(std::istream& input,
                                     const std::string& source_lang,
                                     const std::string& target_lang);

TermCollection parse_term_collection_file(const std::string& path,
                                          const std::string& source_lang,
                                          const std::string& target_lang);

// One line per entry, LF endings. parse(write(c)) == c up to id
// reassignment.
void write_term_collection(const TermCollection& collection,
                           std::ostream& output);

std::string write_term_collection_string(const TermCollection& collection);

// Whitespace trim helper shared by the ingest paths (Unicode-aware).
std::string trim(std::string_view text);

}  // namespace termkit

#endif
