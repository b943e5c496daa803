#include "termkit/termbank.hpp"

#include <sstream>
#include <string>

#include "doctest.h"
#include "termkit/errors.hpp"
#include "testutil.hpp"

using namespace termkit;

TEST_SUITE("termbank") {

TEST_CASE("parses entries, equivalents, ranks, and ids") {
  std::istringstream input(
      "hand-washing\tмытье рук | "
      "мытья рук | "
      "мытья\n"
      "\n"
      "sneeze\tчихании\n");
  const TermCollection collection =
      parse_term_collection(input, "en", "ru");

  CHECK(collection.source_lang == "en");
  CHECK(collection.target_lang == "ru");
  REQUIRE(collection.entries.size() == 2);

  const TermEntry& first = collection.entries[0];
  CHECK(first.id == 0);
  CHECK(first.source_surface == "hand-washing");
  REQUIRE(first.equivalents.size() == 3);
  CHECK(first.equivalents[0].surface ==
        "мытье рук");
  CHECK(first.equivalents[1].surface ==
        "мытья рук");
  CHECK(first.equivalents[2].surface == "мытья");
  CHECK(first.equivalents[0].rank == 0);
  CHECK(first.equivalents[1].rank == 1);
  CHECK(first.equivalents[2].rank == 2);

  // Blank line skipped; ids stay contiguous.
  CHECK(collection.entries[1].id == 1);
  CHECK(collection.entries[1].source_surface == "sneeze");
}

TEST_CASE("bare pipe is content, only the spaced delimiter splits") {
  std::istringstream input("a|b\tc|d | e\n");
  const TermCollection collection =
      parse_term_collection(input, "src", "tgt");
  REQUIRE(collection.entries.size() == 1);
  CHECK(collection.entries[0].source_surface == "a|b");
  REQUIRE(collection.entries[0].equivalents.size() == 2);
  CHECK(collection.entries[0].equivalents[0].surface == "c|d");
  CHECK(collection.entries[0].equivalents[1].surface == "e");
}

TEST_CASE("surfaces are trimmed, including non-ASCII whitespace") {
  std::istringstream input("  term \t  target  |  other \n");
  const TermCollection collection =
      parse_term_collection(input, "src", "tgt");
  REQUIRE(collection.entries.size() == 1);
  CHECK(collection.entries[0].source_surface == "term");
  CHECK(collection.entries[0].equivalents[0].surface == "target");
  CHECK(collection.entries[0].equivalents[1].surface == "other");
}

TEST_CASE("malformed lines carry their line number") {
  const auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream input(text);
    try {
      parse_term_collection(input, "src", "tgt");
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };

  CHECK(line_of("no tab here\n") == 1);
  CHECK(line_of("ok\tfine\nthree\tcolumns\there\n") == 2);
  CHECK(line_of("ok\tfine\n \ttarget\n") == 2);          // empty source
  CHECK(line_of("ok\tfine\nsrc\ta |  | b\n") == 2);      // empty equivalent
  CHECK(line_of("ok\tfine\nsrc\t \n") == 2);             // empty target side
  CHECK(line_of(std::string("bad\xC0\xAF\tx\n")) == 1);  // malformed UTF-8
}

TEST_CASE("write then parse preserves everything but ids") {
  std::istringstream input(
      "flu epidemic\tэпидемия "
      "гриппа\n"
      "sneeze\ta | b | c\n");
  const TermCollection original =
      parse_term_collection(input, "en", "ru");

  const std::string written = write_term_collection_string(original);
  std::istringstream round(written);
  const TermCollection reparsed = parse_term_collection(round, "en", "ru");

  REQUIRE(reparsed.entries.size() == original.entries.size());
  for (std::size_t i = 0; i < original.entries.size(); ++i) {
    CHECK(reparsed.entries[i].source_surface ==
          original.entries[i].source_surface);
    REQUIRE(reparsed.entries[i].equivalents.size() ==
            original.entries[i].equivalents.size());
    for (std::size_t j = 0; j < original.entries[i].equivalents.size(); ++j)
      CHECK(reparsed.entries[i].equivalents[j].surface ==
            original.entries[i].equivalents[j].surface);
  }
}

TEST_CASE("file parsing reports missing files as configuration errors") {
  testutil::TempDir dir;
  CHECK_THROWS_AS(
      parse_term_collection_file(dir.file("absent.tsv"), "src", "tgt"),
      ConfigError);

  testutil::write_file(dir.file("terms.tsv"), "alpha\tbeta\n");
  const TermCollection collection =
      parse_term_collection_file(dir.file("terms.tsv"), "src", "tgt");
  REQUIRE(collection.entries.size() == 1);
  CHECK(collection.entries[0].source_surface == "alpha");
}

TEST_CASE("trim strips Unicode whitespace from both ends only") {
  CHECK(trim("  middle stays  ") == "middle stays");
  CHECK(trim("  x ") == "x");
  CHECK(trim("") == "");
  CHECK(trim(" \t ") == "");
}

}  // TEST_SUITE
