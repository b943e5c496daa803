#include "termkit/unicode.hpp"

#include <algorithm>
#include <cstdint>

#include "termkit/errors.hpp"

namespace termkit::unicode {

namespace {

struct CodepointRange {
  char32_t lo;
  char32_t hi;
};

struct FoldEntry {
  char32_t cp;
  char32_t folded[3];
  std::uint8_t count;
};

#include "unicode_tables.inc"

// Decodes one codepoint starting at `pos`; advances `pos` past it.
char32_t decode_one(std::string_view text, std::size_t& pos) {
  const auto fail = [&](const char* why) -> char32_t {
    throw ParseError("invalid UTF-8 at byte " + std::to_string(pos) + ": " +
                     why);
  };
  const unsigned char b0 = static_cast<unsigned char>(text[pos]);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return fail("bad leading byte");
  }
  if (pos + len > text.size()) return fail("truncated sequence");
  for (int i = 1; i < len; ++i) {
    const unsigned char b = static_cast<unsigned char>(text[pos + i]);
    if ((b & 0xC0) != 0x80) return fail("bad continuation byte");
    cp = (cp << 6) | (b & 0x3F);
  }
  static const char32_t kMinByLen[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMinByLen[len]) return fail("overlong encoding");
  if (cp >= 0xD800 && cp <= 0xDFFF) return fail("surrogate codepoint");
  if (cp > 0x10FFFF) return fail("codepoint out of range");
  pos += len;
  return cp;
}

}  // namespace

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) out.push_back(decode_one(text, pos));
  return out;
}

std::string encode_utf8(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

std::string encode_utf8(const std::u32string& text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) out += encode_utf8(cp);
  return out;
}

bool is_valid_utf8(std::string_view text) noexcept {
  std::size_t pos = 0;
  try {
    while (pos < text.size()) decode_one(text, pos);
  } catch (const ParseError&) {
    return false;
  }
  return true;
}

bool is_letter(char32_t cp) noexcept {
  const CodepointRange* end = kLetterRanges + kLetterRangeCount;
  const CodepointRange* it = std::upper_bound(
      kLetterRanges, end, cp,
      [](char32_t value, const CodepointRange& r) { return value < r.lo; });
  if (it == kLetterRanges) return false;
  --it;
  return cp >= it->lo && cp <= it->hi;
}

bool is_whitespace(char32_t cp) noexcept {
  const char32_t* end = kWhitespace + kWhitespaceCount;
  return std::binary_search(kWhitespace, end, cp);
}

bool is_ascii_digit(char32_t cp) noexcept { return cp >= U'0' && cp <= U'9'; }

std::u32string fold_case(const std::u32string& text) {
  std::u32string out;
  out.reserve(text.size());
  const FoldEntry* table_end = kFoldTable + kFoldTableCount;
  for (char32_t cp : text) {
    const FoldEntry* it = std::lower_bound(
        kFoldTable, table_end, cp,
        [](const FoldEntry& e, char32_t value) { return e.cp < value; });
    if (it != table_end && it->cp == cp) {
      for (std::uint8_t i = 0; i < it->count; ++i) out.push_back(it->folded[i]);
    } else {
      out.push_back(cp);
    }
  }
  return out;
}

std::string fold_case_utf8(std::string_view text) {
  return encode_utf8(fold_case(decode_utf8(text)));
}

std::size_t codepoint_length(std::string_view utf8) {
  std::size_t count = 0;
  std::size_t pos = 0;
  while (pos < utf8.size()) {
    decode_one(utf8, pos);
    ++count;
  }
  return count;
}

}  // namespace termkit::unicode
