#ifndef TERMKIT_UNICODE_HPP
#define TERMKIT_UNICODE_HPP

#include <cstddef>
#include <string>
#include <string_view>

// Minimal UTF-8 and Unicode property support: strict decoding, letter and
// whitespace classification, and full case folding. Tables are generated
// into unicode_tables.inc; see scripts/gen_unicode_tables.py.

namespace termkit::unicode {

// Throws ParseError (byte offset in the message) on malformed input:
// overlong encodings, surrogates, out-of-range and truncated sequences.
std::u32string decode_utf8(std::string_view text);

std::string encode_utf8(const std::u32string& text);
std::string encode_utf8(char32_t cp);

// True iff the whole string is well-formed UTF-8.
bool is_valid_utf8(std::string_view text) noexcept;

bool is_letter(char32_t cp) noexcept;
bool is_whitespace(char32_t cp) noexcept;
bool is_ascii_digit(char32_t cp) noexcept;

// Full case folding (one codepoint may expand, e.g. U+00DF -> "ss").
std::u32string fold_case(const std::u32string& text);

// Folds a UTF-8 string; round-trips through codepoints.
std::string fold_case_utf8(std::string_view text);

std::size_t codepoint_length(std::string_view utf8);

}  // namespace termkit::unicode

#endif
