#!/usr/bin/env python3
"""Regenerates core/src/unicode_tables.inc from Python's unicodedata.

The library needs three Unicode properties: letter classification,
whitespace classification, and full case folding. Rather than linking ICU
for that slice, the tables are baked into a generated source fragment.

Usage: python3 scripts/gen_unicode_tables.py > core/src/unicode_tables.inc
"""

import sys
import unicodedata

MAX_CP = 0x110000


def letter_ranges():
    ranges = []
    start = None
    for cp in range(MAX_CP):
        is_letter = unicodedata.category(chr(cp)).startswith("L")
        if is_letter and start is None:
            start = cp
        elif not is_letter and start is not None:
            ranges.append((start, cp - 1))
            start = None
    if start is not None:
        ranges.append((start, MAX_CP - 1))
    return ranges


def whitespace_codepoints():
    return [cp for cp in range(MAX_CP) if chr(cp).isspace()]


def fold_entries():
    entries = []
    for cp in range(MAX_CP):
        ch = chr(cp)
        if 0xD800 <= cp <= 0xDFFF:
            continue
        folded = ch.casefold()
        if folded != ch:
            cps = [ord(c) for c in folded]
            assert 1 <= len(cps) <= 3, hex(cp)
            entries.append((cp, cps))
    return entries


def main():
    out = sys.stdout
    out.write("// Generated by scripts/gen_unicode_tables.py"
              " (unicodedata %s). Do not edit.\n\n" % unicodedata.unidata_version)

    ranges = letter_ranges()
    out.write("static const CodepointRange kLetterRanges[] = {\n")
    for i in range(0, len(ranges), 4):
        row = ranges[i:i + 4]
        out.write("    " + " ".join("{0x%X, 0x%X}," % r for r in row) + "\n")
    out.write("};\n")
    out.write("static const std::size_t kLetterRangeCount = %d;\n\n" % len(ranges))

    ws = whitespace_codepoints()
    out.write("static const char32_t kWhitespace[] = {\n    ")
    out.write(", ".join("0x%X" % cp for cp in ws))
    out.write("\n};\n")
    out.write("static const std::size_t kWhitespaceCount = %d;\n\n" % len(ws))

    folds = fold_entries()
    out.write("static const FoldEntry kFoldTable[] = {\n")
    for i in range(0, len(folds), 3):
        row = folds[i:i + 3]
        cells = []
        for cp, cps in row:
            padded = cps + [0] * (3 - len(cps))
            cells.append("{0x%X, {0x%X, 0x%X, 0x%X}, %d},"
                         % (cp, padded[0], padded[1], padded[2], len(cps)))
        out.write("    " + " ".join(cells) + "\n")
    out.write("};\n")
    out.write("static const std::size_t kFoldTableCount = %d;\n" % len(folds))


if __name__ == "__main__":
    main()
