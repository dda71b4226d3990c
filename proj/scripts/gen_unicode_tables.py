#!/usr/bin/env python3
"""Regenerates src/unicode_tables.inc from the Python unicodedata module.

The C++ tokenizer needs character-class lookups (punctuation, combining
marks, space separators, format controls) and single-base NFD
decompositions for the Latin accent range. Run from the repo root:

    python3 scripts/gen_unicode_tables.py
"""
import unicodedata


def ranges(pred, lo=0, hi=0x110000):
    out = []
    start = None
    for cp in range(lo, hi):
        ok = pred(cp)
        if ok and start is None:
            start = cp
        if not ok and start is not None:
            out.append((start, cp - 1))
            start = None
    if start is not None:
        out.append((start, hi - 1))
    return out


def cat(cp):
    try:
        return unicodedata.category(chr(cp))
    except ValueError:
        return "Cn"


def emit_ranges(name, rs):
    lines = [f"static constexpr CpRange {name}[] = {{"]
    row = []
    for a, b in rs:
        row.append(f"{{0x{a:X},0x{b:X}}}")
        if len(row) == 6:
            lines.append("    " + ",".join(row) + ",")
            row = []
    if row:
        lines.append("    " + ",".join(row) + ",")
    lines.append("};")
    return "\n".join(lines)


def main():
    punct = ranges(lambda cp: cat(cp).startswith("P"))
    marks = ranges(lambda cp: cat(cp) in ("Mn", "Mc", "Me"))
    zs = ranges(lambda cp: cat(cp) == "Zs")
    cf = ranges(lambda cp: cat(cp) == "Cf")

    # Precomposed Latin letters whose NFD form is one base char + marks.
    decomp = []
    for cp in range(0xC0, 0x250):
        nfd = unicodedata.normalize("NFD", chr(cp))
        if len(nfd) >= 2 and all(unicodedata.category(c) == "Mn" for c in nfd[1:]):
            decomp.append((cp, ord(nfd[0])))

    with open("src/unicode_tables.inc", "w") as f:
        f.write("// Unicode range tables generated by scripts/gen_unicode_tables.py.\n")
        f.write("// Do not edit by hand; regenerate with the script instead.\n\n")
        f.write("struct CpRange { uint32_t lo; uint32_t hi; };\n\n")
        f.write(emit_ranges("kPunctRanges", punct) + "\n\n")
        f.write(emit_ranges("kMarkRanges", marks) + "\n\n")
        f.write(emit_ranges("kSpaceRanges", zs) + "\n\n")
        f.write(emit_ranges("kFormatRanges", cf) + "\n\n")
        f.write("struct Decomp { uint32_t cp; uint32_t base; };\n\n")
        lines = ["static constexpr Decomp kLatinDecomp[] = {"]
        row = []
        for cp, base in decomp:
            row.append(f"{{0x{cp:X},0x{base:X}}}")
            if len(row) == 8:
                lines.append("    " + ",".join(row) + ",")
                row = []
        if row:
            lines.append("    " + ",".join(row) + ",")
        lines.append("};")
        f.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
