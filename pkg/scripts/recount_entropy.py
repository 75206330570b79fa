#!/usr/bin/env python3
"""
Recount the min-entropy of truth-table files without the qotp package.

Used as an independent check of ``qotp.otp.min_entropy`` on the shipped
tables. Prints one ``name tau`` line per file.

    python scripts/recount_entropy.py qotp/otp/tables/*.tt
"""

import math
import sys
from collections import Counter
from pathlib import Path
from typing import List


def read_codewords(path: Path) -> List[str]:
    words = []
    for line in path.read_text(encoding="utf-8").splitlines():
        words.extend(line.split("#", 1)[0].split())
    return words


def recount(path: Path) -> List[float]:
    """Per-input min-entropy ``r_bits - log2(max count)`` of a table file."""
    words = read_codewords(path)
    x_bits, r_bits = int(words[0]), int(words[1])
    codewords = words[3:]
    row = 1 << r_bits
    if len(codewords) != row << x_bits:
        raise ValueError(f"{path}: expected {row << x_bits} codewords, found {len(codewords)}")
    result = []
    for x in range(1 << x_bits):
        counts = Counter(codewords[x * row : (x + 1) * row])
        result.append(r_bits - math.log2(max(counts.values())))
    return result


def main(argv: List[str]) -> int:
    if not argv:
        print("Usage: python scripts/recount_entropy.py TABLE.tt [TABLE.tt ...]")
        return 1
    for arg in argv:
        path = Path(arg)
        print(f"{path.stem} {min(recount(path)):g}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
