"""Regenerate src/cosetcodes/_conway.py from the galois Conway polynomial database.

Run from the repository root:  python3 tools/gen_conway.py
"""

from __future__ import annotations

import math
from pathlib import Path

import galois

LIMIT = 1 << 16


def primes_upto(n: int) -> list[int]:
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, flag in enumerate(sieve) if flag]


def main() -> None:
    entries = []
    for p in primes_upto(int(math.isqrt(LIMIT))):
        e = 2
        while p**e <= LIMIT:
            poly = galois.conway_poly(p, e)
            coeffs = [int(c) for c in poly.coeffs[::-1]]  # low -> high
            entries.append((p, e, tuple(coeffs)))
            e += 1
    lines = [
        '"""Conway polynomials for p**e <= 2**16, e >= 2 (generated by tools/gen_conway.py).',
        "",
        "Coefficients are listed from the constant term up to the (monic) leading term.",
        '"""',
        "",
        "CONWAY: dict[tuple[int, int], tuple[int, ...]] = {",
    ]
    for p, e, coeffs in entries:
        lines.append(f"    ({p}, {e}): {coeffs},")
    lines.append("}")
    out = Path(__file__).resolve().parents[1] / "src" / "cosetcodes" / "_conway.py"
    out.write_text("\n".join(lines) + "\n")
    print(f"wrote {len(entries)} polynomials to {out}")


if __name__ == "__main__":
    main()
