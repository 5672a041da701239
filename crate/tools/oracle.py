"""Brute-force reference values for the pinned tests.

Everything here is computed from the definitions with plain Python integers and
fractions, without sharing code with the Rust crates.
"""
from fractions import Fraction
from itertools import product
import json
import sys

B = None  # blank


def classic(ratios, symbols):
    """Level words of Oxtoby's construction as explicit lists, one per level."""
    p = [1]
    for r in ratios:
        p.append(p[-1] * r)
    words = [[B]]
    for t, sym in enumerate(symbols):
        q, pt = p[t + 1], p[t]
        prev = words[-1]
        cur = [prev[i % len(prev)] for i in range(q)]
        for i in list(range(pt)) + list(range(q - pt, q)):
            if cur[i] is B:
                cur[i] = sym
        words.append(cur)
    return p, words


def density(word, sym):
    defined = [c for c in word if c is not B]
    return Fraction(sum(1 for c in defined if c == sym), len(defined))


def blocks(word):
    """(start, length) of maximal filled blocks of a cyclic word, start in [0, n)."""
    n = len(word)
    out = []
    for s in range(n):
        if word[s - 1] is B and word[s] is not B:
            l = 0
            while word[(s + l) % n] is not B:
                l += 1
            out.append((s, l))
    return out


def render(cells):
    return "".join("□" if c is B else str(c) for c in cells)


def downarowicz(bwords):
    T = len(bwords)
    p = [1]
    for i in range(1, T + 1):
        p.append(p[-1] * 2 ** (i + 1))
    x = [bwords[0][0], B, B, B]
    fills = {1: {0: bwords[0][0]}}
    for t in range(1, T):
        q, pt = p[t + 1], p[t]
        cur = [x[i % len(x)] for i in range(q)]
        lo = 0 if t % 2 == 1 else q - pt
        holes = [i for i in range(lo, lo + pt) if cur[i] is B]
        assert len(holes) == len(bwords[t]), (t, len(holes), len(bwords[t]))
        fills[t + 1] = {}
        for i, c in zip(holes, bwords[t]):
            cur[i] = c
            fills[t + 1][i] = c
        x = cur
    return p, fills, x


def fstar(b0, b):
    n = 0
    for m in range(0, len(b0) - len(b) + 1):
        if b0[m:m + len(b)] == b:
            n += 1
    return Fraction(n, len(b0))


def fdstar(b0, b, k, j):
    n = 0
    for m in range(0, len(b0) - len(b) + 1):
        if b0[m:m + len(b)] == b and m % k == j:
            n += 1
    return Fraction(n, len(b0))


def cyclic_measure(w, L):
    mu = {}
    n = len(w)
    for l in range(1, L + 1):
        for s in range(n):
            f = "".join(w[(s + i) % n] for i in range(l))
            mu[f] = mu.get(f, 0) + Fraction(1, n)
    return mu


def dstar(b0, mu, L):
    v = Fraction(0)
    for l in range(1, L + 1):
        for b in map("".join, product("01", repeat=l)):
            v += abs(fstar(b0, b) - mu.get(b, 0)) / 2 ** l
    return v


def ddstar(b0, mu, L, weights):
    v = Fraction(0)
    for l in range(1, L + 1):
        for b in map("".join, product("01", repeat=l)):
            for k, c in weights.items():
                for j in range(k):
                    v += c * abs(fdstar(b0, b, k, j) - Fraction(mu.get(b, 0)) / k) / 2 ** l
    return v


def main():
    out = {}
    for ratios in ([4, 4, 4, 4], [5, 5, 5, 5], [4, 6, 4, 6]):
        syms = ["1", "0", "1", "0"]
        p, words = classic(ratios, syms)
        out[f"density {ratios}"] = [str(density(words[t], "1")) for t in range(1, 5)]

    p, words = classic([4, 4], ["1", "0"])
    out["S_ox x_2"] = render(words[2])
    out["S_ox x_2 blocks"] = blocks(words[2])
    n = len(words[2])
    shifts = {tuple(words[2][(k + i) % n] for i in range(n)) for k in range(16)}
    out["S_ox distinct shifts of x_2"] = len(shifts)
    # recentered block starts at level 2 (threshold p_1 = 4)
    out["S_ox chi level 2"] = [((s + l // 2) % 16, l) for s, l in blocks(words[2]) if l > 4]

    p, fills, x = downarowicz(["1", "010"])
    out["downarowicz level 2 fills"] = sorted(fills[2].items())
    out["downarowicz x_2"] = render(x)

    b0 = "01010101"
    mu = cyclic_measure(b0, 3)
    out["d_star 01010101 L3"] = str(dstar(b0, mu, 3))
    w = {1: Fraction(1, 2), 3: Fraction(1, 4)}
    out["d_double_star 01010101 L3 K3"] = str(ddstar(b0, mu, 3, w))
    b0 = "0110100110010110"
    mu = cyclic_measure("01", 2)
    out["d_star thue-morse-16 vs alternating L2"] = str(dstar(b0, mu, 2))
    json.dump(out, sys.stdout, indent=1, ensure_ascii=False)
    print()


if __name__ == "__main__":
    main()
