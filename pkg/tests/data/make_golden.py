"""Regenerate ``golden_embedding.json`` with a standalone brute-force evaluator.

This script deliberately shares no code with the package: each condition is
written out as explicit rational inequalities, and the boundary flag is
recomputed by brute force over every branch. Run from the repository root::

    python3 tests/data/make_golden.py
"""

from __future__ import annotations

import json
import random
from fractions import Fraction as Fr
from pathlib import Path

INF = "inf"


def inv(x):
    return Fr(0) if x == INF else 1 / Fr(x)


def fmt(x):
    return INF if x == INF else str(Fr(x))


# Each branch: list of (kind, a, b) meaning a <= b, a < b or a == b.
def branches(theorem, n, p, q, r, s):
    ip, iq, ir = inv(p), inv(q), inv(r)
    if theorem == "1.1":
        return {
            "thm1-cond1": [("le", ip, iq), ("le", Fr(0), s), ("le", ir, iq)],
            "thm1-cond2": [("lt", iq, ip), ("lt", n * (ip - iq), s)],
        }
    if theorem == "A":
        return {
            "thmA-cond1": [("le", ip, iq), ("le", Fr(0), s)],
            "thmA-cond2": [("lt", iq, ip), ("lt", n * (ip - iq), s)],
        }
    crit = n * (1 - ip - iq)
    if theorem in ("1.2", "B"):
        tag = "thm2" if theorem == "1.2" else "thmB"
        return {
            f"{tag}-cond1": [("le", iq, ip), ("le", s, crit)],
            f"{tag}-cond2": [("lt", ip, iq), ("lt", s, crit)],
        }
    three = [Fr(0), n * (ip - iq), crit]
    if theorem == "lemma-MB":
        return {"lemma-MB": [("le", max(three), s)]}
    if theorem == "lemma-BM":
        return {"lemma-BM": [("le", s, min(three))]}
    raise ValueError(theorem)


def holds(kind, a, b):
    return a <= b if kind == "le" else a < b if kind == "lt" else a == b


def evaluate(theorem, n, p, q, r, s):
    table = branches(theorem, n, p, q, r, s)
    fired = "none"
    for tag, cons in table.items():
        if all(holds(*c) for c in cons):
            fired = tag
            break
    boundary = False
    for cons in table.values():
        closure = all(a <= b for _, a, b in cons)
        tight = any(a == b for _, a, b in cons)
        if closure and tight:
            boundary = True
    return fired != "none", fired, boundary


def sample(rng: random.Random, theorem: str):
    n = rng.choice([1, 2, 3])
    if theorem.startswith("lemma"):
        p = rng.choice(["1/4", "1/2", "1", "2", "4", INF])
    else:
        p = rng.choice(["1/4", "1/3", "1/2", "2/3", "1"])
    q = rng.choice(["1/4", "1/2", "2/3", "1", "2", "4", INF])
    r = rng.choice(["1/4", "1/2", "1", "2", "4", INF])
    if rng.random() < 0.35:
        # land exactly on a critical value
        ip, iq = inv(p), inv(q)
        s = rng.choice([Fr(0), n * (ip - iq), n * (1 - ip - iq)])
    else:
        s = Fr(rng.randint(-32, 32), 4)
    return n, p, q, r, s


def main():
    rng = random.Random(20261015)
    theorems = ["1.1", "1.2", "A", "B", "lemma-MB", "lemma-BM"]
    rows = []
    for i in range(500):
        theorem = theorems[i % len(theorems)]
        n, p, q, r, s = sample(rng, theorem)
        if theorem in ("A", "B"):
            r = "2"
        h, branch, boundary = evaluate(theorem, n, p, q, r, s)
        rows.append({"theorem": theorem, "n": n, "p": fmt(p), "q": fmt(q), "r": fmt(r), "s": fmt(s),
                     "holds": h, "branch": branch, "boundary": boundary})
    out = Path(__file__).with_name("golden_embedding.json")
    out.write_text(json.dumps(rows, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {len(rows)} rows to {out}")


if __name__ == "__main__":
    main()
