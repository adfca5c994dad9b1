"""Freezes reference similarity scores for random string pairs.

Jaro-Winkler follows the common open-source formulation (match window
max(len)/2 - 1, prefix bonus over at most four characters with scale 0.1,
applied only above 0.7). Ratcliff-Obershelp is CPython's
difflib.SequenceMatcher(None, a, b).ratio(), including its autojunk rule.
"""
import difflib
import json
import random
import sys
from pathlib import Path


def jaro_winkler(s1, s2):
    l1, l2 = len(s1), len(s2)
    if not l1 or not l2:
        return 0.0
    window = max(max(l1, l2) // 2 - 1, 0)
    m1, m2 = [False] * l1, [False] * l2
    common = 0
    for i, ch in enumerate(s1):
        for j in range(max(0, i - window), min(i + window, l2 - 1) + 1):
            if not m2[j] and s2[j] == ch:
                m1[i] = m2[j] = True
                common += 1
                break
    if not common:
        return 0.0
    k = trans = 0
    for i in range(l1):
        if m1[i]:
            j = k
            while not m2[j]:
                j += 1
            k = j + 1
            if s1[i] != s2[j]:
                trans += 1
    trans //= 2
    w = (common / l1 + common / l2 + (common - trans) / common) / 3
    if w <= 0.7:
        return w
    prefix = 0
    while prefix < min(l1, l2, 4) and s1[prefix] == s2[prefix]:
        prefix += 1
    return w + prefix * 0.1 * (1.0 - w)


def ratcliff_obershelp(a, b):
    return difflib.SequenceMatcher(None, a, b).ratio()


def random_pair(rng, i):
    alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZ_" if i % 3 else "ABCDE_"
    if i % 25 == 24:
        n1, n2 = rng.randrange(200, 260), rng.randrange(200, 260)  # exercises autojunk
    else:
        n1, n2 = rng.randrange(0, 28), rng.randrange(0, 28)
    a = "".join(rng.choice(alphabet) for _ in range(n1))
    if i % 2 and a:
        # Mutated copy so that high scores occur as well.
        b = list(a)
        for _ in range(rng.randrange(0, 4)):
            op = rng.randrange(3)
            pos = rng.randrange(len(b) + 1)
            if op == 0:
                b.insert(pos, rng.choice(alphabet))
            elif b and op == 1:
                del b[min(pos, len(b) - 1)]
            elif b:
                b[min(pos, len(b) - 1)] = rng.choice(alphabet)
        b = "".join(b)
    else:
        b = "".join(rng.choice(alphabet) for _ in range(n2))
    return a, b


def main(out_path):
    rng = random.Random(20240917)
    pairs = []
    for i in range(100):
        a, b = random_pair(rng, i)
        pairs.append({"a": a, "b": b, "jaro_winkler": jaro_winkler(a, b), "ratcliff_obershelp": ratcliff_obershelp(a, b)})
    Path(out_path).write_text(json.dumps({"generator": "gen_similarity_oracle.py", "pairs": pairs}, indent=1) + "\n")
    print(f"{len(pairs)} pairs -> {out_path}")


if __name__ == "__main__":
    main(sys.argv[1])
