"""Dense reference computation for the toy fixture.

Independent of the C++ implementation: builds A densely, sums matrix powers with numpy,
applies the normalization pipeline with whole-matrix operations and scores items with
plain dictionaries. Prints every value the acceptance suite freezes.
"""
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

HERE = Path(__file__).resolve().parent.parent / "fixtures"
ALPHA, K, THRESHOLD, N_MAX = 0.5, 3, 3, 5


def data_lines(path):
    for line in path.read_text().splitlines():
        t = line.split()
        if t and not t[0].startswith("#"):
            yield t


users, edges = [], []
for t in data_lines(HERE / "toy_trust.txt"):
    s, d = int(t[0]), int(t[1])
    if s == d:
        continue
    for u in (s, d):
        if u not in users:
            users.append(u)
    if (s, d) not in edges:
        edges.append((s, d))

ratings, items = {}, []
for t in data_lines(HERE / "toy_ratings.txt"):
    u, i, r = int(t[0]), int(t[1]), float(t[2])
    if u not in users:
        users.append(u)
    if i not in items:
        items.append(i)
    ratings[(u, i)] = r

n = len(users)
idx = {u: p for p, u in enumerate(users)}
A = np.zeros((n, n))
for s, d in edges:
    A[idx[s], idx[d]] = 1.0


def katz(l_max):
    S = sum(np.linalg.matrix_power(ALPHA * A, l) for l in range(l_max + 1))
    np.fill_diagonal(S, 0.0)
    return S


def pcmb():
    S = katz(2)
    deg = A.sum(axis=0) + A.sum(axis=1)
    S = S / np.maximum(deg, 1)[None, :]
    S[A == 1] = 0.0
    m = S.max(axis=1, keepdims=True)
    S = np.divide(S, m, out=np.zeros_like(S), where=m > 0)
    return A + S


count = {}
for (u, i) in ratings:
    count[u] = count.get(u, 0) + 1
targets = sorted([u for u in count if count[u] < THRESHOLD], key=lambda u: idx[u])
train = {(u, i): r for (u, i), r in ratings.items() if u not in targets}
pop = {i: sum(1 for (u, j) in train if j == i) for i in items}
relevant = {u: {i for (v, i) in ratings if v == u} for u in targets}


def order(scores):
    return sorted(scores, key=lambda i: (-scores[i], -pop[i], items.index(i)))


def knn(sim, u):
    row = [(sim[idx[u], j], j) for j in range(n) if sim[idx[u], j] > 0 and j != idx[u]]
    row.sort(key=lambda x: (-x[0], x[1]))
    nb = row[:K]
    scores = {}
    for s, j in nb:
        for (v, i), r in train.items():
            if v == users[j]:
                scores[i] = scores.get(i, 0.0) + s * r
    return [(users[j], s) for s, j in nb], order(scores)


def mp(u):
    return order({i: pop[i] for i in items if pop[i] > 0})


def metrics(rec, rel, k):
    top = rec[:k]
    hits = [r for r, i in enumerate(top, 1) if i in rel]
    dcg = sum(1 / math.log2(r + 1) for r in hits)
    idcg = sum(1 / math.log2(r + 1) for r in range(1, min(k, len(rel)) + 1))
    return dcg / idcg, len(hits) / len(rel), len(hits) / k


S = pcmb()
print("users (ext order):", users)
print("KS_PCMB rows (all users):")
for u in users:
    row = {users[j]: str(Fraction(S[idx[u], j]).limit_denominator(1000)) for j in range(n) if S[idx[u], j] > 0}
    print(" ", u, row)
for name, fn in (("KS_PCMB", lambda u: knn(S, u)[1]), ("Trust_exp", lambda u: knn(A, u)[1]),
                 ("MP", mp)):
    print(name)
    per_user = {}
    for u in targets:
        rec = fn(u)
        if name == "KS_PCMB":
            print("  neighbors", u, knn(S, u)[0])
        print("  ranking", u, rec)
        per_user[u] = [metrics(rec, relevant[u], k) for k in range(1, N_MAX + 1)]
    for k in range(1, N_MAX + 1):
        avg = [sum(per_user[u][k - 1][m] for u in targets) / len(targets) for m in range(3)]
        print(f"  n={k} ndcg={avg[0]!r} recall={avg[1]!r} precision={avg[2]!r}")
