#!/usr/bin/env python3
"""Generate data/h3_chars.txt and data/h4_chars.txt.

H4 is realised on the quaternions as x -> l f(x) r^-1 with l, r in the binary
icosahedral group 2I and f the identity or conjugation; H3 as x -> e l x l^-1 on
pure quaternions with e = +-1.  Irreducible characters come from those of 2I
(Clifford theory for the swap in H4), class representatives are ShortLex-least
words in the simple reflections (letters 1..n, m(1,2) = 5), and the values are
written as pairs (a, b) meaning a + b*sqrt(5).

Usage: gen_char_tables.py OUTDIR
"""

import sys
from fractions import Fraction as F
from itertools import permutations


class Q5:
    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a, self.b = F(a), F(b)

    def __add__(self, o):
        o = lift(o)
        return Q5(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, o):
        o = lift(o)
        return Q5(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return lift(o) - self

    def __neg__(self):
        return Q5(-self.a, -self.b)

    def __mul__(self, o):
        o = lift(o)
        return Q5(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = lift(o)
        n = o.a * o.a - 5 * o.b * o.b
        return self * Q5(o.a / n, -o.b / n)

    def conj(self):
        return Q5(self.a, -self.b)

    def __eq__(self, o):
        o = lift(o)
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __float__(self):
        return float(self.a) + float(self.b) * 5 ** 0.5

    def is_rational(self):
        return self.b == 0

    def __repr__(self):
        return f"({self.a},{self.b})"


def lift(x):
    return x if isinstance(x, Q5) else Q5(x)


HALF = F(1, 2)
PHI = Q5(HALF, HALF)
PHI_INV = Q5(-HALF, HALF)


def qmul(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def qconj(q):
    return (q[0], -q[1], -q[2], -q[3])


def qneg(q):
    return tuple(-x for x in q)


def key(q):
    return tuple((x.a, x.b) for x in q)


def binary_icosahedral():
    z = Q5(0)
    out = set()
    for i in range(4):
        for s in (1, -1):
            v = [z] * 4
            v[i] = Q5(s)
            out.add(tuple(v))
    for signs in range(16):
        out.add(tuple(Q5(HALF if signs >> i & 1 else -HALF) for i in range(4)))
    base = (Q5(0), Q5(HALF), PHI_INV * HALF, PHI * HALF)
    even = [p for p in permutations(range(4)) if parity(p) == 0]
    for p in even:
        for signs in range(8):
            v = [base[p[i]] for i in range(4)]
            k = 0
            for i in range(4):
                if p[i] != 0:
                    if signs >> k & 1:
                        v[i] = -v[i]
                    k += 1
            out.add(tuple(v))
    group = sorted(out, key=lambda q: key(q))
    assert len(group) == 120
    return group


def parity(p):
    n, s = len(p), 0
    for i in range(n):
        for j in range(i + 1, n):
            s += p[i] > p[j]
    return s % 2


# characters of 2I as functions of a unit quaternion
def chi2(q):
    return 2 * q[0]


def binary_characters():
    c = {}
    c["1"] = lambda q: Q5(1)
    c["2"] = chi2
    c["2b"] = lambda q: chi2(q).conj()
    c["3"] = lambda q: chi2(q) * chi2(q) - 1
    c["3b"] = lambda q: c["3"](q).conj()
    c["4"] = lambda q: chi2(q) * chi2(q).conj()
    c["5"] = lambda q: c["3"](q) * c["3b"](q) - c["4"](q)
    c["4o"] = lambda q: chi2(q) * chi2(q) * chi2(q) - 2 * chi2(q)
    c["6"] = lambda q: chi2(q) * c["3b"](q)
    odd = {"2", "2b", "4o", "6"}
    return c, odd


def simple_system(roots, act_reflection):
    functional = [1.0, 0.31, 0.17, 0.0713][: len(roots[0])]
    pos = [r for r in roots if sum(f * float(x) for f, x in zip(functional, r)) > 0]
    pos_keys = {key(r) for r in pos}
    simple = []
    for a in pos:
        others = {key(act_reflection(a, b)) for b in pos if key(b) != key(a)}
        if others == pos_keys - {key(a)}:
            simple.append(a)
    # order along the diagram 5-3-3
    def cos2(a, b):
        return qdot_n(a, b) * qdot_n(a, b) / (qdot_n(a, a) * qdot_n(b, b))
    n = len(simple)
    five = Q5(3, 1) / 8  # cos^2(pi/5)
    three = Q5(F(1, 4))
    adj = {i: [] for i in range(n)}
    start = None
    for i in range(n):
        for j in range(n):
            if i != j:
                c = cos2(simple[i], simple[j])
                if c == five or c == three:
                    adj[i].append(j)
                if c == five and len([k for k in range(n) if k != i and cos2(simple[i], simple[k]) != 0]) == 1:
                    start = i
    order = [start]
    while len(order) < n:
        order.append(next(j for j in adj[order[-1]] if j not in order))
    return [simple[i] for i in order]


def qdot_n(a, b):
    return sum((x * y for x, y in zip(a, b)), Q5())


def reflect_vec(a, v):
    c = 2 * qdot_n(v, a) / qdot_n(a, a)
    return tuple(x - c * y for x, y in zip(v, a))


def enumerate_group(gens, compose, identity):
    """BFS from the identity multiplying generators on the right; words are ShortLex-least."""
    words = {identity: ()}
    order = [identity]
    i = 0
    while i < len(order):
        g = order[i]
        i += 1
        for letter, s in enumerate(gens, start=1):
            h = compose(g, s)
            if h not in words:
                words[h] = words[g] + (letter,)
                order.append(h)
    return order, words


def classes(order, gens, compose, inverse):
    idx = {g: i for i, g in enumerate(order)}
    parent = list(range(len(order)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in order:
        for s in gens:
            h = compose(compose(s, g), inverse(s))
            a, b = find(idx[g]), find(idx[h])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for g in order:
        groups.setdefault(find(idx[g]), []).append(g)
    # order(BFS) is ShortLex, so the first member of each class is its least element
    return sorted(groups.values(), key=lambda c: idx[c[0]])


def matrix_of(act, g, dim):
    basis = [tuple(Q5(1 if i == j else 0) for j in range(dim)) for i in range(dim)]
    cols = [act(g, e) for e in basis]
    return [[cols[j][i] for j in range(dim)] for i in range(dim)]


def matmul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), Q5()) for j in range(n)] for i in range(n)]


def det_one_minus_q(m):
    """coefficients of det(1 - qM) via Newton's identities"""
    n = len(m)
    p, power = [], m
    for _ in range(n):
        p.append(sum((power[i][i] for i in range(n)), Q5()))
        power = matmul(power, m)
    e = [Q5(1)]
    for k in range(1, n + 1):
        s = Q5()
        for i in range(1, k + 1):
            term = e[k - i] * p[i - 1]
            s = s + term if i % 2 else s - term
        e.append(s / k)
    return [e[k] if k % 2 == 0 else -e[k] for k in range(n + 1)]


def series_inverse(d, terms):
    out = []
    for k in range(terms):
        s = Q5(1 if k == 0 else 0)
        for j in range(1, min(k, len(d) - 1) + 1):
            s = s - d[j] * out[k - j]
        out.append(s)
    return out


def fake_degrees(chars, cls, mats, degrees, order):
    top = sum(d - 1 for d in degrees)
    terms = top + 1
    inv = [series_inverse(det_one_minus_q(m), terms) for m in mats]
    prod = [Q5(1)] + [Q5()] * (terms - 1)
    for d in degrees:
        prod = [prod[k] - (prod[k - d] if k >= d else 0) for k in range(terms)]
    out = []
    for values in chars:
        s = [Q5()] * terms
        for c, v, series in zip(cls, values, inv):
            w = v * len(c)
            s = [s[k] + w * series[k] for k in range(terms)]
        f = [sum((prod[j] * s[k - j] for j in range(k + 1)), Q5()) / order for k in range(terms)]
        assert all(x.is_rational() and x.a.denominator == 1 and x.a >= 0 for x in f), f
        out.append([int(x.a) for x in f])
    return out


def inner(cls, a, b, order):
    return sum((len(c) * x * y for c, x, y in zip(cls, a, b)), Q5()) / order


def check_table(cls, chars, order):
    for i, a in enumerate(chars):
        for j, b in enumerate(chars):
            assert inner(cls, a, b, order) == (1 if i == j else 0), (i, j)
    assert len(chars) == len(cls)


def bar(label):
    d, rest = label.split("_", 1)
    return d + "bar_" + rest


def write(path, title, cls, words, rows):
    with open(path, "w") as f:
        f.write(f"# {title} character table over Q(sqrt5); values (a,b) mean a + b*sqrt(5)\n")
        f.write("# generated by tools/gen_char_tables.py\n")
        f.write(f"classes {len(cls)}\n")
        for i, c in enumerate(cls):
            w = words[c[0]]
            f.write(f"class {i} {len(c)} {'.'.join(map(str, w)) if w else 'e'}\n")
        for label, values in rows:
            deg = values[0]
            assert deg.is_rational()
            f.write(f"{label}; {int(deg.a)}; " + " ".join(f"({v.a},{v.b})" for v in values) + "\n")


def h4(outdir):
    group2i = binary_icosahedral()
    def normal(l, r, s):
        a, b = (key(l), key(r), s), (key(qneg(l)), key(qneg(r)), s)
        return (l, r, s) if a <= b else (qneg(l), qneg(r), s)

    def compose(g2, g1):
        l2, r2, s2 = g2
        l1, r1, s1 = g1
        if s2 == 0:
            return normal(qmul(l2, l1), qmul(r2, r1), s1)
        return normal(qmul(l2, r1), qmul(r2, l1), s1 ^ 1)

    def inverse(g):
        l, r, s = g
        if s == 0:
            return normal(qconj(l), qconj(r), 0)
        # (l, r, 1)^2 = (l r, r l, 0)
        return normal(qconj(r), qconj(l), 1)

    def act(g, x):
        l, r, s = g
        y = qconj(x) if s else x
        return qmul(qmul(l, y), qconj(r))

    def hashable(g):
        return (key(g[0]), key(g[1]), g[2])

    roots = group2i
    simple = simple_system(roots, reflect_vec)
    gens = [normal(qneg(a), qconj(a), 1) for a in simple]
    for a, g in zip(simple, gens):
        for v in roots[:8]:
            assert key(act(g, v)) == key(reflect_vec(a, v))

    class E:
        __slots__ = ("g", "h")

        def __init__(self, g):
            self.g, self.h = g, hashable(g)

        def __eq__(self, o):
            return self.h == o.h

        def __hash__(self):
            return hash(self.h)

    one = Q5(1)
    ident = E(normal((one, Q5(), Q5(), Q5()), (one, Q5(), Q5(), Q5()), 0))
    egens = [E(g) for g in gens]
    comp = lambda a, b: E(compose(a.g, b.g))
    inv = lambda a: E(inverse(a.g))
    order, words = enumerate_group(egens, comp, ident)
    assert len(order) == 14400
    cls = classes(order, egens, comp, inv)
    assert len(cls) == 34
    reps = [c[0].g for c in cls]

    bc, odd = binary_characters()
    names = ["1", "3", "3b", "4", "5", "2", "2b", "4o", "6"]
    chars, info = [], []
    for i, a in enumerate(names):
        for b in names[i:]:
            if (a in odd) != (b in odd):
                continue
            if a != b:
                vals = [bc[a](l) * bc[b](r) + bc[b](l) * bc[a](r) if s == 0 else Q5() for l, r, s in reps]
                chars.append(vals)
                info.append((a, b, 0))
            else:
                for sign in (1, -1):
                    vals = [bc[a](l) * bc[a](r) if s == 0 else sign * bc[a](qmul(l, r)) for l, r, s in reps]
                    chars.append(vals)
                    info.append((a, a, sign))
    check_table(cls, chars, 14400)
    assert sum(int(c[0].a) ** 2 for c in chars) == 14400

    mats = [matrix_of(act, g, 4) for g in reps]
    refl = [sum((m[i][i] for i in range(4)), Q5()) for m in mats]
    fake = fake_degrees(chars, cls, mats, [2, 12, 20, 30], 14400)
    b_value = [next(k for k, x in enumerate(f) if x) for f in fake]
    eps = [Q5((-1) ** len(words[c[0]])) for c in cls]
    w0 = next(i for i, c in enumerate(cls) if len(c) == 1 and i != 0)

    def find(vals):
        return next(i for i, c in enumerate(chars) if c == vals)

    labels = [None] * len(chars)
    for i, c in enumerate(chars):
        if labels[i] is not None:
            continue
        deg = int(c[0].a)
        rational = all(x.is_rational() for x in c)
        oddc = c[w0] == -c[0]
        sub = ("rr" if oddc else "r") if rational else ("t" if oddc else "s")
        twist = find([x * e for x, e in zip(c, eps)])
        conj = find([x.conj() for x in c])
        group = [i]
        if conj != i:
            group.append(conj)
        if twist != i and twist not in group:
            group.append(twist)
            tc = find([x.conj() for x in chars[twist]])
            if tc not in group:
                group.append(tc)
        # smaller b-value: unbarred within a Galois pair, unprimed within a sign twist pair
        if conj == i:
            pairs = [(i, twist)] if twist != i else [(i, None)]
            for u, t in pairs:
                if t is None:
                    labels[u] = f"{deg}_{sub}"
                else:
                    lo, hi = sorted((u, t), key=lambda j: b_value[j])
                    labels[lo], labels[hi] = f"{deg}_{sub}", f"{deg}_{sub}'"
        else:
            first = min(group, key=lambda j: (b_value[j], j))
            fc = find([x.conj() for x in chars[first]])
            labels[first] = f"{deg}_{sub}"
            labels[fc] = bar(f"{deg}_{sub}")
            if twist != i:
                ft = find([x * e for x, e in zip(chars[first], eps)])
                ftc = find([x.conj() for x in chars[ft]])
                labels[ft] = f"{deg}_{sub}'"
                labels[ftc] = bar(f"{deg}_{sub}") + "'"
    # the odd rational 16-pair is the one the hyperbolic torus homology uses: 16_r' occurs in H_1
    # (b = 3), 16_r in H_3 (b = 21); the even pair becomes 16_rr
    rename = {"16_rr": "16_r'", "16_rr'": "16_r", "16_r": "16_rr", "16_r'": "16_rr'"}
    labels = [rename.get(x, x) for x in labels]
    assert b_value[labels.index("16_r'")] == 3
    assert len(set(labels)) == 34 and None not in labels
    refl_label = labels[find(refl)]
    assert refl_label == "4_t", refl_label
    rows = sorted(zip(labels, chars), key=lambda r: (int(r[1][0].a), r[0]))
    write(f"{outdir}/h4_chars.txt", "H4", cls, words, rows)
    return labels, b_value


def h3(outdir):
    group2i = binary_icosahedral()
    pure = [q for q in group2i if q[0] == 0]
    assert len(pure) == 30

    def normal(e, l):
        return (e, l) if key(l) <= key(qneg(l)) else (e, qneg(l))

    def compose(g2, g1):
        return normal(g2[0] * g1[0], qmul(g2[1], g1[1]))

    def inverse(g):
        return normal(g[0], qconj(g[1]))

    def act(g, x):
        e, l = g
        y = qmul(qmul(l, (Q5(), x[0], x[1], x[2])), qconj(l))
        return tuple(e * c for c in y[1:])

    roots = [q[1:] for q in pure]
    simple = simple_system(roots, reflect_vec)

    class E:
        __slots__ = ("g", "h")

        def __init__(self, g):
            self.g, self.h = g, (g[0], key(g[1]))

        def __eq__(self, o):
            return self.h == o.h

        def __hash__(self):
            return hash(self.h)

    gens = [E(normal(-1, (Q5(),) + tuple(a))) for a in simple]
    for a, g in zip(simple, gens):
        for v in roots[:6]:
            assert key(act(g.g, v)) == key(reflect_vec(a, v))
    one = Q5(1)
    ident = E(normal(1, (one, Q5(), Q5(), Q5())))
    comp = lambda a, b: E(compose(a.g, b.g))
    inv = lambda a: E(inverse(a.g))
    order, words = enumerate_group(gens, comp, ident)
    assert len(order) == 120
    cls = classes(order, gens, comp, inv)
    assert len(cls) == 10
    reps = [c[0].g for c in cls]
    bc, _ = binary_characters()
    chars, labels = [], []
    mats = [matrix_of(act, g, 3) for g in reps]
    refl = [sum((m[i][i] for i in range(3)), Q5()) for m in mats]
    for name in ["1", "3", "3b", "4", "5"]:
        for twisted in (False, True):
            vals = [bc[name](l) * (e if twisted else 1) for e, l in reps]
            chars.append(vals)
            deg = int(vals[0].a)
            sub = "r" if all(x.is_rational() for x in vals) else "s"
            # primes mark the characters that are nontrivial on the centre
            base = f"{deg}_{sub}" if name != "3b" else bar(f"{deg}_{sub}")
            labels.append(base + ("'" if twisted else ""))
    check_table(cls, chars, 120)
    # the Galois conjugate of the reflection character is the barred one
    r = labels[chars.index(refl)]
    if r != "3_s'":
        swap = {"3_s": "3bar_s", "3bar_s": "3_s", "3_s'": "3bar_s'", "3bar_s'": "3_s'"}
        labels = [swap.get(x, x) for x in labels]
    assert labels[chars.index(refl)] == "3_s'"
    rows = sorted(zip(labels, chars), key=lambda r: (int(r[1][0].a), r[0]))
    write(f"{outdir}/h3_chars.txt", "H3", cls, words, rows)


if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "data"
    h3(out)
    labels, b = h4(out)
    for l, v in sorted(zip(labels, b), key=lambda t: t[1]):
        print(l, "b =", v)
