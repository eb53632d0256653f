"""Shared test helpers: braid-closure diagram construction and the
independent brute-force oracles the derived expectations are frozen from.

The oracles deliberately avoid the code paths they check: segment
intersection solves 2x2 rational linear systems instead of orientation
predicates; homomorphism and coloring enumeration try every assignment
vector instead of backtracking.
"""

from fractions import Fraction
from itertools import product

from stickcert.diagram import canonical_diagram
from stickcert.quotients import Transposition


def braid_closure(word, strands):
    """Canonical diagram of a braid closure; word entries are +-i for
    sigma_i / sigma_i inverse.  The closure must be a knot."""
    cur = {p: ("s", p) for p in range(1, strands + 1)}
    nxt = 0
    raw = []
    for letter in word:
        i = abs(letter)
        a, b = cur[i], cur[i + 1]
        oi, oi1 = ("e", nxt), ("e", nxt + 1)
        nxt += 2
        if letter > 0:
            raw.append(((b, oi1, oi, a), 1))
        else:
            raw.append(((a, b, oi1, oi), -1))
        cur[i], cur[i + 1] = oi, oi1
    repl = {cur[p]: ("s", p) for p in range(1, strands + 1)}
    out = [(tuple(repl.get(e, e) for e in slots), sign) for slots, sign in raw]
    return canonical_diagram(out)


def brute_force_crossing_pairs(poly, direction):
    """All-pairs segment intersection via exact 2x2 linear solves."""
    n = poly.n
    u, v = direction.u, direction.v

    def dot(a, b):
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]

    p = [(Fraction(dot(u, vert)), Fraction(dot(v, vert))) for vert in poly.vertices]
    hits = set()
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            a, b = p[i], p[(i + 1) % n]
            c, d = p[j], p[(j + 1) % n]
            # a + t(b-a) = c + s(d-c)
            m00, m01 = b[0] - a[0], c[0] - d[0]
            m10, m11 = b[1] - a[1], c[1] - d[1]
            det = m00 * m11 - m01 * m10
            if det == 0:
                continue
            rx, ry = c[0] - a[0], c[1] - a[1]
            t = (rx * m11 - m01 * ry) / det
            s = (m00 * ry - rx * m10) / det
            if 0 < t < 1 and 0 < s < 1:
                hits.add((i, j))
    return hits


def brute_force_labelings(pres, n):
    """Every total transposition assignment satisfying all relations and
    generating S_n, as a set of raw assignment tuples."""
    from stickcert.quotients import transpositions_generate

    transpositions = [
        Transposition(i, j) for i in range(1, n) for j in range(i + 1, n + 1)
    ]
    good = set()
    for combo in product(transpositions, repeat=pres.n_arcs):
        ok = True
        for rel in pres.relations:
            if combo[rel.in_arc].conjugated_by(combo[rel.over_arc]) != combo[rel.out_arc]:
                ok = False
                break
        if ok and transpositions_generate(combo, n):
            good.add(tuple((t.i, t.j) for t in combo))
    return good


def conjugacy_classes(raw_labelings, n):
    """Canonical representatives (lex-min under simultaneous conjugation)."""
    from itertools import permutations

    classes = set()
    for vec in raw_labelings:
        best = None
        for perm in permutations(range(1, n + 1)):
            img = tuple(
                (min(perm[i - 1], perm[j - 1]), max(perm[i - 1], perm[j - 1]))
                for i, j in vec
            )
            if best is None or img < best:
                best = img
        classes.add(best)
    return classes


def brute_force_colorings(diagram, p):
    """Count Fox p-colorings by enumerating all p^arcs labelings."""
    from stickcert.diagram import wirtinger

    pres = wirtinger(diagram)
    m = pres.n_arcs
    count = 0
    for combo in product(range(p), repeat=m):
        if all(
            (2 * combo[rel.over_arc] - combo[rel.in_arc] - combo[rel.out_arc]) % p == 0
            for rel in pres.relations
        ):
            count += 1
    return count
