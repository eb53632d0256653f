"""Search for surjective homomorphisms from knot groups onto symmetric
groups sending every meridian (Wirtinger generator) to a transposition.

A valid assignment of transpositions to arcs that satisfies all Wirtinger
relations and generates S_n certifies bridge index >= n-1.  Because
transpositions are involutions, the conjugation direction in a relation is
immaterial: out = over * in * over for either crossing sign.

The search is depth-first over arc assignments with immediate constraint
propagation (assigning two of the three arcs in a relation forces or
constrains the third), symmetry-reduced by fixing the first assigned arc to
(1 2) and introducing new points in increasing order.  Results are
canonicalized up to simultaneous conjugation and returned in sorted order,
so an empty result is an exhaustive proof of non-existence.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .diagram import WirtingerPresentation


class QuotientError(ValueError):
    """Invalid search or verification request."""


class LabelingFailure(QuotientError):
    """A labeling violates a Wirtinger relation or fails to generate S_n."""


@dataclass(frozen=True, order=True)
class Transposition:
    """The transposition (i j) with 1 <= i < j."""

    i: int
    j: int

    def __post_init__(self):
        if not 1 <= self.i < self.j:
            raise QuotientError(f"bad transposition ({self.i} {self.j})")

    def conjugated_by(self, other: "Transposition") -> "Transposition":
        """Relabel the moved points by the other transposition."""

        def relabel(x: int) -> int:
            if x == other.i:
                return other.j
            if x == other.j:
                return other.i
            return x

        a, b = relabel(self.i), relabel(self.j)
        return Transposition(min(a, b), max(a, b))

    def __str__(self) -> str:
        return f"({self.i} {self.j})"


@dataclass(frozen=True)
class Labeling:
    """Total assignment of transpositions in S_degree to presentation arcs."""

    degree: int
    assignment: tuple[Transposition, ...]

    def __post_init__(self):
        for t in self.assignment:
            if t.j > self.degree:
                raise QuotientError(f"{t} exceeds degree {self.degree}")


@dataclass(frozen=True)
class HomCertificate:
    """Verified transposition labeling and the bridge bound it implies."""

    diagram_fingerprint: str
    labeling: Labeling
    transcript: tuple[tuple[int, bool], ...]

    @property
    def degree(self) -> int:
        return self.labeling.degree

    @property
    def bridge_bound(self) -> int:
        return self.labeling.degree - 1


def transpositions_generate(ts, n: int) -> bool:
    """True iff the transposition pair-graph is connected and covers 1..n."""
    if n < 2:
        raise QuotientError("degree must be >= 2")
    ts = list(ts)
    if not ts:
        return False
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    touched = set()
    for t in ts:
        if t.j > n:
            raise QuotientError(f"{t} exceeds degree {n}")
        touched.update((t.i, t.j))
        ri, rj = find(t.i), find(t.j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    if len(touched) != n:
        return False
    root = find(1)
    return all(find(x) == root for x in range(2, n + 1))


def verify_labeling(
    pres: WirtingerPresentation,
    labeling: Labeling,
    diagram_fingerprint: str = "",
) -> HomCertificate:
    """Check every relation by explicit conjugation and check generation.

    Returns a certificate carrying the per-relation transcript; raises
    LabelingFailure naming the first failing relation or the generation
    defect.
    """
    if len(labeling.assignment) != pres.n_arcs:
        raise QuotientError(
            f"labeling covers {len(labeling.assignment)} arcs, "
            f"presentation has {pres.n_arcs}"
        )
    transcript = []
    for idx, rel in enumerate(pres.relations):
        a = labeling.assignment[rel.in_arc]
        o = labeling.assignment[rel.over_arc]
        b = labeling.assignment[rel.out_arc]
        if a.conjugated_by(o) != b:
            raise LabelingFailure(
                f"relation {idx} (crossing {rel.crossing_id}) fails: "
                f"{o}{a}{o} = {a.conjugated_by(o)} != {b}"
            )
        transcript.append((idx, True))
    if not transpositions_generate(labeling.assignment, labeling.degree):
        raise LabelingFailure(
            f"assigned transpositions do not generate S_{labeling.degree}"
        )
    return HomCertificate(diagram_fingerprint, labeling, tuple(transcript))


# ---------------------------------------------------------------------------
# search


def _all_transpositions(n: int) -> list[Transposition]:
    return [Transposition(i, j) for i in range(1, n) for j in range(i + 1, n + 1)]


def _canonical_class(labeling: tuple[Transposition, ...], n: int) -> tuple:
    """Lexicographically smallest simultaneous conjugate of the assignment."""
    best = None
    for perm in permutations(range(1, n + 1)):
        img = []
        for t in labeling:
            a, b = perm[t.i - 1], perm[t.j - 1]
            img.append((min(a, b), max(a, b)))
        vec = tuple(img)
        if best is None or vec < best:
            best = vec
    return best


def _propagate(
    assignment: list[Transposition | None],
    relations,
) -> list[int] | None:
    """Run forcing rules to a fixed point.

    Returns the list of newly assigned arcs, or None on contradiction (after
    rolling back its own assignments).
    """
    newly: list[int] = []

    def fail() -> None:
        for arc in newly:
            assignment[arc] = None

    progress = True
    while progress:
        progress = False
        for rel in relations:
            a = assignment[rel.in_arc]
            o = assignment[rel.over_arc]
            b = assignment[rel.out_arc]
            if o is not None and a is not None:
                forced = a.conjugated_by(o)
                if b is None:
                    assignment[rel.out_arc] = forced
                    newly.append(rel.out_arc)
                    progress = True
                elif b != forced:
                    fail()
                    return None
            elif o is not None and b is not None:
                assignment[rel.in_arc] = b.conjugated_by(o)
                newly.append(rel.in_arc)
                progress = True
            elif o is None and a is not None and b is not None and a != b:
                shared = {a.i, a.j} & {b.i, b.j}
                if len(shared) != 1:
                    fail()
                    return None
                x = shared.pop()
                y = a.i if a.j == x else a.j
                z = b.i if b.j == x else b.j
                assignment[rel.over_arc] = Transposition(min(y, z), max(y, z))
                newly.append(rel.over_arc)
                progress = True
    return newly


def search_homomorphisms(
    pres: WirtingerPresentation,
    n: int,
    max_results: int | None = None,
) -> tuple[Labeling, ...]:
    """All surjective transposition labelings onto S_n, up to conjugation.

    Deterministic exhaustive backtracking; every returned labeling passes
    verify_labeling.  An empty result proves no such homomorphism exists.
    """
    if n < 3:
        raise QuotientError("degree must be >= 3")
    m = pres.n_arcs
    relations = pres.relations
    # most-constrained-first static order
    freq = [0] * m
    for rel in relations:
        freq[rel.in_arc] += 1
        freq[rel.over_arc] += 1
        freq[rel.out_arc] += 1
    order = sorted(range(m), key=lambda k: (-freq[k], k))
    assignment: list[Transposition | None] = [None] * m
    found: set[tuple] = set()

    def max_point() -> int:
        mp = 0
        for t in assignment:
            if t is not None and t.j > mp:
                mp = t.j
        return mp

    def candidates() -> list[Transposition]:
        mp = max_point()
        out = []
        for i in range(1, min(mp, n) + 1):
            for j in range(i + 1, min(mp, n) + 1):
                out.append(Transposition(i, j))
        if mp + 1 <= n:
            for i in range(1, mp + 1):
                out.append(Transposition(i, mp + 1))
        if mp + 2 <= n:
            out.append(Transposition(mp + 1, mp + 2))
        return sorted(out)

    def dfs() -> bool:
        if max_results is not None and len(found) >= max_results:
            return True
        target = None
        for k in order:
            if assignment[k] is None:
                target = k
                break
        if target is None:
            labeling = tuple(assignment)  # type: ignore[arg-type]
            if transpositions_generate(labeling, n):
                found.add(_canonical_class(labeling, n))
            return False
        for cand in candidates():
            assignment[target] = cand
            newly = _propagate(assignment, relations)
            if newly is not None:
                stop = dfs()
                for arc in newly:
                    assignment[arc] = None
                if stop:
                    assignment[target] = None
                    return True
            assignment[target] = None
        return False

    dfs()
    labelings = []
    for vec in sorted(found):
        labeling = Labeling(n, tuple(Transposition(i, j) for i, j in vec))
        verify_labeling(pres, labeling)
        labelings.append(labeling)
    return tuple(labelings)


@dataclass(frozen=True)
class BridgeBound:
    bound: int
    certificate: HomCertificate | None


def bridge_lower_bound(
    pres: WirtingerPresentation,
    n_max: int = 6,
    diagram_fingerprint: str = "",
) -> BridgeBound:
    """Largest Proposition-style bound n-1 over degrees 3..n_max.

    Searches descending so the strongest bound is found first; with no
    surjection at any degree the vacuous bound 1 is returned without a
    certificate.
    """
    if n_max < 3:
        raise QuotientError("n_max must be >= 3")
    for n in range(n_max, 2, -1):
        results = search_homomorphisms(pres, n, max_results=1)
        if results:
            cert = verify_labeling(pres, results[0], diagram_fingerprint)
            return BridgeBound(n - 1, cert)
    return BridgeBound(1, None)


# ---------------------------------------------------------------------------
# certificate serialization


def certificate_text(cert: HomCertificate) -> str:
    """Line-oriented certificate: header, arc assignments, relation checks."""
    lines = [
        f"certificate: transposition-homomorphism",
        f"diagram: {cert.diagram_fingerprint or '(unspecified)'}",
        f"degree: {cert.degree}",
        f"bridge_bound: {cert.bridge_bound}",
    ]
    for idx, t in enumerate(cert.labeling.assignment):
        lines.append(f"arc {idx} -> ({t.i} {t.j})")
    for idx, ok in cert.transcript:
        lines.append(f"relation {idx}: {'PASS' if ok else 'FAIL'}")
    return "\n".join(lines) + "\n"
