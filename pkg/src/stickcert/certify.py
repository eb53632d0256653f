"""Inequality-chain derivation engine for bridge index, superbridge index,
and stick number.

Facts are integer intervals tightened monotonically by a fixed rule set:

* STICK_UPPER_FROM_WITNESS -- an n-gon witness gives stick <= n.
* BRIDGE_LOWER_FROM_HOM    -- a degree-n transposition certificate gives
  bridge >= n-1.
* KUIPER                   -- bridge < superbridge for nontrivial knots.
* RANDELL                  -- superbridge <= stick/2.
* INTEGER_SQUEEZE          -- implicit: all intervals are integer intervals,
  so strict inequalities and halving round inward.

Every tightening is recorded in order; saturation runs the rules to a fixed
point, which is unique (each rule is monotone on the interval lattice), hence
independent of witness insertion order.  A contradiction is fatal and carries
the full derivation chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .geom import Polygon3
from .quotients import HomCertificate

RULES = (
    "STICK_UPPER_FROM_WITNESS",
    "BRIDGE_LOWER_FROM_HOM",
    "KUIPER",
    "RANDELL",
    "INTEGER_SQUEEZE",
)


class ContradictionError(ValueError):
    """An interval emptied out; a witness is false or the caller has a bug."""

    def __init__(self, message: str, facts: "KnotFacts | None" = None):
        super().__init__(message)
        self.facts = facts


@dataclass(frozen=True)
class Interval:
    """Integer interval [lo, hi]; hi None encodes an unbounded upper end."""

    lo: int
    hi: int | None = None

    def __post_init__(self):
        if self.hi is not None and self.hi < self.lo:
            raise ContradictionError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def exact(self) -> bool:
        return self.hi is not None and self.hi == self.lo

    def __str__(self) -> str:
        hi = "inf" if self.hi is None else str(self.hi)
        return f"[{self.lo},{hi}]"


@dataclass(frozen=True)
class DerivationStep:
    rule: str
    inputs: str
    result: str

    def __str__(self) -> str:
        return f"{self.rule}: {self.inputs} => {self.result}"


@dataclass(frozen=True)
class KnotFacts:
    """Interval bounds on bridge/superbridge/stick plus their derivation."""

    name: str
    bridge: Interval = Interval(1)
    superbridge: Interval = Interval(2)
    stick: Interval = Interval(3)
    nontrivial: bool = False
    nontrivial_reason: str = ""
    derivation: tuple[DerivationStep, ...] = ()
    witnesses: tuple[str, ...] = ()


def new_facts(name: str) -> KnotFacts:
    """Fresh facts with the definitional minima and unbounded upper ends."""
    return KnotFacts(name=name)


def _tighten(
    facts: KnotFacts,
    attr: str,
    new: Interval,
    rule: str,
    inputs: str,
) -> KnotFacts:
    old: Interval = getattr(facts, attr)
    if new.lo < old.lo or (
        new.hi is not None and old.hi is not None and new.hi > old.hi
    ):
        raise AssertionError("rules must only shrink intervals")
    if new == old:
        return facts
    if new.hi is not None and new.hi < new.lo:
        raise ContradictionError(
            f"{rule} empties {attr} to [{new.lo},{new.hi}] for {facts.name};\n"
            + report(facts),
            facts,
        )
    step = DerivationStep(rule, inputs, f"{attr}: {old} -> {new}")
    return replace(
        facts, **{attr: new}, derivation=facts.derivation + (step,)
    )


def _capped(iv: Interval, hi: int) -> Interval:
    new_hi = hi if iv.hi is None else min(iv.hi, hi)
    if new_hi < iv.lo:
        raise ContradictionError(f"upper bound {hi} below lower bound {iv.lo}")
    return Interval(iv.lo, new_hi)


def _raised(iv: Interval, lo: int) -> Interval:
    new_lo = max(iv.lo, lo)
    if iv.hi is not None and new_lo > iv.hi:
        raise ContradictionError(f"lower bound {lo} above upper bound {iv.hi}")
    return Interval(new_lo, iv.hi)


def add_stick_witness(facts: KnotFacts, poly: Polygon3) -> KnotFacts:
    """A valid n-gon representative shows stick <= n."""
    n = poly.n
    label = poly.name or "unnamed"
    try:
        new = _capped(facts.stick, n)
    except ContradictionError as exc:
        raise ContradictionError(
            f"stick witness {label} ({n}-gon) contradicts stick {facts.stick} "
            f"for {facts.name};\n" + report(facts),
            facts,
        ) from exc
    out = _tighten(
        facts, "stick", new, "STICK_UPPER_FROM_WITNESS", f"{n}-gon witness {label}"
    )
    return replace(out, witnesses=out.witnesses + (f"polygon:{label}:{n}-gon",))


def add_hom_certificate(facts: KnotFacts, cert: HomCertificate) -> KnotFacts:
    """A verified S_n transposition certificate shows bridge >= n-1."""
    try:
        new = _raised(facts.bridge, cert.bridge_bound)
    except ContradictionError as exc:
        raise ContradictionError(
            f"hom certificate (degree {cert.degree}) contradicts bridge "
            f"{facts.bridge} for {facts.name};\n" + report(facts),
            facts,
        ) from exc
    out = _tighten(
        facts,
        "bridge",
        new,
        "BRIDGE_LOWER_FROM_HOM",
        f"S_{cert.degree} certificate {cert.diagram_fingerprint[:12] or 'anon'}",
    )
    tag = f"homcert:{cert.diagram_fingerprint[:12] or 'anon'}:S{cert.degree}"
    return replace(out, witnesses=out.witnesses + (tag,))


def set_nontrivial(facts: KnotFacts, reason: str) -> KnotFacts:
    """Record evidence distinguishing the knot from the unknot.

    Required before KUIPER applies; evidence is an invariant statement such
    as 'determinant 57 != 1' or a homomorphism certificate onto S_n, n >= 3
    (the unknot group is abelian, so no such surjection exists for it).
    """
    if facts.nontrivial:
        return facts
    return replace(
        facts,
        nontrivial=True,
        nontrivial_reason=reason,
        witnesses=facts.witnesses + (f"nontrivial:{reason}",),
    )


def saturate(facts: KnotFacts) -> KnotFacts:
    """Apply KUIPER and RANDELL to their joint fixed point.

    Integer squeezing is built into the interval arithmetic (strict
    inequalities shift by one, halving floors).  Idempotent, and the fixed
    point does not depend on the order the witnesses were added.
    """
    current = facts
    while True:
        before = current
        if current.nontrivial:
            current = _tighten(
                current,
                "superbridge",
                _raised(current.superbridge, current.bridge.lo + 1),
                "KUIPER",
                f"bridge.lo={current.bridge.lo}, nontrivial",
            )
            if current.superbridge.hi is not None:
                current = _tighten(
                    current,
                    "bridge",
                    _capped(current.bridge, current.superbridge.hi - 1),
                    "KUIPER",
                    f"superbridge.hi={current.superbridge.hi}, nontrivial",
                )
        if current.stick.hi is not None:
            current = _tighten(
                current,
                "superbridge",
                _capped(current.superbridge, current.stick.hi // 2),
                "RANDELL",
                f"stick.hi={current.stick.hi}",
            )
        current = _tighten(
            current,
            "stick",
            _raised(current.stick, 2 * current.superbridge.lo),
            "RANDELL",
            f"superbridge.lo={current.superbridge.lo}",
        )
        if current == before:
            return current


def _interval_line(label: str, iv: Interval) -> str:
    if iv.exact:
        return f"  {label}: {iv.lo} (exact)"
    return f"  {label}: {iv}"


def report(facts: KnotFacts) -> str:
    """Human-readable certificate: intervals, witnesses, derivation chain."""
    lines = [f"knot facts: {facts.name or '(unnamed)'}"]
    if facts.nontrivial:
        lines.append(f"  nontrivial: yes ({facts.nontrivial_reason})")
    else:
        lines.append("  nontrivial: not established")
    lines.append(_interval_line("bridge index", facts.bridge))
    lines.append(_interval_line("superbridge index", facts.superbridge))
    lines.append(_interval_line("stick number", facts.stick))
    if facts.witnesses:
        lines.append("witnesses:")
        lines.extend(f"  - {w}" for w in facts.witnesses)
    if facts.derivation:
        lines.append("derivation:")
        lines.extend(
            f"  {k}. {step}" for k, step in enumerate(facts.derivation, start=1)
        )
    return "\n".join(lines) + "\n"


def machine_report(facts: KnotFacts) -> str:
    """Line-oriented format: one FACT line plus STEP lines."""
    lines = [
        f"FACT {facts.name or '-'} bridge={facts.bridge} "
        f"sb={facts.superbridge} stick={facts.stick}"
    ]
    for step in facts.derivation:
        lines.append(f"STEP {step.rule} {step.inputs} => {step.result}")
    return "\n".join(lines) + "\n"
