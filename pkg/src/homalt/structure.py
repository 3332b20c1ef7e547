"""Derived series, ideal spinning, simplicity verdicts and isomorphism obstructions."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum

from .algebra import CheckResult, HomAlgebra, derived_product_space, is_hom_ideal, is_morphism
from .constructions import untwist
from .errors import DimensionError
from .exactlin import Matrix, Subspace, char_poly, format_poly, rank_sequence, rational_roots
from .spinning import (
    NO,
    UNDECIDED,
    YES,
    EnvelopeAlgebra,
    Status,
    StructureVerdict,
    decompose,
    irreducibility,
    pieces_to_subspaces,
)

__all__ = [
    "DerivedSeries",
    "EnvelopeAlgebra",
    "IsoStatus",
    "IsoVerdict",
    "SolvabilityEquivalence",
    "Status",
    "StructureVerdict",
    "derived_series",
    "derived_terms_ideal_check",
    "envelope",
    "hom_ideal_closure",
    "iso_obstruction",
    "kernel_ideal",
    "preconditions",
    "semisimplicity",
    "simplicity",
    "solvability_equivalence_check",
]


def hom_ideal_closure(alg: HomAlgebra, seed: Subspace) -> Subspace:
    """Smallest two-sided Hom-ideal containing ``seed``."""
    if seed.ambient_dim != alg.dim:
        raise DimensionError("seed does not live in this algebra")
    return alg.operator_set.spin(seed.basis)


@dataclass(frozen=True)
class DerivedSeries:
    terms: tuple
    stabilized: bool
    solvable: bool

    @property
    def dims(self) -> list[int]:
        return [t.dim for t in self.terms]

    def term(self, k: int) -> Subspace:
        """``A^(k)``; past the last computed term the series is constant."""
        return self.terms[min(k, len(self.terms) - 1)]


def derived_series(alg: HomAlgebra, max_steps: int | None = None) -> DerivedSeries:
    """Terms ``A^(k+1) = mu(A^(k), A^(k))`` until zero or a repeated term.

    A stabilized series ends with the repeated term, so ``oct_alpha`` gives
    dims ``[8, 8]``.
    Stabilization at a nonzero term is a proof of non-solvability, so
    ``max_steps`` only caps work; ``n + 1`` steps always suffice.
    """
    if max_steps is not None and max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    cap = alg.dim + 1 if max_steps is None else max_steps
    terms = [Subspace.full(alg.dim)]
    stabilized = False
    for _ in range(cap):
        cur = terms[-1]
        if cur.is_zero():
            break
        nxt = derived_product_space(alg, cur)
        terms.append(nxt)
        if nxt == cur:
            stabilized = True
            break
    return DerivedSeries(tuple(terms), stabilized, terms[-1].is_zero())


def derived_terms_ideal_check(alg: HomAlgebra) -> list[CheckResult]:
    """``is_hom_ideal`` on every derived term, in order."""
    return [is_hom_ideal(alg, t) for t in derived_series(alg).terms]


def kernel_ideal(alg: HomAlgebra) -> tuple[Subspace, CheckResult]:
    ker = alg.twist.kernel()
    return ker, is_hom_ideal(alg, ker)


def envelope(alg: HomAlgebra, budget: int = -1) -> EnvelopeAlgebra:
    """Unital matrix algebra generated by the twist and all multiplications.

    ``budget`` caps the closure passes (negative means run to closure); an
    exhausted budget gives a partial span with ``complete`` false.
    """
    return alg.operator_set.envelope(budget)


def preconditions(alg: HomAlgebra) -> tuple:
    notes = []
    if alg.dim == 0:
        notes.append("algebra is zero")
    if alg.twist.is_zero():
        notes.append("twist is the zero map")
    return tuple(notes)


def _product_obstruction(alg: HomAlgebra) -> tuple[Subspace, Subspace]:
    d1 = derived_product_space(alg, Subspace.full(alg.dim))
    return d1, hom_ideal_closure(alg, d1)


def simplicity(alg: HomAlgebra, seed: int = 0, budget: int = 8) -> StructureVerdict:
    """Three-valued verdict on "nonzero product and no proper Hom-ideal"."""
    pre = preconditions(alg)
    if alg.dim == 0:
        return StructureVerdict(NO, note="zero algebra", preconditions=pre)
    d1, closure = _product_obstruction(alg)
    if d1.is_zero():
        v = irreducibility(alg.operator_set, random.Random(seed), budget)
        wit = v.witness if v.status is NO else None
        return StructureVerdict(NO, wit, "product is identically zero (A^(1) = 0)", preconditions=pre)
    if closure.is_proper_nonzero():
        note = "A^(1) is a proper Hom-ideal" if closure == d1 else "ideal generated by A^(1) is proper"
        return StructureVerdict(NO, closure, note, preconditions=pre)
    v = irreducibility(alg.operator_set, random.Random(seed), budget)
    return StructureVerdict(v.status, v.witness, v.note, v.envelope_dim, preconditions=pre)


def semisimplicity(alg: HomAlgebra, seed: int = 0, budget: int = 8) -> StructureVerdict:
    """Verdict on splitting into simple Hom-ideals, with the decomposition found.

    Sound NO certificates: the ideal generated by ``A^(1)`` is not all of A
    (a sum of simple ideals equals its own product ideal), an ideal with no
    invariant complement, or a nonzero envelope radical.
    """
    pre = preconditions(alg)
    n = alg.dim
    if n == 0:
        return StructureVerdict(NO, note="zero algebra", preconditions=pre)
    _, closure = _product_obstruction(alg)
    if not closure.is_full():
        wit = closure if closure.is_proper_nonzero() else None
        return StructureVerdict(
            NO, wit, "ideal generated by A^(1) is not the whole algebra", preconditions=pre
        )
    rng = random.Random(seed)
    cr, pieces, obstruction, note = decompose(alg.operator_set, rng, budget)
    pairs = pieces_to_subspaces(pieces, n)
    comps = tuple(c for c, _ in pairs)
    comp_status = tuple(st for _, st in pairs)
    if cr is NO:
        return StructureVerdict(
            NO, obstruction, note, components=comps, component_status=comp_status,
            completely_reducible=NO, preconditions=pre,
        )
    for c in comps:
        if derived_product_space(alg, c).is_zero():
            return StructureVerdict(
                NO, c, "a component has zero product", components=comps,
                component_status=comp_status, completely_reducible=cr, preconditions=pre,
            )
    status = YES if all(s is YES for s in comp_status) else UNDECIDED
    note = f"{len(comps)} simple component(s)" if status is YES else "some component not decided"
    return StructureVerdict(
        status, None, note, components=comps, component_status=comp_status,
        completely_reducible=cr, preconditions=pre,
    )


@dataclass(frozen=True)
class SolvabilityEquivalence:
    holds: bool
    twisted: DerivedSeries
    induced: DerivedSeries
    term_checks: tuple

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "twisted_dims": self.twisted.dims,
            "induced_dims": self.induced.dims,
            "twisted_solvable": self.twisted.solvable,
            "induced_solvable": self.induced.solvable,
            "term_checks": list(self.term_checks),
        }


def solvability_equivalence_check(alg: HomAlgebra) -> SolvabilityEquivalence:
    """Compare the derived series of ``alg`` with that of its induced algebra.

    Checks ``A_alpha^(k) = alpha^k(A^(k))`` for every computed k and that the
    solvability flags agree.  Raises ``SingularMatrixError`` for a singular twist.
    """
    pair = untwist(alg)
    tw = derived_series(alg)
    ind = derived_series(pair.induced)
    depth = max(len(tw.terms), len(ind.terms))
    checks = []
    power = Matrix.identity(alg.dim)
    for k in range(depth):
        checks.append(tw.term(k) == ind.term(k).image(power))
        power = power @ alg.twist
    holds = all(checks) and tw.solvable == ind.solvable
    return SolvabilityEquivalence(holds, tw, ind, tuple(checks))


class IsoStatus(str, Enum):
    NOT_ISOMORPHIC = "NOT_ISOMORPHIC"
    ISOMORPHIC = "ISOMORPHIC"
    INCONCLUSIVE = "INCONCLUSIVE"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class IsoVerdict:
    status: IsoStatus
    reason: str
    char_polys: tuple = ()
    rank_sequences: dict = field(default_factory=dict)
    candidate_check: CheckResult | None = None

    def to_dict(self) -> dict:
        d = {"status": self.status.value, "reason": self.reason}
        if self.char_polys:
            d["char_polys"] = [format_poly(p) for p in self.char_polys]
        if self.rank_sequences:
            d["rank_sequences"] = {
                str(lam): {"a": a, "b": b} for lam, (a, b) in self.rank_sequences.items()
            }
        if self.candidate_check is not None:
            d["candidate"] = self.candidate_check.to_dict()
        return d


def iso_obstruction(a: HomAlgebra, b: HomAlgebra, candidate: Matrix | None = None) -> IsoVerdict:
    """Refute isomorphism through twist similarity invariants, or verify a candidate.

    An isomorphism ``phi`` satisfies ``phi alpha = beta phi``, so the twists
    must be similar.
    """
    if candidate is not None and (candidate.rows, candidate.cols) != (b.dim, a.dim):
        raise DimensionError(f"candidate must be {b.dim} x {a.dim}")
    if a.dim != b.dim:
        return IsoVerdict(IsoStatus.NOT_ISOMORPHIC, f"dimensions differ ({a.dim} vs {b.dim})")
    pa, pb = char_poly(a.twist), char_poly(b.twist)
    if pa != pb:
        return IsoVerdict(
            IsoStatus.NOT_ISOMORPHIC,
            f"twist characteristic polynomials differ: {format_poly(pa)} vs {format_poly(pb)}",
            (pa, pb),
        )
    ranks = {}
    for lam in rational_roots(pa):
        ra, rb = rank_sequence(a.twist, lam), rank_sequence(b.twist, lam)
        ranks[lam] = (ra, rb)
        if ra != rb:
            return IsoVerdict(
                IsoStatus.NOT_ISOMORPHIC,
                f"rank sequences of (twist - {lam})^i differ",
                (pa, pb),
                ranks,
            )
    if candidate is not None:
        check = is_morphism(candidate, a, b)
        if check and candidate.is_invertible():
            return IsoVerdict(IsoStatus.ISOMORPHIC, "candidate is an invertible morphism", (pa, pb), ranks, check)
        reason = "candidate is not a morphism" if not check else "candidate is singular"
        return IsoVerdict(IsoStatus.INCONCLUSIVE, reason, (pa, pb), ranks, check)
    return IsoVerdict(IsoStatus.INCONCLUSIVE, "twist similarity invariants agree", (pa, pb), ranks)
