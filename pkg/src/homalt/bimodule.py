"""Hom-alternative bimodules: axioms, twist correspondence, subbimodules, irreducibility.

Actions are stored as operator matrices: ``left[i]`` is ``v -> rho_l(b_i, v)``
and ``right[i]`` is ``v -> rho_r(v, b_i)``, both acting on coordinate columns
of the module.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .algebra import PASS, CheckResult, HomAlgebra, Witness
from .constructions import untwist, yau_twist
from .errors import CompatibilityError, DimensionError, SingularMatrixError
from .exactlin import ZERO, Matrix, Subspace, Vector, as_vector, is_zero, vec_sub, zero_vector
from .spinning import (
    NO,
    YES,
    OperatorSet,
    StructureVerdict,
    decompose,
    irreducibility,
    pieces_to_subspaces,
)

PATTERNS = ("VAA", "AVA", "AAV")


@dataclass(frozen=True)
class HomBimodule:
    base: HomAlgebra
    dim: int
    module_twist: Matrix
    left: tuple
    right: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n, m = self.base.dim, self.dim
        if (self.module_twist.rows, self.module_twist.cols) != (m, m):
            raise DimensionError(f"module twist must be {m} x {m}")
        if len(self.left) != n or len(self.right) != n:
            raise DimensionError(f"need {n} left and {n} right action operators")
        for op in self.left + self.right:
            if (op.rows, op.cols) != (m, m):
                raise DimensionError(f"action operators must be {m} x {m}")

    @classmethod
    def from_entries(
        cls,
        base: HomAlgebra,
        dim: int,
        left_entries: Iterable,
        right_entries: Iterable,
        module_twist: Matrix | None = None,
        name: str = "",
    ) -> "HomBimodule":
        """Build from sparse tensors ``[i, p, q, c]`` (left) and ``[p, i, q, c]`` (right).

        ``left`` entry means ``rho_l(b_i, v_p)`` has coefficient c on ``v_q``;
        ``right`` entry means ``rho_r(v_p, b_i)`` has coefficient c on ``v_q``.
        """
        n = base.dim
        lt = [[[ZERO] * dim for _ in range(dim)] for _ in range(n)]
        rt = [[[ZERO] * dim for _ in range(dim)] for _ in range(n)]
        for i, p, q, c in left_entries:
            _check_idx((i, n), (p, dim), (q, dim))
            lt[i][q][p] += as_vector([c])[0]
        for p, i, q, c in right_entries:
            _check_idx((p, dim), (i, n), (q, dim))
            rt[i][q][p] += as_vector([c])[0]
        twist = Matrix.identity(dim) if module_twist is None else module_twist
        return cls(
            base,
            dim,
            twist,
            tuple(Matrix.from_rows(r, dim) if dim else Matrix.zeros(0) for r in lt),
            tuple(Matrix.from_rows(r, dim) if dim else Matrix.zeros(0) for r in rt),
            name,
        )

    def left_entries(self) -> list[tuple]:
        return [
            (i, p, q, op[q, p])
            for i, op in enumerate(self.left)
            for p in range(self.dim)
            for q in range(self.dim)
            if op[q, p]
        ]

    def right_entries(self) -> list[tuple]:
        return [
            (p, i, q, op[q, p])
            for i, op in enumerate(self.right)
            for p in range(self.dim)
            for q in range(self.dim)
            if op[q, p]
        ]

    @cached_property
    def operator_set(self) -> OperatorSet:
        return OperatorSet((self.module_twist,) + self.left + self.right, self.dim)

    def act_left(self, a: Sequence, v: Sequence) -> Vector:
        _conform(a, self.base.dim)
        _conform(v, self.dim)
        out = [ZERO] * self.dim
        for c, op in zip(a, self.left):
            if c:
                for q, x in enumerate(op.apply(v)):
                    out[q] += c * x
        return tuple(out)

    def act_right(self, v: Sequence, a: Sequence) -> Vector:
        _conform(a, self.base.dim)
        _conform(v, self.dim)
        out = [ZERO] * self.dim
        for c, op in zip(a, self.right):
            if c:
                for q, x in enumerate(op.apply(v)):
                    out[q] += c * x
        return tuple(out)

    def alpha_v(self, v: Sequence) -> Vector:
        return self.module_twist.apply(v)

    def with_name(self, name: str) -> "HomBimodule":
        return HomBimodule(self.base, self.dim, self.module_twist, self.left, self.right, name)


def _check_idx(*pairs) -> None:
    for idx, bound in pairs:
        if not 0 <= idx < bound:
            raise DimensionError(f"index {idx} out of range 0..{bound - 1}")


def _conform(x: Sequence, n: int) -> None:
    if len(x) != n:
        raise DimensionError(f"expected a vector of length {n}, got {len(x)}")


def regular_bimodule(alg: HomAlgebra) -> HomBimodule:
    """``V = A`` acting on itself by the product, with ``alpha_V = alpha``."""
    n = alg.dim
    return HomBimodule(
        alg,
        n,
        alg.twist,
        tuple(alg.left_operator(i) for i in range(n)),
        tuple(alg.right_operator(i) for i in range(n)),
        f"regular:{alg.name}" if alg.name else "",
    )


def direct_sum_bimodule(a: HomBimodule, b: HomBimodule) -> HomBimodule:
    """``V + W`` over a common base; ``a`` occupies the leading coordinates."""
    if a.base != b.base:
        raise CompatibilityError("bimodules have different base algebras")
    m, k = a.dim, b.dim

    def block(x: Matrix, y: Matrix) -> Matrix:
        rows = [list(x.row(i)) + [ZERO] * k for i in range(m)]
        rows += [[ZERO] * m + list(y.row(i)) for i in range(k)]
        return Matrix.from_rows(rows, m + k) if m + k else Matrix.zeros(0)

    return HomBimodule(
        a.base,
        m + k,
        block(a.module_twist, b.module_twist),
        tuple(block(x, y) for x, y in zip(a.left, b.left)),
        tuple(block(x, y) for x, y in zip(a.right, b.right)),
    )


# --------------------------------------------------------------------------
# module associators


def module_hom_associator(bim: HomBimodule, pattern: str, t1, t2, t3) -> Vector:
    """Module Hom-associator on the slot pattern ``VAA``, ``AVA`` or ``AAV``.

    * ``VAA(v, a, b) = rho_r(rho_r(v, a), alpha b) - rho_r(alpha_V v, mu(a, b))``
    * ``AVA(a, v, b) = rho_r(rho_l(a, v), alpha b) - rho_l(alpha a, rho_r(v, b))``
    * ``AAV(a, b, v) = rho_l(mu(a, b), alpha_V v) - rho_l(alpha a, rho_l(b, v))``
    """
    alg = bim.base
    if pattern == "VAA":
        v, a, b = t1, t2, t3
        return vec_sub(
            bim.act_right(bim.act_right(v, a), alg.alpha(b)),
            bim.act_right(bim.alpha_v(v), alg.mul(a, b)),
        )
    if pattern == "AVA":
        a, v, b = t1, t2, t3
        return vec_sub(
            bim.act_right(bim.act_left(a, v), alg.alpha(b)),
            bim.act_left(alg.alpha(a), bim.act_right(v, b)),
        )
    if pattern == "AAV":
        a, b, v = t1, t2, t3
        return vec_sub(
            bim.act_left(alg.mul(a, b), bim.alpha_v(v)),
            bim.act_left(alg.alpha(a), bim.act_left(b, v)),
        )
    raise ValueError(f"unknown slot pattern {pattern!r}; expected one of {PATTERNS}")


def module_associator(bim: HomBimodule, pattern: str, t1, t2, t3) -> Vector:
    """Untwisted module associator: the same formulas with both twists dropped."""
    alg = bim.base
    if pattern == "VAA":
        v, a, b = t1, t2, t3
        return vec_sub(bim.act_right(bim.act_right(v, a), b), bim.act_right(v, alg.mul(a, b)))
    if pattern == "AVA":
        a, v, b = t1, t2, t3
        return vec_sub(bim.act_right(bim.act_left(a, v), b), bim.act_left(a, bim.act_right(v, b)))
    if pattern == "AAV":
        a, b, v = t1, t2, t3
        return vec_sub(bim.act_left(alg.mul(a, b), v), bim.act_left(a, bim.act_left(b, v)))
    raise ValueError(f"unknown slot pattern {pattern!r}; expected one of {PATTERNS}")


CHAIN_FLAGS = ("avb_eq_neg_vab", "neg_vab_eq_bav", "bav_eq_neg_abv")


@dataclass(frozen=True)
class ModuleAssociatorReport:
    """Flags for the alternating chain ``(a,v,b) = -(v,a,b) = (b,a,v) = -(a,b,v)``.

    ``tables[pattern][(x, y, z)]`` holds every nonzero associator value, keyed by
    the slot indices in pattern order.  ``left_intertwining`` and
    ``right_intertwining`` record ``alpha_V rho = rho (twist x twist)``.
    """

    chain: dict
    left_intertwining: bool
    right_intertwining: bool
    witnesses: dict
    tables: dict = field(compare=False, repr=False, default_factory=dict)

    @property
    def axioms_hold(self) -> bool:
        return all(self.chain.values())

    @property
    def ok(self) -> bool:
        return self.axioms_hold and self.left_intertwining and self.right_intertwining

    def flags(self) -> dict:
        out = dict(self.chain)
        out["left_intertwining"] = self.left_intertwining
        out["right_intertwining"] = self.right_intertwining
        return out

    def to_dict(self) -> dict:
        return {
            "flags": self.flags(),
            "witnesses": {k: w.to_dict() for k, w in self.witnesses.items()},
        }


def _tables(bim: HomBimodule, assoc) -> dict:
    n, m = bim.base.dim, bim.dim
    a = [bim.base.basis_vector(i) for i in range(n)]
    v = [tuple(1 if k == p else 0 for k in range(m)) for p in range(m)]
    out = {pat: {} for pat in PATTERNS}
    for i in range(n):
        for j in range(n):
            for p in range(m):
                for pat, key, args in (
                    ("VAA", (p, i, j), (v[p], a[i], a[j])),
                    ("AVA", (i, p, j), (a[i], v[p], a[j])),
                    ("AAV", (i, j, p), (a[i], a[j], v[p])),
                ):
                    val = assoc(bim, pat, *args)
                    if not is_zero(val):
                        out[pat][key] = val
    return out


def _chain_report(bim: HomBimodule, assoc) -> tuple[dict, dict, dict]:
    n, m = bim.base.dim, bim.dim
    tables = _tables(bim, assoc)
    zero = zero_vector(m)

    def get(pat, key):
        return tables[pat].get(key, zero)

    def neg(x):
        return tuple(-c for c in x)

    chain = dict.fromkeys(CHAIN_FLAGS, True)
    witnesses = {}
    for i in range(n):
        for p in range(m):
            for j in range(n):
                avb = get("AVA", (i, p, j))
                nvab = neg(get("VAA", (p, i, j)))
                bav = get("AAV", (j, i, p))
                nabv = neg(get("AAV", (i, j, p)))
                for flag, lhs, rhs in zip(CHAIN_FLAGS, (avb, nvab, bav), (nvab, bav, nabv)):
                    if chain[flag] and lhs != rhs:
                        chain[flag] = False
                        witnesses[flag] = Witness("chain", (i, p, j), vec_sub(lhs, rhs))
    return chain, witnesses, tables


def _intertwining(bim: HomBimodule, base_twist: Matrix, module_twist: Matrix, ops_l, ops_r):
    """Defects of ``T rho_l(a, v) = rho_l(alpha a, T v)`` and the right analogue.

    ``ops_l``/``ops_r`` are the action operators being tested (e.g. the
    untwisted ones), ``module_twist`` plays ``T``.
    """
    n, m = bim.base.dim, bim.dim
    res = {}
    for side, ops in (("left", ops_l), ("right", ops_r)):
        res[side] = PASS
        for i in range(n):
            a_col = base_twist.col(i)
            combo = Matrix.zeros(m)
            for c, op in zip(a_col, ops):
                if c:
                    combo = combo + op * c
            d = module_twist @ ops[i] - combo @ module_twist
            if not d.is_zero():
                p = next(p for p in range(m) if any(d.col(p)))
                res[side] = CheckResult(False, Witness(side, (i, p), d.col(p)))
                break
    return res["left"], res["right"]


def is_hom_bimodule(bim: HomBimodule) -> ModuleAssociatorReport:
    """Check the alternating chain of module Hom-associators and the twist compatibility."""
    chain, witnesses, tables = _chain_report(bim, module_hom_associator)
    lt, rt = _intertwining(bim, bim.base.twist, bim.module_twist, bim.left, bim.right)
    if not lt:
        witnesses["left_intertwining"] = lt.witness
    if not rt:
        witnesses["right_intertwining"] = rt.witness
    return ModuleAssociatorReport(chain, lt.ok, rt.ok, witnesses, tables)


def is_alternative_bimodule(bim: HomBimodule) -> ModuleAssociatorReport:
    """The alternating chain for ordinary (untwisted) module associators.

    Twists are ignored, so both intertwining flags are reported as true.
    """
    chain, witnesses, tables = _chain_report(bim, module_associator)
    return ModuleAssociatorReport(chain, True, True, witnesses, tables)


# --------------------------------------------------------------------------
# twist correspondence


def untwist_bimodule(bim: HomBimodule, induced_base: HomAlgebra | None = None) -> HomBimodule:
    """Actions ``alpha_V^-1 rho`` over the induced algebra, identity module twist."""
    try:
        inv = bim.module_twist.inverse()
    except SingularMatrixError:
        raise SingularMatrixError("module twist is singular") from None
    expected = untwist(bim.base).induced
    if induced_base is None:
        induced_base = expected
    elif induced_base != expected:
        raise CompatibilityError("induced_base is not the induced algebra of the base")
    m = bim.dim
    return HomBimodule(
        induced_base,
        m,
        Matrix.identity(m),
        tuple(inv @ op for op in bim.left),
        tuple(inv @ op for op in bim.right),
        bim.name,
    )


def twist_bimodule(
    alt_bim: HomBimodule, alpha_v: Matrix, base_twist: Matrix | None = None
) -> HomBimodule:
    """Actions ``alpha_V delta`` over the Yau twist of the base by ``base_twist``.

    ``alt_bim`` must have identity twists.  ``alpha_v`` must satisfy
    ``alpha_V delta_l = delta_l (alpha_A x alpha_V)`` and the right analogue;
    otherwise ``CompatibilityError`` carries the failing pair.
    """
    base = alt_bim.base
    m = alt_bim.dim
    if not base.twist.is_identity() or not alt_bim.module_twist.is_identity():
        raise CompatibilityError("input must have identity module and base twists")
    if (alpha_v.rows, alpha_v.cols) != (m, m):
        raise DimensionError(f"alpha_V must be {m} x {m}")
    base_twist = Matrix.identity(base.dim) if base_twist is None else base_twist
    lt, rt = _intertwining(alt_bim, base_twist, alpha_v, alt_bim.left, alt_bim.right)
    for res in (lt, rt):
        if not res:
            raise CompatibilityError("alpha_V is not compatible with the actions", res.witness)
    twisted = yau_twist(base, base_twist)
    return HomBimodule(
        twisted,
        m,
        alpha_v,
        tuple(alpha_v @ op for op in alt_bim.left),
        tuple(alpha_v @ op for op in alt_bim.right),
        alt_bim.name,
    )


# --------------------------------------------------------------------------
# subbimodules and irreducibility


def subbimodule_spin(bim: HomBimodule, seed: Subspace) -> Subspace:
    """Smallest subbimodule containing ``seed``."""
    if seed.ambient_dim != bim.dim:
        raise DimensionError("seed does not live in this module")
    return bim.operator_set.spin(seed.basis)


def is_subbimodule(bim: HomBimodule, sub: Subspace) -> CheckResult:
    """Invariance under the module twist and both actions; witness names the operator."""
    if sub.ambient_dim != bim.dim:
        raise DimensionError("subspace does not live in this module")
    named = [("twist", None, bim.module_twist)]
    named += [("left", i, op) for i, op in enumerate(bim.left)]
    named += [("right", i, op) for i, op in enumerate(bim.right)]
    for kind, i, op in named:
        for p, v in enumerate(sub.basis):
            w = op.apply(v)
            if not sub.contains_vector(w):
                idx = (p,) if i is None else (i, p)
                return CheckResult(False, Witness(kind, idx, w))
    return PASS


@dataclass(frozen=True)
class KerImReport:
    kernel: Subspace
    image: Subspace
    kernel_flag: CheckResult
    image_flag: CheckResult
    image_asserted: bool

    def to_dict(self) -> dict:
        from .spinning import subspace_to_dict

        return {
            "kernel": subspace_to_dict(self.kernel),
            "image": subspace_to_dict(self.image),
            "kernel_flag": self.kernel_flag.to_dict(),
            "image_flag": self.image_flag.to_dict(),
            "image_asserted": self.image_asserted,
        }


def ker_im_subbimodules(bim: HomBimodule) -> KerImReport:
    """``Ker(alpha_V)`` and ``Im(alpha_V)`` with their subbimodule checks.

    The image claim is only asserted when the base twist is surjective;
    otherwise the flag is measured and reported.
    """
    ker = bim.module_twist.kernel()
    img = bim.module_twist.image()
    return KerImReport(
        ker,
        img,
        is_subbimodule(bim, ker),
        is_subbimodule(bim, img),
        bim.base.twist.is_invertible(),
    )


def bimodule_irreducibility(bim: HomBimodule, seed: int = 0, budget: int = 8) -> StructureVerdict:
    """Three-valued irreducibility verdict plus a decomposition attempt.

    ``completely_reducible`` on the verdict reports whether the module split
    into pieces with invariant complements at every step.
    """
    ops = bim.operator_set
    m = bim.dim
    rng = random.Random(seed)
    v = irreducibility(ops, rng, budget)
    if v.status is YES:
        comps = (Subspace.full(m),) if m else ()
        return StructureVerdict(
            YES, None, v.note, v.envelope_dim, comps, (YES,) * len(comps), YES
        )
    cr, pieces, obstruction, note = decompose(ops, random.Random(seed), budget)
    pairs = pieces_to_subspaces(pieces, m)
    comps = tuple(c for c, _ in pairs)
    statuses = tuple(s for _, s in pairs)
    if v.status is NO:
        full_note = f"{v.note}; {note}"
        return StructureVerdict(NO, v.witness, full_note, v.envelope_dim, comps, statuses, cr)
    return StructureVerdict(v.status, None, f"{v.note}; {note}", v.envelope_dim, comps, statuses, cr)
