"""Command-line front end.

Every command prints a report (human text, or JSON with ``--json``) and exits
with 0 when all assertions hold, 1 when a definite negative contradicts an
assertion, 2 when a verdict is UNDECIDED, and 3 on input errors.  Assertions
are given as ``--expect KEY=VALUE``; the keys each command accepts are listed
under ``assertable`` in its report.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import fixtures, io
from .algebra import HomAlgebra, check_identities, is_hom_ideal, is_morphism, two_sided_unit
from .bimodule import (
    HomBimodule,
    bimodule_irreducibility,
    is_alternative_bimodule,
    is_hom_bimodule,
    ker_im_subbimodules,
    regular_bimodule,
    untwist_bimodule,
)
from .constructions import direct_sum, idempotent_split, quotient, untwist, yau_twist
from .errors import HomAltError
from .exactlin import Matrix, Subspace, canonicalize
from .io import rational_text
from .spinning import StructureVerdict, subspace_to_dict
from .structure import (
    derived_series,
    derived_terms_ideal_check,
    hom_ideal_closure,
    iso_obstruction,
    kernel_ideal,
    semisimplicity,
    simplicity,
    solvability_equivalence_check,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_UNDECIDED, EXIT_INPUT = 0, 1, 2, 3

COMMANDS = (
    "check", "derived", "solvable", "ideal-closure", "simple", "semisimple", "untwist",
    "twist", "directsum", "quotient", "split", "iso", "bimodule-check",
    "bimodule-untwist", "bimodule-irreducible", "fixtures",
)


class InputError(HomAltError):
    pass


@dataclass
class Outcome:
    report: dict
    status: int
    text: str


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


# -- argument resolution -------------------------------------------------------


def load_algebra(ref: str) -> HomAlgebra:
    if ref in fixtures.FIXTURES:
        return fixtures.get(ref)
    path = Path(ref)
    if not path.is_file():
        raise InputError(f"{ref!r} is neither a fixture ({', '.join(fixtures.FIXTURES)}) nor a file")
    obj = io.load(path.read_text(encoding="utf-8"))
    if not isinstance(obj, HomAlgebra):
        raise InputError(f"{ref} holds a bimodule, not an algebra")
    return obj


def load_bimodule(ref: str) -> HomBimodule:
    if ref.startswith("regular:"):
        return regular_bimodule(load_algebra(ref.split(":", 1)[1]))
    path = Path(ref)
    if not path.is_file():
        raise InputError(f"{ref!r} is neither 'regular:<algebra>' nor a file")
    obj = io.load(path.read_text(encoding="utf-8"))
    if not isinstance(obj, HomBimodule):
        raise InputError(f"{ref} holds an algebra, not a bimodule")
    return obj


def parse_matrix(text: str, n: int | None = None) -> Matrix:
    if text.startswith("twist-of:"):
        return load_algebra(text.split(":", 1)[1]).twist
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"matrix is not JSON: {exc.msg}") from None
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError("matrix must be a JSON list of rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InputError("matrix rows have different lengths")
    m = Matrix.from_rows([[io._rational(x, f"matrix[{i}]") for x in r] for i, r in enumerate(rows)], width)
    if n is not None and (m.rows, m.cols) != (n, n):
        raise InputError(f"matrix must be {n} x {n}")
    return m


def parse_vectors(text: str, n: int) -> Subspace:
    try:
        vecs = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"vectors are not JSON: {exc.msg}") from None
    if not isinstance(vecs, list) or not all(isinstance(v, list) for v in vecs):
        raise InputError("vectors must be a JSON list of coordinate lists")
    parsed = []
    for i, v in enumerate(vecs):
        if len(v) != n:
            raise InputError(f"vector {i} has length {len(v)}, expected {n}")
        parsed.append([io._rational(x, f"vector[{i}]") for x in v])
    return canonicalize(parsed, n)


def _matrix_rows(m: Matrix) -> list:
    return [[rational_text(x) for x in m.row(i)] for i in range(m.rows)]


def _vec(v) -> list:
    return [rational_text(x) for x in v]


def _labelled(sub: Subspace, alg: HomAlgebra | None) -> dict:
    d = subspace_to_dict(sub)
    d["basis"] = [_vec(b) for b in sub.basis]
    if alg is not None:
        d["labels"] = [_describe(b, alg.labels) for b in sub.basis]
    return d


def _describe(v, labels) -> str:
    terms = []
    for c, lab in zip(v, labels):
        if not c:
            continue
        coef = "" if c == 1 else "-" if c == -1 else f"{rational_text(c)}*"
        terms.append(f"{coef}{lab}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


def _verdict(v: StructureVerdict, alg: HomAlgebra | None) -> dict:
    d = v.to_dict()
    if v.witness is not None:
        d["witness"] = _labelled(v.witness, alg)
    if v.components:
        d["components"] = [_labelled(c, alg) for c in v.components]
    return d


def _save(obj, path: str | None, comment: str = "") -> dict:
    if not path:
        return {}
    Path(path).write_text(io.save(obj, comment), encoding="utf-8")
    return {"saved": path}


# -- command handlers ----------------------------------------------------------
# Each returns (result, assertable, primary status or None).


def cmd_check(ns):
    alg = load_algebra(ns.algebra)
    rep = check_identities(alg)
    ker, kflag = kernel_ideal(alg)
    result = rep.to_dict()
    result["hom_alternative"] = rep.hom_alternative
    result["kernel_ideal"] = {"kernel": _labelled(ker, alg), "is_ideal": kflag.to_dict()}
    if alg.name in fixtures.COMMENTS:
        result["comment"] = fixtures.COMMENTS[alg.name]
    assertable = dict(rep.flags(), hom_alternative=rep.hom_alternative, kernel_ideal=kflag.ok)
    return result, assertable, None


def cmd_derived(ns):
    alg = load_algebra(ns.algebra)
    ds = derived_series(alg, ns.max_steps)
    flags = derived_terms_ideal_check(alg)
    result = {
        "dims": ds.dims,
        "solvable": ds.solvable,
        "stabilized": ds.stabilized,
        "terms": [_labelled(t, alg) for t in ds.terms],
        "terms_are_ideals": [f.to_dict() for f in flags],
    }
    assertable = {"solvable": ds.solvable, "stabilized": ds.stabilized,
                  "terms_are_ideals": all(f.ok for f in flags)}
    return result, assertable, None


def cmd_solvable(ns):
    alg = load_algebra(ns.algebra)
    ds = derived_series(alg)
    result = {"dims": ds.dims, "solvable": ds.solvable}
    assertable = {"solvable": ds.solvable}
    if alg.twist.is_invertible():
        eq = solvability_equivalence_check(alg)
        result["equivalence"] = eq.to_dict()
        assertable["equivalence"] = eq.holds
    else:
        result["equivalence"] = "not checked: twist is singular"
    return result, assertable, None


def cmd_ideal_closure(ns):
    alg = load_algebra(ns.algebra)
    seed = parse_vectors(ns.vectors, alg.dim)
    closure = hom_ideal_closure(alg, seed)
    flag = is_hom_ideal(alg, closure)
    result = {"seed": _labelled(seed, alg), "closure": _labelled(closure, alg), "is_ideal": flag.to_dict()}
    return result, {"proper": closure.is_proper_nonzero(), "is_ideal": flag.ok}, None


def cmd_simple(ns):
    alg = load_algebra(ns.algebra)
    v = simplicity(alg, ns.seed, ns.budget)
    return _verdict(v, alg), {"status": v.status.value}, v.status.value


def cmd_semisimple(ns):
    alg = load_algebra(ns.algebra)
    v = semisimplicity(alg, ns.seed, ns.budget)
    return _verdict(v, alg), {"status": v.status.value}, v.status.value


def cmd_untwist(ns):
    alg = load_algebra(ns.algebra)
    pair = untwist(alg)
    ind = pair.induced
    rep = check_identities(ind)
    unit = two_sided_unit(ind)
    auto = is_morphism(alg.twist, ind, ind)
    result = {
        "induced": io.algebra_to_document(ind),
        "identities": rep.to_dict(),
        "unit": None if unit is None else _describe(unit, ind.labels),
        "twist_is_automorphism": auto.to_dict(),
        "retwist_matches": yau_twist(ind, alg.twist) == alg,
    }
    result.update(_save(ind, ns.save))
    assertable = dict(rep.flags(), alternative=rep.left_alternative and rep.right_alternative,
                      unital=unit is not None, twist_is_automorphism=auto.ok,
                      retwist_matches=result["retwist_matches"])
    return result, assertable, None


def cmd_twist(ns):
    alg = load_algebra(ns.algebra)
    beta = parse_matrix(ns.by, alg.dim)
    out = yau_twist(alg, beta)
    rep = check_identities(out)
    result = {"twisted": io.algebra_to_document(out), "identities": rep.to_dict()}
    result.update(_save(out, ns.save))
    return result, dict(rep.flags(), hom_alternative=rep.hom_alternative), None


def cmd_directsum(ns):
    a, b = load_algebra(ns.left), load_algebra(ns.right)
    out = direct_sum(a, b)
    rep = check_identities(out)
    result = {"sum": io.algebra_to_document(out), "identities": rep.to_dict()}
    result.update(_save(out, ns.save))
    return result, dict(rep.flags(), hom_alternative=rep.hom_alternative), None


def cmd_quotient(ns):
    alg = load_algebra(ns.algebra)
    ideal = parse_vectors(ns.ideal, alg.dim)
    q, proj = quotient(alg, ideal)
    mor = is_morphism(proj, alg, q)
    rep = check_identities(q)
    result = {
        "quotient": io.algebra_to_document(q),
        "projection": _matrix_rows(proj),
        "projection_is_morphism": mor.to_dict(),
        "identities": rep.to_dict(),
    }
    result.update(_save(q, ns.save))
    return result, dict(rep.flags(), projection_is_morphism=mor.ok), None


def cmd_split(ns):
    alg = load_algebra(ns.algebra)
    s = idempotent_split(alg)
    result = {
        "kernel": _labelled(s.kernel, alg),
        "image": _labelled(s.image, alg),
        "dims": [s.part_quotient.dim, s.part_kernel.dim],
        "iso_witness": _matrix_rows(s.iso_witness),
        "iso_is_morphism": s.check.to_dict(),
        "verified": s.verified,
    }
    return result, {"verified": s.verified}, None


def cmd_iso(ns):
    a, b = load_algebra(ns.left), load_algebra(ns.right)
    cand = parse_matrix(ns.candidate) if ns.candidate else None
    v = iso_obstruction(a, b, cand)
    return v.to_dict(), {"status": v.status.value}, None


def cmd_bimodule_check(ns):
    bim = load_bimodule(ns.bimodule)
    rep = is_hom_bimodule(bim)
    ki = ker_im_subbimodules(bim)
    result = rep.to_dict()
    result["ker_im"] = ki.to_dict()
    assertable = dict(rep.flags(), hom_bimodule=rep.ok, kernel_subbimodule=ki.kernel_flag.ok)
    if ki.image_asserted:
        assertable["image_subbimodule"] = ki.image_flag.ok
    return result, assertable, None


def cmd_bimodule_untwist(ns):
    bim = load_bimodule(ns.bimodule)
    out = untwist_bimodule(bim)
    rep = is_alternative_bimodule(out)
    result = {
        "untwisted": io.bimodule_to_document(out),
        "alternative_bimodule": rep.to_dict(),
        "is_regular_of_induced": out == regular_bimodule(out.base),
    }
    result.update(_save(out, ns.save))
    assertable = {"alternative_bimodule": rep.axioms_hold, "is_regular_of_induced": result["is_regular_of_induced"]}
    return result, assertable, None


def cmd_bimodule_irreducible(ns):
    bim = load_bimodule(ns.bimodule)
    v = bimodule_irreducibility(bim, ns.seed, ns.budget)
    base = bim.base if bim.dim == bim.base.dim else None
    result = _verdict(v, base)
    assertable = {"status": v.status.value}
    if v.completely_reducible is not None:
        assertable["completely_reducible"] = v.completely_reducible.value
    return result, assertable, v.status.value


def cmd_fixtures(ns):
    if ns.name:
        alg = load_algebra(ns.name)
        return io.algebra_to_document(alg, fixtures.COMMENTS.get(ns.name, "")), {}, None
    result = {name: fixtures.DESCRIPTIONS[name] for name in fixtures.FIXTURES}
    return result, {}, None


HANDLERS = {
    "check": cmd_check,
    "derived": cmd_derived,
    "solvable": cmd_solvable,
    "ideal-closure": cmd_ideal_closure,
    "simple": cmd_simple,
    "semisimple": cmd_semisimple,
    "untwist": cmd_untwist,
    "twist": cmd_twist,
    "directsum": cmd_directsum,
    "quotient": cmd_quotient,
    "split": cmd_split,
    "iso": cmd_iso,
    "bimodule-check": cmd_bimodule_check,
    "bimodule-untwist": cmd_bimodule_untwist,
    "bimodule-irreducible": cmd_bimodule_irreducible,
    "fixtures": cmd_fixtures,
}


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized candidate search")
    common.add_argument("--budget", type=int, default=8, help="random envelope elements to try")
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--timing", action="store_true", help="include elapsed time in the report")
    common.add_argument("--expect", action="append", default=[], metavar="KEY=VALUE",
                        help="assert a report value; repeatable")

    parser = _Parser(prog="homalt", description="Exact toolkit for Hom-alternative algebras.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text, *positionals):
        p = sub.add_parser(name, help=help_text, parents=[common])
        for pos in positionals:
            p.add_argument(pos)
        return p

    add("check", "check multiplicativity and the Hom-alternative identities", "algebra")
    p = add("derived", "derived series and solvability", "algebra")
    p.add_argument("--max-steps", type=int, default=None)
    add("solvable", "solvability, compared with the induced algebra", "algebra")
    p = add("ideal-closure", "smallest Hom-ideal containing given vectors", "algebra")
    p.add_argument("--vectors", required=True, help='JSON list of coordinate lists, e.g. [["1","0","0"]]')
    add("simple", "simplicity verdict", "algebra")
    add("semisimple", "semisimplicity verdict with decomposition", "algebra")
    p = add("untwist", "induced algebra of an invertible-twist algebra", "algebra")
    p.add_argument("--save")
    p = add("twist", "Yau twist by a self-morphism", "algebra")
    p.add_argument("--by", required=True, help="JSON rows or twist-of:<algebra>")
    p.add_argument("--save")
    p = add("directsum", "direct sum of two algebras", "left", "right")
    p.add_argument("--save")
    p = add("quotient", "quotient by a Hom-ideal", "algebra")
    p.add_argument("--ideal", required=True, help="JSON list of spanning vectors")
    p.add_argument("--save")
    add("split", "split an algebra with idempotent twist", "algebra")
    p = add("iso", "isomorphism obstruction or certificate", "left", "right")
    p.add_argument("--candidate", help="JSON rows of a candidate isomorphism")
    add("bimodule-check", "Hom-alternative bimodule axioms", "bimodule")
    p = add("bimodule-untwist", "untwist a bimodule with invertible module twist", "bimodule")
    p.add_argument("--save")
    add("bimodule-irreducible", "irreducibility verdict and decomposition", "bimodule")
    p = add("fixtures", "list embedded fixtures or print one as a document")
    p.add_argument("name", nargs="?")
    return parser


def _parse_expect(items: list[str]) -> dict:
    out = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep or not key:
            raise InputError(f"--expect needs KEY=VALUE, got {item!r}")
        low = val.strip().lower()
        if low in ("true", "yes", "1", "ok"):
            out[key] = True
        elif low in ("false", "no", "0", "fail"):
            out[key] = False
        else:
            out[key] = val.strip().upper()
    return out


def _matches(expected, actual) -> bool:
    if isinstance(actual, str) and isinstance(expected, bool):
        expected = "CERTIFIED_YES" if expected else "CERTIFIED_NO"
    return expected == actual


def _input_digests(ns) -> dict:
    out = {}
    for attr in ("algebra", "left", "right"):
        ref = getattr(ns, attr, None)
        if ref:
            out[ref] = io.digest(load_algebra(ref))
    if getattr(ns, "bimodule", None):
        out[ns.bimodule] = io.digest(load_bimodule(ns.bimodule))
    return out


def execute(ns) -> Outcome:
    start = time.perf_counter()
    expect = _parse_expect(ns.expect)
    result, assertable, primary = HANDLERS[ns.command](ns)
    unknown = sorted(set(expect) - set(assertable))
    if unknown:
        raise InputError(f"cannot assert {', '.join(unknown)}; assertable: {', '.join(assertable) or 'none'}")
    failed = {k: assertable[k] for k, v in expect.items() if not _matches(v, assertable[k])}
    if any(v == "UNDECIDED" for v in failed.values()):
        status = EXIT_UNDECIDED
    elif failed:
        status = EXIT_NEGATIVE
    elif primary == "UNDECIDED":
        status = EXIT_UNDECIDED
    else:
        status = EXIT_OK
    report = {
        "command": " ".join(ns.argv),
        "inputs": _input_digests(ns),
        "seed": ns.seed,
        "budget": ns.budget,
        "result": result,
        "assertable": assertable,
    }
    if expect:
        report["expectations"] = {k: {"expected": v, "ok": k not in failed} for k, v in expect.items()}
    report["exit"] = status
    if ns.timing:
        report["elapsed_s"] = round(time.perf_counter() - start, 4)
    return Outcome(report, status, render(report))


def render(report: dict) -> str:
    lines = []

    def emit(key, value, indent):
        pad = "  " * indent
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            for k, v in value.items():
                emit(k, v, indent + 1)
        elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
            lines.append(f"{pad}{key}:")
            for i, v in enumerate(value):
                emit(f"[{i}]", v, indent + 1)
        else:
            lines.append(f"{pad}{key}: {_scalar(value)}")

    for k, v in report.items():
        emit(k, v, 0)
    return "\n".join(lines) + "\n"


def _scalar(value) -> str:
    if value is True:
        return "yes"
    if value is False:
        return "no"
    if value is None:
        return "-"
    if isinstance(value, list):
        return "[" + ", ".join(_scalar(v) for v in value) + "]"
    return str(value)


def run(command: str, arguments=(), seed: int | None = None, budget: int | None = None) -> Outcome:
    """Run one command in-process; input errors give status 3 instead of raising."""
    argv = [command, *arguments]
    if seed is not None:
        argv += ["--seed", str(seed)]
    if budget is not None:
        argv += ["--budget", str(budget)]
    return _run_argv(argv)


def _run_argv(argv: list[str]) -> Outcome:
    try:
        ns = build_parser().parse_args(argv)
        ns.argv = list(argv)
        if ns.budget < 0:
            raise InputError("--budget must be non-negative")
        return execute(ns)
    except (HomAltError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        report = {"command": " ".join(argv), "error": type(exc).__name__, "message": str(msg), "exit": EXIT_INPUT}
        witness = getattr(exc, "witness", None)
        if witness is not None:
            report["witness"] = witness.to_dict()
        return Outcome(report, EXIT_INPUT, render(report))


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if not argv or argv[0] in ("-h", "--help"):
        build_parser().print_help()
        return EXIT_OK if argv else EXIT_INPUT
    if len(argv) >= 2 and argv[1] in ("-h", "--help"):
        try:
            build_parser().parse_args(argv)
        except SystemExit:
            return EXIT_OK
    out = _run_argv(argv)
    wants_json = "--json" in argv
    if wants_json:
        sys.stdout.write(json.dumps(out.report, indent=1) + "\n")
    else:
        stream = sys.stderr if out.status == EXIT_INPUT else sys.stdout
        stream.write(out.text)
    return out.status


if __name__ == "__main__":
    raise SystemExit(main())
