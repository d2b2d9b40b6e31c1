"""``chowlab`` command line: every operation with text or JSON output."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence

from .assoc_primes import alpha_sample, ass1_count_principal, ass_top_count_regseq, ufd_extremal_witness
from .chow import associativity_check, div_cycle, torsion_witness
from .cycles import PrimeLabel
from .errors import ChowlabError
from .fields import parse_field
from .groebner import (
    IdealHandle,
    MonomialOrder,
    graded_multiplicity,
    hilbert_series,
    krull_dimension,
)
from .hypersurface import (
    FamilyRing,
    FamilySpec,
    beta_reduce,
    build_family,
    certify_domain,
    factor_bivariate_bruteforce,
    fermat_irreducible,
)
from .poly import RingSpec, parse_poly_list

SCHEMA = "1"


@dataclass
class CommandResult:
    status: str
    payload: dict
    diagnostics: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 0 if self.status == "ok" else 1

    def to_json(self) -> dict:
        doc: dict[str, Any] = {"schema": SCHEMA, "status": self.status}
        doc.update(self.payload)
        if self.diagnostics:
            doc["diagnostics"] = list(self.diagnostics)
        return doc


# -- ring inputs -------------------------------------------------------------


def _add_ring_args(p: argparse.ArgumentParser, family_only: bool = False) -> None:
    g = p.add_argument_group("ring")
    if not family_only:
        g.add_argument("--ring", help="ring JSON file (RingSpec or FamilySpec document)")
    g.add_argument("--family-file", help="FamilySpec JSON file")
    g.add_argument("--family", choices=["fermat", "mixed"])
    g.add_argument("--m", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--d", type=int, default=2)
    g.add_argument("--a", type=int)
    g.add_argument("--b", type=int)
    g.add_argument("--field", default="QQ", help='QQ, GF(p) or "GF(p^k);modulus=..."')


def _load_ring(args) -> RingSpec | FamilyRing:
    path = getattr(args, "ring", None) or args.family_file
    if path:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        if "family" in doc:
            return build_family(FamilySpec.from_json(doc))
        return RingSpec.from_json(doc)
    if args.family:
        if args.m is None or args.n is None:
            raise ChowlabError("--family needs --m and --n")
        spec = FamilySpec(args.family, args.m, args.n, args.d, parse_field(args.field), args.a, args.b)
        return build_family(spec)
    raise ChowlabError("no ring given: use --ring, --family-file or --family")


def _family(args) -> FamilyRing:
    ring = _load_ring(args)
    if not isinstance(ring, FamilyRing):
        raise ChowlabError("this command needs a family ring")
    return ring


def _spec(ring: RingSpec | FamilyRing) -> RingSpec:
    return ring.ring if isinstance(ring, FamilyRing) else ring


def _polys(ring: RingSpec | FamilyRing, texts: Sequence[str] | None) -> list:
    amb = _spec(ring).ambient()
    out = []
    for t in texts or []:
        out.extend(parse_poly_list(amb, t))
    return out


def _order(ring: RingSpec, text: str) -> MonomialOrder:
    if text == "grevlex":
        return MonomialOrder.grevlex(ring)
    if text == "lex":
        return MonomialOrder.lex(ring)
    if text.startswith("elim:"):
        return MonomialOrder.elimination(ring, [v for v in text[5:].split(",") if v])
    raise ChowlabError(f"unknown order {text!r}; use grevlex, lex or elim:VARS")


# -- commands ------------------------------------------------------------------


def cmd_ring(args) -> dict:
    ring = _load_ring(args)
    rs = _spec(ring)
    doc = {"ring": rs.to_json(), "dimension": krull_dimension(IdealHandle(rs))}
    if isinstance(ring, FamilyRing):
        doc["family"] = ring.spec.to_json()
        doc["normalization"] = list(ring.normalization)
    return doc


def cmd_gb(args) -> dict:
    rs = _spec(_load_ring(args))
    ideal = IdealHandle(rs, _polys(rs, args.ideal))
    order = _order(rs.ambient(), args.order)
    gb = ideal.basis(order, strategy=args.strategy)
    return {"order": str(order), "basis": gb.text(), "dimension": krull_dimension(ideal)}


def cmd_hilbert(args) -> dict:
    rs = _spec(_load_ring(args))
    ideal = IdealHandle(rs, _polys(rs, args.ideal))
    hs = hilbert_series(ideal)
    return {
        "numerator": hs.numerator_text(),
        "weights": list(hs.weights),
        "series": hs.coefficients(args.terms),
        "dimension": hs.dimension(),
    }


def cmd_mult(args) -> dict:
    rs = _spec(_load_ring(args))
    ideal = IdealHandle(rs, _polys(rs, args.ideal))
    return {"multiplicity": str(graded_multiplicity(ideal)), "dimension": krull_dimension(ideal)}


def cmd_irreducible(args) -> dict:
    fld = parse_field(args.field)
    beta = fld.element(args.beta)
    verdict = fermat_irreducible(args.m, args.n, beta)
    doc = {"irreducible": verdict.irreducible, "reason": verdict.reason}
    if args.oracle:
        amb = RingSpec.polynomial_ring(fld, ["X", "Y"])
        f = amb.var("Y") ** args.m + (amb.var("X") ** args.n).scale(beta)
        fac = factor_bivariate_bruteforce(f)
        doc["oracle"] = fac.to_json()
        doc["agree"] = fac.is_irreducible() == verdict.irreducible
    return doc


def cmd_family(args) -> dict:
    fr = _family(args)
    cert = certify_domain(fr)
    return {
        "family": fr.spec.to_json(),
        "ring": fr.ring.to_json(),
        "normalization": list(fr.normalization),
        "certificate": cert.to_json(),
    }


def cmd_beta(args) -> dict:
    fr = _family(args)
    v = _polys(fr, [args.v])[0] if args.v else None
    return beta_reduce(fr, _polys(fr, args.u), v).to_json()


def cmd_ass1(args) -> dict:
    ring = _load_ring(args)
    (x,) = _polys(ring, [args.x])
    return ass1_count_principal(ring, x).to_json()


def cmd_asstop(args) -> dict:
    fr = _family(args)
    return ass_top_count_regseq(fr, _polys(fr, args.u)).to_json()


def cmd_alpha(args) -> dict:
    ring = RingSpec.polynomial_ring(parse_field(args.field), ["X", "Y"])
    doc = alpha_sample(ring, args.s, args.trials, args.seed).to_json()
    if args.lambdas:
        lams = [ring.field.element(x) for x in args.lambdas.split(",")]
        u, count = ufd_extremal_witness(ring, len(lams), lams)
        doc["extremal"] = {"u": str(u), "count": count.count}
    return doc


def cmd_div(args) -> dict:
    ring = _load_ring(args)
    rs = _spec(ring)
    (x,) = _polys(ring, [args.x])
    Q = PrimeLabel.from_generators(rs, _polys(ring, [args.q])) if args.q else None
    return {"x": str(x), "cycle": div_cycle(ring, Q, x).to_json()}


def cmd_witness(args) -> dict:
    ring = _load_ring(args)
    rs = _spec(ring)
    P = PrimeLabel.from_generators(rs, _polys(ring, [args.prime]))
    norm = args.normalization.split(",") if args.normalization else None
    w, ledger = torsion_witness(ring, P, normalization=norm)
    doc = w.to_json()
    doc["ledger"] = ledger.to_json()
    return doc


def cmd_assoc_check(args) -> dict:
    ring = _load_ring(args)
    (x,) = _polys(ring, [args.x])
    return associativity_check(ring, x).to_json()


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chowlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON payload")

    def add(name: str, fn: Callable, help: str, family_only: bool = False, ring: bool = True):
        p = sub.add_parser(name, parents=[common], help=help)
        if ring:
            _add_ring_args(p, family_only=family_only)
        p.set_defaults(func=fn)
        return p

    add("ring", cmd_ring, "describe a ring")
    p = add("gb", cmd_gb, "reduced Groebner basis")
    p.add_argument("--ideal", action="append", help="comma-separated generators")
    p.add_argument("--order", default="grevlex")
    p.add_argument("--strategy", default="normal", choices=["normal", "sugar", "fifo"])
    p = add("hilbert", cmd_hilbert, "weighted Hilbert series of ring/I")
    p.add_argument("--ideal", action="append")
    p.add_argument("--terms", type=int, default=12)
    p = add("mult", cmd_mult, "graded multiplicity e* of ring/I")
    p.add_argument("--ideal", action="append")
    p = add("irreducible", cmd_irreducible, "irreducibility of Y^m + beta*X^n", ring=False)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--field", default="QQ")
    p.add_argument("--oracle", action="store_true", help="cross-check by brute-force factorization")
    add("family", cmd_family, "build a family ring and certify it is a domain", family_only=True)
    p = add("beta", cmd_beta, "beta-reduction of A/(u)A", family_only=True)
    p.add_argument("--u", action="append", required=True, help="forms of T_m (repeat or comma-separate)")
    p.add_argument("--v", help="override the complementary form")
    p = add("ass1", cmd_ass1, "height-one associated primes of A/(x)")
    p.add_argument("--x", required=True)
    p = add("asstop", cmd_asstop, "top-height associated primes of A/(u)A", family_only=True)
    p.add_argument("--u", action="append", required=True)
    p = add("alpha", cmd_alpha, "sample A_s(x) over k[X,Y]", ring=False)
    p.add_argument("--field", default="GF(7)")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lambdas", help="comma-separated distinct scalars for the extremal witness")
    p = add("div", cmd_div, "the cycle div(Q, x)")
    p.add_argument("--x", required=True)
    p.add_argument("--q", help="generators of Q (default: the zero ideal)")
    p = add("witness", cmd_witness, "torsion witness n[P] ~ 0")
    p.add_argument("--prime", required=True, help="comma-separated generators of P")
    p.add_argument("--normalization", help="T variables for non-family rings")
    p = add("assoc-check", cmd_assoc_check, "associativity formula for e*(A/x)")
    p.add_argument("--x", required=True)
    return parser


def _text(doc: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    for k, v in doc.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.extend(_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.extend(_text(item, indent + 1))
                lines.append("")
        else:
            lines.append(f"{pad}{k}: {json.dumps(v) if isinstance(v, list) else v}")
    return lines


def _execute(args) -> CommandResult:
    try:
        return CommandResult("ok", args.func(args))
    except ChowlabError as exc:
        return CommandResult("error", {"error": {"kind": exc.kind, "message": str(exc)}}, [str(exc)])
    except (ValueError, KeyError, OSError) as exc:
        return CommandResult("error", {"error": {"kind": "input", "message": str(exc)}}, [str(exc)])


def run(argv: Sequence[str] | None = None) -> CommandResult:
    """Parse and execute; usage errors raise SystemExit(2) from argparse."""
    return _execute(build_parser().parse_args(argv))


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    result = _execute(args)
    if args.json:
        print(json.dumps(result.to_json(), ensure_ascii=False))
    else:
        doc = result.to_json()
        doc.pop("schema")
        for line in _text(doc):
            print(line)
    return result.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
