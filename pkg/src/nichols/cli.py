"""Command-line front end.

Every subcommand prints one JSON document on stdout.  Exit codes: 0 on
success, 2 for malformed input, 3 when the input is well formed but the
requested operation refuses it.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import antisym
from .braiding import (BraidingMatrix, cartan_type, connected_components, fl_witness,
                       is_locally_fl, is_symmetric)
from .cartan import (diagram_label, graded_hilbert, is_finite_type, nichols_dimension,
                     symmetrizer, top_degree)
from .errors import NotSymmetrizableError, PreconditionError, ResourceGuardError
from .freebraided import is_primitive, serre_closed_form, serre_condition_value, serre_element
from .realization import classify_zp
from .twisting import twisted_alpha, symmetrize

EXIT_OK, EXIT_MALFORMED, EXIT_REFUSED = 0, 2, 3


class MalformedInput(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_braiding(path) -> BraidingMatrix:
    if path is None:
        raise MalformedInput("--input is required")
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not valid JSON: {exc}") from None
    try:
        return BraidingMatrix.from_json(data)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None


def _require_cartan(b):
    ct = cartan_type(b)
    if ct is None:
        raise PreconditionError("braiding is not of Cartan type")
    return ct


def _components_json(b, ct):
    out = []
    for comp in ct.gcm.components():
        sub = ct.gcm.submatrix(comp)
        out.append({"vertices": comp, "diagram": diagram_label(sub),
                    "finite_type": is_finite_type(sub)})
    return out


def cartan_report(b: BraidingMatrix) -> dict:
    ct = _require_cartan(b)
    return {"gcm": ct.gcm.to_list(), "orders": list(ct.diagonal_orders),
            "components": connected_components(b), "symmetric": is_symmetric(b)}


def dim_report(b: BraidingMatrix) -> dict:
    ct = _require_cartan(b)
    finite = is_finite_type(ct.gcm)
    out = {"finite_type": finite, "components": _components_json(b, ct),
           "dimension": None, "hilbert": None}
    if finite:
        out["dimension"] = str(nichols_dimension(b, ct))
        try:
            out["hilbert"] = graded_hilbert(b, ct)
        except PreconditionError:
            pass
    return out


def twist_report(b: BraidingMatrix) -> dict:
    m, c = symmetrize(b)
    return {"group": list(m.group.invariant_factors), "cocycle": [list(r) for r in c.c],
            "alpha_twisted": [list(r) for r in twisted_alpha(m, c)], "symmetric": True}


def antisym_report(b: BraidingMatrix, degree_cap: int) -> dict:
    """Graded ranks up to the cap; the total is known once a rank vanishes."""
    ranks = [1]
    try:
        ranks = antisym.graded_ranks(b, degree_cap)
    except ResourceGuardError:
        ranks = antisym._ranks_until_guard(b, degree_cap)
    if 0 in ranks:
        ranks = ranks[:ranks.index(0) + 1]
        return antisym.AntisymResult(tuple(ranks), sum(ranks), False).to_json()
    return antisym.AntisymResult(tuple(ranks), None, True).to_json()


def serre_report(b: BraidingMatrix, i: int, j: int) -> dict:
    n = b.theta
    if not (0 <= i < n and 0 <= j < n) or i == j:
        raise MalformedInput(f"need distinct indices in [0, {n}), got i={i}, j={j}")
    ct = _require_cartan(b)
    a_ij = ct.gcm.a[i][j]
    r = 1 - a_ij
    z = serre_element(b, i, j, a_ij)
    value = serre_condition_value(b, i, j, r)
    return {"i": i, "j": j, "a_ij": a_ij, "r": r,
            "element": [{"word": list(w), "coeff": list(c.coeffs)} for w, c in sorted(z.terms.items())],
            "level": b.level,
            "condition_value": str(value), "condition_holds": value.is_one(),
            "matches_closed_form": z == serre_closed_form(b, i, j, r),
            "primitive": is_primitive(z)}


def analyze_report(b: BraidingMatrix, oracle: bool = False,
                   degree_cap: int = antisym.DEFAULT_DEGREE_CAP) -> dict:
    ct = _require_cartan(b)
    gcm = ct.gcm
    d = symmetrizer(gcm)
    finite = is_finite_type(gcm)
    odd = b.odd_order
    out = {"input": b.to_json(), "gcm": gcm.to_list(), "orders": list(ct.diagonal_orders),
           "components": _components_json(b, ct), "finite_type": finite,
           "symmetric": is_symmetric(b), "symmetrizable": d is not None,
           "symmetrizer": list(d) if d else None, "odd_order": odd,
           "fl_type": None, "locally_fl": None, "twist": None,
           "dimension": None, "hilbert": None, "top_degree": None}
    if odd:
        try:
            w = fl_witness(b, ct)
            out["fl_type"] = None if w is None else {"d": list(w.d), "q": str(w.q)}
        except NotSymmetrizableError:
            out["fl_type"] = None
        out["locally_fl"] = is_locally_fl(b, ct)
        if not is_symmetric(b):
            out["twist"] = twist_report(b)
    if finite and odd:
        out["dimension"] = str(nichols_dimension(b, ct))
        out["top_degree"] = top_degree(ct)
        try:
            out["hilbert"] = graded_hilbert(b, ct)
        except PreconditionError:
            pass
    if oracle and not finite:
        out["oracle"] = out["oracle_match"] = None
    elif oracle:
        res = antisym.total_dimension(b, ct, degree_cap)
        out["oracle"] = res.to_json()
        if res.capped:
            out["oracle_match"] = None
        else:
            match = out["dimension"] is not None and str(res.total) == out["dimension"]
            if out["hilbert"] is not None:
                h = out["hilbert"]
                match = match and list(res.ranks[:len(h)]) == h
            out["oracle_match"] = match
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nichols", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_text, needs_input=True):
        p = sub.add_parser(name, help=help_text)
        if needs_input:
            p.add_argument("--input", metavar="PATH", help="braiding JSON file")
        p.add_argument("--golden", metavar="DIR", help="also write the report into DIR")
        return p

    p = add("analyze", "full pipeline report")
    p.add_argument("--oracle", action="store_true", help="cross-check with antisymmetrizer ranks")
    p.add_argument("--degree-cap", type=int, default=antisym.DEFAULT_DEGREE_CAP)
    add("cartan-type", "generalized Cartan matrix of a braiding")
    add("dim", "Nichols dimension and Hilbert series")
    add("twist-symmetrize", "cocycle twist to a symmetric braiding")
    p = add("zp-classify", "classify realizations over Z/(p)", needs_input=False)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--max-rank", type=int, default=6)
    p = add("serre-check", "quantum Serre element and its primitivity")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p = add("antisym-dim", "graded ranks of quantum antisymmetrizers")
    p.add_argument("--degree-cap", type=int, default=antisym.DEFAULT_DEGREE_CAP)
    return ap


def run(args) -> dict:
    if args.command == "zp-classify":
        return classify_zp(args.p, args.max_rank)
    b = load_braiding(args.input)
    if args.command == "cartan-type":
        return cartan_report(b)
    if args.command == "dim":
        return dim_report(b)
    if args.command == "twist-symmetrize":
        return twist_report(b)
    if args.command == "serre-check":
        return serre_report(b, args.i, args.j)
    if args.command == "antisym-dim":
        if args.degree_cap < 0:
            raise MalformedInput("--degree-cap must be non-negative")
        return antisym_report(b, args.degree_cap)
    return analyze_report(b, args.oracle, args.degree_cap)


def golden_name(args) -> str:
    if args.command == "zp-classify":
        return f"zp-classify-p{args.p}.json"
    stem = Path(args.input).stem
    extra = f"-{args.i}-{args.j}" if args.command == "serre-check" else ""
    return f"{args.command}-{stem}{extra}.json"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = run(args)
    except MalformedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (PreconditionError, ResourceGuardError) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    text = dumps(report)
    sys.stdout.write(text)
    if args.golden:
        out = Path(args.golden)
        out.mkdir(parents=True, exist_ok=True)
        (out / golden_name(args)).write_text(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
