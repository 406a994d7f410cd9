"""Command line front end.

Commands read JSON space files, run the exact computations, and emit
deterministic reports: same input bytes, same output bytes.  Rationals are
serialized as "p/q" strings, never floats.

Exit codes: 0 success, 1 unreadable input (file/JSON/polynomial syntax),
2 semantic validation, 3 subset is not a union of strata, 4 incompatible
minimal values, 5 moment condition failed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import assignops, builders, cochain, coeffsys, momentpoly
from .builders import DescriptionError, SpaceDescription, WeightMatrix
from .errors import (
    ArityError,
    ConditionFailedError,
    CycleError,
    IncompatibleMinimalValuesError,
    MissingMinimalValueError,
    NonzeroConstantTermError,
    NotOpenError,
    NotUnionOfStrataError,
    ParseError,
    StabilizerMonotonicityError,
    UnknownIdError,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VALIDATION = 2
EXIT_SUBSET = 3
EXIT_INCOMPATIBLE = 4
EXIT_CONDITION = 5


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _load_space(path: str):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as e:
        raise _InputError(f"cannot read {path}: {e.strerror}") from None
    try:
        obj = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise _InputError(f"{path}: not valid JSON ({e})") from None
    desc = SpaceDescription.from_json_dict(obj)
    space, system = builders.build_from_description(desc)
    return space, system, _digest(raw)


class _InputError(Exception):
    """Unreadable input file; maps to exit code 1."""


def _rat_list(values) -> List[str]:
    return [str(Fraction(v)) for v in values]


def _vector_table(system, values: Dict[str, Tuple[Fraction, ...]]) -> Dict[str, List[str]]:
    return {x: _rat_list(values[x]) for x in sorted(values)}


def _format_assignment(values: Dict[str, List[str]]) -> str:
    return " ".join(f"{x}=[{','.join(v)}]" for x, v in sorted(values.items()))


# ---------------------------------------------------------------------------
# command handlers: each returns (report dict, text lines)

def cmd_assignments(args) -> Tuple[dict, List[str]]:
    space, system, digest = _load_space(args.file)
    basis = assignops.assignment_basis(system)
    report = {
        "command": "assignments",
        "input_digest": digest,
        "dim": len(basis),
        "basis": [_vector_table(system, b.values) for b in basis],
    }
    lines = [f"dim A = {len(basis)}"]
    for i, b in enumerate(basis):
        lines.append(f"basis {i + 1}: {_format_assignment(report['basis'][i])}")
    return report, lines


def _cochain_blocks(c) -> Dict[str, List[str]]:
    return {
        ",".join(t): _rat_list(vec)
        for t, vec in c.as_dict().items()
    }


def _cohomology_block(system, degree: int, strict: bool, relative) -> dict:
    if relative is None:
        res = cochain.cohomology(system, degree, strict=strict)
    else:
        res = cochain.relative_cohomology(system, relative, degree, strict=strict)
    return {
        "dim": res.dim,
        "representatives": [_cochain_blocks(r) for r in res.representatives],
        "diagnostics": dict(sorted(res.diagnostics.items())),
    }


def cmd_cohomology(args) -> Tuple[dict, List[str]]:
    space, system, digest = _load_space(args.file)
    relative = None
    if args.relative:
        relative = frozenset(s for s in args.relative.split(",") if s)
    which = {"full": [False], "reduced": [True], "both": [True, False]}[args.complex]
    report = {
        "command": "cohomology",
        "input_digest": digest,
        "degree": args.degree,
        "relative": sorted(relative) if relative else None,
        "results": {},
    }
    lines = []
    for strict in which:
        name = "reduced" if strict else "full"
        block = _cohomology_block(system, args.degree, strict, relative)
        report["results"][name] = block
        prefix = "HA" if relative is None else "HA_rel"
        lines.append(f"{name}: dim {prefix}^{args.degree} = {block['dim']}")
        for i, rep in enumerate(block["representatives"]):
            shown = " ".join(
                f"({t})=[{','.join(vec)}]" for t, vec in sorted(rep.items())
            )
            lines.append(f"  rep {i + 1}: {shown}")
    if len(which) == 2:
        dims = {name: blk["dim"] for name, blk in report["results"].items()}
        agree = dims["full"] == dims["reduced"]
        report["agreement"] = agree
        lines.append(f"full/reduced agreement: {'yes' if agree else 'NO'}")
    return report, lines


def _parse_weight_rows(text: str) -> List[List[int]]:
    rows = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            rows.append([int(x) for x in chunk.split(",")])
        except ValueError:
            raise _InputError(f"bad weight row {chunk!r}") from None
    if not rows:
        raise _InputError("no weight rows given")
    return rows


_POLYTOPE_PRESETS = ("segment", "triangle", "square", "pentagon", "cube")


def cmd_build(args) -> Tuple[dict, List[str]]:
    params: dict
    if args.kind == "linear-rep":
        if not args.weights:
            raise _InputError("linear-rep needs --weights")
        rows = _parse_weight_rows(args.weights)
        w = WeightMatrix.from_rows(rows)
        space, system = builders.build_linear_rep(w)
        params = {"weights": rows}
    elif args.kind == "sphere-product":
        if not args.lambdas or args.n is None:
            raise _InputError("sphere-product needs --n and --lambdas")
        rows = _parse_weight_rows(args.lambdas)
        space, system = builders.build_sphere_product(args.n, rows)
        params = {"n": args.n, "lambdas": rows}
    elif args.kind == "polytope":
        chosen = [p for p in _POLYTOPE_PRESETS if getattr(args, p)]
        if len(chosen) + (args.file is not None) != 1:
            raise _InputError(
                "polytope needs exactly one of "
                + ", ".join("--" + p for p in _POLYTOPE_PRESETS)
                + ", --file"
            )
        if chosen:
            data = builders.preset_polytope(chosen[0])
            params = {"preset": chosen[0]}
        else:
            try:
                with open(args.file, "rb") as fh:
                    raw = fh.read()
                obj = json.loads(raw.decode("utf-8"))
                data = builders.PolytopeData.make(
                    obj["dim"], obj["facets"], obj["vertices"]
                )
            except OSError as e:
                raise _InputError(f"cannot read {args.file}: {e.strerror}") from None
            except (json.JSONDecodeError, UnicodeDecodeError, KeyError, TypeError, ValueError) as e:
                raise _InputError(f"{args.file}: malformed polytope file ({e})") from None
            params = {"file_digest": _digest(raw)}
        space, system = builders.build_polytope(data)
    elif args.kind == "product":
        if not args.left or not args.right:
            raise _InputError("product needs --left and --right")
        s1, v1, d1 = _load_space(args.left)
        s2, v2, d2 = _load_space(args.right)
        space, system = builders.build_product((s1, v1), (s2, v2))
        params = {"left_digest": d1, "right_digest": d2}
    else:  # pragma: no cover - argparse restricts choices
        raise _InputError(f"unknown build kind {args.kind!r}")

    desc = SpaceDescription.from_space(space)
    payload = json.dumps(desc.to_json_dict(), sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    report = {
        "command": "build",
        "kind": args.kind,
        "params": params,
        "input_digest": _digest(json.dumps(params, sort_keys=True).encode()),
        "strata": len(space.ids),
        "covers": len(space.covers),
        "torus_dim": space.torus_dim,
        "out": args.out,
    }
    lines = [
        f"built {args.kind}: {len(space.ids)} strata, {len(space.covers)} covers,"
        f" torus dim {space.torus_dim}"
    ]
    if args.out:
        lines.append(f"wrote {args.out}")
    return report, lines


def cmd_check(args) -> Tuple[dict, List[str]]:
    space, system, digest = _load_space(args.file)
    report = {"command": "check", "input_digest": digest}
    lines = []

    fr = coeffsys.check_functor(system)
    report["functor"] = {
        "ok": fr.ok,
        "identity_violations": sorted(fr.identity_violations),
        "composition_violations": sorted(fr.composition_violations),
    }
    if fr.ok:
        lines.append("functor laws: ok")
    else:
        bad = fr.composition_violations or fr.identity_violations
        lines.append(f"functor laws: FAIL at {bad[0]}")

    square_ok = True
    witness = None
    for k in range(0, 3):
        d_hi = cochain.differential_matrix(system, k + 1, strict=False)
        d_lo = cochain.differential_matrix(system, k, strict=False)
        if d_hi.rows and d_lo.rows and not (d_hi @ d_lo).is_zero():
            square_ok = False
            witness = k
            break
    report["d_squared_zero"] = {"ok": square_ok, "degree": witness}
    lines.append(
        "d^2 = 0 (degrees 0..2): ok" if square_ok else f"d^2 = 0: FAIL at degree {witness}"
    )

    if args.euler:
        chi = cochain.euler_characteristic(system)
        report["euler_characteristic"] = chi
        lines.append(f"euler characteristic = {chi}")

    if args.les:
        n = frozenset(s for s in args.les.split(",") if s)
        les = cochain.les_pair_check(system, n)
        report["les"] = {
            "subset": sorted(n),
            "ok": les.ok,
            "node_names": list(les.node_names),
            "node_dims": list(les.node_dims),
            "failures": list(les.failures),
        }
        lines.append(f"LES for pair (space, {{{','.join(sorted(n))}}}): "
                     + ("exact" if les.ok else f"NOT exact: {les.failures[0]}"))
        lines.append("node dims: " + ", ".join(str(d) for d in les.node_dims))
    return report, lines


def cmd_extend(args) -> Tuple[dict, List[str]]:
    space, system, digest = _load_space(args.file)
    try:
        with open(args.values, "rb") as fh:
            raw = fh.read()
        obj = json.loads(raw.decode("utf-8"))
        table = {
            str(x): tuple(Fraction(str(e)) for e in vec)
            for x, vec in obj["values"].items()
        }
    except OSError as e:
        raise _InputError(f"cannot read {args.values}: {e.strerror}") from None
    except (json.JSONDecodeError, UnicodeDecodeError, KeyError, AttributeError,
            TypeError, ValueError, ZeroDivisionError) as e:
        raise _InputError(f"{args.values}: malformed values file ({e})") from None
    minimal = assignops.MinimalAssignment(table)
    full = assignops.extend_minimal(system, minimal)
    values = _vector_table(system, full.values)
    report = {
        "command": "extend",
        "input_digest": digest,
        "values_digest": _digest(raw),
        "assignment": values,
    }
    lines = ["extended assignment:"]
    for x, vec in sorted(values.items()):
        lines.append(f"  {x} = [{','.join(vec)}]")
    return report, lines


def _monomial_names(keys) -> List[str]:
    return [momentpoly._exp_text(k, l) or "1" for (k, l) in keys]


def cmd_decompose(args) -> Tuple[dict, List[str]]:
    rows = _parse_weight_rows(args.weights)
    w = WeightMatrix.from_rows(rows)
    try:
        p = momentpoly.parse_poly(args.psi, w)
    except (ParseError, ArityError) as e:
        raise _InputError(f"cannot parse polynomial: {e}") from None
    fc = momentpoly.decompose(p)
    assert momentpoly.verify_decomposition(p, fc)
    report = {
        "command": "decompose",
        "input_digest": _digest(
            json.dumps({"weights": rows, "psi": args.psi}, sort_keys=True).encode()
        ),
        "psi": p.to_text(),
        "condition": "ok",
        "f": [f.to_text() for f, _ in fc.pairs],
        "g": [g.to_text() for _, g in fc.pairs],
        "one_form": fc.one_form_text(),
    }
    lines = [f"psi = {p.to_text()}", "condition: ok"]
    for j, (f, g) in enumerate(fc.pairs):
        lines.append(f"f{j + 1} = {f.to_text()}")
        lines.append(f"g{j + 1} = {g.to_text()}")
    lines.append(fc.one_form_text())
    return report, lines


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="assigncoh",
        description="Exact assignment spaces and assignment cohomology "
        "for stratified torus actions.",
    )
    ap.add_argument("--json", action="store_true", help="emit a JSON report")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("assignments", help="dimension and basis of the assignment space")
    p.add_argument("file")
    p.set_defaults(handler=cmd_assignments)

    p = sub.add_parser("cohomology", help="assignment cohomology in one degree")
    p.add_argument("file")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--complex", choices=("full", "reduced", "both"), default="reduced")
    p.add_argument("--relative", help="comma-separated stratum ids")
    p.set_defaults(handler=cmd_cohomology)

    p = sub.add_parser("build", help="construct a space file")
    p.add_argument("kind", choices=("linear-rep", "sphere-product", "polytope", "product"))
    p.add_argument("--weights", help="rows 'a,b;c,d' for linear-rep")
    p.add_argument("--n", type=int, help="torus dimension for sphere-product")
    p.add_argument("--lambdas", help="rows 'a,b;c,d' for sphere-product")
    for preset in _POLYTOPE_PRESETS:
        p.add_argument(f"--{preset}", action="store_true")
    p.add_argument("--file", help="polytope description file")
    p.add_argument("--left", help="left factor space file")
    p.add_argument("--right", help="right factor space file")
    p.add_argument("--out", help="write the space description here")
    p.set_defaults(handler=cmd_build)

    p = sub.add_parser("check", help="validate functor laws, d^2 = 0, LES, Euler")
    p.add_argument("file")
    p.add_argument("--les", help="comma-separated subset of stratum ids")
    p.add_argument("--euler", action="store_true")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("extend", help="extend minimal-stratum values to an assignment")
    p.add_argument("file")
    p.add_argument("--values", required=True)
    p.set_defaults(handler=cmd_extend)

    p = sub.add_parser("decompose", help="moment condition and cofactor split")
    p.add_argument("--weights", required=True)
    p.add_argument("--psi", required=True)
    p.set_defaults(handler=cmd_decompose)
    return ap


_ERROR_EXITS = (
    ((_InputError, DescriptionError), EXIT_INPUT),
    ((NotUnionOfStrataError,), EXIT_SUBSET),
    ((IncompatibleMinimalValuesError,), EXIT_INCOMPATIBLE),
    ((ConditionFailedError, NonzeroConstantTermError), EXIT_CONDITION),
    # remaining semantic failures: poset/stabilizer/subset/morphism validation
    ((CycleError, StabilizerMonotonicityError, UnknownIdError,
      MissingMinimalValueError, NotOpenError, ValueError), EXIT_VALIDATION),
)


def _fail(args, exc: Exception, code: int) -> int:
    if isinstance(exc, ConditionFailedError):
        detail = "condition fails at monomials: " + ", ".join(
            _monomial_names(exc.failing)
        )
    elif isinstance(exc, UnknownIdError):
        detail = exc.args[0]
    else:
        detail = str(exc)
    if getattr(args, "json", False):
        print(json.dumps(
            {"error": {"type": type(exc).__name__, "message": detail}, "exit_code": code},
            sort_keys=True, indent=2,
        ))
    print(f"error: {detail}", file=sys.stderr)
    return code


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        report, lines = args.handler(args)
    except tuple(c for classes, _ in _ERROR_EXITS for c in classes) as exc:
        for classes, code in _ERROR_EXITS:
            if isinstance(exc, classes):
                return _fail(args, exc, code)
        raise  # pragma: no cover - mapping is exhaustive
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        for line in lines:
            print(line)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
