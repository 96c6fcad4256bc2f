"""Command-line interface: solve, verify, canon, iso, catalog, discriminant.

Rationals are read and written only as exact strings ("3/2", never 1.5).
JSON output is deterministic: identical invocations give byte-identical
bytes.  Exit status: 0 success, 1 validation error, 2 inconclusive
isomorphism test.  NILPOISSON_MAX_N (default 10) caps the dimension.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from .algebra import check_identity
from .classify import canonicalize, catalog_match, invariants, iso_test, verify_transform_formula
from .exactnum import DomainError, MPoly, parse_rat, rat_to_str, sc_str
from .families import FamilySpec, canonical_catalog, delta_special_values, instantiate, param_positions
from .solver import UnsupportedModeError, match_family, solve

IDENTITIES = ("commutative", "associative", "jacobi", "delta_poisson", "transposed",
              "cyclic_dp", "cyclic_tdp", "mixed_trivial")


class CliError(Exception):
    pass


def _max_n() -> int:
    try:
        return int(os.environ.get("NILPOISSON_MAX_N", "10"))
    except ValueError:
        return 10


def _check_n(n: int):
    if n < 1:
        raise CliError("dimension must be positive")
    if n > _max_n():
        raise CliError(f"dimension {n} exceeds NILPOISSON_MAX_N={_max_n()}")


def _parse_delta(text: str) -> Fraction:
    try:
        return parse_rat(text)
    except DomainError as exc:
        raise CliError(f"--delta: {exc}") from exc


def _parse_alphas(text: str, tag: str, n: int):
    positions = param_positions(tag, n)
    if text.strip() == "sym":
        return tuple(MPoly.var(f"alpha_{t}") for t in positions)
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != len(positions):
        raise CliError(f"--alphas: family {tag} at n={n} takes {len(positions)} values, got {len(parts)}")
    try:
        return tuple(parse_rat(p) for p in parts)
    except DomainError as exc:
        raise CliError(f"--alphas: {exc}") from exc


def _spec_from_args(args) -> FamilySpec:
    _check_n(args.n)
    delta = _parse_delta(args.delta)
    try:
        return FamilySpec(args.family, args.n, delta, _parse_alphas(args.alphas, args.family, args.n))
    except DomainError as exc:
        raise CliError(str(exc)) from exc


def _emit(payload, fmt: str, human_lines=None) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        for line in human_lines or [json.dumps(payload, sort_keys=True, indent=2)]:
            print(line)


def _bracket_lines(pair) -> list:
    lines = []
    for i in range(1, pair.n + 1):
        for j in range(i, pair.n + 1):
            vec = pair.base.prod_basis(i, j)
            if vec:
                rhs = " + ".join(
                    (f"e_{t}" if str(c) == "1" else f"{sc_str(c)}*e_{t}") for t, c in sorted(vec.items())
                )
                lines.append(f"e_{i} . e_{j} = {rhs}")
    for (i, j), vec in sorted(pair.bracket.entries.items()):
        rhs = " + ".join(
            (f"e_{t}" if str(c) == "1" else f"({sc_str(c)})*e_{t}") for t, c in sorted(vec.items())
        )
        lines.append(f"[e_{i}, e_{j}] = {rhs}")
    return lines


def cmd_solve(args) -> int:
    _check_n(args.n)
    delta = _parse_delta(args.delta)
    try:
        space = solve(args.n, delta, args.identity)
    except UnsupportedModeError as exc:
        raise CliError(str(exc)) from exc
    match = None
    if args.identity == "transposed":
        tag = {Fraction(0): "TP0", Fraction(1): "TP1", Fraction(2): "TP2"}.get(delta, "TPdelta")
        if tag != "TPdelta" or args.n >= 5:
            positions = param_positions(tag, args.n)
            sym = FamilySpec(tag, args.n, delta, tuple(MPoly.var(f"alpha_{t}") for t in positions))
            report = match_family(space, sym)
            match = {"family": tag if report.matched else None, "report": report.to_json()}
    payload = {"solution": space.to_json(), "match": match}
    human = [
        f"free parameters: {space.free_count} ({', '.join(space.params) or 'none'})",
        f"forced zero: {', '.join(space.forced) or 'none'}",
        f"residual conditions: {len(space.residual_conditions)}",
    ]
    if match is not None:
        human.append(f"matched family: {match['family']}")
    human.extend(_bracket_lines(space.pair()))
    _emit(payload, args.format, human)
    return 0


def cmd_verify(args) -> int:
    if args.transform_law:
        try:
            rep = verify_transform_formula(args.family, args.n, None if args.delta == "sym" else _parse_delta(args.delta))
        except DomainError as exc:
            raise CliError(str(exc)) from exc
        _emit(rep.to_json(), args.format, [str(rep)])
        return 0
    spec = _spec_from_args(args)
    pair = instantiate(spec)
    rep = check_identity(pair, args.identity)
    _emit(rep.to_json(), args.format, [str(rep)])
    return 0


def cmd_canon(args) -> int:
    if args.batch:
        return _canon_batch(args)
    spec = _spec_from_args(args)
    try:
        form = canonicalize(spec)
    except DomainError as exc:
        raise CliError(str(exc)) from exc
    entry = catalog_match(form.spec)
    payload = form.to_json()
    payload["catalog_entry"] = entry.describe() if entry else None
    payload["invariants"] = invariants(spec).to_json()
    human = [
        f"canonical: {form.spec.describe()}",
        f"catalog entry: {payload['catalog_entry']}",
        f"witness steps: {len(form.witness.steps)}"
        + (f", radical r^{form.witness.radical[0]} = {form.witness.radical[1]}" if form.witness.radical else ""),
    ]
    _emit(payload, args.format, human)
    return 0


def _canon_batch(args) -> int:
    _check_n(args.n)
    delta = _parse_delta(args.delta)
    rng = random.Random(args.seed)
    positions = param_positions(args.family, args.n)
    out = []
    for _ in range(args.batch):
        alphas = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in positions)
        spec = FamilySpec(args.family, args.n, delta, alphas)
        form = canonicalize(spec)
        entry = catalog_match(form.spec)
        out.append(
            {
                "input": [rat_to_str(a) for a in alphas],
                "canonical": form.spec.to_json(),
                "catalog_entry": entry.describe() if entry else None,
            }
        )
    _emit(out, args.format, [f"{o['input']} -> {o['catalog_entry']}" for o in out])
    return 0


def cmd_iso(args) -> int:
    spec_a = _spec_from_args(args)
    delta = _parse_delta(args.delta)
    try:
        spec_b = FamilySpec(args.family, args.n, delta, _parse_alphas(args.alphas2, args.family, args.n))
        decision = iso_test(spec_a, spec_b)
    except DomainError as exc:
        raise CliError(str(exc)) from exc
    _emit(decision.to_json(), args.format, [f"verdict: {decision.verdict}", f"note: {decision.note}"])
    return 2 if decision.verdict == "inconclusive" else 0


def cmd_catalog(args) -> int:
    _check_n(args.n)
    delta = _parse_delta(args.delta)
    try:
        cat = canonical_catalog(args.n, delta)
    except DomainError as exc:
        raise CliError(str(exc)) from exc
    payload = [e.to_json() for e in cat]
    human = []
    for e in cat:
        human.append(e.describe())
        for line in _bracket_lines(instantiate(e)):
            human.append("    " + line)
    _emit(payload, args.format, human)
    return 0


def cmd_discriminant(args) -> int:
    payload = {
        "polynomial": "delta^3 - 3*delta^2 + 2*delta",
        "factored": "delta*(delta-1)*(delta-2)",
        "roots": ["0", "1", "2"],
    }
    human = [
        "discriminant polynomial: delta^3 - 3*delta^2 + 2*delta = delta*(delta-1)*(delta-2)",
        "roots: 0, 1, 2",
    ]
    if args.n is not None:
        _check_n(args.n)
        special = delta_special_values(args.n)
        extra = {
            "half_n_minus_2": rat_to_str(special["half_n_minus_2"]),
            "half_n_minus_1": rat_to_str(special["half_n_minus_1"]),
            "quadratic_condition": special["quadratic_poly"],
            "quadratic_rational_roots": [rat_to_str(r) for r in special["quadratic_roots"]],
        }
        payload["special_delta"] = extra
        human.append(f"special delta at n={args.n}: (n-2)/2 = {extra['half_n_minus_2']}, "
                     f"(n-1)/2 = {extra['half_n_minus_1']}")
        if extra["quadratic_rational_roots"]:
            human.append(f"rational roots of {extra['quadratic_condition']} = 0: "
                         + ", ".join(extra["quadratic_rational_roots"]))
        else:
            human.append(f"no rational roots of {extra['quadratic_condition']} = 0 "
                         "(irrational solutions are outside catalog scope)")
    _emit(payload, args.format, human)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilpoisson",
        description="Exact delta-Poisson and transposed delta-Poisson bracket structures "
        "on null-filiform associative algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("json", "human"), default="human")

    p = sub.add_parser("solve", help="solve the bracket ansatz for a given identity")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", required=True)
    p.add_argument("--identity", choices=("delta_poisson", "transposed"), required=True)
    add_common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check an identity on a family, or a transformation law")
    p.add_argument("--family", choices=("TP0", "TP1", "TP2", "TPdelta", "Dim2", "Dim3", "Dim4",
                                        "TrivialDeltaPoisson"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", required=True, help="exact rational, or 'sym' with --transform-law")
    p.add_argument("--alphas", default="sym", help="comma-separated exact rationals, or 'sym'")
    p.add_argument("--identity", choices=IDENTITIES, default="transposed")
    p.add_argument("--transform-law", action="store_true",
                   help="verify the closed parameter transformation law symbolically")
    add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("canon", help="canonical form with an automorphism witness")
    p.add_argument("--family", choices=("TP0", "TP1", "TP2", "TPdelta", "Dim2", "Dim3", "Dim4"),
                   required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", required=True)
    p.add_argument("--alphas", default="")
    p.add_argument("--batch", type=int, default=0, help="canonicalize this many random members")
    p.add_argument("--seed", type=int, default=0, help="seed for --batch corpus generation only")
    add_common(p)
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("iso", help="three-valued isomorphism test inside one family")
    p.add_argument("--family", choices=("TP0", "TP1", "TP2", "TPdelta", "Dim2", "Dim3", "Dim4"),
                   required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", required=True)
    p.add_argument("--alphas", required=True)
    p.add_argument("--alphas2", required=True)
    add_common(p)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("catalog", help="canonical representatives for (n, delta)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", required=True)
    add_common(p)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("discriminant", help="the delta discriminant and special values")
    p.add_argument("--n", type=int, default=None)
    add_common(p)
    p.set_defaults(func=cmd_discriminant)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (DomainError, UnsupportedModeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
