"""Command-line front end: construction, decomposition, measurement,
verification of automaton files.

Exit codes: 0 success, 1 malformed input or file, 2 precondition violation
(for example the λ-measure of a thick set), 3 a verification run found a
real mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .decompose import (
    PieceKind,
    decompose as decompose_language,
    monoid_generators,
    normalize as normalize_acceptor,
    save_decomposition,
    split_saturated,
)
from . import families as fam
from . import measures as mea
from . import oracle as orc
from .automaton import Automaton, check_speciality, SpecialityKind
from .automaton import dumps as automaton_dumps
from .automaton import load as automaton_load
from .errors import EmptyLanguageError, FgmeasureError
from .words import format_word, parse_word

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PRECONDITION = 2
EXIT_MISMATCH = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # noqa: D401 - argparse hook
        raise _UsageError(message)


def _emit(args: argparse.Namespace, text: str, payload: dict) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _normal_series(a: Automaton) -> mea.FrequencySeries:
    try:
        norm = normalize_acceptor(a)
    except EmptyLanguageError:
        from .ratfunc import RationalFunction

        return mea.FrequencySeries(RationalFunction.zero(), a.rank)
    return mea.generating_function(norm)


def _cmd_genfunc(args: argparse.Namespace) -> int:
    series = _normal_series(automaton_load(args.file))
    _emit(args, str(series.g), {"g": str(series.g)})
    return EXIT_OK


def _cmd_mu0(args: argparse.Namespace) -> int:
    series = _normal_series(automaton_load(args.file))
    mu0 = mea.cesaro_density(series)
    _emit(args, str(mu0), {"mu0": str(mu0)})
    return EXIT_OK


def _cmd_lambda(args: argparse.Namespace) -> int:
    a = automaton_load(args.file)
    if args.method == "eval":
        value = mea.lambda_eval(_normal_series(a))
    else:
        try:
            pieces = decompose_language(a).pieces
        except EmptyLanguageError:
            pieces = ()
        value = Fraction(0)
        for piece, kind in pieces:
            if kind is PieceKind.TRIVIAL_IDENTITY:
                value += 1
            else:
                value += mea.lambda_via_chain(piece)
    _emit(args, str(value), {"lambda": str(value), "method": args.method})
    return EXIT_OK


def _cmd_classify(args: argparse.Namespace) -> int:
    report = mea.measure_report(automaton_load(args.file), oracle_depth=args.depth)
    if report.thick:
        text = f"thick mu0={report.mu0}"
    else:
        text = f"negligible lambda={report.lam}"
    _emit(args, text, report.to_json_dict())
    return EXIT_OK


def _cmd_decompose(args: argparse.Namespace) -> int:
    decomposition = decompose_language(automaton_load(args.file))
    rows = []
    for i, (piece, kind) in enumerate(decomposition.pieces):
        g = mea.generating_function(piece).g
        rows.append(
            {"piece": i, "kind": kind.value, "states": piece.n_states, "g": str(g)}
        )
    if args.out:
        save_decomposition(decomposition, args.out)
    text = "\n".join(
        f"piece {row['piece']}: {row['kind']}, {row['states']} states, g = {row['g']}"
        for row in rows
    )
    _emit(args, text, {"pieces": rows})
    return EXIT_OK


def _cmd_split(args: argparse.Namespace) -> int:
    a = automaton_load(args.file)
    parts = split_saturated(a)
    payload: dict = {"saturated": parts.saturated}
    lines = [f"saturated: {'yes' if parts.saturated else 'no'}"]
    named = [("a1", parts.a1), ("a2", parts.a2), ("a3", parts.a3)]
    for name, part in named:
        if part is None:
            continue
        g = mea.generating_function(part).g
        payload[name] = {"states": part.n_states, "g": str(g)}
        lines.append(f"{name}: {part.n_states} states, g = {g}")
        if args.out:
            import os

            os.makedirs(args.out, exist_ok=True)
            with open(os.path.join(args.out, f"{name}.json"), "w", encoding="utf-8") as fh:
                fh.write(automaton_dumps(part))
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK


def _cmd_generators(args: argparse.Namespace) -> int:
    a = automaton_load(args.file)
    report = check_speciality(a)
    if report.kind is SpecialityKind.SPECIAL_OVER_GROUP:
        parts = split_saturated(a)
        if not parts.saturated:
            raise FgmeasureError("automaton is not saturated: no monoid part")
        monoid = parts.a2
    else:
        monoid = a
    generators = monoid_generators(monoid, args.depth)
    text = "\n".join(format_word(w) for w in generators)
    _emit(
        args,
        text,
        {"depth": args.depth, "generators": [format_word(w) for w in generators]},
    )
    return EXIT_OK


def _family_from_args(args: argparse.Namespace) -> fam.Family:
    name = args.family
    word = parse_word(args.word, args.m) if args.word is not None else None
    if name == "full":
        return fam.full()
    if name == "nontrivial":
        return fam.nontrivial()
    if name == "cone":
        if word is None:
            raise _UsageError("cone needs --word")
        return fam.cone(word)
    if name == "rcone":
        if word is None:
            raise _UsageError("rcone needs --word")
        return fam.rcone(word)
    if name == "dcone":
        if not args.handles:
            raise _UsageError("dcone needs --handles U V")
        left = parse_word(args.handles[0], args.m)
        right = parse_word(args.handles[1], args.m)
        return fam.dcone(left, right)
    if name == "gcone":
        if word is None or len(word) != 1:
            raise _UsageError("gcone needs --word with a single letter")
        return fam.gcone(word[0])
    if name == "thickmonoid":
        if word is None or len(word) != 1:
            raise _UsageError("thickmonoid needs --word with a single letter")
        return fam.thick_monoid(word[0])
    if name == "ballcomp":
        if args.radius is None:
            raise _UsageError("ballcomp needs --radius")
        return fam.ball_complement(args.radius)
    if name == "even":
        return fam.even()
    if name == "singleton":
        return fam.singleton(word if word is not None else ())
    raise _UsageError(f"unknown family {name!r}")


def _cmd_make(args: argparse.Namespace) -> int:
    family = _family_from_args(args)
    a = fam.make_family(family, args.m)
    text = automaton_dumps(a)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
        print(f"wrote {family.describe()} (rank {args.m}) to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    a = automaton_load(args.file)
    series = _normal_series(a)
    agreement = orc.compare_series(series, orc.frequencies(a, args.depth))
    if agreement.agree:
        _emit(
            args,
            f"series agrees with enumeration to depth {args.depth}",
            {"agree": True, "depth": args.depth},
        )
        return EXIT_OK
    _emit(
        args,
        f"mismatch at k={agreement.first_mismatch}: "
        f"series {agreement.series_value}, enumeration {agreement.oracle_value}",
        {
            "agree": False,
            "first_mismatch": agreement.first_mismatch,
            "series": str(agreement.series_value),
            "enumeration": str(agreement.oracle_value),
        },
    )
    return EXIT_MISMATCH


_ERRATA_FAMILIES = (
    fam.full(),
    fam.nontrivial(),
    fam.cone((1,)),
    fam.cone((1, 2)),
    fam.ball_complement(2),
    fam.even(),
    fam.dcone((1,), (1,)),
    fam.dcone((1,), (-1,)),
    fam.dcone((1,), (2,)),
    fam.thick_monoid(1),
)


def _cmd_errata(args: argparse.Namespace) -> int:
    mismatch_found = False
    lines = []
    rows = []
    for family in _ERRATA_FAMILIES:
        report = mea.verify_fidelity(family, args.m, args.depth)
        row = {
            "family": family.describe(),
            "first_mismatch": report.first_mismatch,
            "mu0_agrees": report.mu0_agrees,
            "mu0": str(report.mu0_computed),
        }
        if report.coefficients_agree:
            line = (
                f"{family.describe()}: coefficients agree to depth {args.depth}; "
                f"mu0 = {report.mu0_computed}"
            )
        else:
            mismatch_found = True
            row["computed"] = str(report.computed_value)
            row["tabulated"] = str(report.tabulated_value)
            line = (
                f"{family.describe()}: first coefficient mismatch at "
                f"k={report.first_mismatch} (computed {report.computed_value}, "
                f"tabulated {report.tabulated_value}); mu0 "
                + (
                    f"agrees ({report.mu0_computed})"
                    if report.mu0_agrees
                    else f"computed {report.mu0_computed} vs tabulated {report.mu0_tabulated}"
                )
            )
        lines.append(line)
        rows.append(row)
    _emit(args, "\n".join(lines), {"rank": args.m, "depth": args.depth, "rows": rows})
    return EXIT_MISMATCH if mismatch_found else EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="fg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = add("genfunc", _cmd_genfunc, help="frequency generating function of a file")
    p.add_argument("file")

    p = add("mu0", _cmd_mu0, help="Cesàro density")
    p.add_argument("file")

    p = add("lambda", _cmd_lambda, help="λ-measure of a negligible set")
    p.add_argument("file")
    p.add_argument("--method", choices=("eval", "chain"), default="eval")

    p = add("classify", _cmd_classify, help="thick or exponentially negligible")
    p.add_argument("file")
    p.add_argument("--depth", type=int, default=8, help="oracle verification depth")

    p = add("decompose", _cmd_decompose, help="split into special pieces")
    p.add_argument("file")
    p.add_argument("--out", help="directory for piece files and manifest")

    p = add("split", _cmd_split, help="first/second/third-type splitting")
    p.add_argument("file")
    p.add_argument("--out", help="directory for part files")

    p = add("generators", _cmd_generators, help="monoid generators up to a depth")
    p.add_argument("file")
    p.add_argument("--depth", type=int, default=6)

    p = add("make", _cmd_make, help="build a family acceptor")
    p.add_argument("family", choices=fam.KINDS)
    p.add_argument("--m", type=int, default=2, help="rank")
    p.add_argument("--word", help="word parameter (token or compact form)")
    p.add_argument("--handles", nargs=2, metavar=("U", "V"), help="double cone handles")
    p.add_argument("--radius", type=int, help="ball radius for ballcomp")
    p.add_argument("--out", help="output file (default: stdout)")

    p = add("verify", _cmd_verify, help="check the series against enumeration")
    p.add_argument("file")
    p.add_argument("--depth", type=int, default=8)

    p = add("errata", _cmd_errata, help="audit the tabulated closed forms")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--depth", type=int, default=10)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"fg: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"fg: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, json.JSONDecodeError, ValueError, KeyError) as exc:
        print(f"fg: bad input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FgmeasureError as exc:
        print(f"fg: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
