"""Command-line front end.

Exit codes: 0 success, 1 check failure, 2 unparseable input or unsupported
size, 3 invalid (non-reduced or out-of-range) word, 4 unknown element selector.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .clifford import CliffordElement, to_ahat_string
from .combinatorics import (
    ReducedWord,
    block_set,
    canonical_word,
    cycle_count,
    longest_word,
    parse_permutation,
    parse_word,
)
from .errors import InvalidPermutationError, InvalidWordError
from .spinweyl import acute_of, coset, lift_word, n_of_z, orbit_decomposition
from .strata import (
    AncestryVector,
    component_table,
    components_total,
    enumerate_d2_preancestries,
    strata_graph,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_INVALID_WORD = 3
EXIT_UNKNOWN_SELECTOR = 4

MAX_ETA_RANK = 6


class CliError(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


@dataclass
class AnalysisReport:
    word: ReducedWord
    orbits: list[dict] = field(default_factory=list)
    elements: list[dict] = field(default_factory=list)
    d2_preancestries: int = 0
    total_components: int = 0

    def to_json(self) -> dict:
        sigma = self.word.permutation
        return {
            "word": list(self.word.letters),
            "n": self.word.n,
            "permutation": str(sigma),
            "length": len(self.word),
            "cycles": cycle_count(sigma),
            "block": sorted(block_set(sigma)),
            "orbits": self.orbits,
            "elements": self.elements,
            "d2_preancestries": self.d2_preancestries,
            "totals": {
                "N": sum(e["N"] for e in self.elements),
                "vertices": sum(e["vertices"] for e in self.elements),
                "components": self.total_components,
            },
        }


def analyze(word: ReducedWord, threads: int = 1) -> AnalysisReport:
    stats = {row.z: row for row in component_table(word, threads=threads)}
    elements = []
    for z in coset(word):
        row = stats.get(z)
        elements.append(
            {
                "z": to_ahat_string(z),
                "Re": z.real_part().to_json_string(),
                "N": n_of_z(word, z),
                "vertices": row.vertices if row else 0,
                "edges": row.edges if row else 0,
                "components": row.components if row else 0,
                "isolated": row.isolated if row else 0,
            }
        )
    orbits = []
    for index, rep in enumerate(orbit_decomposition(word)):
        row = stats.get(rep.representative)
        rep.isolated_count = row.isolated if row else 0
        rep.components = row.components if row else 0
        orbits.append(dict(index=index, **rep.to_json()))
    report = AnalysisReport(
        word,
        orbits,
        elements,
        len(enumerate_d2_preancestries(word)),
        components_total(word, threads=threads),
    )
    totals = report.to_json()["totals"]
    if totals["N"] != 1 << len(word) or totals["vertices"] != 1 << len(word):
        raise AssertionError("dimension-0 counts do not add up to 2^length")
    if sum(e["components"] for e in elements) != report.total_components:
        raise AssertionError("per-element components do not add up to the total")
    return report


# ------------------------------------------------------------------ input


def _word_from_args(args: argparse.Namespace) -> ReducedWord:
    if args.word is not None and args.perm is not None:
        raise CliError(EXIT_PARSE, "give either --word or --perm, not both")
    if args.perm is not None:
        try:
            return canonical_word(parse_permutation(args.perm))
        except InvalidPermutationError as exc:
            raise CliError(EXIT_PARSE, str(exc)) from exc
    if args.word is None:
        raise CliError(EXIT_PARSE, "one of --word or --perm is required")
    try:
        letters, n = parse_word(args.word, args.n)
    except InvalidWordError as exc:
        raise CliError(EXIT_INVALID_WORD, str(exc)) from exc
    except ValueError as exc:
        raise CliError(EXIT_PARSE, f"cannot parse word {args.word!r}: {exc}") from exc
    try:
        return ReducedWord(letters, n)
    except InvalidWordError as exc:
        raise CliError(EXIT_INVALID_WORD, str(exc)) from exc


def select_element(word: ReducedWord, selector: str | None) -> CliffordElement:
    """Orbit index (digits), a sign vector ("+-+" or "1,-1,1"), or the all-plus lift."""
    if selector is None:
        return acute_of(word)
    text = selector.strip()
    if text.isdigit():
        orbits = orbit_decomposition(word)
        index = int(text)
        if index >= len(orbits):
            raise CliError(EXIT_UNKNOWN_SELECTOR, f"orbit index {index} out of range 0..{len(orbits) - 1}")
        return orbits[index].representative
    try:
        signs = AncestryVector.parse(text)
    except ValueError as exc:
        raise CliError(EXIT_UNKNOWN_SELECTOR, f"unknown element selector {selector!r}") from exc
    if len(signs) != len(word) or signs.dim:
        raise CliError(
            EXIT_UNKNOWN_SELECTOR, f"sign vector {selector!r} does not match word length {len(word)}"
        )
    return lift_word(word, signs.signs())


# ------------------------------------------------------------------ commands


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_analyze(args: argparse.Namespace) -> int:
    word = _word_from_args(args)
    report = analyze(word, threads=args.threads)
    _emit(json.dumps(report.to_json(), indent=2, ensure_ascii=False) + "\n", args.out)
    return EXIT_OK


def cmd_components_eta(args: argparse.Namespace) -> int:
    if not 1 <= args.n <= MAX_ETA_RANK:
        raise CliError(EXIT_PARSE, f"--n must be in 1..{MAX_ETA_RANK}, got {args.n}")
    print(components_total(longest_word(args.n), threads=args.threads))
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    word = _word_from_args(args)
    z = select_element(word, args.z)
    graph = strata_graph(word, z)
    text = graph.to_dot() if args.format == "dot" else graph.dumps()
    _emit(text, args.out)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    from .checks import run_all

    outcomes = run_all(args.level)
    for o in outcomes:
        print(o.line(), flush=True)
    failed = sum(not o.passed for o in outcomes)
    print(f"{len(outcomes) - failed}/{len(outcomes)} criteria passed")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bruhatstrata",
        description="Strata of real Bruhat cells: counts, orbits, 1-skeleta and checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def word_options(p: argparse.ArgumentParser) -> None:
        p.add_argument("--word", help='comma-separated letters, e.g. "2,3,1,2,4,3,2"')
        p.add_argument("--perm", help='one-line permutation, e.g. "45132" or "4,5,1,3,2"')
        p.add_argument("--n", type=int, help="rank n (S_{n+1}); defaults to the largest letter")

    p = sub.add_parser("analyze", help="JSON report for a word or permutation")
    word_options(p)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", help="write to a file instead of standard output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("components-eta", help="component count for the longest element")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_components_eta)

    p = sub.add_parser("export", help="export the 1-skeleton of one element")
    word_options(p)
    p.add_argument("--z", help="orbit index, or a sign vector such as +-+ or 1,-1,1")
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.add_argument("--out", help="write to a file instead of standard output")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("check", help="run the acceptance suite")
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"bruhatstrata: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
