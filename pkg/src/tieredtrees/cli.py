"""Command-line entry point: tables, bijection demos and verification.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 capacity refusal.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .algebra import partitions_iter
from .bijections import (
    CompleteNonambiguousTree,
    Permutation,
    cnat_to_tiered,
    cycle_insertion,
    decompose,
    perm_to_tree,
    tiered_to_cnat,
    tree_to_perm,
)
from .counting import count_table
from .errors import CapacityError, DomainError
from .permweight import SetPartition, descents, partition_to_perm, perm_to_partition, perm_weight, two_colored_triangle
from .suites import SCOPES, run_verify
from .trees import TieredTree
from .weight import tier_poly, tree_weight

ENV_PREFIX = "TIEREDTREES_"
QPOLY_LIMIT = 6
COUNT_LIMIT = 12
TRIANGLE_LIMIT = 60

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3

_SYMBOLS = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ"


class UsageError(Exception):
    pass


def _env(name: str, default=None, kind=str):
    raw = os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"))
    if raw is None:
        return default
    try:
        return kind(raw)
    except ValueError:
        raise UsageError(f"bad value {raw!r} in {ENV_PREFIX}{name.upper()}") from None


# ---------------------------------------------------------------------------
# notation

def parse_word(text: str) -> tuple[tuple[int, ...], bool]:
    """Read a permutation; returns the 1-based word and whether the input
    was 0-based.

    Comma-separated integers are taken literally.  Otherwise every character
    is one letter (``0-9`` then ``A-Z``).  Input containing the letter 0 is
    read as 0-based.
    """
    text = text.strip()
    if "," in text or " " in text:
        letters = [int(a) for a in re.split(r"[,\s]+", text) if a]
    else:
        try:
            letters = [_SYMBOLS.index(c) for c in text.upper()]
        except ValueError:
            raise DomainError(f"cannot read {text!r} as a permutation") from None
    zero = 0 in letters
    word = tuple(a + 1 for a in letters) if zero else tuple(letters)
    Permutation(word)
    return word, zero


def format_word(word: Sequence[int], zero: bool, n: int | None = None) -> str:
    """Inverse of :func:`parse_word`; ``n`` is the size of the ambient
    permutation when ``word`` is only a piece of it."""
    n = len(word) if n is None else n
    letters = [a - 1 for a in word] if zero else list(word)
    if max(letters, default=0) < len(_SYMBOLS) and (zero or n <= 9):
        return "".join(_SYMBOLS[a] for a in letters)
    return ",".join(map(str, letters))


def parse_blocks(text: str) -> tuple[list[list[int]], bool]:
    parts = [p for p in re.split(r"[|/]", text.strip()) if p]
    blocks = []
    for p in parts:
        if "," in p:
            blocks.append([int(a) for a in p.split(",") if a])
        else:
            blocks.append([_SYMBOLS.index(c) for c in p.upper()])
    zero = any(0 in b for b in blocks)
    if zero:
        blocks = [[a + 1 for a in b] for b in blocks]
    return blocks, zero


def parse_cycles(text: str) -> list[list[int]]:
    found = re.findall(r"\(([^()]*)\)", text)
    if not found:
        raise DomainError(f"expected cycles such as (237)(418), got {text!r}")
    out = []
    for c in found:
        if "," in c or " " in c:
            out.append([int(a) for a in re.split(r"[,\s]+", c.strip()) if a])
        else:
            out.append([_SYMBOLS.index(ch) for ch in c.upper()])
    return out


def _load_json(text: str) -> dict:
    path = Path(text)
    if not text.lstrip().startswith("{") and path.exists():
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"input is not JSON: {exc}") from None


# ---------------------------------------------------------------------------
# tables

def qpoly_types(max_n: int) -> list[tuple[int, ...]]:
    """Tier types with at least two parts, excluding ``(1, n-1)``, in table order."""
    out = []
    for n in range(3, max_n + 1):
        rows = [tuple(sorted(lam)) for lam in partitions_iter(n) if len(lam) >= 2]
        rows = [p for p in rows if p != (1, n - 1)]
        out += sorted(rows, key=lambda p: (len(p), p))
    return out


def _emit(header: list[str], rows: list[list], fmt: str, json_rows: list | None = None) -> str:
    if fmt == "json":
        return json.dumps(json_rows if json_rows is not None else [dict(zip(header, r)) for r in rows], indent=2) + "\n"
    if fmt == "latex":
        return "".join("&".join(str(c) for c in r) + "\\\\\n" for r in rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def table_qpolys(max_n: int, fmt: str, workers: int) -> str:
    if max_n > QPOLY_LIMIT:
        raise CapacityError(f"table qpolys: --max-n {max_n} exceeds the capacity limit {QPOLY_LIMIT}")
    rows, objs = [], []
    for p in qpoly_types(max_n):
        poly = tier_poly(p, workers)
        label = "(" + ", ".join(map(str, p)) + ")"
        rows.append([label, poly.format("q"), poly(1)])
        objs.append({"tier_type": list(p), "polynomial": poly.to_json(), "text": poly.format("q"), "trees": str(poly(1))})
    if fmt == "latex":
        rows = [[f"${r[0]}$", f"${r[1]}$"] for r in rows]
    return _emit(["tier_type", "polynomial", "trees"], rows, fmt, objs)


def table_counts(max_n: int, fmt: str) -> str:
    if max_n > COUNT_LIMIT:
        raise CapacityError(f"table counts: --max-n {max_n} exceeds the capacity limit {COUNT_LIMIT}")
    table = count_table(max_n)
    if fmt == "json":
        return json.dumps(table.to_json(), indent=2) + "\n"
    if fmt == "latex":
        return "".join(f"{n}&{m}&{t}&{p}\\\\\n" for (n, m), (t, p) in sorted(table.entries.items()))
    return table.to_csv()


def table_triangle(rows: int, cols: int, fmt: str) -> str:
    """Row ``k`` holds ``T(n, k)`` in column ``n`` for ``k <= n <= cols``."""
    if cols > TRIANGLE_LIMIT:
        raise CapacityError(f"table triangle: --cols {cols} exceeds the capacity limit {TRIANGLE_LIMIT}")
    grid = [[two_colored_triangle(n, k) if n >= k else "" for n in range(1, cols + 1)] for k in range(1, rows + 1)]
    if fmt == "json":
        objs = [{"k": k, "values": [v for v in row if v != ""]} for k, row in enumerate(grid, start=1)]
        return json.dumps(objs, indent=2) + "\n"
    body = [[k] + row for k, row in enumerate(grid, start=1)]
    if fmt == "latex":
        return "".join("&".join(str(c) for c in r[1:]) + "\\\\\n" for r in body)
    return _emit(["k"] + [str(n) for n in range(1, cols + 1)], body, fmt)


def _cached(cache_dir: str | None, key: str, recompute: bool, make) -> str:
    if not cache_dir:
        return make()
    path = Path(cache_dir) / f"{key}-v{__version__}.txt"
    if path.exists() and not recompute:
        return path.read_text()
    out = make()
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(out)
    return out


# ---------------------------------------------------------------------------
# bijections

def _tree_stats(tree: TieredTree) -> dict:
    return {"maxima": tree.maxima(), "weight": tree_weight(tree)}


def bijection(name: str, text: str, inverse: bool, zero_based: bool) -> dict:
    if name == "perm-tree":
        if inverse:
            tree = TieredTree.from_json(_load_json(text))
            pi = tree_to_perm(tree)
            return {"permutation": format_word(pi.word, zero_based), "descents": descents(pi.word),
                    **_tree_stats(tree)}
        word, zero = parse_word(text)
        tree = perm_to_tree(word)
        return {"permutation": format_word(word, zero), "descents": descents(word),
                "tree": tree.to_json(), **_tree_stats(tree)}
    if name == "partition-perm":
        if inverse:
            word, zero = parse_word(text)
            sp = perm_to_partition(word)
            blocks = [format_word(b, zero, len(word)) for b in sp.blocks]
            return {"permutation": format_word(word, zero), "partition": "|".join(blocks),
                    "blocks": len(sp.blocks), "weight": perm_weight(word)}
        blocks, zero = parse_blocks(text)
        pi = partition_to_perm(SetPartition(tuple(tuple(b) for b in blocks)))
        return {"permutation": format_word(pi.word, zero), "blocks": len(blocks),
                "descents": descents(pi.word), "weight": perm_weight(pi.word)}
    if name == "cycle-insert":
        if inverse:
            raise DomainError("cycle-insert has no --inverse; the slot is not recoverable from the word alone")
        spec, _, slot = text.partition(":")
        cycles = parse_cycles(spec)
        after = None if slot.strip() in ("", "own", "self") else int(slot)
        pi = cycle_insertion(cycles, after)
        dec = decompose(pi.word)
        parts = [format_word(b, zero_based, pi.n) for b in dec.blocks]
        if len(dec.right) > 1:
            parts.append(format_word(dec.right[:-1], zero_based, pi.n))
        return {"permutation": format_word(pi.word, zero_based), "blocks": dec.block_count(),
                "cycles": len(cycles), "pieces": parts}
    if name == "cnat-tiered":
        if inverse:
            tree = TieredTree.from_json(_load_json(text))
            c = tiered_to_cnat(tree)
            return {"cnat": c.to_json(), "k": c.k}
        c = CompleteNonambiguousTree.from_json(_load_json(text))
        tree = cnat_to_tiered(c)
        return {"tree": tree.to_json(), "k": c.k, **_tree_stats(tree)}
    raise UsageError(f"unknown bijection {name!r}")


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=_env("threads", os.cpu_count() or 1, int))
    common.add_argument("--format", choices=("csv", "json", "latex"), default=_env("format", None))
    common.add_argument("--cache-dir", default=_env("cache_dir", None))
    common.add_argument("--recompute", action="store_true")
    common.add_argument("--seed", type=int, default=_env("seed", 0, int))

    parser = argparse.ArgumentParser(prog="tieredtrees", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", parents=[common], help="emit one of the tables")
    t.add_argument("kind", choices=("qpolys", "counts", "triangle"))
    t.add_argument("--max-n", type=int, default=_env("max_n", 6, int))
    t.add_argument("--rows", type=int, default=_env("rows", 4, int))
    t.add_argument("--cols", type=int, default=_env("cols", 9, int))

    b = sub.add_parser("bijection", parents=[common], help="apply a bijection to one input")
    b.add_argument("name", choices=("perm-tree", "partition-perm", "cycle-insert", "cnat-tiered"))
    b.add_argument("input", help="word, blocks a|b|c, cycles (..)(..):slot, or JSON (text or file)")
    b.add_argument("--inverse", action="store_true")
    b.add_argument("--zero-based", action="store_true",
                   help="print letters from 0 (smallest letter 0) where the input does not decide")

    v = sub.add_parser("verify", parents=[common], help="run the verification suites")
    v.add_argument("--scope", default=_env("scope", "all"))
    v.add_argument("--profile", choices=("quick", "full"), default=_env("profile", "quick"))
    return parser


def _scopes(text: str) -> list[str]:
    if text == "all":
        return list(SCOPES)
    names = [s.strip() for s in text.split(",") if s.strip()]
    bad = [s for s in names if s not in SCOPES]
    if bad or not names:
        raise UsageError(f"unknown scope {', '.join(bad) or text!r}; choose from all, {', '.join(SCOPES)}")
    return names


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        if args.command == "table":
            fmt = args.format or "csv"
            if args.kind == "qpolys":
                out = _cached(args.cache_dir, f"qpolys-{args.max_n}-{fmt}", args.recompute,
                              lambda: table_qpolys(args.max_n, fmt, args.threads))
            elif args.kind == "counts":
                out = _cached(args.cache_dir, f"counts-{args.max_n}-{fmt}", args.recompute,
                              lambda: table_counts(args.max_n, fmt))
            else:
                out = table_triangle(args.rows, args.cols, fmt)
            sys.stdout.write(out)
            return EXIT_OK
        if args.command == "bijection":
            result = bijection(args.name, args.input, args.inverse, args.zero_based)
            print(json.dumps(result, indent=2))
            return EXIT_OK
        if args.command == "verify":
            report = run_verify(_scopes(args.scope), args.profile, args.seed, args.threads)
            print(report.dumps() if args.format == "json" else report.text())
            return EXIT_OK if report.ok else EXIT_FAIL
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: could not read the input ({type(exc).__name__}: {exc})", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
