"""Command-line front end.

Exit status: 0 on success, 1 on invalid input, 2 when a search exceeds its cap.
Output is a pure function of the arguments, so repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .actions import (
    MatchedPair,
    enumerate_matched_pairs,
    matched_pair_from_json,
    matched_pair_to_json,
    trivial_beta,
)
from .classification import classify_b2, classify_k2
from .cyclic import cyclic_report
from .deformation import DeformationDatum, deform
from .errors import KnitError, SearchTooLargeError
from .groups import FiniteGroup, automorphisms, cyclic_group, group_from_json, group_to_json, structural_report
from .morphisms import B2Morphism, RVDatum, rv_to_json
from .products import bicrossed, presentation, relations

EXIT_OK, EXIT_INVALID, EXIT_CAP = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _read_json_arg(text: str):
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {text[1:]}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from exc


def parse_group(text: str, symbol: str) -> FiniteGroup:
    """``cyclic:N``, inline JSON, or ``@path`` to a JSON file."""
    if text.startswith("cyclic:"):
        try:
            n = int(text.split(":", 1)[1])
        except ValueError as exc:
            raise UsageError(f"bad group shorthand {text!r}") from exc
        return cyclic_group(n, symbol)
    return group_from_json(_read_json_arg(text), symbol)


def parse_int_list(text: str) -> list[int]:
    text = text.strip()
    if text.startswith("[") or text.startswith("@"):
        data = _read_json_arg(text)
    else:
        data = text.split(",")
    try:
        return [int(x) for x in data]
    except (TypeError, ValueError) as exc:
        raise UsageError(f"expected a list of integers, got {text!r}") from exc


# text rendering

def _action_rows(mp: MatchedPair, which: str) -> list[str]:
    H, G = mp.H, mp.G
    table, out_labels, sym = (mp.a, H.labels, ">") if which == "alpha" else (mp.b, G.labels, "<")
    width = max(len(x) for x in list(H.labels) + list(G.labels)) + 2
    head = f"  {which} (row g, column h: g {sym} h)"
    lines = [head, "  " + " " * width + "".join(h.ljust(width) for h in H.labels)]
    for g in range(G.order):
        lines.append("  " + G.labels[g].ljust(width) + "".join(out_labels[y].ljust(width) for y in table[g]))
    return [ln.rstrip() for ln in lines]


def render_pair(mp: MatchedPair, index: int | None = None) -> list[str]:
    title = f"pair {index}" if index is not None else "pair"
    tags = []
    if mp.alpha_trivial:
        tags.append("alpha trivial")
    if mp.beta_trivial:
        tags.append("beta trivial")
    lines = [f"{title}: {', '.join(tags) if tags else 'both actions nontrivial'}"]
    if not mp.alpha_trivial:
        lines += _action_rows(mp, "alpha")
    if not mp.beta_trivial:
        lines += _action_rows(mp, "beta")
    lines.append("  " + presentation(bicrossed(mp)))
    return lines


def render_cayley(G: FiniteGroup) -> list[str]:
    width = max(len(x) for x in G.labels) + 1
    lines = [" " * width + "| " + " ".join(x.ljust(width) for x in G.labels)]
    lines.append("-" * len(lines[0]))
    for i in range(G.order):
        lines.append(G.labels[i].ljust(width) + "| " + " ".join(G.labels[y].ljust(width) for y in G.rows[i]))
    return [ln.rstrip() for ln in lines]


# commands

def _pairs_of(args) -> tuple[FiniteGroup, FiniteGroup, list[MatchedPair]]:
    H = parse_group(args.h, "a")
    G = parse_group(args.g, "b")
    return H, G, enumerate_matched_pairs(H, G, cap=args.cap)


def cmd_enumerate(args):
    H, G, pairs = _pairs_of(args)
    if args.format == "json":
        return {
            "H": group_to_json(H),
            "G": group_to_json(G),
            "count": len(pairs),
            "pairs": [matched_pair_to_json(p) for p in pairs],
        }
    lines = [f"{len(pairs)} matched pairs on ({H.name}, {G.name})"]
    for i, p in enumerate(pairs):
        lines += render_pair(p, i)
    return lines


def _identify(mp: MatchedPair) -> str:
    E = bicrossed(mp)
    rep = structural_report(E.base)
    kind = "cyclic" if rep.is_cyclic else "abelian" if rep.is_abelian else "nonabelian"
    return f"{presentation(E)} ({kind}, order {E.base.order}, center {len(rep.center)})"


def _witness_json(w) -> dict:
    if isinstance(w, RVDatum):
        return rv_to_json(w)
    if isinstance(w, B2Morphism):
        return {"r": list(w.r)}
    raise TypeError(type(w))


def cmd_classify(args):
    H = parse_group(args.h, "a")
    G = parse_group(args.g, "b")
    if args.relation == "k2":
        c = classify_k2(H, G, cap=args.cap)
    else:
        if args.beta is None:
            raise UsageError("--relation b2 needs --beta (a table, or 'trivial')")
        beta = trivial_beta(H, G) if args.beta == "trivial" else _read_json_arg(args.beta)
        c = classify_b2(H, G, beta, cap=args.cap)
    idents = [f"class {k} = {_identify(c.items[rep])}" for k, rep in enumerate(c.representatives)]
    if args.format == "json":
        return {
            "relation": c.relation,
            "H": group_to_json(H),
            "G": group_to_json(G),
            "items": [matched_pair_to_json(p) for p in c.items],
            "classes": [list(x) for x in c.classes],
            "representatives": list(c.representatives),
            "basepoint_class": c.basepoint_class,
            "witnesses": [
                {"from": i, "to": j, **_witness_json(w)} for (i, j), w in sorted(c.witnesses.items())
            ],
            "exhausted_searches": [
                {"from": i, "to": j, "candidates": n} for (i, j), n in sorted(c.search_space.items())
            ],
            "identifications": idents,
        }
    lines = [f"{len(c.items)} matched pairs, {len(c.classes)} classes ({c.relation})"]
    for k, cls in enumerate(c.classes):
        mark = " (basepoint)" if k == c.basepoint_class else ""
        lines.append(f"class {k}{mark}: items {list(cls)}")
    lines += idents
    for (i, j), w in sorted(c.witnesses.items()):
        lines.append(f"witness {i} -> {j}: {_witness_json(w)}")
    for i, p in enumerate(c.items):
        lines += render_pair(p, i)
    return lines


def _load_pair(args) -> MatchedPair:
    if args.pair is not None:
        return matched_pair_from_json(_read_json_arg(args.pair))
    if args.h is None or args.g is None:
        raise UsageError("give --pair, or --h and --g with --index")
    _, _, pairs = _pairs_of(args)
    if not 0 <= args.index < len(pairs):
        raise UsageError(f"--index must lie in 0..{len(pairs) - 1}")
    return pairs[args.index]


def cmd_deform(args):
    mp = _load_pair(args)
    auts = automorphisms(mp.H)
    if not 0 <= args.sigma < len(auts):
        raise UsageError(f"--sigma must index one of the {len(auts)} automorphisms of H")
    n = mp.G.order
    v = parse_int_list(args.v) if args.v else list(range(n))
    r = parse_int_list(args.r) if args.r else [0] * n
    d = DeformationDatum(auts[args.sigma], tuple(v), tuple(r))
    result = deform(mp, d)
    out = {
        "datum": {"sigma": list(d.sigma.images), "v": list(d.v), "r": list(d.r)},
        "deformed": matched_pair_to_json(result.pair),
        "psi": list(result.psi.images),
        "unchanged": result.pair == mp,
    }
    if args.format == "json":
        return out
    lines = [
        f"sigma = {out['datum']['sigma']}, v = {v}, r = {r}",
        "deformed group is the original G" if result.group == mp.G else "deformed group differs from G",
    ]
    lines += render_pair(result.pair)
    lines.append(f"psi = {out['psi']}")
    return lines


def cmd_show(args):
    mp = _load_pair(args)
    E = bicrossed(mp)
    if args.format == "json":
        return {"pair": matched_pair_to_json(mp), "product": group_to_json(E.base), "relations": relations(E)}
    return render_pair(mp) + [""] + render_cayley(E.base) + [""] + relations(E)


def cmd_cyclic(args):
    rep = cyclic_report(args.n, args.m, cap=args.cap)
    summary = {
        "n": rep.n,
        "m": rep.m,
        "varsigma": list(rep.varsigma),
        "formula_count": rep.formula_count,
        "oracle_count": rep.oracle_count,
        "stated_count": rep.stated_count,
        "discrepancy": rep.discrepancy,
    }
    if args.format == "json":
        return {**summary, "pairs": [matched_pair_to_json(p) for p in rep.pairs]}
    lines = [
        f"(C{rep.n}, C{rep.m}): t with t^{rep.n} = 1 mod {rep.m}: {list(rep.varsigma)}",
        f"  count from unit-group formula: {rep.formula_count}",
        f"  matched pairs found by exhaustive search: {rep.oracle_count}",
    ]
    if rep.stated_count is not None:
        flag = "  <-- differs from the search" if rep.discrepancy else ""
        lines.append(f"  count stated by the closed-form classification: {rep.stated_count}{flag}")
    for i, p in enumerate(rep.pairs):
        lines += render_pair(p, i)
    return lines


def cmd_export(args):
    if args.pair is not None or args.index is not None:
        if args.index is None:
            args.index = 0
        return matched_pair_to_json(_load_pair(args))
    _, _, pairs = _pairs_of(args)
    return [matched_pair_to_json(p) for p in pairs]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="knit", description="Matched pairs of finite groups and their bicrossed products.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, *, fmt=True):
        sp.add_argument("--cap", type=int, default=None, help="search-size cap (default: per search, or KNIT_MAX_SEARCH)")
        if fmt:
            sp.add_argument("--format", choices=("json", "text"), default="text")
        sp.add_argument("--output", default=None, help="write to this path instead of stdout")

    def groups(sp, required=True):
        sp.add_argument("--h", required=required, help="H: cyclic:N, JSON, or @file")
        sp.add_argument("--g", required=required, help="G: cyclic:N, JSON, or @file")

    sp = sub.add_parser("enumerate", help="list every matched pair on (H, G)")
    groups(sp)
    common(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("classify", help="partition matched pairs into equivalence classes")
    groups(sp)
    sp.add_argument("--relation", choices=("k2", "b2"), default="k2")
    sp.add_argument("--beta", default=None, help="fixed right action for b2: JSON table, @file, or 'trivial'")
    common(sp)
    sp.set_defaults(func=cmd_classify)

    for name, func, helptext in (
        ("deform", cmd_deform, "deform a matched pair along (sigma, v, r)"),
        ("show", cmd_show, "Cayley table and relations of a bicrossed product"),
        ("export", cmd_export, "write matched pairs as JSON"),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--pair", default=None, help="matched pair JSON or @file")
        groups(sp, required=False)
        sp.add_argument("--index", type=int, default=None if name == "export" else 0,
                        help="which enumerated pair to use with --h/--g")
        if name == "deform":
            sp.add_argument("--sigma", type=int, default=0, help="index into the automorphisms of H (0 = identity)")
            sp.add_argument("--v", default=None, help="permutation of G, e.g. 0,5,4,3,2,1")
            sp.add_argument("--r", default=None, help="map G -> H, e.g. 0,0,0,0,0,0")
        common(sp, fmt=name != "export")
        sp.set_defaults(func=func, format="json" if name == "export" else None)

    sp = sub.add_parser("cyclic", help="closed-form counts for (C_n, C_m) against exhaustive search")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_cyclic)
    return p


def _emit(result, fmt: str, output: str | None) -> None:
    if fmt == "json":
        text = json.dumps(result, indent=2) + "\n"
    else:
        text = "\n".join(result) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return int(exc.code or 0)
    if args.format is None:
        args.format = "text"
    try:
        if args.cap is not None and args.cap <= 0:
            raise UsageError("--cap must be positive")
        result = args.func(args)
        _emit(result, args.format, args.output)
    except SearchTooLargeError as exc:
        print(f"knit: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, KnitError, ValueError, KeyError, TypeError) as exc:
        print(f"knit: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
