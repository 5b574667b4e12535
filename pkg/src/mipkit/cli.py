"""Command-line interface.

Exit codes: 0 on success (and INDISTINGUISHABLE for ``compare``), 1 when
``compare`` distinguishes the groups or ``verify-lemmas`` finds a failure,
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import (
    Annotations,
    auxiliary_groups,
    corpus,
    corpus_entry,
    format_cayley,
    format_perm,
    load_annotations,
    load_group,
)
from .groups import Group, GroupError
from .pgroup import a_n, k_n, socle


def _load(arg: str) -> Group:
    """A group file, a corpus name/label such as ``SG(64,97)`` or ``U7``, or a built-in like ``Q8``."""
    path = Path(arg)
    if not path.exists():
        try:
            return corpus_entry(arg).group
        except KeyError:
            pass
        builtin = auxiliary_groups()
        if arg in builtin:
            return builtin[arg]
    G = load_group(arg)
    resolved = Path(arg).resolve() if Path(arg).exists() else None
    for e in corpus():
        if resolved is not None and Path(e.source).resolve() == resolved:
            G.name = e.name
            break
    return G


def _annotations(path: str | None) -> Annotations:
    known = {e.name for e in corpus()}
    return load_annotations(path, known_names=known)


def cmd_invariants(args) -> int:
    from .invariants import fingerprint

    G = _load(args.group)
    f = fingerprint(G, _annotations(args.annotations), n_max=args.n_max)
    if args.json:
        print(f.to_json(indent=2))
        return 0
    print(f"group: {f.name or args.group}  order {f.order}  prime {f.prime}  dg {f.dg}")
    for key, val in f.abelian_invariants.items():
        print(f"  {key:22s} {val}")
    print(f"  k_n (n >= 0)           {f.k_seq}")
    print(f"  a_n (n >= 1)           {f.a_seq}")
    print(f"  |Soc|, |Soc^Frat|      {f.soc_order}, {f.soc_cap_frat_order}")
    print("  n  G/gamma.Omega*_n  gamma.Omega*_n/gamma  Z^mho*_n  Z/Z^mho*_n")
    for n, row in enumerate(f.abelian_series):
        print(f"  {n:<2d} " + "  ".join(str(t) for t in row))
    print(f"  Jennings ranks         {f.jennings_ranks}")
    print(f"  isotropic residues     {f.isotropic_residues}")
    om = {True: "true", False: "false", None: "inconclusive"}[f.omega1_in_delta2]
    print(f"  Omega_1 in Delta^2     {om}")
    if f.e_annotation is not None:
        print(f"  e (imported)           {f.e_annotation}  [source: {f.e_source}]")
    return 0


def cmd_compare(args) -> int:
    from .decomp import reduce_and_compare
    from .invariants import compare, fingerprint

    G, H = _load(args.g1), _load(args.g2)
    ann = _annotations(args.annotations)
    if args.reduce:
        v = reduce_and_compare(G, H, ann)
        print(v.describe())
        return 1 if v.distinguished else 0
    verdict = compare(fingerprint(G, ann), fingerprint(H, ann))
    print(verdict.describe())
    return 1 if verdict.distinguished else 0


def cmd_decompose(args) -> int:
    from .decomp import elementary_decomposition

    G = _load(args.group)
    dec = elementary_decomposition(G, seed=args.seed)
    print(f"rank T = {dec.rank}")
    print(f"|U| = {dec.U.order}")
    print(f"T = {dec.T.elements}")
    print(f"U generators = {dec.U.generators()}")
    for k, ok in dec.witnesses.items():
        print(f"  {'ok  ' if ok else 'FAIL'} {k}")
    return 0


def cmd_family(args) -> int:
    from .families import FamilySpec, build_family

    G = build_family(FamilySpec(args.kind, args.m, args.n))
    sys.stdout.write(format_cayley(G) if args.emit == "cayley" else format_perm(G))
    return 0


def cmd_qs(args) -> int:
    from .families import qs_distinguisher

    try:
        report = qs_distinguisher(args.m, args.n)
    except AssertionError as exc:
        print(exc)
        return 1
    print("\n".join(report.lines()))
    return 0


def table_rows() -> dict[str, list[dict]]:
    ann = load_annotations()
    t1, t2 = [], []
    for e in corpus():
        G = e.group
        if G.order == 32:
            t1.append({"label": e.label, "group": e.name, "k_1": k_n(G, 1), "a_2": a_n(G, 2),
                       "e": ann.get(e.name)})
        elif G.order == 64:
            t2.append({"label": e.label, "group": e.name, "k_1": k_n(G, 1), "a_3": a_n(G, 3),
                       "|Soc|": socle(G).order})
    return {"order 32": t1, "order 64": t2, "e source": ann.source}


def cmd_tables(args) -> int:
    rows = table_rows()
    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    print("groups of order 32")
    print(f"  {'':4s} {'group':10s} {'k_1':>4s} {'a_2':>4s} {'e':>4s}")
    for r in rows["order 32"]:
        e = "-" if r["e"] is None else str(r["e"])
        print(f"  {r['label']:4s} {r['group']:10s} {r['k_1']:4d} {r['a_2']:4d} {e:>4s}")
    print(f"  e values imported from: {rows['e source']}")
    print("groups of order 64")
    print(f"  {'':4s} {'group':10s} {'k_1':>4s} {'a_3':>4s} {'|Soc|':>6s}")
    for r in rows["order 64"]:
        print(f"  {r['label']:4s} {r['group']:10s} {r['k_1']:4d} {r['a_3']:4d} {r['|Soc|']:6d}")
    return 0


def cmd_verify(args) -> int:
    from .checks import run_all

    G = _load(args.group)
    report = run_all(G, seed=args.seed, trials=args.trials)
    print(f"{G.name or args.group}: {report.count} checks")
    print("\n".join(report.lines()))
    return 0 if report.ok else 1


def cmd_jennings(args) -> int:
    from .modalg import GroupAlgebra, jennings_bound

    G = _load(args.group)
    A = GroupAlgebra(G)
    series = A.jennings_series()
    ranks = A.jennings_ranks()
    for i, D in enumerate(series, 1):
        rank = f"  rank D_{i}/D_{i + 1} = {ranks[i - 1]}" if i <= len(ranks) else ""
        print(f"D_{i}: order {D.order}{rank}")
    print(f"nilpotency index of Delta: {A.nilpotency_index()} (bound {jennings_bound(ranks, A.p)})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mipkit", description="Invariants of modular group algebras of p-groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="print the fingerprint of a group")
    p.add_argument("group")
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.add_argument("--annotations", default=None)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("compare", help="compare two fingerprints (exit 1 when distinguished)")
    p.add_argument("g1")
    p.add_argument("g2")
    p.add_argument("--annotations", default=None)
    p.add_argument("--reduce", action="store_true", help="split off elementary abelian factors first")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("decompose", help="elementary decomposition G = T x U")
    p.add_argument("group")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("family", help="emit D, Q or S of parameters m, n")
    p.add_argument("kind", choices=["D", "Q", "S"])
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--emit", choices=["cayley", "perm"], default="cayley")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("qs-distinguish", help="separate Q and S by Omega_1(FG) in Delta^2")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_qs)

    p = sub.add_parser("tables", help="k_1, a_n, |Soc| and e for the shipped groups")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("verify-lemmas", help="run the identity suite on one group")
    p.add_argument("group")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=200)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("jennings", help="dimension subgroups and their ranks")
    p.add_argument("group")
    p.set_defaults(func=cmd_jennings)
    return ap


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GroupError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
