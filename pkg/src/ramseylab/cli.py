"""Command-line interface.

Exit codes: 0 success / clean, 1 monochromatic copy or failed precondition,
2 unreadable input, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog, constructions as cons, designs
from .core import Coloring, Pattern, Status, ValidationError, find_mono_copy, pattern_catalog
from .formats import FormatError, read_coloring, read_design, write_coloring, write_design
from .search import Budgets, exists_good_coloring, ramsey_bounds, turan_number

EXIT_OK, EXIT_COPY, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3


class _Fail(Exception):
    def __init__(self, code: int, msg: str):
        super().__init__(msg)
        self.code = code


def _pattern(name: str) -> Pattern:
    try:
        return pattern_catalog(name)
    except ValidationError as exc:
        raise _Fail(EXIT_COPY, str(exc)) from None


def _load_coloring(ref: str) -> Coloring:
    path = Path(ref)
    if not path.exists() and not ref.endswith(".hrc") and catalog.path_for(ref).exists():
        path = catalog.path_for(ref)
    try:
        return read_coloring(path)
    except FormatError as exc:
        raise _Fail(EXIT_PARSE, f"{path}: parse error at {exc}") from None
    except OSError as exc:
        raise _Fail(EXIT_PARSE, f"{path}: {exc.strerror}") from None


def _report(c: Coloring, p: Pattern, out) -> int:
    if p.r != c.r:
        raise _Fail(EXIT_COPY, f"pattern {p.name} is {p.r}-uniform, coloring is {c.r}-uniform")
    emb = find_mono_copy(c, p, allow_partial=not c.is_total)
    print(f"pattern {p.name}; r {c.r} n {c.n} k {c.k}; class sizes "
          + ",".join(map(str, c.class_sizes())), file=out)
    if emb is None:
        print("NO MONO COPY", file=out)
        return EXIT_OK
    print(f"MONO COPY in color {emb.color}: map " + " ".join(map(str, emb.map)), file=out)
    print("edges " + " ".join("".join(f"{x}," for x in e)[:-1] for e in emb.image_edges(p)),
          file=out)
    return EXIT_COPY


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args) -> int:
    p = _pattern(args.pattern)
    return _report(_load_coloring(args.coloring), p, sys.stdout)


def _construct(args) -> tuple[Coloring, Pattern | None, str]:
    """Build the requested coloring; return it with the pattern it claims to avoid."""
    what = args.construction
    if what == "sum-mod":
        c = cons.sum_mod(args.n, args.m)
        if args.n == args.m:
            return c, pattern_catalog("kite"), "kite-free: equal sums force equal third vertices"
        if args.n % args.m == 0:
            a = args.n // args.m + 1
            return c, pattern_catalog("F", a, 2), f"F({a},2)-free: at most {a - 1} apexes per residue"
        return c, None, "no guarantee claimed for these parameters"
    if what == "kneser":
        c = cons.kneser_matching_coloring(args.r, args.k)
        return c, pattern_catalog("matching2", args.r), "no two disjoint edges share a color"
    if what == "stepping-up":
        phi = _load_coloring(args.input)
        c = cons.stepping_up(phi)
        lower = pattern_catalog("clique", phi.r + 1, phi.r)
        if find_mono_copy(phi, lower) is not None:
            return c, None, f"guarantee void: input has a monochromatic {lower.name}"
        return c, pattern_catalog("clique", phi.r + 2, phi.r + 1), \
            f"no monochromatic clique({phi.r + 2},{phi.r + 1}) by the stepping-up argument"
    if what == "k43e":
        c = cons.k43e_from_graph(_load_coloring(args.input))
        return c, pattern_catalog("K43e"), "no monochromatic K43e from a triangle-free graph coloring"
    if what == "random-cover":
        base = cons.balanced_rpartite(args.n, args.r)
        c = cons.random_cover(cons.CoverSpec(base, args.k, args.seed, args.retries))
        if c is None:
            raise _Fail(EXIT_COPY, "random cover left an edge uncovered in every attempt")
        return c, pattern_catalog("clique", args.r + 1, args.r), \
            f"every class is {args.r}-partite (rng {cons.RNG_ALGORITHM}, seed {args.seed})"
    if what == "pasch-host":
        host = cons.pasch_free_host(args.q)
        c = Coloring.from_classes(3, host.n, [host.edge_list])
        return c, pattern_catalog("pasch"), "Pasch-free: two points never share two lines"
    if what == "certificate":
        c = cons.certificate(args.name)
        return c, catalog.declared_pattern(args.name), cons.CERTIFICATES[args.name].note
    if what == "design-coloring":
        if args.design:
            try:
                d = read_design(args.design)
            except (FormatError, OSError) as exc:
                raise _Fail(EXIT_PARSE, f"{args.design}: {exc}") from None
        else:
            found = designs.find_design(3, args.v, 4, 1, args.budget)
            if found.design is None:
                raise _Fail(EXIT_BUDGET if found.status is Status.BUDGET_EXCEEDED else EXIT_COPY,
                            f"no 3-({args.v},4,1) design: {found.reason or found.status.value}")
            d = found.design
        if args.method == "resolve":
            res = designs.resolve(d, args.budget)
            if res.resolution is None:
                raise _Fail(EXIT_COPY, "design is not resolvable")
            c = designs.coloring_from_resolution(res.resolution)
        else:
            pp = designs.pair_partition_coloring(d, args.budget)
            if pp.coloring is None:
                raise _Fail(EXIT_COPY, "blocks do not split into disjoint pairs")
            c = pp.coloring
        return c, pattern_catalog("bow"), "bow-free: every class is a union of disjoint K4^3"
    raise _Fail(EXIT_COPY, f"unknown construction {what!r}")


def cmd_construct(args) -> int:
    try:
        c, p, claim = _construct(args)
    except ValidationError as exc:
        raise _Fail(EXIT_COPY, str(exc)) from None
    write_coloring(c, args.out)
    print(f"wrote {args.out}: r {c.r} n {c.n} k {c.k}")
    print(f"guarantee: {claim}")
    if p is None:
        return EXIT_OK
    return _report(c, p, sys.stdout)


def cmd_search(args) -> int:
    p = _pattern(args.pattern)
    out = exists_good_coloring(p, args.k, args.n, args.budget, threads=args.threads)
    label = f"r_{args.k}({p.name})"
    print(f"nodes {out.nodes_explored}")
    if out.status is Status.FOUND:
        dest = Path(args.out_dir) / f"{p.name}_k{args.k}_n{args.n}.hrc"
        write_coloring(out.certificate, dest)
        print(f"FOUND ⇒ {label} > {args.n}")
        print(f"certificate {dest}")
        return EXIT_OK
    if out.status is Status.NOT_FOUND:
        print(f"NOT FOUND ⇒ {label} ≤ {args.n}")
        return EXIT_OK
    print("BUDGET EXCEEDED")
    return EXIT_BUDGET


def cmd_turan(args) -> int:
    p = _pattern(args.pattern)
    t = turan_number(p, args.n, args.budget)
    if t.exact:
        print(t.value)
        return EXIT_OK
    print(f"≥ {t.value} (budget exceeded)")
    return EXIT_BUDGET


def cmd_bounds(args) -> int:
    p = _pattern(args.pattern)
    b = ramsey_bounds(p, args.k, Budgets(search=args.budget, n_cap=args.n_cap))
    print(b.interval())
    print(f"lower {b.lower.value}: {b.lower.source}")
    if b.upper is not None:
        print(f"upper {b.upper.value}: {b.upper.source}")
    if b.upper is None and any(s is Status.BUDGET_EXCEEDED for _, s in b.outcomes):
        return EXIT_BUDGET
    return EXIT_OK


def cmd_design(args) -> int:
    found = designs.find_design(args.t, args.v, args.block_size, args.lam, args.budget)
    print(f"nodes {found.nodes}")
    if found.status is Status.BUDGET_EXCEEDED:
        print("BUDGET EXCEEDED")
        return EXIT_BUDGET
    if found.design is None:
        print(f"NOT FOUND ({found.reason})")
        return EXIT_COPY
    write_design(found.design, args.out)
    print(f"wrote {args.out}: {len(found.design.blocks)} blocks")
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "write":
        for path in catalog.write_all(Path(args.dir) if args.dir else None):
            print(path)
        return EXIT_OK
    status = EXIT_OK
    for name in catalog.names():
        c = catalog.load(name)
        p = catalog.declared_pattern(name)
        clean = find_mono_copy(c, p) is None
        print(f"{name}: {p.name} r {c.r} n {c.n} k {c.k} {'clean' if clean else 'MONO COPY'}")
        status = status if clean else EXIT_COPY
    return status


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ramseylab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check a coloring for monochromatic copies")
    v.add_argument("--pattern", required=True)
    v.add_argument("coloring", help="HRC1 file or catalog name")
    v.set_defaults(fn=cmd_verify)

    c = sub.add_parser("construct", help="build a coloring and self-verify it")
    csub = c.add_subparsers(dest="construction", required=True)

    def con(name: str) -> argparse.ArgumentParser:
        sp = csub.add_parser(name)
        sp.add_argument("--out", required=True)
        return sp

    sp = con("sum-mod")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp = con("kneser")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    con("stepping-up").add_argument("--input", required=True)
    con("k43e").add_argument("--input", required=True)
    sp = con("random-cover")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", type=int, default=3)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--retries", type=int, default=10)
    con("pasch-host").add_argument("--q", type=int, default=2)
    con("certificate").add_argument("--name", required=True, choices=sorted(cons.CERTIFICATES))
    sp = con("design-coloring")
    sp.add_argument("--design", help="DES1 file of a 3-(v,4,1) design")
    sp.add_argument("--v", type=int, default=8)
    sp.add_argument("--method", choices=["resolve", "pairs"], default="resolve")
    sp.add_argument("--budget", type=int)
    c.set_defaults(fn=cmd_construct)

    s = sub.add_parser("search", help="look for a k-coloring of K_n^r without a mono copy")
    s.add_argument("--pattern", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--budget", type=int, default=10**9)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--out-dir", default=".")
    s.set_defaults(fn=cmd_search)

    t = sub.add_parser("turan", help="exact Turán number ex(n, pattern)")
    t.add_argument("--pattern", required=True)
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--budget", type=int, default=10**8)
    t.set_defaults(fn=cmd_turan)

    b = sub.add_parser("bounds", help="verified interval for r_k(pattern)")
    b.add_argument("--pattern", required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--n-cap", type=int, default=10)
    b.add_argument("--budget", type=int, default=10**8)
    b.set_defaults(fn=cmd_bounds)

    d = sub.add_parser("design", help="search for a t-(v,k,lambda) design")
    d.add_argument("--t", type=int, required=True)
    d.add_argument("--v", type=int, required=True)
    d.add_argument("--block-size", type=int, required=True)
    d.add_argument("--lambda", dest="lam", type=int, default=1)
    d.add_argument("--budget", type=int)
    d.add_argument("--out", required=True)
    d.set_defaults(fn=cmd_design)

    g = sub.add_parser("catalog", help="list/verify or regenerate the certificate catalog")
    g.add_argument("action", choices=["list", "write"])
    g.add_argument("--dir")
    g.set_defaults(fn=cmd_catalog)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COPY


if __name__ == "__main__":
    sys.exit(main())
