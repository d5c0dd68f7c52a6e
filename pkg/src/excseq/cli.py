"""Command-line entry point: ``excseq <subcommand> --quiver SPEC ...``.

Exit codes: 0 success, 2 invalid input (syntax, unknown key, sequence not
exceptional), 3 domain errors (non-Dynkin quiver, rank cap, input outside
the domain of an operation).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import io
from .census import CensusOptions, census, cluster_census
from .clusters import (
    CompatibleTuple,
    Leveled,
    MExcSequence,
    clusters,
    theta,
    theta_inverse,
)
from .errors import (
    CatalogError,
    CycleError,
    DimensionError,
    DomainError,
    NotFiniteTypeError,
    QuiverSyntaxError,
    ScaleError,
    SchemaError,
    VertexIndexError,
)
from .quiver import coxeter_number, parse_quiver
from .reps import Catalog, catalog_build, format_key, parse_key
from .sequences import (
    ExceptionalSequence,
    braid_sigma,
    classify,
    enumerate_sequences,
    garside,
    support_hasse,
    validate,
)

EXIT_OK, EXIT_INVALID, EXIT_DOMAIN = 0, 2, 3


class InvalidInput(Exception):
    pass


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _sequence(cat: Catalog, text: str) -> ExceptionalSequence:
    seq = ExceptionalSequence(cat, tuple(parse_key(k) for k in text.split(",")))
    check = validate(seq)
    if not check:
        v = check.violation
        raise InvalidInput(
            f"{seq} is not exceptional: {v.kind}(E_{v.later}, E_{v.earlier}) = {v.dim}"
        )
    return seq


def _levels(text: str | None, length: int) -> tuple[int, ...]:
    if text is None:
        return (0,) * length
    try:
        levels = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InvalidInput(f"malformed levels {text!r}") from None
    if len(levels) != length:
        raise InvalidInput(f"{len(levels)} levels given for {length} terms")
    return levels


def cmd_roots(args, cat: Catalog) -> int:
    q = cat.quiver
    if args.json:
        _emit({"quiver": q.spec(), "h": coxeter_number(q), "roots": [format_key(k) for k in cat.keys]})
        return EXIT_OK
    print(f"{len(cat.keys)} positive roots, h = {coxeter_number(q)}")
    for k in cat.keys:
        print(format_key(k))
    return EXIT_OK


def cmd_catalog(args, cat: Catalog) -> int:
    if args.json:
        _emit(io.document_json(io.Document(cat.quiver), cat))
        return EXIT_OK
    for k in cat.keys:
        flags = "".join(
            c if f else "-"
            for c, f in zip("PIS", (cat.is_projective(k), cat.is_injective(k), cat.is_simple(k)))
        )
        tau = cat.tau(k)
        shown = format_key(tau) if tau is not None else "-"
        print(f"{format_key(k)}  {flags}  support={sorted(cat.support(k))}  tau={shown}")
    return EXIT_OK


def cmd_enumerate(args, cat: Catalog) -> int:
    length = args.length or cat.quiver.n
    stream = enumerate_sequences(cat, length)
    if args.count:
        print(sum(1 for _ in stream))
    elif args.json:
        io.write_jsonl((io.sequence_json(s) for s in stream), sys.stdout)
    else:
        for s in stream:
            print(s)
    return EXIT_OK


def cmd_classify(args, cat: Catalog) -> int:
    seq = _sequence(cat, args.seq)
    if args.json:
        _emit(io.sequence_json(seq))
        return EXIT_OK
    for k, c in zip(seq.positions, classify(seq)):
        print(
            f"E_{k} = {format_key(seq[k])}: relProj={c.rel_proj} relInj={c.rel_inj} root={c.root}"
        )
    return EXIT_OK


def cmd_mutate(args, cat: Catalog) -> int:
    seq = _sequence(cat, args.seq)
    if not seq.start <= args.k < seq.n:
        raise InvalidInput(f"no adjacent pair at position {args.k}")
    print(braid_sigma(seq, args.k, args.dir))
    return EXIT_OK


def cmd_garside(args, cat: Catalog) -> int:
    seq = _sequence(cat, args.seq)
    print(garside(seq))
    return EXIT_OK


def cmd_theta(args, cat: Catalog) -> int:
    keys = [cat.check(parse_key(k)) for k in args.seq.split(",")]
    objs = tuple(Leveled(k, j) for k, j in zip(keys, _levels(args.levels, len(keys))))
    if args.dir == "to-cluster":
        _sequence(cat, args.seq)
        out = theta_inverse(MExcSequence(cat, objs, args.m)).objects
    else:
        out = theta(CompatibleTuple(cat, objs, args.m)).terms
    if args.json:
        _emit({"m": args.m, "input": io.leveled_json(objs), "output": io.leveled_json(out)})
    else:
        print("(" + ", ".join(map(str, out)) + ")")
    return EXIT_OK


def cmd_clusters(args, cat: Catalog) -> int:
    if args.list:
        for c in clusters(cat, args.m):
            print("{" + ", ".join(map(str, sorted(c))) + "}")
        return EXIT_OK
    c = cluster_census(cat.quiver, args.m, cat)
    row = {
        "m": c.m,
        "clusters": c.clusters,
        "positive": c.positive,
        "orderedTuples": c.ordered_tuples,
        "sequences": c.sequences,
        "projectivelySigned": c.projectively_signed,
        "fussCatalan": str(c.fuss_catalan),
    }
    if args.json:
        _emit(row)
    else:
        for k, v in row.items():
            print(f"{k}: {v}")
    return EXIT_OK


def cmd_census(args, cat: Catalog) -> int:
    opts = CensusOptions(bijection=args.bijection, cluster_levels=tuple(args.clusters or ()))
    r = census(cat.quiver, opts)
    if args.rpi_pairs:
        count, p = r.rpi_pair()
        print(f"{count}/{r.total} = {p.numerator}/{p.denominator}")
        return EXIT_OK
    if args.json:
        _emit(io.census_json(r))
        return EXIT_OK
    print(f"{r.label}: {r.total} complete exceptional sequences (n!h^n/|W| = {r.formula}), h = {r.h}")
    for k, p in r.positions.items():
        print(f"  E_{k}: relProj={p.rel_proj} relInj={p.rel_inj} rPI={p.root}")
    print(f"  last term projective: {r.last_term_projective}")
    for k, c in r.last_rel_proj.items():
        print(f"  last {k} relatively projective: {c}")
    if r.bijection:
        print(f"  rPI/projective-tail bijections verified: {all(r.bijection.values())}")
    for m, c in r.clusters.items():
        print(f"  m={m}: {c.clusters} clusters, {c.positive} positive")
    return EXIT_OK


def cmd_hasse(args, cat: Catalog) -> int:
    h = support_hasse(_sequence(cat, args.seq))
    if args.dot:
        sys.stdout.write(io.export_dot(h))
        return EXIT_OK
    for a, b in h.edges:
        print(f"{format_key(h.keys[a])} < {format_key(h.keys[b])}")
    print("maximal: " + ", ".join(format_key(h.keys[k]) for k in sorted(h.maximal)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="excseq", description="Exceptional sequences of Dynkin quivers")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, func, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--quiver", required=True, help="e.g. A3, A3:1>2<3, D4:sym-source, 3:1>2,3>2")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=func)
        return sp

    add("roots", cmd_roots, "positive roots and Coxeter number")
    add("catalog", cmd_catalog, "module table with flags and AR translates")
    sp = add("enumerate", cmd_enumerate, "stream exceptional sequences")
    sp.add_argument("--length", type=int, help="sequence length (default: rank)")
    sp.add_argument("--count", action="store_true", help="print only the count")
    sp = add("classify", cmd_classify, "relative projectivity/injectivity of each term")
    sp.add_argument("--seq", required=True, help="comma-separated module keys")
    sp = add("mutate", cmd_mutate, "braid move at an adjacent pair")
    sp.add_argument("--seq", required=True)
    sp.add_argument("--k", type=int, required=True, help="position of the left term of the pair")
    sp.add_argument("--dir", choices=("right", "left"), default="right")
    sp = add("garside", cmd_garside, "apply the Garside element")
    sp.add_argument("--seq", required=True)
    sp = add("theta", cmd_theta, "m-exceptional sequence <-> compatible tuple")
    sp.add_argument("--seq", required=True, help="comma-separated module keys")
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--levels", help="comma-separated levels (default: all 0)")
    sp.add_argument("--dir", choices=("to-cluster", "to-seq"), default="to-cluster")
    sp = add("clusters", cmd_clusters, "count m-clusters")
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--list", action="store_true", help="print every cluster")
    sp = add("census", cmd_census, "exhaustive statistics")
    sp.add_argument("--rpi-pairs", action="store_true", help="count sequences whose last two terms are rPI")
    sp.add_argument("--bijection", action="store_true", help="verify the rPI/projective-tail bijections")
    sp.add_argument("--clusters", type=int, action="append", metavar="M", help="add m-cluster counts")
    sp = add("hasse", cmd_hasse, "support-inclusion Hasse diagram")
    sp.add_argument("--seq", required=True)
    sp.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cat = catalog_build(parse_quiver(args.quiver))
        return args.func(args, cat)
    except (InvalidInput, CatalogError, SchemaError, QuiverSyntaxError, CycleError,
            VertexIndexError, DimensionError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (DomainError, NotFiniteTypeError, ScaleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
