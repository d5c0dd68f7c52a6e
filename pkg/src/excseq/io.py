"""JSON documents, JSON-lines streams and DOT export.

Modules are addressed by dimension-vector keys such as ``"0.1.1"``.
Fractions are written as ``"p/q"`` strings so documents stay exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Any, Iterable

from .census import CensusReport, ClusterCensus, PositionCounts
from .clusters import Leveled
from .errors import SchemaError
from .quiver import Quiver, parse_quiver
from .reps import Catalog, catalog_build, format_key, parse_key
from .sequences import ExceptionalSequence, SupportHasse, TermClass, classify

SCHEMA_VERSION = 1


def module_entry(cat: Catalog, key) -> dict[str, Any]:
    return {
        "key": format_key(key),
        "support": sorted(cat.support(key)),
        "projective": cat.is_projective(key),
        "injective": cat.is_injective(key),
        "simple": cat.is_simple(key),
    }


def term_class_json(c: TermClass) -> dict[str, bool]:
    return {"relProj": c.rel_proj, "relInj": c.rel_inj, "root": c.root}


def sequence_json(seq: ExceptionalSequence) -> dict[str, Any]:
    return {
        "terms": [format_key(k) for k in seq.terms],
        "classification": [term_class_json(c) for c in classify(seq)],
    }


def leveled_json(objs: Iterable[Leveled]) -> list[dict[str, Any]]:
    return [{"key": format_key(o.key), "level": o.level} for o in objs]


def _fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (TypeError, ValueError):
        raise SchemaError(f"malformed fraction {text!r}") from None


def _index_key(js: tuple[int, ...]) -> str:
    return ",".join(map(str, js))


def census_json(r: CensusReport) -> dict[str, Any]:
    return {
        "label": r.label,
        "rank": r.rank,
        "h": r.h,
        "total": r.total,
        "formula": _fraction(r.formula),
        "positions": {
            str(k): {"relProj": p.rel_proj, "relInj": p.rel_inj, "root": p.root}
            for k, p in r.positions.items()
        },
        "rpiSets": {_index_key(js): c for js, c in r.rpi_sets.items()},
        "relProjSets": {_index_key(js): c for js, c in r.rel_proj_sets.items()},
        "lastProjective": {str(k): c for k, c in r.last_projective.items()},
        "lastRelProj": {str(k): c for k, c in r.last_rel_proj.items()},
        "bijection": {_index_key(js): ok for js, ok in r.bijection.items()},
        "clusters": {
            str(m): {
                "clusters": c.clusters,
                "positive": c.positive,
                "orderedTuples": c.ordered_tuples,
                "sequences": c.sequences,
                "projectivelySigned": c.projectively_signed,
                "fussCatalan": _fraction(c.fuss_catalan),
            }
            for m, c in r.clusters.items()
        },
        "probabilities": {
            "lastTermProjective": _fraction(r.last_term_projective),
            "rpiPerPosition": {
                str(k): _fraction(r.probability(p.root)) for k, p in r.positions.items()
            },
        },
    }


def _indices(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",")) if text else ()


def census_from_json(obj: dict[str, Any]) -> CensusReport:
    try:
        return CensusReport(
            label=obj["label"],
            rank=obj["rank"],
            h=obj["h"],
            total=obj["total"],
            formula=_parse_fraction(obj["formula"]),
            positions={
                int(k): PositionCounts(p["relProj"], p["relInj"], p["root"])
                for k, p in obj["positions"].items()
            },
            rpi_sets={_indices(k): c for k, c in obj["rpiSets"].items()},
            rel_proj_sets={_indices(k): c for k, c in obj["relProjSets"].items()},
            last_projective={int(k): c for k, c in obj["lastProjective"].items()},
            last_rel_proj={int(k): c for k, c in obj["lastRelProj"].items()},
            bijection={_indices(k): ok for k, ok in obj["bijection"].items()},
            clusters={
                int(m): ClusterCensus(
                    int(m),
                    c["clusters"],
                    c["positive"],
                    c["orderedTuples"],
                    c["sequences"],
                    c["projectivelySigned"],
                    _parse_fraction(c["fussCatalan"]),
                )
                for m, c in obj["clusters"].items()
            },
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise SchemaError(f"malformed census report: {exc}") from None


@dataclass
class Document:
    """A versioned bundle: quiver, module table and optional payloads."""

    quiver: Quiver
    sequences: list[tuple[tuple[int, ...], ...]] = field(default_factory=list)
    tuples: list[tuple[Leveled, ...]] = field(default_factory=list)
    m: int | None = None
    census: CensusReport | None = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Document):
            return NotImplemented
        return (
            self.quiver == other.quiver
            and self.quiver.label == other.quiver.label
            and self.sequences == other.sequences
            and self.tuples == other.tuples
            and self.m == other.m
            and self.census == other.census
        )


def document_json(doc: Document, cat: Catalog | None = None) -> dict[str, Any]:
    cat = cat or catalog_build(doc.quiver)
    out: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "quiver": {"spec": doc.quiver.spec(), "label": doc.quiver.label},
        "modules": [module_entry(cat, k) for k in cat.keys],
        "sequences": [sequence_json(ExceptionalSequence(cat, s)) for s in doc.sequences],
        "tuples": [leveled_json(t) for t in doc.tuples],
    }
    if doc.m is not None:
        out["m"] = doc.m
    if doc.census is not None:
        out["census"] = census_json(doc.census)
    return out


def dumps(doc: Document) -> str:
    return json.dumps(document_json(doc), indent=2, sort_keys=True) + "\n"


def loads(text: str) -> Document:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise SchemaError("document must be a JSON object")
    version = obj.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {version!r}")
    try:
        qobj = obj["quiver"]
        quiver = parse_quiver(qobj["spec"])
        quiver = Quiver(quiver.n, quiver.arrows, qobj.get("label", ""))
        cat = catalog_build(quiver)
        table = {m["key"]: m for m in obj["modules"]}
        expected = {format_key(k): module_entry(cat, k) for k in cat.keys}
        if table != expected:
            raise SchemaError("module table does not match the quiver")
        seqs = []
        for s in obj.get("sequences", []):
            keys = tuple(cat.check(parse_key(k)) for k in s["terms"])
            seq = ExceptionalSequence(cat, keys)
            if s.get("classification") != sequence_json(seq)["classification"]:
                raise SchemaError(f"classification of {seq} does not match")
            seqs.append(keys)
        tuples = [
            tuple(Leveled(cat.check(parse_key(o["key"])), int(o["level"])) for o in t)
            for t in obj.get("tuples", [])
        ]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed document: missing or invalid {exc}") from None
    census = census_from_json(obj["census"]) if "census" in obj else None
    return Document(quiver, seqs, tuples, obj.get("m"), census)


def dump(doc: Document, fp: IO[str]) -> None:
    fp.write(dumps(doc))


def load(fp: IO[str]) -> Document:
    return loads(fp.read())


def write_jsonl(records: Iterable[dict[str, Any]], fp: IO[str]) -> int:
    """One compact JSON object per line; returns the number written."""
    count = 0
    for rec in records:
        fp.write(json.dumps(rec, sort_keys=True, separators=(",", ":")))
        fp.write("\n")
        count += 1
    return count


def export_dot(h: SupportHasse, name: str = "support") -> str:
    """DOT digraph of the support order; edges point from smaller to larger support."""
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for k in h.nodes:
        style = ', style="bold,filled", fillcolor=lightgrey' if k in h.maximal else ""
        lines.append(f'  E{k} [label="{format_key(h.keys[k])}"{style}];')
    for a, b in h.edges:
        lines.append(f"  E{a} -> E{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
