"""JSON forms for algebras, elements, ideals, morphisms and groups.

Block algebras are lists of {"chain": m} / {"komori": {"m": ..., "r": ...}}
entries; finite tables carry explicit neg and plus tables.  Infinitesimal
coordinates and block indices are one-based on the wire and zero-based in
memory.  Morphisms are kind-tagged objects; the derived kinds (radical
projection, perfect inclusion, radical indicator) are rebuilt through
their factories rather than stored pointwise.
"""

from __future__ import annotations

from .core import (
    Algebra,
    Chain,
    FiniteAlgebra,
    Komori,
    SymbolicAlgebra,
    make_finite,
)
from .ideals import FiniteIdeal, Ideal, MarkerIdeal, validate_ideal
from .morphisms import (
    BlockProjectionBody,
    FiniteMapBody,
    Morphism,
    compose,
    from_initial,
    identity,
    quotient,
    to_terminal,
)
from .mundici import LexGroup, make_group
from .pretorsion import (
    perfect_inclusion,
    radical_indicator,
    radical_projection,
)

__all__ = [
    "jsonable",
    "parse_algebra",
    "algebra_to_json",
    "parse_element",
    "element_to_json",
    "parse_ideal",
    "ideal_to_json",
    "parse_morphism",
    "parse_square",
    "parse_group",
    "group_to_json",
    "report_to_json",
]


def jsonable(x):
    """Best-effort conversion to JSON-serializable data."""
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(jsonable(v) for v in x)
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, (FiniteIdeal, MarkerIdeal)):
        return jsonable(x.elements if isinstance(x, FiniteIdeal) else x.markers)
    return repr(x)


def parse_algebra(obj) -> Algebra:
    if not isinstance(obj, dict):
        raise ValueError("algebra must be an object")
    if "finite" in obj:
        spec = obj["finite"]
        neg = tuple(spec["neg"])
        plus = tuple(tuple(row) for row in spec["plus"])
        zero = spec.get("zero", 0)
        alg = make_finite(neg, plus, zero)
        if "size" in spec and spec["size"] != alg.size:
            raise ValueError("declared size does not match the tables")
        return alg
    if "blocks" not in obj:
        raise ValueError("algebra needs 'blocks' or 'finite'")
    blocks = []
    for entry in obj["blocks"]:
        if "chain" in entry:
            blocks.append(Chain(entry["chain"]))
        elif "komori" in entry:
            spec = entry["komori"]
            blocks.append(Komori(spec["m"], spec["r"]))
        else:
            raise ValueError(f"unknown block {entry!r}")
    return SymbolicAlgebra(blocks)


def algebra_to_json(algebra: Algebra):
    if isinstance(algebra, FiniteAlgebra):
        return {"finite": {"size": algebra.size, "zero": algebra.zero,
                           "neg": list(algebra.neg_row),
                           "plus": [list(r) for r in algebra.plus_rows]}}
    out = []
    for b in algebra.blocks:
        if isinstance(b, Chain):
            out.append({"chain": b.m})
        else:
            out.append({"komori": {"m": b.m, "r": b.r}})
    return {"blocks": out}


def parse_element(algebra: Algebra, obj):
    if isinstance(algebra, FiniteAlgebra):
        if not isinstance(obj, int) or not 0 <= obj < algebra.size:
            raise ValueError(f"element {obj!r} is not a carrier index")
        return obj
    if not isinstance(obj, list) or len(obj) != len(algebra.blocks):
        raise ValueError("element must list one entry per block")
    out = []
    for b, entry in zip(algebra.blocks, obj):
        if isinstance(b, Chain):
            out.append(entry)
        else:
            a, tail = entry
            out.append((a, tuple(tail)))
    x = tuple(out)
    if not algebra.contains(x):
        raise ValueError(f"element {obj!r} is outside the carrier")
    return x


def element_to_json(algebra: Algebra, x):
    if isinstance(algebra, FiniteAlgebra):
        return x
    out = []
    for b, entry in zip(algebra.blocks, x):
        if isinstance(b, Chain):
            out.append(entry)
        else:
            out.append([entry[0], list(entry[1])])
    return out


def parse_ideal(algebra: Algebra, obj) -> Ideal:
    if "elements" in obj:
        if isinstance(algebra, FiniteAlgebra):
            return validate_ideal(algebra, FiniteIdeal(frozenset(obj["elements"])))
        raise ValueError("element lists describe ideals of finite tables only")
    if "markers" not in obj:
        raise ValueError("ideal needs 'elements' or 'markers'")
    markers = []
    for mk in obj["markers"]:
        if mk in ("zero", "full"):
            markers.append(mk)
        elif isinstance(mk, dict) and "sub" in mk:
            markers.append(("sub", frozenset(c - 1 for c in mk["sub"])))
        else:
            raise ValueError(f"unknown marker {mk!r}")
    return validate_ideal(algebra, MarkerIdeal(tuple(markers)))


def ideal_to_json(algebra: Algebra, ideal: Ideal):
    ideal = validate_ideal(algebra, ideal)
    if isinstance(ideal, FiniteIdeal):
        return {"elements": sorted(ideal.elements)}
    out = []
    for mk in ideal.markers:
        if isinstance(mk, str):
            out.append(mk)
        else:
            out.append({"sub": sorted(c + 1 for c in mk[1])})
    return {"markers": out}


def parse_morphism(obj) -> Morphism:
    kind = obj.get("kind")
    if kind in ("quotient", "radical_projection", "perfect_inclusion",
                "radical_indicator", "identity", "to_terminal",
                "from_initial", "block_projection"):
        algebra = parse_algebra(obj["algebra"])
        if kind == "quotient":
            return quotient(algebra, parse_ideal(algebra, obj["ideal"])).projection
        if kind == "radical_projection":
            return radical_projection(algebra)
        if kind == "perfect_inclusion":
            return perfect_inclusion(algebra)
        if kind == "radical_indicator":
            return radical_indicator(algebra)
        if kind == "identity":
            return identity(algebra)
        if kind == "to_terminal":
            return to_terminal(algebra)
        if kind == "from_initial":
            return from_initial(algebra)
        kept = tuple(i - 1 for i in obj["kept"])
        if not isinstance(algebra, SymbolicAlgebra):
            raise ValueError("block projections need a block algebra")
        cod = SymbolicAlgebra([algebra.blocks[i] for i in kept])
        return Morphism(algebra, cod, BlockProjectionBody(kept),
                        "block_projection")
    if kind == "table":
        dom = parse_algebra(obj["dom"])
        cod = parse_algebra(obj["cod"])
        if not isinstance(dom, FiniteAlgebra) or not isinstance(cod, FiniteAlgebra):
            raise ValueError("pointwise tables need finite carriers")
        return Morphism(dom, cod, FiniteMapBody(tuple(obj["table"])), "table")
    if kind == "compose":
        parts = [parse_morphism(p) for p in obj["parts"]]
        out = parts[0]
        for p in parts[1:]:
            out = compose(out, p)
        return out
    raise ValueError(f"unknown morphism kind {kind!r}")


def parse_square(obj):
    from .galois2 import ExtensionSquare, square_from_ideals

    if "algebra" in obj:
        algebra = parse_algebra(obj["algebra"])
        i = parse_ideal(algebra, obj["ideal_i"])
        j = parse_ideal(algebra, obj["ideal_j"])
        return square_from_ideals(algebra, i, j)
    return ExtensionSquare(top=parse_morphism(obj["top"]),
                           left=parse_morphism(obj["left"]),
                           right=parse_morphism(obj["right"]),
                           bottom=parse_morphism(obj["bottom"]))


def parse_group(obj) -> LexGroup:
    return make_group((b["rank"], tuple(b["unit"])) for b in obj["blocks"])


def group_to_json(group: LexGroup):
    return {"blocks": [{"rank": b.rank, "unit": list(b.unit)}
                       for b in group.blocks]}


def report_to_json(report):
    return {
        "subject": report.subject,
        "mode": report.mode,
        "ok": report.ok,
        "results": [
            {"name": r.name, "ok": r.ok, "checked": r.checked,
             "witness": jsonable(r.witness)}
            for r in report.results
        ],
    }
