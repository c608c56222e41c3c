"""Morphisms with computable kernels, preimages and surjectivity.

A morphism pairs a domain, a codomain and a body.  Bodies on finite
carriers are explicit tables.  Bodies on symbolic algebras come from a
closed vocabulary (marker quotients, ideal-subalgebra inclusions, block
projections, maps to or from the trivial objects, coordinate placements,
and composites of these); each vocabulary entry knows its kernel and the
preimage of any marker ideal, which is what the classification and
factorization layers consume.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .core import (
    Algebra,
    Chain,
    CheckReport,
    CheckResult,
    FiniteAlgebra,
    Komori,
    SymbolicAlgebra,
    carrier_size,
    elements,
    hom_tables,
    initial_algebra,
    sample_tuples,
    terminal_algebra,
    to_finite,
)
from .ideals import (
    FiniteIdeal,
    Ideal,
    MarkerIdeal,
    apply_quotient_actions,
    finite_quotient_data,
    full_ideal,
    ideal_contains,
    ideal_elements,
    ideal_leq,
    ideal_meet,
    image_markers,
    markers_from_elements,
    marker_quotient_data,
    preimage_markers,
    section_for_actions,
    validate_ideal,
    zero_ideal,
)

__all__ = [
    "Morphism",
    "FiniteMapBody",
    "ElemTableBody",
    "IdentityBody",
    "QuotientBody",
    "IdealSubInclBody",
    "FromInitialBody",
    "ToTerminalBody",
    "BlockProjectionBody",
    "CoordPermuteBody",
    "TuplingBody",
    "CompositeBody",
    "FactorThroughBody",
    "PerfectCoordMapBody",
    "ZCollapseBody",
    "CorestrictBody",
    "identity",
    "to_terminal",
    "from_initial",
    "compose",
    "is_morphism",
    "same_morphism",
    "image_set",
    "QuotientResult",
    "quotient",
    "factor_through_quotient",
    "image_ideal",
    "SubalgebraResult",
    "subalgebra_layout",
    "ideal_subalgebra",
    "subalgebra_decode",
    "corestrict",
    "enumerate_homs",
    "find_isomorphism",
    "PullbackResult",
    "pullback",
    "mediator_to_pullback",
    "kernel_pair",
    "product_with_projections",
]


# ---------------------------------------------------------------------------
# bodies


@dataclass(frozen=True)
class FiniteMapBody:
    """Index table between two table algebras."""

    table: tuple


@dataclass(frozen=True)
class ElemTableBody:
    """Explicit element dictionary; the domain must have a finite carrier."""

    mapping: dict

    def __hash__(self):
        return hash(tuple(sorted(self.mapping.items(), key=repr)))


@dataclass(frozen=True)
class IdentityBody:
    pass


@dataclass(frozen=True)
class QuotientBody:
    """Projection onto the quotient by a marker ideal."""

    ideal: MarkerIdeal
    actions: tuple


@dataclass(frozen=True)
class SubalgebraLayout:
    """How the carrier I u neg(I) sits inside its ambient algebra.

    ``entries`` has one tag per ambient block: ``("full",)`` the block is
    wholly inside, ``("chain",)`` only 0 and the top survive, or
    ``("sub", coords, offset)`` for a Komori block whose marked
    infinitesimal coordinates land at ``offset`` in the joint block.
    ``total`` is the joint block's rank; ``all_full`` means the subalgebra
    is the whole algebra.
    """

    entries: tuple
    total: int
    all_full: bool


@dataclass(frozen=True)
class IdealSubInclBody:
    """Inclusion of the subalgebra I u neg(I) into its ambient algebra."""

    ideal: MarkerIdeal
    layout: SubalgebraLayout


@dataclass(frozen=True)
class FromInitialBody:
    """The unique map out of the two-element algebra."""


@dataclass(frozen=True)
class ToTerminalBody:
    pass


@dataclass(frozen=True)
class BlockProjectionBody:
    """Projection of a block product onto some of its blocks."""

    kept: tuple


@dataclass(frozen=True)
class CoordPermuteBody:
    """Blockwise permutation of Komori coordinates; an isomorphism.

    ``perms`` holds, per block, None for a chain or a tuple p with output
    coordinate j reading input coordinate p[j].
    """

    perms: tuple


@dataclass(frozen=True)
class TuplingBody:
    """Pairing into a block product.  ``placement`` lists, per codomain
    block, which part and which of its blocks supplies the value; every
    block of every part must be used exactly once."""

    parts: tuple
    placement: tuple


@dataclass(frozen=True)
class CompositeBody:
    parts: tuple


@dataclass(frozen=True)
class FactorThroughBody:
    """The unique map with body o q = f, for a surjective quotient q whose
    kernel sits inside ker f.  Evaluation lifts through a section of q."""

    q: "Morphism"
    f: "Morphism"


@dataclass(frozen=True)
class PerfectCoordMapBody:
    """Map between canonical perfect parts, written as an injective
    placement of joint infinitesimal coordinates (None drops one)."""

    dst: tuple

    def __post_init__(self):
        hit = [d for d in self.dst if d is not None]
        if len(hit) != len(set(hit)):
            raise ValueError("coordinate placement must be injective")


@dataclass(frozen=True)
class ZCollapseBody:
    """Left factor of a trivial map through the two-element algebra:
    sends x to 1 exactly when f(x) = 1.  Requires im(f) within {0, 1}."""

    f: "Morphism"


@dataclass(frozen=True)
class CorestrictBody:
    """Corestriction of e through an injective map with decodable image."""

    e: "Morphism"
    through: "Morphism"


# ---------------------------------------------------------------------------
# morphism


_INITIAL = initial_algebra()
_TERMINAL = terminal_algebra()


class Morphism:
    __slots__ = ("dom", "cod", "body", "label")

    def __init__(self, dom: Algebra, cod: Algebra, body, label: str = ""):
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "body", body)
        object.__setattr__(self, "label", label)

    def __setattr__(self, name, value):
        raise AttributeError("Morphism is immutable")

    def __repr__(self) -> str:
        tag = f" {self.label!r}" if self.label else ""
        return f"Morphism({type(self.body).__name__}{tag})"

    def __call__(self, x):
        return _apply(self, x)

    def then(self, g: "Morphism") -> "Morphism":
        return compose(self, g)

    def kernel(self) -> Ideal:
        return _kernel(self)

    def preimage_ideal(self, ideal: Ideal) -> Ideal:
        return _preimage(self, validate_ideal(self.cod, ideal))

    def is_surjective(self) -> bool:
        return _surjective(self)

    def is_injective(self) -> bool:
        return self.kernel() == zero_ideal(self.dom)


def identity(algebra: Algebra) -> Morphism:
    return Morphism(algebra, algebra, IdentityBody(), "identity")


def to_terminal(algebra: Algebra) -> Morphism:
    cod = _TERMINAL if isinstance(algebra, SymbolicAlgebra) else to_finite(_TERMINAL)
    return Morphism(algebra, cod, ToTerminalBody(), "to_terminal")


def from_initial(algebra: Algebra) -> Morphism:
    dom = _INITIAL if isinstance(algebra, SymbolicAlgebra) else to_finite(_INITIAL)
    return Morphism(dom, algebra, FromInitialBody(), "from_initial")


def compose(f: Morphism, g: Morphism) -> Morphism:
    """f then g."""
    if f.cod != g.dom:
        raise ValueError("composite needs f.cod == g.dom")
    parts = []
    for m in (f, g):
        if isinstance(m.body, CompositeBody):
            parts.extend(m.body.parts)
        elif not isinstance(m.body, IdentityBody):
            parts.append(m)
    if not parts:
        return identity(f.dom)
    if len(parts) == 1:
        return parts[0]
    return Morphism(f.dom, g.cod, CompositeBody(tuple(parts)))


# ---------------------------------------------------------------------------
# evaluation


def _apply(m: Morphism, x):
    body = m.body
    if isinstance(body, FiniteMapBody):
        return body.table[x]
    if isinstance(body, ElemTableBody):
        return body.mapping[x]
    if isinstance(body, IdentityBody):
        return x
    if isinstance(body, QuotientBody):
        return apply_quotient_actions(body.actions, x)
    if isinstance(body, IdealSubInclBody):
        return _sub_embed(m.cod, body.layout, x)
    if isinstance(body, FromInitialBody):
        return m.cod.one if x == m.dom.one else m.cod.zero
    if isinstance(body, ToTerminalBody):
        return m.cod.zero
    if isinstance(body, BlockProjectionBody):
        return tuple(x[i] for i in body.kept)
    if isinstance(body, CoordPermuteBody):
        out = []
        for v, p in zip(x, body.perms):
            if p is None:
                out.append(v)
            else:
                a, bv = v
                out.append((a, tuple(bv[j] for j in p)))
        return tuple(out)
    if isinstance(body, TuplingBody):
        vals = [body.parts[pi](x) for pi in range(len(body.parts))]
        return tuple(vals[pi][bi] for pi, bi in body.placement)
    if isinstance(body, CompositeBody):
        for part in body.parts:
            x = part(x)
        return x
    if isinstance(body, FactorThroughBody):
        return body.f(_section(body.q, x))
    if isinstance(body, PerfectCoordMapBody):
        return _perfect_apply(m, x)
    if isinstance(body, ZCollapseBody):
        v = body.f(x)
        if v == body.f.cod.one:
            return m.cod.one
        if v == body.f.cod.zero:
            return m.cod.zero
        raise ValueError("collapse applied to a map with image outside {0, 1}")
    if isinstance(body, CorestrictBody):
        y = body.e(x)
        out = _decode_through(body.through, y)
        if out is None:
            raise ValueError("corestriction target misses a value")
        return out
    raise TypeError(f"unknown body {body!r}")


def _section(q: Morphism, y):
    body = q.body
    if isinstance(body, QuotientBody):
        return section_for_actions(q.dom.blocks, body.actions, y)
    if isinstance(body, FiniteMapBody):
        return body.table.index(y)
    if isinstance(body, IdentityBody):
        return y
    if isinstance(body, ElemTableBody):
        for k, v in body.mapping.items():
            if v == y:
                return k
        raise ValueError("section: value not reached")
    raise TypeError(f"no section rule for {body!r}")


def _sub_embed(ambient: SymbolicAlgebra, layout: SubalgebraLayout, x):
    if layout.all_full:
        return x
    joint = x[-1]
    if layout.total == 0:
        z, bvec = joint, ()
    else:
        z, bvec = joint
    out = []
    cursor = 0
    for block, entry in zip(ambient.blocks, layout.entries):
        if entry[0] == "full":
            out.append(x[cursor])
            cursor += 1
        elif entry[0] == "chain":
            out.append(block.m if z else 0)
        else:
            coords, offset = entry[1], entry[2]
            bv = [0] * block.r
            for pos, c in enumerate(coords):
                bv[c] = bvec[offset + pos]
            out.append((block.m, tuple(bv)) if z else (0, tuple(bv)))
    return tuple(out)


def subalgebra_decode(incl: Morphism, a):
    """Inverse of an ideal-subalgebra inclusion on its image, None off it."""
    body = incl.body
    if not isinstance(body, IdealSubInclBody):
        raise TypeError("subalgebra_decode needs an inclusion")
    layout = body.layout
    if layout.all_full:
        return a
    z = None
    for block, entry, v in zip(incl.cod.blocks, layout.entries, a):
        if entry[0] == "full":
            continue
        if entry[0] == "chain":
            if v == 0:
                zv = 0
            elif v == block.m:
                zv = 1
            else:
                return None
        else:
            coords = entry[1]
            av, bv = v
            if any(t != 0 for i, t in enumerate(bv) if i not in coords):
                return None
            if av == 0:
                zv = 0
            elif av == block.m:
                zv = 1
            else:
                return None
        if z is None:
            z = zv
        elif z != zv:
            return None
    if z is None:
        z = 0
    prefix = [v for entry, v in zip(layout.entries, a) if entry[0] == "full"]
    if layout.total == 0:
        return tuple(prefix) + (z,)
    bvec = [0] * layout.total
    for block, entry, v in zip(incl.cod.blocks, layout.entries, a):
        if entry[0] == "sub":
            coords, offset = entry[1], entry[2]
            for pos, c in enumerate(coords):
                bvec[offset + pos] = v[1][c]
    if z == 0 and any(t < 0 for t in bvec):
        return None
    if z == 1 and any(t > 0 for t in bvec):
        return None
    return tuple(prefix) + ((z, tuple(bvec)),)


def _perfect_apply(m: Morphism, x):
    body = m.body
    dom_blocks = m.dom.blocks
    cod_blocks = m.cod.blocks
    if not dom_blocks:
        z, b = 0, ()
    elif isinstance(dom_blocks[0], Chain):
        z, b = x[0], ()
    else:
        z, b = x[0]
    if not cod_blocks:
        return ()
    if isinstance(cod_blocks[0], Chain):
        return (z,)
    out = [0] * cod_blocks[0].r
    for j, d in enumerate(body.dst):
        if d is not None:
            out[d] = b[j]
    return ((z, tuple(out)),)


# ---------------------------------------------------------------------------
# kernels and preimages


def _kernel(m: Morphism) -> Ideal:
    body = m.body
    if isinstance(body, FiniteMapBody):
        return FiniteIdeal(frozenset(
            x for x, v in enumerate(body.table) if v == m.cod.zero))
    if isinstance(body, ElemTableBody):
        ker = {x for x, v in body.mapping.items() if v == m.cod.zero}
        if isinstance(m.dom, FiniteAlgebra):
            return FiniteIdeal(frozenset(ker))
        return markers_from_elements(m.dom, ker)
    if isinstance(body, IdentityBody):
        return zero_ideal(m.dom)
    if isinstance(body, QuotientBody):
        return body.ideal
    if isinstance(body, (IdealSubInclBody, FromInitialBody, CoordPermuteBody)):
        return zero_ideal(m.dom)
    if isinstance(body, ToTerminalBody):
        return full_ideal(m.dom)
    if isinstance(body, BlockProjectionBody):
        markers = []
        kept = set(body.kept)
        for i, b in enumerate(m.dom.blocks):
            if i in kept:
                markers.append("zero" if isinstance(b, Chain) else ("sub", frozenset()))
            else:
                markers.append("full")
        return MarkerIdeal(tuple(markers))
    if isinstance(body, TuplingBody):
        acc = full_ideal(m.dom)
        for part in body.parts:
            acc = ideal_meet(m.dom, acc, part.kernel())
        return acc
    if isinstance(body, CompositeBody):
        ker = body.parts[-1].kernel()
        for part in reversed(body.parts[:-1]):
            ker = part.preimage_ideal(ker)
        return ker
    if isinstance(body, FactorThroughBody):
        return image_ideal(body.q, body.f.kernel())
    if isinstance(body, PerfectCoordMapBody):
        if not m.cod.blocks:
            return full_ideal(m.dom)
        if not m.dom.blocks:
            return zero_ideal(m.dom)
        if isinstance(m.dom.blocks[0], Chain):
            return zero_ideal(m.dom)
        dropped = frozenset(j for j, d in enumerate(body.dst) if d is None)
        return MarkerIdeal((("sub", dropped),))
    if isinstance(body, ZCollapseBody):
        return body.f.kernel()
    if isinstance(body, CorestrictBody):
        return body.e.kernel()
    raise TypeError(f"unknown body {body!r}")


def _preimage(m: Morphism, ideal: Ideal) -> Ideal:
    body = m.body
    if isinstance(body, FiniteMapBody):
        return FiniteIdeal(frozenset(
            x for x, v in enumerate(body.table) if v in ideal.elements))
    if isinstance(body, ElemTableBody):
        if isinstance(ideal, FiniteIdeal):
            pre = {x for x, v in body.mapping.items() if v in ideal.elements}
        else:
            pre = {x for x, v in body.mapping.items()
                   if ideal_contains(m.cod, ideal, v)}
        if isinstance(m.dom, FiniteAlgebra):
            return FiniteIdeal(frozenset(pre))
        return markers_from_elements(m.dom, pre)
    if isinstance(body, IdentityBody):
        return ideal
    if isinstance(body, QuotientBody):
        return preimage_markers(m.dom, body.actions, m.cod, ideal)
    if isinstance(body, IdealSubInclBody):
        return _sub_preimage(m, ideal)
    if isinstance(body, FromInitialBody):
        one_in = (ideal_contains(m.cod, ideal, m.cod.one)
                  if isinstance(ideal, MarkerIdeal) else m.cod.one in ideal.elements)
        return full_ideal(m.dom) if one_in else zero_ideal(m.dom)
    if isinstance(body, ToTerminalBody):
        return full_ideal(m.dom)
    if isinstance(body, BlockProjectionBody):
        markers = ["full"] * len(m.dom.blocks)
        for pos, i in enumerate(body.kept):
            markers[i] = ideal.markers[pos]
        return MarkerIdeal(tuple(markers))
    if isinstance(body, CoordPermuteBody):
        markers = []
        for p, mk in zip(body.perms, ideal.markers):
            if p is None or mk == "full":
                markers.append(mk)
            else:
                markers.append(("sub", frozenset(p[j] for j in mk[1])))
        return MarkerIdeal(tuple(markers))
    if isinstance(body, TuplingBody):
        acc = full_ideal(m.dom)
        for pi, part in enumerate(body.parts):
            sub = tuple(mk for mk, (qi, _) in zip(ideal.markers, body.placement)
                        if qi == pi)
            # placement lists codomain blocks in order; re-order to the
            # part's own block order
            order = [bi for qi, bi in body.placement if qi == pi]
            arranged = [None] * len(sub)
            for mk, bi in zip(sub, order):
                arranged[bi] = mk
            acc = ideal_meet(m.dom, acc,
                             part.preimage_ideal(MarkerIdeal(tuple(arranged))))
        return acc
    if isinstance(body, CompositeBody):
        for part in reversed(body.parts):
            ideal = part.preimage_ideal(ideal)
        return ideal
    if isinstance(body, FactorThroughBody):
        return image_ideal(body.q, body.f.preimage_ideal(ideal))
    if isinstance(body, PerfectCoordMapBody):
        return _perfect_preimage(m, ideal)
    if isinstance(body, ZCollapseBody):
        one_in = (ideal_contains(m.cod, ideal, m.cod.one)
                  if isinstance(ideal, MarkerIdeal) else m.cod.one in ideal.elements)
        return full_ideal(m.dom) if one_in else body.f.kernel()
    raise TypeError(f"no preimage rule for {body!r}")


def _sub_preimage(m: Morphism, ideal: Ideal) -> Ideal:
    layout = m.body.layout
    if layout.all_full:
        return ideal
    markers = []
    nonfull = []
    for entry, blk, mk in zip(layout.entries, m.cod.blocks, ideal.markers):
        if entry[0] == "full":
            markers.append(mk)
        else:
            nonfull.append((entry, blk, mk))
    if all(mk == "full" for _, _, mk in nonfull):
        joint_marker = "full"
    elif layout.total == 0:
        joint_marker = "zero"
    else:
        allowed = set()
        for entry, blk, mk in nonfull:
            if entry[0] != "sub":
                continue
            coords, offset = entry[1], entry[2]
            if mk == "full":
                allowed.update(range(offset, offset + len(coords)))
            else:
                for pos, c in enumerate(coords):
                    if c in mk[1]:
                        allowed.add(offset + pos)
        joint_marker = ("sub", frozenset(allowed))
    return validate_ideal(m.dom, MarkerIdeal(tuple(markers) + (joint_marker,)))


def _perfect_preimage(m: Morphism, ideal: Ideal) -> Ideal:
    body = m.body
    if not m.cod.blocks:
        return full_ideal(m.dom)
    def lift(marker):
        if marker == "full":
            return full_ideal(m.dom)
        if not m.dom.blocks:
            return full_ideal(m.dom)
        if isinstance(m.dom.blocks[0], Chain):
            return zero_ideal(m.dom)
        if isinstance(m.cod.blocks[0], Chain):
            # z-collapse: everything with z = 0 maps into a zero marker
            return MarkerIdeal((("sub", frozenset(range(m.dom.blocks[0].r))),))
        keep = frozenset(
            j for j, d in enumerate(body.dst) if d is None or d in marker[1])
        return MarkerIdeal((("sub", keep),))
    return lift(ideal.markers[0])


# ---------------------------------------------------------------------------
# surjectivity


def _surjective(m: Morphism) -> bool:
    body = m.body
    if isinstance(body, FiniteMapBody):
        return len(set(body.table)) == m.cod.size
    if isinstance(body, (IdentityBody, QuotientBody, ToTerminalBody,
                         BlockProjectionBody, CoordPermuteBody, ZCollapseBody)):
        return True
    if isinstance(body, FromInitialBody):
        return carrier_size(m.cod) in (1, 2)
    if isinstance(body, IdealSubInclBody):
        if body.layout.all_full:
            return True
        for entry, blk in zip(body.layout.entries, m.cod.blocks):
            if entry[0] == "chain":
                if blk.m != 1:
                    return False
            elif entry[0] == "sub":
                if blk.m != 1 or len(entry[1]) != blk.r:
                    return False
        return True
    if isinstance(body, FactorThroughBody):
        return body.f.is_surjective()
    if isinstance(body, PerfectCoordMapBody):
        if not m.cod.blocks:
            return True
        if isinstance(m.cod.blocks[0], Chain):
            return len(m.dom.blocks) > 0
        hit = {d for d in body.dst if d is not None}
        return hit == set(range(m.cod.blocks[0].r))
    if isinstance(body, CompositeBody) and all(
            p.is_surjective() for p in body.parts):
        return True
    if carrier_size(m.dom) is not None:
        target = carrier_size(m.cod)
        if target is None:
            return False
        return len({m(x) for x in elements(m.dom)}) == target
    raise NotImplementedError(f"no surjectivity rule for {body!r}")


# ---------------------------------------------------------------------------
# pointwise checks


def is_morphism(m: Morphism, mode: str = "auto", count: int = 400,
                seed: int = 0, bound: int = 8):
    """Verify preservation of zero, addition and negation pointwise, and
    that values land in the codomain.  Returns a CheckReport."""
    if mode == "auto":
        mode = "exhaustive" if carrier_size(m.dom) is not None else "sample"
    A, B = m.dom, m.cod
    checks = [
        ("preserves_zero", 0, lambda: m(A.zero) == B.zero),
        ("lands_in_codomain", 1, lambda x: B.contains(m(x))),
        ("preserves_plus", 2,
         lambda x, y: m(A.plus(x, y)) == B.plus(m(x), m(y))),
        ("preserves_neg", 1, lambda x: m(A.neg(x)) == B.neg(m(x))),
    ]
    results = []
    for name, arity, pred in checks:
        rng = random.Random(f"{seed}:{name}")
        if mode == "exhaustive":
            stream = itertools.product(elements(A), repeat=arity)
        else:
            stream = sample_tuples(A, arity, count, rng, bound)
        witness = None
        checked = 0
        for args in stream:
            checked += 1
            if not pred(*args):
                witness = args
                break
        results.append(CheckResult(name, witness is None, witness, checked))
    return CheckReport("morphism", mode, tuple(results))


def same_morphism(f: Morphism, g: Morphism, mode: str = "auto",
                  count: int = 400, seed: int = 0, bound: int = 8) -> bool:
    """Pointwise equality, exhaustive on finite carriers else sampled."""
    if f.dom != g.dom or f.cod != g.cod:
        return False
    if mode == "auto":
        mode = "exhaustive" if carrier_size(f.dom) is not None else "sample"
    if mode == "exhaustive":
        return all(f(x) == g(x) for x in elements(f.dom))
    rng = random.Random(f"{seed}:same")
    return all(f(x) == g(x)
               for (x,) in sample_tuples(f.dom, 1, count, rng, bound))


def image_set(m: Morphism) -> set:
    if carrier_size(m.dom) is None:
        raise ValueError("image_set needs a finite carrier")
    return {m(x) for x in elements(m.dom)}


# ---------------------------------------------------------------------------
# quotients


@dataclass(frozen=True)
class QuotientResult:
    algebra: Algebra
    projection: Morphism
    ideal: Ideal
    reps: tuple | None = None


def quotient(algebra: Algebra, ideal: Ideal, label: str = "quotient") -> QuotientResult:
    ideal = validate_ideal(algebra, ideal)
    if isinstance(algebra, FiniteAlgebra):
        q, class_of, reps = finite_quotient_data(algebra, ideal)
        proj = Morphism(algebra, q, FiniteMapBody(class_of), label)
        return QuotientResult(q, proj, ideal, reps)
    q, actions = marker_quotient_data(algebra, ideal)
    proj = Morphism(algebra, q, QuotientBody(ideal, actions), label)
    return QuotientResult(q, proj, ideal, None)


def factor_through_quotient(q: Morphism, f: Morphism, label: str = "") -> Morphism:
    """The unique g with g o q = f; needs ker q within ker f."""
    if q.dom != f.dom:
        raise ValueError("factorization needs a shared domain")
    if not ideal_leq(q.dom, q.kernel(), f.kernel()):
        raise ValueError("kernel of the quotient must sit inside ker f")
    if isinstance(q.body, FiniteMapBody) and isinstance(f.body, FiniteMapBody):
        table = [None] * q.cod.size
        for x, c in enumerate(q.body.table):
            table[c] = f.body.table[x]
        return Morphism(q.cod, f.cod, FiniteMapBody(tuple(table)), label)
    return Morphism(q.cod, f.cod, FactorThroughBody(q, f), label)


def image_ideal(q: Morphism, ideal: Ideal) -> Ideal:
    """Forward image of an ideal along a surjective quotient-style map."""
    ideal = validate_ideal(q.dom, ideal)
    if isinstance(q.body, QuotientBody):
        return image_markers(q.dom, q.body.actions, q.cod, ideal)
    if isinstance(q.body, FiniteMapBody):
        return FiniteIdeal(frozenset(q.body.table[x] for x in ideal.elements))
    if isinstance(q.body, IdentityBody):
        return ideal
    if isinstance(q.body, ElemTableBody):
        img = {q.body.mapping[x] for x in ideal_elements(q.dom, ideal)}
        if isinstance(q.cod, FiniteAlgebra):
            return FiniteIdeal(frozenset(img))
        return markers_from_elements(q.cod, img)
    raise TypeError(f"no image rule for {q.body!r}")


# ---------------------------------------------------------------------------
# ideal subalgebras


@dataclass(frozen=True)
class SubalgebraResult:
    algebra: Algebra
    inclusion: Morphism
    ideal: Ideal


def subalgebra_layout(algebra: SymbolicAlgebra, ideal: MarkerIdeal) -> SubalgebraLayout:
    ideal = validate_ideal(algebra, ideal)
    entries = []
    offset = 0
    for b, mk in zip(algebra.blocks, ideal.markers):
        if mk == "full":
            entries.append(("full",))
        elif isinstance(b, Chain):
            entries.append(("chain",))
        else:
            coords = tuple(sorted(mk[1]))
            entries.append(("sub", coords, offset))
            offset += len(coords)
    all_full = all(e[0] == "full" for e in entries)
    return SubalgebraLayout(tuple(entries), offset, all_full)


def ideal_subalgebra(algebra: Algebra, ideal: Ideal,
                     label: str = "subalgebra_inclusion") -> SubalgebraResult:
    """The subalgebra on I u neg(I), with its inclusion."""
    ideal = validate_ideal(algebra, ideal)
    if isinstance(algebra, FiniteAlgebra):
        members = sorted(ideal.elements | {algebra.neg(x) for x in ideal.elements})
        index = {x: i for i, x in enumerate(members)}
        neg_row = [index[algebra.neg(x)] for x in members]
        plus_rows = [[index[algebra.plus(x, y)] for y in members] for x in members]
        sub = FiniteAlgebra(neg_row, plus_rows, index[algebra.zero])
        incl = Morphism(sub, algebra, FiniteMapBody(tuple(members)), label)
        return SubalgebraResult(sub, incl, ideal)
    layout = subalgebra_layout(algebra, ideal)
    if layout.all_full:
        return SubalgebraResult(algebra, identity(algebra), ideal)
    blocks = [b for b, e in zip(algebra.blocks, layout.entries) if e[0] == "full"]
    if layout.total:
        blocks.append(Komori(1, layout.total))
    else:
        blocks.append(Chain(1))
    sub = SymbolicAlgebra(blocks)
    incl = Morphism(sub, algebra, IdealSubInclBody(ideal, layout), label)
    return SubalgebraResult(sub, incl, ideal)


def corestrict(e: Morphism, through: Morphism, label: str = "") -> Morphism:
    """phi with through o phi = e, for injective ``through`` whose image
    contains im(e).  Finite domains get an explicit table."""
    if e.cod != through.cod:
        raise ValueError("corestriction needs matching codomains")
    if carrier_size(e.dom) is not None:
        mapping = {}
        for x in elements(e.dom):
            v = _decode_through(through, e(x))
            if v is None:
                raise ValueError("image of e escapes the subobject")
            mapping[x] = v
        if isinstance(e.dom, FiniteAlgebra) and isinstance(through.dom, FiniteAlgebra):
            return Morphism(e.dom, through.dom,
                            FiniteMapBody(tuple(mapping[x] for x in range(e.dom.size))),
                            label)
        return Morphism(e.dom, through.dom, ElemTableBody(mapping), label)
    return Morphism(e.dom, through.dom, CorestrictBody(e, through), label)


def _decode_through(through: Morphism, y):
    body = through.body
    if isinstance(body, IdealSubInclBody):
        return subalgebra_decode(through, y)
    if isinstance(body, IdentityBody):
        return y
    if isinstance(body, FromInitialBody):
        if y == through.cod.zero:
            return through.dom.zero
        if y == through.cod.one:
            return through.dom.one
        return None
    if isinstance(body, (FiniteMapBody, ElemTableBody)):
        pairs = (enumerate(body.table) if isinstance(body, FiniteMapBody)
                 else body.mapping.items())
        for k, v in pairs:
            if v == y:
                return k
        return None
    raise TypeError(f"no decode rule for {body!r}")


# ---------------------------------------------------------------------------
# hom enumeration


def enumerate_homs(dom: Algebra, cod: Algebra) -> list[Morphism]:
    """All morphisms between finite-carrier algebras, deterministically
    ordered."""
    if carrier_size(dom) is None or carrier_size(cod) is None:
        raise ValueError("hom enumeration needs finite carriers")
    fd, fc = to_finite(dom), to_finite(cod)
    tables = hom_tables(fd, fc)
    out = []
    if isinstance(dom, FiniteAlgebra) and isinstance(cod, FiniteAlgebra):
        for t in tables:
            out.append(Morphism(dom, cod, FiniteMapBody(t)))
        return out
    de, ce = elements(dom), elements(cod)
    for t in tables:
        mapping = {de[i]: ce[v] for i, v in enumerate(t)}
        out.append(Morphism(dom, cod, ElemTableBody(mapping)))
    return out


def find_isomorphism(dom: Algebra, cod: Algebra) -> Morphism | None:
    if carrier_size(dom) is None or carrier_size(cod) is None:
        raise ValueError("isomorphism search needs finite carriers")
    fd, fc = to_finite(dom), to_finite(cod)
    found = hom_tables(fd, fc, bijective=True, limit=1)
    if not found:
        return None
    t = found[0]
    if isinstance(dom, FiniteAlgebra) and isinstance(cod, FiniteAlgebra):
        return Morphism(dom, cod, FiniteMapBody(t), "isomorphism")
    de, ce = elements(dom), elements(cod)
    return Morphism(dom, cod,
                    ElemTableBody({de[i]: ce[v] for i, v in enumerate(t)}),
                    "isomorphism")


# ---------------------------------------------------------------------------
# pullbacks


@dataclass(frozen=True)
class PullbackResult:
    algebra: FiniteAlgebra
    pairs: tuple
    left: Morphism
    right: Morphism


def pullback(f: Morphism, g: Morphism) -> PullbackResult:
    """Literal pullback of f: A -> D against g: C -> D over finite
    carriers, with its two projections."""
    if f.cod != g.cod:
        raise ValueError("pullback needs a shared codomain")
    if carrier_size(f.dom) is None or carrier_size(g.dom) is None:
        raise ValueError("literal pullback needs finite carriers")
    ea, ec = elements(f.dom), elements(g.dom)
    pairs = [(a, c) for a in ea for c in ec if f(a) == g(c)]
    index = {p: i for i, p in enumerate(pairs)}
    def op2(p, q):
        return (f.dom.plus(p[0], q[0]), g.dom.plus(p[1], q[1]))
    neg_row = [index[(f.dom.neg(a), g.dom.neg(c))] for a, c in pairs]
    plus_rows = [[index[op2(p, q)] for q in pairs] for p in pairs]
    pb = FiniteAlgebra(neg_row, plus_rows, index[(f.dom.zero, g.dom.zero)])
    def leg(side, cod):
        if isinstance(cod, FiniteAlgebra):
            return Morphism(pb, cod,
                            FiniteMapBody(tuple(p[side] for p in pairs)))
        return Morphism(pb, cod,
                        ElemTableBody({i: p[side] for i, p in enumerate(pairs)}))
    return PullbackResult(pb, tuple(pairs), leg(0, f.dom), leg(1, g.dom))


def mediator_to_pullback(pb: PullbackResult, u: Morphism, v: Morphism) -> Morphism:
    """x -> (u(x), v(x)) as a map into the pullback carrier."""
    if u.dom != v.dom:
        raise ValueError("mediator needs a shared domain")
    if carrier_size(u.dom) is None:
        raise ValueError("mediator needs a finite carrier")
    index = {p: i for i, p in enumerate(pb.pairs)}
    mapping = {}
    for x in elements(u.dom):
        key = (u(x), v(x))
        if key not in index:
            raise ValueError("square does not commute into the pullback")
        mapping[x] = index[key]
    if isinstance(u.dom, FiniteAlgebra):
        return Morphism(u.dom, pb.algebra,
                        FiniteMapBody(tuple(mapping[x] for x in range(u.dom.size))))
    return Morphism(u.dom, pb.algebra, ElemTableBody(mapping))


def kernel_pair(e: Morphism):
    """Kernel pair of a surjection: the pullback of e against itself, with
    both projections.  Marker quotients get a symbolic presentation; other
    finite-carrier maps fall back to the literal pullback.

    For a Komori block with marked coordinates S the pair algebra keeps one
    copy of the full vector plus a primed copy of the S entries; dropping
    the primed tail gives the first projection, dropping the unprimed S
    entries (then permuting the survivors home) gives the second.
    """
    if isinstance(e.body, QuotientBody):
        A = e.dom
        blocks = []
        p1_markers = []
        p2_markers = []
        perms = []
        needs_perm = False
        for b, mk in zip(A.blocks, e.body.ideal.markers):
            if mk == "full":
                blocks.extend([b, b])
                zero_mk = "zero" if isinstance(b, Chain) else ("sub", frozenset())
                p1_markers.extend([zero_mk, "full"])
                p2_markers.extend(["full", zero_mk])
                perms.append(None)
                continue
            if isinstance(b, Chain):
                blocks.append(b)
                p1_markers.append("zero")
                p2_markers.append("zero")
                perms.append(None)
                continue
            s = tuple(sorted(mk[1]))
            blocks.append(Komori(b.m, b.r + len(s)))
            p1_markers.append(("sub", frozenset(range(b.r, b.r + len(s)))))
            p2_markers.append(("sub", frozenset(s)))
            # the survivors of dropping unprimed S coordinates carry labels
            # off-S-in-order then S-in-order; send label j back to slot j
            labels = [i for i in range(b.r) if i not in mk[1]] + list(s)
            perm = tuple(labels.index(j) for j in range(b.r))
            if perm == tuple(range(b.r)):
                perms.append(None)
            else:
                perms.append(perm)
                needs_perm = True
        kp = SymbolicAlgebra(blocks)
        q1 = quotient(kp, MarkerIdeal(tuple(p1_markers))).projection
        q2 = quotient(kp, MarkerIdeal(tuple(p2_markers))).projection
        if q1.cod != A or q2.cod != A:
            raise AssertionError("kernel pair projection shape mismatch")
        if needs_perm:
            q2 = compose(q2, Morphism(A, A, CoordPermuteBody(tuple(perms))))
        return kp, q1, q2
    pb = pullback(e, e)
    return pb.algebra, pb.left, pb.right


def product_with_projections(algebras):
    """Product together with its projections."""
    algebras = list(algebras)
    if all(isinstance(a, SymbolicAlgebra) for a in algebras):
        blocks = []
        offsets = []
        for a in algebras:
            offsets.append(len(blocks))
            blocks.extend(a.blocks)
        prod = SymbolicAlgebra(blocks)
        projs = []
        for a, off in zip(algebras, offsets):
            kept = tuple(range(off, off + len(a.blocks)))
            projs.append(Morphism(prod, a, BlockProjectionBody(kept)))
        return prod, projs
    from .core import product as _product
    prod = _product(algebras)
    carriers = [elements(a) for a in algebras]
    elems = list(itertools.product(*carriers))
    projs = []
    for k, a in enumerate(algebras):
        if isinstance(a, FiniteAlgebra):
            body = FiniteMapBody(tuple(e[k] for e in elems))
        else:
            body = ElemTableBody({i: e[k] for i, e in enumerate(elems)})
        projs.append(Morphism(prod, a, body))
    return prod, projs
