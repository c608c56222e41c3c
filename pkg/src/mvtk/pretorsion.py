"""The (perfect, semisimple) pretorsion theory.

Semisimple algebras have zero radical; perfect algebras are covered by
the radical and its negations.  The only algebras that are both are the
one- and two-element ones, and a map is trivial when it factors through
one of those two.  This module builds the reflection onto semisimple
quotients, the coreflection onto perfect parts, and the probe-based
checks for prekernels, precokernels and protoadditivity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .catalog import chain_product_catalog
from .core import (
    Algebra,
    Chain,
    FiniteAlgebra,
    Komori,
    SymbolicAlgebra,
    carrier_size,
    elements,
    forced_elements,
    initial_algebra,
    is_trivial_object,
    sample_tuples,
    to_finite,
)
from .ideals import (
    MarkerIdeal,
    all_ideals,
    ideal_leq,
    is_zero_ideal,
    radical,
    validate_ideal,
    zero_ideal,
)
from .morphisms import (
    BlockProjectionBody,
    CompositeBody,
    CoordPermuteBody,
    ElemTableBody,
    FactorThroughBody,
    FiniteMapBody,
    FromInitialBody,
    IdealSubInclBody,
    IdentityBody,
    Morphism,
    PerfectCoordMapBody,
    QuotientBody,
    QuotientResult,
    SubalgebraResult,
    ToTerminalBody,
    TuplingBody,
    ZCollapseBody,
    _section,
    compose,
    corestrict,
    enumerate_homs,
    factor_through_quotient,
    identity,
    ideal_subalgebra,
    image_ideal,
    image_set,
    from_initial,
    mediator_to_pullback,
    pullback,
    quotient,
    same_morphism,
    to_terminal,
)

__all__ = [
    "is_semisimple",
    "is_perfect",
    "semisimple_quotient",
    "radical_projection",
    "perfect_part",
    "perfect_inclusion",
    "semisimple_map",
    "perfect_map",
    "radical_indicator",
    "TrivialWitness",
    "is_trivial_morphism",
    "PreExactSequence",
    "pre_exact",
    "probes_into",
    "probes_out_of",
    "ProbeReport",
    "is_prekernel",
    "is_precokernel",
    "UnitFactorization",
    "unit_factorization",
    "counit_factorization",
    "ProtoadditivityReport",
    "protoadditivity_check",
]


def is_semisimple(algebra: Algebra) -> bool:
    """Zero radical.  Products of chains; includes the terminal algebra."""
    return is_zero_ideal(algebra, radical(algebra))


def is_perfect(algebra: Algebra) -> bool:
    """Radical and its negations cover the carrier.  Symbolically this
    forces a single block of height at most one; the only finite perfect
    algebras are the one- and two-element ones."""
    if isinstance(algebra, FiniteAlgebra):
        rad = radical(algebra)
        return rad.elements | {algebra.neg(x) for x in rad.elements} \
            == set(range(algebra.size))
    if algebra.is_terminal:
        return True
    return len(algebra.blocks) == 1 and algebra.blocks[0].m == 1


def semisimple_quotient(algebra: Algebra) -> QuotientResult:
    """Reflection onto semisimple algebras: the quotient by the radical.
    Its carrier is finite for every block algebra."""
    return quotient(algebra, radical(algebra), label="radical_projection")


def radical_projection(algebra: Algebra) -> Morphism:
    return semisimple_quotient(algebra).projection


def perfect_part(algebra: Algebra) -> SubalgebraResult:
    """Coreflection onto perfect algebras: the subalgebra on the radical
    and its negations."""
    return ideal_subalgebra(algebra, radical(algebra),
                            label="perfect_inclusion")


def perfect_inclusion(algebra: Algebra) -> Morphism:
    return perfect_part(algebra).inclusion


def semisimple_map(f: Morphism, label: str = "semisimple_map") -> Morphism:
    """Induced map between semisimple quotients: lift along a section of
    the domain's projection, push down through the codomain's."""
    qa = semisimple_quotient(f.dom)
    qb = semisimple_quotient(f.cod)
    mapping = {}
    for s in elements(qa.algebra):
        mapping[s] = qb.projection(f(_section(qa.projection, s)))
    if isinstance(qa.algebra, FiniteAlgebra) and isinstance(qb.algebra, FiniteAlgebra):
        table = tuple(mapping[x] for x in range(qa.algebra.size))
        return Morphism(qa.algebra, qb.algebra, FiniteMapBody(table), label)
    return Morphism(qa.algebra, qb.algebra, ElemTableBody(mapping), label)


def _komori_offsets(algebra: SymbolicAlgebra):
    offs = {}
    total = 0
    for i, b in enumerate(algebra.blocks):
        if isinstance(b, Komori):
            offs[i] = total
            total += b.r
    return offs, total


def _perfect_dst(f: Morphism) -> tuple:
    """Destination of each radical coordinate of the domain under f, as an
    index into the codomain's radical coordinates (None when killed)."""
    body = f.body
    if isinstance(body, IdentityBody):
        _, t = _komori_offsets(f.dom)
        return tuple(range(t))
    if isinstance(body, (ToTerminalBody, ZCollapseBody)):
        _, t = _komori_offsets(f.dom)
        return (None,) * t
    if isinstance(body, FromInitialBody):
        return ()
    if isinstance(body, PerfectCoordMapBody):
        return body.dst
    if isinstance(body, QuotientBody):
        dst = []
        cod_off = 0
        for b, act in zip(f.dom.blocks, body.actions):
            if isinstance(b, Chain):
                continue
            if act[0] in ("drop", "collapse"):
                dst.extend([None] * b.r)
            else:
                kept = act[1]
                for j in range(b.r):
                    dst.append(cod_off + kept.index(j) if j in kept else None)
                cod_off += len(kept)
        return tuple(dst)
    if isinstance(body, IdealSubInclBody):
        amb_offs, _ = _komori_offsets(f.cod)
        dst = []
        for i, (entry, b) in enumerate(zip(body.layout.entries, f.cod.blocks)):
            if entry[0] == "full" and isinstance(b, Komori):
                dst.extend(amb_offs[i] + j for j in range(b.r))
        for i, entry in enumerate(body.layout.entries):
            if entry[0] == "sub":
                dst.extend(amb_offs[i] + c for c in entry[1])
        return tuple(dst)
    if isinstance(body, BlockProjectionBody):
        dom_offs, t = _komori_offsets(f.dom)
        cod_off = 0
        start = {}
        for i in body.kept:
            b = f.dom.blocks[i]
            if isinstance(b, Komori):
                start[i] = cod_off
                cod_off += b.r
        dst = [None] * t
        for i, off in dom_offs.items():
            if i in start:
                for j in range(f.dom.blocks[i].r):
                    dst[off + j] = start[i] + j
        return tuple(dst)
    if isinstance(body, CoordPermuteBody):
        offs, t = _komori_offsets(f.dom)
        dst = list(range(t))
        for i, p in enumerate(body.perms):
            if p is not None and i in offs:
                off = offs[i]
                for j, pj in enumerate(p):
                    dst[off + pj] = off + j
        return tuple(dst)
    if isinstance(body, CompositeBody):
        dst = _perfect_dst(body.parts[0])
        for part in body.parts[1:]:
            nxt = _perfect_dst(part)
            dst = tuple(nxt[d] if d is not None else None for d in dst)
        return dst
    if isinstance(body, FactorThroughBody):
        dq = _perfect_dst(body.q)
        df = _perfect_dst(body.f)
        _, tq = _komori_offsets(body.q.cod)
        out: list = [None] * tq
        for j, c in enumerate(dq):
            if c is None:
                continue
            if out[c] is None:
                out[c] = df[j]
            elif out[c] != df[j]:
                raise ValueError("factorization moves a radical coordinate "
                                 "two different ways")
        return tuple(out)
    raise NotImplementedError(f"no radical coordinate rule for {body!r}")


def perfect_map(f: Morphism, label: str = "perfect_map") -> Morphism:
    """Induced map between perfect parts (the restriction of f)."""
    pa = perfect_part(f.dom)
    pb = perfect_part(f.cod)
    if carrier_size(pa.algebra) is not None:
        return corestrict(compose(pa.inclusion, f), pb.inclusion, label)
    dst = _perfect_dst(f)
    return Morphism(pa.algebra, pb.algebra, PerfectCoordMapBody(dst), label)


def radical_indicator(algebra: Algebra) -> Morphism:
    """For a perfect algebra other than the terminal one, the map to the
    two-element algebra sending the radical to 0 and its negations to 1;
    this coincides with the semisimple projection."""
    if carrier_size(algebra) == 1:
        raise ValueError("the terminal algebra admits no map to the "
                         "two-element algebra")
    if not is_perfect(algebra):
        raise ValueError("radical indicator needs a perfect algebra")
    return quotient(algebra, radical(algebra),
                    label="radical_indicator").projection


# ---------------------------------------------------------------------------
# trivial morphisms


@dataclass(frozen=True)
class TrivialWitness:
    trivial: bool
    via: str | None
    left: Morphism | None
    right: Morphism | None
    witness: object
    reason: str


def _normalize_class(cls, cod):
    if cls == "all" and is_trivial_object(cod):
        return "z"
    if isinstance(cls, tuple) and cls[0] == "subalg" and is_zero_ideal(cod, cls[1]):
        return "z"
    return cls


def _body_class(f: Morphism):
    body = f.body
    if isinstance(body, (IdentityBody, QuotientBody, BlockProjectionBody,
                         CoordPermuteBody, ToTerminalBody, ZCollapseBody)):
        return "all"
    if isinstance(body, FromInitialBody):
        return "z"
    if isinstance(body, IdealSubInclBody):
        return ("subalg", body.ideal)
    if isinstance(body, PerfectCoordMapBody):
        if all(d is None for d in body.dst):
            return "z"
        if not f.cod.blocks or isinstance(f.cod.blocks[0], Chain):
            return "all"
        hit = frozenset(d for d in body.dst if d is not None)
        return ("subalg", MarkerIdeal((("sub", hit),)))
    if isinstance(body, FactorThroughBody):
        return _image_class(body.f)
    if isinstance(body, CompositeBody):
        cls = None
        for part in body.parts:
            cls = _fold_class(cls, part)
        return cls
    return "unknown"


def _fold_class(cls, part: Morphism):
    if cls is None or cls == "all":
        nxt = _image_class(part)
    elif cls in ("z", "unknown"):
        nxt = cls
    elif isinstance(cls, (set, frozenset)):
        nxt = {part(v) for v in cls}
    else:
        ideal = cls[1]
        if ideal_leq(part.dom, ideal, part.kernel()):
            nxt = "z"
        else:
            try:
                nxt = ("subalg", image_ideal(part, ideal))
            except TypeError:
                nxt = "unknown"
    return _normalize_class(nxt, part.cod)


def _image_class(f: Morphism):
    """"z" (image within {0, 1}), "all" (surjective), a concrete image
    set, ("subalg", I) for an image of the form I u neg(I), or
    "unknown"."""
    if is_trivial_object(f.dom):
        return "z"
    if carrier_size(f.dom) is not None:
        return _normalize_class(image_set(f), f.cod)
    return _normalize_class(_body_class(f), f.cod)


def _search_nontrivial_value(f: Morphism, count: int = 64, seed: int = 0):
    zo = {f.cod.zero, f.cod.one}
    for x in forced_elements(f.dom):
        if f(x) not in zo:
            return x
    rng = random.Random(f"{seed}:witness")
    for (x,) in sample_tuples(f.dom, 1, count, rng):
        if f(x) not in zo:
            return x
    return None


def is_trivial_morphism(f: Morphism, seed: int = 0) -> TrivialWitness:
    """Decide whether f factors through a one- or two-element algebra and
    produce the factorization."""
    if carrier_size(f.cod) == 1:
        left = to_terminal(f.dom)
        right = Morphism(left.cod, f.cod, ToTerminalBody(), "from_terminal")
        return TrivialWitness(True, "terminal", left, right, None,
                              "codomain is terminal")
    cls = _image_class(f)
    if isinstance(cls, (set, frozenset)):
        trivial = cls <= {f.cod.zero, f.cod.one}
        cls = "z" if trivial else cls
    if cls == "z":
        right = from_initial(f.cod)
        if carrier_size(f.dom) is not None:
            mapping = {x: (right.dom.one if f(x) == f.cod.one else right.dom.zero)
                       for x in elements(f.dom)}
            if isinstance(f.dom, FiniteAlgebra) and isinstance(right.dom, FiniteAlgebra):
                left = Morphism(f.dom, right.dom,
                                FiniteMapBody(tuple(mapping[x]
                                                    for x in range(f.dom.size))))
            else:
                left = Morphism(f.dom, right.dom, ElemTableBody(mapping))
        else:
            left = Morphism(f.dom, right.dom, ZCollapseBody(f), "initial_collapse")
        return TrivialWitness(True, "initial", left, right, None,
                              "image lies in {0, 1}")
    if isinstance(cls, (set, frozenset)):
        w = next(iter(v for v in sorted(cls, key=repr)
                      if v not in (f.cod.zero, f.cod.one)))
        return TrivialWitness(False, None, None, None, w,
                              "image contains a value other than 0 and 1")
    if cls == "all":
        w = _search_nontrivial_value(f, seed=seed)
        return TrivialWitness(False, None, None, None, w,
                              "map is onto a nontrivial codomain")
    if isinstance(cls, tuple) and cls[0] == "subalg":
        w = _search_nontrivial_value(f, seed=seed)
        return TrivialWitness(False, None, None, None, w,
                              "image is a nontrivial ideal subalgebra")
    w = _search_nontrivial_value(f, seed=seed)
    if w is not None:
        return TrivialWitness(False, None, None, None, w,
                              "sampling found a value outside {0, 1}")
    raise RuntimeError("cannot classify the image of this morphism")


# ---------------------------------------------------------------------------
# the pre-exact sequence and its universal properties


@dataclass(frozen=True)
class PreExactSequence:
    perfect: SubalgebraResult
    semisimple: QuotientResult

    @property
    def inclusion(self) -> Morphism:
        return self.perfect.inclusion

    @property
    def projection(self) -> Morphism:
        return self.semisimple.projection


def pre_exact(algebra: Algebra) -> PreExactSequence:
    """P(A) -> A -> S(A): the perfect part followed by the semisimple
    quotient."""
    return PreExactSequence(perfect_part(algebra), semisimple_quotient(algebra))


def probes_into(algebra: Algebra, bound: int = 4) -> list[Morphism]:
    """Maps into the algebra used to exercise prekernel universality:
    every hom from small catalog algebras when the carrier is finite, the
    vocabulary inclusions otherwise."""
    if carrier_size(algebra) is not None:
        out = [identity(algebra)]
        for e in chain_product_catalog(bound):
            src = to_finite(e) if isinstance(algebra, FiniteAlgebra) else e
            out.extend(enumerate_homs(src, algebra))
        return out
    out = [identity(algebra), from_initial(algebra)]
    for ideal in all_ideals(algebra):
        out.append(ideal_subalgebra(algebra, ideal).inclusion)
    return out


def probes_out_of(algebra: Algebra, bound: int = 4) -> list[Morphism]:
    """Maps out of the algebra for precokernel universality: every hom
    into small catalog algebras in the finite case, all marker quotients
    otherwise."""
    if carrier_size(algebra) is not None:
        out = [identity(algebra)]
        for c in chain_product_catalog(bound):
            tgt = to_finite(c) if isinstance(algebra, FiniteAlgebra) else c
            out.extend(enumerate_homs(algebra, tgt))
        return out
    return [quotient(algebra, ideal).projection for ideal in all_ideals(algebra)]


@dataclass(frozen=True)
class ProbeReport:
    ok: bool
    checked: int
    skipped: int
    failures: tuple
    reason: str = ""


def is_prekernel(k: Morphism, g: Morphism, probes=None, count: int = 200,
                 seed: int = 0) -> ProbeReport:
    """Probe the universal property of k as the prekernel of g: the
    composite is trivial, and every probe with trivial composite factors
    through k exactly once."""
    if k.cod != g.dom:
        raise ValueError("prekernel check needs k.cod == g.dom")
    if not is_trivial_morphism(compose(k, g)).trivial:
        return ProbeReport(False, 0, 0, (), "composite g o k is not trivial")
    if probes is None:
        probes = probes_into(g.dom)
    failures = []
    checked = skipped = 0
    injective = k.is_injective()
    for idx, e in enumerate(probes):
        if e.cod != g.dom:
            raise ValueError("probe codomain mismatch")
        if not is_trivial_morphism(compose(e, g)).trivial:
            skipped += 1
            continue
        checked += 1
        try:
            phi = corestrict(e, k)
        except (ValueError, TypeError) as exc:
            failures.append((idx, f"no factorization: {exc}"))
            continue
        if not same_morphism(compose(phi, k), e, count=count, seed=seed):
            failures.append((idx, "factorization does not recover the probe"))
            continue
        if not injective:
            if carrier_size(e.dom) is None or carrier_size(k.dom) is None:
                failures.append((idx, "uniqueness undecidable: k not injective"))
                continue
            cands = [h for h in enumerate_homs(e.dom, k.dom)
                     if same_morphism(compose(h, k), e)]
            if len(cands) != 1:
                failures.append((idx, f"{len(cands)} factorizations"))
    return ProbeReport(not failures, checked, skipped, tuple(failures))


def is_precokernel(g: Morphism, k: Morphism, probes=None, count: int = 200,
                   seed: int = 0) -> ProbeReport:
    """Probe the universal property of g as the precokernel of k."""
    if k.cod != g.dom:
        raise ValueError("precokernel check needs k.cod == g.dom")
    if not is_trivial_morphism(compose(k, g)).trivial:
        return ProbeReport(False, 0, 0, (), "composite g o k is not trivial")
    if probes is None:
        probes = probes_out_of(g.dom)
    failures = []
    checked = skipped = 0
    surjective = g.is_surjective()
    for idx, t in enumerate(probes):
        if t.dom != g.dom:
            raise ValueError("probe domain mismatch")
        if not is_trivial_morphism(compose(k, t)).trivial:
            skipped += 1
            continue
        checked += 1
        if not ideal_leq(g.dom, g.kernel(), t.kernel()):
            failures.append((idx, "probe does not kill ker g: no mediator"))
            continue
        try:
            psi = factor_through_quotient(g, t)
        except (ValueError, TypeError) as exc:
            failures.append((idx, f"no mediator: {exc}"))
            continue
        if not same_morphism(compose(g, psi), t, count=count, seed=seed):
            failures.append((idx, "mediator does not recover the probe"))
            continue
        if not surjective:
            failures.append((idx, "uniqueness undecidable: g not surjective"))
    return ProbeReport(not failures, checked, skipped, tuple(failures))


@dataclass(frozen=True)
class UnitFactorization:
    mediator: Morphism | None
    exists: bool
    unique: bool


def unit_factorization(g: Morphism) -> UnitFactorization:
    """Factor g: A -> B with semisimple B through the semisimple
    projection of A.  Uniqueness holds because the projection is onto."""
    if not is_semisimple(g.cod):
        raise ValueError("unit factorization needs a semisimple codomain")
    qa = semisimple_quotient(g.dom)
    if not ideal_leq(g.dom, qa.ideal, g.kernel()):
        return UnitFactorization(None, False, False)
    psi = factor_through_quotient(qa.projection, g, "unit_mediator")
    return UnitFactorization(psi, True, True)


def counit_factorization(h: Morphism) -> UnitFactorization:
    """Factor h: B -> A with perfect B through the perfect-part inclusion
    of A.  Uniqueness holds because the inclusion is one-to-one."""
    if not is_perfect(h.dom):
        raise ValueError("counit factorization needs a perfect domain")
    pa = perfect_part(h.cod)
    try:
        psi = corestrict(h, pa.inclusion, "counit_mediator")
    except ValueError:
        return UnitFactorization(None, False, False)
    return UnitFactorization(psi, True, True)


# ---------------------------------------------------------------------------
# protoadditivity


@dataclass(frozen=True)
class ProtoadditivityReport:
    ok: bool
    section_valid: bool
    comparison_injective: bool
    comparison_surjective: bool
    compared: int


def _pullback_with_projections(p: Morphism, g: Morphism):
    if carrier_size(p.dom) is not None and carrier_size(g.dom) is not None:
        pb = pullback(p, g)
        return pb.algebra, pb.left, pb.right
    if isinstance(p.body, IdentityBody):
        return g.dom, g, identity(g.dom)
    if isinstance(g.body, IdentityBody):
        return p.dom, identity(p.dom), p
    if isinstance(p.body, BlockProjectionBody):
        kept = p.body.kept
        A, C = p.dom, g.dom
        others = tuple(i for i in range(len(A.blocks)) if i not in kept)
        blocks = list(C.blocks) + [A.blocks[i] for i in others]
        pb = SymbolicAlgebra(blocks)
        pi_c = Morphism(pb, C, BlockProjectionBody(tuple(range(len(C.blocks)))))
        rest = SymbolicAlgebra([A.blocks[i] for i in others])
        pi_e = Morphism(pb, rest, BlockProjectionBody(
            tuple(range(len(C.blocks), len(blocks)))))
        lifted = compose(pi_c, g)
        placement = []
        for i in range(len(A.blocks)):
            if i in kept:
                placement.append((0, kept.index(i)))
            else:
                placement.append((1, others.index(i)))
        pi_a = Morphism(pb, A, TuplingBody((lifted, pi_e), tuple(placement)))
        return pb, pi_a, pi_c
    raise NotImplementedError(
        "symbolic pullbacks are available along identities and block "
        "projections only")


def protoadditivity_check(p: Morphism, s: Morphism, g: Morphism,
                          count: int = 300, seed: int = 0) -> ProtoadditivityReport:
    """Check that the semisimple reflection preserves the pullback of the
    split surjection p along g: the comparison from S(pullback) to the
    pullback of the reflected maps must be an isomorphism."""
    if p.cod != g.cod or s.dom != p.cod or s.cod != p.dom:
        raise ValueError("need a split surjection p with section s and a "
                         "map g into its codomain")
    section_valid = same_morphism(compose(s, p), identity(p.cod),
                                  count=count, seed=seed)
    pb, pi_a, pi_c = _pullback_with_projections(p, g)
    reflected = pullback(semisimple_map(p), semisimple_map(g))
    psi = mediator_to_pullback(reflected, semisimple_map(pi_a),
                               semisimple_map(pi_c))
    inj = psi.is_injective()
    sur = psi.is_surjective()
    return ProtoadditivityReport(section_valid and inj and sur,
                                 section_valid, inj, sur,
                                 carrier_size(psi.dom) or 0)
