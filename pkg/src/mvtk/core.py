"""Carriers and operations for MV-algebras in two regimes.

A finite algebra stores its operation tables outright.  A symbolic algebra
is a product of blocks, each either a finite chain [0, m] or a Komori block
built from the lexicographic product Z x_lex Z^r truncated at (m, 0); the
latter has an infinite carrier, so all exhaustive questions about it go
through markers or sampling rather than enumeration.

Elements of a symbolic algebra are tuples with one entry per block: an int
for a chain block, an ``(a, bvec)`` pair for a Komori block.  The terminal
algebra is the empty product; its only element is ``()``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Chain",
    "Komori",
    "SymbolicAlgebra",
    "FiniteAlgebra",
    "make_chain",
    "make_komori",
    "make_finite",
    "terminal_algebra",
    "initial_algebra",
    "product",
    "to_finite",
    "carrier_size",
    "elements",
    "describe",
    "oplus",
    "otimes",
    "neg",
    "ominus",
    "arrow",
    "dist",
    "leq",
    "join",
    "meet",
    "eval_op",
    "forced_elements",
    "random_element",
    "sample_tuples",
    "CheckResult",
    "CheckReport",
    "check_axioms",
    "check_derived_identities",
    "check_lattice_identities",
    "is_terminal_object",
    "is_initial_object",
    "is_trivial_object",
    "canonical_blocks",
    "are_isomorphic",
    "hom_tables",
    "iso_table",
    "AXIOM_NAMES",
]


# ---------------------------------------------------------------------------
# carriers


@dataclass(frozen=True)
class Chain:
    """Chain block: the interval {0, ..., m} with truncated addition."""

    m: int

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError(f"chain bound must be >= 0, got {self.m}")

    def __repr__(self) -> str:
        return f"Chain({self.m})"


@dataclass(frozen=True)
class Komori:
    """Komori block: unit interval of Z x_lex Z^r with unit (m, 0).

    Carrier: pairs (a, b) with 0 <= a <= m, b in Z^r, where b >= 0 when
    a = 0 and b <= 0 when a = m.  For m = 1, r = 1 this is the Chang
    algebra.
    """

    m: int
    r: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"komori bound must be >= 1, got {self.m}")
        if self.r < 1:
            raise ValueError(f"komori rank must be >= 1, got {self.r}")

    def __repr__(self) -> str:
        return f"Komori({self.m},{self.r})"


Block = Chain | Komori


def _block_zero(b: Block):
    if isinstance(b, Chain):
        return 0
    return (0, (0,) * b.r)


def _block_one(b: Block):
    if isinstance(b, Chain):
        return b.m
    return (b.m, (0,) * b.r)


def _block_contains(b: Block, x) -> bool:
    if isinstance(b, Chain):
        return isinstance(x, int) and 0 <= x <= b.m
    if not (isinstance(x, tuple) and len(x) == 2):
        return False
    a, bv = x
    if not (isinstance(a, int) and isinstance(bv, tuple) and len(bv) == b.r):
        return False
    if not all(isinstance(t, int) for t in bv):
        return False
    if not 0 <= a <= b.m:
        return False
    if a == 0 and any(t < 0 for t in bv):
        return False
    if a == b.m and any(t > 0 for t in bv):
        return False
    return True


def _block_plus(b: Block, x, y):
    if isinstance(b, Chain):
        s = x + y
        return s if s < b.m else b.m
    a = x[0] + y[0]
    if a < b.m:
        return (a, tuple(p + q for p, q in zip(x[1], y[1])))
    if a > b.m:
        return (b.m, (0,) * b.r)
    return (b.m, tuple(min(p + q, 0) for p, q in zip(x[1], y[1])))


def _block_neg(b: Block, x):
    if isinstance(b, Chain):
        return b.m - x
    return (b.m - x[0], tuple(-t for t in x[1]))


class SymbolicAlgebra:
    """Product of chain and Komori blocks, kept in construction order.

    ``Chain(0)`` factors are dropped on construction, so the terminal
    algebra (empty block tuple) has exactly one representation.
    """

    __slots__ = ("blocks",)

    def __init__(self, blocks):
        blocks = tuple(b for b in blocks if not (isinstance(b, Chain) and b.m == 0))
        for b in blocks:
            if not isinstance(b, (Chain, Komori)):
                raise TypeError(f"not a block: {b!r}")
        object.__setattr__(self, "blocks", blocks)

    def __setattr__(self, name, value):
        raise AttributeError("SymbolicAlgebra is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolicAlgebra) and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash(("sym", self.blocks))

    def __repr__(self) -> str:
        if not self.blocks:
            return "SymbolicAlgebra(terminal)"
        return "SymbolicAlgebra(%s)" % " x ".join(repr(b) for b in self.blocks)

    @property
    def zero(self):
        return tuple(_block_zero(b) for b in self.blocks)

    @property
    def one(self):
        return tuple(_block_one(b) for b in self.blocks)

    @property
    def is_terminal(self) -> bool:
        return not self.blocks

    def contains(self, x) -> bool:
        if not isinstance(x, tuple) or len(x) != len(self.blocks):
            return False
        return all(_block_contains(b, v) for b, v in zip(self.blocks, x))

    def plus(self, x, y):
        return tuple(_block_plus(b, u, v) for b, u, v in zip(self.blocks, x, y))

    def neg(self, x):
        return tuple(_block_neg(b, v) for b, v in zip(self.blocks, x))

    def finite_carrier_size(self) -> int | None:
        """Number of elements, or None when some block is a Komori block."""
        n = 1
        for b in self.blocks:
            if isinstance(b, Komori):
                return None
            n *= b.m + 1
        return n


class FiniteAlgebra:
    """Algebra given by explicit tables over {0, ..., n-1}.

    Tables are stored as nested tuples so instances hash and compare by
    value.  Nothing here assumes the tables satisfy the axioms; corrupted
    tables are legal inputs for the checkers.
    """

    __slots__ = ("size", "zero", "neg_row", "plus_rows", "_np")

    def __init__(self, neg_row, plus_rows, zero: int = 0):
        neg_row = tuple(neg_row)
        plus_rows = tuple(tuple(r) for r in plus_rows)
        n = len(neg_row)
        if len(plus_rows) != n or any(len(r) != n for r in plus_rows):
            raise ValueError("plus table must be n x n for n = len(neg)")
        rng = range(n)
        if any(v not in rng for v in neg_row):
            raise ValueError("neg table entry out of range")
        if any(v not in rng for r in plus_rows for v in r):
            raise ValueError("plus table entry out of range")
        if zero not in rng:
            raise ValueError("zero out of range")
        object.__setattr__(self, "size", n)
        object.__setattr__(self, "zero", zero)
        object.__setattr__(self, "neg_row", neg_row)
        object.__setattr__(self, "plus_rows", plus_rows)
        object.__setattr__(self, "_np", None)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteAlgebra is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteAlgebra)
            and self.zero == other.zero
            and self.neg_row == other.neg_row
            and self.plus_rows == other.plus_rows
        )

    def __hash__(self) -> int:
        return hash(("fin", self.zero, self.neg_row, self.plus_rows))

    def __repr__(self) -> str:
        return f"FiniteAlgebra(size={self.size})"

    @property
    def one(self) -> int:
        return self.neg_row[self.zero]

    def contains(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.size

    def plus(self, x, y):
        return self.plus_rows[x][y]

    def neg(self, x):
        return self.neg_row[x]

    def tables(self):
        """(neg, plus) as numpy arrays, cached."""
        if self._np is None:
            object.__setattr__(
                self,
                "_np",
                (
                    np.array(self.neg_row, dtype=np.int64),
                    np.array(self.plus_rows, dtype=np.int64),
                ),
            )
        return self._np


Algebra = SymbolicAlgebra | FiniteAlgebra


# ---------------------------------------------------------------------------
# constructors


def make_chain(m: int) -> SymbolicAlgebra:
    """Chain algebra on {0, ..., m}; m = 0 gives the terminal algebra."""
    if m < 0:
        raise ValueError("chain bound must be >= 0")
    return SymbolicAlgebra((Chain(m),))


def make_komori(m: int, r: int) -> SymbolicAlgebra:
    return SymbolicAlgebra((Komori(m, r),))


def make_finite(neg_row, plus_rows, zero: int = 0) -> FiniteAlgebra:
    return FiniteAlgebra(neg_row, plus_rows, zero)


def terminal_algebra() -> SymbolicAlgebra:
    return SymbolicAlgebra(())


def initial_algebra() -> SymbolicAlgebra:
    """Two-element chain, the initial object."""
    return make_chain(1)


def product(algebras) -> Algebra:
    """Direct product.  All symbolic factors give a symbolic product;
    otherwise every factor must have a finite carrier and the result is a
    table algebra (use :func:`to_finite` on symbolic factors first)."""
    algebras = list(algebras)
    if all(isinstance(a, SymbolicAlgebra) for a in algebras):
        blocks = []
        for a in algebras:
            blocks.extend(a.blocks)
        return SymbolicAlgebra(blocks)
    finite = [a if isinstance(a, FiniteAlgebra) else to_finite(a) for a in algebras]
    carriers = [range(a.size) for a in finite]
    elems = list(itertools.product(*carriers))
    index = {e: i for i, e in enumerate(elems)}
    neg_row = [index[tuple(a.neg(v) for a, v in zip(finite, e))] for e in elems]
    plus_rows = [
        [index[tuple(a.plus(u, v) for a, u, v in zip(finite, e, f))] for f in elems]
        for e in elems
    ]
    zero = index[tuple(a.zero for a in finite)]
    return FiniteAlgebra(neg_row, plus_rows, zero)


def carrier_size(algebra: Algebra) -> int | None:
    if isinstance(algebra, FiniteAlgebra):
        return algebra.size
    return algebra.finite_carrier_size()


def elements(algebra: Algebra):
    """All elements, in a fixed order.  Raises on infinite carriers."""
    if isinstance(algebra, FiniteAlgebra):
        return list(range(algebra.size))
    per_block = []
    for b in algebra.blocks:
        if isinstance(b, Komori):
            raise ValueError(f"cannot enumerate infinite carrier of {b!r}")
        per_block.append(range(b.m + 1))
    return [tuple(e) for e in itertools.product(*per_block)]


def to_finite(algebra: Algebra) -> FiniteAlgebra:
    """Table form of a finite-carrier algebra.  Element i of the result is
    ``elements(algebra)[i]``."""
    if isinstance(algebra, FiniteAlgebra):
        return algebra
    elems = elements(algebra)
    index = {e: i for i, e in enumerate(elems)}
    neg_row = [index[algebra.neg(e)] for e in elems]
    plus_rows = [[index[algebra.plus(e, f)] for f in elems] for e in elems]
    return FiniteAlgebra(neg_row, plus_rows, index[algebra.zero])


def describe(algebra: Algebra) -> str:
    if isinstance(algebra, FiniteAlgebra):
        return f"finite[{algebra.size}]"
    if algebra.is_terminal:
        return "terminal"
    parts = []
    for b in algebra.blocks:
        if isinstance(b, Chain):
            parts.append(f"Chain({b.m})")
        else:
            parts.append(f"Komori({b.m},{b.r})")
    return " x ".join(parts)


# ---------------------------------------------------------------------------
# derived operations


def oplus(algebra: Algebra, x, y):
    return algebra.plus(x, y)


def neg(algebra: Algebra, x):
    return algebra.neg(x)


def otimes(algebra: Algebra, x, y):
    """x (*) y = neg(neg x (+) neg y), the monoidal product."""
    return algebra.neg(algebra.plus(algebra.neg(x), algebra.neg(y)))


def arrow(algebra: Algebra, x, y):
    return algebra.plus(algebra.neg(x), y)


def ominus(algebra: Algebra, x, y):
    """Truncated difference x (-) y = x (*) neg y."""
    return otimes(algebra, x, algebra.neg(y))


def dist(algebra: Algebra, x, y):
    """Chang distance d(x, y) = (x (-) y) (+) (y (-) x); zero iff x = y."""
    return algebra.plus(ominus(algebra, x, y), ominus(algebra, y, x))


def leq(algebra: Algebra, x, y) -> bool:
    return arrow(algebra, x, y) == algebra.one


def join(algebra: Algebra, x, y):
    return algebra.plus(ominus(algebra, x, y), y)


def meet(algebra: Algebra, x, y):
    return otimes(algebra, x, algebra.plus(algebra.neg(x), y))


_OPS = {
    "plus": (2, oplus),
    "neg": (1, neg),
    "times": (2, otimes),
    "arrow": (2, arrow),
    "minus": (2, ominus),
    "dist": (2, dist),
    "join": (2, join),
    "meet": (2, meet),
}


def eval_op(algebra: Algebra, name: str, args):
    """Evaluate a named primitive or derived operation on elements."""
    if name == "zero":
        if args:
            raise ValueError("zero takes no arguments")
        return algebra.zero
    if name == "one":
        if args:
            raise ValueError("one takes no arguments")
        return algebra.one
    if name == "leq":
        x, y = args
        return leq(algebra, x, y)
    try:
        arity, fn = _OPS[name]
    except KeyError:
        raise ValueError(f"unknown operation {name!r}") from None
    if len(args) != arity:
        raise ValueError(f"{name} takes {arity} arguments, got {len(args)}")
    return fn(algebra, *args)


# ---------------------------------------------------------------------------
# element sampling

_SAMPLE_BOUND = 8


def forced_elements(algebra: Algebra):
    """Elements every sampler must hit: 0, 1, and one pure infinitesimal
    plus its negation per Komori block."""
    if isinstance(algebra, FiniteAlgebra):
        out = [algebra.zero, algebra.one]
        return list(dict.fromkeys(out))
    out = [algebra.zero, algebra.one]
    for i, b in enumerate(algebra.blocks):
        if isinstance(b, Komori):
            eps = list(algebra.zero)
            eps[i] = (0, (1,) + (0,) * (b.r - 1))
            out.append(tuple(eps))
            out.append(algebra.neg(tuple(eps)))
    return list(dict.fromkeys(out))


def random_element(algebra: Algebra, rng: random.Random, bound: int = _SAMPLE_BOUND):
    if isinstance(algebra, FiniteAlgebra):
        return rng.randrange(algebra.size)
    out = []
    for b in algebra.blocks:
        if isinstance(b, Chain):
            out.append(rng.randint(0, b.m))
        else:
            a = rng.randint(0, b.m)
            if a == 0:
                bv = tuple(rng.randint(0, bound) for _ in range(b.r))
            elif a == b.m:
                bv = tuple(rng.randint(-bound, 0) for _ in range(b.r))
            else:
                bv = tuple(rng.randint(-bound, bound) for _ in range(b.r))
            out.append((a, bv))
    return tuple(out)


def sample_tuples(algebra: Algebra, arity: int, count: int, rng: random.Random,
                  bound: int = _SAMPLE_BOUND):
    """Deterministic stream of element tuples: all combinations of forced
    elements first (capped), then random draws up to ``count``."""
    seen = 0
    forced = forced_elements(algebra)
    for combo in itertools.islice(itertools.product(forced, repeat=arity), count):
        yield combo
        seen += 1
    while seen < count:
        yield tuple(random_element(algebra, rng, bound) for _ in range(arity))
        seen += 1


# ---------------------------------------------------------------------------
# identity checking


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    witness: tuple | None
    checked: int


@dataclass(frozen=True)
class CheckReport:
    subject: str
    mode: str
    results: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.ok]

    def counterexample(self) -> tuple[str, tuple] | None:
        for r in self.results:
            if not r.ok:
                return (r.name, r.witness)
        return None


AXIOM_NAMES = (
    "add_assoc",
    "add_comm",
    "zero_unit",
    "neg_involution",
    "one_absorbing",
    "lukasiewicz",
)


def _axiom_checks(A: Algebra):
    one = A.neg(A.zero)
    return [
        ("add_assoc", 3,
         lambda x, y, z: A.plus(A.plus(x, y), z) == A.plus(x, A.plus(y, z))),
        ("add_comm", 2, lambda x, y: A.plus(x, y) == A.plus(y, x)),
        ("zero_unit", 1, lambda x: A.plus(x, A.zero) == x),
        ("neg_involution", 1, lambda x: A.neg(A.neg(x)) == x),
        ("one_absorbing", 1, lambda x: A.plus(x, one) == one),
        ("lukasiewicz", 2,
         lambda x, y: A.plus(A.neg(A.plus(A.neg(x), y)), y)
         == A.plus(A.neg(A.plus(A.neg(y), x)), x)),
    ]


def _derived_checks(A: Algebra):
    one = A.neg(A.zero)
    return [
        ("neg_one_is_zero", 0, lambda: A.neg(one) == A.zero),
        ("plus_from_times", 2,
         lambda x, y: A.plus(x, y) == A.neg(otimes(A, A.neg(x), A.neg(y)))),
        ("one_ceiling", 1, lambda x: A.plus(x, one) == one),
        ("difference_symmetry", 2,
         lambda x, y: A.plus(ominus(A, x, y), y) == A.plus(ominus(A, y, x), x)),
        ("self_arrow_is_one", 1, lambda x: arrow(A, x, x) == one),
        ("dist_separates", 2,
         lambda x, y: (dist(A, x, y) == A.zero) == (x == y)),
    ]


def _lattice_checks(A: Algebra):
    return [
        ("times_over_join", 3,
         lambda x, y, z: otimes(A, x, join(A, y, z))
         == join(A, otimes(A, x, y), otimes(A, x, z))),
        ("times_over_meet", 3,
         lambda x, y, z: otimes(A, x, meet(A, y, z))
         == meet(A, otimes(A, x, y), otimes(A, x, z))),
        ("plus_over_join", 3,
         lambda x, y, z: A.plus(x, join(A, y, z))
         == join(A, A.plus(x, y), A.plus(x, z))),
        ("plus_over_meet", 3,
         lambda x, y, z: A.plus(x, meet(A, y, z))
         == meet(A, A.plus(x, y), A.plus(x, z))),
        ("join_absorption", 2, lambda x, y: join(A, x, meet(A, x, y)) == x),
        ("meet_absorption", 2, lambda x, y: meet(A, x, join(A, x, y)) == x),
    ]


def _run_identity_checks(A, checks, subject, mode, count, bound, seed):
    if mode not in ("exhaustive", "sample"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "exhaustive" and carrier_size(A) is None:
        raise ValueError("exhaustive mode requires a finite carrier")
    results = []
    for name, arity, pred in checks:
        rng = random.Random(f"{seed}:{name}")
        if mode == "exhaustive":
            pool = elements(A)
            stream = itertools.product(pool, repeat=arity)
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
    return CheckReport(subject, mode, tuple(results))


def _axioms_finite_fast(A: FiniteAlgebra) -> CheckReport:
    negt, plust = A.tables()
    n = A.size
    idx = np.arange(n)
    one = int(negt[A.zero])
    results = []

    ab = plust[plust]                    # (x+y)+z at [x, y, z]
    bc = plust[:, plust]                 # x+(y+z) at [x, y, z]
    bad = np.argwhere(ab != bc)
    results.append(CheckResult(
        "add_assoc", bad.size == 0,
        tuple(int(v) for v in bad[0]) if bad.size else None, n ** 3))

    bad = np.argwhere(plust != plust.T)
    results.append(CheckResult(
        "add_comm", bad.size == 0,
        tuple(int(v) for v in bad[0]) if bad.size else None, n ** 2))

    bad = np.argwhere(plust[:, A.zero] != idx)
    results.append(CheckResult(
        "zero_unit", bad.size == 0,
        (int(bad[0][0]),) if bad.size else None, n))

    bad = np.argwhere(negt[negt] != idx)
    results.append(CheckResult(
        "neg_involution", bad.size == 0,
        (int(bad[0][0]),) if bad.size else None, n))

    bad = np.argwhere(plust[:, one] != one)
    results.append(CheckResult(
        "one_absorbing", bad.size == 0,
        (int(bad[0][0]),) if bad.size else None, n))

    # neg(neg x + y) + y, as a table over [x, y]
    lhs = plust[negt[plust[negt[:, None], idx]], idx]
    bad = np.argwhere(lhs != lhs.T)
    results.append(CheckResult(
        "lukasiewicz", bad.size == 0,
        tuple(int(v) for v in bad[0]) if bad.size else None, n ** 2))

    return CheckReport("axioms", "exhaustive", tuple(results))


def check_axioms(algebra: Algebra, mode: str = "exhaustive", count: int = 2000,
                 bound: int = _SAMPLE_BOUND, seed: int = 0) -> CheckReport:
    """Verify the six defining identities.

    Exhaustive mode needs a finite carrier and uses vectorized table
    arithmetic when given a table algebra.  Sample mode draws ``count``
    tuples per identity, always including 0, 1 and per-block
    infinitesimals, with coefficients bounded by ``bound``.
    """
    if mode == "exhaustive" and isinstance(algebra, FiniteAlgebra):
        return _axioms_finite_fast(algebra)
    return _run_identity_checks(
        algebra, _axiom_checks(algebra), "axioms", mode, count, bound, seed)


def check_derived_identities(algebra: Algebra, mode: str = "exhaustive",
                             count: int = 2000, bound: int = _SAMPLE_BOUND,
                             seed: int = 0) -> CheckReport:
    """Consequences of the axioms: de Morgan form of (+), ceiling at one,
    symmetry of truncated differences, separation by the distance term."""
    return _run_identity_checks(
        algebra, _derived_checks(algebra), "derived", mode, count, bound, seed)


def check_lattice_identities(algebra: Algebra, mode: str = "sample",
                             count: int = 500, bound: int = _SAMPLE_BOUND,
                             seed: int = 0) -> CheckReport:
    """Distributivity of (*) and (+) over the derived join and meet, plus
    the absorption laws."""
    return _run_identity_checks(
        algebra, _lattice_checks(algebra), "lattice", mode, count, bound, seed)


# ---------------------------------------------------------------------------
# object classification and isomorphism


def is_terminal_object(algebra: Algebra) -> bool:
    return carrier_size(algebra) == 1


def is_initial_object(algebra: Algebra) -> bool:
    return carrier_size(algebra) == 2


def is_trivial_object(algebra: Algebra) -> bool:
    """Carrier {0} or {0, 1}: the objects every trivial map factors through."""
    return carrier_size(algebra) in (1, 2)


def canonical_blocks(algebra: SymbolicAlgebra) -> tuple:
    """Block multiset in a normal form independent of construction order."""
    def key(b: Block):
        if isinstance(b, Chain):
            return (0, b.m, 0)
        return (1, b.m, b.r)
    return tuple(sorted(algebra.blocks, key=key))


def are_isomorphic(a: Algebra, b: Algebra) -> bool:
    """Isomorphism test.  Symbolic pairs compare block multisets (a direct
    product of chain and Komori blocks determines them); mixed or finite
    pairs search for a bijective table morphism."""
    if isinstance(a, SymbolicAlgebra) and isinstance(b, SymbolicAlgebra):
        return canonical_blocks(a) == canonical_blocks(b)
    na, nb = carrier_size(a), carrier_size(b)
    if na is None or nb is None:
        # one side infinite: finite side can only match if sizes agree
        return False
    if na != nb:
        return False
    return iso_table(to_finite(a), to_finite(b)) is not None


# ---------------------------------------------------------------------------
# morphism table search


def _propagate(A: FiniteAlgebra, B: FiniteAlgebra, table, x, v, used):
    """Assign table[x] = v and close under neg and plus against everything
    already assigned.  Mutates table (and used, when injective search);
    returns the list of newly assigned points or None on contradiction."""
    stack = [(x, v)]
    added = []
    while stack:
        x, v = stack.pop()
        cur = table[x]
        if cur is not None:
            if cur != v:
                _undo(table, used, added)
                return None
            continue
        if used is not None:
            if v in used:
                _undo(table, used, added)
                return None
            used.add(v)
        table[x] = v
        added.append(x)
        nx = A.neg_row[x]
        stack.append((nx, B.neg_row[v]))
        for y, w in enumerate(table):
            if w is None:
                continue
            stack.append((A.plus_rows[x][y], B.plus_rows[v][w]))
            stack.append((A.plus_rows[y][x], B.plus_rows[w][v]))
    return added


def _undo(table, used, added):
    for x in added:
        if used is not None:
            used.discard(table[x])
        table[x] = None


def hom_tables(A: FiniteAlgebra, B: FiniteAlgebra, bijective: bool = False,
               limit: int | None = None) -> list[tuple[int, ...]]:
    """All homomorphism tables A -> B (zero-, plus- and neg-preserving),
    found by backtracking with closure propagation.  Deterministic order.
    ``bijective`` restricts to bijections; ``limit`` stops early."""
    if bijective and A.size != B.size:
        return []
    out: list[tuple[int, ...]] = []
    table: list[int | None] = [None] * A.size
    used: set[int] | None = set() if bijective else None
    seed = _propagate(A, B, table, A.zero, B.zero, used)
    if seed is None:
        return out

    def rec() -> bool:
        if limit is not None and len(out) >= limit:
            return True
        x = next((i for i, v in enumerate(table) if v is None), None)
        if x is None:
            out.append(tuple(table))  # type: ignore[arg-type]
            return limit is not None and len(out) >= limit
        for v in range(B.size):
            added = _propagate(A, B, table, x, v, used)
            if added is None:
                continue
            if rec():
                return True
            _undo(table, used, added)
        return False

    rec()
    _undo(table, used, seed)
    return out


def iso_table(A: FiniteAlgebra, B: FiniteAlgebra) -> tuple[int, ...] | None:
    found = hom_tables(A, B, bijective=True, limit=1)
    return found[0] if found else None
