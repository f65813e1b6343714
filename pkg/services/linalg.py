# services/linalg.py

"""
Exact rational linear algebra over sparse vectors.

Scalars are ``fractions.Fraction`` (always reduced, denominator > 0).
Vectors are keyed by arbitrary mutually comparable keys; iteration follows
the sorted key order so that pivot choices are reproducible.
"""

from fractions import Fraction
from math import gcd, lcm
from typing import Any, Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

Rational = Fraction
Scalar = Union[int, Fraction]
Key = Hashable

ZERO = Fraction(0)
ONE = Fraction(1)


class SparseVec(Mapping):
    """Immutable sparse vector with nonzero Fraction entries."""

    __slots__ = ("_entries", "_order", "_hash")

    def __init__(self, entries: Union[Mapping, Iterable[Tuple[Any, Scalar]], None] = None):
        data: Dict[Any, Fraction] = {}
        if entries is not None:
            items = entries.items() if isinstance(entries, Mapping) else entries
            for key, value in items:
                if value:
                    data[key] = value if isinstance(value, Fraction) else Fraction(value)
        self._entries = data
        self._order: Optional[Tuple] = None
        self._hash: Optional[int] = None

    @classmethod
    def _wrap(cls, data: Dict[Any, Fraction]) -> "SparseVec":
        # data must already be free of zeros
        vec = cls.__new__(cls)
        vec._entries = data
        vec._order = None
        vec._hash = None
        return vec

    @classmethod
    def unit(cls, key: Key, value: Scalar = 1) -> "SparseVec":
        return cls({key: value})

    # Mapping protocol ------------------------------------------------------

    def __getitem__(self, key):
        return self._entries[key]

    def __iter__(self) -> Iterator:
        return iter(self.keys_sorted())

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key) -> bool:
        return key in self._entries

    def get(self, key, default=ZERO):
        return self._entries.get(key, default)

    def keys_sorted(self) -> Tuple:
        if self._order is None:
            self._order = tuple(sorted(self._entries))
        return self._order

    def items(self):
        entries = self._entries
        return [(key, entries[key]) for key in self.keys_sorted()]

    def terms(self):
        """Unordered (key, value) view for hot loops where order is irrelevant."""
        return self._entries.items()

    # Arithmetic ------------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def leading_key(self):
        return self.keys_sorted()[0]

    def scale_add(self, c: Scalar, other: "SparseVec") -> "SparseVec":
        """self + c * other"""
        if not c or not other._entries:
            return self
        data = dict(self._entries)
        for key, value in other._entries.items():
            new = data.get(key, ZERO) + c * value
            if new:
                data[key] = new
            else:
                data.pop(key, None)
        return SparseVec._wrap(data)

    def __add__(self, other: "SparseVec") -> "SparseVec":
        return self.scale_add(ONE, other)

    def __sub__(self, other: "SparseVec") -> "SparseVec":
        return self.scale_add(-ONE, other)

    def __neg__(self) -> "SparseVec":
        return SparseVec._wrap({key: -value for key, value in self._entries.items()})

    def __mul__(self, c: Scalar) -> "SparseVec":
        if not c:
            return SparseVec()
        return SparseVec._wrap({key: value * c for key, value in self._entries.items()})

    __rmul__ = __mul__

    def dot(self, other: "SparseVec") -> Fraction:
        small, large = (self, other) if len(self) <= len(other) else (other, self)
        total = ZERO
        for key, value in small._entries.items():
            w = large._entries.get(key)
            if w:
                total += value * w
        return total

    def map_keys(self, fn) -> "SparseVec":
        data: Dict[Any, Fraction] = {}
        for key, value in self._entries.items():
            new_key = fn(key)
            new = data.get(new_key, ZERO) + value
            if new:
                data[new_key] = new
            else:
                data.pop(new_key, None)
        return SparseVec._wrap(data)

    def __eq__(self, other) -> bool:
        if isinstance(other, SparseVec):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._entries.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{key!r}: {value}" for key, value in self.items())
        return f"SparseVec({{{body}}})"


def scale_add(u: SparseVec, c: Scalar, v: SparseVec) -> SparseVec:
    """Return u + c*v with zero entries dropped."""
    return u.scale_add(c, v)


def to_sparse(values: Sequence[Scalar]) -> SparseVec:
    """Dense sequence -> SparseVec keyed by position."""
    return SparseVec(enumerate(values))


class RankAccumulator:
    """
    Incremental row space in reduced row echelon form.

    Each stored row has coefficient 1 at its pivot (its least key) and 0 at
    every other pivot. Single writer: not safe for concurrent inserts.
    """

    def __init__(self):
        self._pivots: Dict[Any, SparseVec] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def pivots(self) -> Dict[Any, SparseVec]:
        return dict(self._pivots)

    def reduce(self, v: SparseVec) -> SparseVec:
        """Residual of v after eliminating every pivot column."""
        pivots = self._pivots
        hits = [key for key in v._entries if key in pivots]
        if not hits:
            return v
        original = v
        data = dict(v.terms())
        for key in hits:
            # RREF: subtracting one pivot row never touches another pivot column
            c = original[key]
            for k2, c2 in pivots[key].terms():
                new = data.get(k2, ZERO) - c * c2
                if new:
                    data[k2] = new
                else:
                    data.pop(k2, None)
        return SparseVec._wrap(data)

    def contains(self, v: SparseVec) -> bool:
        return self.reduce(v).is_zero()

    def insert(self, v: SparseVec) -> bool:
        """Add v to the row space; True iff the rank increased."""
        residual = self.reduce(v)
        if residual.is_zero():
            return False
        pivot = residual.leading_key()
        row = residual * (ONE / residual[pivot])
        for key, other in list(self._pivots.items()):
            c = other.get(pivot)
            if c:
                self._pivots[key] = other.scale_add(-c, row)
        self._pivots[pivot] = row
        return True

    def copy(self) -> "RankAccumulator":
        clone = RankAccumulator()
        clone._pivots = dict(self._pivots)
        return clone


def rank_insert(acc: RankAccumulator, v: SparseVec) -> Tuple[RankAccumulator, bool]:
    """Functional form of RankAccumulator.insert."""
    increased = acc.insert(v)
    return acc, increased


def rank_of(vectors: Iterable[SparseVec]) -> int:
    acc = RankAccumulator()
    for v in vectors:
        acc.insert(v)
    return acc.rank


def nullspace(rows: Iterable[SparseVec], keys: Sequence[Key]) -> List[SparseVec]:
    """Basis of {x : row . x = 0 for every row}, x supported on ``keys``."""
    acc = RankAccumulator()
    for row in rows:
        acc.insert(row)
    pivots = acc.pivots
    basis = []
    for free in sorted(keys):
        if free in pivots:
            continue
        data = {free: ONE}
        for pivot, row in pivots.items():
            c = row.get(free)
            if c:
                data[pivot] = -c
        basis.append(SparseVec(data))
    return basis


class SpanSolver:
    """Express vectors as combinations of a fixed spanning list."""

    def __init__(self, basis: Sequence[SparseVec]):
        self.size = len(basis)
        self._acc = RankAccumulator()
        for index, vector in enumerate(basis):
            augmented = {(0, key): value for key, value in vector.terms()}
            augmented[(1, index)] = ONE
            self._acc.insert(SparseVec._wrap(augmented))

    def coordinates(self, target: SparseVec) -> Optional[List[Fraction]]:
        """Coefficients c with sum(c_i * basis_i) == target, or None if not in the span."""
        residual = self._acc.reduce(target.map_keys(lambda key: (0, key)))
        coefficients = [ZERO] * self.size
        for (tag, key), value in residual.terms():
            if tag == 0:
                return None
            coefficients[key] = -value
        return coefficients


class SparseMatrix:
    """
    Column-sparse exact matrix: column key -> SparseVec image.

    Represents a linear map on a space with a (possibly implicit) basis;
    missing columns are zero.
    """

    __slots__ = ("_columns",)

    def __init__(self, columns: Union[Mapping, Iterable[Tuple[Any, SparseVec]], None] = None):
        data: Dict[Any, SparseVec] = {}
        if columns is not None:
            items = columns.items() if isinstance(columns, Mapping) else columns
            for key, image in items:
                if image:
                    data[key] = image
        self._columns = data

    @classmethod
    def from_entries(cls, entries: Iterable[Tuple[Any, Any, Scalar]]) -> "SparseMatrix":
        """Build from (row, column, value) triples; repeated positions add up."""
        columns: Dict[Any, Dict[Any, Fraction]] = {}
        for row, col, value in entries:
            bucket = columns.setdefault(col, {})
            bucket[row] = bucket.get(row, ZERO) + Fraction(value)
        return cls((col, SparseVec(bucket)) for col, bucket in columns.items())

    def column(self, key) -> SparseVec:
        return self._columns.get(key) or SparseVec()

    def columns(self):
        return self._columns.items()

    def is_zero(self) -> bool:
        return not self._columns

    def apply(self, v: SparseVec) -> SparseVec:
        data: Dict[Any, Fraction] = {}
        columns = self._columns
        for key, c in v.terms():
            image = columns.get(key)
            if image is None:
                continue
            for row, value in image.terms():
                new = data.get(row, ZERO) + c * value
                if new:
                    data[row] = new
                else:
                    data.pop(row, None)
        return SparseVec._wrap(data)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        return SparseMatrix((key, self.apply(image)) for key, image in other._columns.items())

    def _combine(self, c: Scalar, other: "SparseMatrix") -> "SparseMatrix":
        columns = dict(self._columns)
        for key, image in other._columns.items():
            columns[key] = columns.get(key, SparseVec()).scale_add(c, image)
        return SparseMatrix(columns)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self._combine(ONE, other)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self._combine(-ONE, other)

    def scale(self, c: Scalar) -> "SparseMatrix":
        return SparseMatrix((key, image * c) for key, image in self._columns.items())

    def restrict(self, keys: Iterable) -> "SparseMatrix":
        """Keep only the given columns."""
        keys = set(keys)
        return SparseMatrix((key, image) for key, image in self._columns.items() if key in keys)

    def reindex(self, index: Mapping) -> "SparseMatrix":
        """Rename row and column keys through ``index``; keys outside it must carry no entries."""
        return SparseMatrix(
            (index[key], image.map_keys(index.__getitem__)) for key, image in self._columns.items()
        )

    def rows(self) -> Dict[Any, SparseVec]:
        buckets: Dict[Any, Dict[Any, Fraction]] = {}
        for col, image in self._columns.items():
            for row, value in image.terms():
                buckets.setdefault(row, {})[col] = value
        return {row: SparseVec._wrap(bucket) for row, bucket in buckets.items()}

    def flatten(self) -> SparseVec:
        """Matrix as a vector keyed by (column, row)."""
        data = {}
        for col, image in self._columns.items():
            for row, value in image.terms():
                data[(col, row)] = value
        return SparseVec._wrap(data)

    def entries(self) -> List[Tuple[Any, Any, Fraction]]:
        return sorted((row, col, value) for col, image in self._columns.items() for row, value in image.terms())

    def __eq__(self, other) -> bool:
        if isinstance(other, SparseMatrix):
            return self._columns == other._columns
        return NotImplemented

    def __repr__(self) -> str:
        return f"SparseMatrix({len(self._columns)} nonzero columns)"


def commutator(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    return (a @ b) - (b @ a)


def primitive(values: Sequence[Scalar]) -> Tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector with the same direction."""
    fractions = [Fraction(v) for v in values]
    denominator = 1
    for f in fractions:
        denominator = lcm(denominator, f.denominator)
    ints = [int(f * denominator) for f in fractions]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)
