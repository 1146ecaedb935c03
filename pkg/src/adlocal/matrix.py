"""Square matrices over an exact base ring.

Carries the matrix ring M_n(R): matrix units, Pierce components, the
staircase element (ones on the first superdiagonal), commutators, the
block reinterpretation of M_{2m}(R) as 2x2 matrices over M_m(R), and the
top-left corner subring with its embed/extract converters.

Indices are 1-based throughout the public API; storage is 0-based row
tuples.  Matrices are immutable and hashable, so they double as canonical
dictionary keys and as elements of a :class:`MatrixRing`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from operator import mul as _int_mul

from .errors import DimensionError, ShapeMismatchError
from .rings import ENUMERATION_CAP, Ring, Zmod, ring_axiom_check


class Matrix:
    """Immutable n x n matrix over a base ring."""

    __slots__ = ("ring", "n", "rows", "_hash")

    def __init__(self, ring: Ring, rows: tuple):
        self.ring = ring
        self.n = len(rows)
        self.rows = rows
        self._hash = None

    def entry(self, i: int, j: int):
        """Entry at 1-based position (i, j)."""
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"entry ({i},{j}) outside 1..{self.n}")
        return self.rows[i - 1][j - 1]

    def _check_compatible(self, other):
        if not isinstance(other, Matrix):
            raise ShapeMismatchError(f"expected a Matrix, got {other!r}")
        if self.n != other.n or self.ring != other.ring:
            raise ShapeMismatchError(
                f"operands live in M_{self.n}({self.ring.spec}) and "
                f"M_{other.n}({other.ring.spec})"
            )

    def __add__(self, other):
        self._check_compatible(other)
        ring = self.ring
        if type(ring) is Zmod:
            m = ring.modulus
            rows = tuple(
                tuple((x + y) % m for x, y in zip(r, s))
                for r, s in zip(self.rows, other.rows)
            )
        else:
            add = ring.add
            rows = tuple(
                tuple(add(x, y) for x, y in zip(r, s))
                for r, s in zip(self.rows, other.rows)
            )
        return Matrix(ring, rows)

    def __neg__(self):
        ring = self.ring
        if type(ring) is Zmod:
            m = ring.modulus
            rows = tuple(tuple(-x % m for x in r) for r in self.rows)
        else:
            neg = ring.neg
            rows = tuple(tuple(neg(x) for x in r) for r in self.rows)
        return Matrix(ring, rows)

    def __sub__(self, other):
        self._check_compatible(other)
        ring = self.ring
        if type(ring) is Zmod:
            m = ring.modulus
            rows = tuple(
                tuple((x - y) % m for x, y in zip(r, s))
                for r, s in zip(self.rows, other.rows)
            )
            return Matrix(ring, rows)
        return self + (-other)

    def __mul__(self, other):
        self._check_compatible(other)
        ring = self.ring
        cols = tuple(zip(*other.rows))
        if type(ring) is Zmod:
            m = ring.modulus
            rows = tuple(
                tuple(sum(map(_int_mul, row, col)) % m for col in cols)
                for row in self.rows
            )
        else:
            add, rmul, zero = ring.add, ring.mul, ring.zero
            out = []
            for row in self.rows:
                line = []
                for col in cols:
                    acc = zero
                    for x, y in zip(row, col):
                        acc = add(acc, rmul(x, y))
                    line.append(acc)
                out.append(tuple(line))
            rows = tuple(out)
        return Matrix(ring, rows)

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Matrix)
            and self.n == other.n
            and self.rows == other.rows
            and self.ring == other.ring
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.n, self.rows))
            self._hash = h
        return h

    def __repr__(self):
        body = ",".join("[" + ",".join(self.ring.el_str(x) for x in r) + "]" for r in self.rows)
        return f"[{body}]@{self.ring.spec}"


def matrix(ring: Ring, rows) -> Matrix:
    """Validating constructor: every entry must be canonical for ``ring``."""
    frozen = tuple(tuple(row) for row in rows)
    n = len(frozen)
    for row in frozen:
        if len(row) != n:
            raise ShapeMismatchError("matrix must be square")
        for x in row:
            if not ring.contains(x):
                raise ValueError(f"{x!r} is not a canonical element of {ring.spec}")
    return Matrix(ring, frozen)


def zero_matrix(ring: Ring, n: int) -> Matrix:
    z = ring.zero
    return Matrix(ring, tuple((z,) * n for _ in range(n)))


def identity_matrix(ring: Ring, n: int) -> Matrix:
    z, o = ring.zero, ring.one
    return Matrix(ring, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))


def matrix_unit(ring: Ring, n: int, i: int, j: int) -> Matrix:
    """The unit e_ij: one at 1-based (i, j), zero elsewhere."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"matrix unit ({i},{j}) outside 1..{n}")
    z, o = ring.zero, ring.one
    rows = tuple(
        tuple(o if (r == i - 1 and c == j - 1) else z for c in range(n))
        for r in range(n)
    )
    return Matrix(ring, rows)


def pierce_component(x: Matrix, i: int, j: int) -> Matrix:
    """e_ii * x * e_jj: keeps entry (i, j), zeros everywhere else."""
    if not (1 <= i <= x.n and 1 <= j <= x.n):
        raise IndexError(f"component ({i},{j}) outside 1..{x.n}")
    z = x.ring.zero
    kept = x.rows[i - 1][j - 1]
    rows = tuple(
        tuple(kept if (r == i - 1 and c == j - 1) else z for c in range(x.n))
        for r in range(x.n)
    )
    return Matrix(x.ring, rows)


def staircase(ring: Ring, n: int) -> Matrix:
    """Sum of the first-superdiagonal units e_12 + e_23 + ... + e_{n-1,n}."""
    if n < 2:
        raise DimensionError("staircase element needs dimension at least 2")
    z, o = ring.zero, ring.one
    rows = tuple(
        tuple(o if c == r + 1 else z for c in range(n)) for r in range(n)
    )
    return Matrix(ring, rows)


def commutator(a: Matrix, x: Matrix) -> Matrix:
    """a*x - x*a."""
    return a * x - x * a


def matrix_index(x: Matrix) -> int:
    """Canonical integer: row-major base-|R| digits, entry (1,1) most significant."""
    base = x.ring
    card = base.cardinality
    acc = 0
    for row in x.rows:
        for v in row:
            acc = acc * card + base.index(v)
    return acc


def matrix_to_strings(x: Matrix) -> list:
    """Rows of canonical entry strings, the report/CLI literal format."""
    s = x.ring.el_str
    return [[s(v) for v in row] for row in x.rows]


def matrix_from_strings(ring: Ring, rows) -> Matrix:
    p = ring.el_parse
    return matrix(ring, [[p(s) for s in row] for row in rows])


class MatrixRing(Ring):
    """M_n(R) as a ring descriptor; elements are Matrix values."""

    def __init__(self, base: Ring, n: int):
        if n < 1:
            raise ValueError("matrix ring dimension must be at least 1")
        self.base = base
        self.n = n
        self.spec = f"mat:{base.spec}:{n}"
        card = base.cardinality
        self.cardinality = None if card is None else card ** (n * n)
        self.commutative_declared = n == 1 and base.commutative_declared
        self._zero = zero_matrix(base, n)
        self._one = identity_matrix(base, n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def index(self, a):
        return matrix_index(a)

    def element(self, i):
        if self.cardinality is not None and not 0 <= i < self.cardinality:
            raise IndexError(f"no element {i} in {self.spec}")
        base, n = self.base, self.n
        card = base.cardinality
        digits = []
        for _ in range(n * n):
            i, d = divmod(i, card)
            digits.append(base.element(d))
        digits.reverse()
        rows = tuple(tuple(digits[r * n : (r + 1) * n]) for r in range(n))
        return Matrix(base, rows)

    def elements(self):
        cached = getattr(self, "_elements", None)
        if cached is not None:
            return cached
        # itertools.product varies the last slot fastest, which is exactly
        # ascending canonical order with entry (1,1) most significant.
        if self.cardinality is None or self.cardinality > ENUMERATION_CAP:
            return super().elements()  # raises with the right diagnostics
        base, n = self.base, self.n
        base_els = base.elements()
        out = []
        for flat in product(base_els, repeat=n * n):
            rows = tuple(flat[r * n : (r + 1) * n] for r in range(n))
            out.append(Matrix(base, rows))
        self._elements = tuple(out)
        return self._elements

    def contains(self, a):
        return (
            isinstance(a, Matrix)
            and a.n == self.n
            and a.ring == self.base
            and all(self.base.contains(v) for row in a.rows for v in row)
        )

    def el_str(self, a):
        s = self.base.el_str
        return "[" + ",".join("[" + ",".join(s(v) for v in row) + "]" for row in a.rows) + "]"

    def el_parse(self, text):
        rows = _split_matrix_literal(text)
        return matrix_from_strings(self.base, rows)

    def units(self) -> tuple:
        """All matrix units in row-major order e_11, e_12, ..., e_nn."""
        cached = getattr(self, "_units", None)
        if cached is None:
            cached = tuple(
                matrix_unit(self.base, self.n, i, j)
                for i in range(1, self.n + 1)
                for j in range(1, self.n + 1)
            )
            self._units = cached
        return cached


def _split_matrix_literal(text: str) -> list:
    """Split "[[a,b],[c,d]]" into rows of entry strings (entries may nest)."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"bad matrix literal {text!r}")
    body = body[1:-1]
    rows, depth, token, row, in_row = [], 0, "", [], False
    for ch in body:
        if ch == "[":
            depth += 1
            if depth == 1:
                in_row, row, token = True, [], ""
                continue
        elif ch == "]":
            depth -= 1
            if depth == 0:
                row.append(token)
                rows.append(row)
                in_row, token = False, ""
                continue
        elif ch == "," and depth == 1:
            row.append(token)
            token = ""
            continue
        elif ch == "," and depth == 0:
            continue
        if in_row:
            token += ch
    if depth != 0:
        raise ValueError(f"bad matrix literal {text!r}")
    return [[t.strip() for t in r] for r in rows]


@lru_cache(maxsize=None)
def matrix_ring(base: Ring, n: int) -> MatrixRing:
    """Interned M_n(R) descriptor, axiom-checked on first construction."""
    ring = MatrixRing(base, n)
    ring_axiom_check(ring)
    return ring


def block_view(x: Matrix, m: int) -> Matrix:
    """Reinterpret a 2m x 2m matrix as a 2x2 matrix over M_m(R).

    Block (I, J) is the contiguous m x m block at rows (I-1)m+1..Im and
    columns (J-1)m+1..Jm; block_flatten inverts exactly.
    """
    if x.n != 2 * m:
        raise ShapeMismatchError(f"dimension {x.n} is not 2*{m}")
    inner = matrix_ring(x.ring, m)
    blocks = []
    for bi in range(2):
        line = []
        for bj in range(2):
            rows = tuple(
                x.rows[bi * m + r][bj * m : bj * m + m] for r in range(m)
            )
            line.append(Matrix(x.ring, rows))
        blocks.append(tuple(line))
    return Matrix(inner, tuple(blocks))


def block_flatten(b: Matrix) -> Matrix:
    """Inverse of block_view: matrix over M_m(R) back to flat rows over R."""
    inner = b.ring
    if not isinstance(inner, MatrixRing):
        raise ShapeMismatchError("block_flatten needs a matrix over a matrix ring")
    m = inner.n
    n = b.n * m
    rows = []
    for bi in range(b.n):
        for r in range(m):
            line = []
            for bj in range(b.n):
                line.extend(b.rows[bi][bj].rows[r])
            rows.append(tuple(line))
    return Matrix(inner.base, tuple(rows))


@dataclass(frozen=True)
class CornerContext:
    """Top-left m x m corner of M_n(R), with its compressing idempotent."""

    m: int
    n: int
    ring: Ring

    def __post_init__(self):
        if not 1 <= self.m <= self.n:
            raise DimensionError(f"corner size {self.m} outside 1..{self.n}")

    @property
    def idempotent(self) -> Matrix:
        """e = e_11 + ... + e_mm inside M_n(R)."""
        z, o = self.ring.zero, self.ring.one
        rows = tuple(
            tuple(o if (i == j and i < self.m) else z for j in range(self.n))
            for i in range(self.n)
        )
        return Matrix(self.ring, rows)


def corner_compress(x: Matrix, ctx: CornerContext) -> Matrix:
    """e * x * e: zero outside the top-left m x m corner, same shape."""
    if x.n != ctx.n:
        raise ShapeMismatchError(f"expected dimension {ctx.n}, got {x.n}")
    z = x.ring.zero
    rows = tuple(
        tuple(x.rows[i][j] if (i < ctx.m and j < ctx.m) else z for j in range(ctx.n))
        for i in range(ctx.n)
    )
    return Matrix(x.ring, rows)


def corner_extract(x: Matrix, m: int) -> Matrix:
    """Top-left m x m submatrix as an element of M_m(R)."""
    if m > x.n:
        raise ShapeMismatchError(f"corner size {m} exceeds dimension {x.n}")
    rows = tuple(x.rows[i][:m] for i in range(m))
    return Matrix(x.ring, rows)


def corner_embed(x: Matrix, n: int) -> Matrix:
    """Place an m x m matrix in the top-left corner of an n x n zero matrix."""
    if x.n > n:
        raise ShapeMismatchError(f"cannot embed dimension {x.n} into {n}")
    z = x.ring.zero
    rows = tuple(
        tuple(x.rows[i][j] if (i < x.n and j < x.n) else z for j in range(n))
        for i in range(n)
    )
    return Matrix(x.ring, rows)
