"""Dense matrices over Q(i) (exact) or complex doubles (float), tagged with a ring context.

Exact matrices are stored as two integer numerator arrays (real and
imaginary parts) over one common positive denominator, reduced so that the
gcd of all numerators and the denominator is 1. That canonical form makes
equality a component-wise comparison and keeps products cheap: a matrix
product is four integer matrix products plus one gcd pass.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import ContextMismatch, DimensionMismatch, NonSquare
from .scalars import GaussianRational, format_rational, parse_rational

__all__ = [
    "Involution",
    "ScalarMode",
    "RingContext",
    "Matrix",
    "arith",
    "adjoint",
    "power",
    "hstack",
    "vstack",
    "block_diag",
    "EXACT_T",
    "EXACT_H",
    "FLOAT_H",
]


class Involution(str, enum.Enum):
    TRANSPOSE = "transpose"
    CONJUGATE_TRANSPOSE = "conjugate_transpose"


class ScalarMode(str, enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


@dataclass(frozen=True)
class RingContext:
    scalar_mode: ScalarMode = ScalarMode.EXACT
    involution: Involution = Involution.CONJUGATE_TRANSPOSE

    def __post_init__(self):
        object.__setattr__(self, "scalar_mode", ScalarMode(self.scalar_mode))
        object.__setattr__(self, "involution", Involution(self.involution))

    @property
    def exact(self) -> bool:
        return self.scalar_mode is ScalarMode.EXACT

    @property
    def conjugating(self) -> bool:
        return self.involution is Involution.CONJUGATE_TRANSPOSE

    def scalar_involution(self, z):
        """Involution restricted to scalars: identity or complex conjugation."""
        if not self.conjugating:
            return z
        return z.conjugate()

    def with_mode(self, mode) -> "RingContext":
        return RingContext(ScalarMode(mode), self.involution)

    def with_involution(self, involution) -> "RingContext":
        return RingContext(self.scalar_mode, Involution(involution))


EXACT_T = RingContext(ScalarMode.EXACT, Involution.TRANSPOSE)
EXACT_H = RingContext(ScalarMode.EXACT, Involution.CONJUGATE_TRANSPOSE)
FLOAT_H = RingContext(ScalarMode.FLOAT, Involution.CONJUGATE_TRANSPOSE)


def _int_array(values, shape) -> np.ndarray:
    arr = np.empty(shape, dtype=object)
    flat = list(values)
    for k, v in enumerate(flat):
        arr.flat[k] = int(v)
    return arr


def _to_gaussian(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (bool, np.bool_)):
        return GaussianRational(int(value))
    if isinstance(value, (int, np.integer)):
        return GaussianRational(int(value))
    if isinstance(value, Rational):
        return GaussianRational(Fraction(value))
    if isinstance(value, str):
        return GaussianRational(parse_rational(value))
    if isinstance(value, (complex, np.complexfloating)):
        return GaussianRational.from_complex_int(complex(value))
    if isinstance(value, (float, np.floating)):
        if float(value) != int(value):
            raise ValueError(f"float entry {value!r} is not exact; pass a Fraction")
        return GaussianRational(int(value))
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


class Matrix:
    """Immutable dense matrix tagged with a :class:`RingContext`."""

    __slots__ = ("rows", "cols", "context", "_re", "_im", "_den", "_z", "_hash")

    # -- construction -------------------------------------------------
    def __init__(self, entries, context: RingContext = EXACT_H, *, shape=None):
        """Build from nested row lists (or a flat row-major list with ``shape``)."""
        if shape is not None:
            rows, cols = shape
            flat = list(entries)
        else:
            entries = [list(r) for r in entries]
            rows = len(entries)
            cols = len(entries[0]) if rows else 0
            if any(len(r) != cols for r in entries):
                raise DimensionMismatch("ragged row lengths")
            flat = [v for r in entries for v in r]
        if len(flat) != rows * cols:
            raise DimensionMismatch(f"{len(flat)} entries for shape {rows}x{cols}")
        if context.exact:
            scalars = [_to_gaussian(v) for v in flat]
            den = 1
            for s in scalars:
                den = math.lcm(den, s.re.denominator, s.im.denominator)
            re = [s.re.numerator * (den // s.re.denominator) for s in scalars]
            im = [s.im.numerator * (den // s.im.denominator) for s in scalars]
            self._init_exact(_int_array(re, (rows, cols)), _int_array(im, (rows, cols)), den, context)
        else:
            z = np.array([complex(v) for v in flat], dtype=np.complex128).reshape(rows, cols)
            self._init_float(z, context)

    def _init_exact(self, re, im, den, context):
        g = den
        if g != 1:
            for v in re.flat:
                if v:
                    g = math.gcd(g, v)
                    if g == 1:
                        break
        if g != 1:
            for v in im.flat:
                if v:
                    g = math.gcd(g, v)
                    if g == 1:
                        break
        if g != 1:
            re = re // g
            im = im // g
            den //= g
        re.setflags(write=False)
        im.setflags(write=False)
        object.__setattr__(self, "rows", re.shape[0])
        object.__setattr__(self, "cols", re.shape[1])
        object.__setattr__(self, "context", context)
        object.__setattr__(self, "_re", re)
        object.__setattr__(self, "_im", im)
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_z", None)
        object.__setattr__(self, "_hash", None)

    def _init_float(self, z, context):
        z = np.array(z, dtype=np.complex128)
        z.setflags(write=False)
        object.__setattr__(self, "rows", z.shape[0])
        object.__setattr__(self, "cols", z.shape[1])
        object.__setattr__(self, "context", context)
        object.__setattr__(self, "_re", None)
        object.__setattr__(self, "_im", None)
        object.__setattr__(self, "_den", None)
        object.__setattr__(self, "_z", z)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _from_parts(cls, re, im, den, context) -> "Matrix":
        if den <= 0:
            raise ValueError("denominator must be positive")
        obj = cls.__new__(cls)
        obj._init_exact(re, im, den, context)
        return obj

    @classmethod
    def from_numpy(cls, z, context: RingContext = FLOAT_H) -> "Matrix":
        """Wrap a complex array as a float-mode matrix."""
        if context.exact:
            raise ValueError("from_numpy builds float-mode matrices only")
        z = np.atleast_2d(np.asarray(z, dtype=np.complex128))
        obj = cls.__new__(cls)
        obj._init_float(z.copy(), context)
        return obj

    @classmethod
    def from_gaussian_ints(cls, re, im, context: RingContext = EXACT_H, den: int = 1) -> "Matrix":
        re = np.array(re, dtype=object)
        im = np.array(im, dtype=object)
        re = _int_array(re.flat, re.shape)
        im = _int_array(im.flat, im.shape)
        return cls._from_parts(re, im, int(den), context)

    @classmethod
    def identity(cls, n: int, context: RingContext = EXACT_H) -> "Matrix":
        if context.exact:
            re = _int_array((int(i == j) for i in range(n) for j in range(n)), (n, n))
            return cls._from_parts(re, _int_array([0] * (n * n), (n, n)), 1, context)
        return cls.from_numpy(np.eye(n, dtype=np.complex128), context)

    @classmethod
    def zeros(cls, rows: int, cols: int, context: RingContext = EXACT_H) -> "Matrix":
        if context.exact:
            zero = _int_array([0] * (rows * cols), (rows, cols))
            return cls._from_parts(zero, zero.copy(), 1, context)
        return cls.from_numpy(np.zeros((rows, cols), dtype=np.complex128), context)

    # -- basic properties ---------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def exact(self) -> bool:
        return self.context.exact

    @property
    def den(self) -> int:
        return self._den

    @property
    def numerators(self):
        """(real, imaginary) integer numerator arrays over :attr:`den` (exact mode)."""
        return self._re, self._im

    def __getitem__(self, idx):
        i, j = idx
        if self.exact:
            d = self._den
            return GaussianRational(Fraction(self._re[i, j], d), Fraction(self._im[i, j], d))
        return complex(self._z[i, j])

    @property
    def entries(self) -> tuple:
        """Row-major tuple of scalars."""
        return tuple(self[i, j] for i in range(self.rows) for j in range(self.cols))

    def tolist(self) -> list:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def to_numpy(self) -> np.ndarray:
        """Complex128 array; exact entries are rounded to the nearest double."""
        if not self.exact:
            return np.array(self._z)
        d = self._den
        out = np.empty(self.shape, dtype=np.complex128)
        for (i, j), r in np.ndenumerate(self._re):
            out[i, j] = complex(float(Fraction(r, d)), float(Fraction(self._im[i, j], d)))
        return out

    def to_float(self) -> "Matrix":
        return Matrix.from_numpy(self.to_numpy(), self.context.with_mode(ScalarMode.FLOAT))

    def with_context(self, context: RingContext) -> "Matrix":
        """Same entries under another involution (scalar mode must match)."""
        if context.scalar_mode is not self.context.scalar_mode:
            raise ContextMismatch("use to_float() to change the scalar mode")
        if self.exact:
            return Matrix._from_parts(self._re, self._im, self._den, context)
        return Matrix.from_numpy(self._z, context)

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape or self.context != other.context:
            return False
        if self.exact:
            return (
                self._den == other._den
                and np.array_equal(self._re, other._re)
                and np.array_equal(self._im, other._im)
            )
        return bool(np.array_equal(self._z, other._z))

    def __hash__(self):
        if self._hash is None:
            if self.exact:
                h = hash((self.shape, self.context, self._den, tuple(self._re.flat), tuple(self._im.flat)))
            else:
                h = hash((self.shape, self.context, self._z.tobytes()))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def is_zero(self) -> bool:
        if self.exact:
            return not any(self._re.flat) and not any(self._im.flat)
        return not np.any(self._z)

    def is_identity(self) -> bool:
        return self.is_square and self == Matrix.identity(self.rows, self.context)

    # -- arithmetic ---------------------------------------------------
    def _check_context(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if self.context != other.context:
            raise ContextMismatch(f"{self.context} vs {other.context}")

    def __add__(self, other):
        return self._addsub(other, 1)

    def __sub__(self, other):
        return self._addsub(other, -1)

    def _addsub(self, other, sign):
        self._check_context(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")
        if not self.exact:
            return Matrix.from_numpy(self._z + sign * other._z, self.context)
        d = math.lcm(self._den, other._den)
        a, b = d // self._den, d // other._den
        re = self._re * a + sign * (other._re * b)
        im = self._im * a + sign * (other._im * b)
        return Matrix._from_parts(re, im, d, self.context)

    def __neg__(self):
        if not self.exact:
            return Matrix.from_numpy(-self._z, self.context)
        return Matrix._from_parts(-self._re, -self._im, self._den, self.context)

    def __matmul__(self, other):
        self._check_context(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        if not self.exact:
            return Matrix.from_numpy(self._z @ other._z, self.context)
        if self.cols == 0:
            return Matrix.zeros(self.rows, other.cols, self.context)
        ar, ai, br, bi = self._re, self._im, other._re, other._im
        re = ar.dot(br) - ai.dot(bi)
        im = ar.dot(bi) + ai.dot(br)
        return Matrix._from_parts(re, im, self._den * other._den, self.context)

    def scale(self, c) -> "Matrix":
        """Scalar multiple c*A."""
        if not self.exact:
            return Matrix.from_numpy(complex(c) * self._z, self.context)
        c = _to_gaussian(c)
        d = math.lcm(c.re.denominator, c.im.denominator)
        cr, ci = int(c.re * d), int(c.im * d)
        re = self._re * cr - self._im * ci
        im = self._re * ci + self._im * cr
        return Matrix._from_parts(re, im, self._den * d, self.context)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def transpose(self) -> "Matrix":
        """Plain transpose (not the ring involution)."""
        if not self.exact:
            return Matrix.from_numpy(self._z.T, self.context)
        return Matrix._from_parts(self._re.T.copy(), self._im.T.copy(), self._den, self.context)

    def conj(self) -> "Matrix":
        if not self.exact:
            return Matrix.from_numpy(self._z.conj(), self.context)
        return Matrix._from_parts(self._re, -self._im, self._den, self.context)

    def adjoint(self) -> "Matrix":
        """A* under the context's involution."""
        t = self.transpose()
        return t.conj() if self.context.conjugating else t

    @property
    def H(self) -> "Matrix":
        return self.adjoint()

    def power(self, k: int) -> "Matrix":
        return power(self, k)

    def __pow__(self, k):
        return power(self, k)

    # -- slicing ------------------------------------------------------
    def submatrix(self, rows, cols) -> "Matrix":
        """Submatrix selecting ``rows`` and ``cols`` (index sequences or slices)."""
        if isinstance(rows, slice):
            rows = range(self.rows)[rows]
        if isinstance(cols, slice):
            cols = range(self.cols)[cols]
        rows, cols = list(rows), list(cols)
        if not self.exact:
            return Matrix.from_numpy(self._z[np.ix_(rows, cols)].reshape(len(rows), len(cols)), self.context)
        idx = np.ix_(rows, cols)
        re = self._re[idx].reshape(len(rows), len(cols)).copy()
        im = self._im[idx].reshape(len(rows), len(cols)).copy()
        return Matrix._from_parts(re, im, self._den, self.context)

    def column(self, j: int) -> "Matrix":
        return self.submatrix(range(self.rows), [j])

    # -- serialization ------------------------------------------------
    def to_json(self) -> dict:
        if self.exact:
            entries = [[self[i, j].to_json() for j in range(self.cols)] for i in range(self.rows)]
        else:
            entries = [
                [{"re": float(self._z[i, j].real), "im": float(self._z[i, j].imag)} for j in range(self.cols)]
                for i in range(self.rows)
            ]
        return {
            "rows": self.rows,
            "cols": self.cols,
            "involution": self.context.involution.value,
            "mode": self.context.scalar_mode.value,
            "entries": entries,
        }

    @classmethod
    def from_json(cls, obj: dict, *, involution=None, mode=None) -> "Matrix":
        """Parse the matrix JSON format; ``involution``/``mode`` override the file."""
        try:
            rows, cols = int(obj["rows"]), int(obj["cols"])
            entries = obj["entries"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed matrix JSON: {exc}") from exc
        inv = Involution(involution or obj.get("involution", "conjugate_transpose"))
        file_mode = ScalarMode(obj.get("mode", "exact"))
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise DimensionMismatch(f"entries do not match declared shape {rows}x{cols}")
        if file_mode is ScalarMode.EXACT:
            scalars = [[GaussianRational.from_json(e) for e in row] for row in entries]
            m = cls(scalars, RingContext(ScalarMode.EXACT, inv)) if rows else cls.zeros(0, cols, RingContext(ScalarMode.EXACT, inv))
        else:
            z = [[_float_entry(e) for e in row] for row in entries]
            m = cls.from_numpy(np.array(z, dtype=np.complex128).reshape(rows, cols), RingContext(ScalarMode.FLOAT, inv))
        target = ScalarMode(mode) if mode else file_mode
        if target is not file_mode:
            if target is ScalarMode.FLOAT:
                m = m.to_float()
            else:
                raise ValueError("cannot read a float-mode file as exact")
        return m

    # -- display ------------------------------------------------------
    def __repr__(self):
        body = "; ".join(", ".join(str(self[i, j]) for j in range(self.cols)) for i in range(self.rows))
        return f"Matrix([{body}], {self.context.scalar_mode.value}, {self.context.involution.value})"

    def pretty(self) -> str:
        cells = [[_format_entry(self[i, j]) for j in range(self.cols)] for i in range(self.rows)]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)


def _format_entry(v) -> str:
    if not isinstance(v, complex):
        return str(v)
    re, im = f"{v.real:.6g}", f"{abs(v.imag):.6g}"
    if v.imag == 0:
        return re
    if v.real == 0:
        return f"{'-' if v.imag < 0 else ''}{im}i"
    return f"{re}{'-' if v.imag < 0 else '+'}{im}i"


def _float_entry(e) -> complex:
    if isinstance(e, dict):
        return complex(float(e.get("re", 0.0)), float(e.get("im", 0.0)))
    return complex(float(e))


def arith(A: Matrix, B, op: str) -> Matrix:
    """Dispatch for add, sub, mul (matrix product) and scalar_mul (B is a scalar)."""
    if op == "add":
        return A + B
    if op == "sub":
        return A - B
    if op == "mul":
        return A @ B
    if op == "scalar_mul":
        return A.scale(B)
    raise ValueError(f"unknown op {op!r}")


def adjoint(A: Matrix) -> Matrix:
    return A.adjoint()


def power(A: Matrix, k: int) -> Matrix:
    """A^k for k >= 1 (k = 0 gives the identity); repeated squaring in exact mode."""
    if not A.is_square:
        raise NonSquare(f"power of non-square {A.shape} matrix")
    if k < 0:
        raise ValueError("negative powers are not defined here")
    if k == 0:
        return Matrix.identity(A.rows, A.context)
    if not A.exact:
        out = A
        for _ in range(k - 1):
            out = out @ A
        return out
    result = None
    base = A
    while k:
        if k & 1:
            result = base if result is None else result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def hstack(*blocks: Matrix) -> Matrix:
    blocks = [b for b in blocks]
    ctx = blocks[0].context
    for b in blocks[1:]:
        blocks[0]._check_context(b)
    if len({b.rows for b in blocks}) != 1:
        raise DimensionMismatch("hstack needs equal row counts")
    if not ctx.exact:
        return Matrix.from_numpy(np.hstack([b._z for b in blocks]), ctx)
    d = 1
    for b in blocks:
        d = math.lcm(d, b._den)
    re = np.hstack([b._re * (d // b._den) for b in blocks])
    im = np.hstack([b._im * (d // b._den) for b in blocks])
    return Matrix._from_parts(re.astype(object), im.astype(object), d, ctx)


def vstack(*blocks: Matrix) -> Matrix:
    return hstack(*[b.transpose() for b in blocks]).transpose()


def block_diag(*blocks: Matrix) -> Matrix:
    """Block-diagonal matrix of the given blocks (all in one context)."""
    ctx = blocks[0].context
    total_r = sum(b.rows for b in blocks)
    total_c = sum(b.cols for b in blocks)
    rows = []
    r0 = c0 = 0
    for b in blocks:
        left = Matrix.zeros(b.rows, c0, ctx)
        right = Matrix.zeros(b.rows, total_c - c0 - b.cols, ctx)
        rows.append(hstack(left, b, right) if total_c else b)
        r0 += b.rows
        c0 += b.cols
    out = vstack(*rows)
    assert out.shape == (total_r, total_c)
    return out
