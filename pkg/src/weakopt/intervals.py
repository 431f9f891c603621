"""Closed rational intervals and interval matrices.

Everything here is exact: bounds are :class:`fractions.Fraction` and no
operation ever rounds.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence


class IntervalError(ValueError):
    """Raised for malformed interval data (bad bounds, ragged matrices)."""


def as_rational(value) -> Fraction:
    """Convert ``value`` to a Fraction without any loss.

    Accepts ints, Fractions (or any :class:`numbers.Rational`) and strings
    such as ``"3"``, ``"-7/2"`` or ``"1.25"``.  Floats are rejected: the
    caller should decide how a binary float maps to a rational.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"expected int, Fraction or str, got {type(value).__name__}")


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = as_rational(self.lo), as_rational(self.hi)
        if lo > hi:
            raise IntervalError(
                f"interval lower bound exceeds upper: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, value) -> Interval:
        v = as_rational(value)
        return cls(v, v)

    @classmethod
    def coerce(cls, value) -> Interval:
        """Interval from an Interval, a ``(lo, hi)`` pair or a scalar."""
        if isinstance(value, Interval):
            return value
        if isinstance(value, (tuple, list)):
            if len(value) != 2:
                raise IntervalError(f"interval needs exactly two bounds, got {value!r}")
            return cls(value[0], value[1])
        return cls.point(value)

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi

    def __add__(self, other: Interval) -> Interval:
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo)

    def intersect(self, other: Interval) -> Interval | None:
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return Interval(lo, hi) if lo <= hi else None

    def __repr__(self):
        if self.degenerate:
            return f"[{self.lo}]"
        return f"[{self.lo}, {self.hi}]"


ZERO = Interval(0, 0)


def interval_scale(alpha, v: Interval) -> Interval:
    """Multiply an interval by a rational; a negative factor swaps the bounds."""
    alpha = as_rational(alpha)
    if alpha < 0:
        return Interval(alpha * v.hi, alpha * v.lo)
    return Interval(alpha * v.lo, alpha * v.hi)


def interval_dot(x: Sequence, v: Sequence[Interval]) -> Interval:
    """Exact range of ``w @ x`` over ``w`` in the box ``v``."""
    if len(x) != len(v):
        raise IntervalError(f"dimension mismatch: {len(x)} vs {len(v)}")
    lo = hi = Fraction(0)
    for xj, vj in zip(x, v):
        s = interval_scale(xj, vj)
        lo += s.lo
        hi += s.hi
    return Interval(lo, hi)


@dataclass(frozen=True)
class IntervalMatrix:
    """A rows x cols matrix of intervals.  Shape survives empty dimensions."""

    rows: int
    cols: int
    entries: tuple[tuple[Interval, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise IntervalError("negative matrix dimension")
        entries = tuple(tuple(Interval.coerce(e) for e in row) for row in self.entries)
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise IntervalError(
                f"matrix entries do not match declared shape {self.rows}x{self.cols}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> IntervalMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntervalMatrix:
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, i) -> tuple[Interval, ...]:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def transpose(self) -> IntervalMatrix:
        return IntervalMatrix(
            self.cols, self.rows,
            tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)))

    def lower(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(e.lo for e in r) for r in self.entries)

    def upper(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(e.hi for e in r) for r in self.entries)

    def contains(self, matrix: Sequence[Sequence]) -> bool:
        if len(matrix) != self.rows or any(len(r) != self.cols for r in matrix):
            raise IntervalError("matrix shape does not match interval matrix")
        return all(v in e for row, erow in zip(matrix, self.entries) for v, e in zip(row, erow))


def interval_vector(values: Iterable) -> tuple[Interval, ...]:
    return tuple(Interval.coerce(v) for v in values)
