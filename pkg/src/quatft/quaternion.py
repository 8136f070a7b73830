"""Real quaternion arithmetic.

Two layers live here. :class:`Quaternion` is a small immutable value type
for scalar work (CLI echo, fixtures, tests). The ``q*`` functions operate on
numpy arrays whose last axis has length 4, ordered ``(q0, q1, q2, q3)`` for
``q0 + i q1 + j q2 + k q3``; the transforms use these.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np


class QuaternionDomainError(ValueError):
    """Raised when an operation is undefined for the given quaternion (e.g. zero)."""


# ---------------------------------------------------------------------------
# array layer

def qmul(p, q):
    """Hamilton product of broadcastable ``(..., 4)`` arrays."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    a0, a1, a2, a3 = np.moveaxis(p, -1, 0)
    b0, b1, b2, b3 = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ],
        axis=-1,
    )


def qconj(q):
    q = np.asarray(q, dtype=float)
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def qabs(q):
    """Pointwise modulus |q|_Q (hypot-based, so tiny or huge entries do not under/overflow)."""
    q = np.asarray(q, dtype=float)
    return np.hypot(np.hypot(q[..., 0], q[..., 1]), np.hypot(q[..., 2], q[..., 3]))


def qreal(a):
    """Embed a real array as quaternions ``a + 0i + 0j + 0k``."""
    a = np.asarray(a, dtype=float)
    out = np.zeros(a.shape + (4,))
    out[..., 0] = a
    return out


UNIT_I = np.array([0.0, 1.0, 0.0, 0.0])
UNIT_J = np.array([0.0, 0.0, 1.0, 0.0])
UNIT_K = np.array([0.0, 0.0, 0.0, 1.0])


def left_i(q):
    """``i * q`` without a full product."""
    q = np.asarray(q, dtype=float)
    return np.stack([-q[..., 1], q[..., 0], -q[..., 3], q[..., 2]], axis=-1)


def right_j(q):
    """``q * j`` without a full product."""
    q = np.asarray(q, dtype=float)
    return np.stack([-q[..., 2], -q[..., 3], q[..., 0], q[..., 1]], axis=-1)


# ---------------------------------------------------------------------------
# scalar value type

@dataclass(frozen=True)
class Quaternion:
    q0: float = 0.0
    q1: float = 0.0
    q2: float = 0.0
    q3: float = 0.0

    @classmethod
    def from_array(cls, a) -> "Quaternion":
        a0, a1, a2, a3 = (float(v) for v in np.asarray(a, dtype=float).reshape(4))
        return cls(a0, a1, a2, a3)

    def to_array(self) -> np.ndarray:
        return np.array([self.q0, self.q1, self.q2, self.q3])

    def __iter__(self):
        return iter((self.q0, self.q1, self.q2, self.q3))

    @property
    def scalar(self) -> float:
        return self.q0

    @property
    def vector(self) -> "Quaternion":
        return Quaternion(0.0, self.q1, self.q2, self.q3)

    def __add__(self, other):
        other = _coerce(other)
        return Quaternion(*(a + b for a, b in zip(self, other)))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return Quaternion(*(a - b for a, b in zip(self, other)))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return Quaternion(-self.q0, -self.q1, -self.q2, -self.q3)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(*(a * other for a in self))
        return mul(self, _coerce(other))

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(*(a * other for a in self))
        return mul(_coerce(other), self)

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(*(a / other for a in self))
        return self * inverse(_coerce(other))

    def __abs__(self):
        return modulus(self)

    def isclose(self, other, tol=1e-12) -> bool:
        other = _coerce(other)
        return all(abs(a - b) <= tol for a, b in zip(self, other))

    def __str__(self):
        return format_quaternion(self)


def _coerce(x) -> Quaternion:
    if isinstance(x, Quaternion):
        return x
    if isinstance(x, (int, float)):
        return Quaternion(float(x))
    return Quaternion.from_array(x)


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    a0, a1, a2, a3 = p
    b0, b1, b2, b3 = q
    return Quaternion(
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def conj(q: Quaternion) -> Quaternion:
    return Quaternion(q.q0, -q.q1, -q.q2, -q.q3)


def modulus(q: Quaternion) -> float:
    return math.hypot(q.q0, q.q1, q.q2, q.q3)


def inverse(q: Quaternion) -> Quaternion:
    r = modulus(q)
    if r == 0.0:
        raise QuaternionDomainError("zero quaternion has no inverse")
    c = conj(q)
    return Quaternion(c.q0 / r / r, c.q1 / r / r, c.q2 / r / r, c.q3 / r / r)


def polar(q: Quaternion) -> tuple[float, Quaternion, float]:
    """Return ``(|q|, mu, theta)`` with ``q = |q| (cos theta + mu sin theta)``.

    ``theta`` lies in ``[0, pi]`` (two-argument arctangent). For real ``q``
    the axis is undefined and ``i`` is returned, with ``theta`` equal to 0
    or pi depending on the sign.
    """
    r = modulus(q)
    if r == 0.0:
        raise QuaternionDomainError("polar form undefined for the zero quaternion")
    v = math.hypot(q.q1, q.q2, q.q3)
    theta = math.atan2(v, q.q0)
    if v == 0.0:
        return r, I, theta
    return r, Quaternion(0.0, q.q1 / v, q.q2 / v, q.q3 / v), theta


def from_polar(r: float, axis: Quaternion, theta: float) -> Quaternion:
    return r * (Quaternion(math.cos(theta)) + math.sin(theta) * axis)


# ---------------------------------------------------------------------------
# text form  a+bi+cj+dk

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_TERM = re.compile(rf"\s*([+-]?)\s*({_NUM})?\s*([ijk]?)\s*")


def parse_quaternion(text: str) -> Quaternion:
    """Parse ``a+bi+cj+dk``; zero terms may be omitted, ``i`` means ``1i``."""
    s = text.strip()
    if not s:
        raise ValueError("empty quaternion literal")
    parts = {"": 0.0, "i": 0.0, "j": 0.0, "k": 0.0}
    seen = set()
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or (m.group(2) is None and not m.group(3)):
            raise ValueError(f"cannot parse quaternion literal {text!r} at offset {pos}")
        if pos > 0 and not m.group(1):
            raise ValueError(f"missing sign between terms in {text!r} at offset {pos}")
        sign, num, unit = m.groups()
        if unit in seen:
            raise ValueError(f"repeated {unit or 'scalar'} term in {text!r}")
        seen.add(unit)
        value = float(num) if num is not None else 1.0
        parts[unit] = -value if sign == "-" else value
        pos = m.end()
    return Quaternion(parts[""], parts["i"], parts["j"], parts["k"])


def format_quaternion(q: Quaternion) -> str:
    out = repr(float(q.q0))
    for value, unit in ((q.q1, "i"), (q.q2, "j"), (q.q3, "k")):
        r = repr(float(value))
        out += (r if r.startswith("-") else "+" + r) + unit
    return out
