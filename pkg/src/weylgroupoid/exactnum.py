"""Exact arithmetic for the multiplicative data of a bicharacter workspace.

Two kinds of numbers live here:

* ``CycScalar`` -- an element of the finitely generated subgroup
  ``<zeta_M> x <p_0, ..., p_{P-1}>`` of a characteristic-zero field, stored as
  a torsion exponent mod M together with an integer exponent vector over the
  free (multiplicatively independent) parameters.  Every q, zeta and r value
  of a bicharacter is one of these.

* ``CycInteger`` -- an element of Z[zeta_M] reduced modulo the M-th cyclotomic
  polynomial, used for the exact geometric representation of Coxeter groups
  (entries like -2cos(pi/m) = -(zeta_2m + zeta_2m^-1)).

All values are immutable and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
import re

import numpy as np

_builtin_pow = pow


class WorkspaceMismatch(ValueError):
    """Scalars from different workspaces were combined."""


class ScalarParseError(ValueError):
    """A scalar literal could not be parsed."""


@dataclass(frozen=True)
class ScalarWorkspace:
    """The group <zeta_M> x <p_0, ..., p_{P-1}>, M >= 1.

    ``params`` are names for the free generators; they print in literals as
    given (``q``, ``r``, ...).
    """

    torsion_order: int
    params: tuple[str, ...] = ()

    def __post_init__(self):
        if self.torsion_order < 1:
            raise ValueError("torsion order M must be >= 1")
        object.__setattr__(self, "params", tuple(self.params))

    @property
    def nparams(self) -> int:
        return len(self.params)

    def scalar(self, torsion: int = 0, free=()) -> CycScalar:
        free = tuple(int(e) for e in free)
        if len(free) != self.nparams:
            free = free + (0,) * (self.nparams - len(free))
        return CycScalar(self, torsion % self.torsion_order, free)

    def one(self) -> CycScalar:
        return self.scalar(0)

    def zeta(self, t: int = 1) -> CycScalar:
        return self.scalar(t)

    def minus_one(self) -> CycScalar:
        if self.torsion_order % 2:
            raise ValueError(f"-1 needs even torsion order, have M={self.torsion_order}")
        return self.scalar(self.torsion_order // 2)

    def param(self, k: int | str, exponent: int = 1) -> CycScalar:
        if isinstance(k, str):
            k = self.params.index(k)
        free = [0] * self.nparams
        free[k] = exponent
        return self.scalar(0, free)

    def embed(self, s: CycScalar, from_space: ScalarWorkspace) -> CycScalar:
        """Re-embed a scalar from a workspace whose M divides ours and whose
        parameter list is a prefix of ours (pure exponent rescale)."""
        if self.torsion_order % from_space.torsion_order:
            raise WorkspaceMismatch("torsion order does not divide target order")
        if from_space.params != self.params[: from_space.nparams]:
            raise WorkspaceMismatch("parameter lists are not compatible")
        scale = self.torsion_order // from_space.torsion_order
        return self.scalar(s.torsion * scale, s.free)


@dataclass(frozen=True)
class CycScalar:
    """zeta_M^torsion * prod_k p_k^free[k]; equality is componentwise."""

    space: ScalarWorkspace
    torsion: int
    free: tuple[int, ...]

    def _check(self, other: CycScalar) -> None:
        if self.space != other.space:
            raise WorkspaceMismatch(f"{self.space} vs {other.space}")

    def __mul__(self, other: CycScalar) -> CycScalar:
        self._check(other)
        return CycScalar(
            self.space,
            (self.torsion + other.torsion) % self.space.torsion_order,
            tuple(a + b for a, b in zip(self.free, other.free)),
        )

    def __pow__(self, k: int) -> CycScalar:
        return CycScalar(
            self.space,
            (self.torsion * k) % self.space.torsion_order,
            tuple(e * k for e in self.free),
        )

    def inv(self) -> CycScalar:
        return self**-1

    def __truediv__(self, other: CycScalar) -> CycScalar:
        return self * other.inv()

    @property
    def is_one(self) -> bool:
        return self.torsion == 0 and not any(self.free)

    def mult_order(self) -> int | None:
        """Least r >= 1 with self**r == 1; None when infinite."""
        if any(self.free):
            return None
        m = self.space.torsion_order
        return m // gcd(self.torsion, m)

    def __repr__(self):
        return f"CycScalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def mul(a: CycScalar, b: CycScalar) -> CycScalar:
    return a * b


def pow(a: CycScalar, k: int) -> CycScalar:  # noqa: A001 - spec operation name
    return a**k


def mult_order(a: CycScalar) -> int | None:
    return a.mult_order()


def q_number_is_zero(r: int, q: CycScalar) -> bool:
    """(r)_q = 1 + q + ... + q^(r-1) = 0?  Characteristic zero: (r)_1 = r != 0."""
    if r < 1:
        raise ValueError("r must be >= 1")
    order = q.mult_order()
    return order is not None and order > 1 and r % order == 0


def solve_pow_eq(a: CycScalar, b: CycScalar, k_max: int | None = None) -> int | None:
    """Smallest k in [0, k_max] with a^k * b == 1, or None.

    The exponent system k*e_a = -e_b, k*t_a = -t_b (mod M) is solved exactly;
    k_max=None searches unbounded.
    """
    a._check(b)
    m = a.space.torsion_order

    # free part pins k (or rules everything out)
    k_free = None
    for ea, eb in zip(a.free, b.free):
        if ea == 0:
            if eb != 0:
                return None
            continue
        if eb % ea:
            return None
        k = -eb // ea
        if k < 0 or (k_free is not None and k != k_free):
            return None
        k_free = k

    def torsion_ok(k: int) -> bool:
        return (k * a.torsion + b.torsion) % m == 0

    if k_free is not None:
        if not torsion_ok(k_free):
            return None
        return k_free if (k_max is None or k_free <= k_max) else None

    # pure torsion: solve k * t_a = -t_b (mod M)
    g = gcd(a.torsion, m)
    if b.torsion % g:
        return None
    # smallest non-negative solution of the linear congruence
    mm = m // g
    ta = (a.torsion // g) % mm
    tb = (-b.torsion // g) % mm
    k = (tb * _modinv(ta, mm)) % mm if mm > 1 else 0
    return k if (k_max is None or k <= k_max) else None


def _modinv(x: int, m: int) -> int:
    return _builtin_pow(x, -1, m)


# Scalar literals -------------------------------------------------------------
#
# Grammar: factors joined by '*'; a factor is `1`, `-1`, `z`, `z^T`, NAME or
# NAME^E with integer exponents.  `z` is the primitive M-th root, `-1` is
# sugar for z^(M/2).

_FACTOR_RE = re.compile(r"^\s*(-1|1|[A-Za-z_][A-Za-z_0-9]*)\s*(?:\^\s*\(?\s*(-?\d+)\s*\)?)?\s*$")


def parse_scalar(text: str, space: ScalarWorkspace) -> CycScalar:
    value = space.one()
    for part in text.split("*"):
        m = _FACTOR_RE.match(part)
        if not m:
            raise ScalarParseError(f"bad scalar factor {part!r} in {text!r}")
        name, exp = m.group(1), int(m.group(2)) if m.group(2) is not None else 1
        if name == "1":
            factor = space.one()
        elif name == "-1":
            factor = space.minus_one()
        elif name == "z":
            factor = space.zeta()
        else:
            try:
                factor = space.param(name)
            except ValueError:
                raise ScalarParseError(
                    f"unknown parameter {name!r}; workspace has {space.params}"
                ) from None
        value = value * factor**exp
    return value


def format_scalar(s: CycScalar) -> str:
    space = s.space
    parts = []
    if s.torsion:
        if space.torsion_order % 2 == 0 and s.torsion == space.torsion_order // 2:
            parts.append("-1")
        elif s.torsion == 1:
            parts.append("z")
        else:
            parts.append(f"z^{s.torsion}")
    for name, e in zip(space.params, s.free):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return " * ".join(parts) if parts else "1"


# Cyclotomic integers ---------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (constant first) of the n-th cyclotomic polynomial."""
    if n == 1:
        return (-1, 1)
    poly = [0] * n + [1]
    poly[0] = -1  # x^n - 1
    for d in range(1, n):
        if n % d:
            continue
        div = cyclotomic_polynomial(d)
        poly = _polydiv_exact(poly, div)
    return tuple(poly)


def _polydiv_exact(num: list[int], den: tuple[int, ...]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        assert den[-1] == 1
        out[i - dd] = c
        for j, dj in enumerate(den):
            num[i - dd + j] -= c * dj
    assert not any(num), "inexact polynomial division"
    return out


class CyclotomicRing:
    """Z[zeta_M] = Z[x]/(Phi_M), with vectorized matrix products.

    Elements are integer coefficient vectors of length deg Phi_M.  Matrices
    over the ring are numpy int64 arrays of shape (n, n, deg); ``mat_mul``
    contracts them with a precomputed fold-and-reduce tensor.
    """

    def __init__(self, order: int):
        self.order = order
        phi = cyclotomic_polynomial(order)
        self.degree = d = len(phi) - 1
        self._neg_phi_tail = -np.array(phi[:d], dtype=np.int64)  # x^d reduced
        # fold tensor: FR[a, b, :] = residue of x^(a+b), a,b < d
        res = np.zeros((2 * d - 1, d), dtype=np.int64)
        for k in range(d):
            res[k, k] = 1
        for k in range(d, 2 * d - 1):
            res[k] = self._shift(res[k - 1])
        self.fold = np.zeros((d, d, d), dtype=np.int64)
        for a in range(d):
            for b in range(d):
                self.fold[a, b] = res[a + b]

    def _shift(self, v: np.ndarray) -> np.ndarray:
        """Multiply the reduced vector v by x and reduce mod Phi."""
        out = np.zeros(self.degree, dtype=np.int64)
        out[1:] = v[:-1]
        if v[-1]:
            out += v[-1] * self._neg_phi_tail
        return out

    def zero_vec(self) -> np.ndarray:
        return np.zeros(self.degree, dtype=np.int64)

    def one_vec(self) -> np.ndarray:
        v = self.zero_vec()
        v[0] = 1
        return v

    def root_power_vec(self, k: int) -> np.ndarray:
        """zeta_M^k as a coefficient vector."""
        v = self.one_vec()
        for _ in range(k % self.order):
            v = self._shift(v)
        return v

    def mul_vec(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.einsum("a,b,abd->d", a, b, self.fold)

    def minus_two_cos_pi_over(self, m: int) -> np.ndarray:
        """-2cos(pi/m) = -(zeta_2m + zeta_2m^-1) as an element of this ring."""
        if (2 * m) > self.order or self.order % (2 * m):
            raise ValueError(f"2m = {2*m} must divide ring order {self.order}")
        step = self.order // (2 * m)
        return -(self.root_power_vec(step) + self.root_power_vec(self.order - step))

    def identity_matrix(self, n: int) -> np.ndarray:
        a = np.zeros((n, n, self.degree), dtype=np.int64)
        for i in range(n):
            a[i, i, 0] = 1
        return a

    def mat_mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Matrix product over Z[zeta]; entries folded and reduced mod Phi."""
        return np.einsum("ika,kjb,abd->ijd", a, b, self.fold)


@dataclass(frozen=True)
class CycInteger:
    """One element of Z[zeta_M]; thin exact wrapper over a coefficient tuple."""

    ring_order: int
    coeffs: tuple[int, ...]

    @staticmethod
    def from_vec(ring: CyclotomicRing, vec: np.ndarray) -> CycInteger:
        return CycInteger(ring.order, tuple(int(c) for c in vec))

    def _ring(self) -> CyclotomicRing:
        return get_ring(self.ring_order)

    def _vec(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def __add__(self, other: CycInteger) -> CycInteger:
        assert self.ring_order == other.ring_order
        return CycInteger(self.ring_order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> CycInteger:
        return CycInteger(self.ring_order, tuple(-a for a in self.coeffs))

    def __sub__(self, other: CycInteger) -> CycInteger:
        return self + (-other)

    def __mul__(self, other: CycInteger) -> CycInteger:
        assert self.ring_order == other.ring_order
        ring = self._ring()
        return CycInteger.from_vec(ring, ring.mul_vec(self._vec(), other._vec()))


@lru_cache(maxsize=None)
def get_ring(order: int) -> CyclotomicRing:
    return CyclotomicRing(order)
