"""Exact rational and cyclotomic arithmetic.

Every algebraic value in this package is either a ``fractions.Fraction`` or a
:class:`Cyclotomic`.  A cyclotomic is stored in the power basis
``1, z, ..., z**(phi(n)-1)`` of ``Q(zeta_n)`` where ``z = exp(2*pi*i/n)`` and
``n`` is the *conductor*: the smallest cyclotomic field containing the value
(``n = 1`` for rationals, and never ``n = 2 mod 4`` since those fields
coincide with a smaller one).  Arithmetic results are reduced modulo the
n-th cyclotomic polynomial and then pushed down to the minimal conductor, so
equality of values is plain equality of the stored data, and the string form
is bit-stable across platforms and runs.

The power basis is an integral basis of the ring of integers of Q(zeta_n),
so a value is an algebraic integer exactly when all stored coefficients are
integers; `algebraic_p_part` nevertheless re-validates integrality through
the characteristic polynomial, which is the authoritative test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import EngineDefect, InvalidArgument

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ----------------------------------------------------------------------
# Elementary number theory helpers.

def p_adic_valuation(n: int, p: int) -> int:
    """Largest e with p**e dividing n (n nonzero)."""
    if n == 0:
        raise InvalidArgument("valuation of 0 is undefined")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime divisors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


def euler_phi(n: int) -> int:
    phi = n
    for p in prime_factors(n):
        phi = phi // p * (p - 1)
    return phi


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, ascending."""
    if n == 1:
        return (-1, 1)
    # (x**n - 1) divided by the cyclotomic polynomials of all proper divisors.
    poly = [0] * (n + 1)
    poly[0], poly[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            poly = _polydiv_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (raises if not exact)."""
    num = num[:]
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        q, r = divmod(c, den[-1])
        if r:
            raise EngineDefect("inexact cyclotomic polynomial division")
        out[k] = q
        if q:
            for i, dc in enumerate(den):
                num[k + i] -= q * dc
    if any(num):
        raise EngineDefect("inexact cyclotomic polynomial division")
    return out


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """For each j < n, the expansion of x**j modulo the n-th cyclotomic
    polynomial as sparse ``(exponent, integer)`` pairs with exponent < phi(n).
    """
    phi_poly = cyclotomic_polynomial(n)
    deg = len(phi_poly) - 1
    rows: list[dict[int, int]] = [{j: 1} for j in range(deg)]
    for j in range(deg, n):
        shifted: dict[int, int] = {e + 1: c for e, c in rows[j - 1].items()}
        top = shifted.pop(deg, 0)
        if top:
            # x**deg == -(lower coefficients of the cyclotomic polynomial)
            for e in range(deg):
                c = phi_poly[e]
                if c:
                    shifted[e] = shifted.get(e, 0) - top * c
        rows.append({e: c for e, c in shifted.items() if c})
    return tuple(tuple(sorted(r.items())) for r in rows)


def _canonical_at_level(n: int, exps: dict[int, Fraction]) -> dict[int, Fraction]:
    """Reduce a sum of c*zeta_n**j terms into the power basis at level n."""
    rows = _reduction_rows(n)
    out: dict[int, Fraction] = {}
    for j, c in exps.items():
        if not c:
            continue
        for e, m in rows[j % n]:
            v = out.get(e, _ZERO) + c * m
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _galois_dict(n: int, coeffs: dict[int, Fraction], k: int) -> dict[int, Fraction]:
    """Image of a canonical level-n coefficient dict under zeta -> zeta**k."""
    return _canonical_at_level(n, {(j * k) % n: c for j, c in coeffs.items()})


@lru_cache(maxsize=None)
def _subfield_basis_rows(n: int, d: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Canonical level-n expansions of the level-d power basis (d | n)."""
    step = n // d
    rows = _reduction_rows(n)
    return tuple(rows[step * i] for i in range(euler_phi(d)))


def _downconvert(n: int, coeffs: dict[int, Fraction], d: int) -> dict[int, Fraction] | None:
    """Rewrite a level-n value in the level-d basis, or None if impossible."""
    basis = _subfield_basis_rows(n, d)
    ncols = len(basis)
    nrows = euler_phi(n)
    # Dense augmented matrix [M | v] over Fractions; solve M x = v.
    aug = [[_ZERO] * (ncols + 1) for _ in range(nrows)]
    for i, row in enumerate(basis):
        for e, m in row:
            aug[e][i] = Fraction(m)
    for e, c in coeffs.items():
        aug[e][ncols] = c
    # Gaussian elimination with deterministic pivoting.
    pivot_rows = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivot_rows.append(col)
        r += 1
    # Consistency: rows beyond the pivots must have zero right-hand side.
    for i in range(r, nrows):
        if aug[i][ncols]:
            return None
    sol = {}
    for i, col in enumerate(pivot_rows):
        v = aug[i][ncols]
        if v:
            sol[col] = v
    return sol


def _reduce_conductor(n: int, coeffs: dict[int, Fraction]) -> tuple[int, dict[int, Fraction]]:
    """Push a canonical level-n value into its minimal cyclotomic field."""
    if not coeffs:
        return 1, {}
    while n > 1:
        for p in prime_factors(n):
            d = n // p
            # Fixed by Gal(Q(zeta_n)/Q(zeta_d)) = { k = 1 mod d, gcd(k, n) = 1 }?
            fixed = all(
                _galois_dict(n, coeffs, k) == coeffs
                for k in range(1 + d, n, d)
                if gcd(k, n) == 1
            )
            if not fixed:
                continue
            down = _downconvert(n, coeffs, d)
            if down is not None:
                n, coeffs = d, down
                break
        else:
            break
        if not coeffs:
            return 1, {}
    return n, coeffs


class Cyclotomic:
    """An element of some Q(zeta_n), stored in canonical form.

    Instances are immutable and hashable; `==` is exact mathematical
    equality.  Mixed arithmetic with ints and Fractions is supported.
    """

    __slots__ = ("conductor", "_coeffs", "_hash")

    def __init__(self, conductor: int, coeffs: dict[int, Fraction], _canonical: bool = False):
        if not _canonical:
            coeffs = {j: Fraction(c) for j, c in coeffs.items()}
            coeffs = _canonical_at_level(conductor, coeffs)
            conductor, coeffs = _reduce_conductor(conductor, coeffs)
        self.conductor = conductor
        self._coeffs = coeffs
        self._hash: int | None = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_rational(cls, q) -> "Cyclotomic":
        q = Fraction(q)
        return cls(1, {0: q} if q else {}, _canonical=True)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Cyclotomic":
        """zeta_n**k."""
        if n < 1:
            raise InvalidArgument("conductor must be positive")
        return cls(n, {k % n: _ONE})

    @classmethod
    def _coerce(cls, x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.from_rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Cyclotomic")

    # -- predicates and accessors ----------------------------------------

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_rational(self) -> bool:
        return self.conductor == 1

    def rational_value(self) -> Fraction:
        if self.conductor != 1:
            raise InvalidArgument("value is irrational")
        return self._coeffs.get(0, _ZERO)

    def is_integral(self) -> bool:
        """All power-basis coefficients are integers."""
        return all(c.denominator == 1 for c in self._coeffs.values())

    def coefficients(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        try:
            other = Cyclotomic._coerce(other)
        except TypeError:
            return NotImplemented
        if self.conductor == other.conductor:
            merged = dict(self._coeffs)
            for j, c in other._coeffs.items():
                v = merged.get(j, _ZERO) + c
                if v:
                    merged[j] = v
                else:
                    merged.pop(j, None)
            n, merged = _reduce_conductor(self.conductor, merged)
            return Cyclotomic(n, merged, _canonical=True)
        n = _lcm(self.conductor, other.conductor)
        exps: dict[int, Fraction] = {}
        for val in (self, other):
            step = n // val.conductor
            for j, c in val._coeffs.items():
                e = j * step
                exps[e] = exps.get(e, _ZERO) + c
        return Cyclotomic(n, exps)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.conductor, {j: -c for j, c in self._coeffs.items()}, _canonical=True)

    def __sub__(self, other):
        try:
            other = Cyclotomic._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if not q:
                return Cyclotomic.from_rational(0)
            return Cyclotomic(
                self.conductor, {j: c * q for j, c in self._coeffs.items()}, _canonical=True
            )
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if self.conductor == 1:
            return other * self.rational_value()
        if other.conductor == 1:
            return self * other.rational_value()
        n = _lcm(self.conductor, other.conductor)
        s1, s2 = n // self.conductor, n // other.conductor
        exps: dict[int, Fraction] = {}
        for j1, c1 in self._coeffs.items():
            e1 = j1 * s1
            for j2, c2 in other._coeffs.items():
                e = (e1 + j2 * s2) % n
                v = exps.get(e, _ZERO) + c1 * c2
                if v:
                    exps[e] = v
                else:
                    exps.pop(e, None)
        return Cyclotomic(n, exps)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Cyclotomic.from_rational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- Galois -----------------------------------------------------------

    def galois(self, k: int) -> "Cyclotomic":
        """Image under zeta_n -> zeta_n**k; k must be coprime to the conductor."""
        n = self.conductor
        if n == 1:
            return self
        k %= n
        if gcd(k, n) != 1:
            raise InvalidArgument(f"{k} is not coprime to the conductor {n}")
        if k == 1:
            return self
        # Galois images stay in the same (abelian, hence normal) subfield,
        # so the conductor is unchanged and no reduction pass is needed.
        return Cyclotomic(n, _galois_dict(n, self._coeffs, k), _canonical=True)

    def conjugate(self) -> "Cyclotomic":
        return self.galois(self.conductor - 1) if self.conductor > 1 else self

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.conductor == 1 and self.rational_value() == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.conductor == other.conductor and self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            if self.conductor == 1:
                # rationals compare equal to ints/Fractions, so hash like them
                self._hash = hash(self._coeffs.get(0, _ZERO))
            else:
                self._hash = hash((self.conductor, tuple(sorted(self._coeffs.items()))))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def to_string(self) -> str:
        """Canonical serialisation: ``c_<n>(k1:q1,k2:q2,...)``, exponents sorted."""
        body = ",".join(f"{j}:{c}" for j, c in sorted(self._coeffs.items()))
        return f"c_{self.conductor}({body})"

    __repr__ = to_string


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


# ----------------------------------------------------------------------
# Field fingerprints and p-parts.

@dataclass(frozen=True)
class FieldFingerprint:
    """Identifies the field Q(alpha) inside Q(zeta_m) by the Galois
    subgroup fixing alpha.  Fingerprints at the same modulus are equal
    exactly when the generated fields are equal."""

    modulus: int
    stabilizer: tuple[int, ...]

    def to_json(self):
        return {"modulus": self.modulus, "stabilizer": list(self.stabilizer)}


@dataclass(frozen=True)
class PPart:
    """The value p**exponent; exponent may be a proper fraction for
    algebraic integers of degree > 1."""

    prime: int
    exponent: Fraction

    def as_int(self) -> int:
        """Integer value; only valid for integer exponents."""
        if self.exponent.denominator != 1:
            raise InvalidArgument("fractional p-part has no integer value")
        return self.prime ** int(self.exponent)

    def to_json(self):
        return {
            "prime": self.prime,
            "exponent": [self.exponent.numerator, self.exponent.denominator],
        }


def galois_apply(alpha: Cyclotomic, k: int) -> Cyclotomic:
    """sigma_k(alpha), the image of alpha under zeta -> zeta**k."""
    return alpha.galois(k)


def field_fingerprint(alpha: Cyclotomic, m: int) -> FieldFingerprint:
    """Fingerprint of Q(alpha) at modulus m; requires alpha in Q(zeta_m)."""
    if m < 1:
        raise InvalidArgument("modulus must be positive")
    c = alpha.conductor
    if m % c:
        raise InvalidArgument(f"value of conductor {c} does not lie in Q(zeta_{m})")
    if c == 1:
        stab_c = None  # everything fixes a rational
    else:
        stab_c = {k for k in range(1, c) if gcd(k, c) == 1 and alpha.galois(k) == alpha}
    stab = []
    for k in range(1, m + 1):
        if gcd(k, m) != 1:
            continue
        if stab_c is None or (k % c) in stab_c:
            stab.append(k % m)
    return FieldFingerprint(m, tuple(sorted(stab)))


def algebraic_p_part(alpha: Cyclotomic, p: int) -> PPart:
    """p-part of a nonzero algebraic integer: the p-part of the absolute
    field norm, taken to the power 1/[Q(alpha):Q]."""
    if alpha.is_zero():
        raise InvalidArgument("the p-part of 0 is undefined")
    c = alpha.conductor
    conjugates: list[Cyclotomic] = []
    seen = set()
    for k in range(1, c + 1):
        if gcd(k, c) != 1:
            continue
        img = alpha.galois(k)
        if img not in seen:
            seen.add(img)
            conjugates.append(img)
    degree = len(conjugates)
    # Characteristic (= minimal) polynomial: prod (X - sigma(alpha)).
    poly: list[Cyclotomic] = [Cyclotomic.from_rational(1)]
    for img in conjugates:
        nxt = [Cyclotomic.from_rational(0)] * (len(poly) + 1)
        for i, coef in enumerate(poly):
            nxt[i + 1] = nxt[i + 1] + coef
            nxt[i] = nxt[i] - img * coef
        poly = nxt
    for coef in poly:
        if not coef.is_rational():
            raise EngineDefect("characteristic polynomial has irrational coefficient")
    char_integral = all(coef.rational_value().denominator == 1 for coef in poly)
    # The basis-coefficient shortcut should agree; the characteristic
    # polynomial is authoritative either way.
    if not char_integral:
        raise InvalidArgument("value is not an algebraic integer")
    norm = Cyclotomic.from_rational(1)
    for img in conjugates:
        norm = norm * img
    if not norm.is_rational():
        raise EngineDefect("field norm is irrational")
    nval = norm.rational_value()
    if nval.denominator != 1 or nval == 0:
        raise EngineDefect("field norm of an algebraic integer must be a nonzero rational integer")
    return PPart(p, Fraction(p_adic_valuation(int(nval), p), degree))


def int_p_part(n: int, p: int) -> PPart:
    """p-part of a positive rational integer."""
    if n < 1:
        raise InvalidArgument("argument must be a positive integer")
    return PPart(p, Fraction(p_adic_valuation(n, p)))
