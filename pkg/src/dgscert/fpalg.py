"""Univariate polynomials and linear algebra over F_p for odd primes p.

Polynomials are dense coefficient tuples in ascending order (index =
degree), always canonical: residues in [0, p) and no zero leading
coefficient.  Degrees never exceed the 64-vertex cap, so naive arithmetic
is the right tool.  The modulus is restricted to odd primes below 2**62;
the 2-adic side of the theory is handled by integer arithmetic elsewhere.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .zlinalg import IntMatrix, _charpoly_berkowitz, is_prime

MODULUS_CAP = 1 << 62


@functools.lru_cache(maxsize=None)
def _check_modulus(p: int) -> None:
    if p < 3 or p % 2 == 0 or p >= MODULUS_CAP or not is_prime(p):
        raise ValueError(f"modulus {p} is not an odd prime below 2**62")


def _trim(coeffs: list[int]) -> tuple[int, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class ModPoly:
    """Dense polynomial over F_p; ``coeffs[k]`` is the coefficient of x^k."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        _check_modulus(self.p)
        if self.coeffs and (self.coeffs[-1] == 0 or any(not 0 <= c < self.p for c in self.coeffs)):
            raise ValueError("coefficients not canonical")

    @classmethod
    def make(cls, p: int, coeffs) -> "ModPoly":
        _check_modulus(p)
        return cls(p, _trim([c % p for c in coeffs]))

    @classmethod
    def zero(cls, p: int) -> "ModPoly":
        return cls(p, ())

    @classmethod
    def one(cls, p: int) -> "ModPoly":
        return cls(p, (1,))

    @classmethod
    def x_power(cls, p: int, k: int, coeff: int = 1) -> "ModPoly":
        return cls.make(p, [0] * k + [coeff])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def _need_same_field(self, other: "ModPoly") -> None:
        if self.p != other.p:
            raise ValueError(f"modulus mismatch: {self.p} vs {other.p}")

    def __add__(self, other: "ModPoly") -> "ModPoly":
        self._need_same_field(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = (out[i] + v) % self.p
        return ModPoly(self.p, _trim(out))

    def __sub__(self, other: "ModPoly") -> "ModPoly":
        self._need_same_field(other)
        out = list(self.coeffs) + [0] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, v in enumerate(other.coeffs):
            out[i] = (out[i] - v) % self.p
        return ModPoly(self.p, _trim(out))

    def __mul__(self, other: "ModPoly") -> "ModPoly":
        self._need_same_field(other)
        if self.is_zero() or other.is_zero():
            return ModPoly.zero(self.p)
        p = self.p
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return ModPoly(p, _trim([v % p for v in out]))

    def scale(self, c: int) -> "ModPoly":
        c %= self.p
        return ModPoly(self.p, _trim([a * c % self.p for a in self.coeffs]))

    def monic(self) -> "ModPoly":
        if self.is_zero() or self.is_monic():
            return self
        return self.scale(pow(self.coeffs[-1], -1, self.p))

    def divmod(self, other: "ModPoly") -> tuple["ModPoly", "ModPoly"]:
        self._need_same_field(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        dv = other.coeffs
        dd = len(dv) - 1
        if len(rem) - 1 < dd:
            return ModPoly.zero(p), self
        inv_lead = pow(dv[-1], -1, p)
        quo = [0] * (len(rem) - dd)
        for top in range(len(rem) - 1, dd - 1, -1):
            c = rem[top]
            if c:
                q = c * inv_lead % p
                quo[top - dd] = q
                for i in range(dd + 1):
                    rem[top - dd + i] = (rem[top - dd + i] - q * dv[i]) % p
        return ModPoly(p, _trim(quo)), ModPoly(p, _trim(rem))

    def __mod__(self, other: "ModPoly") -> "ModPoly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "ModPoly") -> "ModPoly":
        return self.divmod(other)[0]

    def exact_div(self, other: "ModPoly") -> "ModPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("exact_div with nonzero remainder")
        return q

    def divides(self, other: "ModPoly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def derivative(self) -> "ModPoly":
        p = self.p
        return ModPoly(p, _trim([k * c % p for k, c in enumerate(self.coeffs)][1:]))

    def pow(self, e: int) -> "ModPoly":
        out = ModPoly.one(self.p)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __str__(self) -> str:
        return format_poly(self)


def format_poly(f: ModPoly) -> str:
    """Render in descending powers with residues in [0, p), e.g. "x^4+2x^3+x".

    This is the display format used in JSON reports and CLI output.
    """
    if f.is_zero():
        return "0"
    terms = []
    for d in range(f.degree, -1, -1):
        c = f.coeffs[d]
        if not c:
            continue
        if d == 0:
            terms.append(str(c))
        else:
            coef = "" if c == 1 else str(c)
            terms.append(f"{coef}x" if d == 1 else f"{coef}x^{d}")
    return "+".join(terms)


def poly_gcd(a: ModPoly, b: ModPoly) -> ModPoly:
    """Monic greatest common divisor (zero when both arguments are zero)."""
    if a.p != b.p:
        raise ValueError(f"modulus mismatch: {a.p} vs {b.p}")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """Pairwise-coprime squarefree parts g_j with strictly increasing j.

    The product of g_j**j over all parts recovers the monic input.
    """

    p: int
    parts: tuple[tuple[ModPoly, int], ...]

    def reassemble(self) -> ModPoly:
        out = ModPoly.one(self.p)
        for g, j in self.parts:
            out = out * g.pow(j)
        return out


def _pth_root(f: ModPoly) -> ModPoly:
    # f = h(x^p) with coefficients in F_p, where c^(1/p) = c (Frobenius)
    p = f.p
    return ModPoly(p, _trim([f.coeffs[i] for i in range(0, len(f.coeffs), p)]))


def _squarefree_parts(f: ModPoly) -> dict[int, ModPoly]:
    p = f.p
    out: dict[int, ModPoly] = {}
    if f.degree == 0:
        return out
    df = f.derivative()
    if df.is_zero():
        # every exponent is a multiple of p: f = h(x)^p
        for m, g in _squarefree_parts(_pth_root(f)).items():
            out[m * p] = g
        return out
    c = poly_gcd(f, df)
    w = f.exact_div(c)
    i = 1
    while not w.is_one():
        y = poly_gcd(w, c)
        part = w.exact_div(y)
        if part.degree > 0:
            out[i] = part
        w = y
        c = c.exact_div(y)
        i += 1
    if not c.is_one():
        # leftover carries the factors whose exponent is divisible by p
        for m, g in _squarefree_parts(_pth_root(c)).items():
            out[m * p] = out[m * p] * g if m * p in out else g
    return out


def squarefree_decomposition(f: ModPoly) -> SquarefreeDecomposition:
    """Squarefree decomposition of a monic polynomial, characteristic-aware.

    The classic gcd cascade handles exponents coprime to p; whenever the
    running remainder has zero derivative it is a p-th power h(x^p) and the
    recursion continues on h via coefficient p-th roots (the identity map on
    F_p coefficients).
    """
    if f.is_zero() or not f.is_monic():
        raise ValueError("squarefree decomposition requires a monic nonzero polynomial")
    parts = _squarefree_parts(f)
    return SquarefreeDecomposition(f.p, tuple((parts[m].monic(), m) for m in sorted(parts)))


def sfp(f: ModPoly) -> ModPoly:
    """Square-free part: the product of the distinct monic irreducible factors."""
    out = ModPoly.one(f.p)
    for g, _ in squarefree_decomposition(f).parts:
        out = out * g
    return out


def sqrt_poly(f: ModPoly) -> ModPoly:
    """Multiplicity-halving square root: each factor keeps ceil(e/2) copies.

    Always a multiple of sfp(f) and a divisor of f.
    """
    out = ModPoly.one(f.p)
    for g, j in squarefree_decomposition(f).parts:
        out = out * g.pow((j + 1) // 2)
    return out


# ---------------------------------------------------------------------------
# linear algebra over F_p


def _rref(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """In-place reduced row echelon form mod p; returns (rows, pivot columns)."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(vi - f * vr) % p for vi, vr in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def _reduced_rows(m: IntMatrix, p: int) -> list[list[int]]:
    return [[v % p for v in row] for row in m.to_rows()]


def rank_p(m: IntMatrix, p: int) -> int:
    """Rank of m over F_p (Gaussian elimination on the reduced matrix)."""
    _check_modulus(p)
    _, pivots = _rref(_reduced_rows(m, p), p)
    return len(pivots)


def nullity_p(m: IntMatrix, p: int) -> int:
    if not m.is_square():
        raise ValueError("nullity_p defined here for square matrices only")
    return m.cols - rank_p(m, p)


def nullspace_basis_p(m: IntMatrix, p: int) -> list[tuple[int, ...]]:
    """Reduced-echelon basis of the right nullspace of m over F_p.

    Basis vector k has a 1 in the k-th free column and zeros in the other
    free columns, which makes coordinate extraction against this basis a
    plain lookup.
    """
    _check_modulus(p)
    rows, pivots = _rref(_reduced_rows(m, p), p)
    n = m.cols
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        vec = [0] * n
        vec[f] = 1
        for r, c in enumerate(pivots):
            vec[c] = (-rows[r][f]) % p
        basis.append(tuple(vec))
    return basis


def solve_mod_p(a_rows: list[list[int]], b_cols: list[list[int]], p: int) -> list[list[int]] | None:
    """Solve A X = B over F_p; returns X columns, or None if inconsistent.

    Under-determined systems return one particular solution (free variables
    set to zero).
    """
    n = len(a_rows)
    w = len(b_cols)
    ncols = len(a_rows[0])
    aug = [[a_rows[i][j] % p for j in range(ncols)] + [b_cols[k][i] % p for k in range(w)] for i in range(n)]
    rows, pivots = _rref(aug, p)
    if any(c >= ncols for c in pivots):
        return None
    x_cols = []
    for k in range(w):
        vec = [0] * ncols
        for r, c in enumerate(pivots):
            vec[c] = rows[r][ncols + k]
        x_cols.append(vec)
    return x_cols


def char_poly_mod_p(m: IntMatrix, p: int) -> ModPoly:
    """Characteristic polynomial over F_p, by the same division-free scheme
    used for the integer characteristic polynomial."""
    _check_modulus(p)
    if not m.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    return ModPoly(p, _trim(_charpoly_berkowitz(_reduced_rows(m, p), mod=p)))
