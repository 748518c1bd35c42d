"""Exact integer matrix algebra and number-theory utilities.

Everything here is exact: matrices hold arbitrary-precision Python integers,
determinants come from fraction-free elimination, characteristic polynomials
from a division-free recurrence (so the same code runs verbatim over Z and
over F_p), and the Smith normal form from classical unimodular elimination.
Factorization is deterministic for a fixed effort level.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import InvariantViolation
from .graphcore import Graph


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(v for r in rows for v in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c : (i + 1) * c]) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([[self.at(i, j) for i in range(self.rows)] for j in range(self.cols)])

    def is_square(self) -> bool:
        return self.rows == self.cols


@dataclass(frozen=True)
class SnfResult:
    """Invariant factors d_1 | d_2 | ... | d_n plus the determinant sign."""

    factors: tuple[int, ...]
    det_sign: int

    @property
    def dn(self) -> int:
        return self.factors[-1]

    def abs_det(self) -> int:
        out = 1
        for d in self.factors:
            out *= d
        return out


@dataclass(frozen=True)
class FactorizationResult:
    """Prime-power decomposition of the extracted part of an integer.

    ``status`` is "complete" iff the unfactored cofactor is 1; a partial
    result still satisfies n == cofactor * prod(p**e).
    """

    prime_powers: tuple[tuple[int, int], ...]
    cofactor: int
    status: str

    @property
    def is_complete(self) -> bool:
        return self.status == "complete"

    def value(self) -> int:
        out = self.cofactor
        for p, e in self.prime_powers:
            out *= p**e
        return out

    def primes(self) -> list[int]:
        return [p for p, _ in self.prime_powers]

    def squarefree(self) -> bool | None:
        """True/False when decidable, None when the factorization is partial.

        A repeated extracted prime settles the question even for a partial
        factorization; otherwise partial means unknown.
        """
        if any(e >= 2 for _, e in self.prime_powers):
            return False
        return True if self.is_complete else None


def walk_matrix(g: Graph) -> IntMatrix:
    """The n x n matrix whose k-th column is A^k applied to the all-ones vector."""
    n = g.n
    adj = g.adjacency()
    cols = []
    v = [1] * n
    for _ in range(n):
        cols.append(v)
        v = [sum(adj[i][j] * v[j] for j in range(n) if adj[i][j]) for i in range(n)]
    return IntMatrix.from_rows([[cols[k][i] for k in range(n)] for i in range(n)])


def determinant(m: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination.

    Every division performed is exact, so intermediate entries stay at the
    size of minors of the input rather than exploding exponentially.
    """
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i = a[i]
            row_k = a[k]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def _charpoly_berkowitz(rows: list[list[int]], mod: int | None = None) -> list[int]:
    """Characteristic polynomial of a square matrix, ascending coefficients.

    Division-free (Berkowitz): the polynomial of each leading principal
    submatrix is obtained from the previous one by a Toeplitz product whose
    entries are walk sums of the new border row and column.  Works over any
    commutative ring; pass ``mod`` to compute over Z/mod.
    """
    n = len(rows)
    poly = [1, -rows[0][0]]  # descending coefficients, leading first
    if mod is not None:
        poly[1] %= mod
    for m in range(1, n):
        a = rows[m][m]
        r = rows[m][:m]
        c = [rows[i][m] for i in range(m)]
        sub = [row[:m] for row in rows[:m]]
        seq = [1, -a]
        v = c
        for step in range(m):
            dot = sum(r[t] * v[t] for t in range(m))
            seq.append(-dot if mod is None else (-dot) % mod)
            if step < m - 1:
                if mod is None:
                    v = [sum(sub[i][t] * v[t] for t in range(m)) for i in range(m)]
                else:
                    v = [sum(sub[i][t] * v[t] for t in range(m)) % mod for i in range(m)]
        new = [0] * (m + 2)
        for j, pj in enumerate(poly):
            if pj:
                top = min(j + len(seq), m + 2)
                for i in range(j, top):
                    new[i] += seq[i - j] * pj
        poly = new if mod is None else [x % mod for x in new]
    poly.reverse()
    return poly


def char_poly_int(m: IntMatrix) -> tuple[int, ...]:
    """Monic characteristic polynomial det(xI - m), ascending coefficients.

    >>> char_poly_int(IntMatrix.from_rows([[0, 1], [1, 0]]))
    (-1, 0, 1)
    """
    if not m.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    return tuple(_charpoly_berkowitz(m.to_rows()))


def smith_normal_form(m: IntMatrix) -> SnfResult:
    """Invariant factors of an integer matrix under unimodular row/column ops.

    Classical elimination with smallest-nonzero-entry pivoting.  Before each
    stage the gcd of the active submatrix is divided out and re-applied as a
    multiplier to all later factors, which keeps intermediate entries near
    the size of the actual invariant factors.  Entry growth on adversarial
    inputs remains the known performance hazard of this method; at the
    dimensions used here (n <= 64) it is acceptable.
    """
    if not m.is_square():
        raise ValueError("smith normal form of a non-square matrix")
    n = m.rows
    a = m.to_rows()
    sign = 1
    factors: list[int] = []
    mult = 1
    for k in range(n):
        # factor out the gcd of the active submatrix
        g = 0
        for i in range(k, n):
            for v in a[i][k:]:
                if v:
                    g = gcd(g, v)
                    if g == 1:
                        break
            if g == 1:
                break
        if g == 0:
            factors.extend([0] * (n - k))
            break
        if g > 1:
            for i in range(k, n):
                row = a[i]
                for j in range(k, n):
                    row[j] //= g
        mult *= g
        while True:
            # smallest nonzero entry becomes the pivot
            pi = pj = -1
            best = 0
            for i in range(k, n):
                for j in range(k, n):
                    v = abs(a[i][j])
                    if v and (best == 0 or v < best):
                        best, pi, pj = v, i, j
            if pi != k:
                a[k], a[pi] = a[pi], a[k]
                sign = -sign
            if pj != k:
                for row in a:
                    row[k], row[pj] = row[pj], row[k]
                sign = -sign
            if a[k][k] < 0:
                a[k] = [-v for v in a[k]]
                sign = -sign
            d = a[k][k]
            dirty = False
            for i in range(k + 1, n):
                v = a[i][k]
                if v:
                    q = v // d
                    if q:
                        row_i, row_k = a[i], a[k]
                        for j in range(k, n):
                            row_i[j] -= q * row_k[j]
                    if a[i][k]:
                        dirty = True
            for j in range(k + 1, n):
                v = a[k][j]
                if v:
                    q = v // d
                    if q:
                        for row in a:
                            row[j] -= q * row[k]
                    if a[k][j]:
                        dirty = True
            if dirty:
                continue
            # pivot must divide every remaining entry, else pull the
            # offending row up and restart the stage
            offender = -1
            for i in range(k + 1, n):
                if any(v % d for v in a[i][k + 1 :]):
                    offender = i
                    break
            if offender < 0:
                break
            row_k, row_o = a[k], a[offender]
            for j in range(k, n):
                row_k[j] += row_o[j]
        factors.append(a[k][k] * mult)
    return SnfResult(tuple(factors), sign)


def rational_solve(m: IntMatrix, b: IntMatrix) -> list[list[Fraction]]:
    """Exact solution X of m @ X = b for nonsingular square m."""
    if not m.is_square():
        raise ValueError("coefficient matrix must be square")
    if b.rows != m.rows:
        raise ValueError("dimension mismatch between system and right-hand side")
    n = m.rows
    w = b.cols
    aug = [[Fraction(m.at(i, j)) for j in range(n)] + [Fraction(b.at(i, j)) for j in range(w)] for i in range(n)]
    for k in range(n):
        piv = next((r for r in range(k, n) if aug[r][k]), None)
        if piv is None:
            raise ValueError("singular coefficient matrix")
        if piv != k:
            aug[k], aug[piv] = aug[piv], aug[k]
        inv = 1 / aug[k][k]
        aug[k] = [v * inv for v in aug[k]]
        for r in range(n):
            if r != k and aug[r][k]:
                f = aug[r][k]
                aug[r] = [vr - f * vk for vr, vk in zip(aug[r], aug[k])]
    return [row[n:] for row in aug]


# ---------------------------------------------------------------------------
# number theory

_TRIAL_LIMIT = 10**6
_small_primes_cache: list[int] | None = None

EFFORT_LEVELS = ("low", "default", "high")
# per-composite iteration caps for the rho stage; "default" reliably splits
# off prime factors up to ~2**40 while keeping the worst case (a composite
# with no such factor) at a few seconds of work
_RHO_BUDGET = {"low": 0, "default": 1 << 20, "high": 1 << 24}


def _small_primes() -> list[int]:
    global _small_primes_cache
    if _small_primes_cache is None:
        sieve = bytearray([1]) * (_TRIAL_LIMIT + 1)
        sieve[0] = sieve[1] = 0
        for p in range(2, isqrt(_TRIAL_LIMIT) + 1):
            if sieve[p]:
                sieve[p * p :: p] = bytearray((_TRIAL_LIMIT - p * p) // p + 1)
        _small_primes_cache = [i for i, v in enumerate(sieve) if v]
    return _small_primes_cache


def _miller_rabin_composite(n: int, a: int, d: int, s: int) -> bool:
    # True when a witnesses compositeness of n
    a %= n
    if a in (0, 1, n - 1):
        return False
    x = pow(a, d, n)
    if x in (1, n - 1):
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_prp(n: int) -> bool:
    # Selfridge parameter search; n is odd, not a perfect square
    d = 5
    while True:
        j = _jacobi(d, n)
        if j == -1:
            break
        if j == 0 and abs(d) != n:
            return False
        d = -(d + 2) if d > 0 else -(d - 2)
    q = (1 - d) // 4
    s = 0
    t = n + 1
    while t % 2 == 0:
        t //= 2
        s += 1
    # Lucas chain for U_t, V_t with P = 1
    u, v, qk = 1, 1, q % n
    for bit in bin(t)[3:]:
        u = u * v % n
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (u + v) % n, (v + d * u) % n
            if u % 2:
                u += n
            if v % 2:
                v += n
            u, v = u // 2 % n, v // 2 % n
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        if v == 0:
            return True
        qk = qk * qk % n
    return False


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_BOUND = 3317044064679887385961981


def is_prime(n: int) -> bool:
    """Primality test, deterministic below ~3.3e24 (fixed Miller-Rabin bases).

    Above that bound a Baillie-PSW style test is used (Miller-Rabin base 2
    plus a strong Lucas test); no composite passing it is known.
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _MR_DETERMINISTIC_BOUND:
        return not any(_miller_rabin_composite(n, a, d, s) for a in _MR_BASES)
    if _miller_rabin_composite(n, 2, d, s):
        return False
    r = isqrt(n)
    if r * r == n:
        return False
    return _strong_lucas_prp(n)


def _iroot(n: int, k: int) -> int:
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _perfect_power(n: int) -> tuple[int, int]:
    """Largest-exponent representation n = root**k with k prime, else (n, 1)."""
    for k in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61):
        if (1 << k) > n:
            break
        r = _iroot(n, k)
        if r**k == n:
            return r, k
    return n, 1


def _brent_rho(n: int, c: int, budget: int) -> tuple[int | None, int]:
    """One Brent-Pollard cycle hunt on x^2 + c mod n.  Returns (factor, used).

    Differences are accumulated into one running product between gcd
    probes; the sign of a difference is irrelevant to the gcd, so no abs.
    """
    y, r, q = 2, 1, 1
    g = 1
    used = 0
    x = ys = y
    while g == 1 and used < budget:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1 and used < budget:
            ys = y
            span = min(256, r - k, budget - used)
            for _ in range(span):
                y = (y * y + c) % n
                q = q * (x - y) % n
            g = gcd(q, n)
            k += span
            used += span
        r *= 2
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = gcd(x - ys, n)
    if 1 < g < n:
        return g, used
    return None, used


def factor_integer(n: int, effort: str = "default") -> FactorizationResult:
    """Deterministic partial factorization: trial division plus Pollard rho.

    Effort levels: "low" is trial division to 10**6 only; "default" adds
    Brent-Pollard rho with an iteration cap of 2**20 per composite; "high"
    raises the cap to 2**24.  The rho parameter ladder is fixed (x0 = 2,
    c = 1, 2, 3, ...), so results never depend on call order.
    """
    if effort not in _RHO_BUDGET:
        raise ValueError(f"unknown effort level {effort!r}")
    if n < 1:
        raise ValueError("factor_integer requires n >= 1")
    powers: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            powers[p] = powers.get(p, 0) + 1
            n //= p
    if n > 1:
        if n < _TRIAL_LIMIT * _TRIAL_LIMIT or is_prime(n):
            # below the trial bound squared any survivor is prime
            powers[n] = powers.get(n, 0) + 1
            n = 1
    cofactor = 1
    if n > 1:
        stack = [n]
        while stack:
            c = stack.pop()
            if is_prime(c):
                powers[c] = powers.get(c, 0) + 1
                continue
            root, k = _perfect_power(c)
            if k > 1:
                stack.extend([root] * k)
                continue
            budget = _RHO_BUDGET[effort]
            found = None
            for const in range(1, 64):
                if budget <= 0:
                    break
                found, used = _brent_rho(c, const, budget)
                budget -= used
                if found is not None:
                    break
            if found is None:
                cofactor *= c
            else:
                stack.append(found)
                stack.append(c // found)
    status = "complete" if cofactor == 1 else "partial"
    return FactorizationResult(tuple(sorted(powers.items())), cofactor, status)


def verify_product_of_factors(snf: SnfResult, det: int) -> None:
    """Check prod(d_i) == |det|; a mismatch means broken elimination."""
    if snf.abs_det() != abs(det):
        raise InvariantViolation("invariant factor product does not match the determinant")
