"""Spectral invariants over F_p: the common-root polynomial of A and A+J,
the minimal annihilator of the all-ones vector, the characteristic polynomial
of A restricted to the nullspace of W^T, and the reduced walk matrix.

The relationships between these quantities (degree bounds, divisibility
chains, factorization identities) are proven facts, so ``phi_report`` checks
them eagerly and raises :class:`InvariantViolation` when one fails: the
theorems double as runtime self-checks.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fpalg
from .errors import InvariantViolation
from .fpalg import ModPoly, char_poly_mod_p, format_poly, poly_gcd, sfp, sqrt_poly
from .graphcore import Graph
from .zlinalg import IntMatrix, walk_matrix


def _adjacency_matrix(g: Graph) -> IntMatrix:
    return IntMatrix.from_rows(g.adjacency())


def _adjacency_plus_ones(g: Graph) -> IntMatrix:
    return IntMatrix.from_rows([[v + 1 for v in row] for row in g.adjacency()])


def phi_p(g: Graph, p: int) -> ModPoly:
    """Monic gcd over F_p of the characteristic polynomials of A and A + J.

    Invariant under generalized cospectrality, which is what makes it usable
    as certification evidence.
    """
    return poly_gcd(char_poly_mod_p(_adjacency_matrix(g), p), char_poly_mod_p(_adjacency_plus_ones(g), p))


def p_main_poly(g: Graph, p: int) -> ModPoly:
    """Monic polynomial of least degree annihilating the all-ones vector:
    the smallest monic f over F_p with f(A) e = 0.

    Its degree equals rank_p of the walk matrix, and the first rank-many
    walk-matrix columns span the column space, so one linear solve on those
    columns determines the coefficients.
    """
    fpalg._check_modulus(p)
    n = g.n
    adj = g.adjacency()
    w_cols = []
    v = [1] * n
    for _ in range(n):
        w_cols.append([x % p for x in v])
        v = [sum(adj[i][j] * v[j] for j in range(n) if adj[i][j]) % p for i in range(n)]
    rank = len(fpalg._rref([list(col) for col in zip(*w_cols)], p)[1])
    lead = w_cols[rank - 1] if rank else [1] * n
    target = [sum(adj[i][j] * lead[j] for j in range(n) if adj[i][j]) % p for i in range(n)]
    a_rows = [[w_cols[k][i] for k in range(rank)] for i in range(n)]
    sol = fpalg.solve_mod_p(a_rows, [target], p)
    if sol is None:
        raise InvariantViolation("leading walk-matrix columns failed to span the next power")
    coeffs = [(-c) % p for c in sol[0]] + [1]
    return ModPoly.make(p, coeffs)


def restricted_char_poly(g: Graph, p: int) -> ModPoly:
    """Characteristic polynomial of A acting on the F_p nullspace of W^T.

    The nullspace is A-invariant, so with B a basis matrix the system
    B X = A B is exactly solvable; the result is the characteristic
    polynomial of the small matrix X.  Inconsistency of the system is
    mathematically impossible and treated as an internal error.
    """
    fpalg._check_modulus(p)
    w_t = walk_matrix(g).transpose()
    basis = fpalg.nullspace_basis_p(w_t, p)
    k = len(basis)
    if k == 0:
        return ModPoly.one(p)
    n = g.n
    adj = g.adjacency()
    b_rows = [[basis[c][i] for c in range(k)] for i in range(n)]
    ab_cols = [[sum(adj[i][j] * vec[j] for j in range(n) if adj[i][j]) % p for i in range(n)] for vec in basis]
    x_cols = fpalg.solve_mod_p(b_rows, ab_cols, p)
    if x_cols is None:
        raise InvariantViolation("nullspace of W^T is not A-invariant over F_p")
    for c, vec in enumerate(basis):
        for i in range(n):
            lhs = sum(b_rows[i][j] * x_cols[c][j] for j in range(k)) % p
            if lhs != ab_cols[c][i]:
                raise InvariantViolation("solution of B X = A B failed verification")
    x_mat = IntMatrix.from_rows([[x_cols[c][r] for c in range(k)] for r in range(k)])
    return char_poly_mod_p(x_mat, p)


def reduced_walk_matrix(g: Graph, p: int) -> IntMatrix:
    """Walk matrix with the p-divisible tail compressed out.

    With k the nullity of W mod p and f the [0, p) integer lift of the
    minimal annihilator of e, the columns are e, Ae, ..., A^(n-k-1) e
    followed by A^i f(A) e / p for i < k.  Integrality of the first divided
    column is guaranteed because f(A) e vanishes mod p; the remaining ones
    are A applied to an integer vector.  The determinant shrinks by exactly
    p**k.
    """
    fpalg._check_modulus(p)
    n = g.n
    adj = g.adjacency()
    w = walk_matrix(g)
    k = fpalg.nullity_p(w, p)
    if k == 0:
        raise ValueError(f"prime {p} does not divide det W, nothing to reduce")
    f = p_main_poly(g, p)
    powers = []
    v = [1] * n
    for _ in range(n + 1):
        powers.append(v)
        v = [sum(adj[i][j] * v[j] for j in range(n) if adj[i][j]) for i in range(n)]
    fe = [sum(c * powers[d][i] for d, c in enumerate(f.coeffs)) for i in range(n)]
    if any(x % p for x in fe):
        raise InvariantViolation("minimal annihilator lift does not vanish mod p")
    cols = [powers[j] for j in range(n - k)]
    tail = [x // p for x in fe]
    for _ in range(k):
        cols.append(tail)
        tail = [sum(adj[i][j] * tail[j] for j in range(n) if adj[i][j]) for i in range(n)]
    return IntMatrix.from_rows([[cols[j][i] for j in range(n)] for i in range(n)])


@dataclass(frozen=True)
class PhiReport:
    """All F_p evidence for one (graph, prime) pair, self-checked on build."""

    p: int
    n: int
    nullity: int
    phi: ModPoly
    sfp_phi: ModPoly
    sqrt_phi: ModPoly
    restricted_charpoly: ModPoly
    p_main: ModPoly

    @property
    def eq_degrees_match(self) -> bool:
        """Whether deg sfp equals the nullity (the certification condition)."""
        return self.sfp_phi.degree == self.nullity

    def to_json_dict(self) -> dict:
        return {
            "p": str(self.p),
            "nullity": self.nullity,
            "phi": format_poly(self.phi),
            "sfp_phi": format_poly(self.sfp_phi),
            "sqrt_phi": format_poly(self.sqrt_phi),
            "m_p": format_poly(self.p_main),
            "restricted": format_poly(self.restricted_charpoly),
            "eq4_holds": self.eq_degrees_match,
        }


def phi_report(g: Graph, p: int) -> PhiReport:
    """Assemble and cross-check the full per-prime evidence record.

    Checks performed (all proven, violations raise InvariantViolation):
    deg sfp <= nullity <= deg phi; the divisibility chain
    sfp | restricted | phi; the factorization
    p_main * restricted == charpoly(A) mod p; and deg p_main == n - nullity.
    """
    fpalg._check_modulus(p)
    n = g.n
    w = walk_matrix(g)
    nullity = fpalg.nullity_p(w, p)
    chi = char_poly_mod_p(_adjacency_matrix(g), p)
    phi = poly_gcd(chi, char_poly_mod_p(_adjacency_plus_ones(g), p))
    if phi.is_zero():
        raise InvariantViolation("phi must be nonzero for a nonzero characteristic polynomial")
    sfp_phi = sfp(phi)
    sqrt_phi = sqrt_poly(phi)
    restricted = restricted_char_poly(g, p)
    main = p_main_poly(g, p)

    if not (sfp_phi.degree <= nullity <= max(phi.degree, 0)):
        raise InvariantViolation(f"degree bound broken at p={p}: deg sfp={sfp_phi.degree}, nullity={nullity}, deg phi={phi.degree}")
    if not restricted.divides(phi):
        raise InvariantViolation(f"restricted charpoly does not divide phi at p={p}")
    if not sfp_phi.divides(restricted):
        raise InvariantViolation(f"sfp(phi) does not divide the restricted charpoly at p={p}")
    if main * restricted != chi:
        raise InvariantViolation(f"p-main times restricted charpoly is not chi(A) at p={p}")
    if main.degree != n - nullity:
        raise InvariantViolation(f"p-main degree {main.degree} != rank {n - nullity} at p={p}")
    return PhiReport(p, n, nullity, phi, sfp_phi, sqrt_phi, restricted, main)
