"""Rank-3 algebraic sublattices of the Mukai lattice and isotropic triples.

For an admissible discriminant d, the monodromy-invariant algebraic part
of the Mukai lattice of the Kuznetsov component is a rank-3 lattice of
determinant d spanned by lambda_1, lambda_2 and one extra class tau.
The two instances with a known explicit Gram matrix (d = 26 and d = 42)
are built in; arbitrary user-supplied rank-3 Grams are accepted
everywhere else.

The interesting structure on such a lattice is a triple (v, v', w) with

    v^2 = 0,   v.v' = 1,   v.w = 0,   w^2 = -d.

Such a triple exhibits the lattice as U + Z(-d): v, v' span a hyperbolic
plane and w generates the complement.  This module verifies triples,
searches coordinate boxes for them, and performs the normalization.

Search output is canonical: vectors are enumerated by L1 norm and then
lexicographically, and sign-symmetric candidates (v and w) are
normalized so the first nonzero coordinate is positive.  Re-running a
search therefore always returns the identical triple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DegenerateGramError, ParityError
from .exactlinalg import IntMatrix, dot, kernel_basis, ldlt_signature, sign_normalize
from .lattices import Lattice, LatticeVec, inner_product, vectors_with_norm


def kuznetsov_rank3_lattice(d: int) -> Lattice:
    """Built-in rank-3 lattice of determinant d on basis (lambda1, lambda2, tau).

    Known instances: d = 26 and d = 42.
    """
    if d == 26:
        return Lattice(3, IntMatrix([[-2, 1, 0], [1, -2, 1], [0, 1, 8]]), label="L26")
    if d == 42:
        return Lattice(3, IntMatrix([[-2, 1, 0], [1, -2, 0], [0, 0, 14]]), label="L42")
    raise ValueError("built-in lattices exist for d = 26 and d = 42 only")


@dataclass(frozen=True)
class IsotropicTriple:
    """Carrier for a candidate triple; verify_triple checks the conditions."""

    v: LatticeVec
    vprime: LatticeVec
    w: LatticeVec
    d: int

    def __post_init__(self):
        if not (self.v.lattice == self.vprime.lattice == self.w.lattice):
            raise ValueError("triple vectors must share one lattice")
        if self.d < 1:
            raise ValueError("d must be a positive integer")

    @property
    def lattice(self) -> Lattice:
        return self.v.lattice


@dataclass(frozen=True)
class TripleCheck:
    """Per-condition breakdown of a triple verification."""

    v_norm: int
    v_dot_vprime: int
    v_dot_w: int
    w_norm: int
    d: int

    @property
    def v_isotropic(self) -> bool:
        return self.v_norm == 0

    @property
    def pairing_ok(self) -> bool:
        return self.v_dot_vprime == 1

    @property
    def orthogonal_ok(self) -> bool:
        return self.v_dot_w == 0

    @property
    def w_norm_ok(self) -> bool:
        return self.w_norm == -self.d

    @property
    def all_ok(self) -> bool:
        return (
            self.v_isotropic
            and self.pairing_ok
            and self.orthogonal_ok
            and self.w_norm_ok
        )

    def conditions(self) -> dict[str, dict]:
        return {
            "v.v": {"value": self.v_norm, "expected": 0, "ok": self.v_isotropic},
            "v.v'": {"value": self.v_dot_vprime, "expected": 1, "ok": self.pairing_ok},
            "v.w": {"value": self.v_dot_w, "expected": 0, "ok": self.orthogonal_ok},
            "w.w": {"value": self.w_norm, "expected": -self.d, "ok": self.w_norm_ok},
        }


def verify_triple(L: Lattice, triple: IsotropicTriple) -> TripleCheck:
    """Evaluate all four defining conditions exactly."""
    if triple.lattice != L:
        raise ValueError("triple does not live in the given lattice")
    return TripleCheck(
        v_norm=inner_product(L, triple.v, triple.v),
        v_dot_vprime=inner_product(L, triple.v, triple.vprime),
        v_dot_w=inner_product(L, triple.v, triple.w),
        w_norm=inner_product(L, triple.w, triple.w),
        d=triple.d,
    )


FOUND = "found"
NOT_FOUND_WITHIN_BOUND = "not_found_within_bound"
IMPOSSIBLE = "impossible"


@dataclass(frozen=True)
class TripleSearch:
    """Search outcome: found / not found within bound / impossible.

    ``impossible`` means a structural obstruction was detected (a
    definite lattice has no nonzero isotropic vector at all), as opposed
    to the inconclusive exhaustion of a finite search box.
    """

    status: str
    triple: IsotropicTriple | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.status == FOUND


def _shells(bound: int, max_l1: int | None = None) -> Iterator[tuple[int, int, int]]:
    """Rank-3 box vectors ordered by (L1 norm, lexicographic)."""
    top = 3 * bound if max_l1 is None else min(max_l1, 3 * bound)
    for s in range(top + 1):
        for x1 in range(-min(s, bound), min(s, bound) + 1):
            r1 = s - abs(x1)
            for x2 in range(-min(r1, bound), min(r1, bound) + 1):
                r2 = r1 - abs(x2)
                if r2 > bound:
                    continue
                if r2 == 0:
                    yield (x1, x2, 0)
                else:
                    yield (x1, x2, -r2)
                    yield (x1, x2, r2)


def _min_dual_one(gv: Sequence[int], bound: int) -> tuple[int, ...] | None:
    """Canonically smallest x in the box with <gv, x> = 1."""
    for x in _shells(bound):
        if dot(gv, x) == 1:
            return x
    return None


def _min_orthogonal_with_norm(
    L: Lattice, gv: Sequence[int], norm: int, bound: int
) -> tuple[int, ...] | None:
    """Canonically smallest sign-normalized x with <gv, x> = 0, x^2 = norm."""
    for x in _shells(bound):
        if sign_normalize(x) != x:
            continue
        if dot(gv, x) != 0:
            continue
        if inner_product(L, x, x) == norm:
            return x
    return None


def find_isotropic_triple(L: Lattice, d: int, bound: int) -> TripleSearch:
    """Exhaustive box search for a triple (v, v', w) as above.

    Candidates for v are the primitive isotropic vectors with all
    coordinates bounded by ``bound``, taken in canonical order; for each
    the minimal completing v' and w are sought in the same box.  The
    first fully completed candidate wins.  A definite lattice is
    reported as structurally impossible rather than merely unsearched.
    """
    if L.rank != 3:
        raise ValueError("triple search requires a rank-3 lattice")
    if d < 1:
        raise ValueError("d must be a positive integer")
    if bound < 1:
        raise ValueError("bound must be a positive integer")
    p, n, z = ldlt_signature(L.gram)
    if z != 0:
        raise DegenerateGramError("triple search requires a nondegenerate lattice")
    if p == L.rank or n == L.rank:
        return TripleSearch(
            IMPOSSIBLE, reason="definite lattice has no nonzero isotropic vector"
        )

    for v in vectors_with_norm(L.gram, 0, bound, canonical=True):
        if math.gcd(*v) != 1:
            continue
        gv = L.gram.mul_vec(v)
        vprime = _min_dual_one(gv, bound)
        if vprime is None:
            continue
        w = _min_orthogonal_with_norm(L, gv, -d, bound)
        if w is None:
            continue
        triple = IsotropicTriple(
            v=LatticeVec(L, v), vprime=LatticeVec(L, vprime), w=LatticeVec(L, w), d=d
        )
        return TripleSearch(FOUND, triple=triple)
    return TripleSearch(NOT_FOUND_WITHIN_BOUND)


def hyperbolic_normalize(
    L: Lattice, v, vprime
) -> tuple[list[LatticeVec], IntMatrix]:
    """Basis change splitting off the hyperbolic plane spanned by (v, v').

    Requires v^2 = 0 and v.v' = 1.  The returned basis is
    (v, v' + k v, complement generators) where k = -(v'^2)/2 makes the
    second vector isotropic; this needs v'^2 to be even, otherwise a
    ParityError is raised (no integral completion to a standard
    hyperbolic basis exists).  The complement part is saturated, so the
    basis is unimodular and the returned Gram has the block shape
    [[0,1],[1,0]] + complement.  For a rank-3 input this is
    [[0,1,0],[1,0,0],[0,0,m]] with |m| = |det L|.
    """
    vc = LatticeVec(L, tuple(v)) if not isinstance(v, LatticeVec) else v
    vp = LatticeVec(L, tuple(vprime)) if not isinstance(vprime, LatticeVec) else vprime
    if inner_product(L, vc, vc) != 0:
        raise ValueError("v must be isotropic (v^2 = 0)")
    if inner_product(L, vc, vp) != 1:
        raise ValueError("v and v' must pair to 1")
    q = inner_product(L, vp, vp)
    if q % 2 != 0:
        raise ParityError(
            "v'^2 is odd: no integral isotropic completion of the hyperbolic pair"
        )
    k = -q // 2
    b2 = tuple(a + k * b for a, b in zip(vp.coords, vc.coords))
    pairing = IntMatrix(
        [L.gram.mul_vec(vc.coords), L.gram.mul_vec(b2)], ncols=L.rank
    )
    complement = kernel_basis(pairing)
    basis_coords = [vc.coords, b2, *complement]
    gram = IntMatrix(
        [
            [inner_product(L, x, y) for y in basis_coords]
            for x in basis_coords
        ],
        ncols=len(basis_coords),
    )
    return [LatticeVec(L, b) for b in basis_coords], gram
