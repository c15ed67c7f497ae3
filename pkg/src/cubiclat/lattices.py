"""Integer lattices: constructions, invariants, and small-rank searches.

A lattice is a free Z-module of finite rank with an integer Gram matrix.
Conventions used throughout (they are choices, recorded here because no
canonical ones exist):

* ``E8`` is positive definite, with the Cartan matrix of the E8 root
  system in Bourbaki numbering as its Gram matrix.
* The square of the hyperplane class inside the odd unimodular lattice
  ``I(21,2)`` is taken to be ``(1, 1, 1, 0, ..., 0)``, a norm-3 vector.
* Canonical ordering of integer coordinate vectors is by L1 norm first,
  then lexicographically; sign-symmetric searches normalize the first
  nonzero coordinate to be positive.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from typing import Sequence

from .errors import DegenerateGramError, LatticeFormatError
from .exactlinalg import (
    IntMatrix,
    coord_key,
    determinant,
    dot,
    inverse_unimodular,
    kernel_basis,
    ldlt_signature,
    saturate_rows,
    sign_normalize,
    smith_normal_form,
)


@dataclass(frozen=True)
class Lattice:
    """Free Z-module with a symmetric integer Gram matrix.

    Two lattices compare equal when their Gram matrices agree; the label
    is presentation metadata only.
    """

    rank: int
    gram: IntMatrix
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        if self.gram.nrows != self.rank or self.gram.ncols != self.rank:
            raise ValueError("gram dimension must equal rank")
        if not self.gram.is_symmetric():
            raise ValueError("gram matrix must be symmetric")

    def det(self) -> int:
        return determinant(self.gram)

    def vec(self, coords: Sequence[int]) -> "LatticeVec":
        return LatticeVec(self, tuple(coords))


@dataclass(frozen=True)
class LatticeVec:
    """Integer coordinate vector relative to a lattice's basis."""

    lattice: Lattice
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if len(self.coords) != self.lattice.rank:
            raise ValueError("coordinate length must equal lattice rank")

    def norm(self) -> int:
        return inner_product(self.lattice, self, self)


@dataclass(frozen=True)
class DiscriminantGroup:
    """Finite abelian group given by its invariant factor chain.

    ``factors`` is the ordered tuple of invariant factors > 1, each
    dividing the next; the empty tuple is the trivial group.
    """

    factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        for a in self.factors:
            if a <= 1:
                raise ValueError("invariant factors must exceed 1")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a divisibility chain")

    @property
    def order(self) -> int:
        out = 1
        for a in self.factors:
            out *= a
        return out

    def __str__(self) -> str:
        if not self.factors:
            return "trivial"
        return " x ".join(f"Z/{a}" for a in self.factors)


# ---------------------------------------------------------------------------
# constructions


_E8_EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4))


def e8() -> Lattice:
    """The positive definite even unimodular rank-8 lattice."""
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = 2
    for a, b in _E8_EDGES:
        g[a - 1][b - 1] = g[b - 1][a - 1] = -1
    return Lattice(8, IntMatrix(g), label="E8")


def hyperbolic_plane() -> Lattice:
    return Lattice(2, IntMatrix([[0, 1], [1, 0]]), label="U")


def a2() -> Lattice:
    return Lattice(2, IntMatrix([[2, -1], [-1, 2]]), label="A2")


def z_lattice(n: int) -> Lattice:
    """Rank-1 lattice with Gram [[n]]."""
    if n == 0:
        raise ValueError("Z(n) requires nonzero n")
    return Lattice(1, IntMatrix([[n]]), label=f"Z({n})")


def odd_unimodular(p: int, q: int) -> Lattice:
    """Diagonal lattice I(p, q) with p entries +1 and q entries -1."""
    if p < 0 or q < 0:
        raise ValueError("I(p,q) requires p, q >= 0")
    if p + q == 0:
        raise ValueError("I(0,0) is empty and not supported")
    diag = [1] * p + [-1] * q
    n = p + q
    return Lattice(
        n,
        IntMatrix([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)]),
        label=f"I({p},{q})",
    )


_ZN_RE = re.compile(r"^Z\((-?\d+)\)$")
_IPQ_RE = re.compile(r"^I\((\d+),(\d+)\)$")


def standard_lattice(name: str) -> Lattice:
    """Build a standard lattice from its name.

    Accepted names: ``E8``, ``U``, ``A2``, ``Z(n)`` for nonzero n, and
    ``I(p,q)`` for p, q >= 0 not both zero.
    """
    key = name.strip()
    if key.upper() == "E8":
        return e8()
    if key.upper() == "U":
        return hyperbolic_plane()
    if key.upper() == "A2":
        return a2()
    m = _ZN_RE.match(key)
    if m:
        return z_lattice(int(m.group(1)))
    m = _IPQ_RE.match(key)
    if m:
        return odd_unimodular(int(m.group(1)), int(m.group(2)))
    raise ValueError(f"unknown standard lattice name: {name!r}")


def twist(L: Lattice, n: int) -> Lattice:
    """Scale the bilinear form of L by the nonzero integer n."""
    if n == 0:
        raise ValueError("twist by 0 is degenerate")
    if n == 1:
        return L
    label = f"{L.label}({n})" if L.label else None
    return Lattice(L.rank, L.gram.scale(n), label=label)


def direct_sum(parts: Sequence[Lattice]) -> Lattice:
    if not parts:
        raise ValueError("direct_sum requires at least one summand")
    if len(parts) == 1:
        return parts[0]
    gram = IntMatrix.block_diag([p.gram for p in parts])
    return Lattice(sum(p.rank for p in parts), gram)


def _coerce_coords(L: Lattice, x) -> tuple[int, ...]:
    if isinstance(x, LatticeVec):
        if x.lattice != L:
            raise ValueError("vector does not belong to this lattice")
        return x.coords
    coords = tuple(int(a) for a in x)
    if len(coords) != L.rank:
        raise ValueError("coordinate length must equal lattice rank")
    return coords


def inner_product(L: Lattice, x, y) -> int:
    """Evaluate the bilinear form: x^T G y."""
    xc = _coerce_coords(L, x)
    yc = _coerce_coords(L, y)
    return dot(xc, L.gram.mul_vec(yc))


def discriminant_group(L: Lattice) -> DiscriminantGroup:
    """Invariant factors of the finite group L^dual / L.

    Reads the Smith normal form of the Gram matrix; factors equal to 1
    are dropped.  The product of the factors equals |det L|.
    """
    if L.det() == 0:
        raise DegenerateGramError("discriminant group requires a nondegenerate Gram")
    D, _, _ = smith_normal_form(L.gram)
    factors = tuple(D.rows[i][i] for i in range(L.rank) if D.rows[i][i] > 1)
    return DiscriminantGroup(factors)


def signature(L: Lattice) -> tuple[int, int]:
    """Signature (positives, negatives) of a nondegenerate lattice."""
    p, n, z = ldlt_signature(L.gram)
    if z != 0:
        raise DegenerateGramError("signature requires a nondegenerate Gram")
    return (p, n)


def orthogonal_complement(
    L: Lattice, vectors: Sequence
) -> tuple[Lattice, list[LatticeVec]]:
    """Saturated orthogonal complement of a set of vectors.

    Returns the complement as an abstract lattice with its induced Gram,
    together with a basis expressed in the coordinates of L.  The result
    is primitive in L; it may have rank zero.
    """
    coords = [_coerce_coords(L, s) for s in vectors]
    pairing = IntMatrix([L.gram.mul_vec(s) for s in coords], ncols=L.rank)
    basis = kernel_basis(pairing)
    gram = IntMatrix(
        [[inner_product(L, b, c) for c in basis] for b in basis], ncols=len(basis)
    )
    sub = Lattice(len(basis), gram)
    return sub, [LatticeVec(L, b) for b in basis]


def saturation(L: Lattice, basis: Sequence) -> list[LatticeVec]:
    """Basis of the primitive closure of the span of the given vectors.

    The input must be linearly independent over Q.  The output spans the
    same rational subspace and is saturated; applying the operation twice
    changes nothing.
    """
    coords = [_coerce_coords(L, b) for b in basis]
    M = IntMatrix(coords, ncols=L.rank)
    D, _, _ = smith_normal_form(M)
    rank = sum(1 for t in range(min(D.nrows, D.ncols)) if D.rows[t][t] != 0)
    if rank != len(coords):
        raise ValueError("saturation requires linearly independent input")
    return [LatticeVec(L, b) for b in saturate_rows(M)]


# ---------------------------------------------------------------------------
# small-rank vector enumeration

# Enumeration is exact: the trailing coordinate is recovered by solving an
# integer quadratic (or linear) equation, so only O(bound^(rank-1)) work is
# done instead of scanning the full box.


def _quadratic_int_roots(a: int, b: int, c: int, lo: int, hi: int) -> list[int]:
    """Integer solutions of a*x^2 + b*x + c = 0 with lo <= x <= hi."""
    if a == 0:
        if b == 0:
            return list(range(lo, hi + 1)) if c == 0 else []
        if c % b != 0:
            return []
        x = -c // b
        return [x] if lo <= x <= hi else []
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    s = math.isqrt(disc)
    if s * s != disc:
        return []
    roots = set()
    for sq in (s, -s):
        num = -b + sq
        if num % (2 * a) == 0:
            roots.add(num // (2 * a))
    return sorted(x for x in roots if lo <= x <= hi)


def vectors_with_norm(
    gram: IntMatrix, value: int, bound: int, canonical: bool = True
) -> list[tuple[int, ...]]:
    """Nonzero vectors x with x^T G x = value and |x_i| <= bound.

    Supports rank 1 to 3.  With ``canonical`` set, only one vector per
    +-x pair is kept (first nonzero coordinate positive).  The result is
    sorted by the canonical order (L1 norm, then lexicographic).
    """
    n = gram.nrows
    if n < 1 or n > 3:
        raise ValueError("vectors_with_norm supports ranks 1 to 3")
    g = gram.rows
    found = set()

    def push(v: tuple[int, ...]):
        if any(v):
            found.add(sign_normalize(v) if canonical else v)

    if n == 1:
        for x in _quadratic_int_roots(g[0][0], 0, -value, -bound, bound):
            push((x,))
    elif n == 2:
        for x1 in range(-bound, bound + 1):
            a = g[1][1]
            b = 2 * g[0][1] * x1
            c = g[0][0] * x1 * x1 - value
            for x2 in _quadratic_int_roots(a, b, c, -bound, bound):
                push((x1, x2))
    else:
        for x1 in range(-bound, bound + 1):
            for x2 in range(-bound, bound + 1):
                a = g[2][2]
                b = 2 * (g[0][2] * x1 + g[1][2] * x2)
                c = (
                    g[0][0] * x1 * x1
                    + 2 * g[0][1] * x1 * x2
                    + g[1][1] * x2 * x2
                    - value
                )
                for x3 in _quadratic_int_roots(a, b, c, -bound, bound):
                    push((x1, x2, x3))
    return sorted(found, key=coord_key)


# ---------------------------------------------------------------------------
# small-rank isometry testing


ISOMETRIC = "isometric"
NOT_ISOMETRIC = "not_isometric"
NOT_FOUND_WITHIN_BOUND = "not_found_within_bound"


@dataclass(frozen=True)
class IsometryResult:
    """Outcome of an isometry search.

    ``status`` is one of ``isometric`` (with a witness ``map`` T such
    that T^t G1 T = G2), ``not_isometric`` (an invariant distinguishes
    the lattices; see ``reason``), or ``not_found_within_bound`` (the
    exhaustive search box was exhausted without a witness, which proves
    nothing).
    """

    status: str
    map: IntMatrix | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.status == ISOMETRIC


def _search_isometry(g1: IntMatrix, g2: IntMatrix, bound: int) -> IntMatrix | None:
    """First basis image T (canonical DFS order) with T^t g1 T = g2."""
    n = g1.nrows
    cands = [vectors_with_norm(g1, g2.rows[j][j], bound, canonical=False) for j in range(n)]
    order = sorted(range(n), key=lambda j: (len(cands[j]), j))
    columns: dict[int, tuple[int, ...]] = {}
    images: dict[int, tuple[int, ...]] = {}

    def extend(depth: int) -> bool:
        if depth == n:
            return True
        pos = order[depth]
        for x in cands[pos]:
            # a global sign flip is always an isometry: pin the first column.
            if depth == 0 and sign_normalize(x) != x:
                continue
            ok = True
            for prev, gprev in images.items():
                if dot(gprev, x) != g2.rows[prev][pos]:
                    ok = False
                    break
            if not ok:
                continue
            columns[pos] = x
            images[pos] = g1.mul_vec(x)
            if extend(depth + 1):
                return True
            del columns[pos]
            del images[pos]
        return False

    if not extend(0):
        return None
    T = IntMatrix(
        [[columns[j][i] for j in range(n)] for i in range(n)], ncols=n
    )
    return T


def is_isometric_small(L1: Lattice, L2: Lattice, bound: int | None = None) -> IsometryResult:
    """Decide isometry of two nondegenerate lattices of rank <= 3.

    Cheap invariants (rank, determinant, signature, discriminant group)
    are compared first; a mismatch proves the lattices distinct.  When
    they all agree an exhaustive coordinate-box search looks for a basis
    image T with T^t G1 T = G2 and det T = +-1.  The default box bound is
    ``max |entry| of the target Gram times the rank``; pass ``bound`` to
    override.  With the default bound the search also tries the reverse
    direction (whichever has the smaller derived box first) and inverts
    the witness, which is dramatically faster when one Gram has zero
    diagonal entries.
    """
    if max(L1.rank, L2.rank) > 3:
        raise ValueError("is_isometric_small supports ranks up to 3")
    if L1.rank != L2.rank:
        return IsometryResult(NOT_ISOMETRIC, reason="rank")
    if determinant(L1.gram) == 0 or determinant(L2.gram) == 0:
        raise DegenerateGramError("isometry testing requires nondegenerate Grams")
    if determinant(L1.gram) != determinant(L2.gram):
        return IsometryResult(NOT_ISOMETRIC, reason="determinant")
    if signature(L1) != signature(L2):
        return IsometryResult(NOT_ISOMETRIC, reason="signature")
    if discriminant_group(L1) != discriminant_group(L2):
        return IsometryResult(NOT_ISOMETRIC, reason="discriminant_group")
    if L1.gram == L2.gram:
        return IsometryResult(ISOMETRIC, map=IntMatrix.identity(L1.rank))

    n = L1.rank
    if bound is not None:
        T = _search_isometry(L1.gram, L2.gram, bound)
        return (
            IsometryResult(ISOMETRIC, map=T)
            if T is not None
            else IsometryResult(NOT_FOUND_WITHIN_BOUND)
        )

    b_fwd = max(1, L2.gram.max_abs() * n)
    b_rev = max(1, L1.gram.max_abs() * n)
    directions = [("fwd", b_fwd), ("rev", b_rev)]
    directions.sort(key=lambda t: (t[1], t[0] != "fwd"))
    for which, b in directions:
        if which == "fwd":
            T = _search_isometry(L1.gram, L2.gram, b)
        else:
            S = _search_isometry(L2.gram, L1.gram, b)
            T = inverse_unimodular(S) if S is not None else None
        if T is not None:
            return IsometryResult(ISOMETRIC, map=T)
    return IsometryResult(NOT_FOUND_WITHIN_BOUND)


# ---------------------------------------------------------------------------
# named lattices


def cubic_lattice() -> Lattice:
    """Rank-22 lattice E8 + E8 + U + U + A2 of signature (20, 2)."""
    L = direct_sum([e8(), e8(), hyperbolic_plane(), hyperbolic_plane(), a2()])
    return Lattice(L.rank, L.gram, label="Gamma")


def k3_lattice() -> Lattice:
    """Rank-22 lattice E8(-1) + E8(-1) + U + U + U of signature (3, 19)."""
    m1 = twist(e8(), -1)
    u = hyperbolic_plane()
    L = direct_sum([m1, m1, u, u, u])
    return Lattice(L.rank, L.gram, label="K3")


def mukai_lattice() -> Lattice:
    """Rank-24 lattice E8 + E8 + U + U + U + U of signature (20, 4)."""
    u = hyperbolic_plane()
    L = direct_sum([e8(), e8(), u, u, u, u])
    return Lattice(L.rank, L.gram, label="Mukai")


def k3_polarized_primitive(d: int) -> Lattice:
    """Rank-22 lattice E8(-1) + E8(-1) + U + U + Z(-d), degree-d primitive part."""
    if d <= 0:
        raise ValueError("degree d must be positive")
    m1 = twist(e8(), -1)
    u = hyperbolic_plane()
    L = direct_sum([m1, m1, u, u, z_lattice(-d)])
    return Lattice(L.rank, L.gram, label=f"Lambda_{d}")


def middle_lattice() -> Lattice:
    """The odd unimodular lattice I(21, 2) of rank 23."""
    return odd_unimodular(21, 2)


def hyperplane_square() -> LatticeVec:
    """The norm-3 class (1,1,1,0,...,0) inside I(21,2); a fixed convention."""
    L = middle_lattice()
    return LatticeVec(L, (1, 1, 1) + (0,) * 20)


_LAMBDA_RE = re.compile(r"^Lambda_(\d+)$", re.IGNORECASE)


def lattice_by_name(name: str) -> Lattice:
    """Resolve a catalog name to a lattice.

    Knows the standard names (``E8``, ``U``, ``A2``, ``Z(n)``, ``I(p,q)``)
    plus ``Gamma``, ``K3``, ``Mukai``, ``I21_2`` and ``Lambda_<d>``.
    """
    key = name.strip()
    low = key.lower()
    if low == "gamma":
        return cubic_lattice()
    if low == "k3":
        return k3_lattice()
    if low == "mukai":
        return mukai_lattice()
    if low in ("i21_2", "i(21,2)"):
        return middle_lattice()
    m = _LAMBDA_RE.match(key)
    if m:
        return k3_polarized_primitive(int(m.group(1)))
    return standard_lattice(key)


# ---------------------------------------------------------------------------
# lattice file format

# A lattice file is a JSON document with fields "rank" (integer), "gram"
# (array of arrays of integers) and optionally "label" (string).  The
# writer is canonical (sorted keys, fixed separators, trailing newline),
# so write/read/write round-trips are byte identical.


def lattice_to_json(L: Lattice) -> str:
    doc: dict = {"gram": L.gram.to_lists(), "rank": L.rank}
    if L.label is not None:
        doc["label"] = L.label
    return json.dumps(doc, sort_keys=True, separators=(", ", ": ")) + "\n"


def lattice_from_json(text: str) -> Lattice:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise LatticeFormatError(f"invalid JSON at line {e.lineno}: {e.msg}") from e
    if not isinstance(doc, dict):
        raise LatticeFormatError("lattice document must be a JSON object")
    if "rank" not in doc:
        raise LatticeFormatError("missing field: rank")
    if "gram" not in doc:
        raise LatticeFormatError("missing field: gram")
    rank = doc["rank"]
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 0:
        raise LatticeFormatError("field 'rank' must be a nonnegative integer")
    gram = doc["gram"]
    if not isinstance(gram, list) or any(not isinstance(r, list) for r in gram):
        raise LatticeFormatError("field 'gram' must be an array of arrays")
    for r in gram:
        for e in r:
            if not isinstance(e, int) or isinstance(e, bool):
                raise LatticeFormatError("field 'gram' must contain integers only")
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise LatticeFormatError("field 'label' must be a string")
    try:
        return Lattice(rank, IntMatrix(gram, ncols=rank if not gram else None), label=label)
    except ValueError as e:
        raise LatticeFormatError(str(e)) from e


def load_lattice(path: str) -> Lattice:
    with open(path, "r", encoding="utf-8") as fh:
        return lattice_from_json(fh.read())


def save_lattice(L: Lattice, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(lattice_to_json(L))
