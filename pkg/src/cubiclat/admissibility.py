"""Numerical conditions on discriminants of special cubic fourfolds.

Two sieves act on a positive integer d:

* condition (*): d > 6 and d is congruent to 0 or 2 modulo 6;
* condition (**): (*) holds and d/2 is divisible neither by 9 nor by
  any prime p congruent to -1 modulo 3.

Discriminants satisfying (**) are called admissible; they are exactly
the ones with an associated polarized K3 surface, of genus d/2 + 1.
Factorization is plain trial division, which is exact and fast for the
ranges this library targets (d up to about 10^6).
"""

from __future__ import annotations

from dataclasses import dataclass


def satisfies_star(d: int) -> bool:
    """Condition (*): d > 6 and d = 0 or 2 (mod 6)."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    return d > 6 and d % 6 in (0, 2)


def _star_star_witness(half: int) -> int | None:
    """Smallest obstruction to (**) for d/2 = half, or None.

    Obstructions are the factor 9 and primes p = 2 (mod 3).  When both
    occur the smaller number is reported, so a prime below 9 wins over 9
    and 9 wins over larger primes.
    """
    witness_nine = 9 if half % 9 == 0 else None
    m = half
    p = 2
    smallest_prime = None
    while p * p <= m:
        if m % p == 0:
            if p % 3 == 2:
                smallest_prime = p
                break
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    if smallest_prime is None and m > 1 and m % 3 == 2:
        smallest_prime = m
    candidates = [w for w in (witness_nine, smallest_prime) if w is not None]
    return min(candidates) if candidates else None


def satisfies_star_star(d: int) -> tuple[bool, int | None]:
    """Condition (**) with a witness for failure.

    Returns ``(True, None)`` when d is admissible.  On failure the
    witness is the offending factor of d/2 (the smallest prime p = 2
    mod 3, or 9), or ``None`` when already (*) fails.
    """
    if not satisfies_star(d):
        return (False, None)
    # (*) forces d to be even, so d/2 is an integer
    witness = _star_star_witness(d // 2)
    return (witness is None, witness)


def enumerate_admissible(max_d: int) -> list[int]:
    """All admissible d <= max_d, ascending."""
    if max_d < 1:
        raise ValueError("max_d must be a positive integer")
    return [d for d in range(8, max_d + 1, 2) if satisfies_star_star(d)[0]]


def genus_of_discriminant(d: int) -> int:
    """The genus d/2 + 1 of the associated polarized K3 surface."""
    if d < 2 or d % 2 != 0:
        raise ValueError("genus is defined for even d >= 2")
    return d // 2 + 1


@dataclass(frozen=True)
class DiscriminantReport:
    """Full diagnostic for one discriminant value.

    ``genus`` is present exactly when d is even; ``witness`` names the
    obstruction to (**) when one exists.
    """

    d: int
    satisfies_star: bool
    satisfies_star_star: bool
    genus: int | None
    witness: int | None

    def __post_init__(self):
        if self.satisfies_star_star and not self.satisfies_star:
            raise ValueError("(**) implies (*)")
        if (self.d % 2 == 0) != (self.genus is not None):
            raise ValueError("genus must be present exactly for even d")


def discriminant_report(d: int) -> DiscriminantReport:
    star = satisfies_star(d)
    star_star, witness = satisfies_star_star(d)
    genus = genus_of_discriminant(d) if d % 2 == 0 and d >= 2 else None
    return DiscriminantReport(
        d=d,
        satisfies_star=star,
        satisfies_star_star=star_star,
        genus=genus,
        witness=witness,
    )
