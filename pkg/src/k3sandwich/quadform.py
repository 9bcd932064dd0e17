"""Positive-definite binary quadratic forms and the three representation criteria.

The three forms of interest are minus one half of the rank-2 lattices that
carry the enhancement vector:

    x^2 + y^2       <->  A_1 + A_1
    x^2 + xy + 2y^2 <->  [[-2, -1], [-1, -4]]
    2x^2 + xy + 2y^2 <-> [[-4, -1], [-1, -4]]

so Q(v) = N exactly when the lattice vector v has square -2N.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd, isqrt

from .errors import InvalidDiscriminant, InvalidN

DEFAULT_FACTOR_BOUND = 10**7


@dataclass(frozen=True)
class BinaryForm:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0 or self.discriminant >= 0:
            raise InvalidDiscriminant(f"{self} is not positive definite")

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def lattice_gram(self) -> list:
        """Gram matrix of the even negative-definite lattice -2Q."""
        return [[-2 * self.a, -self.b], [-self.b, -2 * self.c]]

    def __str__(self) -> str:
        return f"{self.a}x^2 + {self.b}xy + {self.c}y^2"


SERIES_FORMS = {
    1: BinaryForm(1, 0, 1),
    2: BinaryForm(1, 1, 2),
    3: BinaryForm(2, 1, 2),
}


def primitive_representations(Q: BinaryForm, n: int) -> list:
    """All (x, y) with Q(x, y) = n and gcd(x, y) = 1, in lexicographic order.

    Every y in the ellipse's range is scanned; for each one the quadratic in
    x is solved exactly.
    """
    if n < 1:
        raise InvalidN("n must be positive")
    D = -Q.discriminant
    ybound = isqrt(4 * Q.a * n // D) + 1
    out = []
    for y in range(-ybound, ybound + 1):
        # a x^2 + b y x + (c y^2 - n) = 0
        disc = (Q.b * y) ** 2 - 4 * Q.a * (Q.c * y * y - n)
        if disc < 0:
            continue
        r = isqrt(disc)
        if r * r != disc:
            continue
        for num in {-Q.b * y + r, -Q.b * y - r}:
            if num % (2 * Q.a) == 0:
                x = num // (2 * Q.a)
                if gcd(x, y) == 1 and Q(x, y) == n:
                    out.append((x, y))
    return sorted(out)


def factorize(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> dict:
    """Trial-division factorisation {p: e}."""
    if n < 1:
        raise InvalidN(f"cannot factor {n}")
    if n > bound:
        raise InvalidN(f"{n} exceeds the factorisation bound {bound}")
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _split(n: int, special: int) -> tuple:
    """Write n = special^e * m with special not dividing m."""
    e = 0
    while n % special == 0:
        n //= special
        e += 1
    return e, n


def criterion(series: int, N: int, bound: int = DEFAULT_FACTOR_BOUND) -> bool:
    """The congruence condition on N for the given series, as stated for the enhancements.

    Series 1 follows the representation lemma for A_1^2 (primes 1 mod 4,
    or twice such a product).  Series 3 requires every prime factor outside
    {3, 5} to lie in the class 2, 8 mod 15.
    """
    if N < 1:
        raise InvalidN(f"N must be positive, got {N}")
    f = factorize(N, bound)
    if series == 1:
        e2 = f.pop(2, 0)
        return e2 <= 1 and all(p % 4 == 1 for p in f)
    if series == 2:
        e7 = f.pop(7, 0)
        return e7 <= 1 and all(p % 7 in (1, 2, 4) for p in f)
    if series == 3:
        e3 = f.pop(3, 0)
        e5 = f.pop(5, 0)
        if e3 > 1 or e5 > 1 or any(p % 15 not in (2, 8) for p in f):
            return False
        count = sum(f.values())
        if e3 == e5:  # N = prod or 15 * prod
            return count % 2 == 1
        return count % 2 == 0  # N = 3 * prod or 5 * prod
    raise InvalidN(f"unknown series {series}")


def primes_one_mod_four(N: int) -> bool:
    """Every prime divisor of N is 1 mod 4 (the prime condition without the factor-2 clause)."""
    return all(p % 4 == 1 for p in factorize(N))


def class_group_criterion(N: int) -> bool:
    """Primitive representability of N by 2x^2 + xy + 2y^2 via the class group Cl(-15) = Z/2.

    Split primes 1, 4 mod 15 lie in the principal class, 2, 8 mod 15 in
    the other one, 3 and 5 ramify into the non-principal class, and the
    remaining primes are inert.
    """
    f = factorize(N)
    parity = 0
    for p, e in f.items():
        if p in (3, 5):
            if e > 1:
                return False
            parity += 1
        elif p % 15 in (2, 8):
            parity += e
        elif p % 15 not in (1, 4):
            return False
    return parity % 2 == 1


def reduced_forms(D: int) -> list:
    """All reduced positive-definite forms of discriminant D; the length is h(D)."""
    if D >= 0 or D % 4 not in (0, 1):
        raise InvalidDiscriminant(f"{D} is not a negative discriminant")
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a:
                continue
            if b < 0 and (a == c):
                continue
            out.append(BinaryForm(a, b, c))
        a += 1
    return out


class_forms = reduced_forms


def _sweep_chunk(args) -> list:
    series, lo, hi = args
    Q = SERIES_FORMS[series]
    bad = []
    for N in range(lo, hi):
        if criterion(series, N) != bool(primitive_representations(Q, N)):
            bad.append(N)
    return bad


def oracle_sweep(series: int, nmax: int, workers: int = 1) -> list:
    """Counterexamples N <= nmax where the criterion and brute force disagree."""
    if series not in SERIES_FORMS:
        raise InvalidN(f"unknown series {series}")
    if workers <= 1:
        return _sweep_chunk((series, 1, nmax + 1))
    step = max(1, nmax // (4 * workers))
    chunks = [(series, lo, min(lo + step, nmax + 1)) for lo in range(1, nmax + 1, step)]
    with ProcessPoolExecutor(workers) as pool:
        return sorted(n for part in pool.map(_sweep_chunk, chunks) for n in part)


def lemma_report(series: int, nmax: int, workers: int = 1) -> dict:
    bad = oracle_sweep(series, nmax, workers)
    return {"series": series, "max": nmax, "agree": not bad, "counterexamples": bad}
