"""Type A Weight Lattice

Exact arithmetic on the weight and root lattices of sl_{n+1}.
Weights are stored in fundamental-weight coordinates, so the value of a
weight on the coroot h_i is simply its i-th coordinate. Simple roots are
converted through the Cartan matrix on demand.
"""

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy


class WeightError(ValueError):
    """Raised when a weight or root index is outside what an operation accepts."""
    pass  # pylint: disable=unnecessary-pass


# --- Lattice elements ---

@dataclass(frozen=True)
class Weight:
    """Integral weight of sl_{n+1} in fundamental-weight coordinates."""

    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if not coords:
            raise WeightError("Weight needs at least one coordinate")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, *coords: int) -> "Weight":
        """Build a weight from its coordinates: Weight.of(1, 0, 2)."""
        return cls(tuple(coords))

    @classmethod
    def zero(cls, n: int) -> "Weight":
        return cls((0,) * n)

    @classmethod
    def fundamental(cls, n: int, i: int) -> "Weight":
        """Fundamental weight omega_i, 1 <= i <= n."""
        if not 1 <= i <= n:
            raise WeightError(f"Node {i} out of range 1..{n}")
        return cls(tuple(1 if k == i else 0 for k in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.coords)

    def coroot(self, i: int) -> int:
        """Value on the simple coroot h_i."""
        if not 1 <= i <= self.n:
            raise WeightError(f"Node {i} out of range 1..{self.n}")
        return self.coords[i - 1]

    def support(self) -> list[int]:
        """Nodes carrying a nonzero coordinate, increasing."""
        return [i for i, c in enumerate(self.coords, start=1) if c != 0]

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def level_sum(self) -> int:
        """Coordinate sum, i.e. the value on h_{1,n}."""
        return sum(self.coords)

    def _check_rank(self, other: "Weight") -> None:
        if self.n != other.n:
            raise WeightError(f"Rank mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "Weight") -> "Weight":
        self._check_rank(other)
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check_rank(other)
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def to_list(self) -> list[int]:
        return list(self.coords)

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coords, start=1):
            if c == 0:
                continue
            if c == 1:
                parts.append(f"w{i}")
            elif c == -1:
                parts.append(f"-w{i}")
            else:
                parts.append(f"{c}w{i}")
        return "+".join(parts).replace("+-", "-") if parts else "0"


@dataclass(frozen=True)
class RootRange:
    """Index pair (i, j) of the positive root alpha_i + ... + alpha_j."""

    i: int
    j: int

    def __post_init__(self):
        if not 1 <= self.i <= self.j:
            raise WeightError(f"Invalid root range ({self.i}, {self.j})")

    @property
    def height(self) -> int:
        return self.j - self.i + 1

    def check(self, n: int) -> None:
        if self.j > n:
            raise WeightError(f"Root range ({self.i}, {self.j}) exceeds rank {n}")


# --- Cartan data ---

@lru_cache(maxsize=None)
def cartan_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix of type A_n."""
    if n < 1:
        raise WeightError(f"Rank must be positive, got {n}")
    return tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n))
        for i in range(n)
    )


@lru_cache(maxsize=None)
def inverse_cartan(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse of the Cartan matrix, entries as Fractions."""
    inv = sympy.Matrix(cartan_matrix(n)).inv()
    return tuple(
        tuple(Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(n))
        for i in range(n)
    )


def simple_root(n: int, i: int) -> Weight:
    """alpha_i as a weight: the i-th column of the Cartan matrix."""
    if not 1 <= i <= n:
        raise WeightError(f"Node {i} out of range 1..{n}")
    return Weight(tuple(row[i - 1] for row in cartan_matrix(n)))


def positive_root(n: int, r: RootRange) -> Weight:
    r.check(n)
    total = Weight.zero(n)
    for k in range(r.i, r.j + 1):
        total = total + simple_root(n, k)
    return total


def highest_root(n: int) -> Weight:
    return positive_root(n, RootRange(1, n))


def positive_roots(n: int) -> list[RootRange]:
    """All positive roots, ordered by height then by starting node."""
    return [RootRange(i, i + h - 1) for h in range(1, n + 1) for i in range(1, n - h + 2)]


def pair_coroot(lam: Weight, r: RootRange) -> int:
    """lambda(h_{i,j}) = sum of the coordinates i..j."""
    r.check(lam.n)
    return sum(lam.coords[r.i - 1:r.j])


def inner_product(lam: Weight, mu: Weight) -> Fraction:
    """Invariant form normalized by (alpha_i, alpha_i) = 2."""
    if lam.n != mu.n:
        raise WeightError(f"Rank mismatch: {lam.n} vs {mu.n}")
    inv = inverse_cartan(lam.n)
    total = Fraction(0)
    for i, a in enumerate(lam.coords):
        if a == 0:
            continue
        row = inv[i]
        for j, b in enumerate(mu.coords):
            if b:
                total += a * b * row[j]
    return total


def root_coordinates(lam: Weight) -> tuple[Fraction, ...]:
    """Coefficients of lambda in the basis of simple roots."""
    inv = inverse_cartan(lam.n)
    return tuple(sum((inv[i][j] * c for j, c in enumerate(lam.coords)), Fraction(0))
                 for i in range(lam.n))


def in_positive_cone(lam: Weight) -> bool:
    """True iff lambda lies in Q^+ (nonnegative integer root coordinates)."""
    return all(c.denominator == 1 and c >= 0 for c in root_coordinates(lam))


def precedes(mu: Weight, lam: Weight) -> bool:
    """Partial order mu <= lambda, i.e. lambda - mu in Q^+."""
    return in_positive_cone(lam - mu)


def root_height(eta: Weight) -> int:
    """Height of an element of the root lattice."""
    coords = root_coordinates(eta)
    if any(c.denominator != 1 for c in coords):
        raise WeightError(f"{eta} is not in the root lattice")
    return int(sum(coords))


def weight_height(lam: Weight) -> int:
    """Sum of the simple-root coordinates of a dominant weight, rounded down."""
    if not lam.is_dominant():
        raise WeightError(f"{lam} is not dominant")
    return math.floor(sum(root_coordinates(lam)))


# --- Parity and odd/even splitting ---

def is_in_P1(lam: Weight) -> bool:
    """Dominant with every coordinate at most one."""
    return all(c in (0, 1) for c in lam.coords)


def parity_decompose(mu: Weight) -> tuple[Weight, Weight]:
    """Unique (nu, lambda) with mu = 2 nu + lambda and lambda in P^+(1)."""
    if not mu.is_dominant():
        raise WeightError(f"parity_decompose needs a dominant weight, got {mu}")
    nu = Weight(tuple(c // 2 for c in mu.coords))
    lam = Weight(tuple(c % 2 for c in mu.coords))
    return nu, lam


def odd_even_split(lam: Weight) -> tuple[Weight, Weight]:
    """Split lambda in P^+(1) into the sums over its odd- and even-placed nodes."""
    if not is_in_P1(lam):
        raise WeightError(f"{lam} is not in P^+(1)")
    odd = [0] * lam.n
    even = [0] * lam.n
    for place, node in enumerate(lam.support()):
        (odd if place % 2 == 0 else even)[node - 1] = 1
    return Weight(tuple(odd)), Weight(tuple(even))


# --- Finite Weyl group ---

def weyl_reflect(lam: Weight, i: int) -> Weight:
    """s_i(lambda) = lambda - lambda(h_i) alpha_i."""
    c = lam.coroot(i)
    if c == 0:
        return lam
    return lam - simple_root(lam.n, i) * c


def longest_element(lam: Weight) -> Weight:
    """w_0 lambda; in type A this reverses and negates the coordinates."""
    return Weight(tuple(-c for c in reversed(lam.coords)))


def dominant_conjugate(lam: Weight) -> tuple[Weight, list[int]]:
    """Straighten lambda into the dominant chamber.

    Returns the dominant conjugate and the reflections applied, in order.
    """
    word = []
    current = lam
    while True:
        negative = [i for i, c in enumerate(current.coords, start=1) if c < 0]
        if not negative:
            return current, word
        i = negative[0]
        current = weyl_reflect(current, i)
        word.append(i)


def weyl_orbit(lam: Weight) -> frozenset[Weight]:
    """All W-conjugates of lambda (breadth-first over simple reflections)."""
    seen = {lam}
    queue = deque([lam])
    while queue:
        current = queue.popleft()
        for i in range(1, lam.n + 1):
            if current.coroot(i) != 0:
                image = weyl_reflect(current, i)
                if image not in seen:
                    seen.add(image)
                    queue.append(image)
    return frozenset(seen)


def dominant_weights_below(lam: Weight) -> list[Weight]:
    """Dominant mu with lambda - mu in Q^+, sorted by increasing depth below lambda."""
    if not lam.is_dominant():
        raise WeightError(f"{lam} is not dominant")
    roots = [positive_root(lam.n, r) for r in positive_roots(lam.n)]
    seen = {lam}
    queue = deque([lam])
    while queue:
        current = queue.popleft()
        for alpha in roots:
            lower = current - alpha
            if lower.is_dominant() and lower not in seen:
                seen.add(lower)
                queue.append(lower)
    return sorted(seen, key=lambda mu: (root_height(lam - mu), mu.coords))


def weyl_dimension(lam: Weight) -> int:
    """dim V(lambda) from the Weyl dimension formula."""
    if not lam.is_dominant():
        raise WeightError(f"{lam} is not dominant")
    factors = [
        sympy.Rational(pair_coroot(lam, r) + r.height, r.height)
        for r in positive_roots(lam.n)
    ]
    return int(sympy.prod(factors))
