"""Truncated Current Algebra and PBW Straightening

sl_{n+1} (x) C[t]/(t^N) realized by matrix units E_{a,b} (x) t^r, acting on
the universal highest-weight module generated by a vector v with

    (x^+ (x) C[t]) v = 0,    (h_i (x) t^r) v = delta_{r,0} mu(h_i) v.

That module is free over the envelope of the lowering part, so its vectors
are combinations of ordered PBW monomials in the lowering generators.
Straightening rewrites generator * monomial back into that basis.

Lowering generators are keyed (r, height, b) for E_{b+height, b} (x) t^r,
i.e. x^-_{b, b+height-1} (x) t^r. Monomials are tuples of keys in weakly
decreasing order, the leftmost factor acting last.
"""

import logging
from collections import defaultdict

from dem_cartan import RootRange, Weight, WeightError

_logger = logging.getLogger(__name__)

# (a, b, r): the matrix unit E_{a,b} (x) t^r
Unit = tuple[int, int, int]
Key = tuple[int, int, int]
Monomial = tuple[Key, ...]


class TruncatedCurrentAlgebra:
    """Matrix-unit model of gl_{n+1} (x) C[t]/(t^N); sl_{n+1} sits inside."""

    def __init__(self, n: int, truncation: int):
        if n < 1:
            raise WeightError(f"Rank must be positive, got {n}")
        if truncation < 1:
            raise ValueError(f"Truncation must be positive, got {truncation}")
        self.n = n
        self.N = truncation

    def bracket(self, x: Unit, y: Unit) -> list[tuple[int, Unit]]:
        """[E_ab t^r, E_cd t^s] = delta_bc E_ad t^{r+s} - delta_da E_cb t^{r+s}."""
        a, b, r = x
        c, d, s = y
        if r + s >= self.N:
            return []
        out = []
        if b == c:
            out.append((1, (a, d, r + s)))
        if d == a:
            out.append((-1, (c, b, r + s)))
        return out

    def lowering_keys(self) -> list[Key]:
        return [(r, h, b)
                for r in range(self.N)
                for h in range(1, self.n + 1)
                for b in range(1, self.n + 2 - h)]

    def raising_units(self) -> list[Unit]:
        """x_i^+ (x) t^r; these generate the raising subalgebra."""
        return [(i, i + 1, r) for r in range(self.N) for i in range(1, self.n + 1)]

    def cartan_elements(self, i: int, r: int) -> list[tuple[int, Unit]]:
        """h_i (x) t^r as a combination of diagonal units."""
        return [(1, (i, i, r)), (-1, (i + 1, i + 1, r))]

    # --- Named elements ---

    @staticmethod
    def x_minus(i: int, j: int, r: int) -> Unit:
        return (j + 1, i, r)

    @staticmethod
    def x_plus(i: int, j: int, r: int) -> Unit:
        return (i, j + 1, r)


def unit_of_key(key: Key) -> Unit:
    r, h, b = key
    return (b + h, b, r)


def key_of_unit(unit: Unit) -> Key:
    a, b, r = unit
    if a <= b:
        raise ValueError(f"{unit} is not a lowering unit")
    return (r, a - b, b)


def root_of_key(key: Key) -> RootRange:
    _, h, b = key
    return RootRange(b, b + h - 1)


def monomial_depth(mono: Monomial, n: int) -> tuple[int, ...]:
    """Root-lattice coordinates of the total weight lowered by the monomial."""
    depth = [0] * n
    for _, h, b in mono:
        for k in range(b, b + h):
            depth[k - 1] += 1
    return tuple(depth)


def monomial_grade(mono: Monomial) -> int:
    return sum(r for r, _, _ in mono)


class HighestWeightStraightener:
    """Action of the truncated current algebra on the universal module of weight mu."""

    def __init__(self, algebra: TruncatedCurrentAlgebra, mu: Weight):
        if mu.n != algebra.n:
            raise WeightError(f"Rank mismatch: {mu.n} vs {algebra.n}")
        self.algebra = algebra
        self.mu = mu
        # diagonal eigenvalues: h_i = E_ii - E_{i+1,i+1}
        self.diagonal = [0] * (algebra.n + 2)
        for a in range(1, algebra.n + 2):
            self.diagonal[a] = sum(mu.coords[a - 1:])
        self._insert_cache = {}
        self._act_cache = {}

    def insert(self, key: Key, mono: Monomial) -> dict:
        """Straighten E(key) * mono."""
        if not mono or key >= mono[0]:
            return {(key,) + mono: 1}
        cached = self._insert_cache.get((key, mono))
        if cached is not None:
            return cached

        first, rest = mono[0], mono[1:]
        out = defaultdict(int)
        # g f rest = f (g rest) + [g, f] rest
        for m1, c1 in self.insert(key, rest).items():
            for m2, c2 in self.insert(first, m1).items():
                out[m2] += c1 * c2
        for coef, unit in self.algebra.bracket(unit_of_key(key), unit_of_key(first)):
            for m1, c1 in self.insert(key_of_unit(unit), rest).items():
                out[m1] += coef * c1
        result = {m: c for m, c in out.items() if c}
        self._insert_cache[(key, mono)] = result
        return result

    def act(self, unit: Unit, mono: Monomial) -> dict:
        """E(unit) * mono * v, for any matrix unit."""
        a, b, r = unit
        if r >= self.algebra.N:
            return {}
        if a > b:
            return self.insert(key_of_unit(unit), mono)
        if not mono:
            if a == b and r == 0 and self.diagonal[a]:
                return {(): self.diagonal[a]}
            return {}
        cached = self._act_cache.get((unit, mono))
        if cached is not None:
            return cached

        first, rest = mono[0], mono[1:]
        out = defaultdict(int)
        for m1, c1 in self.act(unit, rest).items():
            for m2, c2 in self.insert(first, m1).items():
                out[m2] += c1 * c2
        for coef, other in self.algebra.bracket(unit, unit_of_key(first)):
            for m1, c1 in self.act(other, rest).items():
                out[m1] += coef * c1
        result = {m: c for m, c in out.items() if c}
        self._act_cache[(unit, mono)] = result
        return result

    def apply(self, unit: Unit, vec: dict) -> dict:
        """Linear extension of act to a vector."""
        out = defaultdict(int)
        for mono, c in vec.items():
            for m, c2 in self.act(unit, mono).items():
                out[m] += c * c2
        return {m: c for m, c in out.items() if c}

    def apply_combination(self, terms: list[tuple[int, Unit]], vec: dict) -> dict:
        out = defaultdict(int)
        for coef, unit in terms:
            for m, c in self.apply(unit, vec).items():
                out[m] += coef * c
        return {m: c for m, c in out.items() if c}

    def cache_sizes(self) -> tuple[int, int]:
        return len(self._insert_cache), len(self._act_cache)
