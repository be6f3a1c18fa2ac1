"""Presentations and Graded Module Construction

Cyclic graded modules over sl_{n+1}[t], given by a highest weight and a list
of relations applied to the generator, are computed exactly:

1. every relation is straightened into the universal highest-weight module;
2. the relation span is closed under x_i^+ (x) t^r and h_i (x) t^r;
3. the lowering part spreads that closure over the weight spaces asked for;
4. each (weight, grade) dimension is the monomial count minus the rank.

The presentations built here are the level two module M(nu, lambda), also
reached from a loop weight of graded-limit shape, the Demazure modules
D(l, mu) (optionally with redundant relations removed), the local Weyl
modules and the sl_2 modules V(2^a 1^b).
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

from dem_cartan import (
    RootRange,
    Weight,
    dominant_weights_below,
    is_in_P1,
    longest_element,
    pair_coroot,
    parity_decompose,
    positive_roots,
    root_coordinates,
    weight_height,
    weyl_orbit,
)
from dem_characters import GradedCharacter, demazure_character, graded_leq
from dem_current import (
    HighestWeightStraightener,
    TruncatedCurrentAlgebra,
    monomial_depth,
    monomial_grade,
)
from dem_echelon import EchelonBasis
from dem_loopweights import LoopWeight, graded_limit_factors, weight_of

_logger = logging.getLogger(__name__)

DEFAULT_MAX_TRUNCATION = 24


class PresentationError(ValueError):
    """Raised when a presentation cannot be built from the given data."""
    pass  # pylint: disable=unnecessary-pass


class BoundTooSmallError(RuntimeError):
    """Raised when the weight cutoff drops weight spaces that may be nonzero."""
    pass  # pylint: disable=unnecessary-pass


class TruncationUnstableError(RuntimeError):
    """Raised when dimensions change between truncations N and N+1."""
    pass  # pylint: disable=unnecessary-pass


# --- Presentations ---

@dataclass(frozen=True)
class Factor:
    """One factor (element (x) t^t)^power of a relation.

    kind "-" is x^-_{i,j}, "+" is x^+_{i,j}, "h" is h_{i,j}.
    """

    kind: str
    i: int
    j: int
    t: int = 0
    power: int = 1

    def __post_init__(self):
        if self.kind not in ("-", "+", "h"):
            raise PresentationError(f"Unknown factor kind: {self.kind!r}")
        if not 1 <= self.i <= self.j:
            raise PresentationError(f"Invalid root range ({self.i}, {self.j})")
        if self.t < 0 or self.power < 0:
            raise PresentationError(f"Negative exponent in factor {self}")

    def to_list(self) -> list:
        return [[self.kind, self.i, self.j], self.t, self.power]

    def __str__(self) -> str:
        name = {"-": "x-", "+": "x+", "h": "h"}[self.kind]
        base = f"{name}[{self.i},{self.j}]" + (f"t^{self.t}" if self.t else "")
        return f"({base})^{self.power}" if self.power != 1 else base


Relation = tuple[Factor, ...]


@dataclass(frozen=True)
class Presentation:
    """Highest weight plus relations; factors of a relation act right to left."""

    highest_weight: Weight
    relations: tuple[Relation, ...] = ()
    label: str = ""

    def __post_init__(self):
        if not self.highest_weight.is_dominant():
            raise PresentationError(f"{self.highest_weight} is not dominant")
        for rel in self.relations:
            for f in rel:
                if f.j > self.highest_weight.n:
                    raise PresentationError(f"Factor {f} exceeds rank {self.highest_weight.n}")

    @property
    def n(self) -> int:
        return self.highest_weight.n

    def max_t_exponent(self) -> int:
        return max((f.t for rel in self.relations for f in rel), default=0)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "highest_weight": self.highest_weight.to_list(),
            "relations": [[f.to_list() for f in rel] for rel in self.relations],
        }


def _lowering(i: int, j: int, t: int = 0, power: int = 1) -> Relation:
    return (Factor("-", i, j, t, power),)


def _integrability(mu: Weight) -> list[Relation]:
    """(x_i^-)^{mu(h_i)+1}."""
    return [_lowering(i, i, 0, mu.coroot(i) + 1) for i in range(1, mu.n + 1)]


def present_local_weyl(mu: Weight) -> Presentation:
    """Local Weyl module: only the integrability relations."""
    return Presentation(mu, tuple(_integrability(mu)), f"W({mu})")


def present_M(nu: Weight, lam: Weight) -> Presentation:
    """M(nu, lambda) with mu = 2 nu + lambda.

    Relations (x_i^-)^{mu(h_i)+1}, x_i^- (x) t^{(nu+lambda)(h_i)}, and
    x^-_{i_j, i_{j+1}} (x) t^{nu(h_{i_j, i_{j+1}})+1} along the support of lambda.
    """
    if not nu.is_dominant():
        raise PresentationError(f"{nu} is not dominant")
    if not is_in_P1(lam):
        raise PresentationError(f"{lam} is not in P^+(1)")
    mu = nu * 2 + lam
    relations = _integrability(mu)
    s = nu + lam
    relations += [_lowering(i, i, s.coroot(i)) for i in range(1, mu.n + 1)]
    support = lam.support()
    for a, b in zip(support, support[1:]):
        relations.append(_lowering(a, b, pair_coroot(nu, RootRange(a, b)) + 1))
    return Presentation(mu, tuple(relations), f"M({nu}, {lam})")


def graded_limit_presentation(pi: LoopWeight) -> Presentation:
    """M(nu, lambda) for a loop weight made of one P^+_Z(1) chain and Kirillov-Reshetikhin pairs.

    wt pi = 2 nu + lambda with lambda in P^+(1).
    """
    graded_limit_factors(pi)
    nu, lam = parity_decompose(weight_of(pi))
    p = present_M(nu, lam)
    return Presentation(p.highest_weight, p.relations, f"L({pi})")


def demazure_exponents(level: int, value: int) -> tuple[int, int]:
    """(s, m) with value = (s-1) * level + m and 0 < m <= level."""
    s = (value - 1) // level + 1
    return s, value - (s - 1) * level


def present_D(level: int, mu: Weight, refined: bool = False) -> Presentation:
    """D(level, mu): x^-_{i,j} (x) t^{s_ij} and (x^-_{i,j} (x) t^{s_ij-1})^{m_ij+1}.

    With refined=True the power relations known to be consequences of the
    rest are left out: those with m_ij == level, and all of them at level 2.
    """
    if level < 1:
        raise PresentationError(f"Level must be positive, got {level}")
    if not mu.is_dominant():
        raise PresentationError(f"{mu} is not dominant")
    relations = _integrability(mu)
    for r in positive_roots(mu.n):
        s, m = demazure_exponents(level, pair_coroot(mu, r))
        relations.append(_lowering(r.i, r.j, s))
        if s == 0:
            continue
        if refined and (m == level or level == 2):
            continue
        relations.append(_lowering(r.i, r.j, s - 1, m + 1))
    return Presentation(mu, tuple(relations), f"D({level}, {mu}){' refined' if refined else ''}")


def _tail(xi: list[int], k: int) -> int:
    return sum(xi[k:])


def present_V_xi(a: int, b: int, alternative: bool = False) -> Presentation:
    """sl_2 module V(2^a 1^b).

    Relations (x^-)^{|xi|+1} and (x^+ (x) t)^s (x^-)^{s+r} whenever
    s + r >= 1 + r k + sum_{p > k} xi_p for some k >= 0. The alternative
    form replaces the second family by the single relation x^- (x) t^{a+b}.
    """
    if a < 0 or b < 0:
        raise PresentationError(f"Partition exponents must be nonnegative, got {a}, {b}")
    xi = [2] * a + [1] * b
    size = sum(xi)
    mu = Weight.of(size)
    relations = [_lowering(1, 1, 0, size + 1)]
    if alternative:
        relations.append(_lowering(1, 1, a + b))
        return Presentation(mu, tuple(relations), f"V(2^{a}1^{b}) alternative")

    for s in range(1, size + 1):
        for r in range(0, size - s + 1):
            if any(s + r >= 1 + r * k + _tail(xi, k) for k in range(len(xi) + 1)):
                relations.append((Factor("+", 1, 1, 1, s), Factor("-", 1, 1, 0, s + r)))
    return Presentation(mu, tuple(relations), f"V(2^{a}1^{b})")


# --- Graded modules ---

@dataclass
class GradedModule:
    """Exact graded weight-space dimensions of a constructed module."""

    dims: dict = field(default_factory=dict)   # (Weight, grade) -> dim > 0
    presentation: Presentation | None = None
    truncation: int = 0
    bound: int = 0

    def dimension(self) -> int:
        return sum(self.dims.values())

    def character(self) -> GradedCharacter:
        return GradedCharacter(self.dims)

    def grades(self) -> list[int]:
        return sorted({g for _, g in self.dims})

    def records(self) -> list[dict]:
        return [{"weight": r["weight"], "grade": r["grade"], "dim": r["mult"]}
                for r in self.character().records()]


def _depth_of(mu: Weight, nu: Weight) -> tuple[int, ...]:
    coords = root_coordinates(mu - nu)
    return tuple(int(c) for c in coords)


def _weight_at(mu: Weight, depth: tuple[int, ...]) -> Weight:
    n = mu.n
    coords = list(mu.coords)
    # subtract sum_k depth_k alpha_k, alpha_k = 2 e_k - e_{k-1} - e_{k+1}
    for k, d in enumerate(depth):
        if not d:
            continue
        coords[k] -= 2 * d
        if k > 0:
            coords[k - 1] += d
        if k < n - 1:
            coords[k + 1] += d
    return Weight(tuple(coords))


class _MonomialCounter:
    """Number of PBW monomials of a given depth and grade."""

    def __init__(self, algebra: TruncatedCurrentAlgebra):
        self.n = algebra.n
        self.top = algebra.N - 1
        self.keys = algebra.lowering_keys()
        self.roots = [monomial_depth((k,), self.n) for k in self.keys]
        self.count = lru_cache(maxsize=None)(self._count)

    def _count(self, index: int, depth: tuple[int, ...], grade: int) -> int:
        if index == len(self.keys):
            return 1 if grade == 0 and not any(depth) else 0
        r = self.keys[index][0]
        root = self.roots[index]
        total = 0
        d, g = depth, grade
        while g >= 0 and all(x >= 0 for x in d):
            total += self.count(index + 1, d, g)
            d = tuple(x - y for x, y in zip(d, root))
            g -= r
        return total

    def max_grade(self, depth: tuple[int, ...]) -> int:
        """Each generator lowers by at least one simple root and carries t^{N-1} at most."""
        return self.top * sum(depth)


def _relation_vector(straightener: HighestWeightStraightener, rel: Relation) -> dict:
    algebra = straightener.algebra
    vec = {(): 1}
    for f in reversed(rel):
        for _ in range(f.power):
            if f.kind == "-":
                vec = straightener.apply(algebra.x_minus(f.i, f.j, f.t), vec)
            elif f.kind == "+":
                vec = straightener.apply(algebra.x_plus(f.i, f.j, f.t), vec)
            else:
                vec = straightener.apply_combination(
                    [(1, (f.i, f.i, f.t)), (-1, (f.j + 1, f.j + 1, f.t))], vec)
            if not vec:
                return {}
    return vec


def _block_of(vec: dict, n: int) -> tuple:
    mono = next(iter(vec))
    return monomial_depth(mono, n), monomial_grade(mono)


def _raising_closure(straightener: HighestWeightStraightener, seeds: list[dict]) -> dict:
    """Span of the seeds closed under x_i^+ (x) t^r and h_i (x) t^r, per block.

    The positive Borel part factors as U(n^+[t]) U(h (x) tC[t]), so the seeds
    are first closed under the Cartan currents (which keep the depth) and
    the result is then closed under the raising generators alone.
    """
    algebra = straightener.algebra
    n = algebra.n
    cartan = [algebra.cartan_elements(i, r) for r in range(1, algebra.N) for i in range(1, n + 1)]
    raising = [[(1, u)] for u in algebra.raising_units()]

    cartan_blocks = defaultdict(EchelonBasis)
    stable = []
    queue = [v for v in seeds if v]
    while queue:
        vec = queue.pop()
        if not cartan_blocks[_block_of(vec, n)].add(vec):
            continue
        stable.append(vec)
        for op in cartan:
            image = straightener.apply_combination(op, vec)
            if image:
                queue.append(image)

    blocks = defaultdict(EchelonBasis)
    queue = stable
    while queue:
        vec = queue.pop()
        if not blocks[_block_of(vec, n)].add(vec):
            continue
        for op in raising:
            image = straightener.apply_combination(op, vec)
            if image:
                queue.append(image)
    _logger.debug("Raising closure: %d Cartan-stable seeds, %d blocks, total rank %d",
                  len(stable), len(blocks), sum(b.rank for b in blocks.values()))
    return blocks


def _lowering_closure(straightener: HighestWeightStraightener, closure: dict,
                      region: set) -> dict:
    """Submodule blocks inside region: closure plus everything lowering reaches."""
    algebra = straightener.algebra
    n = algebra.n
    keys = algebra.lowering_keys()
    key_roots = [(k, monomial_depth((k,), n)) for k in keys]
    by_depth = defaultdict(list)
    for block in closure:
        by_depth[block[0]].append(block)

    sub = defaultdict(EchelonBasis)
    grades_at = defaultdict(set)
    for depth in sorted(region, key=lambda d: (sum(d), d)):
        for block in by_depth.get(depth, ()):
            for row in closure[block].basis():
                sub[block].add(row)
            grades_at[depth].add(block[1])
        for key, root in key_roots:
            source = tuple(x - y for x, y in zip(depth, root))
            if any(x < 0 for x in source) or source not in region:
                continue
            for grade in sorted(grades_at.get(source, ())):
                target = (depth, grade + key[0])
                # source blocks are complete: their depth is strictly smaller
                for row in list(sub[(source, grade)].rows.values()):
                    image = defaultdict(int)
                    for mono, c in row.items():
                        for m, c2 in straightener.insert(key, mono).items():
                            image[m] += c * c2
                    image = {m: c for m, c in image.items() if c}
                    if image and sub[target].add(image):
                        grades_at[depth].add(target[1])
    return sub


def _construct_once(p: Presentation, truncation: int, bound: int, symmetric: bool) -> GradedModule:
    mu = p.highest_weight
    n = mu.n
    algebra = TruncatedCurrentAlgebra(n, truncation)
    straightener = HighestWeightStraightener(algebra, mu)
    counter = _MonomialCounter(algebra)

    if symmetric:
        targets = [_depth_of(mu, nu) for nu in dominant_weights_below(mu)]
    else:
        box = _depth_of(mu, longest_element(mu))
        targets = [()]
        for top in box:
            targets = [t + (x,) for t in targets for x in range(top + 1)]
    kept = [d for d in targets if sum(d) <= bound]
    dropped = len(kept) < len(targets)

    region = set()
    for top in kept:
        partial = [()]
        for x in top:
            partial = [t + (y,) for t in partial for y in range(x + 1)]
        region.update(partial)

    seeds = [_relation_vector(straightener, rel) for rel in p.relations]
    closure = _raising_closure(straightener, seeds)
    sub = _lowering_closure(straightener, closure, region)

    dims = {}
    boundary_nonzero = False
    for depth in kept:
        weight = _weight_at(mu, depth)
        for grade in range(counter.max_grade(depth) + 1):
            total = counter.count(0, depth, grade)
            if not total:
                continue
            block = sub.get((depth, grade))
            dim = total - (block.rank if block is not None else 0)
            if dim < 0:
                raise ArithmeticError(f"Negative dimension at {weight}, grade {grade}")
            if dim:
                if symmetric:
                    for image in weyl_orbit(weight):
                        dims[(image, grade)] = dim
                else:
                    dims[(weight, grade)] = dim
                if sum(depth) == bound:
                    boundary_nonzero = True
    if dropped and boundary_nonzero:
        raise BoundTooSmallError(f"Weight bound {bound} too small for {p.label or mu}")
    _logger.debug("Constructed %s at N=%d: dim %d (straightening caches %s)",
                  p.label, truncation, sum(dims.values()), straightener.cache_sizes())
    return GradedModule(dims, p, truncation, bound)


def exact_truncation(p: Presentation) -> int | None:
    """Order N with (g (x) t^N C[t]) acting by zero on the module, when the relations show one.

    A relation x^-_{i,j} (x) t^s kills that root vector from grade s on, and the
    bracket of two such root vectors kills their sum from the summed grade on.
    When every positive root is killed from some grade on, the module is a
    quotient of the truncated current algebra at the largest of those grades.
    """
    n = p.n
    reach = {}
    for rel in p.relations:
        if len(rel) == 1 and rel[0].kind == "-" and rel[0].power == 1:
            f = rel[0]
            reach[(f.i, f.j)] = min(f.t, reach.get((f.i, f.j), f.t))
    for height in range(2, n + 1):
        for i in range(1, n - height + 2):
            j = i + height - 1
            splits = [reach[(i, k)] + reach[(k + 1, j)] for k in range(i, j)
                      if (i, k) in reach and (k + 1, j) in reach]
            if splits:
                reach[(i, j)] = min(splits + ([reach[(i, j)]] if (i, j) in reach else []))
    if any((r.i, r.j) not in reach for r in positive_roots(n)):
        return None
    return max(1, max(reach.values()))


def default_truncation(p: Presentation) -> int:
    """Starting order for the truncation search.

    The exact order when the relations give one (kept high enough to see every
    relation), otherwise the largest relation exponent plus the height of the
    highest weight, plus one.
    """
    exact = exact_truncation(p)
    if exact is not None:
        return max(exact, p.max_t_exponent() + 1)
    return p.max_t_exponent() + weight_height(p.highest_weight) + 1


def default_bound(mu: Weight) -> int:
    return sum(_depth_of(mu, longest_element(mu)))


def construct(p: Presentation, N: int | None = None, bound: int | None = None,
              symmetric: bool = True, max_truncation: int = DEFAULT_MAX_TRUNCATION,
              stability_check: bool = True) -> GradedModule:
    """Exact graded dimensions of the module presented by p.

    Args:
        p: the presentation.
        N: truncation order; None starts at default_truncation(p) and grows
           until the result is the same at N and N+1.
        bound: largest height of mu - weight computed; defaults to the height
           of mu - w_0 mu.
        symmetric: compute dominant weight spaces and extend over Weyl orbits;
           False computes every weight of the box.
        max_truncation: cap for the automatic truncation search.
        stability_check: compare against N+1 before returning.

    Raises:
        BoundTooSmallError: the cutoff drops weights and the boundary is nonzero.
        TruncationUnstableError: an explicit N, or the cap, is not stable.
    """
    if bound is None:
        bound = default_bound(p.highest_weight)
    if bound < 0:
        raise PresentationError(f"Weight bound must be nonnegative, got {bound}")
    explicit = N is not None
    N = N if explicit else default_truncation(p)
    if N < p.max_t_exponent() + 1:
        raise PresentationError(f"Truncation {N} does not see relation exponent {p.max_t_exponent()}")

    current = _construct_once(p, N, bound, symmetric)
    if not stability_check:
        return current
    while True:
        following = _construct_once(p, N + 1, bound, symmetric)
        if following.dims == current.dims:
            return current
        if explicit or N + 1 >= max_truncation:
            raise TruncationUnstableError(
                f"Dimensions of {p.label or p.highest_weight} differ between N={N} and N={N + 1}")
        _logger.info("Extending truncation of %s to N=%d", p.label, N + 1)
        N += 1
        current = following


# --- Verifications ---

def verify_presentation_m(nu: Weight, lam: Weight, **kwargs) -> bool:
    """graded ch M(nu, lambda) == graded ch D(2, 2 nu + lambda)."""
    module = construct(present_M(nu, lam), **kwargs)
    return module.character() == demazure_character(2, nu * 2 + lam)


def verify_graded_limit(pi: LoopWeight, **kwargs) -> bool:
    """The presentation attached to pi has the graded character of D(2, wt pi)."""
    module = construct(graded_limit_presentation(pi), **kwargs)
    return module.character() == demazure_character(2, weight_of(pi))


def verify_level_one_surjection(nu: Weight, lam: Weight, **kwargs) -> bool:
    """M(nu, lambda) is a quotient of D(1, 2 nu + lambda): graded dims bounded."""
    module = construct(present_M(nu, lam), **kwargs)
    return graded_leq(module.character(), demazure_character(1, nu * 2 + lam))


def verify_local_weyl(mu: Weight, **kwargs) -> bool:
    """The local Weyl module has the graded character of D(1, mu)."""
    return construct(present_local_weyl(mu), **kwargs).character() == demazure_character(1, mu)


def v_xi_dimension(a: int, b: int, **kwargs) -> int:
    return construct(present_V_xi(a, b), **kwargs).dimension()


def verify_ses_dims(a: int, b: int, **kwargs) -> bool:
    """dim V(2^a 1^b) = dim V(2^a 1^{b-2}) + dim V(2^{a+1} 1^{b-2})."""
    if b < 2:
        raise PresentationError(f"The exact sequence needs b >= 2, got {b}")
    return v_xi_dimension(a, b, **kwargs) == (
        v_xi_dimension(a, b - 2, **kwargs) + v_xi_dimension(a + 1, b - 2, **kwargs))


def verify_refined_redundancy(mu: Weight, level: int = 2, **kwargs) -> bool:
    """Refined and full presentations of D(level, mu) give the same module."""
    full = construct(present_D(level, mu, refined=False), **kwargs)
    refined = construct(present_D(level, mu, refined=True), **kwargs)
    return full.dims == refined.dims
