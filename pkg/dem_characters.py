"""Characters

Classical characters of sl_{n+1} (Freudenthal), graded Demazure characters
ch D(l, lambda) obtained by Demazure operators along a straightening word,
character products, and the character-level comparisons built on them
(fusion factorization, the level-one embedding bound, level monotonicity).
"""

import logging
from collections import defaultdict
from functools import lru_cache

from dem_affine import (
    AffineWeight,
    affine_simple_root,
    eval_affine_coroot,
    make_dominant,
)
from dem_cartan import (
    Weight,
    WeightError,
    dominant_conjugate,
    dominant_weights_below,
    inner_product,
    longest_element,
    odd_even_split,
    parity_decompose,
    positive_root,
    positive_roots,
    weyl_dimension,
    weyl_orbit,
    weyl_reflect,
)

_logger = logging.getLogger(__name__)


class CharacterError(ValueError):
    """Raised when a character computation produces an impossible result."""
    pass  # pylint: disable=unnecessary-pass


class ClassicalCharacter:
    """Sparse map Weight -> positive multiplicity."""

    def __init__(self, terms: dict[Weight, int] | None = None):
        self._terms = {w: m for w, m in (terms or {}).items() if m != 0}
        ranks = {w.n for w in self._terms}
        if len(ranks) > 1:
            raise WeightError(f"Mixed ranks in character: {sorted(ranks)}")

    @classmethod
    def trivial(cls, n: int) -> "ClassicalCharacter":
        return cls({Weight.zero(n): 1})

    def __getitem__(self, weight: Weight) -> int:
        return self._terms.get(weight, 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, ClassicalCharacter) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def items(self):
        return self._terms.items()

    def weights(self) -> list[Weight]:
        return sorted(self._terms, key=lambda w: w.coords, reverse=True)

    def dimension(self) -> int:
        return sum(self._terms.values())

    def records(self) -> list[dict]:
        return [{"weight": w.to_list(), "grade": 0, "mult": self._terms[w]} for w in self.weights()]

    def __repr__(self) -> str:
        return f"ClassicalCharacter(dim={self.dimension()}, terms={len(self._terms)})"


class GradedCharacter:
    """Sparse map (Weight, grade) -> positive multiplicity."""

    def __init__(self, terms: dict[tuple[Weight, int], int] | None = None):
        self._terms = {k: m for k, m in (terms or {}).items() if m != 0}

    def __getitem__(self, key: tuple[Weight, int]) -> int:
        return self._terms.get(key, 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedCharacter) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def dimension(self) -> int:
        return sum(self._terms.values())

    def grades(self) -> list[int]:
        return sorted({g for _, g in self._terms})

    def at_grade(self, grade: int) -> ClassicalCharacter:
        return ClassicalCharacter({w: m for (w, g), m in self._terms.items() if g == grade})

    def shifted(self, r: int) -> "GradedCharacter":
        """tau_r^*: every grade moves up by r."""
        return GradedCharacter({(w, g + r): m for (w, g), m in self._terms.items()})

    def records(self) -> list[dict]:
        keys = sorted(self._terms, key=lambda k: (k[1], tuple(-c for c in k[0].coords)))
        return [{"weight": w.to_list(), "grade": g, "mult": self._terms[(w, g)]} for w, g in keys]

    def __repr__(self) -> str:
        return f"GradedCharacter(dim={self.dimension()}, grades={self.grades()})"


# --- Classical characters ---

@lru_cache(maxsize=None)
def weyl_character(lam: Weight) -> ClassicalCharacter:
    """ch V(lambda) by Freudenthal's recursion over the dominant weights below lambda."""
    if not lam.is_dominant():
        raise WeightError(f"{lam} is not dominant")
    n = lam.n
    roots = [positive_root(n, r) for r in positive_roots(n)]
    rho = Weight((1,) * n)
    top = inner_product(lam + rho, lam + rho)

    mult = {lam: 1}
    for mu in dominant_weights_below(lam)[1:]:
        total = 0
        for alpha in roots:
            k = 1
            while True:
                higher = mu + alpha * k
                m = mult.get(dominant_conjugate(higher)[0], 0)
                if m == 0:
                    break
                total += m * inner_product(higher, alpha)
                k += 1
        denom = top - inner_product(mu + rho, mu + rho)
        value = 2 * total / denom
        if value.denominator != 1:
            raise CharacterError(f"Non-integral multiplicity {value} at {mu} in V({lam})")
        if value:
            mult[mu] = int(value)

    terms = {}
    for mu, m in mult.items():
        for nu in weyl_orbit(mu):
            terms[nu] = m
    ch = ClassicalCharacter(terms)
    if ch.dimension() != weyl_dimension(lam):
        raise CharacterError(f"Freudenthal dimension {ch.dimension()} disagrees with Weyl for {lam}")
    return ch


def evaluation_character(lam: Weight) -> GradedCharacter:
    """ch ev_0^* V(lambda): V(lambda) placed at grade 0."""
    return GradedCharacter({(w, 0): m for w, m in weyl_character(lam).items()})


def multiply(a: ClassicalCharacter, b: ClassicalCharacter) -> ClassicalCharacter:
    """Character of the tensor product."""
    terms = defaultdict(int)
    for wa, ma in a.items():
        for wb, mb in b.items():
            terms[wa + wb] += ma * mb
    return ClassicalCharacter(terms)


def power(a: ClassicalCharacter, k: int, n: int) -> ClassicalCharacter:
    out = ClassicalCharacter.trivial(n)
    for _ in range(k):
        out = multiply(out, a)
    return out


def graded_product(a: GradedCharacter, b: GradedCharacter) -> GradedCharacter:
    """Tensor product; grades add."""
    terms = defaultdict(int)
    for (wa, ga), ma in a.items():
        for (wb, gb), mb in b.items():
            terms[(wa + wb, ga + gb)] += ma * mb
    return GradedCharacter(terms)


def classicalize(ch: GradedCharacter) -> ClassicalCharacter:
    """Forget the grading."""
    terms = defaultdict(int)
    for (w, _), m in ch.items():
        terms[w] += m
    return ClassicalCharacter(terms)


def graded_leq(a: GradedCharacter, b: GradedCharacter) -> bool:
    """Coefficientwise a <= b."""
    return all(m <= b[key] for key, m in a.items())


def is_weyl_invariant(ch: ClassicalCharacter) -> bool:
    for w, m in ch.items():
        for i in range(1, w.n + 1):
            if ch[weyl_reflect(w, i)] != m:
                return False
    return True


# --- Demazure operators ---

class AffineCharacterWorkspace:
    """Integer combination of e^Lambda for affine weights of one level."""

    def __init__(self, terms: dict[AffineWeight, int] | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c != 0}
        levels = {w.level for w in self.terms}
        if len(levels) > 1:
            raise CharacterError(f"Workspace mixes levels {sorted(levels)}")

    @classmethod
    def single(cls, lam: AffineWeight) -> "AffineCharacterWorkspace":
        return cls({lam: 1})

    def __eq__(self, other) -> bool:
        return isinstance(other, AffineCharacterWorkspace) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)


def demazure_op(i: int, ws: AffineCharacterWorkspace) -> AffineCharacterWorkspace:
    """D_i e^mu, with m = mu(h_i).

    m >= 0:  e^mu + e^{mu - alpha_i} + ... + e^{mu - m alpha_i}
    m = -1:  0
    m <= -2: -(e^{mu + alpha_i} + ... + e^{mu + (-m-1) alpha_i})
    """
    out = defaultdict(int)
    alpha = None
    for mu, c in ws.terms.items():
        if alpha is None:
            alpha = affine_simple_root(mu.n, i)
        m = eval_affine_coroot(mu, i)
        if m >= 0:
            for k in range(m + 1):
                out[mu - alpha * k] += c
        elif m <= -2:
            for k in range(1, -m):
                out[mu + alpha * k] -= c
    return AffineCharacterWorkspace(out)


@lru_cache(maxsize=None)
def demazure_character(level: int, lam: Weight, rule: str = "smallest") -> GradedCharacter:
    """Graded character of D(level, lambda), generator at grade 0.

    xi = w_0 lambda + level * Lambda_0 is straightened to a dominant Lambda,
    the Demazure operators of the straightening word are applied to e^Lambda,
    and the delta-degree becomes the grade relative to the lambda-weight term.
    """
    if level < 1:
        raise CharacterError(f"Level must be positive, got {level}")
    if not lam.is_dominant():
        raise WeightError(f"{lam} is not dominant")

    xi = AffineWeight(longest_element(lam), level)
    word, dominant = make_dominant(xi, rule)
    ws = AffineCharacterWorkspace.single(dominant)
    for i in reversed(word.letters):
        ws = demazure_op(i, ws)
    _logger.debug("D(%d, %s): word length %d, %d affine terms", level, lam, len(word), len(ws))

    top = [w for w in ws.terms if w.classical == lam]
    if len(top) != 1 or ws.terms[top[0]] != 1:
        raise CharacterError(f"Generator weight of D({level}, {lam}) is not simple")
    base = top[0].degree

    terms = {}
    for w, c in ws.terms.items():
        if c < 0:
            raise CharacterError(f"Negative multiplicity {c} in D({level}, {lam})")
        grade = w.degree - base
        if grade.denominator != 1 or grade < 0:
            raise CharacterError(f"Invalid grade {grade} in D({level}, {lam})")
        terms[(w.classical, int(grade))] = c
    return GradedCharacter(terms)


# --- Character-level comparisons ---

def check_fusion(nu: Weight, lam: Weight) -> bool:
    """ch D(2, 2nu+lambda) == prod_i ch V(2 omega_i)^{nu_i} * ch D(2, lambda) as g-characters."""
    if not nu.is_dominant():
        raise WeightError(f"{nu} is not dominant")
    odd_even_split(lam)
    n = nu.n
    lhs = classicalize(demazure_character(2, nu * 2 + lam))
    rhs = classicalize(demazure_character(2, lam))
    for i, r in enumerate(nu.coords, start=1):
        if r:
            rhs = multiply(rhs, power(weyl_character(Weight.fundamental(n, i) * 2), r, n))
    return lhs == rhs


def level_one_factors(mu: Weight) -> tuple[Weight, Weight]:
    """(mu^o, mu^e) = (nu + lambda^o, nu + lambda^e) for mu = 2 nu + lambda."""
    nu, lam = parity_decompose(mu)
    lam_odd, lam_even = odd_even_split(lam)
    return nu + lam_odd, nu + lam_even


def check_embedding_bound(mu: Weight) -> bool:
    """ch D(2, mu) <= ch D(1, mu^o) (x) ch D(1, mu^e), coefficientwise in each grade."""
    mu_odd, mu_even = level_one_factors(mu)
    bound = graded_product(demazure_character(1, mu_odd), demazure_character(1, mu_even))
    return graded_leq(demazure_character(2, mu), bound)


def check_level_monotone(level: int, mu: Weight) -> bool:
    """ch D(level+1, mu) <= ch D(level, mu) coefficientwise."""
    return graded_leq(demazure_character(level + 1, mu), demazure_character(level, mu))
