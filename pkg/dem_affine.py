"""Affine Weights and the Extended Affine Weyl Group

Affine weights Lambda = classical + level * Lambda_0 + degree * delta for
the untwisted affinization of sl_{n+1}, the simple reflections s_0..s_n,
lattice translations t_mu, straightening into the dominant chamber, and the
construction of a single word that makes both nu + lambda^o + Lambda_0 and
nu + lambda^e + Lambda_0 dominant.

Extended Weyl group elements are kept as words (reflections and translations)
and are only ever used through their action on weights.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from dem_cartan import (
    Weight,
    WeightError,
    dominant_conjugate,
    highest_root,
    inner_product,
    is_in_P1,
    odd_even_split,
    precedes,
    simple_root,
)

_logger = logging.getLogger(__name__)


class AffineWeightError(ValueError):
    """Raised for affine weights or words an operation cannot handle."""
    pass  # pylint: disable=unnecessary-pass


@dataclass(frozen=True)
class AffineWeight:
    """classical + level * Lambda_0 + degree * delta."""

    classical: Weight
    level: int
    degree: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        object.__setattr__(self, "level", int(self.level))
        object.__setattr__(self, "degree", Fraction(self.degree))

    @classmethod
    def fundamental(cls, n: int, i: int) -> "AffineWeight":
        """Lambda_i = omega_i + Lambda_0 (Lambda_0 itself for i = 0)."""
        if i == 0:
            return cls(Weight.zero(n), 1)
        return cls(Weight.fundamental(n, i), 1)

    @classmethod
    def delta(cls, n: int) -> "AffineWeight":
        return cls(Weight.zero(n), 0, Fraction(1))

    @classmethod
    def level_one(cls, lam: Weight) -> "AffineWeight":
        """lambda + Lambda_0."""
        return cls(lam, 1)

    @property
    def n(self) -> int:
        return self.classical.n

    def __add__(self, other: "AffineWeight") -> "AffineWeight":
        return AffineWeight(self.classical + other.classical,
                            self.level + other.level,
                            self.degree + other.degree)

    def __sub__(self, other: "AffineWeight") -> "AffineWeight":
        return AffineWeight(self.classical - other.classical,
                            self.level - other.level,
                            self.degree - other.degree)

    def __mul__(self, k: int) -> "AffineWeight":
        return AffineWeight(self.classical * k, self.level * k, self.degree * k)

    __rmul__ = __mul__

    def shifted(self, k) -> "AffineWeight":
        """Add k * delta."""
        return AffineWeight(self.classical, self.level, self.degree + k)

    def __str__(self) -> str:
        return f"{self.classical} + {self.level}L0 + ({self.degree})d"


# --- Coroot values, reflections, translations ---

def eval_affine_coroot(lam: AffineWeight, i: int) -> int:
    """Value of Lambda on h_i; h_0 = c - h_{1,n}."""
    if not 0 <= i <= lam.n:
        raise AffineWeightError(f"Affine node {i} out of range 0..{lam.n}")
    if i == 0:
        return lam.level - lam.classical.level_sum()
    return lam.classical.coroot(i)


def affine_simple_root(n: int, i: int) -> AffineWeight:
    """alpha_i for i >= 1; alpha_0 = delta - theta."""
    if i == 0:
        return AffineWeight(-highest_root(n), 0, Fraction(1))
    if not 1 <= i <= n:
        raise AffineWeightError(f"Affine node {i} out of range 0..{n}")
    return AffineWeight(simple_root(n, i), 0)


def reflect(i: int, lam: AffineWeight) -> AffineWeight:
    """s_i(Lambda) = Lambda - Lambda(h_i) alpha_i."""
    c = eval_affine_coroot(lam, i)
    if c == 0:
        return lam
    return lam - affine_simple_root(lam.n, i) * c


def translate(mu: Weight, lam: AffineWeight) -> AffineWeight:
    """t_mu, extended linearly from its values on Lambda_0 and on classical weights."""
    if mu.n != lam.n:
        raise WeightError(f"Rank mismatch: {mu.n} vs {lam.n}")
    degree = lam.degree - inner_product(lam.classical, mu) - lam.level * inner_product(mu, mu) / 2
    return AffineWeight(lam.classical + mu * lam.level, lam.level, degree)


def is_affine_dominant(lam: AffineWeight) -> bool:
    """Nonnegative on every h_i, 0 <= i <= n."""
    return all(eval_affine_coroot(lam, i) >= 0 for i in range(lam.n + 1))


# --- Words in the extended affine Weyl group ---

@dataclass(frozen=True)
class Translation:
    """Translation letter t_mu."""

    mu: Weight

    def __str__(self) -> str:
        return f"t({','.join(str(c) for c in self.mu.coords)})"


@dataclass(frozen=True)
class AffineWord:
    """Product of reflection and translation letters, applied right-to-left."""

    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for letter in self.letters:
            if not isinstance(letter, (int, Translation)):
                raise AffineWeightError(f"Invalid word letter: {letter!r}")
            if isinstance(letter, int) and letter < 0:
                raise AffineWeightError(f"Invalid reflection index: {letter}")

    def apply(self, lam: AffineWeight) -> AffineWeight:
        for letter in reversed(self.letters):
            if isinstance(letter, Translation):
                lam = translate(letter.mu, lam)
            else:
                lam = reflect(letter, lam)
        return lam

    def compose(self, other: "AffineWord") -> "AffineWord":
        """self o other: other acts first."""
        return AffineWord(self.letters + other.letters)

    def reflections(self) -> list[int]:
        return [letter for letter in self.letters if isinstance(letter, int)]

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "id"
        return " ".join(str(letter) if isinstance(letter, Translation) else f"s{letter}"
                        for letter in self.letters)


def make_dominant(lam: AffineWeight, rule: str = "smallest") -> tuple[AffineWord, AffineWeight]:
    """Straighten a positive-level affine weight into the dominant chamber.

    Repeatedly reflects at a node with negative coroot value (the smallest such
    node by default, the largest with rule="largest").

    Returns:
        (word, dominant) with word.apply(dominant) == lam.
    """
    if lam.level < 1:
        raise AffineWeightError(f"make_dominant needs level >= 1, got {lam.level}")
    if rule not in ("smallest", "largest"):
        raise AffineWeightError(f"Unknown tie-break rule: {rule}")
    recorded = []
    current = lam
    while True:
        negative = [i for i in range(lam.n + 1) if eval_affine_coroot(current, i) < 0]
        if not negative:
            break
        i = negative[0] if rule == "smallest" else negative[-1]
        current = reflect(i, current)
        recorded.append(i)
    return AffineWord(tuple(recorded)), current


# --- Common dominating word for the odd/even pair ---

def _omega_or_zero(n: int, i: int) -> Weight:
    """omega_i, reading the out-of-range omega_0 and omega_{n+1} as 0."""
    if 1 <= i <= n:
        return Weight.fundamental(n, i)
    return Weight.zero(n)


def _reduction_step(n: int, nodes: list[int]) -> tuple[AffineWord, Weight]:
    """Word and smaller weight of one recursion step for k = len(nodes) > 2.

    The word is s_{i_3} s_{i_3+1} ... s_n s_{i_{k-2}-1} ... s_1 s_0.
    """
    k = len(nodes)
    # applied first to last: s_0, s_1 .. s_{i_{k-2}-1}, then s_n down to s_{i_3}
    applied = [0] + list(range(1, nodes[k - 3])) + list(range(n, nodes[2] - 1, -1))
    word = AffineWord(tuple(reversed(applied)))

    if k == 3:
        parts = [nodes[0] - 1, nodes[1], nodes[2] + 1]
    else:
        parts = [nodes[0] - 1, nodes[1] - 1] + nodes[2:k - 2] + [nodes[k - 2] + 1, nodes[k - 1] + 1]
    mu = Weight.zero(n)
    for p in parts:
        mu = mu + _omega_or_zero(n, p)
    return word, mu


def sorting_split_word(lam_odd: Weight, lam_even: Weight) -> AffineWord:
    """Direct word sending lam_odd + Lambda_0 and lam_even + Lambda_0 into P^+.

    A finite Weyl element u sorts lam_odd - lam_even into a fundamental weight
    (or zero), then t_{-u(lam_even)} moves the even image to Lambda_0.
    """
    _, straightening = dominant_conjugate(lam_odd - lam_even)
    u = AffineWord(tuple(reversed(straightening)))
    shift = u.apply(AffineWeight(lam_even, 0)).classical
    return AffineWord((Translation(-shift),)).compose(u)


def _images_match(word: AffineWord, lam: Weight, mu: Weight) -> bool:
    """True iff word carries the odd/even pair of lam onto the odd/even pair of mu."""
    lam_odd, lam_even = odd_even_split(lam)
    mu_odd, mu_even = odd_even_split(mu)
    images = {word.apply(AffineWeight.level_one(lam_odd)).classical,
              word.apply(AffineWeight.level_one(lam_even)).classical}
    return images == {mu_odd, mu_even} and all(
        word.apply(AffineWeight.level_one(x)).level == 1 for x in (lam_odd, lam_even))


def _split_word(lam: Weight) -> AffineWord:
    nodes = lam.support()
    if len(nodes) <= 2:
        return AffineWord()
    word, mu = _reduction_step(lam.n, nodes)
    if mu == lam or not precedes(mu, lam) or not _images_match(word, lam, mu):
        _logger.warning("Recursion step for %s not verified; using the sorting word", lam)
        return sorting_split_word(*odd_even_split(lam))
    _logger.debug("Reduced %s to %s by %s", lam, mu, word)
    return _split_word(mu).compose(word)


def split_dominant(nu: Weight, lam: Weight) -> tuple[AffineWord, AffineWeight, AffineWeight]:
    """Word w with w(nu + lam^o + Lambda_0) and w(nu + lam^e + Lambda_0) both dominant.

    Returns:
        (w, image of the odd weight, image of the even weight)
    """
    if not nu.is_dominant():
        raise WeightError(f"{nu} is not dominant")
    if not is_in_P1(lam):
        raise WeightError(f"{lam} is not in P^+(1)")
    lam_odd, lam_even = odd_even_split(lam)

    word = _split_word(lam)
    # t_{-w nu} cancels the level-zero part nu
    moved = word.apply(AffineWeight(nu, 0)).classical
    word = AffineWord((Translation(-moved),)).compose(word) if moved != Weight.zero(nu.n) else word

    odd_image = word.apply(AffineWeight.level_one(nu + lam_odd))
    even_image = word.apply(AffineWeight.level_one(nu + lam_even))
    if not (is_affine_dominant(odd_image) and is_affine_dominant(even_image)):
        raise AffineWeightError(f"No dominating word found for nu={nu}, lambda={lam}")
    return word, odd_image, even_image
