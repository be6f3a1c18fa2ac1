"""Loop Weights with Spectral Parameters in q^Z

A loop weight is a multiset of factors omega_{i, q^m}, stored as integer
pairs (node, exponent); q itself never appears. This module covers the
chains in P^+_Z(1), their odd/even factorization, the pairwise
nonsingularity criterion behind tensor irreducibility and simple socles,
and the correspondence between height functions on the A_n path and the
prime loop weights they single out.
"""

import logging
from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from dem_cartan import Weight, WeightError

_logger = logging.getLogger(__name__)


class LoopWeightError(ValueError):
    """Raised for malformed loop weights or height functions."""
    pass  # pylint: disable=unnecessary-pass


Factor = tuple[int, int]


@dataclass(frozen=True)
class LoopWeight:
    """Multiset of factors (node, exponent) for sl_{n+1}, kept sorted."""

    n: int
    factors: tuple[Factor, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise LoopWeightError(f"Rank must be positive, got {self.n}")
        factors = tuple(sorted((int(i), int(m)) for i, m in self.factors))
        for i, _ in factors:
            if not 1 <= i <= self.n:
                raise LoopWeightError(f"Node {i} out of range 1..{self.n}")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def of(cls, n: int, *factors: Factor) -> "LoopWeight":
        return cls(n, tuple(factors))

    def __len__(self) -> int:
        return len(self.factors)

    @property
    def nodes(self) -> list[int]:
        return [i for i, _ in self.factors]

    @property
    def exponents(self) -> list[int]:
        return [m for _, m in self.factors]

    def __mul__(self, other: "LoopWeight") -> "LoopWeight":
        if self.n != other.n:
            raise LoopWeightError(f"Rank mismatch: {self.n} vs {other.n}")
        return LoopWeight(self.n, self.factors + other.factors)

    def shifted(self, k: int) -> "LoopWeight":
        """Multiply every spectral parameter by q^k."""
        return LoopWeight(self.n, tuple((i, m + k) for i, m in self.factors))

    def reflected(self) -> "LoopWeight":
        """Invert every spectral parameter (negate the exponents)."""
        return LoopWeight(self.n, tuple((i, -m) for i, m in self.factors))

    def to_list(self) -> list[list[int]]:
        """JSON form: list of [node, exponent] pairs."""
        return [[i, m] for i, m in self.factors]

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "".join(f"w({i},q^{m})" for i, m in self.factors)


@dataclass(frozen=True)
class HeightFunction:
    """kappa: {1..n} -> Z with unit steps between neighbours."""

    kappa: tuple[int, ...]

    def __post_init__(self):
        kappa = tuple(int(k) for k in self.kappa)
        if not kappa:
            raise LoopWeightError("Height function needs at least one node")
        for a, b in zip(kappa, kappa[1:]):
            if abs(b - a) != 1:
                raise LoopWeightError(f"Height function steps must be +-1: {kappa}")
        object.__setattr__(self, "kappa", kappa)

    @property
    def n(self) -> int:
        return len(self.kappa)

    def __call__(self, i: int) -> int:
        return self.kappa[i - 1]


class Quiver:
    """Orientation of the A_n path induced by a height function.

    Edges point from the lower value of kappa to the higher one.
    """

    def __init__(self, kappa: HeightFunction):
        self.kappa = kappa
        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(range(1, kappa.n + 1))
        for i in range(1, kappa.n):
            if kappa(i) < kappa(i + 1):
                self.graph.add_edge(i, i + 1)
            else:
                self.graph.add_edge(i + 1, i)

    def is_forward(self, i: int) -> bool:
        """True iff the edge between i and i+1 is i -> i+1."""
        return self.graph.has_edge(i, i + 1)

    def orientation(self) -> list[bool]:
        return [self.is_forward(i) for i in range(1, self.kappa.n)]

    def local_minima(self, interval: list[int]) -> list[int]:
        """Graph sources of the sub-quiver on interval (J_<).

        Edges run from lower to higher kappa, so a source is a local minimum of
        kappa on the interval; with the edges reversed these are the sinks.
        """
        sub = self.graph.subgraph(interval)
        return sorted(v for v in sub.nodes if sub.in_degree(v) == 0)

    def local_maxima(self, interval: list[int]) -> list[int]:
        """Graph sinks of the sub-quiver on interval (J_>), isolated vertices excluded.

        These are the local maxima of kappa on the interval; an isolated vertex
        counts as a minimum only.
        """
        sub = self.graph.subgraph(interval)
        return sorted(v for v in sub.nodes if sub.out_degree(v) == 0 and sub.in_degree(v) > 0)


# --- Chains in P^+_Z(1) ---

def weight_of(pi: LoopWeight) -> Weight:
    """Coordinate i counts the factors at node i."""
    coords = [0] * pi.n
    for i, _ in pi.factors:
        coords[i - 1] += 1
    return Weight(tuple(coords))


def in_P1(pi: LoopWeight) -> bool:
    """Distinct nodes, exponent gaps +-(i_{j+1} - i_j + 2), signs alternating."""
    nodes = pi.nodes
    if len(set(nodes)) != len(nodes):
        return False
    exps = pi.exponents
    previous = 0
    for j in range(len(nodes) - 1):
        diff = exps[j + 1] - exps[j]
        if abs(diff) != nodes[j + 1] - nodes[j] + 2:
            return False
        sign = 1 if diff > 0 else -1
        if sign == previous:
            return False
        previous = sign
    return True


def orientation(pi: LoopWeight) -> int:
    """+1 when the second exponent exceeds the first, -1 when below, 0 for k <= 1."""
    if len(pi) < 2:
        return 0
    return 1 if pi.exponents[1] > pi.exponents[0] else -1


def normalized(pi: LoopWeight) -> LoopWeight:
    """Shift the first exponent to 0 and reflect into the "+" orientation."""
    if not pi.factors:
        return pi
    out = pi.shifted(-pi.exponents[0])
    if orientation(out) < 0:
        out = out.reflected()
    return out


def _require_P1(pi: LoopWeight) -> None:
    if not in_P1(pi):
        raise LoopWeightError(f"{pi} is not in P^+_Z(1)")


def oe_split(pi: LoopWeight) -> tuple[LoopWeight, LoopWeight]:
    """Odd-placed factors to pi^o, even-placed ones to pi^e."""
    _require_P1(pi)
    odd = tuple(f for place, f in enumerate(pi.factors) if place % 2 == 0)
    even = tuple(f for place, f in enumerate(pi.factors) if place % 2 == 1)
    return LoopWeight(pi.n, odd), LoopWeight(pi.n, even)


# --- Nonsingularity ---

def is_pair_nonsingular(jr: int, br: int, js: int, bs: int, n: int) -> bool:
    """b_r - b_s avoids 2p+2-j_s-j_r for max(j_r, j_s) < p+1 <= min(j_r+j_s, n+1)."""
    low = max(jr, js)
    high = min(jr + js, n + 1)
    for p_plus_one in range(low + 1, high + 1):
        if br - bs == 2 * p_plus_one - js - jr:
            return False
    return True


def tensor_irreducible(factors: list[Factor], n: int) -> bool:
    """Every ordered pair of distinct positions is nonsingular."""
    for r, s in combinations(range(len(factors)), 2):
        (jr, br), (js, bs) = factors[r], factors[s]
        if not (is_pair_nonsingular(jr, br, js, bs, n) and is_pair_nonsingular(js, bs, jr, br, n)):
            return False
    return True


def has_simple_socle(factors: list[Factor], n: int) -> bool:
    """Every pair r < s, taken in the given order, is nonsingular."""
    for r, s in combinations(range(len(factors)), 2):
        (jr, br), (js, bs) = factors[r], factors[s]
        if not is_pair_nonsingular(jr, br, js, bs, n):
            return False
    return True


def check_socle_factorization(pi: LoopWeight) -> bool:
    """pi^o and pi^e irreducible, pi^o followed by pi^e with simple socle.

    Evaluated on the normalized ("+" orientation) representative.
    """
    odd, even = oe_split(normalized(pi))
    return (tensor_irreducible(list(odd.factors), pi.n)
            and tensor_irreducible(list(even.factors), pi.n)
            and has_simple_socle(list(odd.factors) + list(even.factors), pi.n))


# --- Exponent sequences ---

def rj_closed_form(nodes: list[int]) -> list[int]:
    """r_1..r_k from the alternating sums of the nodes."""
    k = len(nodes)
    if k == 0:
        return []
    r = [0]
    for j in range(2, k + 1):
        # alternating sum over i_2 .. i_{j-1}, with (-1)^t
        inner = sum((-1) ** t * nodes[t - 1] for t in range(2, j))
        if j % 2 == 1:
            r.append(-nodes[0] + 2 * inner - nodes[j - 1])
        else:
            r.append(-nodes[0] + 2 * inner + nodes[j - 1] + 2)
    return r


def rj_recursive(nodes: list[int]) -> list[int]:
    """r_{j+1} = r_j + (-1)^{j+1} (i_{j+1} - i_j + 2)."""
    if not nodes:
        return []
    r = [0]
    for j in range(1, len(nodes)):
        gap = nodes[j] - nodes[j - 1] + 2
        r.append(r[-1] + (gap if j % 2 == 1 else -gap))
    return r


def rj_sequence(pi: LoopWeight, m: int | None = None) -> list[int]:
    """r_1..r_k with exponent_j = r_j + m for pi in the "+" orientation.

    m defaults to the first exponent of pi.
    """
    _require_P1(pi)
    if orientation(pi) < 0:
        raise LoopWeightError(f"{pi} is not in the + orientation")
    if not pi.factors:
        return []
    if m is None:
        m = pi.exponents[0]
    r = rj_closed_form(pi.nodes)
    if [x + m for x in r] != pi.exponents:
        raise LoopWeightError(f"Exponents of {pi} are not r_j + {m}")
    return r


def loop_weight_from_nodes(n: int, nodes: list[int], m: int = 0, sign: int = 1) -> LoopWeight:
    """The chain on the given nodes with first exponent m, in orientation sign."""
    nodes = sorted(nodes)
    if len(set(nodes)) != len(nodes):
        raise LoopWeightError(f"Nodes must be distinct: {nodes}")
    if sign not in (1, -1):
        raise LoopWeightError(f"Orientation must be +1 or -1, got {sign}")
    return LoopWeight(n, tuple((i, m + sign * r) for i, r in zip(nodes, rj_closed_form(nodes))))


def loop_weight_of(lam: Weight, m: int = 0) -> LoopWeight:
    """A witness pi in P^+_Z(1) with weight_of(pi) == lam."""
    if any(c not in (0, 1) for c in lam.coords):
        raise WeightError(f"{lam} is not in P^+(1)")
    return loop_weight_from_nodes(lam.n, lam.support(), m)


def enumerate_p1(n: int, shift: int = 0) -> list[LoopWeight]:
    """Every chain in P^+_Z(1) with first exponent pinned to shift, both orientations."""
    out = [LoopWeight(n)]
    for k in range(1, n + 1):
        for nodes in combinations(range(1, n + 1), k):
            out.append(loop_weight_from_nodes(n, list(nodes), shift, 1))
            if k >= 2:
                out.append(loop_weight_from_nodes(n, list(nodes), shift, -1))
    _logger.debug("Enumerated %d chains for n=%d", len(out), n)
    return out


def expected_p1_count(n: int) -> int:
    """1 + n + 2 (2^n - 1 - n)."""
    return 1 + n + 2 * (2 ** n - 1 - n)


# --- Height functions and primes ---

def quiver_of(kappa: HeightFunction) -> Quiver:
    return Quiver(kappa)


def _check_interval(n: int, interval) -> list[int]:
    nodes = sorted(interval)
    if not nodes:
        raise LoopWeightError("Empty node interval")
    if nodes[0] < 1 or nodes[-1] > n:
        raise LoopWeightError(f"Interval {nodes} out of range 1..{n}")
    if nodes != list(range(nodes[0], nodes[-1] + 1)):
        raise LoopWeightError(f"Node set {nodes} is not an interval")
    return nodes


def prime_of_subset(kappa: HeightFunction, interval) -> LoopWeight:
    """Factors (j, kappa(j)) on J_< and (j, kappa(j)+2) on J_>."""
    nodes = _check_interval(kappa.n, interval)
    quiver = quiver_of(kappa)
    factors = [(j, kappa(j)) for j in quiver.local_minima(nodes)]
    factors += [(j, kappa(j) + 2) for j in quiver.local_maxima(nodes)]
    return LoopWeight(kappa.n, tuple(factors))


def height_of_prime(pi: LoopWeight) -> HeightFunction:
    """A height function kappa with prime_of_subset(kappa, [i_1..i_k]) == pi."""
    _require_P1(pi)
    if not pi.factors:
        raise LoopWeightError("The trivial loop weight has no height function")
    nodes, exps = pi.nodes, pi.exponents
    # i_1 is a minimum unless the chain starts downward
    first_is_min = orientation(pi) >= 0
    kappa = {}
    for place, (i, m) in enumerate(zip(nodes, exps)):
        is_min = (place % 2 == 0) == first_is_min
        kappa[i] = m if is_min else m - 2
    for a, b in zip(nodes, nodes[1:]):
        step = 1 if kappa[b] > kappa[a] else -1
        for i in range(a + 1, b):
            kappa[i] = kappa[i - 1] + step
    # extend monotonically away from the chain
    left_step = 1 if first_is_min else -1
    for i in range(nodes[0] - 1, 0, -1):
        kappa[i] = kappa[i + 1] + left_step
    last_is_min = ((len(nodes) - 1) % 2 == 0) == first_is_min
    right_step = 1 if last_is_min else -1
    for i in range(nodes[-1] + 1, pi.n + 1):
        kappa[i] = kappa[i - 1] + right_step
    return HeightFunction(tuple(kappa[i] for i in range(1, pi.n + 1)))


def primes_of_height(kappa: HeightFunction) -> list[LoopWeight]:
    """Candidate primes of C_kappa: one per interval, plus the Kirillov-Reshetikhin pairs."""
    out = []
    for a in range(1, kappa.n + 1):
        for b in range(a, kappa.n + 1):
            out.append(prime_of_subset(kappa, range(a, b + 1)))
    for i in range(1, kappa.n + 1):
        out.append(LoopWeight(kappa.n, ((i, kappa(i)), (i, kappa(i) + 2))))
    return out


# --- Graded limits ---

def _pair_off(exponents: list[int]) -> list[int] | None:
    """Lower exponents a of a split of the list into pairs (a, a+2), or None."""
    remaining = sorted(exponents)
    lows = []
    while remaining:
        a = remaining.pop(0)
        if a + 2 not in remaining:
            return None
        remaining.remove(a + 2)
        lows.append(a)
    return lows


def graded_limit_factors(pi: LoopWeight) -> tuple[LoopWeight, list[Factor]]:
    """Split pi into one chain of P^+_Z(1) times Kirillov-Reshetikhin pairs.

    Returns:
        (chain, pairs) with pi = chain * prod w(i,q^a) w(i,q^{a+2}) over (i, a) in pairs;
        the chain may be trivial.

    Raises:
        LoopWeightError: no such split exists.
    """
    by_node = {}
    for i, m in pi.factors:
        by_node.setdefault(i, []).append(m)
    # each node gives at most one factor to the chain, the rest must pair off
    options = []
    for i, exps in sorted(by_node.items()):
        choices = []
        for pick in [None] + sorted(set(exps)):
            rest = list(exps)
            if pick is not None:
                rest.remove(pick)
            lows = _pair_off(rest)
            if lows is not None:
                choices.append((pick, [(i, a) for a in lows]))
        if not choices:
            raise LoopWeightError(f"{pi} has unpaired factors at node {i}")
        options.append((i, choices))

    def search(index: int, chain: list[Factor], pairs: list[Factor]):
        if index == len(options):
            candidate = LoopWeight(pi.n, tuple(chain))
            return (candidate, pairs) if in_P1(candidate) else None
        i, choices = options[index]
        for pick, node_pairs in choices:
            found = search(index + 1, chain + ([(i, pick)] if pick is not None else []), pairs + node_pairs)
            if found is not None:
                return found
        return None

    found = search(0, [], [])
    if found is None:
        raise LoopWeightError(f"{pi} is not a chain of P^+_Z(1) times Kirillov-Reshetikhin pairs")
    _logger.debug("Split %s into chain %s and %d pair(s)", pi, found[0], len(found[1]))
    return found
