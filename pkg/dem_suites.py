"""Verification Suites

Named sweeps over the library: each suite expands into instances, an instance
is a module-level check function plus its arguments, and the runner executes
instances (optionally in worker processes) and collects timed outcomes.
"""

import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product
from typing import Callable

from dem_affine import AffineWeight, is_affine_dominant, split_dominant
from dem_cartan import Weight
from dem_characters import (
    AffineCharacterWorkspace,
    check_embedding_bound,
    check_fusion,
    check_level_monotone,
    classicalize,
    demazure_character,
    demazure_op,
    evaluation_character,
    is_weyl_invariant,
)
from dem_engine import (
    construct,
    present_M,
    present_V_xi,
    verify_graded_limit,
    verify_level_one_surjection,
    verify_local_weyl,
    verify_presentation_m,
    verify_refined_redundancy,
    verify_ses_dims,
)
from dem_loopweights import (
    LoopWeight,
    check_socle_factorization,
    enumerate_p1,
    height_of_prime,
    in_P1,
    prime_of_subset,
    primes_of_height,
    weight_of,
)

_logger = logging.getLogger(__name__)


class UnknownSuiteError(KeyError):
    """Raised for a verification identifier that names no suite."""
    pass  # pylint: disable=unnecessary-pass


@dataclass
class SuiteParams:
    """Range overrides and engine options shared by every suite."""

    max_rank: int | None = None
    max_sum: int | None = None
    seed: int = 0
    engine: dict = field(default_factory=dict)

    def rank(self, default: int) -> int:
        return default if self.max_rank is None else min(default, self.max_rank)

    def coordinate_sum(self, default: int) -> int:
        return default if self.max_sum is None else min(default, self.max_sum)


@dataclass(frozen=True)
class Instance:
    key: str
    check: Callable
    args: tuple = ()
    kwargs: tuple = ()


@dataclass
class InstanceResult:
    suite: str
    key: str
    passed: bool
    seconds: float
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "instance": self.key,
            "passed": self.passed,
            "seconds": round(self.seconds, 4),
            "detail": self.detail,
        }


# --- Weight ranges ---

def p1_weights(n: int) -> list[Weight]:
    """All of P^+(1) for rank n."""
    return [Weight(c) for c in product((0, 1), repeat=n)]


def dominant_with_sum(n: int, max_sum: int) -> list[Weight]:
    """Dominant weights with coordinate sum at most max_sum."""
    out = []
    for coords in product(range(max_sum + 1), repeat=n):
        if sum(coords) <= max_sum:
            out.append(Weight(coords))
    return out


def graded_limit_weights(n: int, max_sum: int) -> list[LoopWeight]:
    """Chains of P^+_Z(1) times up to two Kirillov-Reshetikhin pairs, coordinate sum at most max_sum."""
    nodes = range(1, n + 1)
    pair_nodes = [()] + [(i,) for i in nodes] + list(combinations_with_replacement(nodes, 2))
    out = []
    for chain in enumerate_p1(n):
        for chosen in pair_nodes:
            # spectral parameters of the pairs sit away from the chain
            pairs = tuple(f for place, i in enumerate(chosen)
                          for f in ((i, 20 + 4 * place), (i, 22 + 4 * place)))
            pi = chain * LoopWeight(n, pairs)
            if weight_of(pi).level_sum() <= max_sum:
                out.append(pi)
    return out


def _key(*parts) -> str:
    return " ".join(str(p) for p in parts)


def _level_two_pairs(params: SuiteParams) -> list[tuple[Weight, Weight]]:
    """(nu, lambda) with 2 nu + lambda in the level-two comparison ranges."""
    pairs = []
    if params.rank(1) >= 1:
        top = params.coordinate_sum(5)
        for c in range(top + 1):
            pairs.append((Weight.of(c // 2), Weight.of(c % 2)))
    if params.rank(2) >= 2:
        for mu in dominant_with_sum(2, params.coordinate_sum(4)):
            nu = Weight(tuple(c // 2 for c in mu.coords))
            pairs.append((nu, mu - nu * 2))
    if params.rank(3) >= 3:
        zero = Weight.zero(3)
        pairs.append((zero, Weight.of(1, 0, 1)))
        pairs.append((zero, Weight.of(1, 1, 1)))
    return pairs


# --- Check functions (module level so worker processes can run them) ---

def check_split_dominance(n: int, lam: Weight, max_sum: int) -> bool:
    for nu in dominant_with_sum(n, max_sum):
        _, odd_image, even_image = split_dominant(nu, lam)
        if not (is_affine_dominant(odd_image) and is_affine_dominant(even_image)):
            return False
    return True


def check_sl2_dimension(a: int, b: int, engine: dict) -> bool:
    module = construct(present_M(Weight.of(a), Weight.of(b)), **engine)
    return module.dimension() == 3 ** a * 2 ** b


def check_vxi_level_one(b: int, engine: dict) -> bool:
    return construct(present_V_xi(0, b), **engine).character() == demazure_character(1, Weight.of(b))


def check_vxi_level_two(a: int, b: int, engine: dict) -> bool:
    return construct(present_V_xi(a, b), **engine).character() == demazure_character(2, Weight.of(2 * a + b))


def check_vxi_alternative(a: int, b: int, engine: dict) -> bool:
    first = construct(present_V_xi(a, b), **engine)
    second = construct(present_V_xi(a, b, alternative=True), **engine)
    return first.dims == second.dims


def check_evaluation(level: int, lam: Weight) -> bool:
    return demazure_character(level, lam) == evaluation_character(lam)


def random_workspace(rng: random.Random, n: int, level: int, size: int = 4) -> AffineCharacterWorkspace:
    terms = {}
    for _ in range(size):
        classical = Weight(tuple(rng.randint(-3, 3) for _ in range(n)))
        terms[AffineWeight(classical, level, rng.randint(-2, 2))] = rng.randint(-3, 3) or 1
    return AffineCharacterWorkspace(terms)


def _adjacent(i: int, j: int, n: int) -> bool:
    """Adjacency on the affine diagram of type A_n^(1), n >= 2 (a cycle on 0..n)."""
    return (i - j) % (n + 1) in (1, n)


def check_demazure_algebra(n: int, seed: int, samples: int = 100) -> bool:
    rng = random.Random(seed * 1009 + n)
    nodes = range(n + 1)
    for _ in range(samples):
        ws = random_workspace(rng, n, rng.randint(1, 3))
        for i in nodes:
            once = demazure_op(i, ws)
            if demazure_op(i, once) != once:
                return False
        if n == 1:
            continue
        for i, j in combinations(nodes, 2):
            if _adjacent(i, j, n):
                left = demazure_op(i, demazure_op(j, demazure_op(i, ws)))
                right = demazure_op(j, demazure_op(i, demazure_op(j, ws)))
            else:
                left = demazure_op(i, demazure_op(j, ws))
                right = demazure_op(j, demazure_op(i, ws))
            if left != right:
                return False
    return True


def check_tie_break(seed: int, samples: int = 50) -> bool:
    rng = random.Random(seed)
    for _ in range(samples):
        n = rng.randint(1, 3)
        lam = Weight(tuple(rng.randint(0, 2) for _ in range(n)))
        level = rng.randint(1, 2)
        first = demazure_character(level, lam, "smallest")
        if first != demazure_character(level, lam, "largest"):
            return False
        if not is_weyl_invariant(classicalize(first)):
            return False
    return True


def check_socle(n: int) -> bool:
    return all(check_socle_factorization(pi) for pi in enumerate_p1(n))


def check_quiver_roundtrip(n: int) -> bool:
    for pi in enumerate_p1(n):
        if not pi.factors:
            continue
        kappa = height_of_prime(pi)
        nodes = pi.nodes
        if prime_of_subset(kappa, range(nodes[0], nodes[-1] + 1)) != pi:
            return False
        for prime in primes_of_height(kappa):
            if len(set(prime.nodes)) == len(prime.nodes) and not in_P1(prime):
                return False
    return True


# --- Suite definitions ---

def _split_dominance(params: SuiteParams) -> list[Instance]:
    max_sum = params.coordinate_sum(3)
    return [Instance(_key(f"n={n}", lam), check_split_dominance, (n, lam, max_sum))
            for n in range(1, params.rank(6) + 1) for lam in p1_weights(n)]


def _presentation_m(params: SuiteParams) -> list[Instance]:
    return [Instance(_key(nu, lam, f"n={nu.n}"), verify_presentation_m, (nu, lam),
                     tuple(params.engine.items()))
            for nu, lam in _level_two_pairs(params)]


def _graded_limit(params: SuiteParams) -> list[Instance]:
    max_sum = params.coordinate_sum(4)
    return [Instance(_key(f"n={n}", pi), verify_graded_limit, (pi,), tuple(params.engine.items()))
            for n in range(1, params.rank(2) + 1) for pi in graded_limit_weights(n, max_sum)]


def _sl2_dimension_law(params: SuiteParams) -> list[Instance]:
    return [Instance(_key(f"a={a}", f"b={b}"), check_sl2_dimension, (a, b, params.engine))
            for a in range(4) for b in range(2) if a + b <= 3]


def _fusion(params: SuiteParams) -> list[Instance]:
    return [Instance(_key(nu, lam, f"n={nu.n}"), check_fusion, (nu, lam))
            for nu, lam in _level_two_pairs(params)]


def _embedding_bound(params: SuiteParams) -> list[Instance]:
    max_sum = params.coordinate_sum(4)
    return [Instance(_key(mu, f"n={n}"), check_embedding_bound, (mu,))
            for n in range(1, params.rank(3) + 1) for mu in dominant_with_sum(n, max_sum)]


def _level_monotone(params: SuiteParams) -> list[Instance]:
    max_sum = params.coordinate_sum(4)
    return [Instance(_key(f"l={level}", mu, f"n={n}"), check_level_monotone, (level, mu))
            for level in (1, 2) for n in range(1, params.rank(2) + 1)
            for mu in dominant_with_sum(n, max_sum)]


def _refined_redundancy(params: SuiteParams) -> list[Instance]:
    max_sum = params.coordinate_sum(4)
    return [Instance(_key(mu, f"n={n}"), verify_refined_redundancy, (mu, 2),
                     tuple(params.engine.items()))
            for n in range(1, params.rank(2) + 1) for mu in dominant_with_sum(n, max_sum)]


def _level_one(params: SuiteParams) -> list[Instance]:
    engine = tuple(params.engine.items())
    max_sum = params.coordinate_sum(3)
    out = [Instance(_key("local-weyl", mu, f"n={n}"), verify_local_weyl, (mu,), engine)
           for n in range(1, params.rank(2) + 1) for mu in dominant_with_sum(n, max_sum)]
    out += [Instance(_key("surjection", nu, lam, f"n={nu.n}"), verify_level_one_surjection, (nu, lam), engine)
            for nu, lam in _level_two_pairs(params)]
    return out


def _sl2_vxi(params: SuiteParams) -> list[Instance]:
    engine = params.engine
    out = [Instance(_key("level-one", f"b={b}"), check_vxi_level_one, (b, engine)) for b in range(6)]
    out += [Instance(_key("level-two", f"a={a}", f"b={b}"), check_vxi_level_two, (a, b, engine))
            for a in range(3) for b in (0, 1)]
    out += [Instance(_key("exact-sequence", f"a={a}", f"b={b}"), verify_ses_dims, (a, b),
                     tuple(engine.items()))
            for a in range(2) for b in (2, 3)]
    out += [Instance(_key("alternative", f"a={a}", f"b={b}"), check_vxi_alternative, (a, b, engine))
            for a in range(3) for b in range(3)]
    return out


def _evaluation(params: SuiteParams) -> list[Instance]:
    out = []
    for n in range(1, params.rank(4) + 1):
        for level in range(1, 4):
            for lam in dominant_with_sum(n, params.coordinate_sum(level)):
                out.append(Instance(_key(f"l={level}", lam, f"n={n}"), check_evaluation, (level, lam)))
    return out


def _demazure_operators(params: SuiteParams) -> list[Instance]:
    out = [Instance(_key("operators", f"n={n}"), check_demazure_algebra, (n, params.seed))
           for n in range(1, params.rank(3) + 1)]
    out.append(Instance("tie-break", check_tie_break, (params.seed,)))
    return out


def _socle(params: SuiteParams) -> list[Instance]:
    return [Instance(f"n={n}", check_socle, (n,)) for n in range(1, params.rank(6) + 1)]


def _quiver_roundtrip(params: SuiteParams) -> list[Instance]:
    return [Instance(f"n={n}", check_quiver_roundtrip, (n,)) for n in range(1, params.rank(6) + 1)]


SUITES = {
    "split-dominance": _split_dominance,
    "presentation-m": _presentation_m,
    "graded-limit": _graded_limit,
    "sl2-dimension-law": _sl2_dimension_law,
    "fusion": _fusion,
    "embedding-bound": _embedding_bound,
    "level-monotone": _level_monotone,
    "refined-redundancy": _refined_redundancy,
    "level-one": _level_one,
    "sl2-vxi": _sl2_vxi,
    "evaluation": _evaluation,
    "demazure-operators": _demazure_operators,
    "socle": _socle,
    "quiver-roundtrip": _quiver_roundtrip,
}


# numbered result identifiers accepted in place of the descriptive names
SUITE_ALIASES = {
    "prop-3.6": "split-dominance",
    "prop-1.10": "presentation-m",
    "theorem-1.8": "graded-limit",
    "prop-1.9": "fusion",
    "theorem-3.5": "embedding-bound",
    "cor-4.2": "level-monotone",
    "prop-4.1": "refined-redundancy",
    "prop-4.6": "refined-redundancy",
    "prop-4.4": "sl2-vxi",
    "cor-4.5": "sl2-vxi",
    "lemma-4.3": "evaluation",
    "prop-2.7": "socle",
    "prop-2.8": "socle",
    "theorem-1.11": "quiver-roundtrip",
}


def resolve_suite(name: str) -> str:
    """Descriptive suite name for a name or numbered alias."""
    name = SUITE_ALIASES.get(name, name)
    if name not in SUITES:
        raise UnknownSuiteError(name)
    return name


def aliases_of(name: str) -> list[str]:
    return [alias for alias, target in SUITE_ALIASES.items() if target == name]


def suite_instances(name: str, params: SuiteParams) -> list[Instance]:
    return SUITES[resolve_suite(name)](params)


def run_instance(suite: str, instance: Instance) -> InstanceResult:
    """Run one check; exceptions become failed results with the message as detail."""
    start = time.perf_counter()
    try:
        passed = bool(instance.check(*instance.args, **dict(instance.kwargs)))
        detail = ""
    except (ArithmeticError, ValueError, RuntimeError) as exc:
        passed = False
        detail = f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    _logger.debug("%s [%s]: %s in %.3fs", suite, instance.key, "pass" if passed else "FAIL", elapsed)
    return InstanceResult(suite, instance.key, passed, elapsed, detail)


def run_suite(name: str, params: SuiteParams, jobs: int = 1) -> list[InstanceResult]:
    """Run every instance of a suite; results sorted by instance key."""
    name = resolve_suite(name)
    instances = suite_instances(name, params)
    _logger.info("Suite %s: %d instances, %d job(s)", name, len(instances), jobs)
    if jobs <= 1 or len(instances) <= 1:
        results = [run_instance(name, inst) for inst in instances]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(run_instance, name, inst) for inst in instances]
            results = [f.result() for f in futures]
    return sorted(results, key=lambda r: r.key)
