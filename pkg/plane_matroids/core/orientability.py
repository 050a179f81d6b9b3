import logging
import time
from dataclasses import dataclass, field
from itertools import combinations, product
from multiprocessing import Pool
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple
import pandas as pd
from plane_matroids.core.defaults import (
    DEFAULT_BUDGET,
    DEFAULT_WORKERS,
    MAX_SEARCH_ELEMENTS,
    PROGRESS_INTERVAL,
)
from plane_matroids.core.families import (
    Arrangement,
    GroupElement,
    GroupSpec,
    Permutation,
    abelian_groups,
    build_m_sigma,
    derangements,
    group_to_sigma,
    require_distinct_pair,
    sigma_graph,
)
from plane_matroids.core.matroid import (
    LineMatroid,
    delete_element,
    from_dependent_triples,
    require_valid,
)
from plane_matroids.core.types import PASSED, Diagnosis, MinimalityVerdict, SearchOutcome

logger = logging.getLogger(__name__)

IndexTriple = Tuple[int, int, int]

def _permutation_sign(x:int, y:int, z:int) -> int:
    inversions = (x > y) + (x > z) + (y > z)
    return -1 if inversions % 2 else 1

def _sorted_triple(x:int, y:int, z:int) -> IndexTriple:
    return tuple(sorted((x, y, z)))

#===============================================#
#------------------ Chirotope ------------------#
#===============================================#

@dataclass(frozen=True, eq=False)
class Chirotope:
    """
    A rank-3 chirotope on named elements.

    Signs are stored on sorted index triples (positions in elements); the value
    on an ordered triple is the stored sign times the sign of the sorting
    permutation, so the map is alternating by construction.
    """
    elements: Tuple[str, ...]
    signs: Mapping[IndexTriple, int]

    def __post_init__(self):
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        signs = {tuple(key): value for key, value in dict(self.signs).items()}
        if set(signs) != set(combinations(range(len(elements)), 3)):
            raise ValueError("chirotope needs a sign for every sorted index triple")
        if any(value not in (-1, 0, 1) for value in signs.values()):
            raise ValueError("chirotope signs must be -1, 0 or 1")
        if not any(signs.values()):
            raise ValueError("chirotope has no nonzero sign")
        object.__setattr__(self, "signs", signs)

    def __len__(self) -> int:
        return len(self.elements)

    def __call__(self, x:int, y:int, z:int) -> int:
        if x == y or x == z or y == z:
            return 0
        return _permutation_sign(x, y, z) * self.signs[_sorted_triple(x, y, z)]

    def sign_of(self, x:str, y:str, z:str) -> int:
        position = {e: k for k, e in enumerate(self.elements)}
        return self(position[x], position[y], position[z])

    def __eq__(self, other):
        if not isinstance(other, Chirotope):
            return NotImplemented
        return self.elements == other.elements and self.signs == other.signs

    def __hash__(self):
        return hash((self.elements, tuple(sorted(self.signs.items()))))

    def negate(self) -> "Chirotope":
        return Chirotope(self.elements, {key: -value for key, value in self.signs.items()})

    def reorient(self, e:str) -> "Chirotope":
        """Negate every sign on a triple containing e."""
        if e not in self.elements:
            raise ValueError(f"no such element: {e}")
        k = self.elements.index(e)
        return Chirotope(
            self.elements,
            {key: (-value if k in key else value) for key, value in self.signs.items()},
        )

    def restrict(self, names:Iterable[str]) -> "Chirotope":
        """The chirotope of the restriction to names, keeping the element order."""
        names = set(names)
        unknown = names - set(self.elements)
        if unknown:
            raise ValueError("no such element: " + ",".join(sorted(unknown)))
        keep = [k for k, e in enumerate(self.elements) if e in names]
        signs = {
            (x, y, z): self.signs[(keep[x], keep[y], keep[z])]
            for x, y, z in combinations(range(len(keep)), 3)
        }
        if not any(signs.values()):
            raise ValueError("restriction below rank 3")
        return Chirotope(tuple(self.elements[k] for k in keep), signs)

    def zero_triples(self) -> List[Tuple[str, str, str]]:
        return [
            tuple(self.elements[k] for k in key)
            for key in combinations(range(len(self.elements)), 3)
            if self.signs[key] == 0
        ]

    def underlying_matroid(self) -> LineMatroid:
        return require_valid(from_dependent_triples(self.elements, self.zero_triples()))

#===============================================#
#------------- Grassmann-Plücker ---------------#
#===============================================#

def _gp_terms(a:int, b:int, c:int, d:int, e:int) -> Tuple[Tuple[int, IndexTriple, IndexTriple], ...]:
    """The three products [abc][ade], -[abd][ace], [abe][acd] as (coefficient, triple, triple)."""
    return ((1, (a, b, c), (a, d, e)), (-1, (a, b, d), (a, c, e)), (1, (a, b, e), (a, c, d)))

def gp_check(chi:Chirotope) -> Diagnosis:
    """
    Check the 3-term Grassmann-Plücker sign condition.

    For every element a and every 4-subset b < c < d < e of the others, the
    nonzero values among chi(abc)chi(ade), -chi(abd)chi(ace), chi(abe)chi(acd)
    must be absent or include both signs.

    Parameters
    ----------
    chi : Chirotope
        A structurally valid chirotope.

    Returns
    -------
    Diagnosis
        Truthy iff every condition holds; otherwise the witness is the first
        violating (a, b, c, d, e) by element name.
    """
    n = len(chi)
    for a in range(n):
        others = [x for x in range(n) if x != a]
        for b, c, d, e in combinations(others, 4):
            values = {
                coef * chi(*first) * chi(*second)
                for coef, first, second in _gp_terms(a, b, c, d, e)
            }
            values.discard(0)
            if len(values) == 1:
                witness = tuple(chi.elements[x] for x in (a, b, c, d, e))
                return Diagnosis(False, f"Grassmann-Plücker violation at {witness[0]}; " + ",".join(witness[1:]), witness)
    return PASSED

def check_certificate(M:LineMatroid, chi:Chirotope) -> Diagnosis:
    """A certificate for M: same ground set, zero set equal to the dependent triples, GP-valid."""
    if set(chi.elements) != set(M.elements):
        return Diagnosis(False, "ground sets differ")
    for triple in combinations(chi.elements, 3):
        is_zero = chi.sign_of(*triple) == 0
        if is_zero != (frozenset(triple) in M.dependent_set):
            reason = "zero on an independent triple" if is_zero else "nonzero on a dependent triple"
            return Diagnosis(False, reason, triple)
    return gp_check(chi)

def _det3(rows:Sequence[Sequence[int]]) -> int:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

def chirotope_of_arrangement(arr:Arrangement) -> Chirotope:
    """
    Signs of the exact integer determinants of the line coefficient triples.

    A sign is zero iff the three lines are concurrent.

    Raises
    ------
    ValueError
        "degenerate arrangement" for fewer than three lines or when all lines pass
        through one point. Proportional lines are already refused by Arrangement.
    """
    if len(arr) < 3:
        raise ValueError(f"degenerate arrangement: {len(arr)} lines")
    signs = {}
    for key in combinations(range(len(arr)), 3):
        det = _det3([arr.lines[k] for k in key])
        signs[key] = (det > 0) - (det < 0)
    if not any(signs.values()):
        raise ValueError("degenerate arrangement: all lines are concurrent")
    return Chirotope(arr.names, signs)

#===============================================#
#------------------ Criteria -------------------#
#===============================================#

def criterion_sigma(sigma:Permutation) -> bool:
    """M(n, sigma) is orientable iff no cycle of G_sigma is longer than four."""
    return max(sigma_graph(sigma).cycle_lengths) <= 4

class GroupVerdict(NamedTuple):
    r: int
    orientable: bool

def criterion_group(G:GroupSpec, g0:GroupElement, g1:GroupElement) -> GroupVerdict:
    """
    Orientability of M(G, g0, g1) from the order r of g0 - g1.

    Returns
    -------
    GroupVerdict
        r and whether r <= 2.
    """
    require_distinct_pair(G, g0, g1)
    r = G.element_order(G.sub(tuple(g0), tuple(g1)))
    return GroupVerdict(r=r, orientable=r <= 2)

#===============================================#
#---------------- Sign Search ------------------#
#===============================================#

class _BudgetExhausted(Exception):
    pass

_OK = ()

class _SignSearch:
    """
    Backtracking over signs of the independent sorted triples of M.

    Dependent triples are pinned to zero. Each GP condition keeps only its
    structurally nonzero products; a condition with one such product makes M
    non-orientable outright. After every assignment the conditions watching the
    variable are re-evaluated, and a condition whose outcome hinges on one
    unassigned variable forces it.
    """

    def __init__(self, M:LineMatroid):
        self.elements = M.elements
        n = len(M.elements)
        self.triples: List[IndexTriple] = list(combinations(range(n), 3))
        index = {t: k for k, t in enumerate(self.triples)}
        self.is_free = [
            frozenset(M.elements[x] for x in t) not in M.dependent_set for t in self.triples
        ]
        self.free = [k for k, free in enumerate(self.is_free) if free]
        self.value = [0] * len(self.triples)
        self.trail: List[int] = []
        self.constraints: List[Tuple[Tuple[int, int, int], ...]] = []
        self.watches: List[List[int]] = [[] for _ in self.triples]
        self.refutation: Optional[Tuple[str, ...]] = None
        self.nodes = 0
        self.budget = 0

        for a in range(n):
            others = [x for x in range(n) if x != a]
            for b, c, d, e in combinations(others, 4):
                terms = []
                for coef, first, second in _gp_terms(a, b, c, d, e):
                    t1, t2 = index[_sorted_triple(*first)], index[_sorted_triple(*second)]
                    if self.is_free[t1] and self.is_free[t2]:
                        terms.append((coef * _permutation_sign(*first) * _permutation_sign(*second), t1, t2))
                if not terms:
                    continue
                if len(terms) == 1:
                    if self.refutation is None:
                        self.refutation = tuple(self.elements[x] for x in (a, b, c, d, e))
                    continue
                k = len(self.constraints)
                self.constraints.append(tuple(terms))
                for _, t1, t2 in terms:
                    self.watches[t1].append(k)
                    self.watches[t2].append(k)

        logger.debug(
            "%d free triples, %d sign conditions", len(self.free), len(self.constraints)
        )

    def _check(self, k:int):
        """None on conflict, (variable, value) when forced, _OK otherwise."""
        value = self.value
        known = []
        pending = None
        unknown = 0
        for coef, t1, t2 in self.constraints[k]:
            v1, v2 = value[t1], value[t2]
            if v1 and v2:
                known.append(coef * v1 * v2)
                continue
            unknown += 1
            if v1:
                pending = (coef * v1, t2)
            elif v2:
                pending = (coef * v2, t1)
            else:
                pending = None

        if unknown == 0:
            if len(known) == 2:
                return None if known[0] == known[1] else _OK
            return None if known[0] == known[1] == known[2] else _OK

        if unknown == 1 and pending is not None:
            if len(known) == 2 and known[0] != known[1]:
                return _OK
            partial, variable = pending
            return (variable, -known[0] * partial)
        return _OK

    def _assign(self, t:int, v:int) -> bool:
        value = self.value
        value[t] = v
        self.trail.append(t)
        queue = [t]
        while queue:
            x = queue.pop()
            for k in self.watches[x]:
                result = self._check(k)
                if result is None:
                    return False
                if result:
                    y, w = result
                    if value[y] == 0:
                        value[y] = w
                        self.trail.append(y)
                        queue.append(y)
                    elif value[y] != w:
                        return False
        return True

    def _undo(self, mark:int) -> None:
        while len(self.trail) > mark:
            self.value[self.trail.pop()] = 0

    def _branch(self, position:int) -> bool:
        free, value = self.free, self.value
        while position < len(free) and value[free[position]]:
            position += 1
        if position == len(free):
            return True

        t = free[position]
        for v in (1, -1):
            self.nodes += 1
            if self.nodes > self.budget:
                raise _BudgetExhausted
            if self.nodes % PROGRESS_INTERVAL == 0:
                logger.debug("search progress: %d nodes, depth %d", self.nodes, position)
            mark = len(self.trail)
            if self._assign(t, v) and self._branch(position + 1):
                return True
            self._undo(mark)
        return False

    def run(self, budget:int, prefix:Sequence[int]=()) -> SearchOutcome:
        """
        Search with the first free triple fixed to +1 and the next len(prefix)
        free triples fixed to the given signs.
        """
        self.budget = budget
        self.nodes = 0
        if self.refutation is not None:
            logger.info("single nonzero Grassmann-Plücker term at %s", ",".join(self.refutation))
            return "none"

        for t, v in zip(self.free, (1,) + tuple(prefix)):
            if self.value[t] == 0:
                if not self._assign(t, v):
                    return "none"
            elif self.value[t] != v:
                return "none"

        try:
            return "found" if self._branch(0) else "none"
        except _BudgetExhausted:
            return "budget-exhausted"

    def chirotope(self) -> Chirotope:
        return Chirotope(self.elements, dict(zip(self.triples, self.value)))

@dataclass(frozen=True)
class SearchResult:
    outcome: SearchOutcome
    chirotope: Optional[Chirotope] = None
    nodes: int = 0
    wall_time: float = 0.0

    def __bool__(self) -> bool:
        return self.outcome == "found"

def _search_task(args) -> Tuple[SearchOutcome, Optional[Dict[IndexTriple, int]], int]:
    elements, flats, prefix, budget = args
    engine = _SignSearch(LineMatroid(elements, flats))
    outcome = engine.run(budget, prefix)
    signs = engine.chirotope().signs if outcome == "found" else None
    return outcome, signs, engine.nodes

def _prefix_depth(workers:int, free_count:int) -> int:
    depth = 0
    while 2 ** depth < workers and depth < free_count - 1:
        depth += 1
    return depth

def _parallel_search(M:LineMatroid, budget:int, workers:int, free_count:int):
    depth = _prefix_depth(workers, free_count)
    prefixes = list(product((1, -1), repeat=depth))
    share = max(1, budget // len(prefixes))
    tasks = [(M.elements, M.flats, prefix, share) for prefix in prefixes]
    logger.debug("dispatching %d prefixes of depth %d to %d workers", len(tasks), depth, workers)

    outcomes = []
    nodes = 0
    signs = None
    with Pool(processes=workers) as pool:
        for outcome, task_signs, task_nodes in pool.imap_unordered(_search_task, tasks):
            nodes += task_nodes
            outcomes.append(outcome)
            if outcome == "found":
                signs = task_signs
                break

    if signs is not None:
        return "found", Chirotope(M.elements, signs), nodes
    if all(outcome == "none" for outcome in outcomes):
        return "none", None, nodes
    return "budget-exhausted", None, nodes

def find_chirotope(M:LineMatroid, budget:int=DEFAULT_BUDGET, workers:int=DEFAULT_WORKERS) -> SearchResult:
    """
    Search for a chirotope of M.

    Sorted triples are visited in lexicographic order with + tried first; the
    first independent triple is fixed to +1 since negation preserves chirotopes.
    With workers > 1 the signs of the next few free triples are split across a
    process pool and any certificate stops the remaining workers.

    Parameters
    ----------
    M : LineMatroid
        At most MAX_SEARCH_ELEMENTS elements.
    budget : int
        Maximum number of visited search nodes, shared evenly between workers.
    workers : int
        Number of worker processes; 1 runs in-process and is deterministic.

    Returns
    -------
    SearchResult
        "found" with a verified chirotope, "none" when the space is exhausted, or
        "budget-exhausted"; with the number of visited nodes and the wall time.
    """
    require_valid(M)
    if len(M) > MAX_SEARCH_ELEMENTS:
        raise ValueError(f"beyond desk scale: {len(M)} elements exceeds {MAX_SEARCH_ELEMENTS}")
    if budget < 1:
        raise ValueError(f"budget must be positive: {budget}")
    if workers < 1:
        raise ValueError(f"workers must be positive: {workers}")

    start = time.perf_counter()
    logger.info("searching chirotope of %r with budget %d", M, budget)
    engine = _SignSearch(M)
    if workers == 1 or engine.refutation is not None:
        outcome = engine.run(budget)
        chi = engine.chirotope() if outcome == "found" else None
        nodes = engine.nodes
    else:
        outcome, chi, nodes = _parallel_search(M, budget, workers, len(engine.free))
    elapsed = time.perf_counter() - start

    if chi is not None:
        diagnosis = check_certificate(M, chi)
        if not diagnosis:
            raise RuntimeError(f"search produced an invalid certificate: {diagnosis.reason}")

    logger.info("search %s after %d nodes in %.3fs", outcome, nodes, elapsed)
    return SearchResult(outcome=outcome, chirotope=chi, nodes=nodes, wall_time=elapsed)

#===============================================#
#----------------- Minimality ------------------#
#===============================================#

@dataclass(frozen=True)
class MinimalityReport:
    verdict: MinimalityVerdict
    search: SearchResult
    deletions: Dict[str, SearchResult] = field(default_factory=dict)
    wall_time: float = 0.0
    # deletions leaving every remaining element on one line; no rank-3 certificate exists
    rank_dropping: Tuple[str, ...] = ()

    @property
    def nodes(self) -> int:
        return self.search.nodes + sum(result.nodes for result in self.deletions.values())

def _deletion_drops_rank(M:LineMatroid, e:str) -> bool:
    rest = set(M.elements) - {e}
    return len(rest) < 3 or any(rest <= flat for flat in M.flats)

def certify_minimal_nonorientable(
    M:LineMatroid, budget:int=DEFAULT_BUDGET, workers:int=DEFAULT_WORKERS
) -> MinimalityReport:
    """
    Decide whether M is minimal non-orientable.

    M is searched first. When M is orientable every deletion certificate is the
    restriction of M's chirotope; otherwise each single-element deletion is
    searched with the same budget. Deletions that leave every element on one
    line have no rank-3 chirotope and are listed in rank_dropping instead.

    Returns
    -------
    MinimalityReport
        verdict is "minimal non-orientable" iff M yields none and every deletion
        yields a chirotope; "non-orientable, not minimal" once some deletion
        yields none; "inconclusive" if a budget ran out before either was settled.
    """
    start = time.perf_counter()
    search = find_chirotope(M, budget=budget, workers=workers)
    deletions: Dict[str, SearchResult] = {}
    rank_dropping = tuple(e for e in M.elements if _deletion_drops_rank(M, e))
    if rank_dropping:
        logger.info("deletions below rank 3: %s", ",".join(rank_dropping))

    if search.outcome == "found":
        for e in M.elements:
            if e not in rank_dropping:
                deletions[e] = SearchResult("found", search.chirotope.restrict(set(M.elements) - {e}))
        return MinimalityReport(
            "orientable", search, deletions, time.perf_counter() - start, rank_dropping
        )

    for e in M.elements:
        if e in rank_dropping:
            continue
        result = find_chirotope(delete_element(M, e), budget=budget, workers=workers)
        logger.info("deletion of %s: %s after %d nodes", e, result.outcome, result.nodes)
        deletions[e] = result

    outcomes = [result.outcome for result in deletions.values()]
    if search.outcome == "none" and "none" in outcomes:
        verdict = "non-orientable, not minimal"
    elif search.outcome == "none" and all(outcome == "found" for outcome in outcomes):
        verdict = "minimal non-orientable"
    else:
        verdict = "inconclusive"
    return MinimalityReport(verdict, search, deletions, time.perf_counter() - start, rank_dropping)

#===============================================#
#------------ Extension Feasibility ------------#
#===============================================#

def extension_feasible(n:int, f:Mapping[int, int]) -> bool:
    """
    Whether a pseudoline can extend F(n) through the vertices X_{i, f(i)}, i in D.

    Parameters
    ----------
    n : int
        Size of F(n).
    f : mapping of int to int
        Partial injection D -> [n], D a subset of [n].

    Returns
    -------
    bool
        True iff f is increasing or decreasing on D.
    """
    for i, j in f.items():
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"f must map into [1, {n}]: {i} -> {j}")
    if len(set(f.values())) != len(f):
        raise ValueError("f is not injective")
    images = [f[i] for i in sorted(f)]
    steps = list(zip(images, images[1:]))
    return all(x < y for x, y in steps) or all(x > y for x, y in steps)

def triple_extension_feasible(
    n:int, first:Tuple[int, int], second:Tuple[int, int], third:Tuple[int, int]
) -> bool:
    """
    Three vertices X_{i,j} admit a common pseudoline iff, seen from the middle
    one (by i), the outer two lie in the same part S+ = {(i'-i)(j'-j) > 0} or
    S- = {(i'-i)(j'-j) < 0}.
    """
    points = sorted((first, second, third))
    for i, j in points:
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"vertex X_{i},{j} outside F({n})")
    if len({i for i, _ in points}) < 3 or len({j for _, j in points}) < 3:
        raise ValueError("vertices need distinct i and distinct j")

    (i1, j1), (i2, j2), (i3, j3) = points
    side1 = (i1 - i2) * (j1 - j2) > 0
    side3 = (i3 - i2) * (j3 - j2) > 0
    return side1 == side3

def cyclic_extension_feasible(alpha:Permutation) -> bool:
    """Whether a pseudoline can pass through X_{alpha^(i-1)(1), alpha^i(1)} for all i in [n]."""
    cycles = alpha.cycles()
    if len(cycles) != 1 or alpha.n < 2:
        raise ValueError(f"not a cyclic permutation: {alpha}")
    f = {}
    point = 1
    for _ in range(alpha.n):
        f[point] = alpha(point)
        point = alpha(point)
    return extension_feasible(alpha.n, f)

#===============================================#
#---------------- Result Tables ----------------#
#===============================================#

def _orientability_label(orientable:bool) -> str:
    return "orientable" if orientable else "non-orientable"

def sweep(
    max_n:int,
    budget:int=DEFAULT_BUDGET,
    workers:int=DEFAULT_WORKERS,
    min_n:int=2,
) -> pd.DataFrame:
    """
    Compare the cycle criterion with the exhaustive search for every derangement.

    Returns
    -------
    pd.DataFrame
        One row per derangement of [n], min_n <= n <= max_n, with columns n,
        permutation, cycle_lengths, criterion, brute, nodes and agree (None for
        exhausted rows).
    """
    if min_n < 2 or max_n < min_n:
        raise ValueError(f"need 2 <= min_n <= max_n: {min_n}, {max_n}")
    rows = []
    for n in range(min_n, max_n + 1):
        for sigma in derangements(n):
            criterion = _orientability_label(criterion_sigma(sigma))
            result = find_chirotope(build_m_sigma(n, sigma), budget=budget, workers=workers)
            if result.outcome == "budget-exhausted":
                brute, agree = "budget-exhausted", None
            else:
                brute = _orientability_label(result.outcome == "found")
                agree = brute == criterion
            rows.append({
                "n": n,
                "permutation": sigma.cycle_notation(),
                "cycle_lengths": " ".join(str(k) for k in sigma_graph(sigma).cycle_lengths),
                "criterion": criterion,
                "brute": brute,
                "nodes": result.nodes,
                "agree": agree,
            })
            logger.info("sweep %s: criterion %s, brute %s", sigma, criterion, brute)
    return pd.DataFrame(rows, columns=["n", "permutation", "cycle_lengths", "criterion", "brute", "nodes", "agree"])

def group_consistency_table(max_order:int=8) -> pd.DataFrame:
    """
    criterion_group against criterion_sigma of the translated permutation, for every
    abelian group of order 2..max_order and every ordered pair g0 != g1.
    """
    rows = []
    for G in abelian_groups(max_order):
        for g0, g1 in product(G.elements(), repeat=2):
            if g0 == g1:
                continue
            verdict = criterion_group(G, g0, g1)
            translation = group_to_sigma(G, g0, g1)
            by_sigma = criterion_sigma(translation.sigma)
            long_cycle = any(len(cycle) >= 3 for cycle in translation.sigma.cycles())
            rows.append({
                "group": str(G),
                "g0": G.label(g0),
                "g1": G.label(g1),
                "r": verdict.r,
                "criterion_group": _orientability_label(verdict.orientable),
                "criterion_sigma": _orientability_label(by_sigma),
                "long_sigma_cycle": long_cycle,
                "agree": verdict.orientable == by_sigma and (verdict.r >= 3) == long_cycle,
            })
    return pd.DataFrame(rows)
