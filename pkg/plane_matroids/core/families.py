import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from math import gcd, lcm, prod
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple
import networkx as nx
from plane_matroids.core.matroid import LineMatroid, natural_key, require_valid, restrict
from plane_matroids.core.validation import (
    is_derangement,
    valid_bijection,
    valid_cycle_notation,
    valid_cyclic_orders,
    valid_element_name,
    valid_group_notation,
)

logger = logging.getLogger(__name__)

GroupElement = Tuple[int, ...]
LineCoefficients = Tuple[int, int, int]

INFINITY: LineCoefficients = (0, 0, 1)

def a_name(i) -> str:
    return f"a_{i}"

def b_name(i) -> str:
    return f"b_{i}"

def c_name(i) -> str:
    return f"c_{i}"

#===============================================#
#----------------- Permutations ----------------#
#===============================================#

@dataclass(frozen=True)
class Permutation:
    """A bijection of [n] = {1..n}; images[i - 1] is the image of i."""
    images: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if not valid_bijection(self.images):
            raise ValueError(f"not a permutation of [{len(self.images)}]: {list(self.images)}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i:int) -> int:
        return self.images[i - 1]

    @classmethod
    def identity(cls, n:int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def reversal(cls, n:int) -> "Permutation":
        return cls(tuple(range(n, 0, -1)))

    @classmethod
    def from_mapping(cls, n:int, mapping:Dict[int, int]) -> "Permutation":
        return cls(tuple(mapping.get(i, i) for i in range(1, n + 1)))

    @classmethod
    def parse(cls, n:int, text:str) -> "Permutation":
        """Read cycle notation such as "(1 3)(2 4)"; unlisted points are fixed."""
        if not valid_cycle_notation(text):
            raise ValueError(f"not cycle notation: {text!r}")
        mapping: Dict[int, int] = {}
        for body in re.findall(r"\(([^)]*)\)", text):
            cycle = [int(token) for token in body.split()]
            for k, point in enumerate(cycle):
                if not 1 <= point <= n:
                    raise ValueError(f"point {point} outside [1, {n}]")
                if point in mapping:
                    raise ValueError(f"point {point} appears twice in {text!r}")
                mapping[point] = cycle[(k + 1) % len(cycle)]
        return cls.from_mapping(n, mapping)

    def inverse(self) -> "Permutation":
        inverse = [0] * self.n
        for i, image in enumerate(self.images, start=1):
            inverse[image - 1] = i
        return Permutation(tuple(inverse))

    def cycles(self) -> List[Tuple[int, ...]]:
        """All cycles including fixed points, each starting at its smallest point."""
        seen = set()
        cycles = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cycle = []
            point = start
            while point not in seen:
                seen.add(point)
                cycle.append(point)
                point = self(point)
            cycles.append(tuple(cycle))
        return cycles

    def cycle_type(self) -> Tuple[int, ...]:
        return tuple(sorted(len(cycle) for cycle in self.cycles()))

    def is_derangement(self) -> bool:
        return is_derangement(self.images)

    def cycle_notation(self) -> str:
        cycles = [cycle for cycle in self.cycles() if len(cycle) > 1]
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(point) for point in cycle) + ")" for cycle in cycles)

    def __str__(self) -> str:
        return self.cycle_notation()

def derangements(n:int) -> Iterator[Permutation]:
    """Fixed-point-free permutations of [n] in lexicographic order of their image sequences."""
    for images in permutations(range(1, n + 1)):
        if is_derangement(images):
            yield Permutation(images)

def _require_derangement(sigma:Permutation) -> None:
    if not sigma.is_derangement():
        raise ValueError(f"sigma not a derangement: {sigma}")

#===============================================#
#------------------ Sigma Graph ----------------#
#===============================================#

@dataclass(frozen=True, eq=False)
class CycleGraph:
    """The bipartite 2-regular graph G_sigma on {a_i} and {b_i}, with its cycle decomposition."""
    graph: nx.Graph
    cycles: Tuple[Tuple[str, ...], ...]

    @property
    def vertices(self) -> List[str]:
        return list(self.graph.nodes)

    @property
    def edges(self) -> List[Tuple[str, str]]:
        return list(self.graph.edges)

    @property
    def cycle_lengths(self) -> Tuple[int, ...]:
        return tuple(sorted(len(cycle) for cycle in self.cycles))

def sigma_graph(sigma:Permutation) -> CycleGraph:
    """
    Build G_sigma and decompose it into its disjoint cycles.

    Edges are {a_i, b_i} and {a_i, b_sigma(i)}. A k-cycle of sigma yields a
    2k-cycle of the graph.

    Parameters
    ----------
    sigma : Permutation
        A fixed-point-free permutation.

    Returns
    -------
    CycleGraph
        The graph; each cycle is listed as a vertex sequence starting at the a-vertex
        with the smallest index and continuing along its {a_i, b_i} edge.
    """
    _require_derangement(sigma)
    n = sigma.n
    graph = nx.Graph()
    graph.add_nodes_from((a_name(i) for i in range(1, n + 1)), bipartite=0)
    graph.add_nodes_from((b_name(i) for i in range(1, n + 1)), bipartite=1)
    for i in range(1, n + 1):
        graph.add_edge(a_name(i), b_name(i))
        graph.add_edge(a_name(i), b_name(sigma(i)))

    assert nx.is_bipartite(graph)
    assert all(degree == 2 for _, degree in graph.degree)

    cycles = []
    for component in sorted(nx.connected_components(graph), key=lambda c: min(map(natural_key, c))):
        start = min((v for v in component if v.startswith("a_")), key=natural_key)
        cycle = [start, "b_" + start[2:]]
        while True:
            previous, current = cycle[-2], cycle[-1]
            step = next(v for v in graph.neighbors(current) if v != previous)
            if step == start:
                break
            cycle.append(step)
        cycles.append(tuple(cycle))

    logger.debug("G_sigma of %s: cycle lengths %s", sigma, sorted(len(c) for c in cycles))
    return CycleGraph(graph=graph, cycles=tuple(cycles))

#===============================================#
#-------------------- Groups -------------------#
#===============================================#

@dataclass(frozen=True)
class GroupSpec:
    """The finite abelian group Z_{d_1} x ... x Z_{d_k}, written additively."""
    orders: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(self.orders))
        if not valid_cyclic_orders(self.orders):
            raise ValueError(f"cyclic orders must be integers >= 2: {list(self.orders)}")

    @classmethod
    def parse(cls, text:str) -> "GroupSpec":
        """Read "Z3" or "Z2xZ4"."""
        if not valid_group_notation(text):
            raise ValueError(f"not a group: {text!r}")
        return cls(tuple(int(factor) for factor in re.findall(r"Z(\d+)", text)))

    @property
    def order(self) -> int:
        return prod(self.orders)

    def elements(self) -> List[GroupElement]:
        """Canonical lexicographic enumeration of residue tuples."""
        return list(product(*(range(d) for d in self.orders)))

    def contains(self, g:Sequence[int]) -> bool:
        return len(g) == len(self.orders) and all(0 <= x < d for x, d in zip(g, self.orders))

    def parse_element(self, text:str) -> GroupElement:
        """Read "1", "1,0" or "(1,0)"."""
        body = text.strip().strip("()")
        try:
            g = tuple(int(token) for token in body.split(","))
        except ValueError:
            raise ValueError(f"not an element of {self}: {text!r}") from None
        if not self.contains(g):
            raise ValueError(f"not an element of {self}: {text!r}")
        return g

    def add(self, g:GroupElement, h:GroupElement) -> GroupElement:
        return tuple((x + y) % d for x, y, d in zip(g, h, self.orders))

    def neg(self, g:GroupElement) -> GroupElement:
        return tuple((-x) % d for x, d in zip(g, self.orders))

    def sub(self, g:GroupElement, h:GroupElement) -> GroupElement:
        return self.add(g, self.neg(h))

    def element_order(self, g:GroupElement) -> int:
        return lcm(*(d // gcd(x, d) for x, d in zip(g, self.orders)))

    def label(self, g:GroupElement) -> str:
        if len(self.orders) == 1:
            return str(g[0])
        return "(" + ",".join(str(x) for x in g) + ")"

    def __str__(self) -> str:
        return "x".join(f"Z{d}" for d in self.orders)

def _invariant_factor_chains(remaining:int, base:int) -> Iterator[Tuple[int, ...]]:
    # each factor after the first is a multiple of the one before
    if remaining == 1:
        yield ()
        return
    for d in range(max(base, 2), remaining + 1):
        if remaining % d == 0 and d % base == 0:
            for rest in _invariant_factor_chains(remaining // d, d):
                yield (d,) + rest

def abelian_groups(max_order:int) -> List[GroupSpec]:
    """Every finite abelian group of order 2..max_order once, as d_1 | d_2 | ... | d_k."""
    groups = []
    for order in range(2, max_order + 1):
        for chain in _invariant_factor_chains(order, 1):
            groups.append(GroupSpec(chain))
    return groups

def require_distinct_pair(G:GroupSpec, g0:GroupElement, g1:GroupElement) -> None:
    for g in (g0, g1):
        if not G.contains(g):
            raise ValueError(f"not an element of {G}: {g}")
    if tuple(g0) == tuple(g1):
        raise ValueError("need two distinct group elements")

#===============================================#
#------------- Matroid Constructors ------------#
#===============================================#

def build_m_prime(n:int) -> LineMatroid:
    """
    The matroid M'(n): elements a_1..a_n, b_1..b_n, c_0 with the n + 2 flats
    A = {a_i}, B = {b_i} and X_i = {a_i, b_i, c_0}.
    """
    if n < 2:
        raise ValueError(f"n too small: {n}")
    A = [a_name(i) for i in range(1, n + 1)]
    B = [b_name(i) for i in range(1, n + 1)]
    # for n = 2, A and B are trivial flats
    flats = [frozenset(A), frozenset(B)] if n >= 3 else []
    flats += [frozenset({a_name(i), b_name(i), c_name(0)}) for i in range(1, n + 1)]
    return require_valid(LineMatroid(tuple(A + B + [c_name(0)]), tuple(flats)))

def build_m_sigma(n:int, sigma:Permutation) -> LineMatroid:
    """
    The matroid M(n, sigma): M'(n) extended by c_1 on the n flats {a_i, b_sigma(i), c_1}.

    Parameters
    ----------
    n : int
        Size of A and B, n >= 2.
    sigma : Permutation
        Fixed-point-free permutation of [n]; a fixed point would put a_i and b_i on
        two different flats.

    Returns
    -------
    LineMatroid
        2n + 2 elements and 2n + 2 nontrivial flats (four when n = 2).
    """
    base = build_m_prime(n)
    if sigma.n != n:
        raise ValueError(f"permutation of [{sigma.n}] given for n = {n}")
    _require_derangement(sigma)
    flats = list(base.flats)
    flats += [frozenset({a_name(i), b_name(sigma(i)), c_name(1)}) for i in range(1, n + 1)]
    return require_valid(LineMatroid(base.elements + (c_name(1),), tuple(flats)))

def build_group_matroid(G:GroupSpec, g0:GroupElement, g1:GroupElement) -> LineMatroid:
    """
    The matroid M(G, g0, g1) on {a_g} u {b_g} u {c_g0, c_g1} with flats A, B,
    {a_g, b_(g+g0), c_g0} and {a_g, b_(g+g1), c_g1} for every g in G.
    """
    require_distinct_pair(G, g0, g1)
    elements = G.elements()
    A = [a_name(G.label(g)) for g in elements]
    B = [b_name(G.label(g)) for g in elements]
    c0, c1 = c_name(G.label(g0)), c_name(G.label(g1))
    flats = [frozenset(A), frozenset(B)] if G.order >= 3 else []
    for g in elements:
        flats.append(frozenset({a_name(G.label(g)), b_name(G.label(G.add(g, g0))), c0}))
        flats.append(frozenset({a_name(G.label(g)), b_name(G.label(G.add(g, g1))), c1}))
    return require_valid(LineMatroid(tuple(A + B + [c0, c1]), tuple(flats)))

class GroupTranslation(NamedTuple):
    n: int
    sigma: Permutation
    renaming: Dict[str, str]

def group_to_sigma(G:GroupSpec, g0:GroupElement, g1:GroupElement) -> GroupTranslation:
    """
    Express M(G, g0, g1) as a renamed M(n, sigma).

    With alpha the canonical enumeration [n] -> G, beta(i) = alpha(i) + g0 and
    sigma(i) = beta^-1(alpha(i) + g1), the renaming a_i -> a_alpha(i),
    b_i -> b_beta(i), c_0 -> c_g0, c_1 -> c_g1 maps build_m_sigma(n, sigma)
    exactly onto build_group_matroid(G, g0, g1).

    Returns
    -------
    GroupTranslation
        (n, sigma, renaming).
    """
    require_distinct_pair(G, g0, g1)
    alpha = G.elements()
    n = len(alpha)
    beta = [G.add(g, g0) for g in alpha]
    beta_inverse = {g: i for i, g in enumerate(beta, start=1)}
    sigma = Permutation(tuple(beta_inverse[G.add(g, g1)] for g in alpha))

    renaming = {}
    for i in range(1, n + 1):
        renaming[a_name(i)] = a_name(G.label(alpha[i - 1]))
        renaming[b_name(i)] = b_name(G.label(beta[i - 1]))
    renaming[c_name(0)] = c_name(G.label(g0))
    renaming[c_name(1)] = c_name(G.label(g1))
    return GroupTranslation(n=n, sigma=sigma, renaming=renaming)

def cycle_restriction(n:int, sigma:Permutation, i:int) -> Tuple[LineMatroid, Dict[str, str]]:
    """
    The restriction of M(n, sigma) to the G_sigma cycle through a_i plus c_0 and c_1,
    and the renaming that carries it onto M(k, (1 2 ... k)).
    """
    M = build_m_sigma(n, sigma)
    cycle = next(c for c in sigma.cycles() if i in c)
    keep = {a_name(j) for j in cycle} | {b_name(j) for j in cycle} | {c_name(0), c_name(1)}
    restricted = restrict(M, keep)
    renaming = {c_name(0): c_name(0), c_name(1): c_name(1)}
    for position, j in enumerate(cycle, start=1):
        renaming[a_name(j)] = a_name(position)
        renaming[b_name(j)] = b_name(position)
    return restricted, renaming

#===============================================#
#------------------ Relabeling -----------------#
#===============================================#

def tau_relabel(n:int, sigma:Permutation) -> Permutation:
    """
    Positions of the X_i at infinity for an involution sigma.

    Repeatedly take the smallest remaining i, set tau(i) = k and
    tau(sigma(i)) = n + 1 - k, then increase k; this runs n / 2 times.

    Raises
    ------
    ValueError
        "tau requires an involution" unless every cycle of sigma has length 2.
    """
    if sigma.n != n:
        raise ValueError(f"permutation of [{sigma.n}] given for n = {n}")
    if n % 2 or any(len(cycle) != 2 for cycle in sigma.cycles()):
        raise ValueError(f"tau requires an involution without fixed points: {sigma}")

    tau: Dict[int, int] = {}
    remaining = set(range(1, n + 1))
    k = 1
    while remaining:
        i = min(remaining)
        tau[i] = k
        tau[sigma(i)] = n + 1 - k
        k += 1
        remaining -= {i, sigma(i)}
    return Permutation.from_mapping(n, tau)

#===============================================#
#----------------- Arrangements ----------------#
#===============================================#

def affine_line(slope:int, intercept:int) -> LineCoefficients:
    """y = slope * x + intercept as <slope, -1, intercept>."""
    return (slope, -1, intercept)

def vertical_line(x0:int) -> LineCoefficients:
    """x = x0 as <1, 0, -x0>."""
    return (1, 0, -x0)

def _cross(u:Sequence[int], v:Sequence[int]) -> Tuple[int, int, int]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )

@dataclass(frozen=True)
class Arrangement:
    """Named lines Ax + By + Cz = 0 of the rational projective plane, exact integer coefficients."""
    names: Tuple[str, ...]
    lines: Tuple[LineCoefficients, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "lines", tuple(tuple(line) for line in self.lines))
        if len(self.names) != len(self.lines):
            raise ValueError("every line needs exactly one name")
        if len(set(self.names)) != len(self.names) or not all(map(valid_element_name, self.names)):
            raise ValueError("line names must be distinct nonempty ASCII strings")
        for name, line in zip(self.names, self.lines):
            if len(line) != 3 or any(type(c) is not int for c in line):
                raise ValueError(f"line {name} needs three integer coefficients")
            if line == (0, 0, 0):
                raise ValueError(f"line {name} has all coefficients zero")
        for k, l in combinations(range(len(self.lines)), 2):
            if _cross(self.lines[k], self.lines[l]) == (0, 0, 0):
                raise ValueError(
                    f"degenerate arrangement: proportional lines {self.names[k]} and {self.names[l]}"
                )

    def __len__(self) -> int:
        return len(self.lines)

    def line(self, name:str) -> LineCoefficients:
        return self.lines[self.names.index(name)]

class Vertex(NamedTuple):
    homogeneous: Tuple[int, int, int]
    affine: Optional[Tuple[Fraction, Fraction]]

def arrangement_vertex(arr:Arrangement, first:str, second:str) -> Vertex:
    """Exact intersection point of two named lines; affine is None for points at infinity."""
    x, y, z = _cross(arr.line(first), arr.line(second))
    if (x, y, z) == (0, 0, 0):
        raise ValueError(f"lines coincide: {first}, {second}")
    divisor = gcd(x, y, z)
    if (z, y, x) < (0, 0, 0):
        divisor = -divisor
    x, y, z = x // divisor, y // divisor, z // divisor
    affine = (Fraction(x, z), Fraction(y, z)) if z else None
    return Vertex(homogeneous=(x, y, z), affine=affine)

def realize_four_cycles(n:int, sigma:Permutation) -> Arrangement:
    """
    Straight-line realization of M(n, sigma) when every cycle of G_sigma has length four.

    With tau = tau_relabel(n, sigma), A = (-1, 0) and B = (1, 0): for i <= n/2,
    a_tau^-1(i): y = -ix - i, b_tau^-1(i): y = -ix + i, a_tau^-1(n-i+1): y = ix + i,
    b_tau^-1(n-i+1): y = ix - i; c_0 is the line at infinity and c_1 is x = 0.

    Returns
    -------
    Arrangement
        Lines named like the elements of build_m_sigma(n, sigma), in the same order.
    """
    tau = tau_relabel(n, sigma)
    tau_inverse = tau.inverse()
    a_lines: Dict[int, LineCoefficients] = {}
    b_lines: Dict[int, LineCoefficients] = {}
    for i in range(1, n // 2 + 1):
        a_lines[tau_inverse(i)] = affine_line(-i, -i)
        b_lines[tau_inverse(i)] = affine_line(-i, i)
        a_lines[tau_inverse(n - i + 1)] = affine_line(i, i)
        b_lines[tau_inverse(n - i + 1)] = affine_line(i, -i)

    names = [a_name(i) for i in range(1, n + 1)] + [b_name(i) for i in range(1, n + 1)]
    lines = [a_lines[i] for i in range(1, n + 1)] + [b_lines[i] for i in range(1, n + 1)]
    names += [c_name(0), c_name(1)]
    lines += [INFINITY, vertical_line(0)]
    return Arrangement(tuple(names), tuple(lines))

def realize_f(n:int, tau:Permutation) -> Arrangement:
    """
    The arrangement F(n, tau): A = (0, 0), B = (0, 1), a_i: y = tau(i) x,
    b_i: y = tau(i) x + 1, c_0 at infinity.

    The parallel pair a_i, b_i meets c_0 at the point of slope tau(i), so the X_i
    appear on c_0 in tau-order.
    """
    if n < 1:
        raise ValueError(f"n too small: {n}")
    if tau.n != n:
        raise ValueError(f"permutation of [{tau.n}] given for n = {n}")
    names = [a_name(i) for i in range(1, n + 1)] + [b_name(i) for i in range(1, n + 1)]
    lines = [affine_line(tau(i), 0) for i in range(1, n + 1)]
    lines += [affine_line(tau(i), 1) for i in range(1, n + 1)]
    return Arrangement(tuple(names + [c_name(0)]), tuple(lines + [INFINITY]))
