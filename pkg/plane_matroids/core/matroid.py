import logging
import re
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Mapping, Sequence, Set, Tuple
from plane_matroids.core.gf import FieldSpec
from plane_matroids.core.projplane import ProjPoint, collinear
from plane_matroids.core.types import PASSED, Diagnosis
from plane_matroids.core.validation import valid_element_name

logger = logging.getLogger(__name__)

Flat = FrozenSet[str]

def natural_key(name:str) -> tuple:
    """Sort key treating digit runs as numbers, so a_2 < a_10."""
    return tuple(int(part) if part.isdigit() else part for part in re.split(r"(\d+)", name))

#===============================================#
#----------------- LineMatroid -----------------#
#===============================================#

@dataclass(frozen=True, eq=False)
class LineMatroid:
    """
    A simple rank-3 matroid given by its ground set and its nontrivial rank-2 flats.

    Two-element flats are implicit. The element order is kept as given: it fixes
    the triple enumeration order used by the chirotope search and by reports.
    Equality is structural (same element set, same set of flats).
    """
    elements: Tuple[str, ...]
    flats: Tuple[Flat, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        flats = [frozenset(flat) for flat in self.flats]
        flats.sort(key=lambda flat: sorted(natural_key(e) for e in flat))
        object.__setattr__(self, "flats", tuple(flats))

    def __eq__(self, other):
        if not isinstance(other, LineMatroid):
            return NotImplemented
        return set(self.elements) == set(other.elements) and set(self.flats) == set(other.flats)

    def __hash__(self):
        return hash((frozenset(self.elements), frozenset(self.flats)))

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def position(self) -> Dict[str, int]:
        return {e: k for k, e in enumerate(self.elements)}

    @cached_property
    def dependent_set(self) -> FrozenSet[Flat]:
        return frozenset(
            frozenset(triple) for flat in self.flats for triple in combinations(flat, 3)
        )

    def __repr__(self) -> str:
        return f"LineMatroid({len(self.elements)} elements, {len(self.flats)} flats)"

def require_valid(M:LineMatroid) -> LineMatroid:
    """Return M unchanged or raise ValueError carrying the validation diagnostic."""
    diagnosis = validate(M)
    if not diagnosis:
        raise ValueError(f"invalid matroid: {diagnosis.reason}")
    return M

def validate(M:LineMatroid) -> Diagnosis:
    """
    Check the line-space axioms of a simple rank-3 matroid.

    Parameters
    ----------
    M : LineMatroid
        Candidate matroid.

    Returns
    -------
    Diagnosis
        Truthy iff every invariant holds; otherwise the reason names the first
        violated invariant and the witness lists the offending elements.
    """
    for e in M.elements:
        if not valid_element_name(e):
            return Diagnosis(False, f"bad element name {e!r}", (str(e),))

    seen: Set[str] = set()
    for e in M.elements:
        if e in seen:
            return Diagnosis(False, f"duplicate element {e}", (e,))
        seen.add(e)

    for flat in M.flats:
        unknown = sorted(flat - seen, key=natural_key)
        if unknown:
            return Diagnosis(False, f"flat contains unknown element {unknown[0]}", tuple(unknown))
        if len(flat) < 3:
            return Diagnosis(False, "flat has fewer than 3 elements", tuple(sorted(flat, key=natural_key)))

    if len(set(M.flats)) != len(M.flats):
        duplicate = next(flat for k, flat in enumerate(M.flats) if flat in M.flats[k + 1:])
        return Diagnosis(False, "duplicate flat", tuple(sorted(duplicate, key=natural_key)))

    for first, second in combinations(M.flats, 2):
        shared = first & second
        if len(shared) > 1:
            return Diagnosis(
                False,
                "two flats share two elements: "
                + "{" + ",".join(sorted(first, key=natural_key)) + "} and "
                + "{" + ",".join(sorted(second, key=natural_key)) + "}",
                tuple(sorted(shared, key=natural_key)),
            )

    # flats pairwise share at most one element, so each dependent triple lies in exactly one flat
    dependent_count = sum(comb(len(flat), 3) for flat in M.flats)
    if len(M.elements) < 3 or dependent_count == comb(len(M.elements), 3):
        return Diagnosis(False, "rank < 3")

    return PASSED

#===============================================#
#------------------- Queries -------------------#
#===============================================#

def dependent(M:LineMatroid, T:Iterable[str]) -> bool:
    """True iff the 3-subset T lies in a common nontrivial flat."""
    T = frozenset(T)
    if len(T) != 3 or not T <= set(M.elements):
        raise ValueError(f"bad triple: {sorted(T, key=natural_key)}")
    return T in M.dependent_set

def dependent_triples(M:LineMatroid) -> List[Tuple[str, str, str]]:
    """Dependent triples in the element order of M."""
    return [T for T in combinations(M.elements, 3) if frozenset(T) in M.dependent_set]

def rank(M:LineMatroid, S:Iterable[str]) -> int:
    S = frozenset(S)
    if not S <= set(M.elements):
        raise ValueError("no such element: " + ",".join(sorted(S - set(M.elements))))
    if len(S) <= 2:
        return len(S)
    return 2 if any(S <= flat for flat in M.flats) else 3

def max_flat_size(M:LineMatroid) -> int:
    return max((len(flat) for flat in M.flats), default=2)

def from_dependent_triples(elements:Sequence[str], triples:Iterable[Iterable[str]]) -> LineMatroid:
    """
    Rebuild the flats of a line space from its dependent triples.

    Every dependent triple {x,y,z} puts z in the closure of the pair {x,y}; the
    flats are the closures of the pairs that occur in some dependent triple.
    """
    closures: Dict[FrozenSet[str], Set[str]] = defaultdict(set)
    for triple in triples:
        triple = tuple(triple)
        assert len(set(triple)) == 3
        for pair in combinations(triple, 2):
            closures[frozenset(pair)].update(triple)
    flats = {frozenset(closure) for closure in closures.values()}
    return LineMatroid(tuple(elements), tuple(flats))

#===============================================#
#------------------- Minors --------------------#
#===============================================#

def delete_element(M:LineMatroid, e:str) -> LineMatroid:
    """
    Delete one element; flats shrinking below three elements become implicit.

    Raises
    ------
    ValueError
        "no such element" for an unknown element, or the validation diagnostic if
        the deletion drops the rank.
    """
    if e not in M.position:
        raise ValueError(f"no such element: {e}")
    elements = tuple(x for x in M.elements if x != e)
    flats = tuple(flat - {e} for flat in M.flats if len(flat - {e}) >= 3)
    return require_valid(LineMatroid(elements, flats))

def restrict(M:LineMatroid, S:Iterable[str]) -> LineMatroid:
    """
    Restriction M|S, keeping the element order of M.

    Raises
    ------
    ValueError
        "no such element" if S is not a subset of the ground set, "restriction below
        rank" if S has fewer than three elements or is contained in a single flat.
    """
    S = set(S)
    unknown = S - set(M.elements)
    if unknown:
        raise ValueError("no such element: " + ",".join(sorted(unknown, key=natural_key)))
    if len(S) < 3:
        raise ValueError(f"restriction below rank: {len(S)} elements")
    elements = tuple(x for x in M.elements if x in S)
    flats = tuple(flat & S for flat in M.flats if len(flat & S) >= 3)
    restricted = LineMatroid(elements, flats)
    diagnosis = validate(restricted)
    if not diagnosis:
        if diagnosis.reason == "rank < 3":
            raise ValueError("restriction below rank: subset lies on one line")
        raise ValueError(f"invalid matroid: {diagnosis.reason}")
    return restricted

def rename(M:LineMatroid, mapping:Mapping[str, str]) -> LineMatroid:
    """Apply an explicit element renaming; the map must be total and injective on M."""
    missing = [e for e in M.elements if e not in mapping]
    if missing:
        raise ValueError(f"renaming is not total: missing {missing[0]}")
    images = [mapping[e] for e in M.elements]
    if len(set(images)) != len(images):
        raise ValueError("renaming is not injective")
    flats = tuple(frozenset(mapping[e] for e in flat) for flat in M.flats)
    return LineMatroid(tuple(images), flats)

#===============================================#
#------------------ Embedding ------------------#
#===============================================#

def is_embedding(M:LineMatroid, img:Mapping[str, ProjPoint], spec:FieldSpec) -> Diagnosis:
    """
    Decide whether img embeds M into the plane over spec.

    Parameters
    ----------
    M : LineMatroid
        The matroid.
    img : mapping of element name to ProjPoint
        Candidate map; must be total on the ground set.
    spec : FieldSpec
        Field of the plane.

    Returns
    -------
    Diagnosis
        Truthy iff img is injective and, for every 3-subset T, the image of T is
        collinear exactly when T is dependent in M. On failure the witness is the
        first offending pair or triple in the element order of M.
    """
    for e in M.elements:
        if e not in img:
            return Diagnosis(False, "map is not total", (e,))
        if img[e].spec != spec:
            return Diagnosis(False, f"field mismatch: {img[e].spec} and {spec}", (e,))

    owner: Dict[ProjPoint, str] = {}
    for e in M.elements:
        point = img[e]
        if point in owner:
            return Diagnosis(False, f"not injective: both map to {point}", (owner[point], e))
        owner[point] = e

    for T in combinations(M.elements, 3):
        is_collinear = collinear(*(img[e] for e in T))
        is_dependent = frozenset(T) in M.dependent_set
        if is_collinear != is_dependent:
            reason = "collinear but independent" if is_collinear else "dependent but not collinear"
            logger.info("embedding fails at %s: %s", T, reason)
            return Diagnosis(False, reason, T)

    return PASSED
