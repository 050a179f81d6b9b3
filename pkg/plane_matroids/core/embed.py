import logging
from collections.abc import Mapping
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterator, Optional, Tuple
import numpy as np
import pandas as pd
from plane_matroids.core.defaults import COMPLEX_MAX_N, COMPLEX_TOL_NONZERO, COMPLEX_TOL_ZERO
from plane_matroids.core.families import GroupSpec, a_name, b_name, build_group_matroid, c_name
from plane_matroids.core.gf import FieldSpec, element_of_order, make_field
from plane_matroids.core.matroid import LineMatroid, is_embedding, max_flat_size
from plane_matroids.core.orientability import criterion_group
from plane_matroids.core.projplane import ProjPoint
from plane_matroids.core.types import Diagnosis, ObstructionReason
from plane_matroids.core.validation import is_prime, valid_tolerances

logger = logging.getLogger(__name__)

#===============================================#
#----------------- Element Maps ----------------#
#===============================================#

class ElementMap(Mapping):
    """Read-only map from element names to points of a single plane."""

    def __init__(self, entries:Dict[str, ProjPoint]):
        self._entries = dict(entries)
        specs = {point.spec for point in self._entries.values()}
        if len(specs) > 1:
            raise ValueError("field mismatch: " + " and ".join(sorted(str(s) for s in specs)))

    @property
    def spec(self) -> Optional[FieldSpec]:
        return next(iter(self._entries.values())).spec if self._entries else None

    def __getitem__(self, name:str) -> ProjPoint:
        return self._entries[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def replace(self, name:str, point:ProjPoint) -> "ElementMap":
        entries = dict(self._entries)
        entries[name] = point
        return ElementMap(entries)

    def __repr__(self) -> str:
        return "ElementMap(" + ", ".join(f"{k}: {v}" for k, v in self._entries.items()) + ")"

#===============================================#
#------------------ Embeddings -----------------#
#===============================================#

def _cyclic(m:int) -> Tuple[GroupSpec, LineMatroid]:
    G = GroupSpec((m,))
    return G, build_group_matroid(G, (0,), (1,))

def psi_prime(p:int) -> Tuple[LineMatroid, ElementMap, FieldSpec]:
    """
    M(Z_p, 0, 1) in the plane over GF(p).

    a_i -> [0,i,1], b_i -> [1,i,1], c_0 -> [1,0,0], c_1 -> [1,1,0]. The triple
    {a_i, b_j, c_k} is collinear iff j = i + k.

    Raises
    ------
    ValueError
        "not prime" for composite p, "Mac Lane needs p >= 3" for p = 2.
    """
    if p == 2:
        raise ValueError("Mac Lane needs p >= 3: M(Z_2, 0, 1) has r = 2")
    spec = make_field(p)
    _, M = _cyclic(p)
    entries = {}
    for i in range(p):
        entries[a_name(i)] = ProjPoint.from_values(spec, 0, i, 1)
        entries[b_name(i)] = ProjPoint.from_values(spec, 1, i, 1)
    entries[c_name(0)] = ProjPoint.from_values(spec, 1, 0, 0)
    entries[c_name(1)] = ProjPoint.from_values(spec, 1, 1, 0)
    return M, ElementMap(entries), spec

def psi_subgroup(m:int, p:int, t:int) -> Tuple[LineMatroid, ElementMap, FieldSpec]:
    """
    M(Z_m, 0, 1) in the plane over GF(p^t) through the cyclic subgroup of order m.

    With g the first element of order m and phi(i) = g^i: a_i -> [phi(i),0,1],
    b_i -> [0,-phi(i),1], c_0 -> [1,1,0], c_1 -> [1,g,0].

    Parameters
    ----------
    m : int
        Subgroup order, at least 3 and dividing p^t - 1.
    p : int
        Characteristic.
    t : int
        Extension degree.

    Returns
    -------
    tuple of (LineMatroid, ElementMap, FieldSpec)
        The matroid, the map and the field of the plane.
    """
    if m < 3:
        raise ValueError(f"subgroup order must be at least 3: {m}")
    spec = make_field(p, t)
    if (spec.q - 1) % m:
        raise ValueError(f"subgroup does not exist: {m} does not divide {spec.q - 1}")
    g = element_of_order(spec, m)
    _, M = _cyclic(m)
    entries = {}
    for i in range(m):
        phi = g ** i
        entries[a_name(i)] = ProjPoint.from_values(spec, phi, 0, 1)
        entries[b_name(i)] = ProjPoint.from_values(spec, 0, -phi, 1)
    entries[c_name(0)] = ProjPoint.from_values(spec, 1, 1, 0)
    entries[c_name(1)] = ProjPoint.from_values(spec, 1, g, 0)
    return M, ElementMap(entries), spec

def verify_embedding(M:LineMatroid, img:Mapping, spec:FieldSpec) -> Diagnosis:
    """True iff the plane restricted to the image of img is exactly M."""
    diagnosis = is_embedding(M, img, spec)
    logger.info("embedding of %r into the plane over %s: %s", M, spec, "ok" if diagnosis else diagnosis.reason)
    return diagnosis

def obstruction(M:LineMatroid, q:int) -> Optional[ObstructionReason]:
    """
    A counting reason why M cannot embed in a plane of order q, or None.

    None only means that neither bound applies, not that M embeds.
    """
    if q < 2:
        raise ValueError(f"plane order must be at least 2: {q}")
    if max_flat_size(M) > q + 1:
        return "line too long"
    if len(M) > q * q + q + 1:
        return "ground set too large"
    return None

def _prime_powers(max_q:int) -> Iterator[Tuple[int, int, int]]:
    for q in range(2, max_q + 1):
        for p in range(2, q + 1):
            if not is_prime(p):
                continue
            t, power = 0, 1
            while power < q:
                power *= p
                t += 1
            if power == q:
                yield q, p, t
                break

def ziegler_table(max_q:int=27) -> pd.DataFrame:
    """
    For every prime power 3 <= q <= max_q, the family members that embed in the
    plane of order q together with their non-orientability.

    Rows come from psi_prime(q) for prime q and psi_subgroup(q - 1, p, t) when
    q - 1 >= 3. The obstructed_below column lists the counting obstruction against
    each smaller plane of the same characteristic.
    """
    rows = []
    for q, p, t in _prime_powers(max_q):
        if q < 3:
            continue
        candidates = []
        if t == 1:
            candidates.append((f"psi_prime({p})", psi_prime(p), p))
        if q - 1 >= 3:
            candidates.append((f"psi_subgroup({q - 1},{p},{t})", psi_subgroup(q - 1, p, t), q - 1))
        for construction, (M, img, spec), m in candidates:
            verdict = criterion_group(GroupSpec((m,)), (0,), (1,))
            below = []
            for k in range(1, t):
                reason = obstruction(M, p ** k)
                below.append(f"q={p ** k}: {reason or 'none'}")
            rows.append({
                "q": q,
                "p": p,
                "t": t,
                "matroid": f"M(Z{m},0,1)",
                "construction": construction,
                "elements": len(M),
                "embeds": bool(verify_embedding(M, img, spec)),
                "r": verdict.r,
                "orientable": verdict.orientable,
                "obstructed_below": "; ".join(below),
            })
    return pd.DataFrame(rows)

#===============================================#
#-------------- Complex Evidence ---------------#
#===============================================#

@dataclass(frozen=True)
class ComplexCheckResult:
    ok: bool
    worst_dependent: float
    smallest_independent: float
    witness: Tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok

def complex_points(n:int) -> Dict[str, np.ndarray]:
    """The map of psi_subgroup over the complex numbers with phi(i) = exp(2 pi i k / n)."""
    phi = np.exp(2j * np.pi * np.arange(n) / n)
    points = {}
    for i in range(n):
        points[a_name(i)] = np.array([phi[i], 0, 1], dtype=complex)
        points[b_name(i)] = np.array([0, -phi[i], 1], dtype=complex)
    points[c_name(0)] = np.array([1, 1, 0], dtype=complex)
    points[c_name(1)] = np.array([1, phi[1], 0], dtype=complex)
    return points

def check_complex_map(
    M:LineMatroid,
    points:Mapping,
    tol_zero:float=COMPLEX_TOL_ZERO,
    tol_nonzero:float=COMPLEX_TOL_NONZERO,
) -> ComplexCheckResult:
    """
    Compare |det| of unit-normalized coordinate rows with the dependent triples of M.

    Parameters
    ----------
    M : LineMatroid
        The matroid.
    points : mapping of element name to complex 3-vector
        Must be total on M.
    tol_zero : float
        Dependent triples must have |det| below this.
    tol_nonzero : float
        Independent triples must have |det| above this.

    Returns
    -------
    ComplexCheckResult
        Truthy iff every triple passes; carries the largest dependent residual, the
        smallest independent determinant and the first failing triple.
    """
    if not valid_tolerances(tol_zero, tol_nonzero):
        raise ValueError(f"tolerances must satisfy 0 < tol_zero < tol_nonzero: {tol_zero}, {tol_nonzero}")
    missing = [e for e in M.elements if e not in points]
    if missing:
        raise ValueError(f"map is not total: missing {missing[0]}")

    rows = np.array([points[e] for e in M.elements], dtype=complex)
    rows = rows / np.linalg.norm(rows, axis=1, keepdims=True)
    triples = list(combinations(range(len(M)), 3))
    dets = np.abs(np.linalg.det(rows[np.array(triples)]))
    dependent = np.array([
        frozenset(M.elements[k] for k in triple) in M.dependent_set for triple in triples
    ])

    worst_dependent = float(dets[dependent].max()) if dependent.any() else 0.0
    smallest_independent = float(dets[~dependent].min()) if (~dependent).any() else float("inf")
    failing = np.flatnonzero(np.where(dependent, dets >= tol_zero, dets <= tol_nonzero))
    witness = ()
    if failing.size:
        witness = tuple(M.elements[k] for k in triples[failing[0]])
        logger.info("complex check fails at %s", witness)
    return ComplexCheckResult(
        ok=not failing.size,
        worst_dependent=worst_dependent,
        smallest_independent=smallest_independent,
        witness=witness,
    )

def complex_check(
    n:int, tol_zero:float=COMPLEX_TOL_ZERO, tol_nonzero:float=COMPLEX_TOL_NONZERO
) -> ComplexCheckResult:
    """Numerical evidence that M(Z_n, 0, 1) is representable over the complex numbers."""
    if not 3 <= n <= COMPLEX_MAX_N:
        raise ValueError(f"n must lie in [3, {COMPLEX_MAX_N}]: {n}")
    if not valid_tolerances(tol_zero, tol_nonzero):
        raise ValueError(f"tolerances must satisfy 0 < tol_zero < tol_nonzero: {tol_zero}, {tol_nonzero}")
    _, M = _cyclic(n)
    return check_complex_map(M, complex_points(n), tol_zero, tol_nonzero)
