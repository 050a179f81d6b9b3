import re
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union
from plane_matroids.core.defaults import MAX_PLANE_ORDER
from plane_matroids.core.gf import FieldElement, FieldSpec, parse_element

Triple = Tuple[FieldElement, FieldElement, FieldElement]
Value = Union[FieldElement, int]

_BRACKETED = re.compile(r"^\s*[\[<](.*)[\]>]\s*$")

def _normalize(values:Sequence[FieldElement]) -> Triple:
    """Scale a nonzero triple so that its first nonzero entry is 1."""
    assert len(values) == 3
    for value in values:
        if not value.is_zero():
            scale = value.inverse()
            return tuple(v * scale for v in values)
    raise ValueError("all coordinates are zero")

def _coerce_triple(spec:FieldSpec, values:Sequence[Value]) -> Tuple[FieldElement, ...]:
    if len(values) != 3:
        raise ValueError(f"expected three coordinates, got {len(values)}")
    coerced = []
    for value in values:
        if isinstance(value, int):
            value = spec.scalar(value)
        elif value.spec != spec:
            raise ValueError(f"field mismatch: {value.spec} and {spec}")
        coerced.append(value)
    return tuple(coerced)

def _cross(u:Triple, v:Triple) -> Tuple[FieldElement, ...]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )

def _dot(u:Triple, v:Triple) -> FieldElement:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]

#===============================================#
#--------------- Points and Lines --------------#
#===============================================#

@dataclass(frozen=True)
class ProjPoint:
    """A point [x,y,z] of the plane, stored with its first nonzero coordinate equal to 1."""
    coords: Triple

    def __post_init__(self):
        if all(c.is_zero() for c in self.coords):
            raise ValueError("all coordinates are zero")
        lead = next(c for c in self.coords if not c.is_zero())
        if lead != lead.spec.one:
            raise ValueError("point is not normalized; use ProjPoint.from_values")

    @classmethod
    def from_values(cls, spec:FieldSpec, x:Value, y:Value, z:Value) -> "ProjPoint":
        return cls(_normalize(_coerce_triple(spec, (x, y, z))))

    @property
    def spec(self) -> FieldSpec:
        return self.coords[0].spec

    def __str__(self) -> str:
        return "[" + ",".join(str(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class ProjLine:
    """The line <a,b,c> = {[x,y,z] : ax + by + cz = 0}, normalized like ProjPoint."""
    coeffs: Triple

    def __post_init__(self):
        if all(c.is_zero() for c in self.coeffs):
            raise ValueError("all coefficients are zero")
        lead = next(c for c in self.coeffs if not c.is_zero())
        if lead != lead.spec.one:
            raise ValueError("line is not normalized; use ProjLine.from_values")

    @classmethod
    def from_values(cls, spec:FieldSpec, a:Value, b:Value, c:Value) -> "ProjLine":
        return cls(_normalize(_coerce_triple(spec, (a, b, c))))

    @property
    def spec(self) -> FieldSpec:
        return self.coeffs[0].spec

    def __str__(self) -> str:
        return "<" + ",".join(str(c) for c in self.coeffs) + ">"

#===============================================#
#------------------ Incidence ------------------#
#===============================================#

def _same_field(*specs:FieldSpec) -> FieldSpec:
    first = specs[0]
    for spec in specs[1:]:
        if spec != first:
            raise ValueError(f"field mismatch: {first} and {spec}")
    return first

def determinant(rows:Sequence[Triple]) -> FieldElement:
    """3x3 determinant over the field, by cofactor expansion along the first row."""
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

def collinear(P1:ProjPoint, P2:ProjPoint, P3:ProjPoint) -> bool:
    """
    Decide whether three points lie on a common line.

    Parameters
    ----------
    P1, P2, P3 : ProjPoint
        Points of the same plane.

    Returns
    -------
    bool
        True iff the determinant of the coordinate rows vanishes. Coinciding
        points are trivially collinear.
    """
    _same_field(P1.spec, P2.spec, P3.spec)
    return determinant((P1.coords, P2.coords, P3.coords)).is_zero()

def line_through(P1:ProjPoint, P2:ProjPoint) -> ProjLine:
    """The unique line joining two distinct points (normalized cross product)."""
    spec = _same_field(P1.spec, P2.spec)
    if P1 == P2:
        raise ValueError(f"points coincide: {P1}")
    return ProjLine.from_values(spec, *_cross(P1.coords, P2.coords))

def meet(L1:ProjLine, L2:ProjLine) -> ProjPoint:
    """The unique common point of two distinct lines."""
    spec = _same_field(L1.spec, L2.spec)
    if L1 == L2:
        raise ValueError(f"lines coincide: {L1}")
    return ProjPoint.from_values(spec, *_cross(L1.coeffs, L2.coeffs))

def incident(P:ProjPoint, L:ProjLine) -> bool:
    _same_field(P.spec, L.spec)
    return _dot(P.coords, L.coeffs).is_zero()

def points_on(L:ProjLine, points:Iterable[ProjPoint]) -> List[ProjPoint]:
    return [P for P in points if incident(P, L)]

#===============================================#
#------------------ The Plane ------------------#
#===============================================#

def _class_representatives(spec:FieldSpec) -> List[Tuple[FieldElement, ...]]:
    """z = 1 first (lex by (x, y)), then z = 0 with y = 1 (by x), then [1,0,0]."""
    zero, one = spec.zero, spec.one
    triples = [(x, y, one) for x in spec.elements() for y in spec.elements()]
    triples += [(x, one, zero) for x in spec.elements()]
    triples.append((one, zero, zero))
    return triples

def enumerate_plane(spec:FieldSpec) -> Tuple[List[ProjPoint], List[ProjLine]]:
    """
    All points and lines of the projective plane over the given field.

    Parameters
    ----------
    spec : FieldSpec
        Field of order q <= MAX_PLANE_ORDER.

    Returns
    -------
    tuple of (list of ProjPoint, list of ProjLine)
        q^2 + q + 1 canonical points and as many canonical lines, both in the
        deterministic class order of _class_representatives.
    """
    if spec.q > MAX_PLANE_ORDER:
        raise ValueError(f"plane too large: order {spec.q} exceeds {MAX_PLANE_ORDER}")
    representatives = _class_representatives(spec)
    points = [ProjPoint.from_values(spec, *triple) for triple in representatives]
    lines = [ProjLine.from_values(spec, *triple) for triple in representatives]
    return points, lines

def parse_point(spec:FieldSpec, text:str) -> ProjPoint:
    """Read "[x,y,z]" with field elements rendered as by gf.render_element."""
    match = _BRACKETED.match(text)
    if match is None:
        raise ValueError(f"not a point: {text!r}")
    parts = match.group(1).split(",")
    if len(parts) != 3:
        raise ValueError(f"not a point: {text!r}")
    return ProjPoint.from_values(spec, *(parse_element(spec, part) for part in parts))
