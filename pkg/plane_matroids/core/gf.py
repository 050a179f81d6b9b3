import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Optional, Tuple, Union
from plane_matroids.core.defaults import MAX_FIELD_DEGREE
from plane_matroids.core.types import ArithOp
from plane_matroids.core.validation import is_prime

logger = logging.getLogger(__name__)

Coefficients = Tuple[int, ...]

_TERM = re.compile(r"^(\d*)(w(?:\^(\d+))?)?$")

#===============================================#
#------------- Polynomials over Z_p ------------#
#===============================================#

def _poly_remainder(dividend:Coefficients, divisor:Coefficients, p:int) -> list:
    """Remainder of dividend by a monic divisor, coefficients constant term first."""
    assert divisor[-1] == 1
    remainder = [c % p for c in dividend]
    degree = len(divisor) - 1
    for top in range(len(remainder) - 1, degree - 1, -1):
        lead = remainder[top]
        if lead:
            shift = top - degree
            for j, d in enumerate(divisor):
                remainder[shift + j] = (remainder[shift + j] - lead * d) % p
    return remainder[:degree] if degree > 0 else []

def _monic_polynomials(p:int, degree:int) -> Iterator[Coefficients]:
    """Monic polynomials of the given degree in lexicographic order, constant term compared first."""
    for lower in product(range(p), repeat=degree):
        yield lower + (1,)

def is_irreducible(p:int, coeffs:Coefficients) -> bool:
    """
    Decide irreducibility of a monic polynomial over Z_p by trial division.

    For degree ≤ 3 this is exactly the absence of roots; degree 4 additionally
    tries every monic quadratic, and so on up to half the degree.

    Parameters
    ----------
    p : int
        Prime characteristic.
    coeffs : tuple of int
        Coefficients, constant term first; the last entry must be 1.

    Returns
    -------
    bool
        True iff no monic polynomial of degree 1..deg/2 divides it.
    """
    degree = len(coeffs) - 1
    if degree < 1 or coeffs[-1] != 1:
        return False
    for factor_degree in range(1, degree // 2 + 1):
        for factor in _monic_polynomials(p, factor_degree):
            if not any(_poly_remainder(coeffs, factor, p)):
                return False
    return True

#===============================================#
#---------------- Field Objects ----------------#
#===============================================#

@dataclass(frozen=True)
class FieldSpec:
    """GF(p^t) presented as Z_p[x] / (modulus)."""
    p: int
    t: int
    modulus: Coefficients

    @property
    def q(self) -> int:
        return self.p ** self.t

    @property
    def is_prime_field(self) -> bool:
        return self.t == 1

    @property
    def zero(self) -> "FieldElement":
        return FieldElement((0,) * self.t, self)

    @property
    def one(self) -> "FieldElement":
        return self.scalar(1)

    @property
    def generator(self) -> "FieldElement":
        """The residue w of x; only meaningful for proper extensions."""
        if self.t < 2:
            raise ValueError("prime field has no polynomial generator")
        return FieldElement((0, 1) + (0,) * (self.t - 2), self)

    def scalar(self, value:int) -> "FieldElement":
        """The prime-subfield element value mod p."""
        return FieldElement((value % self.p,) + (0,) * (self.t - 1), self)

    def element(self, index:int) -> "FieldElement":
        """The element at the given position of the canonical enumeration."""
        if not 0 <= index < self.q:
            raise ValueError(f"element index out of range: {index}")
        coeffs = []
        for _ in range(self.t):
            index, digit = divmod(index, self.p)
            coeffs.append(digit)
        return FieldElement(tuple(coeffs), self)

    def elements(self) -> Iterator["FieldElement"]:
        """All q elements, coefficient sequences in lexicographic order, constant term fastest."""
        for index in range(self.q):
            yield self.element(index)

    def nonzero_elements(self) -> Iterator["FieldElement"]:
        for index in range(1, self.q):
            yield self.element(index)

    def __str__(self) -> str:
        return f"GF({self.q})"


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(p^t) as a reduced polynomial residue (constant term first)."""
    coeffs: Coefficients
    spec: FieldSpec

    def __post_init__(self):
        if len(self.coeffs) != self.spec.t:
            raise ValueError(f"expected {self.spec.t} coefficients, got {len(self.coeffs)}")
        if any(not 0 <= c < self.spec.p for c in self.coeffs):
            raise ValueError(f"coefficients must lie in [0, {self.spec.p})")

    @property
    def index(self) -> int:
        """Position in the canonical enumeration."""
        return sum(c * self.spec.p ** k for k, c in enumerate(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _coerce(self, other:Union["FieldElement", int]) -> "FieldElement":
        if isinstance(other, int):
            return self.spec.scalar(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.spec != self.spec:
            raise ValueError(f"field mismatch: {self.spec} and {other.spec}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.spec.p
        return FieldElement(tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)), self.spec)

    __radd__ = __add__

    def __neg__(self):
        p = self.spec.p
        return FieldElement(tuple((-a) % p for a in self.coeffs), self.spec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.spec.p
        raw = [0] * (2 * self.spec.t - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    raw[i + j] += a * b
        if self.spec.t == 1:
            return FieldElement((raw[0] % p,), self.spec)
        return FieldElement(tuple(_poly_remainder(tuple(raw), self.spec.modulus, p)), self.spec)

    __rmul__ = __mul__

    def __pow__(self, exponent:int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = self.spec.one, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return self ** (self.spec.q - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __str__(self) -> str:
        return render_element(self)

    def __repr__(self) -> str:
        return f"FieldElement({render_element(self)!r}, {self.spec})"

#===============================================#
#--------------- Field Operations --------------#
#===============================================#

@lru_cache(maxsize=None)
def make_field(p:int, t:int=1) -> FieldSpec:
    """
    Construct GF(p^t) with a reproducible modulus.

    Parameters
    ----------
    p : int
        Characteristic; must be prime.
    t : int
        Extension degree, 1 <= t <= MAX_FIELD_DEGREE.

    Returns
    -------
    FieldSpec
        The field presented modulo the lexicographically smallest monic irreducible
        polynomial of degree t (constant term compared first). For t = 1 the
        modulus is x.

    Raises
    ------
    ValueError
        If p is not prime or t is out of range.
    """
    if not is_prime(p):
        raise ValueError(f"not prime: {p}")
    if not 1 <= t <= MAX_FIELD_DEGREE:
        raise ValueError(f"extension degree must lie in [1, {MAX_FIELD_DEGREE}]: {t}")

    for candidate in _monic_polynomials(p, t):
        if is_irreducible(p, candidate):
            logger.debug("GF(%d^%d) modulus %s", p, t, candidate)
            return FieldSpec(p=p, t=t, modulus=candidate)

    raise RuntimeError(f"no monic irreducible polynomial of degree {t} over Z_{p}")

def arith(op:ArithOp, x:FieldElement, y:Optional[FieldElement]=None) -> FieldElement:
    """
    Field arithmetic by operation name.

    Parameters
    ----------
    op : str in ["add", "neg", "mul", "inv"]
        The operation to apply.
    x : FieldElement
        First operand.
    y : FieldElement, optional
        Second operand, required for add and mul.

    Returns
    -------
    FieldElement
        The result, reduced modulo (p, modulus).

    Raises
    ------
    ValueError
        "zero has no inverse" for inv(0), "field mismatch" for operands of different fields.
    """
    if op in ("add", "mul"):
        if y is None:
            raise ValueError(f"{op} needs two operands")
        if y.spec != x.spec:
            raise ValueError(f"field mismatch: {x.spec} and {y.spec}")
        return x + y if op == "add" else x * y
    if op == "neg":
        return -x
    if op == "inv":
        if x.is_zero():
            raise ValueError("zero has no inverse")
        return x.inverse()
    raise ValueError(f"unknown operation: {op}")

def _divisors(n:int) -> list:
    return [d for d in range(1, n + 1) if n % d == 0]

def multiplicative_order(x:FieldElement) -> int:
    """
    Smallest k >= 1 with x^k = 1.

    Parameters
    ----------
    x : FieldElement
        A nonzero element.

    Returns
    -------
    int
        The order of x in the multiplicative group; always divides q - 1.
    """
    if x.is_zero():
        raise ValueError("zero has no order")
    one = x.spec.one
    for k in _divisors(x.spec.q - 1):
        if x ** k == one:
            return k
    raise RuntimeError(f"{x!r} has no order dividing {x.spec.q - 1}")

def element_of_order(spec:FieldSpec, m:int) -> FieldElement:
    """
    The first element, in canonical enumeration order, of multiplicative order exactly m.

    Parameters
    ----------
    spec : FieldSpec
        The field.
    m : int
        Requested order; must divide q - 1.

    Returns
    -------
    FieldElement
        Generator of the cyclic subgroup of order m.
    """
    if m < 1 or (spec.q - 1) % m != 0:
        raise ValueError(f"order unavailable: {m} does not divide {spec.q - 1}")
    for x in spec.nonzero_elements():
        if multiplicative_order(x) == m:
            return x
    raise RuntimeError(f"{spec} has no element of order {m}")

#===============================================#
#------------------ Rendering ------------------#
#===============================================#

def render_element(x:FieldElement) -> str:
    """Decimal for prime fields, a polynomial in w otherwise (e.g. "w^2+2w+1")."""
    if x.spec.is_prime_field:
        return str(x.coeffs[0])
    terms = []
    for degree in range(x.spec.t - 1, -1, -1):
        c = x.coeffs[degree]
        if not c:
            continue
        if degree == 0:
            terms.append(str(c))
        else:
            power = "w" if degree == 1 else f"w^{degree}"
            terms.append(power if c == 1 else f"{c}{power}")
    return "+".join(terms) if terms else "0"

def parse_element(spec:FieldSpec, text:str) -> FieldElement:
    """Inverse of render_element."""
    text = text.replace(" ", "")
    if spec.is_prime_field:
        if not text.isdigit() or int(text) >= spec.p:
            raise ValueError(f"not an element of {spec}: {text!r}")
        return spec.scalar(int(text))

    coeffs = [0] * spec.t
    for term in text.split("+"):
        match = _TERM.match(term)
        if not term or match is None:
            raise ValueError(f"not an element of {spec}: {text!r}")
        digits, power, exponent = match.groups()
        if not digits and not power:
            raise ValueError(f"not an element of {spec}: {text!r}")
        degree = 0 if not power else (int(exponent) if exponent else 1)
        if degree >= spec.t:
            raise ValueError(f"degree {degree} too large for {spec}")
        coeffs[degree] = (coeffs[degree] + (int(digits) if digits else 1)) % spec.p
    return FieldElement(tuple(coeffs), spec)
