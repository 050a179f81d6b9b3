import re
from typing import Iterable, Sequence

_CYCLE_NOTATION = re.compile(r"^\s*(\(\s*(\d+(\s+\d+)*)?\s*\)\s*)*$")
_GROUP_NOTATION = re.compile(r"^Z\d+(x\s*Z\d+)*$")

def is_prime(p:int) -> bool:
    """Deterministic trial division; inputs here are tiny."""
    if p < 2:
        return False
    divisor = 2
    while divisor * divisor <= p:
        if p % divisor == 0:
            return False
        divisor += 1
    return True

def valid_element_name(name:str) -> bool:
    return isinstance(name, str) and len(name) > 0 and name.isascii() and name.isprintable()

def valid_bijection(images:Sequence[int]) -> bool:

    n = len(images)
    return sorted(images) == list(range(1, n + 1))

def is_derangement(images:Sequence[int]) -> bool:

    return valid_bijection(images) and all(image != i for i, image in enumerate(images, start=1))

def valid_cycle_notation(text:str) -> bool:
    return bool(_CYCLE_NOTATION.match(text))

def valid_group_notation(text:str) -> bool:
    return bool(_GROUP_NOTATION.match(text.replace(" ", "")))

def valid_cyclic_orders(orders:Iterable[int]) -> bool:

    orders = list(orders)
    return len(orders) > 0 and all(isinstance(d, int) and d >= 2 for d in orders)

def valid_tolerances(tol_zero:float, tol_nonzero:float) -> bool:

    return 0 < tol_zero < tol_nonzero
