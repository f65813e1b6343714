# services/tables.py

"""
Transcribed reference data: the essential signatures of the four
fundamental weights and the inequality list describing the cone they
generate. Rows are kept in their published order; decomposition and the
table cross-checks rely on it.

Exponent rows use the monomial syntax ``p1+2p12`` (``0`` is the zero row),
inequalities use ``p2+2p4 <= k1+3k2``.
"""

import hashlib
import re
from typing import Dict, List, Sequence, Tuple

from exceptions import TableMismatchError
from services.root_system import DomWeight
from services.signatures import Signature

N_P = 12
N_K = 4

FUNDAMENTAL_TABLES: Dict[int, Tuple[str, ...]] = {
    1: ("0", "p12", "p8", "p7", "p6", "p3", "p1", "p1+p12"),
    2: (
        "0", "p11", "p10", "p8", "p7", "p6", "p5", "p3", "p2", "p1",
        "p8+p11", "p6+p11", "p3+p11", "p2+p11", "p1+p11", "p6+p10", "p3+p10", "p1+p10", "p6+p8", "p5+p8",
        "p1+p8", "p1+p7", "p2+p6", "p1+p6", "p1+p5", "p1+p3", "p1+p2", "2p1",
    ),
    3: ("0", "p10", "p9", "p8", "p3", "p2", "p1", "p3+p10"),
    4: ("0", "p6", "p5", "p4", "p3", "p2", "p1", "p2+p6"),
}

CONE_INEQUALITIES: Tuple[str, ...] = (
    "p12 <= k1",
    "p11 <= k2",
    "p9 <= k3",
    "p4 <= k4",
    "p7+p11+p12 <= k1+k2",
    "p7+p8+p9+p10+p12 <= k1+k2+k3",
    "p7+p9+p10+p11+p12 <= k1+k2+k3",
    "p9+p10+p11 <= k2+k3",
    "p4+p5+p6+p7+p12 <= k1+k2+k4",
    "p4+p5+p7+p11+p12 <= k1+k2+k4",
    "p4+p5+p11 <= k2+k4",
    "p2+p4+p5+p9+p10 <= k2+k3+k4",
    "p4+p5+p9+p10+p11 <= k2+k3+k4",
    "p3+p4+p5+p6+p7+p9+p12 <= k1+k2+k3+k4",
    "p2+p3+p4+p5+p7+p9+p12 <= k1+k2+k3+k4",
    "p2+p3+p4+p7+p8+p9+p12 <= k1+k2+k3+k4",
    "p2+p4+p7+p8+p9+p10+p12 <= k1+k2+k3+k4",
    "p4+p5+p7+p9+p10+p11+p12 <= k1+k2+k3+k4",
    "p2+p4+p5+p7+p9+p10+p12 <= k1+k2+k3+k4",
    "p1+p3+p4+p5+p6+p7+p8+p9+p11 <= k1+2k2+k3+k4",
    "p1+p2+p3+p4+p5+p7+p8+p9+p11 <= k1+2k2+k3+k4",
    "p3+p4+p5+p6+p7+p8+p9+p11+p12 <= k1+2k2+k3+k4",
    "p2+p3+p4+p5+p7+p8+p9+p11+p12 <= k1+2k2+k3+k4",
    "p1+p2+p4+p5+p7+p8+p9+p10+p11 <= k1+2k2+k3+k4",
    "p2+p4+p5+p7+p8+p9+p10+p11+p12 <= k1+2k2+k3+k4",
    "p1+p4+p5+p6+p7+p8+p9+p10+p11 <= k1+2k2+k3+k4",
    "p4+p5+p6+p7+p8+p9+p10+p11+p12 <= k1+2k2+k3+k4",
    "p2+p3+p4+p5+p7+p8+2p9+p10+p11+p12 <= k1+2k2+2k3+k4",
    "p3+p4+p5+p6+p7+p8+2p9+p10+p11+p12 <= k1+2k2+2k3+k4",
    "p1+p2+p3+p4+p5+p7+p8+2p9+p10+p11 <= k1+2k2+2k3+k4",
    "p1+p3+p4+p5+p6+p7+p8+2p9+p10+p11 <= k1+2k2+2k3+k4",
    "p2+p4+p5+p7+p8+2p9+2p10+p11+p12 <= k1+2k2+2k3+k4",
    "p2+p3+2p4+p5+p6+p7+p8+p9+p11+p12 <= k1+2k2+k3+2k4",
    "p2+2p4+p5+p6+p7+p8+p9+p10+p11+p12 <= k1+2k2+k3+2k4",
    "p1+p2+p3+2p4+p5+p6+p7+p8+p9+p11 <= k1+2k2+k3+2k4",
    "p1+p2+2p4+p5+p6+p7+p8+p9+p10+p11 <= k1+2k2+k3+2k4",
    "p2+p3+2p4+2p5+p6+p7+p9+p11+p12 <= k1+2k2+k3+2k4",
    "p2+2p4+2p5+p6+p7+p9+p10+p11+p12 <= k1+2k2+k3+2k4",
    "p3+p4+p5+p6+2p7+p8+p9+p11+2p12 <= 2k1+2k2+k3+k4",
    "p4+p5+p6+2p7+p8+p9+p10+p11+2p12 <= 2k1+2k2+k3+k4",
    "p2+p3+p4+p5+2p7+p8+p9+p11+2p12 <= 2k1+2k2+k3+k4",
    "p2+p4+p5+2p7+p8+p9+p10+p11+2p12 <= 2k1+2k2+k3+k4",
    "p1+p2+p3+2p4+p5+p6+p7+p8+2p9+p10+p11 <= k1+2k2+2k3+2k4",
    "p2+p3+2p4+p5+p6+p7+p8+2p9+p10+p11+p12 <= k1+2k2+2k3+2k4",
    "p2+p3+2p4+2p5+p6+p7+2p9+p10+p11+p12 <= k1+2k2+2k3+2k4",
    "p2+p3+2p4+p5+p6+2p7+p8+p9+p11+2p12 <= 2k1+2k2+k3+2k4",
    "p2+2p4+p5+p6+2p7+p8+p9+p10+p11+2p12 <= 2k1+2k2+k3+2k4",
    "p2+p3+2p4+2p5+p6+2p7+p9+p11+2p12 <= 2k1+2k2+k3+2k4",
    "p2+2p4+2p5+p6+2p7+p9+p10+p11+2p12 <= 2k1+2k2+k3+2k4",
    "p2+p3+p4+p5+2p7+p8+2p9+p10+p11+2p12 <= 2k1+2k2+2k3+k4",
    "p3+p4+p5+p6+2p7+p8+2p9+p10+p11+2p12 <= 2k1+2k2+2k3+k4",
    "p2+p4+p5+2p7+p8+2p9+2p10+p11+2p12 <= 2k1+2k2+2k3+k4",
    "p2+p3+2p4+p5+p6+2p7+p8+2p9+p10+p11+2p12 <= 2k1+2k2+2k3+2k4",
    "p2+p3+2p4+2p5+p6+2p7+2p9+p10+p11+2p12 <= 2k1+2k2+2k3+2k4",
    "p2+p3+2p4+2p5+p6+p7+p8+p9+2p11+p12 <= k1+3k2+k3+2k4",
    "p2+2p4+2p5+p6+p7+p8+p9+p10+2p11+p12 <= k1+3k2+k3+2k4",
    "p1+p2+p3+2p4+2p5+p6+p7+p8+p9+2p11 <= k1+3k2+k3+2k4",
    "p1+p2+2p4+2p5+p6+p7+p8+p9+p10+2p11 <= k1+3k2+k3+2k4",
    "p1+p2+2p4+2p5+p6+p7+p8+2p9+2p10+2p11 <= k1+3k2+2k3+2k4",
    "p2+2p4+2p5+p6+p7+p8+2p9+2p10+2p11+p12 <= k1+3k2+2k3+2k4",
    "p1+p2+2p4+2p5+p6+2p7+p8+p9+p10+2p11+p12 <= 2k1+3k2+k3+2k4",
    "p1+p2+p3+2p4+2p5+p6+2p7+p8+p9+2p11+p12 <= 2k1+3k2+k3+2k4",
    "p1+p2+2p4+2p5+p6+2p7+p8+2p9+2p10+2p11+p12 <= 2k1+3k2+2k3+2k4",
    "p2+p3+2p4+2p5+p6+p7+p8+3p9+2p10+2p11+p12 <= k1+3k2+3k3+2k4",
    "p1+p2+p3+2p4+2p5+p6+p7+p8+3p9+2p10+2p11 <= k1+3k2+3k3+2k4",
    "p2+p3+2p4+2p5+p6+3p7+p8+p9+2p11+3p12 <= 3k1+3k2+k3+2k4",
    "p2+2p4+2p5+p6+3p7+p8+p9+p10+2p11+3p12 <= 3k1+3k2+k3+2k4",
    "p2+p3+2p4+2p5+p6+3p7+p8+3p9+2p10+2p11+3p12 <= 3k1+3k2+3k3+2k4",
    "p1+p2+p3+2p4+2p5+p6+2p7+p8+3p9+2p10+2p11+p12 <= 2k1+3k2+3k3+2k4",
    "p2+2p4+2p5+p6+3p7+p8+2p9+2p10+2p11+3p12 <= 3k1+3k2+2k3+2k4",
)

_TERM = re.compile(r"^(\d*)([pk])(\d+)$")


def parse_linear_form(text: str, variable: str, size: int) -> Tuple[int, ...]:
    """Coefficients of a sum like ``p2+2p4`` over ``variable``1..``size``; ``0`` is the empty sum."""
    coefficients = [0] * size
    text = text.replace(" ", "")
    if text == "0":
        return tuple(coefficients)
    for term in text.split("+"):
        match = _TERM.match(term)
        if not match or match.group(2) != variable:
            raise ValueError(f"Cannot parse term {term!r} of {text!r}")
        index = int(match.group(3))
        if not 1 <= index <= size:
            raise ValueError(f"Index out of range in {term!r}")
        coefficients[index - 1] += int(match.group(1) or 1)
    return tuple(coefficients)


def fundamental_table(i: int) -> List[Signature]:
    """Transcribed essential signatures of omega_i, in published order."""
    hw = DomWeight.fundamental(i)
    return [Signature(hw, parse_linear_form(row, "p", N_P)) for row in FUNDAMENTAL_TABLES[i]]


def fundamental_tables() -> Dict[int, List[Signature]]:
    return {i: fundamental_table(i) for i in FUNDAMENTAL_TABLES}


def check_against_table(i: int, computed: Sequence[Signature]) -> None:
    """Raise TableMismatchError when computed essential signatures of omega_i differ from the table."""
    expected = {s.p for s in fundamental_table(i)}
    actual = {s.p for s in computed}
    missing = sorted(expected - actual)
    unexpected = sorted(actual - expected)
    if missing or unexpected:
        raise TableMismatchError(i, [list(p) for p in missing], [list(p) for p in unexpected])


def table_digest(rows: Sequence[Sequence[int]]) -> str:
    """sha256 over a canonical text form of integer rows."""
    text = "\n".join(",".join(str(x) for x in row) for row in rows)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def inequality_digest() -> str:
    return hashlib.sha256("\n".join(CONE_INEQUALITIES).encode("utf-8")).hexdigest()
