"""
The cyclic action on l-output cochains.

tau moves the first block (the first output together with sector 1) to the
end of the word with its Koszul sign. The rotation of the tangent complex is
rotate = (-1)^{(n-1)(l-1)} tau, and a cochain is isotypic exactly when it is
tau-invariant.

Isotypic cochains are spanned by orbit sums: for a basis term T with period s
(the least s with tau^s T = +-T), the orbit sum is sum_{k<s} tau^k T when
tau^s T = +T, and no isotypic element involves T when tau^s T = -T (except in
characteristic 2, where the sign is invisible and the orbit sum is kept). The
coordinate of an isotypic cochain along an orbit is its coefficient on the
orbit representative (the smallest key), which works over every field.
"""

from typing import Any, Dict, List, Optional, Tuple

import structlog

from src.cochains.cochain import HigherCochain
from src.cochains.koszul import Key, tau_term
from src.utils.exceptions import FieldRefusedError

logger = structlog.get_logger(__name__)


def tau(c: HigherCochain) -> HigherCochain:
    n = c.algebra.n
    ring = c.ring
    out: Dict[Key, Any] = {}
    for key, v in c.terms.items():
        new_key, s = tau_term(key, n)
        out[new_key] = ring.sign(s) * v
    return HigherCochain(c.algebra, c.ell, out, coerce=False)


def tau_power(c: HigherCochain, k: int) -> HigherCochain:
    for _ in range(k % c.ell):
        c = tau(c)
    return c


def rotate(c: HigherCochain) -> HigherCochain:
    """
    The generator of Z/l acting on CH_(l).

    Returns:
        (-1)^{(n-1)(l-1)} tau(c); rotate^l is the identity
    """
    twist = ((c.algebra.n - 1) * (c.ell - 1)) % 2
    return tau(c).scale(c.ring.sign(twist))


def isotypic_check(c: HigherCochain) -> bool:
    """True iff rotate(c) = (-1)^{(n-1)(l-1)} c, i.e. tau(c) = c."""
    if c.ell == 1:
        return True
    return tau(c) == c


def symmetrize(c: HigherCochain) -> HigherCochain:
    """
    Average over the tau-orbit, (1/l) sum_k tau^k c.

    Raises:
        FieldRefusedError: If l is not invertible in the coefficient field
    """
    ring = c.ring
    if not ring.is_unit(c.ell):
        logger.error("symmetrize_refused", ell=c.ell, ring=ring.tag)
        raise FieldRefusedError(
            f"Cannot symmetrize over {ring.tag}: {c.ell} is not invertible",
            details={"ell": c.ell, "ring": ring.tag},
        )
    if c.ell == 1:
        return c.copy()
    total = c
    current = c
    for _ in range(c.ell - 1):
        current = tau(current)
        total = total + current
    return total.scale(ring.coerce(1) / ring.coerce(c.ell))


def norm_map(c: HigherCochain) -> HigherCochain:
    """sum_{k<l} tau^k c, without averaging."""
    total = c
    current = c
    for _ in range(c.ell - 1):
        current = tau(current)
        total = total + current
    return total


# ============================================================================
# ORBITS
# ============================================================================


def orbit(key: Key, n: int) -> Tuple[List[Tuple[Key, int]], int]:
    """
    The tau-orbit of a basis term.

    Returns:
        (members, closing sign): members[k] = (tau^k key, sign exponent) for
        k below the period, and the sign exponent of tau^period key
        relative to key
    """
    members = [(key, 0)]
    current, sign = key, 0
    while True:
        current, s = tau_term(current, n)
        sign = (sign + s) % 2
        if current == key:
            return members, sign
        members.append((current, sign))


def orbit_representative(key: Key, n: int) -> Key:
    members, _ = orbit(key, n)
    return min(k for k, _ in members)


def orbit_sum_terms(key: Key, n: int, characteristic: int = 0) -> Optional[Dict[Key, int]]:
    """
    Orbit sum normalized to coefficient +1 on its representative.

    Args:
        key: Any term of the orbit
        n: Calabi-Yau dimension
        characteristic: Characteristic of the coefficient field

    Returns:
        {key: sign exponent} over the orbit, or None if the orbit carries
        no isotypic element
    """
    rep = orbit_representative(key, n)
    members, closing = orbit(rep, n)
    if closing and characteristic != 2:
        return None
    return {k: s for k, s in members}


def orbit_sum(algebra, key: Key) -> Optional[HigherCochain]:
    terms = orbit_sum_terms(key, algebra.n, algebra.ring.characteristic)
    if terms is None:
        return None
    ring = algebra.ring
    return HigherCochain(algebra, len(key[0]), {k: ring.sign(s) for k, s in terms.items()}, coerce=False)


def isotypic_coordinates(c: HigherCochain) -> Dict[Key, Any]:
    """Coefficients of an isotypic cochain on its orbit representatives."""
    n = c.algebra.n
    coords: Dict[Key, Any] = {}
    for key, v in c.terms.items():
        rep = orbit_representative(key, n)
        if rep == key:
            coords[key] = v
    return coords
