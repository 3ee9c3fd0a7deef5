"""
The Hochschild differential [mu, -] on higher cochains.

For a cochain c the differential is

    d(c) = D_out(c) - (-1)^{delta(c)} D_in(c)

where D_in plugs the product into each input of c (splitting t^e into
t^a, t^b with a, b >= 1) and D_out plugs each output of c into one input
of the product, the other input being a new input t^v. Every term is a
single gluing of basis words, so all signs come from ``koszul.glue``.

The total input exponent never decreases under d, so truncating to terms
with total input exponent <= E is a quotient complex; d therefore needs an
explicit input bound.
"""

from typing import Any, Dict

import structlog

from src.cochains.cochain import HigherCochain
from src.cochains.koszul import Key, glue, input_total, key_of, shifted_parity, word_of
from src.loop_algebra import LoopAlgebra
from src.utils.exceptions import TruncationOverflow, UnsafeTruncationError

logger = structlog.get_logger(__name__)


def product_key(x: int, y: int) -> Key:
    return ((x + y,), ((x, y),))


def product_sign(x: int, m: int) -> int:
    """Sign exponent of the product term t^x (x) t^y -> t^{x+y}."""
    return (x * m) % 2


def product_cochain(algebra: LoopAlgebra) -> HigherCochain:
    """
    The product mu as an l = 1 cochain.

    Holds every term (t^x, t^y) -> t^{x+y} with x + y <= D, including unit
    inputs, and is flagged ``complete_through = D``.
    """
    m = algebra.m
    ring = algebra.ring
    terms: Dict[Key, Any] = {}
    for s in range(algebra.D + 1):
        for x in range(s + 1):
            terms[product_key(x, s - x)] = ring.sign(product_sign(x, m))
    return HigherCochain(algebra, 1, terms, complete_through=algebra.D, coerce=False)


def check_output_room(c: HigherCochain, input_bound: int) -> None:
    """
    Make sure D_out(c) stays below the truncation bound.

    Raises:
        UnsafeTruncationError: If some output plus the remaining input
            budget exceeds D
    """
    D = c.algebra.D
    for key in c.terms:
        room = input_bound - input_total(key)
        if room >= 1 and max(key[0]) + room > D:
            logger.error(
                "differential_unsafe",
                max_output=max(key[0]),
                room=room,
                bound=D,
            )
            raise UnsafeTruncationError(
                f"Output t^{max(key[0])} with input budget {room} exceeds truncation bound {D}",
                details={"output": max(key[0]), "room": room, "bound": D},
            )


def differential(c: HigherCochain, input_bound: int) -> HigherCochain:
    """
    Apply [mu, -] to a cochain within an input window.

    Args:
        c: Cochain (normalized)
        input_bound: Largest total input exponent kept in the result

    Returns:
        d(c) truncated to total input exponent <= input_bound

    Raises:
        UnsafeTruncationError: If D is too small for the window
        TruncationOverflow: If an output would exceed D
    """
    algebra = c.algebra
    n, m, D = algebra.n, algebra.m, algebra.D
    ring = c.ring
    check_output_room(c, input_bound)
    out = HigherCochain.zero(algebra, c.ell)

    for key, coeff in c.terms.items():
        total_in = input_total(key)
        if total_in > input_bound:
            continue
        word = word_of(key)
        delta = shifted_parity(key, n)

        # D_in: the product feeds one input
        for p, (is_out, e) in enumerate(word):
            if is_out or e < 2:
                continue
            for a in range(1, e):
                mu_word = [(True, e), (False, a), (False, e - a)]
                res, s = glue(word, p, mu_word, 0, n)
                sign = s + product_sign(a, m) + delta + 1
                out.add_term(key_of(res), ring.sign(sign) * coeff)

        # D_out: one output feeds the product, next to a new input t^v
        room = input_bound - total_in
        if room < 1:
            continue
        outputs = [q for q, (is_out, _) in enumerate(word) if is_out]
        for j, q in enumerate(outputs):
            o = word[q][1]
            start = 0 if j == 0 else 3
            for v in range(1, room + 1):
                if o + v > D:
                    raise TruncationOverflow(
                        f"Output t^{o + v} exceeds truncation bound {D}",
                        details={"exponent": o + v, "bound": D},
                    )
                left = [(True, o + v), (False, o), (False, v)]
                res, s = glue(left, 1, word, q, n, start=start)
                out.add_term(key_of(res), ring.sign(s + product_sign(o, m)) * coeff)

                right = [(True, o + v), (False, v), (False, o)]
                res, s = glue(right, 2, word, q, n, start=start)
                out.add_term(key_of(res), ring.sign(s + product_sign(v, m)) * coeff)

    return out
