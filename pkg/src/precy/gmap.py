"""
The maps g_(l) from Hochschild chains to l-output cochains.

g_(l)(x) is the circular diagram with l copies of alpha around a disc. Each
alpha takes one external input (the input of its sector) and has two outputs.
Neighbouring outputs are multiplied by mu to give the l external outputs, and
the chain letter a0 is multiplied into the first of them:

    outputs:  O_1 = a0 * i_1 * r_l,  O_j = i_j * r_{j-1}
    inputs:   one per sector, the input of alpha_j

For a chain a0[t^r] the input of one alpha is fed with the constant t^r, so
its sector is empty; the result is summed over the position of that sector.

The diagram is evaluated term by term with ``glue`` and ``trace``, so every
sign is a Koszul sign of the letter model. The disc carries one orientation
sign, the same for every chain, so g_(l) stays linear and a chain map. With
alpha(t) = 1 (x) 1 it gives g_(l)(t^a)(t; ...; t) = t^a (x) 1 (x) ... (x) 1.
"""

from itertools import product
from typing import Any, Dict, List, Sequence, Tuple

import structlog

from src.cochains import HigherCochain
from src.cochains.differential import product_sign
from src.cochains.koszul import Key, Word, glue, key_of, trace
from src.loop_algebra import LoopAlgebra
from src.precy.chains import HochschildChain
from src.precy.structure import PreCYStructure
from src.utils.exceptions import UnsafeTruncationError

logger = structlog.get_logger(__name__)

Vertex = Tuple[Word, Any, int]
"""(letters, alpha coefficient, sign exponent of any pre-gluing)"""

ORIENTATION = 1
"""Sign exponent of the disc"""


def _mu_word(a: int, b: int) -> Word:
    return [(True, a + b), (False, a), (False, b)]


def _alpha_vertices(alpha: HigherCochain, k_max: int) -> List[Tuple[int, Vertex]]:
    """Terms alpha(t^k) = t^i (x) t^r with the input in sector 1, keyed by k."""
    out: List[Tuple[int, Vertex]] = []
    for k in range(1, k_max + 1):
        for i in range(k):
            r = k - 1 - i
            c = alpha.coefficient(((i, r), ((k,), ())))
            if c != alpha.ring.zero:
                out.append((k, ([(True, i), (False, k), (True, r)], c, 0)))
    return out


def _constant_vertices(alpha: HigherCochain, r: int, n: int) -> List[Vertex]:
    """alpha with its input fed by the constant t^r."""
    out: List[Vertex] = []
    for i in range(r):
        c = alpha.coefficient(((i, r - 1 - i), ((r,), ())))
        if c == alpha.ring.zero:
            continue
        word, s = glue([(True, i), (False, r), (True, r - 1 - i)], 1, [(True, r)], 0, n)
        out.append((word, c, s))
    return out


def _circle(words: Sequence[Word], a0: int, algebra: LoopAlgebra) -> Tuple[Key, int]:
    """
    Close a ring of alpha vertices with mu vertices.

    Returns:
        (key, sign exponent) of the resulting term

    Raises:
        TruncationOverflow: If an output exceeds D
    """
    n, m = algebra.n, algebra.m
    W: Word = list(words[0])
    q = len(W) - 1
    sign = 0
    for V in words[1:]:
        a, b = V[0][1], W[q][1]
        algebra.require(a + b)
        cur, s1 = glue(_mu_word(a, b), 2, W, q, n)
        W, s2 = glue(cur, 1, V, 0, n)
        sign += product_sign(a, m) + s1 + s2
        q = len(V) - 1

    a, b = words[0][0][1], W[q][1]
    algebra.require(a + b)
    cur, s1 = glue(_mu_word(a, b), 2, W, q, n)
    W, s2 = trace(cur, 1, 2, n)
    sign += product_sign(a, m) + s1 + s2

    o = W[0][1]
    algebra.require(a0 + o)
    cur, s1 = glue(_mu_word(a0, o), 2, W, 0, n)
    W, s2 = glue(cur, 1, [(True, a0)], 0, n)
    sign += product_sign(a0, m) + s1 + s2
    return key_of(W), sign % 2


def _evaluate(
    algebra: LoopAlgebra,
    ell: int,
    options: Sequence[Sequence[Tuple[int, Vertex]]],
    a0: int,
    input_bound: int,
) -> HigherCochain:
    ring = algebra.ring
    out = HigherCochain.zero(algebra, ell)
    for choice in product(*options):
        if sum(k for k, _ in choice) > input_bound:
            continue
        coeff = ring.one
        sign = 0
        for _, (_, c, s) in choice:
            coeff = coeff * c
            sign += s
        key, s = _circle([v[0] for _, v in choice], a0, algebra)
        out.add_term(key, ring.sign(ORIENTATION + sign + s) * coeff)
    return out


def g_map_basis(
    structure: PreCYStructure, ell: int, a0: int, bar: Tuple[int, ...], input_bound: int
) -> HigherCochain:
    """
    g_(l) on one basis chain a0 or a0[t^r].

    Args:
        structure: Sphere structure providing alpha
        ell: Number of outputs
        a0: Exponent of the chain letter a0
        bar: () or (r,)
        input_bound: Total input window of the result

    Returns:
        The l-output cochain g_(l)(a0[bar])
    """
    algebra = structure.algebra
    n = algebra.n
    alpha = structure.alpha
    k_max = max([input_bound - ell + 1 + len(bar), *bar])
    if structure.input_bound is not None and k_max > structure.input_bound:
        raise UnsafeTruncationError(
            f"alpha was derived up to input t^{structure.input_bound}, g_({ell}) needs t^{k_max}",
            details={"alpha_bound": structure.input_bound, "needed": k_max},
        )
    filled = _alpha_vertices(alpha, max(k_max, 0))

    if not bar:
        return _evaluate(algebra, ell, [filled] * ell, a0, input_bound)

    (r,) = bar
    constant = [(0, v) for v in _constant_vertices(alpha, r, n)]
    result = HigherCochain.zero(algebra, ell)
    for s in range(ell):
        options = [filled] * ell
        options[s] = constant
        result = result + _evaluate(algebra, ell, options, a0, input_bound)
    return result


def g_map(
    structure: PreCYStructure, ell: int, x: HochschildChain, input_bound: int
) -> HigherCochain:
    """
    Evaluate g_(l) on a Hochschild chain of length at most one.

    Args:
        structure: Sphere structure providing alpha
        ell: Number of outputs (>= 1)
        x: Chain combination of a0 and a0[t^r] terms
        input_bound: Total input window E of the result

    Returns:
        HigherCochain with l outputs

    Raises:
        ValueError: If ell < 1 or x has bar length above one
        UnsafeTruncationError: If alpha is not known far enough
        TruncationOverflow: If an output exceeds D

    Example:
        ```python
        psi = PreCYStructure.sphere(LoopAlgebra(n=2, D=10), input_bound=4)
        g = g_map(psi, 2, HochschildChain.basis(psi.algebra, 3), input_bound=2)
        g.evaluate([[1], [1]])  # {(3, 0): 1}
        ```
    """
    if ell < 1:
        raise ValueError(f"Number of outputs must be >= 1, got {ell}")
    if x.algebra != structure.algebra:
        raise ValueError("Chain and structure live over different algebras")
    out = HigherCochain.zero(structure.algebra, ell)
    cache: Dict[Tuple[int, Tuple[int, ...]], HigherCochain] = {}
    for (a0, bar), v in sorted(x.terms.items()):
        if len(bar) > 1:
            raise ValueError(f"g_map handles chains of length <= 1, got {len(bar)}")
        key = (a0, bar)
        if key not in cache:
            cache[key] = g_map_basis(structure, ell, a0, bar, input_bound)
        out = out + cache[key].scale(v)
    logger.debug("g_map", ell=ell, chain=x.to_str(), terms=len(out), input_bound=input_bound)
    return out


def one_input_per_sector(c: HigherCochain) -> bool:
    """True iff every term has exactly one input in each sector."""
    return all(len(s) == 1 for key in c.terms for s in key[1])
