"""
Non-vanishing of the sphere's first obstruction in characteristic two.

Over a field of characteristic two and for even n, the weight-(2n - 1)
cochain phi_(n+1), the rotation average of g_(n+1)(t^2[t]), is [mu, -]-closed
and isotypic. It extends, level by level, to a deformation phi with psi + phi
Maurer-Cartan. Each step solves

    [mu, phi_(l)] = -(psi + phi_(<l)) * (psi + phi_(<l))  at level l - 1

which is linear because the right-hand side is [mu, -]-closed.

The certificate that psi + phi is not gauge equivalent to psi comes in two
routes that must agree:

- direct: [psi, lambda] = phi modulo F^{2n} + L^{n+1} has no solution
- reduced: g_(n)(t^3) has no isotypic representative modulo [mu, -] on the
  profile with one input t per sector; the bookkeeping sums f_i(j) over the
  coefficients of gamma reproduce the two equations that contradict each
  other when 2 = 0
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import structlog

from src.cochains import HigherCochain, SliceBasis, differential, isotypic_check, symmetrize
from src.cochains.koszul import Key
from src.linalg import Infeasible, Ring, Solution, SolveResult, SparseMatrix, solve
from src.necklace import ConvolutionElement, mc_defect, project
from src.obstruction.gauge import lowering
from src.obstruction.twisted import TwistedAlgebra, Window, stack_matrices
from src.precy import HochschildChain, PreCYStructure, g_map
from src.utils.exceptions import (
    ConventionError,
    InconclusiveWindowError,
    UnsafeTruncationError,
)

logger = structlog.get_logger(__name__)


def _require_even_char2(twisted: TwistedAlgebra) -> None:
    if twisted.ring.characteristic != 2:
        raise ValueError(f"The extension needs characteristic 2, got {twisted.ring.tag}")
    if twisted.algebra.n % 2:
        raise ValueError(f"The extension needs even n, got n={twisted.algebra.n}")


def seed_weight(n: int) -> int:
    return 2 * n - 1


# ============================================================================
# EXTENSION
# ============================================================================


def char2_seed(structure: PreCYStructure, input_bound: int) -> HigherCochain:
    """
    phi_(n+1), the rotation average of g_(n+1)(t^2[t]).

    g_(n+1)(t^2[t]) keeps the chain letter t^2 on the first output, so it is
    not isotypic; the necklace product only sees orbit representatives. Its
    rotations are cohomologous to it, so wherever n + 1 is invertible the
    average has the same class.

    Args:
        structure: Sphere structure providing alpha
        input_bound: Input window of the result

    Returns:
        Isotypic cochain with n + 1 outputs, weight 2n - 1 and convolution
        degree -1

    Raises:
        FieldRefusedError: If n + 1 is not invertible in the coefficient field
        ConventionError: If the result is not [mu, -]-closed, not isotypic or
            has the wrong bidegree
    """
    algebra = structure.algebra
    n = algebra.n
    image = g_map(structure, n + 1, HochschildChain.basis(algebra, 2, (1,)), input_bound)
    seed = symmetrize(image)
    if seed.is_zero():
        raise InconclusiveWindowError(
            f"g_(n+1)(t^2[t]) vanishes in the window E={input_bound}",
            details={"input_bound": input_bound},
        )
    if seed.weight() != seed_weight(n) or seed.conv_degree() != -1:
        raise ConventionError(
            f"Seed has weight {seed.weight()} and degree {seed.conv_degree()}, "
            f"expected {seed_weight(n)} and -1"
        )
    if not isotypic_check(seed):
        raise ConventionError("The averaged seed is not isotypic", details={"n": n})
    if not differential(seed, input_bound).is_zero():
        logger.error("char2_seed_not_closed", n=n, ring=algebra.ring.tag)
        raise ConventionError("The averaged g_(n+1)(t^2[t]) is not [mu, -]-closed")
    logger.info(
        "char2_seed", n=n, ring=algebra.ring.tag, terms=len(seed), image_terms=len(image)
    )
    return seed


@dataclass
class Char2Component:
    """One solved component phi_(l) of a fixed weight."""

    level: int
    weight: int
    terms: int

    def to_dict(self) -> Dict[str, Any]:
        return {"level": self.level, "weight": self.weight, "terms": self.terms}


@dataclass
class Char2Deformation:
    """The deformation phi, with psi + phi Maurer-Cartan in the window."""

    phi: ConvolutionElement
    seed: HigherCochain
    ell_max: int
    window: Window
    components: List[Char2Component] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ell_max": self.ell_max,
            "window": self.window.to_dict(),
            "components": [c.to_dict() for c in self.components],
            "phi": self.phi.to_dict(),
        }


def _solve_level(
    hochschild: TwistedAlgebra, defect: ConvolutionElement, ell: int
) -> List[Tuple[int, ConvolutionElement]]:
    """Solve [mu, x] = -defect at level ell - 1, one weight at a time."""
    n = hochschild.algebra.n
    level = ell - 1
    solved = []
    for w in sorted(defect.weights()):
        rhs = -project(defect, weights=[w])
        if not isotypic_check(rhs.part(ell)):
            raise ConventionError(
                f"Maurer-Cartan defect at level {level}, weight {w} is not isotypic",
                details={"level": level, "weight": w},
            )
        if not seed_weight(n) <= w - 1 <= 2 * ell - 3:
            raise ConventionError(
                f"Component of weight {w - 1} on {ell} outputs is outside [{seed_weight(n)}, {2 * ell - 3}]",
                details={"level": level, "weight": w - 1},
            )
        source = hochschild.basis(conv_degree=-1, weight=w - 1, levels=[level])
        target = hochschild.basis(conv_degree=-2, weight=w, levels=[level])
        result = hochschild.solve_d(source, target, rhs)
        if isinstance(result, Infeasible):
            logger.error("char2_extension_infeasible", level=level, weight=w)
            raise ConventionError(
                f"[mu, x] = defect has no solution at level {level}, weight {w}",
                details={"level": level, "weight": w, "certificate": result.to_dict()},
            )
        solved.append((w - 1, source.combine(result.x)))
    return solved


def extend_char2_deformation(twisted: TwistedAlgebra, ell_max: int) -> Char2Deformation:
    """
    Extend phi_(n+1) to a deformation through ell_max outputs.

    Args:
        twisted: Sphere twisted algebra over F_2 with n even
        ell_max: Largest number of outputs of a component

    Returns:
        Char2Deformation; (psi + phi) * (psi + phi) vanishes at levels
        < ell_max and weights <= weight_max in the input window

    Raises:
        ValueError: If the ring is not F_2, n is odd or ell_max <= n
        InconclusiveWindowError: If the window misses the seed weight or levels
        UnsafeTruncationError: If a component lowers input totals where the
            window needs it exact
        ConventionError: If a solving step or the final check fails

    Example:
        ```python
        H = LoopAlgebra(n=2, D=10, ring=Ring.prime(2))
        h = TwistedAlgebra.sphere(H, Window(input_bound=4, weight_max=6, level_max=4))
        min(extend_char2_deformation(h, ell_max=5).phi.weights())  # 3
        ```
    """
    _require_even_char2(twisted)
    n = twisted.algebra.n
    window = twisted.window
    E, W = window.input_bound, window.weight_max
    if ell_max <= n:
        raise ValueError(f"ell_max must exceed n={n}, got {ell_max}")
    if W < seed_weight(n):
        raise InconclusiveWindowError(
            f"weight_max={W} is below the seed weight {seed_weight(n)}",
            details={"weight_max": W},
        )
    if ell_max - 1 > window.level_max:
        raise InconclusiveWindowError(
            f"Level {ell_max - 1} is outside the window (level_max={window.level_max})",
            details={"ell_max": ell_max, "level_max": window.level_max},
        )

    seed = char2_seed(twisted.structure, E)
    phi = ConvolutionElement.from_cochain(seed)
    deformation = Char2Deformation(phi=phi, seed=seed, ell_max=ell_max, window=window)
    deformation.components.append(Char2Component(n, seed_weight(n), len(seed)))
    hochschild = TwistedAlgebra.associative(twisted.algebra, window)

    for ell in range(n + 2, ell_max + 1):
        twisted.require_alpha(phi.max_output(), E)
        defect = mc_defect(twisted.psi + phi, E, weights=range(W + 1), levels=[ell - 1])
        for w, x in _solve_level(hochschild, defect, ell):
            if x.is_zero():
                continue
            if lowering(x) > 0 and (ell - 1) + n <= ell_max - 1:
                raise UnsafeTruncationError(
                    f"Component on {ell} outputs lowers input totals; E={E} is not exact",
                    details={"ell": ell, "weight": w, "lowering": lowering(x)},
                )
            phi = phi + x
            deformation.components.append(Char2Component(ell - 1, w, len(x)))
        logger.debug("char2_level_solved", ell=ell, defect_terms=len(defect))

    twisted.require_alpha(phi.max_output(), E)
    leftover = mc_defect(twisted.psi + phi, E, weights=range(W + 1), levels=range(ell_max))
    if not leftover.is_zero():
        logger.error("char2_extension_not_mc", ell_max=ell_max)
        raise ConventionError(
            "psi + phi is not Maurer-Cartan in the window",
            details={"bidegrees": [b.to_dict() for b in leftover.bidegrees()]},
        )
    deformation.phi = phi
    logger.info(
        "char2_deformation",
        n=n,
        ell_max=ell_max,
        components=len(deformation.components),
        weights=sorted(phi.weights()),
    )
    return deformation


# ============================================================================
# F-BOOKKEEPING
# ============================================================================


def _one_empty_sector(key: Key) -> Optional[int]:
    """Index (0-based) of the empty sector when every other sector is (1,)."""
    sectors = key[1]
    empty = [s for s, inputs in enumerate(sectors) if inputs == ()]
    if len(empty) != 1:
        return None
    if any(inputs != (1,) for s, inputs in enumerate(sectors) if s != empty[0]):
        return None
    return empty[0]


def f_matches(key: Key, i: int, j: int, n: int, offset: int = 0) -> bool:
    """Whether key contributes to f_i(j): sector i (1-based, shifted) empty, first n/2 outputs sum to j."""
    empty = _one_empty_sector(key)
    if empty is None or empty != (i - 1 + offset) % n:
        return False
    return sum(key[0][: n // 2]) == j


def f_value(gamma: HigherCochain, i: int, j: int, offset: int = 0) -> Any:
    """
    f_i(j): the sum of the coefficients of gamma(t; ...; empty; ...; t), with
    the empty sector in position i, over outputs whose first n/2 exponents
    total j.

    Example:
        ```python
        gamma = HigherCochain(H, 2, {((1, 0), ((), (1,))): 1, ((0, 1), ((), (1,))): 1})
        f_value(gamma, 1, 1)  # 1
        ```
    """
    n = gamma.algebra.n
    ring = gamma.ring
    total = ring.zero
    for key, v in gamma.terms.items():
        if f_matches(key, i, j, n, offset):
            total = total + v
    return total


@dataclass
class FEquation:
    """A linear equation sum c * f_i(j) = value on the coefficients of gamma."""

    name: str
    terms: List[Tuple[int, int, int]]
    """(i, j, c) triples"""

    value: int
    derivable: bool = False
    """The left-hand side is a combination of the system's equations"""

    implied: bool = False
    """The same combination has the stated value"""

    def functional(self, keys: Sequence[Key], n: int, ring: Ring, offset: int = 0) -> List[Any]:
        vec = [ring.zero] * len(keys)
        for col, key in enumerate(keys):
            for i, j, c in self.terms:
                if f_matches(key, i, j, n, offset):
                    vec[col] = vec[col] + ring.coerce(c)
        return vec

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "lhs": " + ".join(
                f"{c}*f_{i}({j})" if c != 1 else f"f_{i}({j})" for i, j, c in self.terms
            ),
            "value": self.value,
            "derivable": self.derivable,
            "implied": self.implied,
        }


def displayed_equations(n: int) -> List[FEquation]:
    """The two equations on f_{n/2} and f_n."""
    half = n // 2
    first = FEquation(
        "outer_exponents",
        [(half, 0, 1), (n, 0, 1), (half, 2, 1), (n, 2, 1)],
        value=1,
    )
    second = FEquation(
        "balanced_exponents",
        [(half, 0, 1), (n, 0, 1), (half, 1, 2), (n, 1, 2), (half, 2, 1), (n, 2, 1)],
        value=0,
    )
    return [first, second]


# ============================================================================
# CERTIFICATE
# ============================================================================


@dataclass
class ReducedRoute:
    """c = beta + [mu, gamma] on the one-input-per-sector profile."""

    result: SolveResult
    rows: int
    beta_columns: int
    gamma_columns: int
    equations: List[FEquation] = field(default_factory=list)
    offset: Optional[int] = None
    """Sector relabelling under which both equations are derivable"""

    contradiction: bool = False
    """Both equations derivable, their left-hand sides cancel and the values do not"""

    @property
    def infeasible(self) -> bool:
        return isinstance(self.result, Infeasible)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": "infeasible" if self.infeasible else "feasible",
            "rows": self.rows,
            "beta_columns": self.beta_columns,
            "gamma_columns": self.gamma_columns,
            "sector_offset": self.offset,
            "contradiction": self.contradiction,
            "equations": [e.to_dict() for e in self.equations],
            "result": self.result.to_dict(),
        }


@dataclass
class Char2Certificate:
    """Both routes for the class of phi modulo F^{2n} + L^{n+1}."""

    direct: SolveResult
    unknowns: int
    equations: int
    reduced: ReducedRoute
    homogeneous: bool = True

    @property
    def nonvanishing(self) -> bool:
        return isinstance(self.direct, Infeasible)

    @property
    def status(self) -> str:
        return "nonzero" if self.nonvanishing else "vanishes"

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "status": self.status,
            "homogeneous": self.homogeneous,
            "direct": {
                "unknowns": self.unknowns,
                "equations": self.equations,
                "result": self.direct.to_dict(),
            },
            "reduced": self.reduced.to_dict(),
        }
        key = "certificate" if self.nonvanishing else "witness"
        payload[key] = self.direct.to_dict()
        return payload


def direct_route(
    twisted: TwistedAlgebra, phi: ConvolutionElement, homogeneous: bool = True
) -> Tuple[SolveResult, int, int]:
    """
    Solve [psi, lambda] = phi modulo F^{2n} + L^{n+1}.

    With homogeneous=False lambda ranges over weights 1..2n-2 and each
    weight w must hit the weight-(w + 1) part of phi.

    Returns:
        (result, unknowns, equations)
    """
    n = twisted.algebra.n
    top = seed_weight(n)
    levels = range(n + 1)
    weights = [top - 1] if homogeneous else list(range(1, top))
    sources = [twisted.basis(conv_degree=0, weight=w, levels=levels) for w in weights]
    targets = [twisted.basis(conv_degree=-1, weight=w + 1, levels=levels) for w in weights]
    blocks: List[List[Optional[SparseMatrix]]] = []
    rhs: List[Any] = []
    for r, target in enumerate(targets):
        row: List[Optional[SparseMatrix]] = [None] * len(sources)
        row[r] = twisted.d_matrix(sources[r], target)
        blocks.append(row)
        rhs.extend(target.coordinates(project(phi, weights=[target.weight], levels=levels)))
    M = stack_matrices(
        blocks, [len(t) for t in targets], [len(s) for s in sources], twisted.ring
    )
    result = solve(M, rhs)
    logger.info(
        "char2_direct_route",
        n=n,
        homogeneous=homogeneous,
        unknowns=M.cols,
        equations=M.rows,
        feasible=isinstance(result, Solution),
    )
    return result, M.cols, M.rows


def _profile_rows(keys: Sequence[Key]) -> List[Key]:
    return [k for k in keys if all(inputs == (1,) for inputs in k[1])]


def _column(values: Dict[Key, Any], index: Dict[Key, int]) -> Dict[int, Any]:
    return {index[k]: v for k, v in values.items() if k in index}


def reduced_route(structure: PreCYStructure) -> ReducedRoute:
    """
    Look for c = beta + [mu, gamma] with c = g_(n)(t^3) on the profile
    ((1,), ..., (1,)), beta isotypic and gamma on one empty sector.

    Every equation of this system is an equation of the full cyclic
    representative search, so infeasibility here is infeasibility there.
    """
    algebra = structure.algebra
    ring = algebra.ring
    n = algebra.n
    c = g_map(structure, n, HochschildChain.basis(algebra, 3), input_bound=n)
    degree, weight = c.map_degree(), c.weight()

    standard = SliceBasis.build(algebra, n, degree, weight, n)
    rows = _profile_rows(standard.keys)
    index = {k: i for i, k in enumerate(rows)}
    symmetric = SliceBasis.build(algebra, n, degree, weight, n, isotypic=True)
    betas = [
        symmetric.element(j)
        for j, key in enumerate(symmetric.keys)
        if all(inputs == (1,) for inputs in key[1])
    ]
    gamma_slice = SliceBasis.build(algebra, n, degree + 1, weight - 1, n)
    gamma_keys = [k for k in gamma_slice.keys if _one_empty_sector(k) is not None]

    entries: Dict[Tuple[int, int], Any] = {}
    for j, beta in enumerate(betas):
        for i, v in _column(beta.terms, index).items():
            entries[(i, j)] = v
    for j, key in enumerate(gamma_keys):
        image = differential(HigherCochain.basis(algebra, key), n)
        for i, v in _column(image.terms, index).items():
            entries[(i, len(betas) + j)] = v
    M = SparseMatrix(len(rows), len(betas) + len(gamma_keys), entries, ring)
    b = [c.coefficient(k) for k in rows]
    route = ReducedRoute(
        result=solve(M, b),
        rows=M.rows,
        beta_columns=len(betas),
        gamma_columns=len(gamma_keys),
    )
    _derive_equations(route, M, b, gamma_keys, n, ring)
    logger.info(
        "char2_reduced_route",
        n=n,
        ring=ring.tag,
        rows=route.rows,
        infeasible=route.infeasible,
        sector_offset=route.offset,
        contradiction=route.contradiction,
    )
    return route


def _derive_equations(
    route: ReducedRoute,
    M: SparseMatrix,
    b: Sequence[Any],
    gamma_keys: Sequence[Key],
    n: int,
    ring: Ring,
) -> None:
    """
    Find y with y [B | G] = [0 | functional] for each displayed equation.

    The value y . b is checked by solving against the augmented matrix.
    """
    augmented = stack_matrices(
        [[M, SparseMatrix(M.rows, 1, {(i, 0): v for i, v in enumerate(b) if v != ring.zero}, ring)]],
        [M.rows],
        [M.cols, 1],
        ring,
    ).transpose()
    plain = M.transpose()
    zeros = [ring.zero] * route.beta_columns

    for offset in range(n):
        equations = displayed_equations(n)
        for eq in equations:
            functional = eq.functional(gamma_keys, n, ring, offset)
            eq.derivable = isinstance(solve(plain, zeros + functional), Solution)
            eq.implied = isinstance(
                solve(augmented, zeros + functional + [ring.coerce(eq.value)]), Solution
            )
        if offset == 0:
            route.equations = equations
        if all(eq.derivable and eq.implied for eq in equations):
            route.offset = offset
            route.equations = equations
            break

    if route.offset is None:
        return
    first, second = route.equations
    f1 = first.functional(gamma_keys, n, ring, route.offset)
    f2 = second.functional(gamma_keys, n, ring, route.offset)
    route.contradiction = all(u == v for u, v in zip(f1, f2)) and ring.coerce(
        first.value - second.value
    ) != ring.zero


def char2_nonvanishing_certificate(
    twisted: TwistedAlgebra, phi: ConvolutionElement, homogeneous: bool = True
) -> Char2Certificate:
    """
    Certify that phi is not gauge trivial modulo F^{2n} + L^{n+1}.

    Over Q the same function reports the solution, i.e. the class vanishes.

    Args:
        twisted: Sphere twisted algebra with n even
        phi: Deformation with weight-(2n - 1) part phi_(n+1)
        homogeneous: Restrict lambda to weight 2n - 2

    Returns:
        Char2Certificate with both routes

    Raises:
        ValueError: If n is odd
        InconclusiveWindowError: If the window misses level n
        ConventionError: If the routes disagree, or the direct system is
            feasible in characteristic two

    Example:
        ```python
        deformation = extend_char2_deformation(h, ell_max=5)
        cert = char2_nonvanishing_certificate(h, deformation.phi)
        cert.status                  # "nonzero"
        cert.reduced.contradiction   # True
        ```
    """
    n = twisted.algebra.n
    if n % 2:
        raise ValueError(f"The certificate needs even n, got n={n}")
    if twisted.window.level_max < n:
        raise InconclusiveWindowError(
            f"Level {n} is outside the window (level_max={twisted.window.level_max})",
            details={"level": n, "level_max": twisted.window.level_max},
        )
    if project(phi, weights=[seed_weight(n)]).is_zero():
        raise ValueError(f"phi has no weight-{seed_weight(n)} part")

    direct, unknowns, equations = direct_route(twisted, phi, homogeneous)
    reduced = reduced_route(twisted.structure)
    certificate = Char2Certificate(direct, unknowns, equations, reduced, homogeneous)

    if isinstance(direct, Infeasible) != reduced.infeasible:
        logger.error(
            "char2_routes_disagree",
            direct_infeasible=isinstance(direct, Infeasible),
            reduced_infeasible=reduced.infeasible,
        )
        raise ConventionError(
            "Direct and reduced routes disagree",
            details={"direct": direct.to_dict(), "reduced": reduced.to_dict()},
        )
    if twisted.ring.characteristic == 2 and not certificate.nonvanishing:
        raise ConventionError(
            f"phi is gauge trivial modulo F^{2 * n} + L^{n + 1} over {twisted.ring.tag}",
            details={"witness": direct.to_dict()},
        )
    logger.info("char2_certificate", n=n, ring=twisted.ring.tag, status=certificate.status)
    return certificate
