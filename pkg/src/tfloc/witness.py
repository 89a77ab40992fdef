"""Witness functions: atom combinations annihilating all node constraints.

The scaled combination

    f(x) = sum_{(j,k) in S} a_{j,k} Phi_{j,k}(2 R2 x)              (no parity)
    f(x) = sum_{(j,k) in S} a_{j,k} Phi_{j,k}(R2 (2|x| - R1)),
           f(-x) = +- f(x)                                         (parity)

lives on [-R1, R1], has L2 norm 1/sqrt(2 R2) (parity: 1/sqrt(R2)) for unit
coefficients, and is asked to kill f^(r)(lambda) = 0 for |lambda| <= R1 and
(F f)^(k)(mu) = 0 for |mu| <= R2.  The decomposition scale is D = 4 R1 R2,
halved to 2 R1 R2 under parity, and the window smoothness is tied to eps by
1/(1 - eta) = 1 + eps so the admissible threshold exponent log^(1+eps) and
the window decay class match.

Constraints are assembled as real rows.  A transform constraint at mu is
complex, but node sets here are symmetric, so the pair {mu, -mu} carries
exactly two real conditions: the positive entry contributes the real part
at mu, the negative entry the imaginary part, and a zero-point entry
whichever part its moment parity leaves nontrivial.  Row count therefore
equals n_Lambda(R1) + n_M(R2), entries counted with multiplicity.

Coefficients are the right singular vector of the smallest singular value;
when rows < |S| the null space is nonempty by pigeonhole and the residual is
at the SVD noise level, and when the numerical null space is empty the
result reports null_dim = 0 with the smallest singular value: that outcome
is the counting obstruction at work, not a failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, DomainError
from .fourier import DEFAULT_GRID, MAX_FT_DERIVATIVE, SampledFunction, ft_at, l2_norm, sup_norm
from .lcbasis import LocalCosineAtom, LocalCosineBasis, build_basis
from .schemes import InterpolationScheme, counting_function
from .whitney import admissible_set, whitney_decompose

NULL_REL_TOL = 1e-10
PARITIES = ("none", "even", "odd")


@dataclass(frozen=True)
class WitnessProblem:
    scheme: InterpolationScheme
    R1: float
    R2: float
    C: float
    eps: float
    parity: str = "none"

    def __post_init__(self):
        if self.R1 <= 1.0 or self.R2 <= 1.0:
            raise DomainError("witness radii must satisfy R1, R2 > 1")
        if self.C <= 0 or self.eps <= 0:
            raise DomainError("witness needs C > 0 and eps > 0")
        if self.parity not in PARITIES:
            raise DomainError(f"parity must be one of {PARITIES}")

    @property
    def D(self) -> float:
        if self.parity == "none":
            return 4.0 * self.R1 * self.R2
        return 2.0 * self.R1 * self.R2

    @property
    def eta(self) -> float:
        return self.eps / (1.0 + self.eps)

    @property
    def constraint_count(self) -> int:
        return int(
            counting_function(self.scheme.lambda_nodes, self.R1)
            + counting_function(self.scheme.m_nodes, self.R2)
        )

    def basis(self) -> LocalCosineBasis:
        return build_basis(whitney_decompose(self.D), self.eta)

    def atoms(self) -> list[LocalCosineAtom]:
        w = whitney_decompose(self.D)
        S = admissible_set(w, self.C, self.eps)
        return build_basis(w, self.eta).atoms_for(S.entries)


def _atom_columns(p: WitnessProblem, atoms, x: np.ndarray) -> np.ndarray:
    """Values of each scaled (and parity-extended) atom on the x grid."""
    if p.parity == "none":
        t = 2.0 * p.R2 * x
        sign = np.ones_like(x)
    else:
        t = p.R2 * (2.0 * np.abs(x) - p.R1)
        sign = np.where(x < 0, -1.0, 1.0) if p.parity == "odd" else np.ones_like(x)
    return np.column_stack([sign * a.value(t) for a in atoms])


def _lambda_row(p: WitnessProblem, atoms, point: float, order: int) -> np.ndarray:
    chain = (2.0 * p.R2) ** order
    if p.parity == "none":
        t = 2.0 * p.R2 * point
        sgn = 1.0
    else:
        t = p.R2 * (2.0 * abs(point) - p.R1)
        sgn = 1.0
        if point < 0:
            sgn = (-1.0) ** order
            if p.parity == "odd":
                sgn = -sgn
        elif point == 0.0 and p.parity == "odd":
            # f is odd: the value row at 0 is identically zero
            if order % 2 == 0:
                return np.zeros(len(atoms))
    return sgn * chain * np.array([a.derivative(t, order) if order else a.value(t) for a in atoms])


def assemble_constraints(
    p: WitnessProblem, atoms, n: int = DEFAULT_GRID
) -> tuple[np.ndarray, tuple]:
    """Real constraint matrix (rows = constraint entries, cols = atoms).

    Returns (matrix, labels); labels[i] = ('lambda'|'m', point, order, part).
    """
    if len(atoms) == 0:
        raise DegenerateInputError("assemble_constraints needs a nonempty atom set")
    x = np.linspace(-p.R1, p.R1, n + 1)
    w = np.full(n + 1, 2.0 * p.R1 / n)
    w[0] *= 0.5
    w[-1] *= 0.5
    cols = _atom_columns(p, atoms, x)
    rows, labels = [], []
    for nd in p.scheme.lambda_nodes:
        if abs(nd.point) > p.R1:
            continue
        rows.append(_lambda_row(p, atoms, nd.point, nd.order))
        labels.append(("lambda", nd.point, nd.order, "re"))
    for nd in p.scheme.m_nodes:
        if abs(nd.point) > p.R2:
            continue
        mu = abs(nd.point)
        phase = w * np.exp(-2j * np.pi * mu * x)
        if nd.order:
            phase = phase * (-2j * np.pi * x) ** nd.order
        crow = phase @ cols
        if nd.point > 0 or (nd.point == 0.0 and nd.order % 2 == 0):
            rows.append(crow.real)
            labels.append(("m", nd.point, nd.order, "re"))
        else:
            rows.append(crow.imag)
            labels.append(("m", nd.point, nd.order, "im"))
    if rows:
        matrix = np.vstack(rows)
    else:
        matrix = np.zeros((0, len(atoms)))
    return matrix, tuple(labels)


@dataclass(frozen=True)
class WitnessResult:
    problem: WitnessProblem
    entries: tuple
    coefficients: np.ndarray
    null_dim: int
    residual: float
    sigma_min: float
    sigma_max: float
    l2: float
    sup_x: float
    sup_value: float
    function: SampledFunction

    @property
    def l2_target(self) -> float:
        if self.problem.parity == "none":
            return 1.0 / math.sqrt(2.0 * self.problem.R2)
        return 1.0 / math.sqrt(self.problem.R2)

    @property
    def sup_floor(self) -> float:
        return 1.0 / math.sqrt(self.problem.D)


def solve_witness(p: WitnessProblem, n: int = DEFAULT_GRID) -> WitnessResult:
    """Unit-norm coefficients minimizing the constraint residual, plus audits."""
    w = whitney_decompose(p.D)
    S = admissible_set(w, p.C, p.eps)
    atoms = build_basis(w, p.eta).atoms_for(S.entries)
    A, _ = assemble_constraints(p, atoms, n=n)
    m = len(atoms)
    if A.shape[0] == 0:
        coeffs = np.zeros(m)
        coeffs[0] = 1.0
        null_dim, smin, smax = m, 0.0, 0.0
    else:
        _, sv, Vt = np.linalg.svd(A)
        smax = float(sv[0])
        smin = float(sv[-1]) if len(sv) == min(A.shape) else 0.0
        rank = int(np.sum(sv > NULL_REL_TOL * smax)) if smax > 0 else 0
        null_dim = m - rank
        coeffs = Vt[-1]
        lead = np.flatnonzero(np.abs(coeffs) > 1e-14)
        if len(lead) and coeffs[lead[0]] < 0:
            coeffs = -coeffs
    residual = float(np.max(np.abs(A @ coeffs))) if A.shape[0] else 0.0
    x = np.linspace(-p.R1, p.R1, n + 1)
    vals = _atom_columns(p, atoms, x) @ coeffs
    symmetry = p.parity if p.parity != "none" else "none"
    f = SampledFunction((-p.R1, p.R1), 2.0 * p.R1 / n, vals, symmetry=symmetry)
    sup_x, sup_val = sup_norm(f)
    return WitnessResult(
        problem=p,
        entries=S.entries,
        coefficients=coeffs,
        null_dim=null_dim,
        residual=residual,
        sigma_min=smin,
        sigma_max=smax,
        l2=l2_norm(f),
        sup_x=sup_x,
        sup_value=sup_val,
        function=f,
    )


@dataclass(frozen=True)
class TailReport:
    xi: np.ndarray
    max_by_order: tuple   # (order, max |F f^(k)| over the sweep) pairs
    weighted_sum: float   # sum over stored |mu| > R2 of |F f^(k(mu))(mu)| |mu|^U


def tail_certificate(
    res: WitnessResult, n_xi: int = 400, k_max: int | None = None
) -> TailReport:
    """Transform tail magnitudes over |xi| in (R2, 4 R2], plus the node tail."""
    if res.null_dim < 1:
        raise DegenerateInputError(
            "tail certificate applies to annihilating witnesses (null_dim >= 1)"
        )
    p = res.problem
    if k_max is None:
        k_max = min(int(p.scheme.L), MAX_FT_DERIVATIVE)
    xi = np.linspace(p.R2, 4.0 * p.R2, n_xi + 1)[1:]
    full = np.concatenate([-xi[::-1], xi])
    maxima = []
    for k in range(k_max + 1):
        vals = ft_at(res.function, full, m=k)
        maxima.append((k, float(np.max(np.abs(vals)))))
    total = 0.0
    for nd in p.scheme.m_nodes:
        if abs(nd.point) <= p.R2:
            continue
        k = min(nd.order, MAX_FT_DERIVATIVE)
        val = abs(ft_at(res.function, float(nd.point), m=k))
        total += val * abs(nd.point) ** p.scheme.U
    return TailReport(xi=xi, max_by_order=tuple(maxima), weighted_sum=float(total))


def outside_support_max(res: WitnessResult, n: int = 4096) -> float:
    """max |f| over |x| in (R1, 2 R1]: zero when the support claim holds."""
    p = res.problem
    x = np.linspace(p.R1, 2.0 * p.R1, n + 1)[1:]
    both = np.concatenate([-x, x])
    atoms = p.atoms()
    vals = _atom_columns(p, atoms, both) @ res.coefficients
    return float(np.max(np.abs(vals)))


def symmetrize(p: WitnessProblem, atoms):
    """Parity-extended scaled atoms as a column evaluator x -> values matrix.

    Atoms are mapped onto (0, R1] by x -> R2 (2x - R1) and reflected with the
    parity sign; the assembly and the sampled witness both go through this.
    """
    if p.parity not in ("even", "odd"):
        raise DomainError("symmetrize needs parity 'even' or 'odd'")

    def columns(x):
        return _atom_columns(p, atoms, np.asarray(x, dtype=float))

    return columns


def thin_scheme(
    scheme: InterpolationScheme,
    fraction: float,
    R1: float,
    R2: float,
    seed: int,
) -> InterpolationScheme:
    """Remove about `fraction` of the in-radius entries, whole +- orbits at a
    time so node symmetry (and the real row assembly) survives.  Seeded and
    deterministic; out-of-range entries are never touched.
    """
    if not 0.0 <= fraction < 1.0:
        raise DomainError("thinning fraction must lie in [0, 1)")
    sides = {"lambda": list(scheme.lambda_nodes), "m": list(scheme.m_nodes)}
    radii = {"lambda": R1, "m": R2}
    orbits: dict[tuple, list[tuple[str, int]]] = {}
    n_in = 0
    for side, nodes in sides.items():
        for i, nd in enumerate(nodes):
            if abs(nd.point) <= radii[side]:
                n_in += 1
                orbits.setdefault((side, abs(nd.point), nd.order), []).append((side, i))
    target = int(round(fraction * n_in))
    rng = np.random.default_rng(seed)
    keys = sorted(orbits.keys())
    removed: set[tuple[str, int]] = set()
    for idx in rng.permutation(len(keys)):
        if len(removed) >= target:
            break
        removed.update(orbits[keys[idx]])
    kept = {
        side: tuple(nd for i, nd in enumerate(nodes) if (side, i) not in removed)
        for side, nodes in sides.items()
    }
    return InterpolationScheme(
        lambda_nodes=kept["lambda"], m_nodes=kept["m"], L=scheme.L, U=scheme.U,
        name=f"{scheme.name}-thinned",
    )
