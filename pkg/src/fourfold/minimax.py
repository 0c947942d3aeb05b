"""Numeric evaluation of the inf-max definition of alpha^2.

A ``QuadraticFormSpace`` holds a unimodular symmetric integer matrix Q of
signature (b+, b-) together with a finite list of integer class vectors.
The quantity computed here is

    inf over positive b+-planes H  of  max over classes a  of  Q(a+, a+),

with a+ the Q-orthogonal projection of a into H.

Chart: diagonalize Q and rescale so it becomes J = diag(+1..,-1..).  In
these coordinates every maximal positive subspace is the graph of a
unique linear map L from the reference positive subspace to its
complement, and the graph is positive exactly when all singular values
of L are below 1, so the whole search region is the open unit ball in
operator norm.  Writing a class as (p, n) and u = p - L^T n,

    (a+)^2 = u^T (I - L^T L)^{-1} u,

which is convex in L on the feasible region (Schur-complement argument),
so the max over classes is convex as well.

Two independent routes are provided: a multi-start subgradient descent
with a smooth-max temperature schedule (``alpha_squared_numeric``) and a
zooming grid search (``alpha_brute_oracle``) capped at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateForm, DomainError, ScaleError

_FEAS_MARGIN = 1e-9
_DESK_SCALE_CAP = 6


def _int_det(rows) -> int:
    """Exact integer determinant (Bareiss elimination)."""
    a = [[int(x) for x in row] for row in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def parse_matrix_text(text: str) -> list[list[int]]:
    """Whitespace-separated integers, one row per line; blank lines skipped."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        try:
            rows.append([int(tok) for tok in stripped.split()])
        except ValueError:
            raise DomainError(f"line {lineno}: expected whitespace-separated integers") from None
    if not rows:
        raise DomainError("empty matrix")
    return rows


class QuadraticFormSpace:
    """Unimodular symmetric integer form with candidate class vectors."""

    def __init__(self, gram, classes):
        rows = [list(r) for r in gram]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DomainError("intersection form must be square")
        g = np.array(rows, dtype=np.int64)
        if not np.array_equal(g, g.T):
            raise DomainError("intersection form must be symmetric")
        det = _int_det(rows)
        if det == 0:
            raise DegenerateForm("intersection form is singular")
        if abs(det) != 1:
            raise DomainError(f"intersection form must be unimodular (det = {det})")
        self.gram = g
        self.classes = tuple(tuple(int(x) for x in c) for c in classes)
        if any(len(c) != n for c in self.classes):
            raise DomainError("class vectors must match the form's dimension")

        w, v = np.linalg.eigh(g.astype(float))
        order = np.argsort(-w)
        w, v = w[order], v[:, order]
        self.b_plus = int(np.count_nonzero(w > 0))
        self.b_minus = n - self.b_plus
        # |det| = 1 bounds eigenvalues away from zero at this scale.
        self._T = v / np.sqrt(np.abs(w))
        self._jsign = np.concatenate(
            [np.ones(self.b_plus), -np.ones(self.b_minus)]
        )
        t_inv = (self._jsign[:, None] * self._T.T) @ g.astype(float)
        self._t_inv = t_inv
        cj = np.array([t_inv @ np.array(c, dtype=float) for c in self.classes])
        if cj.size == 0:
            cj = cj.reshape(0, n)
        self._P = cj[:, : self.b_plus]
        self._N = cj[:, self.b_plus:]

    @property
    def dimension(self) -> int:
        return self.gram.shape[0]

    @classmethod
    def diagonal(cls, b_plus: int, b_minus: int, classes):
        diag = [1] * b_plus + [-1] * b_minus
        gram = [[diag[i] if i == j else 0 for j in range(len(diag))] for i in range(len(diag))]
        return cls(gram, classes)

    @classmethod
    def from_text(cls, form_text: str, classes_text: str):
        return cls(parse_matrix_text(form_text), parse_matrix_text(classes_text))

    @classmethod
    def from_files(cls, form_path, classes_path):
        with open(form_path) as fh:
            form_text = fh.read()
        with open(classes_path) as fh:
            classes_text = fh.read()
        return cls.from_text(form_text, classes_text)

    def quadratic_value(self, a) -> int:
        vec = np.array([int(x) for x in a], dtype=object)
        return int(vec @ self.gram.astype(object) @ vec)

    def to_chart_coordinates(self, a):
        """Class vector in the diagonalizing (J) coordinates."""
        return self._t_inv @ np.array(a, dtype=float)

    def subspace_basis(self, L) -> np.ndarray:
        """Original-coordinate basis of the graph subspace of chart point L."""
        L = np.asarray(L, dtype=float).reshape(self.b_minus, self.b_plus)
        return self._T[:, : self.b_plus] + self._T[:, self.b_plus:] @ L

    def restricted_eigenvalues(self, basis) -> np.ndarray:
        """Eigenvalues of Q restricted to the span of the basis columns."""
        basis = np.asarray(basis, dtype=float)
        return np.linalg.eigvalsh(basis.T @ self.gram.astype(float) @ basis)

    # -- objective machinery ------------------------------------------------

    def _terms(self, L):
        """Per-class values (a+)^2 and the solve results at chart point L."""
        u = self._P - self._N @ L  # (m, b+)
        g = np.eye(self.b_plus) - L.T @ L
        x = np.linalg.solve(g, u.T)  # (b+, m)
        vals = np.einsum("mi,im->m", u, x)
        return vals, x

    def _feasible(self, L) -> bool:
        g = np.eye(self.b_plus) - L.T @ L
        try:
            np.linalg.cholesky(g - _FEAS_MARGIN * np.eye(self.b_plus))
            return True
        except np.linalg.LinAlgError:
            return False


@dataclass(eq=False)
class GrassmannPoint:
    """A positive b+-plane: basis columns in original coordinates plus the
    chart map L whose graph it is."""

    basis: np.ndarray
    chart: np.ndarray


@dataclass(eq=False)
class NumericResult:
    value: float
    witness: GrassmannPoint
    iterations: int
    converged: bool
    boundary: bool


@dataclass(eq=False)
class OracleResult:
    value: float
    chart: np.ndarray
    boundary: bool


def projection_split(space: QuadraticFormSpace, L, a):
    """((a+)^2, (a-)^2) of an integer class at a chart point."""
    L = np.asarray(L, dtype=float).reshape(space.b_minus, space.b_plus)
    aj = space.to_chart_coordinates(a)
    p, nn = aj[: space.b_plus], aj[space.b_plus:]
    u = p - L.T @ nn
    g = np.eye(space.b_plus) - L.T @ L
    v = np.linalg.solve(g, u)
    plus = float(u @ v)
    aplus = np.concatenate([v, L @ v])
    rest = aj - aplus
    minus = float(rest @ (space._jsign * rest))
    return plus, minus


def _simplex_projection(v):
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    rho = np.nonzero(u * np.arange(1, len(v) + 1) > (css - 1.0))[0][-1]
    theta = (css[rho] - 1.0) / (rho + 1)
    return np.maximum(v - theta, 0.0)


def _min_norm_weights(mat):
    """Weights of the least-norm point in the convex hull of the rows.

    At a kink of the max-objective the steepest descent direction is the
    minimum-norm convex combination of the active gradients; projected
    gradient on the simplex is plenty accurate for a descent direction.
    """
    k = mat.shape[0]
    if k == 1:
        return np.ones(1)
    q = mat @ mat.T
    lam = max(float(np.linalg.eigvalsh(q).max()), 1e-12)
    w = np.full(k, 1.0 / k)
    for _ in range(60):
        w = _simplex_projection(w - (q @ w) / lam)
    return w


def _value_and_grad(space, L, temp):
    """Objective value and (sub)gradient at chart point L.

    temp=None gives the hard max with a min-norm subgradient over the
    near-active classes; otherwise the softmax-smoothed objective
    temp * log sum exp(vals/temp) with its exact gradient.
    """
    vals, x = space._terms(L)
    lx = L @ x  # (b-, m)
    diff = lx - space._N.T  # (b-, m)
    if temp is None:
        vmax = float(vals.max())
        active = np.where(vals >= vmax - 1e-9 * (1.0 + abs(vmax)))[0]
        if len(active) == 1:
            a = int(active[0])
            grad = 2.0 * np.outer(diff[:, a], x[:, a])
        else:
            grads = 2.0 * np.einsum("im,jm->mij", diff[:, active], x[:, active])
            w = _min_norm_weights(grads.reshape(len(active), -1))
            grad = np.einsum("m,mij->ij", w, grads)
        return vmax, grad
    shifted = vals / temp
    peak = shifted.max()
    value = float(temp * (peak + np.log(np.exp(shifted - peak).sum())))
    w = np.exp(shifted - peak)
    w /= w.sum()
    grad = 2.0 * (diff * w[None, :]) @ x.T
    return value, grad


def _descend_stage(space, L, temp, tolerance, budget):
    """Backtracking (sub)gradient descent at one temperature.

    Returns (L, iterations used, converged).  For temp=None the objective
    is the hard max; the gradient of an active class is a subgradient.
    """
    if budget <= 0:
        return L, 0, False
    f, grad = _value_and_grad(space, L, temp)
    step = 0.25
    stall = 0
    used = 0
    while used < budget:
        used += 1
        gnorm2 = float((grad * grad).sum())
        if gnorm2 < 1e-22:
            return L, used, True
        trial = L - step * grad
        accepted = False
        if space._feasible(trial):
            f_trial, grad_trial = _value_and_grad(space, trial, temp)
            if f_trial <= f - 1e-4 * step * gnorm2:
                improvement = f - f_trial
                L, f, grad = trial, f_trial, grad_trial
                step = min(step * 1.4, 1e3)
                accepted = True
                stall = stall + 1 if improvement < tolerance else 0
                if stall >= 8:
                    return L, used, True
        if not accepted:
            step *= 0.5
            if step < 1e-16:
                return L, used, True
    return L, used, False


def _subgradient_polish(space, L, steps, base_step=0.02):
    """Plain diminishing-step subgradient walk, keeping the best point.

    Subgradient steps are not monotone; this irons out the kink zigzag
    the line search can stall on when several classes are active.
    """
    vals, _ = space._terms(L)
    best_L, best_f = L, float(vals.max())
    cur = L
    for k in range(1, steps + 1):
        f, grad = _value_and_grad(space, cur, None)
        gnorm = float(np.sqrt((grad * grad).sum()))
        if gnorm < 1e-12:
            break
        trial = cur - (base_step / (gnorm * np.sqrt(k))) * grad
        if not space._feasible(trial):
            base_step *= 0.5
            if base_step < 1e-12:
                break
            continue
        cur = trial
        f_cur, _ = space._terms(cur)
        f_val = float(f_cur.max())
        if f_val < best_f:
            best_f, best_L = f_val, cur
    return best_L, steps


def alpha_squared_numeric(
    space: QuadraticFormSpace,
    *,
    tolerance: float = 1e-6,
    max_iter: int = 60000,
    seed: int = 0,
    starts: int = 16,
) -> NumericResult:
    """Multi-start descent on the chart; deterministic for a given seed.

    Starts run independently from derived seeds and are reduced by index
    order, keeping the minimum.  A smooth-max temperature schedule
    precedes a hard-max line search and a direct subgradient polish.
    If the iteration budget runs out the value is still returned with
    converged=False.
    """
    if space.b_plus < 1:
        raise DomainError("alpha evaluation requires b+ >= 1")
    if not space.classes:
        raise DomainError("at least one candidate class is required")
    m = len(space.classes)
    temps = [1.0, 0.1, 0.01, 1e-3, 1e-4, 1e-5] if m > 1 else []
    schedule = temps + [None]
    children = np.random.SeedSequence(seed).spawn(starts)
    budget_per_start = max(400, max_iter // max(starts, 1))
    polish_steps = 300 if m > 1 else 0

    best_val = None
    best_L = None
    best_conv = False
    total_iters = 0
    dims = (space.b_minus, space.b_plus)
    for idx in range(starts):
        rng = np.random.default_rng(children[idx])
        if idx == 0:
            L = np.zeros(dims)
        else:
            L = rng.normal(scale=0.35, size=dims)
            smax = np.linalg.norm(L, 2) if L.size else 0.0
            if smax >= 0.9:
                L *= 0.9 / smax
        remaining = budget_per_start - polish_steps
        conv = True
        for temp in schedule:
            stage_tol = tolerance * 1e-2 if temp is None else max(tolerance, temp * 1e-4)
            L, used, stage_conv = _descend_stage(space, L, temp, stage_tol, remaining)
            total_iters += used
            remaining -= used
            conv = stage_conv
        if polish_steps:
            L, used = _subgradient_polish(space, L, polish_steps)
            total_iters += used
        vals, _ = space._terms(L)
        val = float(vals.max())
        if best_val is None or val < best_val:
            best_val, best_L, best_conv = val, L, conv
    smax = np.linalg.norm(best_L, 2) if best_L.size else 0.0
    witness = GrassmannPoint(basis=space.subspace_basis(best_L), chart=best_L)
    return NumericResult(
        value=best_val,
        witness=witness,
        iterations=total_iters,
        converged=best_conv,
        boundary=smax > 0.98,
    )


def _oracle_objective(space, pt):
    """Hard-max objective for the oracle's scalar evaluations; +inf outside
    the feasible ball."""
    L = pt.reshape(space.b_minus, space.b_plus)
    g = np.eye(space.b_plus) - L.T @ L
    eigmin = np.linalg.eigvalsh(g)[0]
    if eigmin <= _FEAS_MARGIN:
        return np.inf
    u = space._P - space._N @ L
    x = np.linalg.solve(g, u.T)
    return float(np.einsum("mi,im->m", u, x).max())


def _nelder_mead(fn, x0, scale, max_iter=500, ftol=1e-13):
    """Deterministic derivative-free simplex descent (standard coefficients).

    The zooming grid localizes the minimum but tracks the crease of a
    max-objective poorly; the simplex adapts its shape to the crease.
    Only used to polish, so a failure can never do worse than its start.
    """
    n = len(x0)
    simplex = [np.array(x0, dtype=float)]
    for i in range(n):
        p = np.array(x0, dtype=float)
        p[i] += scale
        simplex.append(p)
    values = [fn(p) for p in simplex]
    for _ in range(max_iter):
        order = np.argsort(values)
        simplex = [simplex[i] for i in order]
        values = [values[i] for i in order]
        if abs(values[-1] - values[0]) <= ftol * (1.0 + abs(values[0])):
            break
        centroid = np.mean(simplex[:-1], axis=0)
        reflected = centroid + (centroid - simplex[-1])
        f_r = fn(reflected)
        if f_r < values[0]:
            expanded = centroid + 2.0 * (centroid - simplex[-1])
            f_e = fn(expanded)
            if f_e < f_r:
                simplex[-1], values[-1] = expanded, f_e
            else:
                simplex[-1], values[-1] = reflected, f_r
        elif f_r < values[-2]:
            simplex[-1], values[-1] = reflected, f_r
        else:
            contracted = centroid + 0.5 * (simplex[-1] - centroid)
            f_c = fn(contracted)
            if f_c < values[-1]:
                simplex[-1], values[-1] = contracted, f_c
            else:
                for i in range(1, n + 1):
                    simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0])
                    values[i] = fn(simplex[i])
    best = int(np.argmin(values))
    return simplex[best], values[best]


def alpha_brute_oracle(
    space: QuadraticFormSpace,
    grid_density: int = 7,
    levels: int = 24,
    polish: bool = True,
) -> OracleResult:
    """Zooming dense grid search over the chart; independent of the descent.

    Each level lays a grid of ``grid_density`` points per axis over the
    current window (clipped to the unit cube that contains the feasible
    region), takes the feasible minimum of the max over classes, and
    shrinks the window around the argmin.  A derivative-free simplex
    polish finishes from the best grid point (kept only when it
    improves).  Capped at total dimension 6.
    """
    if space.dimension > _DESK_SCALE_CAP:
        raise ScaleError(
            f"oracle is capped at dimension {_DESK_SCALE_CAP} (got {space.dimension})"
        )
    if space.b_plus < 1:
        raise DomainError("alpha evaluation requires b+ >= 1")
    if not space.classes:
        raise DomainError("at least one candidate class is required")
    if grid_density < 3:
        raise DomainError("grid_density must be >= 3")

    bp, bm = space.b_plus, space.b_minus
    dims = bp * bm
    if dims == 0:
        # Only one positive subspace: every projection is the class itself.
        value = max(float(space.quadratic_value(c)) for c in space.classes)
        return OracleResult(value=value, chart=np.zeros((0, bp)), boundary=False)

    eye = np.eye(bp)
    center = np.zeros(dims)
    half = 1.0
    best_val = np.inf
    best_L = np.zeros((bm, bp))
    best_margin = 1.0
    for _ in range(levels):
        axes = [
            np.clip(np.linspace(c - half, c + half, grid_density), -1.0, 1.0)
            for c in center
        ]
        mesh = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([m.ravel() for m in mesh], axis=-1)  # (n, dims)
        ls = pts.reshape(-1, bm, bp)
        gs = eye[None] - np.einsum("nki,nkj->nij", ls, ls)
        eigmin = np.linalg.eigvalsh(gs)[:, 0]
        feas_idx = np.where(eigmin > _FEAS_MARGIN)[0]
        if feas_idx.size == 0:
            half *= 0.5
            continue
        ls_f = ls[feas_idx]
        u = space._P[None] - np.einsum("mk,nki->nmi", space._N, ls_f)
        x = np.linalg.solve(gs[feas_idx][:, None], u[..., None])[..., 0]
        vals = np.einsum("nmi,nmi->nm", u, x)
        objective = vals.max(axis=1)
        j_local = int(np.argmin(objective))
        j = int(feas_idx[j_local])
        if objective[j_local] < best_val:
            best_val = float(objective[j_local])
            best_L = ls[j]
            best_margin = float(eigmin[j])
        spacing = 2.0 * half / (grid_density - 1)
        # Pattern-search recentring: shrink only when the argmin sits in
        # the inner core of the window; otherwise walk at constant scale
        # (the minimizer of a max of smooth terms can slide along a
        # crease much further than one cell per level).
        in_core = all(abs(pts[j][i] - center[i]) <= half / 2 + 1e-15 for i in range(dims))
        center = pts[j]
        if in_core:
            # Keep a +-2 cell margin but always shrink geometrically
            # (at density 5 two cells already span the whole window).
            half = min(2.0 * spacing, 0.75 * half)
        if spacing < 1e-7:
            break
    if polish:
        polished, value = _nelder_mead(
            lambda pt: _oracle_objective(space, pt),
            best_L.ravel(),
            scale=max(2.0 * half, 1e-4),
        )
        if value < best_val:
            best_val = value
            best_L = polished.reshape(bm, bp)
            g = np.eye(bp) - best_L.T @ best_L
            best_margin = float(np.linalg.eigvalsh(g)[0])
    boundary = best_margin < 1e-2 or bool(np.any(np.abs(best_L) > 0.99))
    return OracleResult(value=best_val, chart=best_L, boundary=boundary)
