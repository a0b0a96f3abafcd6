"""Direct saddle-point solve and shift-invert eigensolver."""

from typing import Optional

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
from scipy.sparse.linalg import norm as sparse_norm
from scipy.sparse.linalg import splu
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from quadcurl.config import settings
from quadcurl.logger import get_logger
from quadcurl.schemas.assembly import SaddleSystem
from quadcurl.schemas.solution import EigenSolution, SourceSolution
from quadcurl.services.base import (
    NonConvergenceError,
    ShiftCollisionError,
    SingularSystemError,
    SolverError,
)

logger = get_logger("solvers")


def _factorize(matrix: sp.spmatrix):
    return splu(sp.csc_matrix(matrix))


def _system_matrix(system: SaddleSystem) -> sp.csc_matrix:
    if system.n_p == 0:
        return sp.csc_matrix(system.A)
    return system.block()


def solve_saddle(system: SaddleSystem) -> SourceSolution:
    """Solve [A B; B^T 0] [u; p] = [f; 0] by sparse LU."""
    if system.n_u == 0:
        raise SingularSystemError("system has no free u-DOFs")
    K = _system_matrix(system)
    rhs = system.rhs()
    logger.debug(f"Factorizing saddle system of size {K.shape[0]} (nnz={K.nnz})")
    try:
        lu = _factorize(K)
    except RuntimeError as e:
        logger.error(f"Saddle factorization failed: {e}")
        raise SingularSystemError(f"block system is singular: {e}") from e
    x = lu.solve(rhs)
    if not np.all(np.isfinite(x)):
        raise SingularSystemError("block solve produced non-finite values")

    u, p = x[: system.n_u], x[system.n_u :]
    residual = float(np.linalg.norm(K @ x - rhs) / (1.0 + np.linalg.norm(rhs)))
    constraint = 0.0
    if system.n_p:
        scale = sparse_norm(system.B) * max(float(np.linalg.norm(u)), 1e-300)
        constraint = float(np.linalg.norm(system.B.T @ u) / scale)
    logger.info(
        "Saddle system solved",
        extra={"n_u": system.n_u, "n_p": system.n_p, "residual": residual, "constraint": constraint},
    )
    return SourceSolution(
        u_coeffs=u, p_coeffs=p, residual_norm=residual, constraint_norm=constraint
    )


def cluster_eigenvalues(values, tol: Optional[float] = None) -> list[int]:
    """Cluster ids for ascending values; neighbours within tol (relative) share one."""
    tol = settings.solver.cluster_tol if tol is None else tol
    ids: list[int] = []
    current = -1
    for i, value in enumerate(values):
        if i == 0 or abs(value - values[i - 1]) > tol * max(abs(value), 1e-300):
            current += 1
        ids.append(current)
    return ids


class _Multiplier:
    """Least-squares multiplier w minimizing |r + B w|.

    Solved through the augmented system [I B; B^T 0] [s; w] = [r; 0], whose
    first block s = r - B w is the minimal residual.
    """

    def __init__(self, B: sp.csr_matrix):
        n_u, n_p = B.shape
        self.n_u, self.n_p = n_u, n_p
        self._lu = None
        if n_p:
            augmented = sp.bmat([[sp.identity(n_u, format="csr"), B], [B.T, None]])
            self._lu = _factorize(augmented)

    def correct(self, R: np.ndarray) -> np.ndarray:
        if self._lu is None:
            return R
        rhs = np.vstack([R, np.zeros((self.n_p, R.shape[1]))])
        return self._lu.solve(rhs)[: self.n_u]


class _PairResiduals:
    """Residuals of Ritz pairs with the multiplier eliminated.

    ``relative`` is |Av + Bw - theta Mv| / (theta |Mv|), the bound every
    returned pair must meet. ``backward`` is the normwise backward error
    |r| / ((|A| + |theta| |M|) |v|), which is tiny for genuine pairs and
    separates spurious Ritz values from slowly converging ones.
    """

    def __init__(self, system: SaddleSystem):
        self.system = system
        self.mult = _Multiplier(system.B)
        self.norm_A = sparse_norm(system.A)
        self.norm_M = sparse_norm(system.M)

    def __call__(self, X: np.ndarray, theta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        MX = self.system.M @ X
        R = np.linalg.norm(self.mult.correct(self.system.A @ X - MX * theta), axis=0)
        relative = R / np.maximum(np.abs(theta) * np.linalg.norm(MX, axis=0), 1e-300)
        scale = (self.norm_A + np.abs(theta) * self.norm_M) * np.linalg.norm(X, axis=0)
        return relative, R / np.maximum(scale, 1e-300)


def solve_eigen(
    system: SaddleSystem,
    k: int,
    shift: Optional[float] = None,
    block: Optional[int] = None,
    seed: int = 0,
) -> EigenSolution:
    """k smallest eigenpairs of the constrained pencil by shift-invert subspace iteration.

    Each sweep solves (K - sigma M_block) Y = [M X; 0], so the u-part of Y
    satisfies B^T Y_u = 0; Rayleigh-Ritz then runs on that subspace. Sweeps
    stop once the first k genuine Ritz values change by less than ritz_tol
    (relative) and each of those pairs has relative residual <= residual_tol.
    """
    cfg = settings.solver
    shift = cfg.shift_square if shift is None else float(shift)
    if k < 1:
        raise SolverError(f"need k >= 1 eigenpairs, got {k}")
    dim = system.n_u - system.n_p
    if k > dim:
        raise SolverError(f"requested {k} eigenpairs but the constrained space has {dim}")
    nb = min(block or k + cfg.block_extra, dim)

    K = _system_matrix(system)
    shifted = K - shift * (system.mass_block() if system.n_p else system.M)
    try:
        lu = _factorize(shifted)
    except RuntimeError as e:
        logger.warning(f"Factorization at shift {shift:g} failed: {e}")
        raise ShiftCollisionError(shift, str(e)) from e
    pair_residuals = _PairResiduals(system)

    rng = np.random.default_rng(seed)
    X = rng.standard_normal((system.n_u, nb))
    pad = np.zeros((system.n_p, nb))
    previous: Optional[np.ndarray] = None
    change = worst = np.inf
    for iteration in range(1, cfg.max_iterations + 1):
        Y = lu.solve(np.vstack([system.M @ X, pad]))[: system.n_u]
        if not np.all(np.isfinite(Y)):
            raise ShiftCollisionError(shift, "shift-invert solve produced non-finite values")
        Q, _ = np.linalg.qr(Y)
        Ar = Q.T @ (system.A @ Q)
        Mr = Q.T @ (system.M @ Q)
        theta, S = sla.eigh(0.5 * (Ar + Ar.T), 0.5 * (Mr + Mr.T))
        X = Q @ S

        relative, backward = pair_residuals(X, theta)
        genuine = (
            (theta > 0.0) & (theta < cfg.spurious_ceiling) & (backward <= cfg.spurious_residual)
        )
        keep = np.flatnonzero(genuine)[:k]
        if len(keep) == k:
            current = theta[keep]
            worst = float(np.max(relative[keep]))
            if previous is not None:
                change = float(np.max(np.abs(current - previous) / current))
                if change <= cfg.ritz_tol and worst <= cfg.residual_tol:
                    break
            previous = current
        logger.debug(
            f"Subspace iteration {iteration}: Ritz change {change:.3e}, residual {worst:.3e}"
        )
    else:
        logger.error(
            f"Eigensolver stalled after {cfg.max_iterations} iterations at shift {shift:g}",
            extra={"ritz_change": change, "residual": worst},
        )
        raise NonConvergenceError(cfg.max_iterations, worst, shift)

    values = theta[keep]
    logger.info(
        f"{len(values)} eigenpairs converged in {iteration} iterations",
        extra={"shift": shift, "lambda_1": values[0], "residual": worst, "n_u": system.n_u},
    )
    return EigenSolution(
        eigenvalues=values,
        eigenvectors=X[:, keep],
        residuals=relative[keep],
        clusters=cluster_eigenvalues(values),
        shift=shift,
        iterations=iteration,
    )


def solve_eigen_with_retry(
    system: SaddleSystem,
    k: int,
    shift: Optional[float] = None,
    block: Optional[int] = None,
    seed: int = 0,
) -> EigenSolution:
    """solve_eigen, retried at a slightly lowered shift on collision or stall."""
    cfg = settings.solver
    base = cfg.shift_square if shift is None else float(shift)

    def _log_retry(state) -> None:
        logger.warning(
            f"Eigen solve attempt {state.attempt_number}/{cfg.shift_retries} failed: "
            f"{state.outcome.exception()}"
        )

    for attempt in Retrying(
        stop=stop_after_attempt(cfg.shift_retries),
        retry=retry_if_exception_type((ShiftCollisionError, NonConvergenceError)),
        before_sleep=_log_retry,
        reraise=True,
    ):
        with attempt:
            n = attempt.retry_state.attempt_number
            sigma = base * (1.0 - cfg.shift_jitter * (n - 1))
            return solve_eigen(system, k, shift=sigma, block=block, seed=seed)
    raise SolverError("eigen solve retries exhausted")


def dense_pencil_eigenvalues(system: SaddleSystem, ceiling: Optional[float] = None) -> np.ndarray:
    """Finite positive eigenvalues of the full block pencil, dense LAPACK."""
    ceiling = settings.solver.spurious_ceiling if ceiling is None else ceiling
    K = _system_matrix(system).toarray()
    Mb = (system.mass_block() if system.n_p else sp.csc_matrix(system.M)).toarray()
    alpha, beta = sla.eig(K, Mb, right=False, homogeneous_eigvals=True)
    finite = np.abs(beta) > 1e-14 * np.maximum(np.abs(alpha), 1e-300)
    lam = alpha[finite] / beta[finite]
    real = np.abs(lam.imag) <= 1e-8 * np.maximum(np.abs(lam), 1.0)
    lam = lam.real[real]
    return np.sort(lam[(lam > 0.0) & (lam < ceiling)])
