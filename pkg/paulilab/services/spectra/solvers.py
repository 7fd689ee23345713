"""Eigenpairs of a Hermitian operator below a threshold.

The dense path diagonalizes the explicit matrix and doubles as the oracle for
small grids. The iterative path runs ARPACK on the shifted operator
``c - H`` restricted to the complement of the eigenvectors already found, so
each round picks up the next block from the bottom of the spectrum and
degenerate clusters larger than the block size are not lost.
"""

import logging
from dataclasses import replace

import numpy as np
import scipy.linalg
from scipy.sparse.linalg import ArpackError, ArpackNoConvergence, LinearOperator, eigsh
from tenacity import Retrying, before_sleep_log, retry_if_exception_type, stop_after_attempt

from paulilab.core.protocols import HermitianOperator
from paulilab.exceptions import OperatorError, SolverConvergenceError
from paulilab.models.constants import DENSE_CERTIFY_SITES, GRAM_TOLERANCE, RESIDUAL_TOLERANCE
from paulilab.models.enums import SolverKind
from paulilab.models.settings import SolverOptions
from paulilab.services.spectra.result import SpectralResult, fix_phases

logger = logging.getLogger(__name__)


def resolve_solver(kind: SolverKind, dimension: int, options: SolverOptions) -> SolverKind:
    """Pick dense or iterative for ``auto``."""
    if kind != SolverKind.AUTO:
        return kind
    return SolverKind.DENSE if dimension <= options.dense_limit else SolverKind.ITERATIVE


def _residuals(H: HermitianOperator, eigenvalues: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    if vectors.shape[1] == 0:
        return np.zeros(0)
    return np.linalg.norm(H.apply_flat(vectors) - vectors * eigenvalues, axis=0)


def _split(
    H: HermitianOperator,
    tau: float,
    eigenvalues: np.ndarray,
    vectors: np.ndarray,
    gap: float,
    solver: SolverKind,
    usable: bool = True,
) -> SpectralResult:
    """Separate eigenvalues at or below tau - gap from the ambiguous band around tau."""
    keep = eigenvalues <= tau - gap
    ambiguous = eigenvalues[(eigenvalues > tau - gap) & (eigenvalues <= tau + gap)]
    kept_vectors = fix_phases(vectors[:, keep])
    kept_values = eigenvalues[keep]
    if ambiguous.size:
        logger.info("%d eigenvalue(s) within %.1e of the threshold %g", ambiguous.size, gap, tau)
    return SpectralResult(
        grid=H.grid,
        h=H.h,
        threshold=tau,
        eigenvalues=kept_values,
        vectors=kept_vectors,
        residuals=_residuals(H, kept_values, kept_vectors),
        solver=solver,
        usable=usable,
        ambiguous_values=ambiguous,
        gap_tolerance=gap,
    )


def _check_lower_bound(H: HermitianOperator, eigenvalues: np.ndarray) -> None:
    if eigenvalues.size == 0:
        return
    bound = H.lower_bound
    if eigenvalues[0] < bound - 1e-8 * max(1.0, abs(bound)):
        raise OperatorError(
            f"eigenvalue {eigenvalues[0]:.6g} lies below the operator bound {bound:.6g}"
        )


def dense_spectrum(H: HermitianOperator, tau: float, gap: float) -> SpectralResult:
    """Full diagonalization; the reference for small grids."""
    matrix = H.dense_matrix()
    eigenvalues, vectors = scipy.linalg.eigh(matrix)
    _check_lower_bound(H, eigenvalues)
    window = eigenvalues <= tau + gap
    logger.debug(
        "Dense solve of dimension %d: %d eigenvalues <= %g", H.dimension, window.sum(), tau
    )
    return _split(H, tau, eigenvalues[window], vectors[:, window], gap, SolverKind.DENSE)


def _orthonormal_extension(basis: np.ndarray, candidates: np.ndarray) -> np.ndarray:
    """Columns of ``candidates`` orthogonalized against ``basis``, rank-revealed."""
    for _ in range(2):
        candidates = candidates - basis @ (basis.conj().T @ candidates)
    if candidates.shape[1] == 0:
        return candidates
    q, r, _ = scipy.linalg.qr(candidates, mode="economic", pivoting=True)
    diagonal = np.abs(np.diag(r))
    rank = int(np.sum(diagonal > 1e-8 * max(diagonal.max(initial=0.0), 1.0)))
    return q[:, :rank]


def _rayleigh_ritz(H: HermitianOperator, basis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if basis.shape[1] == 0:
        return np.zeros(0), basis
    projected = basis.conj().T @ H.apply_flat(basis)
    projected = 0.5 * (projected + projected.conj().T)
    theta, rotation = scipy.linalg.eigh(projected)
    return theta, basis @ rotation


def _partial_result(
    H: HermitianOperator, tau: float, basis: np.ndarray, gap: float
) -> SpectralResult:
    theta, vectors = _rayleigh_ritz(H, basis)
    return _split(H, tau, theta, vectors, gap, SolverKind.ITERATIVE, usable=False)


def iterative_spectrum(
    H: HermitianOperator,
    tau: float,
    options: SolverOptions,
    seed: int = 0,
    enlarge: int = 1,
) -> SpectralResult:
    """Deflated Krylov solve for all eigenvalues <= tau.

    Args:
        H: Operator with ``apply_flat`` and a lower bound.
        tau: Threshold.
        options: Block size, round limit and tolerances.
        seed: Seed for the ARPACK starting vectors.
        enlarge: Factor on the Krylov subspace size, raised on retries.

    Returns:
        Certified eigenpairs.

    Raises:
        SolverConvergenceError: If ARPACK fails, the round limit is hit or the
            final residuals are too large; carries the partial result.
    """
    n = H.dimension
    gap = options.gap_tolerance
    shift = max(-H.lower_bound, tau, 0.0) + 1.0
    rng = np.random.default_rng(seed)
    basis = np.zeros((n, 0), dtype=np.complex128)
    block = options.block_size * enlarge

    def deflated(x: np.ndarray) -> np.ndarray:
        x = x - basis @ (basis.conj().T @ x)
        y = shift * x - H.apply_flat(x)
        return y - basis @ (basis.conj().T @ y)

    operator = LinearOperator(
        (n, n),
        matvec=lambda x: deflated(x.reshape(-1)),
        matmat=deflated,
        dtype=np.complex128,
    )

    for round_index in range(options.max_rounds):
        k = min(block, n - 2)
        if basis.shape[1] + k >= n - 1:
            logger.info("Subspace exhausted after %d vectors; finishing densely", basis.shape[1])
            return dense_spectrum(H, tau, gap)
        v0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        v0 = v0 - basis @ (basis.conj().T @ v0)
        ncv = min(n, max(2 * k + 1, 20) * enlarge)
        try:
            shifted, vectors = eigsh(
                operator, k=k, which="LA", v0=v0, ncv=ncv, tol=options.tolerance
            )
        except (ArpackNoConvergence, ArpackError) as exc:
            raise SolverConvergenceError(
                f"ARPACK failed in round {round_index}: {exc}",
                partial=_partial_result(H, tau, basis, gap),
            ) from exc

        eigenvalues = shift - shifted
        wanted = eigenvalues <= tau - gap
        added = _orthonormal_extension(basis, vectors[:, wanted])
        basis = np.hstack([basis, added])
        logger.debug(
            "Round %d: k=%d, %d wanted, %d new, basis %d, lowest %.6g",
            round_index,
            k,
            int(wanted.sum()),
            added.shape[1],
            basis.shape[1],
            float(eigenvalues.min()),
        )
        if wanted.all():
            block *= 2
            continue
        if added.shape[1] == 0:
            break
    else:
        raise SolverConvergenceError(
            f"no certificate after {options.max_rounds} rounds",
            partial=_partial_result(H, tau, basis, gap),
        )

    theta, vectors = _rayleigh_ritz(H, basis)
    _check_lower_bound(H, theta)
    result = _split(H, tau, theta, vectors, gap, SolverKind.ITERATIVE)
    tolerance = RESIDUAL_TOLERANCE * np.maximum(1.0, np.abs(result.eigenvalues))
    if np.any(result.residuals > tolerance) or result.gram_defect() > GRAM_TOLERANCE:
        raise SolverConvergenceError(
            f"residual {result.residuals.max(initial=0.0):.2e} or Gram defect "
            f"{result.gram_defect():.2e} above tolerance",
            partial=_partial_result(H, tau, basis, gap),
        )
    return result


def _certify(H: HermitianOperator, result: SpectralResult) -> SpectralResult:
    """Count-check against a dense solve on small grids."""
    reference = dense_spectrum(H, result.threshold, result.gap_tolerance)
    if reference.count != result.count:
        raise SolverConvergenceError(
            f"iterative run found {result.count} eigenvalues, dense found {reference.count}",
            partial=result,
        )
    return replace(result, certified=True)


def negative_spectrum(
    H: HermitianOperator,
    tau: float = 0.0,
    solver: SolverKind = SolverKind.AUTO,
    options: SolverOptions | None = None,
    seed: int = 0,
) -> SpectralResult:
    """All eigenpairs of H at or below tau.

    Iterative solves are retried with a larger Krylov subspace. When every
    attempt fails the partial result is returned with ``usable=False``.

    Args:
        H: Operator, typically a PauliOperator.
        tau: Threshold, usually 0.
        solver: dense, iterative or auto.
        options: Solver options.
        seed: Seed for the starting vectors.

    Returns:
        SpectralResult sorted ascending, eigenvalues within the gap tolerance
        of tau reported separately as ambiguous.
    """
    options = options or SolverOptions()
    kind = resolve_solver(solver, H.dimension, options)
    if kind == SolverKind.DENSE:
        return dense_spectrum(H, tau, options.gap_tolerance)

    attempt_numbers = iter(range(1, options.attempts + 1))

    def attempt() -> SpectralResult:
        number = next(attempt_numbers)
        result = iterative_spectrum(H, tau, options, seed=seed + number - 1, enlarge=number)
        if options.certify and H.grid.n_sites <= DENSE_CERTIFY_SITES:
            result = _certify(H, result)
        return result

    retryer = Retrying(
        stop=stop_after_attempt(options.attempts),
        retry=retry_if_exception_type(SolverConvergenceError),
        before_sleep=before_sleep_log(logger, logging.INFO),
        reraise=True,
    )
    try:
        return retryer(attempt)
    except SolverConvergenceError as exc:
        logger.warning("Iterative solve failed after %d attempts: %s", options.attempts, exc)
        if isinstance(exc.partial, SpectralResult):
            return replace(exc.partial, usable=False)
        return SpectralResult.empty(H.grid, H.h, tau, SolverKind.ITERATIVE, usable=False)
