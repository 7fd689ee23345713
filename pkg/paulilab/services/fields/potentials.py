"""Analytic potential presets.

The same callables feed grid sampling (for the quantum problem) and the
classical flow, which needs exact gradients away from the grid. Points are
arrays whose leading axis holds the three coordinates.
"""

import ast
import logging
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field

import numpy as np

from paulilab.exceptions import ExpressionError
from paulilab.models.enums import Preset
from paulilab.services.fields.fields import ScalarField
from paulilab.services.fields.grid import Grid

logger = logging.getLogger(__name__)

Evaluator = Callable[[np.ndarray], np.ndarray]

DEFAULT_PARAMS: dict[Preset, dict[str, float]] = {
    Preset.CONSTANT: {"value": 1.0},
    Preset.FREE: {"value": 1.0},
    Preset.GAUSSIAN_WELL: {"amplitude": 2.0, "width": 0.5, "floor": -0.2},
    Preset.HARMONIC: {"depth": 1.0, "stiffness": 1.0},
    Preset.HARMONIC_CAPPED: {"depth": 1.0, "stiffness": 1.0, "cap": -0.5},
    Preset.ANHARMONIC: {
        "depth": 1.0,
        "stiffness": 1.0,
        "strength": 0.3,
        "onset": 0.9,
        "width": 0.19,
    },
    Preset.CUSTOM: {},
}

_ALLOWED_FUNCTIONS: dict[str, Callable] = {
    name: getattr(np, name)
    for name in ("exp", "log", "sqrt", "sin", "cos", "tan", "tanh", "cosh", "sinh", "abs",
                 "minimum", "maximum", "where", "clip", "arctan", "arctan2")
}
_ALLOWED_CONSTANTS = {"pi": np.pi, "e": np.e}
_ALLOWED_NODES = (
    ast.Expression, ast.BinOp, ast.UnaryOp, ast.Call, ast.Name, ast.Constant, ast.Load,
    ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow, ast.USub, ast.UAdd, ast.Mod,
    ast.Compare, ast.Lt, ast.LtE, ast.Gt, ast.GtE,
)


@dataclass(frozen=True)
class AnalyticPotential:
    """A potential V with its gradient, both vectorized over points."""

    preset: Preset
    params: Mapping[str, float]
    value_fn: Evaluator = field(repr=False)
    gradient_fn: Evaluator = field(repr=False)
    expression: str | None = None

    def value(self, points: np.ndarray) -> np.ndarray:
        """V at ``points`` (leading axis of length 3)."""
        return self.value_fn(np.asarray(points, dtype=float))

    def gradient(self, points: np.ndarray) -> np.ndarray:
        """grad V at ``points``, same shape as ``points``."""
        return self.gradient_fn(np.asarray(points, dtype=float))

    @property
    def upper_bound(self) -> float | None:
        """Known maximum of V, when the preset has one."""
        p = self.params
        match self.preset:
            case Preset.CONSTANT | Preset.FREE:
                return p["value"]
            case Preset.GAUSSIAN_WELL:
                return p["amplitude"] + p["floor"]
            case Preset.HARMONIC | Preset.HARMONIC_CAPPED | Preset.ANHARMONIC:
                return p["depth"]
            case _:
                return None


def _r2(points: np.ndarray) -> np.ndarray:
    return np.sum(points**2, axis=0)


def _compile_expression(expression: str) -> Evaluator:
    """Compile a whitelisted numpy expression in x, y, z, r."""
    try:
        tree = ast.parse(expression, mode="eval")
    except SyntaxError as e:
        raise ExpressionError(expression, f"syntax error: {e.msg}") from e
    names = set(_ALLOWED_FUNCTIONS) | set(_ALLOWED_CONSTANTS) | {"x", "y", "z", "r"}
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED_NODES):
            raise ExpressionError(expression, f"'{type(node).__name__}' is not allowed")
        if isinstance(node, ast.Name) and node.id not in names:
            raise ExpressionError(expression, f"unknown name '{node.id}'")
    code = compile(tree, "<potential>", "eval")

    def evaluate(points: np.ndarray) -> np.ndarray:
        scope = {
            **_ALLOWED_FUNCTIONS,
            **_ALLOWED_CONSTANTS,
            "x": points[0],
            "y": points[1],
            "z": points[2],
            "r": np.sqrt(_r2(points)),
        }
        try:
            with np.errstate(all="raise"):
                result = eval(code, {"__builtins__": {}}, scope)  # noqa: S307
        except (ArithmeticError, FloatingPointError, TypeError, ValueError) as e:
            raise ExpressionError(expression, str(e)) from e
        result = np.broadcast_to(np.asarray(result, dtype=float), points.shape[1:]).copy()
        if not np.all(np.isfinite(result)):
            raise ExpressionError(expression, "non-finite values")
        return result

    return evaluate


def _finite_difference_gradient(value_fn: Evaluator, step: float = 1e-5) -> Evaluator:
    def gradient(points: np.ndarray) -> np.ndarray:
        out = np.empty_like(points)
        for axis in range(3):
            shift = np.zeros((3,) + (1,) * (points.ndim - 1))
            shift[axis] = step
            out[axis] = (value_fn(points + shift) - value_fn(points - shift)) / (2 * step)
        return out

    return gradient


def make_potential(
    preset: Preset | str,
    params: Mapping[str, float] | None = None,
    expression: str | None = None,
) -> AnalyticPotential:
    """Build an analytic potential from a preset name and parameters.

    Missing parameters take the preset defaults.

    Args:
        preset: Preset name.
        params: Overrides of the preset parameters.
        expression: numpy expression in x, y, z, r (custom preset only).

    Returns:
        The potential.

    Raises:
        ExpressionError: If the custom expression is missing or invalid.
        ValueError: If the anharmonic width is not positive.
    """
    preset = Preset(preset)
    p = {**DEFAULT_PARAMS[preset], **(params or {})}

    match preset:
        case Preset.CONSTANT | Preset.FREE:
            v0 = p["value"]

            def value(x: np.ndarray) -> np.ndarray:
                return np.full(x.shape[1:], v0)

            def grad(x: np.ndarray) -> np.ndarray:
                return np.zeros_like(x)

        case Preset.GAUSSIAN_WELL:
            a, w, floor = p["amplitude"], p["width"], p["floor"]

            def value(x: np.ndarray) -> np.ndarray:
                return a * np.exp(-_r2(x) / (2 * w**2)) + floor

            def grad(x: np.ndarray) -> np.ndarray:
                return -(a / w**2) * np.exp(-_r2(x) / (2 * w**2)) * x

        case Preset.HARMONIC:
            depth, k = p["depth"], p["stiffness"]

            def value(x: np.ndarray) -> np.ndarray:
                return depth - k * _r2(x)

            def grad(x: np.ndarray) -> np.ndarray:
                return -2 * k * x

        case Preset.HARMONIC_CAPPED:
            depth, k, cap = p["depth"], p["stiffness"], p["cap"]

            def value(x: np.ndarray) -> np.ndarray:
                return np.maximum(depth - k * _r2(x), cap)

            def grad(x: np.ndarray) -> np.ndarray:
                return np.where(depth - k * _r2(x) > cap, -2 * k * x, 0.0)

        case Preset.ANHARMONIC:
            # harmonic inside radius `onset`; beyond it a cubic term in r^2 (C^2) reaches
            # `strength` once r^2 exceeds onset^2 by `width`
            depth, k, s = p["depth"], p["stiffness"], p["strength"]
            r0, w = p["onset"], p["width"]
            if w <= 0:
                raise ValueError(f"anharmonic width must be positive, got {w:g}")

            def value(x: np.ndarray) -> np.ndarray:
                excess = np.maximum(_r2(x) - r0**2, 0.0) / w
                return depth - k * _r2(x) - s * excess**3

            def grad(x: np.ndarray) -> np.ndarray:
                excess = np.maximum(_r2(x) - r0**2, 0.0) / w
                return (-2 * k - 6 * s * excess**2 / w) * x

        case Preset.CUSTOM:
            if not expression:
                raise ExpressionError("", "custom preset requires an expression")
            value = _compile_expression(expression)
            grad = _finite_difference_gradient(value)

    return AnalyticPotential(
        preset=preset, params=p, value_fn=value, gradient_fn=grad, expression=expression
    )


def sample_potential(
    preset: Preset | str,
    params: Mapping[str, float] | None,
    grid: Grid,
    expression: str | None = None,
) -> ScalarField:
    """Sample a preset potential on the grid.

    Args:
        preset: Preset name.
        params: Preset parameters (defaults filled in).
        grid: Target grid.
        expression: Expression for the custom preset.

    Returns:
        The sampled potential.
    """
    potential = make_potential(preset, params, expression)
    values = potential.value(grid.coordinates)
    field_ = ScalarField(grid, values)
    if potential.preset not in (Preset.CONSTANT, Preset.FREE):
        faces = np.concatenate(
            [values[0].ravel(), values[:, 0].ravel(), values[:, :, 0].ravel()]
        )
        if np.any(faces >= 0):
            logger.warning(
                "Potential %s is not negative on the box faces (max %.3g); low "
                "eigenfunctions may reach the periodic seam",
                potential.preset.value,
                faces.max(),
            )
    return field_
