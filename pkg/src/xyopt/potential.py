"""
Evaluation, derivatives and structural checks of 2-local potentials.

Every function accepts scalars or numpy arrays for the coordinates and
returns a float for scalar input.
"""

import json
import logging
from math import comb
from pathlib import Path

import numpy as np
import yaml

from .constants import H3_STRICT_MARGIN
from .exceptions import (
    ConfigError,
    DomainError,
    FamilyError,
    NondifferentiablePointError,
)
from .models import H3Report, PotentialSpec, TwistReport

logger = logging.getLogger(__name__)

SIDES = ("left", "right")


def _check_domain(*values) -> None:
    for value in values:
        array = np.asarray(value, dtype=float)
        if not np.all((array >= 0.0) & (array <= 1.0)):
            raise DomainError("Coordinates must lie in [0, 1]")


def _out(result):
    return float(result) if np.ndim(result) == 0 else result


def evaluate(spec: PotentialSpec, x, y):
    """h(x, y) from the field decomposition of ``spec``."""
    _check_domain(x, y)
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    z = x - y
    value = spec.poly_value(x, y)
    if spec.well_weight:
        value = value + spec.well_weight * (spec.well_value(x) + spec.well_value(y))
    if spec.abs_weight:
        value = value + spec.abs_weight * np.abs(z)
    if spec.sqrt_weight:
        value = value + spec.sqrt_weight * np.sqrt(1.0 + z * z)
    return _out(value)


def diagonal_profile(spec: PotentialSpec, a):
    """a -> h(a, a)."""
    return evaluate(spec, a, a)


def cost_matrix(spec: PotentialSpec, grid: np.ndarray, alpha: float) -> np.ndarray:
    """Reduced one-step costs c[i, j] = h(x_i, x_j) - alpha."""
    return evaluate(spec, grid[:, None], grid[None, :]) - alpha


def _abs_sign(spec: PotentialSpec, z: np.ndarray, side: str | None) -> np.ndarray:
    """
    Sign of z for the |x - y| term, one-sided on the diagonal.

    ``side`` names the direction from which the differentiated variable
    approaches: "right" gives +1 on the diagonal, "left" gives -1.
    """
    if side is not None and side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}, got {side!r}")
    on_diagonal = z == 0.0
    if spec.abs_weight and side is None and np.any(on_diagonal):
        raise NondifferentiablePointError(
            "|x - y| is not differentiable on the diagonal; pass side='left' or 'right'"
        )
    diagonal_sign = 1.0 if side == "right" else -1.0
    return np.where(on_diagonal, diagonal_sign, np.sign(z))


def d1(spec: PotentialSpec, x, y, side: str | None = None):
    """Partial derivative of h in its first argument."""
    _check_domain(x, y)
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    z = x - y
    value = spec.poly_dx(x, y)
    if spec.well_weight:
        value = value + spec.well_weight * spec.well_slope(x)
    if spec.abs_weight:
        value = value + spec.abs_weight * _abs_sign(spec, z, side)
    if spec.sqrt_weight:
        value = value + spec.sqrt_weight * z / np.sqrt(1.0 + z * z)
    return _out(value)


def d2(spec: PotentialSpec, x, y, side: str | None = None):
    """Partial derivative of h in its second argument."""
    _check_domain(x, y)
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    z = x - y
    value = spec.poly_dy(x, y)
    if spec.well_weight:
        value = value + spec.well_weight * spec.well_slope(y)
    if spec.abs_weight:
        # d/dy |x - y| = -sign(x - y); approaching from the right means y > x
        value = value + spec.abs_weight * _abs_sign(spec, y - x, side)
    if spec.sqrt_weight:
        value = value - spec.sqrt_weight * z / np.sqrt(1.0 + z * z)
    return _out(value)


def d12(spec: PotentialSpec, x, y):
    """
    Mixed derivative D2 D1 h. The |x - y| and well terms contribute nothing
    off the diagonal, so no side is needed.
    """
    _check_domain(x, y)
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    z = x - y
    value = spec.poly_dxy(x, y)
    if spec.sqrt_weight:
        value = value - spec.sqrt_weight * (1.0 + z * z) ** -1.5
    return _out(value)


def twist_check(spec: PotentialSpec, grid_n: int) -> TwistReport:
    """Scan D2 D1 h on a grid_n x grid_n lattice; twist holds iff the max is < 0."""
    if grid_n < 2:
        raise DomainError("twist_check needs grid_n >= 2")
    nodes = np.linspace(0.0, 1.0, grid_n)
    x, y = np.meshgrid(nodes, nodes, indexing="ij")
    values = np.broadcast_to(d12(spec, x, y), x.shape)
    worst = np.unravel_index(int(np.argmax(values)), values.shape)
    worst_value = float(values[worst])
    report = TwistReport(
        holds=worst_value < 0.0,
        worst_value=worst_value,
        worst_point=(float(nodes[worst[0]]), float(nodes[worst[1]])),
    )
    logger.debug("Twist scan of %s on %d^2 nodes: %s", spec.name, grid_n, report)
    return report


def h3_check(spec: PotentialSpec, samples: int, seed: int) -> H3Report:
    """
    Sample the strict quadrangle inequality
    h(x1, y2) + h(x2, y1) - h(x1, y1) - h(x2, y2) > 0 for x1 < x2, y1 < y2.
    """
    if samples < 1:
        raise DomainError("h3_check needs at least one sample")
    rng = np.random.default_rng(seed)
    xi = np.sort(rng.random((samples, 2)), axis=1)
    eta = np.sort(rng.random((samples, 2)), axis=1)
    margin = (
        evaluate(spec, xi[:, 0], eta[:, 1])
        + evaluate(spec, xi[:, 1], eta[:, 0])
        - evaluate(spec, xi[:, 0], eta[:, 0])
        - evaluate(spec, xi[:, 1], eta[:, 1])
    )
    worst_margin = float(np.min(margin))
    return H3Report(
        holds_on_samples=worst_margin > H3_STRICT_MARGIN,
        worst_margin=worst_margin,
        samples=samples,
    )


def interval_equivalence_defect(spec: PotentialSpec, z):
    """
    Diagonal limit of the one-sided quotient sum
    (dP/dx + dP/dy)(z, z) + 2 kappa w'(z) + 2 lam; the sqrt term drops out.
    Zero means equivalence along a minimizer interval through z.
    """
    _check_domain(z)
    z = np.asarray(z, dtype=float)
    value = spec.poly_dx(z, z) + spec.poly_dy(z, z) + 2.0 * spec.abs_weight
    if spec.well_weight:
        value = value + 2.0 * spec.well_weight * spec.well_slope(z)
    return _out(value)


# rho family: h = rho(x - y) + lam |x - y| (+ mu sqrt(1 + (x - y)^2))


def rho_family(
    rho_coeffs, sqrt_weight: float = 0.0, abs_weight: float = 0.5, name: str = "rho"
) -> PotentialSpec:
    """Build rho(x - y) + abs_weight |x - y| + sqrt_weight sqrt(1 + (x - y)^2)."""
    poly: dict[tuple[int, int], float] = {}
    for k, c in enumerate(rho_coeffs):
        for m in range(k + 1):
            key = (m, k - m)
            poly[key] = poly.get(key, 0.0) + c * comb(k, m) * (-1) ** (k - m)
    return PotentialSpec(
        poly=tuple((i, j, c) for (i, j), c in poly.items()),
        abs_weight=abs_weight,
        sqrt_weight=sqrt_weight,
        name=name,
    )


def is_rho_family(spec: PotentialSpec) -> bool:
    return spec.abs_weight == 0.5 and spec.rho_coefficients() is not None


def rho_derivative_at_zero(spec: PotentialSpec) -> float:
    coeffs = spec.rho_coefficients()
    if coeffs is None:
        raise FamilyError(f"{spec.name} is not of the form rho(x - y) + ...")
    return coeffs[1] if len(coeffs) > 1 else 0.0


def rho_strictly_convex(spec: PotentialSpec, samples: int = 401) -> bool:
    """Strict convexity of the full rho (polynomial plus sqrt term) on [-1, 1]."""
    coeffs = spec.rho_coefficients()
    if coeffs is None:
        return False
    z = np.linspace(-1.0, 1.0, samples)
    second = np.polynomial.polynomial.polyval(
        z, np.polynomial.polynomial.polyder(np.asarray(coeffs, dtype=float), 2)
    )
    second = second + spec.sqrt_weight * (1.0 + z * z) ** -1.5
    return bool(np.all(second > 0.0))


def rho_closed_form_barrier(spec: PotentialSpec, a: float, b: float) -> float:
    """Barrier between fixed points of an interval minimizer set: rho'(0)(b - a) + lam |b - a|."""
    return rho_derivative_at_zero(spec) * (b - a) + spec.abs_weight * abs(b - a)


def h4_certificate(spec: PotentialSpec, grid_n: int = 64) -> str:
    """Which indirect certificate of the crossing condition applies, if any."""
    if spec.is_smooth and twist_check(spec, grid_n).holds:
        return "twist"
    if is_rho_family(spec) and rho_strictly_convex(spec):
        return "rho-convexity"
    return "uncertified"


# built-ins and loading


def _example_nonclosed() -> PotentialSpec:
    # (x - y)^2 + x^2
    return PotentialSpec(
        poly=((2, 0, 2.0), (1, 1, -2.0), (0, 2, 1.0)), name="example-nonclosed"
    )


def _well_spec(wells, name) -> PotentialSpec:
    # -xy + p(x) + p(y), p(x) = x^2 / 2 + w(x)
    return PotentialSpec(
        poly=((1, 1, -1.0), (2, 0, 0.5), (0, 2, 0.5)),
        wells=wells,
        well_weight=100.0,
        name=name,
    )


BUILTIN_POTENTIALS = {
    "example-nonclosed": _example_nonclosed,
    "rho-quadratic": lambda: rho_family((0.0, 0.0, 1.0), name="rho-quadratic"),
    "rho-quartic": lambda: rho_family((0.0, 0.0, 1.0, 0.0, 1.0), name="rho-quartic"),
    "remark-nonsmooth": lambda: PotentialSpec(
        abs_weight=0.5, sqrt_weight=1.0, name="remark-nonsmooth"
    ),
    "flat-well": lambda: _well_spec(((0.25, 0.75),), "flat-well"),
    "two-well": lambda: _well_spec(((0.1, 0.3), (0.7, 0.9)), "two-well"),
}


def builtin_potential(name: str) -> PotentialSpec:
    try:
        return BUILTIN_POTENTIALS[name]()
    except KeyError:
        raise ConfigError(
            f"Unknown built-in potential '{name}'. "
            f"Choices: {', '.join(sorted(BUILTIN_POTENTIALS))}"
        ) from None


def load_potential(source) -> PotentialSpec:
    """
    Resolve a built-in name, a mapping, an inline JSON/YAML document or a
    path to one into a PotentialSpec.
    """
    if isinstance(source, PotentialSpec):
        return source
    if isinstance(source, dict):
        return PotentialSpec.from_dict(source)
    if not isinstance(source, str) or not source.strip():
        raise ConfigError(f"Cannot interpret potential {source!r}")

    if source in BUILTIN_POTENTIALS:
        return builtin_potential(source)

    path = Path(source)
    name = "custom"
    if not source.lstrip().startswith(("{", "[")) and path.is_file():
        text = path.read_text(encoding="UTF-8")
        name = path.stem
    elif source.lstrip().startswith("{"):
        text = source
    else:
        raise ConfigError(
            f"'{source}' is neither a built-in potential, a file nor a JSON document"
        )

    try:
        document = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigError(f"Malformed potential document: {e}") from e
    logger.debug("Loaded potential document: %s", json.dumps(document, default=str))
    return PotentialSpec.from_dict(document, name=name)
