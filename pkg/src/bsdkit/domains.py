"""The four classical bounded symmetric domains.

Points, membership classification, generic norms and their polarizations,
deterministic interior/boundary samplers, and the type-IV quadric lift.

Domain kinds and their point shapes:

* kind I   -- r x s complex matrices Z with I - ZZ* > 0 (1 <= r <= s)
* kind II  -- antisymmetric n x n matrices with I - ZZ* > 0
* kind III -- symmetric n x n matrices with I - ZZ* > 0
* kind IV  -- row vectors Z in C^n with ZZ* < 1 and 1 - 2ZZ* + |ZZ^t|^2 > 0
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericError, ParameterError, SamplingError, ShapeError
from .linalg import as_matrix, hybrid_tol

__all__ = [
    "DomainSpec",
    "Point",
    "Classification",
    "parse_spec",
    "format_spec",
    "point",
    "classify_point",
    "generic_norm",
    "polarized_norm",
    "polarized_norm_is_squared",
    "sample_point",
    "borel_lift_iv",
]

KINDS = ("I", "II", "III", "IV")

SHAPE_TOL = 1e-12


@dataclass(frozen=True)
class DomainSpec:
    """Descriptor of one classical domain: kind plus dimensions.

    Kind I uses (r, s) with 1 <= r <= s; kinds II/III/IV use n.
    """

    kind: str
    r: int = 0
    s: int = 0
    n: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParameterError(f"unknown domain kind {self.kind!r}")
        if self.kind == "I":
            if not (1 <= self.r <= self.s):
                raise ParameterError(f"kind I needs 1 <= r <= s, got r={self.r}, s={self.s}")
        elif self.kind == "II":
            if self.n < 2:
                raise ParameterError("kind II needs n >= 2")
        else:
            if self.n < 1:
                raise ParameterError(f"kind {self.kind} needs n >= 1")

    @property
    def shape(self) -> tuple:
        if self.kind == "I":
            return (self.r, self.s)
        if self.kind == "IV":
            return (1, self.n)
        return (self.n, self.n)

    def __str__(self):
        return format_spec(self)


def parse_spec(text: str) -> DomainSpec:
    """Parse the textual syntax ``I:r,s`` / ``II:n`` / ``III:n`` / ``IV:n``."""
    try:
        kind, _, dims = text.strip().partition(":")
        parts = [int(p) for p in dims.split(",")]
    except ValueError as exc:
        raise ParameterError(f"malformed domain spec {text!r}") from exc
    if kind == "I":
        if len(parts) != 2:
            raise ParameterError(f"kind I spec needs two dims, got {text!r}")
        return DomainSpec("I", r=parts[0], s=parts[1])
    if kind in ("II", "III", "IV"):
        if len(parts) != 1:
            raise ParameterError(f"kind {kind} spec needs one dim, got {text!r}")
        return DomainSpec(kind, n=parts[0])
    raise ParameterError(f"unknown domain kind in {text!r}")


def format_spec(spec: DomainSpec) -> str:
    if spec.kind == "I":
        return f"I:{spec.r},{spec.s}"
    return f"{spec.kind}:{spec.n}"


@dataclass(frozen=True)
class Point:
    """A point of a classical domain: its spec plus the carrier matrix.

    Kind IV points are stored as 1 x n row vectors.
    """

    spec: DomainSpec
    value: np.ndarray


def shape_residual(spec: DomainSpec, value: np.ndarray) -> float:
    """Deviation of ``value`` from the structural constraint of the kind."""
    if spec.kind == "II":
        return float(np.linalg.norm(value + value.T))
    if spec.kind == "III":
        return float(np.linalg.norm(value - value.T))
    return 0.0


def point(spec: DomainSpec, value, tol: float = SHAPE_TOL) -> Point:
    """Validated point constructor."""
    value = as_matrix(value)
    if value.shape != spec.shape:
        raise ShapeError(f"value shape {value.shape} does not match {spec} (wants {spec.shape})")
    res = shape_residual(spec, value)
    if res > hybrid_tol(tol, float(np.linalg.norm(value))):
        word = "antisymmetric" if spec.kind == "II" else "symmetric"
        raise ShapeError(f"kind {spec.kind} point is not {word} (residual {res:.3e})")
    return Point(spec, value)


def origin(spec: DomainSpec) -> Point:
    return Point(spec, np.zeros(spec.shape, dtype=complex))


def _zz_star(z: np.ndarray) -> float:
    # row vector Z: ZZ* = sum |z_k|^2
    return float(np.real(z @ z.conj().T)[0, 0])


def _zz_t(z: np.ndarray) -> complex:
    return complex((z @ z.T)[0, 0])


@dataclass(frozen=True)
class Classification:
    """Region verdict plus the signed margin that determined it."""

    region: str  # interior | boundary | exterior
    margin: float


def classify_point(p: Point, tol: float = 1e-9) -> Classification:
    """Classify a point as interior / boundary / exterior of its domain.

    Kinds I/II/III classify by the minimum eigenvalue of I - ZZ*; kind IV
    requires both ZZ* < 1 and the quartic generic norm to be positive, and
    the margin is the smaller of the two quantities.
    """
    z = p.value
    if p.spec.kind in ("I", "II", "III"):
        gram = np.eye(z.shape[0]) - z @ z.conj().T
        mu = float(np.linalg.eigvalsh(gram)[0])
        if mu > tol:
            return Classification("interior", mu)
        if abs(mu) <= tol:
            return Classification("boundary", mu)
        return Classification("exterior", mu)
    a = 1.0 - _zz_star(z)
    b = 1.0 - 2.0 * _zz_star(z) + abs(_zz_t(z)) ** 2
    margin = min(a, b)
    if a > tol and b > tol:
        return Classification("interior", margin)
    if abs(margin) <= tol and max(a, b) >= -tol:
        return Classification("boundary", margin)
    return Classification("exterior", margin)


def generic_norm(p: Point, tol: float = 1e-8) -> float:
    """Generic norm of the domain at ``p``.

    Kind I/III: det(I - ZZ*).  Kind II: the positive square root of
    det(I - ZZ*), which is only defined on the closed domain.  Kind IV:
    1 - 2ZZ* + |ZZ^t|^2.  Equals 1 at the origin and 0 on the boundary.
    """
    z = p.value
    if p.spec.kind == "IV":
        return 1.0 - 2.0 * _zz_star(z) + abs(_zz_t(z)) ** 2
    d = complex(np.linalg.det(np.eye(z.shape[0]) - z @ z.conj().T))
    if abs(d.imag) > hybrid_tol(1e-10, abs(d)):
        raise NumericError(f"generic norm determinant has imaginary part {d.imag:.3e}")
    if p.spec.kind == "II":
        if classify_point(p, tol).region == "exterior":
            raise DomainError("kind II generic norm is undefined outside the closed domain")
        return float(np.sqrt(max(d.real, 0.0)))
    return d.real


def polarized_norm(p: Point, q: Point) -> complex:
    """Polarized generic norm, holomorphic in ``p`` and anti-holomorphic in ``q``.

    Kind I/III: det(I - ZW*).  Kind IV: 1 - 2ZW* + (ZZ^t) conj(WW^t).
    Kind II returns the squared polarization det(I - ZW*); see
    :func:`polarized_norm_is_squared`.  Restricting to the diagonal recovers
    the generic norm (its square for kind II).
    """
    if p.spec != q.spec:
        raise ShapeError(f"spec mismatch: {p.spec} vs {q.spec}")
    z, w = p.value, q.value
    if p.spec.kind == "IV":
        zw = complex((z @ w.conj().T)[0, 0])
        return 1.0 - 2.0 * zw + _zz_t(z) * np.conj(_zz_t(w))
    return complex(np.linalg.det(np.eye(z.shape[0]) - z @ w.conj().T))


def polarized_norm_is_squared(spec: DomainSpec) -> bool:
    """True when :func:`polarized_norm` returns the square of the generic norm
    on the diagonal (kind II, where the off-diagonal square root has a branch
    ambiguity)."""
    return spec.kind == "II"


_SAMPLE_RETRIES = 64


def _gaussian_direction(spec: DomainSpec, rng) -> np.ndarray:
    g = rng.standard_normal(spec.shape) + 1j * rng.standard_normal(spec.shape)
    if spec.kind == "II":
        g = g - g.T
    elif spec.kind == "III":
        g = (g + g.T) / 2.0
    return g


def _iv_boundary_radius(d: np.ndarray) -> float:
    # Smallest positive root of 1 - 2u*(DD*) + u^2*|DD^t|^2 in u = lambda^2.
    dd_star = float(np.real(d @ d.conj().T)[0, 0])
    dd_t = abs(complex((d @ d.T)[0, 0]))
    if dd_star <= 0.0:
        raise SamplingError("degenerate zero direction")
    if dd_t**2 <= 1e-300:
        return float(np.sqrt(1.0 / (2.0 * dd_star)))
    disc = dd_star**2 - dd_t**2
    if disc < 0.0:
        disc = 0.0  # Cauchy-Schwarz guarantees disc >= 0; clip roundoff
    u = (dd_star - np.sqrt(disc)) / dd_t**2
    return float(np.sqrt(u))


def sample_point(spec: DomainSpec, region: str, seed) -> Point:
    """Deterministic sampler for interior or boundary points.

    Interior: a Gaussian shape-projected matrix scaled to put its top
    singular value at rho ~ U(0,1) (kind IV scales to rho times the radial
    boundary along the sampled direction).  Boundary: the same matrix scaled
    to top singular value exactly 1; kind IV solves the radial quadratic of
    the generic norm for its smallest positive root.
    """
    if region not in ("interior", "boundary"):
        raise ParameterError(f"region must be interior or boundary, got {region!r}")
    rng = np.random.default_rng(seed)
    for _ in range(_SAMPLE_RETRIES):
        g = _gaussian_direction(spec, rng)
        if spec.kind == "IV":
            try:
                radius = _iv_boundary_radius(g)
            except SamplingError:
                continue
            scale = radius if region == "boundary" else radius * rng.uniform()
            candidate = Point(spec, g * scale)
        else:
            top = np.linalg.svd(g, compute_uv=False)[0]
            if top <= 0.0:
                continue
            scale = (1.0 if region == "boundary" else rng.uniform()) / top
            candidate = Point(spec, g * scale)
        if classify_point(candidate, 1e-9).region == region:
            return candidate
    raise SamplingError(f"could not sample a {region} point of {spec}")


def borel_lift_iv(p: Point) -> np.ndarray:
    """Lift a kind IV point to its quadric representative
    ``(-2iZ, 1 + ZZ^t, i(1 - ZZ^t))`` in C^(n+2).

    The lift lies on the quadric ``sum_k x_k^2 = 0`` and carries the generic
    norm through the signature form:
    ``sum_{k<=n} |x_k|^2 - |x_{n+1}|^2 - |x_{n+2}|^2 = -2 * generic_norm``.
    """
    if p.spec.kind != "IV":
        raise ShapeError(f"borel_lift_iv needs a kind IV point, got {p.spec}")
    z = p.value[0]
    zzt = complex(np.sum(z * z))
    return np.concatenate([-2j * z, [1.0 + zzt, 1j * (1.0 - zzt)]])
