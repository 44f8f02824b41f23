"""Spectral invariants of origin-preserving polynomial maps.

Each homogeneous piece of a map is flattened into a coefficient operator:
rows are the independent target entries, columns are the degree-d monomials
over the source variables, in coordinates that make origin isotropies act
unitarily on both sides.  Concretely the columns carry the Fischer
normalization sqrt(alpha!) and, for kinds II/III, source variables and
target entries are rescaled by sqrt(2) on off-diagonal positions so that
the independent-entry coordinates are orthonormal for the Frobenius inner
product (under which the isotropy substitutions are honest unitaries).

The per-degree singular values of these operators are therefore invariant
under isotropic conjugation, which makes mismatched spectra a sound
certificate of inequivalence for origin-preserving proper polynomial maps;
matching spectra certify nothing.
"""

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np

from .domains import DomainSpec
from .errors import ParameterError, ShapeError
from .polymaps import PolyMap, homogeneous_parts, source_positions

__all__ = [
    "monomials_of_degree",
    "coefficient_operator",
    "invariant_spectrum",
    "DistinguishResult",
    "distinguish",
    "INEQUIVALENT",
    "INDISTINGUISHABLE",
]

INEQUIVALENT = "inequivalent"
INDISTINGUISHABLE = "indistinguishable-by-invariants"


def monomials_of_degree(nvars: int, degree: int) -> list:
    """All exponent vectors over ``nvars`` variables of total degree ``degree``,
    in a fixed deterministic order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for k in combo:
            exps[k] += 1
        out.append(tuple(exps))
    return out


def _entry_weights(spec: DomainSpec) -> np.ndarray:
    """Frobenius weights of the independent entries (sqrt(2) where the entry
    also occupies a mirrored position)."""
    if spec.kind in ("II", "III"):
        return np.array([math.sqrt(2.0) if i != j else 1.0 for i, j in source_positions(spec)])
    return np.ones(len(source_positions(spec)))


def _check_supported(spec: DomainSpec):
    if spec.kind == "IV":
        raise ParameterError("spectral invariants are not defined for kind IV maps here")


def coefficient_operator(f_d: PolyMap, degree: int = None) -> np.ndarray:
    """Coefficient operator of a homogeneous map piece.

    Entry (row, alpha) is the coefficient of monomial alpha in the row's
    target entry, times sqrt(alpha!) and the Frobenius weights described in
    the module docstring.  Raises on non-homogeneous input.
    """
    _check_supported(f_d.source)
    _check_supported(f_d.target)
    degrees = {sum(exps) for terms in f_d.entries.values() for exps in terms}
    if len(degrees) > 1:
        raise ShapeError(f"map is not homogeneous (degrees {sorted(degrees)})")
    if degree is None:
        if not degrees:
            raise ShapeError("empty map needs an explicit degree")
        degree = degrees.pop()
    elif degrees and degrees != {degree}:
        raise ShapeError(f"map has degree {degrees.pop()}, not {degree}")

    src_weights = _entry_weights(f_d.source)
    tgt_positions = source_positions(f_d.target)
    tgt_weights = _entry_weights(f_d.target)
    monomials = monomials_of_degree(f_d.nvars, degree)
    col_of = {m: k for k, m in enumerate(monomials)}
    op = np.zeros((len(tgt_positions), len(monomials)), dtype=complex)
    for row, pos in enumerate(tgt_positions):
        for exps, coeff in f_d.entries.get(pos, {}).items():
            fischer = math.sqrt(math.prod(math.factorial(e) for e in exps))
            rescale = math.prod(w ** -e for w, e in zip(src_weights, exps))
            op[row, col_of[exps]] = coeff * fischer * rescale * tgt_weights[row]
    return op


def invariant_spectrum(f: PolyMap) -> dict:
    """Per-degree descending singular values of the coefficient operators."""
    _check_supported(f.source)
    _check_supported(f.target)
    return {
        d: np.linalg.svd(coefficient_operator(part, d), compute_uv=False)
        for d, part in homogeneous_parts(f).items()
    }


@dataclass(frozen=True)
class DistinguishResult:
    verdict: str
    distances: dict  # degree -> sup distance between sorted spectra
    max_distance: float

    @property
    def inequivalent(self) -> bool:
        return self.verdict == INEQUIVALENT


def _spectrum_distance(a, b) -> float:
    # zero-pad to a common length; spectra are already sorted descending
    n = max(len(a), len(b))
    pa = np.zeros(n)
    pa[: len(a)] = a
    pb = np.zeros(n)
    pb[: len(b)] = b
    return float(np.max(np.abs(pa - pb))) if n else 0.0


def distinguish(f: PolyMap, g: PolyMap, tol: float = 1e-8) -> DistinguishResult:
    """Compare spectral invariants of two origin-preserving maps.

    ``inequivalent`` is a sound verdict for proper polynomial maps fixing the
    origin (equivalence would force isotropic equivalence, which preserves
    the spectra); ``indistinguishable-by-invariants`` is not an equivalence
    certificate.  A degree present in one map but absent in the other is an
    immediate mismatch.
    """
    if f.source != g.source or f.target != g.target:
        raise ShapeError("maps must share source and target specs")
    zero_f = tuple([0] * f.nvars)
    for name, m in (("first", f), ("second", g)):
        if any(zero_f in terms for terms in m.entries.values()):
            raise ParameterError(f"{name} map does not preserve the origin")
    spec_f = invariant_spectrum(f)
    spec_g = invariant_spectrum(g)
    distances = {}
    mismatch = False
    for d in sorted(set(spec_f) | set(spec_g)):
        a = spec_f.get(d, np.zeros(0))
        b = spec_g.get(d, np.zeros(0))
        if (d in spec_f) != (d in spec_g):
            mismatch = True
        distances[d] = _spectrum_distance(a, b)
    worst = max(distances.values(), default=0.0)
    verdict = INEQUIVALENT if (mismatch or worst > tol) else INDISTINGUISHABLE
    return DistinguishResult(verdict, distances, worst)
