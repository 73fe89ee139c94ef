"""Domain types shared by every module: coefficients, scattering data, grids,
sampled fields and residual reports.

All types are frozen after construction.  Validation happens in the
constructors (or in :func:`validate_dataset` for the scattering data), so a
value that exists is a value that satisfies its invariants.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np


class Nls8Error(Exception):
    """Base class for every error raised by this package."""


class ValidationError(Nls8Error, ValueError):
    pass


class GridTooSmallError(Nls8Error, ValueError):
    pass


class DegenerateConfigurationError(Nls8Error, ArithmeticError):
    """The linear system of the soliton formula is (numerically) singular."""

    def __init__(self, message: str, x: float | None = None, t: float | None = None):
        super().__init__(message)
        self.x = x
        self.t = t


class OverflowUnrecoverableError(Nls8Error, OverflowError):
    pass


class AnalyticityError(Nls8Error, ValueError):
    """A Jost column was requested outside its half-plane of analyticity."""


class InsufficientDecayError(Nls8Error, ValueError):
    pass


COEFFICIENT_NAMES = ("A2", "A3", "A4", "A5", "A6", "A7", "A8")


@dataclass(frozen=True)
class Coefficients:
    """Real weights of the seven operators K2..K8."""

    A2: float = 0.0
    A3: float = 0.0
    A4: float = 0.0
    A5: float = 0.0
    A6: float = 0.0
    A7: float = 0.0
    A8: float = 0.0

    def __post_init__(self):
        for name in COEFFICIENT_NAMES:
            value = getattr(self, name)
            if isinstance(value, complex) or not math.isfinite(float(value)):
                raise ValidationError(f"{name} must be a finite real number, got {value!r}")
            object.__setattr__(self, name, float(value))

    @classmethod
    def all_ones(cls) -> "Coefficients":
        return cls(*([1.0] * 7))

    @classmethod
    def from_mapping(cls, mapping) -> "Coefficients":
        unknown = set(mapping) - set(COEFFICIENT_NAMES)
        if unknown:
            raise ValidationError(f"unknown coefficient(s): {sorted(unknown)}")
        return cls(**{k: float(v) for k, v in mapping.items()})

    def __getitem__(self, n: int) -> float:
        """``A[n]`` is the weight of K_n, for n = 2..8."""
        if not 2 <= n <= 8:
            raise KeyError(n)
        return getattr(self, f"A{n}")

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in COEFFICIENT_NAMES}

    def replace(self, **changes) -> "Coefficients":
        values = self.as_dict()
        values.update(changes)
        return Coefficients(**values)


@dataclass(frozen=True)
class SpectralPoint:
    """A discrete eigenvalue ``a_tilde + i b_tilde`` in the upper half-plane."""

    a_tilde: float
    b_tilde: float

    def __post_init__(self):
        a, b = float(self.a_tilde), float(self.b_tilde)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise ValidationError("spectral point must be finite")
        if not b > 0.0:
            raise ValidationError(
                f"spectral point must lie strictly in the upper half-plane, got Im = {b}")
        object.__setattr__(self, "a_tilde", a)
        object.__setattr__(self, "b_tilde", b)

    @property
    def value(self) -> complex:
        return complex(self.a_tilde, self.b_tilde)

    @classmethod
    def from_complex(cls, z: complex) -> "SpectralPoint":
        z = complex(z)
        return cls(z.real, z.imag)


@dataclass(frozen=True)
class SpectralEntry:
    point: SpectralPoint
    alpha: complex
    beta: complex

    @property
    def xi(self) -> float:
        """ln|alpha|; ``-inf`` when alpha vanishes."""
        return math.log(abs(self.alpha)) if self.alpha != 0 else -math.inf


@dataclass(frozen=True)
class SpectralDataset:
    """Discrete scattering data: eigenvalues with their norming vectors.

    Construct through :func:`make_dataset` or :func:`validate_dataset`; the raw
    constructor does not check anything.
    """

    entries: tuple[SpectralEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def N(self) -> int:
        return len(self.entries)

    @property
    def zetas(self) -> np.ndarray:
        return np.array([e.point.value for e in self.entries], dtype=complex)

    @property
    def alphas(self) -> np.ndarray:
        return np.array([e.alpha for e in self.entries], dtype=complex)

    @property
    def betas(self) -> np.ndarray:
        return np.array([e.beta for e in self.entries], dtype=complex)

    @property
    def xis(self) -> np.ndarray:
        return np.array([e.xi for e in self.entries], dtype=float)

    def min_denominator(self) -> float:
        """Smallest ``|zeta_j - conj(zeta_k)|`` over all pairs."""
        z = self.zetas
        return float(np.min(np.abs(z[None, :] - np.conj(z)[:, None])))


def validate_dataset(d: SpectralDataset | Iterable) -> SpectralDataset:
    """Return a validated :class:`SpectralDataset` or raise :class:`ValidationError`.

    Accepts an existing dataset or an iterable of ``(zeta, alpha, beta)``
    triples.  Rejects eigenvalues on or below the real axis, repeated
    eigenvalues and vanishing ``(alpha, beta)`` pairs.  Validating a validated
    dataset returns an equal value.
    """
    if isinstance(d, SpectralDataset):
        raw = [(e.point.value, e.alpha, e.beta) for e in d.entries]
    else:
        raw = list(d)
    if not raw:
        raise ValidationError("at least one spectral point is required")
    entries = []
    for item in raw:
        try:
            zeta, alpha, beta = item
        except (TypeError, ValueError):
            raise ValidationError(f"expected (zeta, alpha, beta), got {item!r}") from None
        point = zeta if isinstance(zeta, SpectralPoint) else SpectralPoint.from_complex(zeta)
        alpha, beta = complex(alpha), complex(beta)
        if not (np.isfinite(alpha) and np.isfinite(beta)):
            raise ValidationError("alpha and beta must be finite")
        if alpha == 0 and beta == 0:
            raise ValidationError(f"(alpha, beta) vanishes at zeta = {point.value}")
        entries.append(SpectralEntry(point, alpha, beta))
    values = [e.point.value for e in entries]
    if len(set(values)) != len(values):
        raise ValidationError("spectral points must be pairwise distinct (simple zeros)")
    return SpectralDataset(tuple(entries))


def make_dataset(*triples) -> SpectralDataset:
    """``make_dataset((0.3+0.2j, 1, 1), ...)``"""
    return validate_dataset(triples)


@dataclass(frozen=True)
class Grid:
    x0: float
    x1: float
    nx: int
    t0: float = 0.0
    t1: float = 0.0
    nt: int = 1

    def __post_init__(self):
        for name in ("x0", "x1", "t0", "t1"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValidationError(f"grid bound {name} must be finite")
            object.__setattr__(self, name, v)
        if int(self.nx) != self.nx or int(self.nt) != self.nt:
            raise ValidationError("nx and nt must be integers")
        object.__setattr__(self, "nx", int(self.nx))
        object.__setattr__(self, "nt", int(self.nt))
        if not self.x1 > self.x0:
            raise ValidationError("grid requires x1 > x0")
        if not self.t1 >= self.t0:
            raise ValidationError("grid requires t1 >= t0")
        if self.nx < 2 or self.nt < 1:
            raise ValidationError("grid requires nx >= 2 and nt >= 1")
        if self.nt == 1 and self.t1 != self.t0:
            raise ValidationError("a single time level requires t1 == t0")

    @classmethod
    def from_spacing(cls, x0, x1, hx, t0=0.0, t1=0.0, ht=None) -> "Grid":
        """Grid with (approximately) the requested spacings; end points are kept."""
        nx = int(round((x1 - x0) / hx)) + 1
        nt = 1 if ht is None or t1 == t0 else int(round((t1 - t0) / ht)) + 1
        return cls(x0, x1, nx, t0, t1, nt)

    @property
    def hx(self) -> float:
        return (self.x1 - self.x0) / (self.nx - 1)

    @property
    def ht(self) -> float:
        return (self.t1 - self.t0) / (self.nt - 1) if self.nt > 1 else 0.0

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x0, self.x1, self.nx)

    @property
    def t(self) -> np.ndarray:
        return np.linspace(self.t0, self.t1, self.nt)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nx, self.nt)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """(X, T) arrays of shape ``(nx, nt)``."""
        return np.meshgrid(self.x, self.t, indexing="ij")


@dataclass(frozen=True, eq=False)
class ComplexField:
    """Complex samples on a grid, indexed ``values[i_x, i_t]`` (plus ``[..., 2, 2]``
    for matrix-valued fields)."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape[:2] != self.grid.shape or v.shape[2:] not in ((), (2, 2)):
            raise ValidationError(
                f"field shape {v.shape} does not match grid {self.grid.shape} "
                "(scalar or 2x2 arity)")
        if not np.all(np.isfinite(v)):
            raise ValidationError("field contains non-finite samples")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def arity(self) -> str:
        return "scalar" if self.values.ndim == 2 else "matrix"

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)


@dataclass(frozen=True)
class ResidualReport:
    sup_norm: float
    l2_norm: float
    tolerance: float
    observed_order: float | None = None
    passed: bool = field(init=False)
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not (self.sup_norm >= 0 and self.l2_norm >= 0):
            raise ValidationError("norms must be non-negative")
        object.__setattr__(self, "passed", bool(self.sup_norm <= self.tolerance))

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    @classmethod
    def from_values(cls, values, tolerance: float, weight: float = 1.0, **kw) -> "ResidualReport":
        """Sup norm and discrete L2 norm (``sqrt(weight * sum|v|^2)``) of an array."""
        a = np.abs(np.asarray(values))
        sup = float(a.max()) if a.size else 0.0
        l2 = float(math.sqrt(weight * float(np.sum(a * a))))
        return cls(sup, l2, float(tolerance), **kw)

    def with_tolerance(self, tolerance: float) -> "ResidualReport":
        return ResidualReport(self.sup_norm, self.l2_norm, tolerance,
                              self.observed_order, dict(self.details))

    def as_dict(self) -> dict:
        out = {"sup_norm": self.sup_norm, "l2_norm": self.l2_norm,
               "tolerance": self.tolerance, "pass": self.passed}
        if self.observed_order is not None:
            out["observed_order"] = self.observed_order
        return out
