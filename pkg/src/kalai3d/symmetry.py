"""Hypothesis checks: central symmetry and hyperplane reflection symmetry.

Two separate facts are verified about an input polytope: that its vertex
set equals its own negation, and that reflecting across each hyperplane
normal to a given orthogonal basis vector permutes the vertex set.
Neither implies the other, so the report carries both.

Reflections divide by v.v only, so everything stays rational and the
checks are exact set comparisons, never tolerance tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .polytope import Polytope
from .ratgeom import QVector

__all__ = [
    "OrthoBasis",
    "SymmetryReport",
    "standard_basis",
    "reflect",
    "is_centrally_symmetric",
    "verify_basis",
    "detect_standard_basis",
]


@dataclass(frozen=True)
class OrthoBasis:
    """Pairwise-orthogonal nonzero rational vectors, one per dimension.

    Construction enforces the invariants; code that needs to *report* a
    bad basis instead of raising should hand the raw vectors to
    verify_basis, which accepts plain sequences too.
    """

    vectors: tuple

    def __post_init__(self):
        vecs = tuple(
            v if isinstance(v, QVector) else QVector(v) for v in self.vectors
        )
        if not vecs:
            raise ValueError("basis needs at least one vector")
        d = len(vecs[0])
        if len(vecs) != d:
            raise ValueError(f"{len(vecs)} vectors for dimension {d}")
        for i, v in enumerate(vecs):
            if len(v) != d:
                raise ValueError("basis vectors of mixed lengths")
            if v.is_zero():
                raise ValueError(f"basis vector {i} is zero")
        for i in range(d):
            for j in range(i + 1, d):
                if vecs[i].dot(vecs[j]) != 0:
                    raise ValueError(f"basis vectors {i} and {j} not orthogonal")
        object.__setattr__(self, "vectors", vecs)

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


@dataclass(frozen=True)
class SymmetryReport:
    """Outcome of the two hypothesis checks on one polytope.

    failing_vector is the index of the first basis vector that broke
    either orthogonality or reflection symmetry, or None.  details is a
    human-readable account of the first failure (or of success).
    """

    centrally_symmetric: bool
    basis_verified: bool
    failing_vector: Optional[int]
    details: str

    @property
    def hypotheses_hold(self) -> bool:
        return self.centrally_symmetric and self.basis_verified

    def to_json_dict(self) -> dict:
        return {
            "centrally_symmetric": self.centrally_symmetric,
            "basis_verified": self.basis_verified,
            "failing_vector": self.failing_vector,
            "details": self.details,
        }


def standard_basis(dim: int) -> OrthoBasis:
    """The coordinate basis e_1 .. e_dim."""
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    return OrthoBasis(tuple(QVector.unit(dim, i) for i in range(dim)))


def reflect(x: QVector, v: QVector) -> QVector:
    """Reflect x across the hyperplane through the origin normal to v."""
    if not isinstance(x, QVector):
        x = QVector(x)
    if not isinstance(v, QVector):
        v = QVector(v)
    if v.is_zero():
        raise ValueError("cannot reflect across a zero normal")
    scale = 2 * x.dot(v) / v.dot(v)
    return x - scale * v


def is_centrally_symmetric(p: Polytope) -> bool:
    """Whether the vertex set equals its pointwise negation."""
    vset = set(p.vertices)
    return {-v for v in vset} == vset


def verify_basis(
    p: Polytope, basis: Union[OrthoBasis, Sequence]
) -> SymmetryReport:
    """Check every hypothesis the witness construction relies on.

    Accepts an OrthoBasis or a raw vector sequence; raw sequences let a
    caller report a non-orthogonal user-supplied basis as a failed check
    instead of an exception.  Wrong vector count is still an error: there
    is nothing meaningful to report against the wrong dimension.
    """
    if isinstance(basis, OrthoBasis):
        vecs = basis.vectors
    else:
        vecs = tuple(v if isinstance(v, QVector) else QVector(v) for v in basis)
    if len(vecs) != p.dim:
        raise ValueError(f"expected {p.dim} basis vectors, got {len(vecs)}")
    if any(len(v) != p.dim for v in vecs):
        raise ValueError("basis vector length differs from polytope dimension")

    central = is_centrally_symmetric(p)

    def report(ok: bool, failing: Optional[int], details: str) -> SymmetryReport:
        if not central:
            details = f"the vertex set is not centrally symmetric; {details}"
        return SymmetryReport(
            centrally_symmetric=central,
            basis_verified=ok,
            failing_vector=failing,
            details=details,
        )

    for i, v in enumerate(vecs):
        if v.is_zero():
            return report(False, i, f"basis vector {i} is zero")
    for i in range(len(vecs)):
        for j in range(i + 1, len(vecs)):
            if vecs[i].dot(vecs[j]) != 0:
                return report(
                    False, j, f"basis vectors {i} and {j} are not orthogonal"
                )

    vset = set(p.vertices)
    for i, v in enumerate(vecs):
        if {reflect(x, v) for x in vset} != vset:
            return report(
                False,
                i,
                f"reflection across the hyperplane normal to basis vector {i} "
                "does not preserve the vertex set",
            )

    if central:
        return SymmetryReport(
            centrally_symmetric=True,
            basis_verified=True,
            failing_vector=None,
            details=(
                "centrally symmetric; "
                f"all {len(vecs)} reflection symmetries verified"
            ),
        )
    return report(True, None, f"all {len(vecs)} reflection symmetries verified")


def detect_standard_basis(p: Polytope) -> Optional[OrthoBasis]:
    """The coordinate basis, if the polytope is symmetric about it."""
    basis = standard_basis(p.dim)
    if verify_basis(p, basis).basis_verified:
        return basis
    return None
