"""Linking-matrix formulas for contact surgery presentations.

A presentation consists of contact (-1)-surgery components (framing
tb - 1) and Stein 1-handles (framing 0), with their pairwise linking
numbers, plus the linking vectors of the transverse link components
with the surgery link.  From the resulting matrix Q the module
evaluates the capped-surface self-intersection, the Chern-class
evaluation against the rotation vector, self-linking numbers, and the
quasi-positive braid identity tau = (w - n + l)/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg

KINDS = ("surgery", "handle")


@dataclass(frozen=True)
class SurgeryComponent:
    """One component of the surgery diagram.

    kind "surgery" is a contact (-1)-surgery with coefficient tb - 1;
    kind "handle" is a Stein 1-handle with coefficient 0 and rot 0.
    """

    kind: str
    tb: int = 0
    rot: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(
                f"unknown component kind {self.kind!r}; only integral "
                f"(-1)-surgeries and 1-handles are supported"
            )
        if self.kind == "handle" and self.rot != 0:
            raise ValueError("1-handle components carry rot = 0")

    @property
    def coefficient(self) -> int:
        return self.tb - 1 if self.kind == "surgery" else 0


@dataclass(frozen=True)
class SurgeryPresentation:
    components: tuple[SurgeryComponent, ...]
    linking: tuple[tuple[int, ...], ...]  # lk(J_i, J_j), zero diagonal
    link_vectors: tuple[tuple[int, ...], ...]  # one vector per transverse component

    def __post_init__(self):
        t = len(self.components)
        if len(self.linking) != t or any(len(row) != t for row in self.linking):
            raise ValueError("linking matrix must be t x t")
        for i in range(t):
            if self.linking[i][i] != 0:
                raise ValueError("linking matrix diagonal must be zero")
            for j in range(i + 1, t):
                if self.linking[i][j] != self.linking[j][i]:
                    raise ValueError(f"linking matrix not symmetric at ({i},{j})")
        for v in self.link_vectors:
            if len(v) != t:
                raise ValueError("link component vector has wrong length")
        if t and linalg.det(self._matrix()) == 0:
            raise linalg.SingularMatrixError("surgery linking matrix is singular")

    def _matrix(self) -> list[list[int]]:
        t = len(self.components)
        q = [list(row) for row in self.linking]
        for i in range(t):
            q[i][i] = self.components[i].coefficient
        return q

    @property
    def rot_vector(self) -> tuple[int, ...]:
        return tuple(c.rot for c in self.components)


def linking_matrix(p: SurgeryPresentation) -> list[list[int]]:
    """Q with surgery coefficients on the diagonal and linking numbers off it."""
    return p._matrix()


def bordered_matrix(p: SurgeryPresentation, k: int) -> list[list[int]]:
    """Q bordered by the k-th linking vector: top-left 0, then Q."""
    q = linking_matrix(p)
    v = p.link_vectors[k]
    return [[0, *v]] + [[v[i], *q[i]] for i in range(len(q))]


def self_intersection(p: SurgeryPresentation) -> Fraction:
    """Self-intersection of the capped surface, by the bordered-determinant formula.

    -sum_k det(Q_k(0, a_1..a_t))/det(Q) + 2 sum_{a<b} <l_a, Q^{-1} l_b>.
    """
    q = linking_matrix(p)
    d = linalg.det(q)
    qinv = linalg.inverse(q) if q else []
    total = Fraction(0)
    for k in range(len(p.link_vectors)):
        total -= Fraction(linalg.det(bordered_matrix(p, k)), d)
    vs = p.link_vectors
    for a in range(len(vs)):
        for b in range(a + 1, len(vs)):
            total += 2 * linalg.pair(qinv, vs[a], vs[b])
    return total


def self_intersection_pairing(p: SurgeryPresentation) -> Fraction:
    """Independent route: pair the total linking vector with itself under Q^{-1}."""
    q = linking_matrix(p)
    qinv = linalg.inverse(q) if q else []
    t = len(p.components)
    total_vec = [sum(v[i] for v in p.link_vectors) for i in range(t)]
    return linalg.pair(qinv, total_vec, total_vec)


def chern_evaluation(p: SurgeryPresentation) -> Fraction:
    """-sum_k <rot, Q^{-1} l_k>, the Chern class evaluated on the capped surface."""
    q = linking_matrix(p)
    qinv = linalg.inverse(q) if q else []
    rot = p.rot_vector
    return -sum(
        (linalg.pair(qinv, rot, v) for v in p.link_vectors), start=Fraction(0)
    )


@dataclass(frozen=True)
class BraidDatum:
    """Braid bookkeeping: strand count, writhe (signed band count), components."""

    strands: int
    writhe: int
    components: int

    def __post_init__(self):
        if self.strands < 1 or self.components < 1:
            raise ValueError("braids need at least one strand and one component")


def self_linking_braid(b: BraidDatum) -> int:
    """Self-linking number of a braid closure: writhe minus strand count."""
    return b.writhe - b.strands


def self_linking_shift(sl_t0, p: SurgeryPresentation) -> Fraction:
    """Rational self-linking number of the induced link in the surgered manifold.

    Inverts the shift sl(T) = sl(L) + c1[C'] + [C']^2 along the surgery
    cobordism: sl(L) = sl(T0) - chern_evaluation - self_intersection.
    """
    return Fraction(sl_t0) - chern_evaluation(p) - self_intersection(p)


def tau_qp_braid(b: BraidDatum) -> Fraction:
    """Tau of a quasi-positive braid closure: (writhe - strands + components)/2."""
    return Fraction(b.writhe - b.strands + b.components, 2)


@dataclass(frozen=True)
class CurveDatum:
    """Caller-supplied invariants of a bounding curve: the geometry stays outside."""

    chi: int
    chern: Fraction
    self_int: Fraction
    boundary: int

    def __post_init__(self):
        if self.boundary < 1:
            raise ValueError("a bounding curve has at least one boundary circle")
        if self.chi > self.boundary:
            raise ValueError("Euler characteristic cannot exceed boundary count")


def tau_from_curve(c: CurveDatum) -> Fraction:
    """Tau from curve data: -(chi - |T| + c1[C] + [C]^2) / 2."""
    return -(Fraction(c.chi - c.boundary) + c.chern + c.self_int) / 2


def bennequin_euler(points: int, bands: int) -> int:
    """Euler characteristic of a banded (Bennequin-type) surface: points - bands."""
    return points - bands
