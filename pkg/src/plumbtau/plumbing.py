"""Plumbing trees, intersection forms and boundary spin-c structures.

A plumbing tree is a weighted tree describing a 4-manifold made of disk
bundles over spheres; its intersection form Q has the weights on the
diagonal and a 1 for every edge.  When Q is negative definite the
boundary 3-manifold is a rational homology sphere whose spin-c
structures correspond to cosets of characteristic vectors modulo
2Q·Z^n.  Every coset meets the finite box a_i + 2 <= kappa_i <= -a_i,
which makes all the enumerations below finite and exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterable, Mapping, Optional, Sequence

from . import linalg

MARKINGS = ("marked", "unmarked_leaf", "internal")


@dataclass(frozen=True)
class PlumbingTree:
    """Connected acyclic graph with integer vertex weights.

    ``markings`` flags which vertices may carry link strands
    ("unmarked_leaf", allowed only on vertices of degree <= 1).
    Unspecified markings default to "unmarked_leaf" on leaves and
    "internal" elsewhere.
    """

    vertices: tuple[tuple[str, int], ...]
    edges: tuple[tuple[str, str], ...]
    markings: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        ids = [v for v, _ in self.vertices]
        if len(set(ids)) != len(ids):
            raise ValueError("vertex ids must be unique")
        idset = set(ids)
        for a, b in self.edges:
            if a not in idset or b not in idset or a == b:
                raise ValueError(f"bad edge ({a},{b})")
        if len(self.edges) != len(ids) - 1:
            raise ValueError("a tree needs exactly |V| - 1 edges")
        if not self._connected():
            raise ValueError("plumbing graph must be connected")
        for v, mk in self.markings.items():
            if v not in idset:
                raise ValueError(f"marking on unknown vertex {v!r}")
            if mk not in MARKINGS:
                raise ValueError(f"unknown marking {mk!r}")
            if mk == "unmarked_leaf" and self.degree(v) > 1:
                raise ValueError(f"vertex {v!r} has degree > 1, cannot be an unmarked leaf")

    def _connected(self) -> bool:
        if not self.vertices:
            return False
        adj = {v: [] for v, _ in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {self.vertices[0][0]}
        stack = [self.vertices[0][0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def degree(self, v: str) -> int:
        return sum(1 for a, b in self.edges if v in (a, b))

    def marking(self, v: str) -> str:
        if v in self.markings:
            return self.markings[v]
        return "unmarked_leaf" if self.degree(v) <= 1 else "internal"

    @staticmethod
    def path(*weights: int) -> "PlumbingTree":
        """Linear chain with the given weights, ids v1, v2, ..."""
        ids = [f"v{i+1}" for i in range(len(weights))]
        return PlumbingTree(
            vertices=tuple(zip(ids, weights)),
            edges=tuple((ids[i], ids[i + 1]) for i in range(len(weights) - 1)),
        )


@dataclass(frozen=True)
class IntersectionForm:
    """Symmetric matrix of a plumbing, with signature data when definite."""

    q: tuple[tuple[int, ...], ...]
    order: tuple[str, ...]
    negative_definite: bool
    sigma: Optional[int]
    b2: Optional[int]
    tree: Optional[PlumbingTree] = field(default=None, compare=False, repr=False)

    @property
    def n(self) -> int:
        return len(self.order)

    def qinv(self) -> list[list[Fraction]]:
        cached = getattr(self, "_qinv", None)
        if cached is None:
            cached = linalg.inverse(self.q)
            object.__setattr__(self, "_qinv", cached)
        return cached

    def det(self) -> int:
        return linalg.det(self.q)

    def two_q(self) -> list[list[int]]:
        return [[2 * e for e in row] for row in self.q]

    def index_of(self, vertex_id: str) -> int:
        return self.order.index(vertex_id)

    def require_negative_definite(self):
        if not self.negative_definite:
            raise ValueError("intersection form is not negative definite")


def form_from_tree(t: PlumbingTree) -> IntersectionForm:
    """Intersection form of a plumbing tree: weights on the diagonal, 1 per edge."""
    order = tuple(v for v, _ in t.vertices)
    idx = {v: i for i, v in enumerate(order)}
    n = len(order)
    q = [[0] * n for _ in range(n)]
    for (v, w) in t.vertices:
        q[idx[v]][idx[v]] = w
    for a, b in t.edges:
        q[idx[a]][idx[b]] = 1
        q[idx[b]][idx[a]] = 1
    qt = tuple(tuple(row) for row in q)
    neg = linalg.is_negative_definite(q)
    return IntersectionForm(
        q=qt,
        order=order,
        negative_definite=neg,
        sigma=-n if neg else None,
        b2=n if neg else None,
        tree=t,
    )


def is_characteristic(f: IntersectionForm, kappa: Sequence[int]) -> bool:
    return len(kappa) == f.n and all(
        (k - f.q[i][i]) % 2 == 0 for i, k in enumerate(kappa)
    )


def short_char_vectors(f: IntersectionForm) -> list[tuple[int, ...]]:
    """All characteristic vectors in the box a_i + 2 <= kappa_i <= -a_i, lex order."""
    f.require_negative_definite()
    ranges = []
    for i in range(f.n):
        a = f.q[i][i]
        ranges.append(range(a + 2, -a + 1, 2))
    return [tuple(k) for k in itertools.product(*ranges)]


@dataclass(frozen=True)
class SpincClass:
    """Coset of characteristic vectors mod 2Q·Z^n on a fixed form.

    ``rep`` is the canonical representative (lexicographically least
    short vector); ``reps`` collects every short vector in the coset.
    """

    rep: tuple[int, ...]
    reps: tuple[tuple[int, ...], ...]
    form: IntersectionForm = field(compare=False, repr=False)

    def __repr__(self):
        return f"SpincClass{self.rep}"


def _same_class(f: IntersectionForm, u: Sequence[int], v: Sequence[int]) -> bool:
    diff = [a - b for a, b in zip(u, v)]
    return linalg.in_image_of(f.two_q(), diff)


def spinc_classes(f: IntersectionForm) -> list[SpincClass]:
    """Partition of the short characteristic vectors into cosets mod 2Q·Z^n."""
    f.require_negative_definite()
    cached = getattr(f, "_classes", None)
    if cached is not None:
        return cached
    groups: list[list[tuple[int, ...]]] = []
    for k in short_char_vectors(f):
        for g in groups:
            if _same_class(f, k, g[0]):
                g.append(k)
                break
        else:
            groups.append([k])
    classes = [
        SpincClass(rep=min(g), reps=tuple(sorted(g)), form=f) for g in groups
    ]
    classes.sort(key=lambda s: s.rep)
    if len(classes) != abs(f.det()):
        raise AssertionError("class count must equal |det Q|")
    object.__setattr__(f, "_classes", classes)
    return classes


def class_of(f: IntersectionForm, kappa: Sequence[int]) -> SpincClass:
    """The spin-c class containing an arbitrary characteristic vector."""
    if not is_characteristic(f, kappa):
        raise ValueError(f"{tuple(kappa)} is not characteristic for this form")
    for s in spinc_classes(f):
        if _same_class(f, kappa, s.rep):
            return s
    raise AssertionError("every characteristic vector lies in some class")


def conjugate(s: SpincClass) -> SpincClass:
    """Conjugation acts on characteristic vectors by negation."""
    return class_of(s.form, [-k for k in s.rep])


def spinc_translate(s: SpincClass, alpha: Sequence[int]) -> SpincClass:
    """Action of H_1 = Z^n / Q·Z^n: translate the coset by 2·alpha."""
    if len(alpha) != s.form.n:
        raise ValueError("translation vector has wrong length")
    return class_of(s.form, [k + 2 * a for k, a in zip(s.rep, alpha)])


def square(f: IntersectionForm, kappa: Sequence[int]) -> Fraction:
    """kappa^T Q^{-1} kappa, exact."""
    return linalg.pair(f.qinv(), kappa, kappa)


def d_candidate(f: IntersectionForm, kappa: Sequence[int]) -> Fraction:
    """(kappa^2 - 3*sigma - 2*b2) / 4 for one characteristic vector."""
    f.require_negative_definite()
    return (square(f, kappa) - 3 * f.sigma - 2 * f.b2) / 4


def d_invariant(s: SpincClass) -> Fraction:
    """Correction term of the class: max of d_candidate over its short representatives."""
    assert s.reps, "classes are built from at least one short vector"
    return max(d_candidate(s.form, k) for k in s.reps)


def d_realizing_reps(s: SpincClass) -> list[tuple[int, ...]]:
    """Short representatives attaining the maximal square (hence the correction term)."""
    best = max(square(s.form, k) for k in s.reps)
    return [k for k in s.reps if square(s.form, k) == best]


def solve_square(f: IntersectionForm, target) -> list[tuple[int, ...]]:
    """All characteristic vectors kappa with kappa^T Q^{-1} kappa = target.

    Negative definiteness bounds the search: kappa_i^2 <= (-target)·|a_i|
    because the maximum of x_i^2 on the ellipsoid x^T(-Q^{-1})x <= c is
    c times the i-th diagonal entry of (-Q^{-1})^{-1} = -Q.
    """
    f.require_negative_definite()
    target = Fraction(target)
    if target > 0:
        return []
    c = -target
    ranges = []
    for i in range(f.n):
        a = f.q[i][i]
        bound = isqrt(int(c * abs(a)))  # floor of the real bound
        lo = -bound if (-bound - a) % 2 == 0 else -bound + 1
        ranges.append(range(lo, bound + 1, 2))
    out = [
        k
        for k in itertools.product(*ranges)
        if linalg.pair(f.qinv(), k, k) == target
    ]
    return sorted(out)
