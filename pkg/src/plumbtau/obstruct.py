"""Decision procedures built on top of the per-class tau profile.

Every check returns a Verdict.  The obstruction-style checks answer with
"fires" / "does not fire" / "inconclusive" (they are one-directional: a
firing check rules something out, a silent one proves nothing), while the
plain inequality checks answer "satisfied" / "violated".  Each verdict
carries a slack (the exact margin by which the deciding inequality holds
or fails, when one exists) and a JSON-friendly witness.

The metaboliser machinery works in the invariant-factor decomposition of
H_1 = Z^n / Q Z^n obtained from the Smith normal form of Q.  A metaboliser
is a subgroup of order sqrt(|H_1|) on which the linking form
lambda(a, b) = -a^T Q^{-1} b mod Z vanishes; subgroups are enumerated by
closure search, which is exhaustive because every subgroup is reached by
adding one generator at a time through subgroups of itself.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple, Optional, Sequence

from . import linalg
from .plumbing import (
    IntersectionForm,
    SpincClass,
    conjugate,
    d_invariant,
    spinc_classes,
    spinc_translate,
)
from .tau import LeafLink, tau as tau_value

FIRES = "fires"
CLEAR = "does not fire"
INCONCLUSIVE = "inconclusive"
SATISFIED = "satisfied"
VIOLATED = "violated"


class IncompleteProfileError(ValueError):
    """A check needed a tau value the profile does not contain."""


@dataclass(frozen=True)
class TauProfile:
    """Tau and correction-term values of one link over a set of spin-c classes."""

    tau: Mapping[SpincClass, Fraction]
    d: Mapping[SpincClass, Fraction]
    ell: int
    order: int

    def __post_init__(self):
        if self.ell < 0:
            raise ValueError("component count must be non-negative")
        if self.order < 1:
            raise ValueError("the first homology order is at least 1")
        if set(self.tau) != set(self.d):
            raise ValueError("tau and d maps must cover the same classes")
        for table in (self.tau, self.d):
            for s, v in table.items():
                if not isinstance(s, SpincClass):
                    raise ValueError("profile keys must be spin-c classes")
                if not isinstance(v, (int, Fraction)):
                    raise ValueError("profile values must be exact rationals")

    def tau_at(self, s: SpincClass) -> Fraction:
        if s not in self.tau:
            raise IncompleteProfileError(
                f"profile has no tau value at the spin-c class {s.rep}"
            )
        return Fraction(self.tau[s])

    def classes(self) -> list[SpincClass]:
        return sorted(self.tau, key=lambda s: s.rep)

    def d_zero_classes(self) -> list[SpincClass]:
        return [s for s in self.classes() if self.d[s] == 0]


def profile_from_link(f: IntersectionForm, link: LeafLink) -> TauProfile:
    """Full profile of a leaf-fibre link: tau and d at every spin-c class."""
    classes = spinc_classes(f)
    return TauProfile(
        tau={s: tau_value(f, link, s) for s in classes},
        d={s: d_invariant(s) for s in classes},
        ell=link.ell,
        order=abs(f.det()),
    )


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


@dataclass(frozen=True)
class Verdict:
    check: str
    verdict: str
    witness: object = None
    slack: Optional[Fraction] = None

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "verdict": self.verdict,
            "witness": _jsonable(self.witness),
            "slack": None if self.slack is None else str(Fraction(self.slack)),
        }


def slice_bennequin_check(sl, tau: Fraction, ell: int) -> Verdict:
    """Transverse bound sl <= 2*tau - ell; slack is the difference."""
    slack = 2 * Fraction(tau) - ell - Fraction(sl)
    return Verdict(
        check="slice_bennequin",
        verdict=SATISFIED if slack >= 0 else VIOLATED,
        witness={"sl": Fraction(sl), "tau": Fraction(tau), "ell": ell},
        slack=slack,
    )


def qhb4_filling_obstruction(
    profile: TauProfile,
    sl_values: Sequence,
    contact_class: Optional[SpincClass] = None,
) -> Verdict:
    """Rule out a rational homology ball Stein filling from transverse data.

    Fires when some supplied self-linking number exceeds 2*tau - ell at the
    contact class.  With no contact class given, the verdict fires only if
    every class in the profile is violated: otherwise an unviolated class
    could still be the contact one.
    """
    if not sl_values:
        return Verdict(
            check="qhb4_filling",
            verdict=INCONCLUSIVE,
            witness="no transverse representatives supplied",
        )
    best_sl = max(Fraction(v) for v in sl_values)
    if contact_class is not None:
        bound = 2 * profile.tau_at(contact_class) - profile.ell
        slack = bound - best_sl
        return Verdict(
            check="qhb4_filling",
            verdict=FIRES if slack < 0 else CLEAR,
            witness={
                "class": list(contact_class.rep),
                "sl": best_sl,
                "bound": bound,
            },
            slack=slack,
        )
    if not profile.tau:
        return Verdict(
            check="qhb4_filling",
            verdict=INCONCLUSIVE,
            witness="profile covers no spin-c classes",
        )
    best_class = max(profile.classes(), key=lambda s: (profile.tau_at(s), s.rep))
    slack = 2 * profile.tau_at(best_class) - profile.ell - best_sl
    return Verdict(
        check="qhb4_filling",
        verdict=FIRES if slack < 0 else CLEAR,
        witness={
            "sl": best_sl,
            "surviving_class": None if slack < 0 else list(best_class.rep),
        },
        slack=slack,
    )


@dataclass(frozen=True)
class MetaboliserCandidate:
    """Subgroup of H_1 of square-root order with integral linking pairings.

    Generators and elements are integer lifts to Z^n; residues are the
    corresponding coordinates in the invariant-factor decomposition.
    """

    generators: tuple[tuple[int, ...], ...]
    order: int
    elements: tuple[tuple[int, ...], ...]
    residues: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.order < 1 or len(self.elements) != self.order:
            raise ValueError("element list must realize the stated order")


def _h1_decomposition(f: IntersectionForm):
    """Invariant factors of Z^n / Q Z^n with maps to and from residues.

    Smith form s*Q*t = D gives x in Q*Z^n iff s*x in D*Z^n, so the residue
    map is x -> s*x mod diag(D) and s^{-1} lifts residues back.
    """
    s, dmat, _ = linalg.smith_normal_form(f.q)
    diag = tuple(dmat[i][i] for i in range(f.n))
    if any(x == 0 for x in diag):
        raise ValueError("the intersection form must be nonsingular")
    sinv_frac = linalg.inverse(s)
    sinv = [[int(x) for x in row] for row in sinv_frac]
    return diag, s, sinv


def h1_residues(f: IntersectionForm, vector: Sequence[int]) -> tuple[int, ...]:
    """Coordinates of a class of Z^n / Q Z^n in the invariant-factor form."""
    diag, s, _ = _h1_decomposition(f)
    if len(vector) != f.n:
        raise ValueError("vector has wrong length")
    return tuple(
        sum(s[i][j] * vector[j] for j in range(f.n)) % diag[i] for i in range(f.n)
    )


def _close_subgroup(diag, seed):
    group = set(seed)
    grew = True
    while grew:
        grew = False
        for a, b in itertools.product(tuple(group), repeat=2):
            c = tuple((x + y) % m for x, y, m in zip(a, b, diag))
            if c not in group:
                group.add(c)
                grew = True
    return frozenset(group)


def _subgroups_of_order(diag, m):
    """All subgroups of Z/d_1 x ... x Z/d_n of order m, by closure search."""
    zero = tuple(0 for _ in diag)
    elements = sorted(itertools.product(*[range(x) for x in diag]))
    found = {frozenset({zero})}
    frontier = [frozenset({zero})]
    while frontier:
        h = frontier.pop()
        for g in elements:
            if g in h:
                continue
            k = _close_subgroup(diag, h | {g})
            # chains through subgroups of the target never exceed its order
            if len(k) <= m and k not in found:
                found.add(k)
                frontier.append(k)
    return sorted((h for h in found if len(h) == m), key=sorted)


def metaboliser_candidates(f: IntersectionForm) -> list[MetaboliserCandidate]:
    """Order-sqrt(|H_1|) subgroups on which the linking form is integral."""
    order = abs(f.det())
    root = math.isqrt(order)
    if root * root != order:
        return []
    diag, _, sinv = _h1_decomposition(f)
    qinv = f.qinv()

    def lift(residue):
        return tuple(
            sum(sinv[i][j] * residue[j] for j in range(f.n)) for i in range(f.n)
        )

    out = []
    for group in _subgroups_of_order(diag, root):
        residues = tuple(sorted(group))
        lifts = tuple(lift(r) for r in residues)
        if any(
            linalg.pair(qinv, a, b).denominator != 1
            for a, b in itertools.combinations_with_replacement(lifts, 2)
        ):
            continue
        gens: list[tuple[int, ...]] = []
        closed = frozenset({residues[0]}) if residues else frozenset()
        for r in residues:
            if r not in closed:
                gens.append(r)
                closed = _close_subgroup(diag, closed | {r})
        out.append(
            MetaboliserCandidate(
                generators=tuple(lift(r) for r in gens),
                order=root,
                elements=lifts,
                residues=residues,
            )
        )
    return out


def metaboliser_obstruction(profile: TauProfile, s: SpincClass) -> Verdict:
    """Rule out bounding a holomorphic curve in a rational-ball filling.

    A candidate metaboliser G survives when |tau(s + a)| <= tau(s) for every
    a in G; the obstruction fires when no candidate survives (in particular
    when no metaboliser exists at all).  Slack is the best margin
    tau(s) - max |tau(s + a)| over the candidates.
    """
    candidates = metaboliser_candidates(s.form)
    if not candidates:
        return Verdict(
            check="metaboliser",
            verdict=FIRES,
            witness=f"no metaboliser exists in a group of order {abs(s.form.det())}",
        )
    base = profile.tau_at(s)
    best = None
    for cand in candidates:
        margin = min(
            base - abs(profile.tau_at(spinc_translate(s, alpha)))
            for alpha in cand.elements
        )
        if best is None or margin > best[0]:
            best = (margin, cand)
    slack, cand = best
    witness = {
        "class": list(s.rep),
        "metaboliser": [list(g) for g in cand.generators],
        "subgroup_order": cand.order,
    }
    return Verdict(
        check="metaboliser",
        verdict=CLEAR if slack >= 0 else FIRES,
        witness=witness,
        slack=slack,
    )


def conjugation_obstruction(profile: TauProfile, s: SpincClass) -> Verdict:
    """Holomorphic curves for both J and -J force tau(s) = tau(conjugate)."""
    sbar = conjugate(s)
    if s not in profile.tau or sbar not in profile.tau:
        missing = sbar if s in profile.tau else s
        return Verdict(
            check="conjugation",
            verdict=INCONCLUSIVE,
            witness=f"profile has no tau value at the spin-c class {missing.rep}",
        )
    gap = Fraction(profile.tau[s]) - Fraction(profile.tau[sbar])
    return Verdict(
        check="conjugation",
        verdict=FIRES if gap != 0 else CLEAR,
        witness={
            "class": list(s.rep),
            "conjugate": list(sbar.rep),
            "tau": Fraction(profile.tau[s]),
            "tau_conjugate": Fraction(profile.tau[sbar]),
        },
        slack=gap,
    )


class PLGenusBound(NamedTuple):
    genus: int
    raw: Fraction


def pl_genus_lower_bound(
    profile: TauProfile, subset: Optional[Sequence[SpincClass]] = None
) -> PLGenusBound:
    """Lower bound |tau_max - tau_min| / 2 for the PL slice genus.

    The raw rational bound comes with its ceiling, since a genus is an
    integer.  The default subset is the d = 0 classes of the profile.
    """
    if subset is None:
        subset = profile.d_zero_classes()
    if not subset:
        raise ValueError("subset of spin-c classes must be non-empty")
    values = [profile.tau_at(s) for s in subset]
    raw = abs(max(values) - min(values)) / 2
    return PLGenusBound(genus=math.ceil(raw), raw=raw)


def genus_bounds_check(
    tau_s,
    tau_L0,
    g: int,
    ellL: int,
    sizeF: int,
    unlink: bool,
) -> Verdict:
    """Cobordism bounds through a genus-g surface with |F| = |L0| pieces.

    Equal component counts give |tau - tau_0| <= g; when the far end is an
    unlink the two-sided bound -g <= tau <= g + ellL - sizeF applies instead.
    """
    tau_s = Fraction(tau_s)
    if unlink:
        slack = min(tau_s + g, g + ellL - sizeF - tau_s)
    else:
        slack = g - abs(tau_s - Fraction(tau_L0))
    return Verdict(
        check="genus_bounds",
        verdict=SATISFIED if slack >= 0 else VIOLATED,
        witness={
            "tau": tau_s,
            "tau_reference": None if unlink else Fraction(tau_L0),
            "genus": g,
            "ell": ellL,
            "surface_components": sizeF,
            "unlink": unlink,
        },
        slack=slack,
    )


def adjunction_bound(tau_alpha, g: int, ell2: int, sizeF: int, c1F, FF) -> Fraction:
    """Right-hand side of the relative adjunction inequality."""
    return (
        Fraction(tau_alpha)
        + g
        + ell2
        - sizeF
        - (Fraction(c1F) + Fraction(FF)) / 2
    )


def integrality_obstruction(tau) -> Verdict:
    """A link bounding a curve with the given contact class has integral tau."""
    value = Fraction(tau)
    return Verdict(
        check="integrality",
        verdict=FIRES if value.denominator != 1 else CLEAR,
        witness={"tau": value},
    )


def concordance_obstruction(
    profile: TauProfile, subset: Optional[Sequence[SpincClass]] = None
) -> Verdict:
    """Constant tau is necessary for concordance to a local link."""
    if subset is None:
        subset = profile.d_zero_classes()
    if not subset:
        return Verdict(
            check="concordance",
            verdict=INCONCLUSIVE,
            witness="no spin-c classes supplied",
        )
    values = [profile.tau_at(s) for s in subset]
    spread = max(values) - min(values)
    return Verdict(
        check="concordance",
        verdict=FIRES if spread != 0 else CLEAR,
        witness={"tau_max": max(values), "tau_min": min(values)},
        slack=spread,
    )
