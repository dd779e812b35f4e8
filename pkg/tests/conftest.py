import random

from plumbtau import linalg
from plumbtau.surgery import BraidDatum, SurgeryComponent, SurgeryPresentation


def random_presentation(rng: random.Random, max_components: int = 4) -> SurgeryPresentation:
    """Random nonsingular presentation with t <= max_components, entries in [-5, 5]."""
    while True:
        t = rng.randint(1, max_components)
        comps = []
        for _ in range(t):
            if rng.random() < 0.25:
                comps.append(SurgeryComponent(kind="handle"))
            else:
                comps.append(
                    SurgeryComponent(kind="surgery", tb=rng.randint(-5, 5), rot=rng.randint(-5, 5))
                )
        linking = [[0] * t for _ in range(t)]
        for i in range(t):
            for j in range(i + 1, t):
                linking[i][j] = linking[j][i] = rng.randint(-5, 5)
        q = [list(row) for row in linking]
        for i in range(t):
            q[i][i] = comps[i].coefficient
        if linalg.det(q) == 0:
            continue
        n_links = rng.randint(0, 4)
        vectors = tuple(
            tuple(rng.randint(-5, 5) for _ in range(t)) for _ in range(n_links)
        )
        return SurgeryPresentation(
            components=tuple(comps),
            linking=tuple(tuple(row) for row in linking),
            link_vectors=vectors,
        )


def random_braid(rng: random.Random) -> BraidDatum:
    """Quasi-positive braid data: each band merges at most one pair of strands,
    so the closure has between max(1, n - w) and n components."""
    n = rng.randint(1, 8)
    w = rng.randint(0, 14)
    return BraidDatum(strands=n, writhe=w, components=rng.randint(max(1, n - w), n))
