"""Greedy covering of types by a neighbourhood of a small bottleneck set."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..graph import LabeledStructure, ball_mask, bits, mask_of
from .ef import _as_structure
from .oracle import TypeOracle


@dataclass
class TypeVerdict:
    type_index: int
    verdict: str  # "covered" or "free"
    realizations: list
    witness: list  # free: n realizations; covered: all realizations

    def to_json(self) -> dict:
        return {"type": self.type_index, "verdict": self.verdict,
                "realizations": self.realizations, "witness": self.witness}


@dataclass
class CoverCertificate:
    D: list
    e: int
    d: int
    n: int
    p: int
    verdicts: list
    rounds: int
    increment: int
    type_of: list = field(default_factory=list)

    def bounds_hold(self) -> bool:
        return len(self.D) <= max(self.n - 1, 0) * self.p and self.e <= 2 * self.d * self.p

    def to_json(self) -> dict:
        return {
            "D": self.D, "e": self.e, "d": self.d, "n": self.n, "p": self.p,
            "rounds": self.rounds, "increment": self.increment,
            "bounds": {"D_max": max(self.n - 1, 0) * self.p, "e_max": 2 * self.d * self.p,
                       "hold": self.bounds_hold()},
            "types": self.type_of,
            "verdicts": [v.to_json() for v in self.verdicts],
        }


def _type_classes(S: LabeledStructure, oracle: TypeOracle) -> tuple[list[int], list[list[int]]]:
    """Type index per vertex, indices ordered by first-occurring vertex."""
    index: dict = {}
    per_vertex = []
    for v in S.graph.vertices:
        t = oracle.type_of(S, v)
        per_vertex.append(index.setdefault(t, len(index)))
    classes = [[] for _ in index]
    for v, i in enumerate(per_vertex):
        classes[i].append(v)
    return per_vertex, classes


def _balls(S: LabeledStructure, r: int) -> list[int]:
    return [ball_mask(S.graph, 1 << v, r) for v in S.graph.vertices]


def is_covered(balls_d: list[int], realizations: list[int], C: int) -> bool:
    return all(balls_d[a] & ~C == 0 for a in realizations)


def free_witness(balls_d: list[int], balls_2d: list[int], realizations: list[int], C: int,
                 n: int) -> list[int] | None:
    """Exact search for n realizations, pairwise > 2d apart, with d-balls missing C."""
    if n <= 0:
        return []
    cand = [a for a in realizations if balls_d[a] & C == 0]
    chosen: list[int] = []

    def search(start: int, allowed: int) -> bool:
        if len(chosen) == n:
            return True
        if len(cand) - start < n - len(chosen):
            return False
        for i in range(start, len(cand)):
            a = cand[i]
            if allowed >> a & 1:
                chosen.append(a)
                if search(i + 1, allowed & ~balls_2d[a]):
                    return True
                chosen.pop()
        return False

    return list(chosen) if search(0, mask_of(cand)) else None


def bottleneck_cover(S, oracle: TypeOracle, d: int, n: int, increment: int | None = None,
                     max_rounds: int | None = None) -> CoverCertificate:
    """Double induction: repeatedly take the least bad type and add spread-out realizations.

    A type is bad if it is neither covered by C = N_e(D) nor n-free over C.
    The inner loop adds realizations outside N_2d(C + E); then D grows by E
    and e by ``increment`` (2d unless overridden).
    """
    S = _as_structure(S)
    G = S.graph
    step = 2 * d if increment is None else increment
    per_vertex, classes = _type_classes(S, oracle)
    p = oracle.p if oracle.p >= len(classes) else len(classes)
    balls_d = _balls(S, d)
    balls_2d = _balls(S, 2 * d)
    D = 0
    e = 0
    rounds = 0
    limit = max_rounds if max_rounds is not None else len(classes) + G.order + 1

    def region() -> int:
        return ball_mask(G, D, e) if D else 0

    while True:
        C = region()
        bad = None
        for j, real in enumerate(classes):
            if is_covered(balls_d, real, C):
                continue
            if free_witness(balls_d, balls_2d, real, C, n) is not None:
                continue
            bad = j
            break
        if bad is None or rounds >= limit:
            break
        rounds += 1
        E = 0
        for _ in range(max(n - 1, 0)):
            excl = ball_mask(G, C | E, 2 * d)
            pick = next((a for a in classes[bad] if not excl >> a & 1), None)
            if pick is None:
                break
            E |= 1 << pick
        D |= E
        e += step

    C = region()
    verdicts = []
    for j, real in enumerate(classes):
        if is_covered(balls_d, real, C):
            verdicts.append(TypeVerdict(j, "covered", real, real))
        else:
            wit = free_witness(balls_d, balls_2d, real, C, n)
            verdicts.append(TypeVerdict(j, "free" if wit is not None else "unresolved", real, wit or []))
    return CoverCertificate(sorted(bits(D)), e, d, n, p, verdicts, rounds, step, per_vertex)


def verify_cover(S, cert: CoverCertificate) -> list[str]:
    """Independent re-check of a certificate; returns a list of problems (empty if sound)."""
    from ..graph import ball, is_r_independent

    S = _as_structure(S)
    G = S.graph
    problems = []
    if not cert.bounds_hold():
        problems.append(f"bounds violated: |D|={len(cert.D)}, e={cert.e}, p={cert.p}")
    region = ball(G, cert.D, cert.e) if cert.D else set()
    seen = set()
    for v in cert.verdicts:
        seen.update(v.realizations)
        if v.verdict == "covered":
            for a in v.realizations:
                if not ball(G, a, cert.d) <= region:
                    problems.append(f"type {v.type_index}: ball of {a} leaves the region")
        elif v.verdict == "free":
            w = v.witness
            if len(set(w)) != cert.n or not set(w) <= set(v.realizations):
                problems.append(f"type {v.type_index}: witness is not {cert.n} realizations")
            if not is_r_independent(G, w, 2 * cert.d):
                problems.append(f"type {v.type_index}: witness not {2 * cert.d}-independent")
            if any(ball(G, a, cert.d) & region for a in w):
                problems.append(f"type {v.type_index}: witness ball meets the region")
        else:
            problems.append(f"type {v.type_index}: no verdict")
    if seen != set(G.vertices):
        problems.append("types do not partition the vertices")
    return problems
