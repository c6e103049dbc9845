"""Direct check of the disjoint-extension implication for flipped expansions."""

from __future__ import annotations

from dataclasses import dataclass

from ..graph import (
    Flip, Graph, LabeledStructure, Partition, disjoint_union_structures, expand, flip_sum,
    induced_structure, induced_subgraph,
)
from ..logic.evaluate import Evaluator
from ..logic.syntax import Formula
from ..logic.transforms import translate_flip

SIZE_GUARD = 40


@dataclass
class DisjointVerdict:
    antecedent: bool
    consequent: bool
    star_models: bool
    isomorphic: bool

    @property
    def holds(self) -> bool:
        return (not self.antecedent) or self.consequent

    def to_json(self) -> dict:
        return {"antecedent": self.antecedent, "consequent": self.consequent,
                "star_models": self.star_models, "isomorphic": self.isomorphic,
                "holds": self.holds}


def star_structure(G: Graph, P: Partition, F: Flip, S) -> tuple[Graph, Partition]:
    """Flip-sum restricted to copy 1 plus the copy of ``S``, with the inherited partition."""
    S = sorted(set(S))
    n = G.order
    G2, _ = induced_subgraph(flip_sum(G, P, F), list(range(n)) + [v + n for v in S])
    return G2, Partition(P.k, P.part_of + tuple(P.part_of[v] for v in S))


def disjoint_extension_check(G: Graph, P: Partition, F: Flip, S, phi: Formula) -> DisjointVerdict:
    if 2 * G.order > SIZE_GUARD:
        raise ValueError(f"disjoint extension check limited to graphs of order {SIZE_GUARD // 2}")
    phik = translate_flip(phi, P.k, F)
    GF = expand(G, P, F)
    sub, _ = induced_structure(GF, S)
    target = disjoint_union_structures(GF, sub)
    gstar, pstar = star_structure(G, P, F, S)
    flipped_star = expand(gstar, pstar, F)
    # the natural id map is the identity on both sides, so equality is the isomorphism
    iso = flipped_star.graph == target.graph and flipped_star.parts == target.parts
    return DisjointVerdict(
        antecedent=Evaluator(GF).evaluate(phik),
        consequent=Evaluator(target).evaluate(phik),
        star_models=Evaluator(LabeledStructure(gstar)).evaluate(phi),
        isomorphic=iso,
    )
