"""Registry of named subgroups of GL2(Z/p) in Sutherland's notation.

Only labels used by the exclusion arguments are stored.  Each entry records
its structural class, and verify_label checks the group against it.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import matrix as mx
from .forms import conjugate_into
from .group import FiniteMatrixGroup, det_surjective

STRUCTURAL_CLASSES = ("trivial", "borel", "split-cartan", "nonsplit-cartan", "normalizer-split", "full")


@dataclass(frozen=True)
class GroupLabel:
    name: str
    modulus: int
    generators: tuple
    structural_class: str
    possible_image: bool = True

    def group(self) -> FiniteMatrixGroup:
        return FiniteMatrixGroup(self.modulus, self.generators, name=self.name)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "modulus": self.modulus,
            "generators": [mx.to_rows(g) for g in self.generators],
            "class": self.structural_class,
            "order": self.group().order,
        }


_ENTRIES = [
    GroupLabel("2Cs", 2, (), "trivial", False),
    GroupLabel("2B", 2, ((1, 1, 0, 1),), "borel"),
    GroupLabel("2Cn", 2, ((0, 1, 1, 1),), "nonsplit-cartan"),
    GroupLabel("2G", 2, ((1, 1, 0, 1), (0, 1, 1, 1)), "full"),
    GroupLabel("3Cs.1.1", 3, ((1, 0, 0, 2),), "split-cartan"),
    GroupLabel("3Cs", 3, ((1, 0, 0, 2), (2, 0, 0, 1)), "split-cartan"),
    GroupLabel("3B.1.1", 3, ((1, 1, 0, 1), (1, 0, 0, 2)), "borel"),
    GroupLabel("3B.1.2", 3, ((1, 1, 0, 1), (2, 0, 0, 1)), "borel"),
    GroupLabel("3B", 3, ((1, 1, 0, 1), (1, 0, 0, 2), (2, 0, 0, 1)), "borel"),
    GroupLabel("3Ns", 3, ((1, 0, 0, 2), (2, 0, 0, 1), (0, 1, 1, 0)), "normalizer-split"),
    GroupLabel("3Nn", 3, ((1, 1, 1, 2), (1, 0, 0, 2)), "nonsplit-cartan"),
    GroupLabel("3G", 3, ((1, 1, 0, 1), (1, 0, 1, 1), (2, 0, 0, 1)), "full"),
]


def label_registry() -> dict[str, GroupLabel]:
    return {e.name: e for e in _ENTRIES}


def label_group(name: str) -> FiniteMatrixGroup:
    reg = label_registry()
    if name not in reg:
        raise KeyError("unknown label %r; known: %s" % (name, ", ".join(sorted(reg))))
    return reg[name].group()


def verify_label(label: GroupLabel) -> bool:
    """The entry's group matches its structural class."""
    G = label.group()
    n = label.modulus
    if label.possible_image and not det_surjective(G):
        return False
    cls = label.structural_class
    if cls == "trivial":
        return G.order == 1
    if cls == "full":
        return G.order == mx.gl2_order(n)
    if cls == "nonsplit-cartan":
        # contained in a nonsplit Cartan, or its normalizer for 3Nn
        if conjugate_into(G, "nonsplit-cartan") is not None:
            return True
        return label.name.endswith("Nn") and G.order == 2 * (n * n - 1)
    return conjugate_into(G, cls) is not None


__all__ = ["GroupLabel", "STRUCTURAL_CLASSES", "label_group", "label_registry", "verify_label"]
