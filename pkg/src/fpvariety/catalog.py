"""Named presentations and polynomial factors used throughout the toolkit.

Surface-type strings are descriptive labels carried along for reports; nothing
in the package computes them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .polyring import SparsePoly
from .words import Presentation, parse_presentation

RANK3_NAMES = ("k", "x", "y", "z", "u", "v", "w")


@dataclass(frozen=True)
class GroupEntry:
    name: str
    text: str
    label: str = ""
    card_seq: tuple[int, ...] = ()
    surface_type: str = ""
    factors: tuple[str, ...] = field(default=())

    @property
    def presentation(self) -> Presentation:
        return parse_presentation(self.text)


GROUPS: dict[str, GroupEntry] = {e.name: e for e in [
    GroupEntry("hopf", "a,b | [a,b]", "L2a1", (1, 3, 4, 7, 6, 12, 8, 15),
               "deg 3 Del Pezzo", ("fH",)),
    GroupEntry("gamma0_2", "a,b | [a,b^2]", "L7n1, qutrit related", (),
               "", ("fH", "y")),
    GroupEntry("gamma0_3", "a,b | [a,b^3]", "L6a3, two-qubit related", (),
               "", ("fH", "y2m1")),
    GroupEntry("L5a1", "a,b | ab^3a^2bAB^3A^2B", "Whitehead link",
               (1, 3, 6, 17, 22, 79, 94, 412, 616, 1659, 2938, 10641),
               "conic bundle, K3 type", ("fH", "whitehead")),
    GroupEntry("L5a1_alt", "a,b | abaB[A,B]ABAb[a,b]", "Whitehead link, alternative relator",
               (), "", ("fH",)),
    GroupEntry("L13n5885", "a,b | a^2bAb^2A^2BaB^2", "Whitehead sister",
               (1, 3, 5, 12, 19, 60, 44, 153, 221, 517, 632, 2223),
               "deg 4 Del Pezzo, K3 type", ("fH", "sister")),
    GroupEntry("L6a2", "a,b | ab^3a^2b^2AB^3A^2B^2", "Berge link (tabulated relator)",
               (1, 3, 4, 9, 24, 59, 71, 156, 262, 1208),
               "conic bundle, general type", ("fH", "berge")),
    GroupEntry("L6a2_display", "a,b | a^2bAb^2A^2BaB^2", "Berge link (displayed relator)"),
    GroupEntry("L6a1", "a,b | abABa^2BAb^3ABabA^2baB^3", "L6a1 (tabulated relator)",
               (1, 3, 7, 23, 28, 134, 184, 694, 1353, 3466), "undetermined"),
    GroupEntry("L6a1_display", "a,b | ab^3a^2b^2AB^3A^2B^2", "L6a1 (displayed relator)"),
    GroupEntry("E6", "a,b | a^3b^3, ab^2aBA^2B", "singular fiber IV*", (), "K3 type",
               ("fH", "x_minus_y", "xy_z_1", "hexagonal", "f1", "f2")),
    GroupEntry("D4", "a,b,c | a^2c^2, b^2c^2, aBCaBc", "singular fiber I0*", (), "",
               ("D4_hopf_deformation",)),
    GroupEntry("modular", "a,b | a^2, b^3", "PSL(2,Z)"),
    GroupEntry("trefoil", "a,b | abaBAB", "trefoil knot"),
]}


_RANK2 = {
    "fH": "x*y*z - x^2 - y^2 - z^2 + 4",
    "y": "y",
    "y2m1": "y^2 - 1",
    "x_minus_y": "x - y",
    "xy_z_1": "x*y - z + 1",
    "hexagonal": "x^2 + x*y + y^2 - 3",
    "quadric": "y - z^2 + 2",
    "whitehead": "x*y^2*z - y^3 - x^2*y - x*z + 2*y",
    "sister": "x^2*y^2 - x*y*z - x^2 + 1",
    "berge": "x*y^3*z - x^2*y^2 - y^4 - x*y*z + 3*y^2 - 1",
    "f1": "x*y^3 - y^2*z - x^2 - 2*x*y + z + 2",
    "f2": "y^4 - x^2*z + x*y - 4*y^2 + z + 2",
}

# Seven-variable factors in the names (k, x, y, z, u, v, w); their relation to
# trace coordinates is unknown and searched by ``match_variables``.
_RANK3 = {
    "D4_hopf_deformation": "x*y*z - x^2 - y^2 - z^2 + 4 + w*x*k - 2*k^2",
    "D4_2": "u*k^2 + v*x - 2*u",
    "D4_3": "v*k^2 + u*x - 2*v",
    "D4_4": "w*k^2 + x*k - 2*w",
    "D4_5": "k^3 + w*x - 2*k",
    "D4_6": "u^2 - k^2",
    "D4_7": "u*v - w*k",
    "D4_8": "v^2 - k^2",
    "D4_9": "u*w - v*k",
    "D4_10": "v*w - u*k",
    "D4_11": "w^2 - k^2",
    "D4_12": "u*y - 2*w",
    "D4_13": "v*y - 2*k",
    "D4_14": "w*y - 2*u",
    "D4_15": "u*z - 2*k",
    "D4_16": "v*z - 2*w",
    "D4_17": "w*z - 2*v",
    "D4_18": "y*k - 2*v",
    "D4_19": "z*k - 2*u",
}

FACTORS_RANK2: dict[str, SparsePoly] = {k: SparsePoly.parse(v) for k, v in _RANK2.items()}
FACTORS_RANK3: dict[str, SparsePoly] = {
    k: SparsePoly.parse(v, RANK3_NAMES) for k, v in _RANK3.items()}

F_H = FACTORS_RANK2["fH"]


def factor_library(rank: int) -> dict[str, SparsePoly]:
    return dict(FACTORS_RANK2 if rank == 2 else FACTORS_RANK3)


def lookup_presentation(text: str) -> Presentation:
    """A catalog name (``hopf``, ``L5a1``...) or literal presentation text."""
    if text in GROUPS:
        return GROUPS[text].presentation
    return parse_presentation(text)
