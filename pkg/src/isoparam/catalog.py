"""Built-in catalog of Cartan-Munzner polynomials with explicit formulas.

Degree-6 CM polynomials (n = 8 and n = 14) are deliberately absent: no
closed formula is available to build them from.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .construct import (
    SubspaceSpec,
    cartan_cubic,
    clifford_system,
    fkm_quartic,
    linear_form,
    normalized_ot_quartic,
    ot_quartic,
    quadratic_form,
    radial,
    virtue_form,
)
from .polyring import Polynomial

FAMILIES = ("radial", "linear", "quadratic", "cartan", "virtue", "fkm", "ot")


def build(family: str, **params) -> Polynomial:
    """Dispatch a family name and its parameters to the matching constructor."""
    try:
        if family == "radial":
            return radial(params["n"], params["m"])
        if family == "linear":
            return linear_form(params["n"])
        if family == "quadratic":
            return quadratic_form(SubspaceSpec(params["n"], params["s"]))
        if family == "cartan":
            return cartan_cubic(params["d"])
        if family == "virtue":
            return virtue_form(SubspaceSpec(params["n"], params["s"]), params["m"])
        if family == "fkm":
            return fkm_quartic(clifford_system(params["s"], params.get("multiplier", 1)))
        if family == "ot":
            if params.get("normalize", False):
                return normalized_ot_quartic(params["d"])
            return ot_quartic(params["d"])
    except KeyError as exc:
        raise ValueError(f"family {family!r} needs parameter {exc.args[0]!r}") from None
    raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    family: str
    params: dict = field(hash=False)

    @cached_property
    def polynomial(self) -> Polynomial:
        return build(self.family, **self.params)

    def reconstruct(self) -> Polynomial:
        return build(self.family, **self.params)


def builtin_catalog() -> list[CatalogEntry]:
    """Entries ordered by degree, then as listed; this is the classify order."""
    entries = [
        CatalogEntry("linear_n3", "linear", {"n": 3}),
        CatalogEntry("linear_n5", "linear", {"n": 5}),
        CatalogEntry("quadratic_n4_s2", "quadratic", {"n": 4, "s": 2}),
        CatalogEntry("quadratic_n5_s2", "quadratic", {"n": 5, "s": 2}),
        CatalogEntry("quadratic_n6_s3", "quadratic", {"n": 6, "s": 3}),
        CatalogEntry("quadratic_n8_s3", "quadratic", {"n": 8, "s": 3}),
    ]
    entries += [CatalogEntry(f"cartan_cubic_d{d}", "cartan", {"d": d}) for d in (1, 2, 4, 8)]
    entries += [
        CatalogEntry("fkm_s1_l3", "fkm", {"s": 1, "multiplier": 3}),
        CatalogEntry("fkm_s2_l4", "fkm", {"s": 2, "multiplier": 2}),
        CatalogEntry("fkm_s3_l8", "fkm", {"s": 3, "multiplier": 2}),
        CatalogEntry("fkm_s5_l8", "fkm", {"s": 5, "multiplier": 1}),
        CatalogEntry("ot_quartic_d1", "ot", {"d": 1, "normalize": True}),
        CatalogEntry("ot_quartic_d2", "ot", {"d": 2, "normalize": True}),
    ]
    return entries


def catalog_pairs(entries: list[CatalogEntry] | None = None) -> list[tuple[Polynomial, str]]:
    entries = builtin_catalog() if entries is None else entries
    return [(e.polynomial, e.label) for e in entries]
