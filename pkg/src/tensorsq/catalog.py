"""Published values of pi3, pi2s and h2 for named groups.

Each record transcribes a single published statement; nothing here is
computed. Fields the statement does not give are ``None``. ``computable``
marks groups whose tensor square fits the default enumeration caps, and
``statement`` names the family formula the record comes from.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import AbelianInvariants

__all__ = ["CatalogError", "ExpectedRecord", "CATALOG", "catalog_lookup", "compare_with_catalog"]


class CatalogError(KeyError):
    pass


def _inv(*factors: int) -> AbelianInvariants:
    return AbelianInvariants.from_cyclic(factors)


@dataclass(frozen=True)
class ExpectedRecord:
    name: str
    pi3: AbelianInvariants | None
    pi2s: AbelianInvariants | None
    h2: AbelianInvariants | None
    statement: str
    note: str
    computable: bool = True

    def to_json(self) -> dict:
        def enc(x):
            return None if x is None else x.to_json()

        return {
            "name": self.name,
            "pi3": enc(self.pi3),
            "pi2s": enc(self.pi2s),
            "h2": enc(self.h2),
            "statement": self.statement,
            "note": self.note,
            "computable": self.computable,
        }


def _records() -> list[ExpectedRecord]:
    out = []
    sym = "symmetric groups"
    out.append(ExpectedRecord("S2", _inv(2), _inv(2), None, sym, "n < 4: pi3 = pi2s = Z2"))
    out.append(ExpectedRecord("S3", _inv(2), _inv(2), None, sym, "n < 4: pi3 = pi2s = Z2"))
    out.append(ExpectedRecord("S4", _inv(2, 2), _inv(2, 2), None, sym, "n >= 4: pi3 = pi2s = Z2 x Z2"))
    out.append(
        ExpectedRecord("S5", _inv(2, 2), _inv(2, 2), None, sym, "n >= 4: pi3 = pi2s = Z2 x Z2", computable=False)
    )

    alt = "alternating groups"
    out.append(
        ExpectedRecord("A5", _inv(2), _inv(2), None, alt, "n >= 5, n != 6, 7: pi3 = pi2s = Z2", computable=False)
    )
    for n in (6, 7):
        out.append(
            ExpectedRecord(f"A{n}", _inv(6), _inv(6), None, alt, "n = 6, 7: pi3 = pi2s = Z6", computable=False)
        )

    dih = "dihedral and quaternion groups"
    for order in range(6, 17, 2):
        n = order // 2
        if n % 2:
            out.append(ExpectedRecord(f"D{order}", None, _inv(2), None, dih, f"D_2n with n = {n} odd: pi2s = Z2"))
        else:
            out.append(
                ExpectedRecord(f"D{order}", None, _inv(2, 2, 2), None, dih, f"D_2n with n = {n} even: pi2s = Z2^3")
            )
    out.append(ExpectedRecord("Q8", None, _inv(2, 2), None, dih, "pi2s = Z2^2"))

    lin = "general linear groups over prime fields"
    out.append(
        ExpectedRecord("GL(2,2)", _inv(2), _inv(2), None, sym, "GL(2,2) is S3; n < 4: pi3 = pi2s = Z2")
    )
    out.append(ExpectedRecord("GL(1,3)", _inv(2), _inv(2), None, lin, "p = 3, n != 2: pi3 = pi2s = Z2"))
    for p in (5, 7, 11, 13):
        out.append(ExpectedRecord(f"GL(1,{p})", _inv(p - 1), _inv(2), None, lin, f"p > 3: pi3 = Z{p - 1}, pi2s = Z2"))
    for n in (3, 4):
        out.append(
            ExpectedRecord(f"GL({n},2)", _inv(2), _inv(2), None, lin, "p = 2, n in {3, 4}: pi3 = pi2s = Z2", computable=False)
        )
    out.append(ExpectedRecord("GL(3,3)", _inv(2), _inv(2), None, lin, "p = 3, n != 2: pi3 = pi2s = Z2", computable=False))
    for p in (5, 7):
        out.append(
            ExpectedRecord(f"GL(2,{p})", _inv(p - 1), _inv(2), None, lin, f"p > 3: pi3 = Z{p - 1}, pi2s = Z2", computable=False)
        )
    return out


CATALOG: dict[str, ExpectedRecord] = {r.name: r for r in _records()}


def _canonical(name: str) -> str:
    return name.replace(" ", "")


def catalog_lookup(name: str | None) -> ExpectedRecord:
    if name is None:
        raise CatalogError("group has no name")
    try:
        return CATALOG[_canonical(name)]
    except KeyError:
        raise CatalogError(f"{name!r} is not in the catalog") from None


def compare_with_catalog(name: str, pi3, pi2s, h2) -> list[str]:
    """Names of fields where computed values disagree with the catalog record."""
    rec = catalog_lookup(name)
    bad = []
    for field, got in (("pi3", pi3), ("pi2s", pi2s), ("h2", h2)):
        want = getattr(rec, field)
        if want is not None and got is not None and want != got:
            bad.append(field)
    return bad
