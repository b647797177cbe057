"""The discriminant of a second-order operator with a non-separable symbol."""

from dataclasses import dataclass

from ..errors import PreconditionError, VerificationError
from ..fracderiv.jets import adjoin_characteristic, fresh_name
from ..lpdo.symbol import symbol_linear_factors
from .search import right_factor_search


@dataclass
class Disc2Report:
    """T = d_x^2 + 2a d_x d_y + a^2 d_y^2 + b01 d_x + b10 d_y + b00 after normalization."""

    a: object
    b01: object
    b10: object
    b00: object
    disc: object
    identity_checked: bool = False

    def to_json(self):
        return {"a": str(self.a), "b01": str(self.b01), "b10": str(self.b10),
                "b00": str(self.b00), "disc": str(self.disc)}


def _normalize(T):
    if T.order != 2:
        raise PreconditionError("disc2 needs a second-order operator")
    fac = symbol_linear_factors(T.symbol())
    if len(fac.linear) != 1 or fac.linear[0].multiplicity != 2:
        raise PreconditionError("symbol is not the square of a linear form")
    lf = fac.linear[0]
    if lf.a1.is_zero():
        raise PreconditionError("double direction d_y is not supported; swap coordinates first")
    c = T.coefficient(2, 0)
    return T.left_scale(c.inverse()), lf.a2 / lf.a1


def disc_formula(a, b01, b10):
    """Disc with (-T + b00) f = Disc d_y f for d_x f + a d_y f = 0."""
    return a.dx() + a * a.dy() + a * b01 - b10


def check_identity(T, a, disc):
    """Apply -T + b00 to a characteristic jet f and compare with Disc d_y f."""
    t = T.tower
    name = fresh_name(t, "f")
    ext = adjoin_characteristic(t, name, direction=(1, a))
    t2, f = ext.tower, ext.element
    lhs = t2.coerce(T.coefficient(0, 0)) * f - T.in_tower(t2).apply(f)
    return lhs == t2.coerce(disc) * f.dy()


def disc2(T):
    Tn, a = _normalize(T)
    b01, b10, b00 = Tn.coefficient(1, 0), Tn.coefficient(0, 1), Tn.coefficient(0, 0)
    d = disc_formula(a, b01, b10)
    if not check_identity(Tn, a, d):
        raise VerificationError("discriminant identity fails on a characteristic jet")
    return Disc2Report(a, b01, b10, b00, d, True)


@dataclass
class Irreducibility:
    report: Disc2Report
    reducible: bool
    factors: list

    def to_json(self):
        out = {"disc": str(self.report.disc), "verdict": "reducible" if self.reducible else "irreducible"}
        if self.factors:
            out["factors"] = [str(f) for f in self.factors]
        return out


def irreducible2(T, bounds=None):
    """Reducible exactly when Disc = 0; a verified factorization is produced in that case."""
    rep = disc2(T)
    if not rep.disc.is_zero():
        return Irreducibility(rep, False, [])
    t = T.tower
    found = right_factor_search(T, bounds, first_only=True, direction=(t.one, rep.a))
    if not found.candidates:
        raise VerificationError("Disc = 0 but no factor was found within the bounds")
    c = found.candidates[0]
    return Irreducibility(rep, True, [c.cofactor, c.L])
