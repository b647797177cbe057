"""Symbols of operators and their linear factors."""

from dataclasses import dataclass, field

from ..dfield.tower import join
from ..dfield.upoly import UPoly


class SymbolPoly:
    """Homogeneous form sum b_j xi^j eta^(p-j) of degree p."""

    __slots__ = ("tower", "degree", "coeffs")

    def __init__(self, tower, degree, coeffs):
        self.tower = tower
        self.degree = degree
        self.coeffs = {j: tower.coerce(c) for j, c in coeffs.items() if not tower.coerce(c).is_zero()}

    def __mul__(self, other):
        out = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                out[i + j] = out[i + j] + a * b if i + j in out else a * b
        return SymbolPoly(join(self.tower, other.tower), self.degree + other.degree, out)

    def __eq__(self, other):
        return self.degree == other.degree and set(self.coeffs) == set(other.coeffs) and \
            all(self.coeffs[j] == other.coeffs[j] for j in self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def dehomogenize(self):
        """The polynomial s(u, 1) with u = xi/eta."""
        n = max(self.coeffs, default=-1)
        return UPoly(self.tower, [self.coeffs.get(j, self.tower.zero) for j in range(n + 1)])

    def eta_multiplicity(self):
        return self.degree - max(self.coeffs, default=0)

    def evaluate(self, xi, eta):
        r = self.tower.zero
        for j, c in self.coeffs.items():
            r = r + c * xi ** j * eta ** (self.degree - j)
        return r

    def __str__(self):
        terms = []
        for j in sorted(self.coeffs, reverse=True):
            c = self.coeffs[j]
            mono = "*".join(p for p in (
                "xi" if j == 1 else (f"xi^{j}" if j else ""),
                "eta" if self.degree - j == 1 else (f"eta^{self.degree - j}" if self.degree - j else "")) if p)
            cs = str(c)
            if c.needs_parens():
                cs = f"({cs})"
            terms.append(mono if c == 1 and mono else (f"{cs}*{mono}" if mono else cs))
        return " + ".join(terms) if terms else "0"


@dataclass
class LinearFactor:
    """The factor (a1*xi + a2*eta) of a symbol, with multiplicity."""

    a1: object
    a2: object
    multiplicity: int = 1
    extension: object = field(default=None)

    @property
    def direction(self):
        return (self.a1, self.a2)

    @property
    def slope(self):
        """a = a2/a1, the coefficient of d_y in d_x + a*d_y; None for the eta factor."""
        if self.a1.is_zero():
            return None
        return self.a2 / self.a1

    def __str__(self):
        return f"({self.a1}, {self.a2})^{self.multiplicity}"


@dataclass
class SymbolFactorization:
    linear: list
    residual: list

    def residual_degree(self):
        return sum(p.degree * m for p, m in self.residual)


def symbol_linear_factors(s):
    """Linear factors of a symbol over its tower.

    Returns the linear factors with multiplicities, normalized so that
    a1 = 1 (or the pure eta factor (0, 1)), and the irreducible factors of
    higher degree of the dehomogenized polynomial.
    """
    t = s.tower
    linear = []
    residual = []
    k = s.eta_multiplicity()
    if k:
        linear.append(LinearFactor(t.zero, t.one, k))
    for f, m in s.dehomogenize().factor():
        if f.degree == 1:
            linear.append(LinearFactor(t.one, f.coeffs[0], m))
        else:
            residual.append((f, m))
    return SymbolFactorization(linear, residual)


def mult_of(T, factor):
    """Multiplicity of the factor's direction in the symbol of T."""
    s = T.symbol() if hasattr(T, "symbol") else T
    a1, a2 = factor.direction if isinstance(factor, LinearFactor) else factor
    t = s.tower
    a1, a2 = t.coerce(a1), t.coerce(a2)
    if a1.is_zero():
        return s.eta_multiplicity()
    root = -a2 / a1
    p = s.dehomogenize()
    lin = UPoly(p.tower, [-root, 1])
    m = 0
    while p.degree >= 1:
        q, r = p.divmod(lin)
        if not r.is_zero():
            break
        p = q
        m += 1
    return m
