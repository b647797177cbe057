"""G-symbols and elements of the module spanned by their fractional derivatives."""

from fractions import Fraction
from math import lcm

from ..errors import PreconditionError
from ..dfield.tower import join
from .expand import derive_graded, expand_closed, expand_recursive


class GSymbol:
    """G = G_{s_2..s_k0}(f_1, ..., f_k0) with s_1 = 1 > s_2 > ... > s_k0 > 0."""

    def __init__(self, fs, exponents=()):
        exps = [Fraction(1)] + [Fraction(s) for s in exponents]
        if len(fs) != len(exps):
            raise PreconditionError("need one exponent per element after f_1")
        for a, b in zip(exps, exps[1:]):
            if not (a > b > 0):
                raise PreconditionError("exponents must satisfy 1 > s_2 > ... > s_k0 > 0")
        tower = fs[0].tower
        for f in fs[1:]:
            tower = join(tower, f.tower)
        self.tower = tower
        self.f = [tower.coerce(f) for f in fs]
        self.s = exps
        self.q = lcm(*[s.denominator for s in exps])

    @property
    def k0(self):
        return len(self.f)

    def gens(self):
        return list(zip(self.f, self.s))

    def header(self):
        return {"s": [_q(s) for s in self.s[1:]], "f": [str(f) for f in self.f], "q": self.q}

    def __repr__(self):
        return f"GSymbol(s={[str(s) for s in self.s]}, f={[str(f) for f in self.f]})"


def _q(v):
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


class FracElement:
    """sum h_s G^(s) over a fixed G-symbol."""

    __slots__ = ("gsymbol", "terms")

    def __init__(self, gsymbol, terms=None):
        self.gsymbol = gsymbol
        self.terms = {Fraction(s): h for s, h in (terms or {}).items() if not h.is_zero()}

    def derive(self, var):
        return FracElement(self.gsymbol, derive_graded(self.terms, var, self.gsymbol.gens()))

    def coefficient(self, s):
        return self.terms.get(Fraction(s), self.gsymbol.tower.zero)

    def exponents(self):
        return sorted(self.terms, reverse=True)

    def top(self):
        return max(self.terms) if self.terms else None

    def __add__(self, other):
        out = dict(self.terms)
        for s, h in other.terms.items():
            out[s] = out[s] + h if s in out else h
        return FracElement(self.gsymbol, out)

    def __neg__(self):
        return FracElement(self.gsymbol, {s: -h for s, h in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return set(self.terms) == set(other.terms) and all(self.terms[s] == other.terms[s] for s in self.terms)

    def is_zero(self):
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({self.terms[s]})*G^({s})" for s in self.exponents())

    __repr__ = __str__


def frac_derive(e, var):
    return e.derive(var)


def expand_apply(T, h, s0, G):
    """T applied to h G^(s0), by repeated use of the differentiation rule."""
    t = join(join(T.tower, h.tower), G.tower)
    h = t.coerce(h)
    return FracElement(G, expand_recursive(T.in_tower(t), h, Fraction(s0), G.gens()))


def expand_apply_closed(T, h, s0, G):
    """T applied to h G^(s0), by the closed partition formula."""
    t = join(join(T.tower, h.tower), G.tower)
    h = t.coerce(h)
    return FracElement(G, expand_closed(T.in_tower(t), h, Fraction(s0), G.gens()))
