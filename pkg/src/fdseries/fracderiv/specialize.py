"""Concrete specializations of a G-symbol as truncated polynomials in the f_i."""

from fractions import Fraction
from itertools import product
from math import factorial

from ..errors import PreconditionError


class MissingConstant(PreconditionError):
    pass


class Specialization:
    """G^(s) = sum_j c_{-s - j.s} prod f_i^{j_i}/j_i!, truncated at total degree N in the f_i.

    Each G^(s) is stored as {(j_1, ..., j_k0): rational}.
    """

    def __init__(self, exponents, constants, N, default=None):
        self.s = [Fraction(1)] + [Fraction(v) for v in exponents]
        self.constants = {Fraction(k): Fraction(v) for k, v in constants.items()}
        self.N = N
        self.default = default
        self._cache = {}

    def constant(self, index):
        if index in self.constants:
            return self.constants[index]
        if self.default is None:
            raise MissingConstant(f"no constant c_{index} supplied")
        return Fraction(self.default)

    def __call__(self, s):
        s = Fraction(s)
        if s not in self._cache:
            poly = {}
            for js in product(range(self.N + 1), repeat=len(self.s)):
                if sum(js) > self.N:
                    continue
                idx = -s - sum(j * w for j, w in zip(js, self.s))
                c = self.constant(idx)
                if c == 0:
                    continue
                den = 1
                for j in js:
                    den *= factorial(j)
                poly[js] = c / den
            self._cache[s] = poly
        return self._cache[s]

    def evaluate(self, s, values, one):
        """Substitute elements (tower elements or series) for the f_i."""
        out = one * 0
        for js, c in self(s).items():
            term = one * c
            for v, j in zip(values, js):
                if j:
                    term = term * v ** j
            out = out + term
        return out

    def check_rule(self, s, degree=None):
        """The truncated family obeys d/df_i G^(s) = G^(s + s_i) through degree N - 1."""
        degree = self.N - 1 if degree is None else degree
        poly = self(s)
        for i, w in enumerate(self.s):
            target = self(s + w)
            deriv = {}
            for js, c in poly.items():
                if js[i]:
                    k = list(js)
                    k[i] -= 1
                    deriv[tuple(k)] = deriv.get(tuple(k), 0) + c * js[i]
            for js in set(deriv) | set(target):
                if sum(js) > degree:
                    continue
                if deriv.get(js, 0) != target.get(js, 0):
                    return False
        return True


def specialize(exponents, constants, N, default=None):
    return Specialization(exponents, constants, N, default)
