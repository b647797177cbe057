"""Jet extensions realizing solutions of first-order quasi-linear equations."""

from dataclasses import dataclass

from ..errors import IntegrabilityError, PreconditionError


@dataclass
class JetExtension:
    tower: object
    name: str
    element: object
    relation: object

    def jet(self, i, k):
        return self.tower.jet(self.name, i, k)


def fresh_name(tower, prefix):
    """A generator name based on prefix that is unused in the tower's universe."""
    u = tower.universe
    if prefix not in u.owner and prefix not in u.families:
        return prefix
    k = 1
    while f"{prefix}n{k}" in u.owner or f"{prefix}n{k}" in u.families:
        k += 1
    return f"{prefix}n{k}"


def adjoin_characteristic(tower, name, direction=(1, 0), b=0, source=0, check_depth=3):
    """Adjoin f with a1 d_x f + a2 d_y f + b f = source.

    With a1 != 0 every d_x-jet is rewritten through d_y-jets; with a1 = 0 the
    roles of x and y are exchanged.
    """
    a1, a2 = (tower.coerce(v) for v in direction)
    b, source = tower.coerce(b), tower.coerce(source)
    if a1.is_zero() and a2.is_zero():
        raise PreconditionError("characteristic direction must be nonzero")
    if not a1.is_zero():
        def rho(t):
            return (t.coerce(source) - a2 * t.jet(name, 0, 1) - b * t.jet(name)) / a1
        t, f = tower.adjoin_jets(name, 1, "x", rho)
    else:
        def rho(t):
            return (t.coerce(source) - b * t.jet(name)) / a2
        t, f = tower.adjoin_jets(name, 1, "y", rho)
    rel = t.family(name).rho
    check_commutation(t, name, check_depth)
    return JetExtension(t, name, f, rel)


def check_commutation(tower, name, depth=3):
    """d_x d_y^k f and d_y^k d_x f agree for k <= depth (likewise with x, y swapped)."""
    f = tower.jet(name)
    for k in range(depth + 1):
        a = tower.jet(name, 0, k).derive("x")
        b = f.derive("x").derive_word("y" * k)
        if a != b:
            raise IntegrabilityError(f"jet rewrite for {name} does not commute at depth {k}")
        a = tower.jet(name, k, 0).derive("y")
        b = f.derive("y").derive_word("x" * k)
        if a != b:
            raise IntegrabilityError(f"jet rewrite for {name} does not commute at depth {k}")
