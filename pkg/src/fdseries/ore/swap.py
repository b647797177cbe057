"""Ore swaps between right and left fractions, and fractions p b^{-1}."""

from ..errors import DivisionByZero, PreconditionError
from ..dfield.linalg import nullspace
from ..dfield.tower import join
from ..lpdo.operator import LPDO
from .skewfield import dy_poly


def _as_dy(b):
    """An LPDO in d_y alone as its coefficient list."""
    if isinstance(b, LPDO):
        if not b.is_in_dy():
            raise PreconditionError("denominator must lie in F[d_y]")
        n = b.order_dy() if not b.is_zero() else -1
        return b.tower, [b.coefficient(0, j) for j in range(n + 1)]
    return b.tower, list(b.coeffs)


def _dy_lpdo(tower, coeffs):
    return LPDO(tower, {(0, j): tower.coerce(c) for j, c in enumerate(coeffs)})


def _ansatz(basis_left, basis_right, tower):
    """Nonzero (u, v) with sum u_i L_i = sum v_j R_j, or None."""
    keys = set()
    for op in basis_left + basis_right:
        keys |= set(op.coeffs)
    keys = sorted(keys)
    ncols = len(basis_left) + len(basis_right)
    rows = []
    for k in keys:
        row = [op.coefficient(*k) for op in basis_left] + [-op.coefficient(*k) for op in basis_right]
        rows.append(row)
    for vec in nullspace(rows, ncols, tower):
        u = vec[:len(basis_left)]
        if any(not c.is_zero() for c in u):
            return u, vec[len(basis_left):]
    return None


def ore_swap(p, b, max_degree=12):
    """(bbar, pbar) with bbar * p = pbar * b, bbar in F[d_y] nonzero, pbar an LPDO.

    Trial degrees increase until the homogeneous system has a solution
    with bbar != 0.
    """
    tb, bc = _as_dy(b)
    t = join(p.tower, tb)
    p = p.in_tower(t)
    B = _dy_lpdo(t, bc)
    if B.is_zero():
        raise DivisionByZero("ore_swap with b = 0")
    if B.order == 0 or p.is_zero():
        c = B.coefficient(0, 0)
        return dy_poly(t, [1]), p * LPDO.scalar(t, c.inverse())
    ox, oy = p.order_dx(), p.order_dy()
    for k in range(max_degree + 1):
        left = [LPDO.monomial(t, 0, i) * p for i in range(k + 1)]
        mons = [(i, j) for i in range(ox + 1) for j in range(oy + k + 1)]
        right = [LPDO.monomial(t, i, j) * B for i, j in mons]
        sol = _ansatz(left, right, t)
        if sol is None:
            continue
        u, v = sol
        bbar = dy_poly(t, u)
        pbar = LPDO(t, {m: c for m, c in zip(mons, v) if not c.is_zero()})
        inv = bbar.lc().inverse()
        bbar = bbar.new([inv * c for c in bbar.coeffs])
        pbar = pbar.left_scale(inv)
        if _dy_lpdo(t, bbar.coeffs) * p != pbar * B:
            raise AssertionError("ore swap identity fails")
        return bbar, pbar
    raise PreconditionError(f"no swap found with d_y-degree <= {max_degree}")


def ore_swap_right(b, p, max_degree=12):
    """(pbar, bbar) with p * bbar = b * pbar, bbar in F[d_y] nonzero, so b^{-1} p = pbar bbar^{-1}.

    Obtained from the left swap of the adjoints.
    """
    tb, bc = _as_dy(b)
    t = join(p.tower, tb)
    B = _dy_lpdo(t, bc)
    bbar, pbar = ore_swap(p.in_tower(t).adjoint(), B.adjoint(), max_degree)
    bstar = _dy_lpdo(t, bbar.coeffs).adjoint()
    pstar = pbar.adjoint()
    if p.in_tower(t) * bstar != B * pstar:
        raise AssertionError("right ore swap identity fails")
    _, coeffs = _as_dy(bstar)
    return pstar, dy_poly(t, coeffs)
