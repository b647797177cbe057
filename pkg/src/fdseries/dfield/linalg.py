"""Exact linear algebra over a tower."""


def _weight(e):
    return len(e.num) + len(e.den)


def row_reduce(rows, ncols):
    """Gauss-Jordan elimination.  Returns (reduced rows, pivot columns)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        best = None
        for i in range(r, len(rows)):
            e = rows[i][c]
            if not e.is_zero() and (best is None or _weight(e) < _weight(rows[best][c])):
                best = i
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [e * inv if not e.is_zero() else e for e in rows[r]]
        for i in range(len(rows)):
            if i == r:
                continue
            f = rows[i][c]
            if f.is_zero():
                continue
            rows[i] = [a - f * b if not b.is_zero() else a for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows, ncols):
    return len(row_reduce(rows, ncols)[1])


def nullspace(rows, ncols, tower):
    """A basis of {v : rows * v = 0}."""
    reduced, pivots = row_reduce(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [tower.zero] * ncols
        v[f] = tower.one
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(rows, rhs):
    """One solution of rows * v = rhs, or None when inconsistent."""
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = row_reduce(aug, n + 1)
    if n in pivots:
        return None
    tower = rhs[0].tower
    v = [tower.zero] * n
    for row, p in zip(reduced, pivots):
        v[p] = row[n]
    return v


def fraction_free_rank(rows, ncols):
    """Rank by fraction-free (Bareiss-style) elimination on cleared rows."""
    rows = [clear_row(r) for r in rows]
    rows = [r for r in rows if any(not e.is_zero() for e in r)]
    rk = 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        p = rows[rk][c]
        for i in range(rk + 1, len(rows)):
            f = rows[i][c]
            if f.is_zero():
                continue
            rows[i] = clear_row([p * a - f * b for a, b in zip(rows[i], rows[rk])])
        rk += 1
    return rk


def clear_row(row):
    """Scale a row so that its entries are polynomials with trivial content."""
    nz = [e for e in row if not e.is_zero()]
    if not nz:
        return list(row)
    t = nz[0].tower
    u = t.universe
    den = None
    for e in nz:
        d = u.lift(e.den)
        den = d if den is None else den * (d / den.gcd(d))
    scaled = [e * t.element(den) if not e.is_zero() else e for e in row]
    g = None
    for e in scaled:
        if e.is_zero():
            continue
        n = u.lift(e.num)
        g = n if g is None else g.gcd(n)
    if g is not None and not g.is_one():
        ge = t.element(g)
        scaled = [e / ge if not e.is_zero() else e for e in scaled]
    return scaled
