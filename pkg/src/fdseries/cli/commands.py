"""Command handlers: each takes a Session and parsed arguments and returns a JSON-ready dict."""

import json
from fractions import Fraction

from ..errors import ParseError, PreconditionError, VerificationError
from ..dfield.series import expand_series
from ..fracderiv import FracSeries, GSymbol, expand_apply, verify_series
from ..lpdo import mult_of, symbol_linear_factors
from ..newton import Branch, construct_series
from ..ore import left_gcd, symbol_gcd
from ..ore.swap import _dy_lpdo
from ..factor import (
    disc2,
    factor_up_to_order3,
    irreducible2,
    left_factor_search,
    right_factor_search,
    separable_prepare,
    separable_reconstruct,
)
from ..intersect import intersect_first_order
from .syntax import Session, parse_pair, split_top


def q(v):
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def _factor(session, text):
    a, b = parse_pair(text)
    return (session.element(a), session.element(b))


def _bounds(text):
    if text is None:
        return None
    parts = [int(p) for p in text.split(",")]
    if len(parts) == 1:
        parts = parts * 2
    if len(parts) != 2 or min(parts) < 0:
        raise ParseError("bounds must be 'n' or 'n,d' with nonnegative integers", "1:1")
    return tuple(parts)


def _choices(text):
    if not text:
        return None
    return [{"edge": int(e)} for e in text.split(",") if e.strip() != ""]


def cmd_symbol(s, args):
    T = s.operator(args.expr)
    return {"operator": str(T), "order": T.order, "symbol": str(T.symbol())}


def cmd_factors_of_symbol(s, args):
    T = s.operator(args.expr)
    fac = symbol_linear_factors(T.symbol())
    return {
        "symbol": str(T.symbol()),
        "linear": [{"a1": str(f.a1), "a2": str(f.a2), "multiplicity": f.multiplicity} for f in fac.linear],
        "residual": [{"factor": [str(c) for c in p.coeffs], "multiplicity": m} for p, m in fac.residual],
    }


def cmd_mult(s, args):
    T = s.operator(args.expr)
    return {"operator": str(T), "factor": args.factor, "multiplicity": mult_of(T, _factor(s, args.factor))}


def cmd_expand(s, args):
    T = s.operator(args.expr)
    fs = [s.element(f) for f in split_top(args.f, ";")]
    exps = [Fraction(e) for e in split_top(args.s, ";")] if args.s else []
    G = GSymbol(fs, exps)
    h = s.element(args.h)
    e = expand_apply(T, h, Fraction(args.s0), G)
    return {
        "gsymbol": G.header(),
        "s0": q(args.s0),
        "terms": [{"exponent": q(k), "coefficient": str(e.coefficient(k))} for k in e.exponents()],
    }


def cmd_polygon(s, args):
    T = s.operator(args.expr)
    choices = _choices(args.branch)
    br = Branch.start(T, _factor(s, args.factor))
    out = []
    while True:
        out.append(br.P.to_json(br.max_slope))
        if args.level is not None and br.level >= args.level:
            break
        edges = br.edges()
        idx = choices[br.level - 2]["edge"] if choices and br.level - 2 < len(choices) else None
        edge = edges[idx] if idx is not None else edges[-1]
        if edge.is_terminal:
            break
        br = br.advance(edge)
    return {"operator": str(T), "factor": args.factor, "polygons": out}


def cmd_series(s, args):
    T = s.operator(args.expr)
    S = construct_series(T, _factor(s, args.factor), N=args.N, choices=_choices(args.branch),
                         depth=args.depth)
    doc = S.to_json(T)
    doc["trace"] = S.trace.to_json()
    doc["trace_check"] = S.trace.check()
    return doc


def load_series(doc):
    """A fresh session replaying the series' tower, and the series itself."""
    s = Session()
    s.replay(doc["tower"])
    g = doc["gsymbol"]
    G = GSymbol([s.element(f) for f in g["f"]], [Fraction(v) for v in g["s"]])
    terms = doc["terms"]
    s0 = Fraction(doc["s0"])
    hs = []
    for k, rec in enumerate(terms):
        if Fraction(rec["exponent"]) != s0 - Fraction(k, G.q):
            raise PreconditionError(f"term {k} has exponent {rec['exponent']}, expected consecutive steps")
        hs.append(s.element(rec["coefficient"]))
    return s, FracSeries(G, s0, hs)


def cmd_verify(s, args):
    with open(args.file) as fh:
        doc = json.load(fh)
    s2, S = load_series(doc)
    op = args.operator or doc.get("operator")
    if op is None:
        raise PreconditionError("no operator in the series file; pass --operator")
    T = s2.operator(op)
    depth = args.depth if args.depth is not None else S.N + 1
    v = verify_series(T, S, depth)
    out = {"ok": v.ok, "verified_depth": v.verified_depth, "checked": v.checked}
    if not v.ok:
        out["first_failure"] = q(v.first_failure)
        out["residual"] = str(v.residual)
        raise _Failed(out, VerificationError(f"series fails at exponent {q(v.first_failure)}"))
    return out


class _Failed(Exception):
    def __init__(self, doc, error):
        super().__init__(str(error))
        self.doc = doc
        self.error = error


def cmd_disc2(s, args):
    T = s.operator(args.expr)
    rep = disc2(T)
    v = irreducible2(T, _bounds(args.bounds))
    doc = rep.to_json()
    doc["verdict"] = "reducible" if v.reducible else "irreducible"
    if v.factors:
        doc["factors"] = [str(f) for f in v.factors]
    return doc


def cmd_factor(s, args):
    T = s.operator(args.expr)
    return factor_up_to_order3(T, _bounds(args.bounds)).to_json()


def _search_doc(T, rep):
    return {
        "operator": str(T),
        "bounds": list(rep.bounds),
        "candidates": [c.to_json() for c in rep.candidates],
        "searched": rep.exhausted,
        "certified": all(c.verify(T) for c in rep.candidates),
    }


def cmd_rfactor(s, args):
    T = s.operator(args.expr)
    return _search_doc(T, right_factor_search(T, _bounds(args.bounds)))


def cmd_lfactor(s, args):
    T = s.operator(args.expr)
    return _search_doc(T, left_factor_search(T, _bounds(args.bounds)))


def cmd_intersect(s, args):
    pairs = [tuple(s.element(v) for v in parse_pair(p)) for p in args.pairs]
    classes, res = intersect_first_order(pairs, s.tower)
    doc = {
        "classes": [
            {"a": str(c.a), "b": [str(b) for b in c.bs], "Z": str(c.lpdo()), "order": c.order,
             "minimality": c.minimality.to_json() if c.minimality else None,
             "witnesses": [str(w.to_lpdo()) for w in c.witnesses]}
            for c in classes
        ],
    }
    doc.update(res.to_json())
    return doc


def cmd_gcd(s, args):
    gens = [s.operator(e) for e in args.exprs]
    res = left_gcd(gens, bezout=args.bezout)
    g, e = symbol_gcd(gens)
    doc = {
        "gcd": str(res.p),
        "order": res.p.order,
        "symbol_gcd": str(g),
        "differential_type_degree": e,
        "divisibility": [{"left": str(U), "quotient": str(Q)} for U, Q in res.divisibility],
        "verified": res.verify(gens),
    }
    if res.combination is not None:
        b, cs = res.combination
        doc["combination"] = {"denominator": str(_dy_lpdo(res.p.tower, b.coeffs)), "coefficients": [str(c) for c in cs]}
    return doc


def cmd_reconstruct(s, args):
    T = s.operator(args.expr)
    x0, y0 = (Fraction(v) for v in parse_pair(args.center))
    data = separable_prepare(T, (x0, y0), args.N)
    sol = expand_series(s.element(args.solution), (x0, y0), args.N)
    rec = separable_reconstruct(T, sol, data, args.N)
    doc = {"directions": [str(a) for a in data.directions]}
    doc.update(rec.to_json())
    if not rec.exact:
        raise _Failed(doc, VerificationError("reconstruction leaves a nonzero residual"))
    return doc


def cmd_corpus(s, args):
    from .corpus import generate
    return {"kind": args.kind, "seed": args.seed,
            "operators": [str(T) for T in generate(args.kind, args.seed, args.count, s.tower)]}


HANDLERS = {
    "symbol": cmd_symbol,
    "factors-of-symbol": cmd_factors_of_symbol,
    "mult": cmd_mult,
    "expand": cmd_expand,
    "polygon": cmd_polygon,
    "series": cmd_series,
    "verify": cmd_verify,
    "disc2": cmd_disc2,
    "factor": cmd_factor,
    "rfactor": cmd_rfactor,
    "lfactor": cmd_lfactor,
    "intersect": cmd_intersect,
    "gcd": cmd_gcd,
    "reconstruct": cmd_reconstruct,
    "corpus": cmd_corpus,
}
