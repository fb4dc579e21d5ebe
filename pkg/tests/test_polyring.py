import random
from fractions import Fraction

import pytest

from galois_scope.errors import DegreeMismatch
from galois_scope.exactnum import cyclo_field
from galois_scope.polyring import HomogPoly, binary_form_roots, distinct_root_count

Q = cyclo_field(1)


def poly(field, nvars, terms):
    return HomogPoly.from_terms(field, nvars, terms)


def fermat_quartic(field=Q):
    return poly(field, 3, {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1})


def sympy_poly(f):
    """Independent rendering of a rational-coefficient HomogPoly as a sympy expr."""
    import sympy

    xs = sympy.symbols(f"y0:{f.nvars}")
    expr = sympy.Integer(0)
    for mono, c in f.terms.items():
        r = c.rational()
        assert r is not None, "sympy oracle only covers rational coefficients"
        term = sympy.Rational(r.numerator, r.denominator)
        for x, e in zip(xs, mono):
            term *= x**e
        expr += term
    return sympy.expand(expr), xs


def test_construction_rejects_inhomogeneous():
    with pytest.raises(DegreeMismatch):
        poly(Q, 2, {(2, 0): 1, (0, 3): 1})


def test_add_cancellation():
    f = poly(Q, 2, {(2, 0): 1, (0, 2): 1})
    g = poly(Q, 2, {(0, 2): -1})
    assert (f + g).terms == poly(Q, 2, {(2, 0): 1}).terms


def test_mul_degree():
    x0 = HomogPoly.variable(Q, 2, 0)
    x1 = HomogPoly.variable(Q, 2, 1)
    h = x0 * x1
    assert h.degree == 2 and h.terms == {(1, 1): Q.one}


def test_add_degree_mismatch():
    f = poly(Q, 2, {(2, 0): 1})
    g = poly(Q, 2, {(3, 0): 1})
    with pytest.raises(DegreeMismatch):
        f + g


def test_transform_swap_fixes_fermat():
    f = fermat_quartic()
    swap = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    assert f.transform(swap) == f


def test_transform_diag_root_of_unity():
    F4 = cyclo_field(4)
    f = fermat_quartic(F4)
    M = [[F4.zeta(), F4.zero, F4.zero], [F4.zero, F4.one, F4.zero], [F4.zero, F4.zero, F4.one]]
    assert f.transform(M) == f


def test_transform_shear_matches_sympy_expansion():
    # (x0+x1)^4 + x1^4 + x2^4 under x0 -> x0 - x1 gives the Fermat quartic
    import sympy

    f = poly(Q, 3, {(4, 0, 0): 1, (3, 1, 0): 4, (2, 2, 0): 6, (1, 3, 0): 4, (0, 4, 0): 2, (0, 0, 4): 1})
    M = [[1, -1, 0], [0, 1, 0], [0, 0, 1]]
    g = f.transform(M)
    expr, ys = sympy_poly(f)
    sub = sympy.expand(expr.subs({ys[0]: ys[0] - ys[1]}, simultaneous=True))
    oracle, _ = sympy_poly(g)
    assert sympy.simplify(sub - oracle) == 0
    assert g == fermat_quartic()


def test_transform_inverse_round_trip():
    rng = random.Random(3)
    from galois_scope.projlin import ProjMatrix

    for _ in range(10):
        nv = rng.choice([3, 4])
        terms = {}
        for _ in range(4):
            mono = [0] * nv
            for _ in range(4):
                mono[rng.randrange(nv)] += 1
            terms[tuple(mono)] = rng.randint(-3, 3)
        f = HomogPoly.from_terms(Q, nv, terms, degree=4)
        while True:
            M = ProjMatrix.from_entries(Q, [[rng.randint(-2, 2) for _ in range(nv)] for _ in range(nv)])
            try:
                Minv = M.inverse()
                break
            except Exception:
                continue
        assert f.transform(M).transform(Minv) == f


def test_euler_identity():
    rng = random.Random(9)
    for _ in range(8):
        nv, d = rng.choice([(3, 4), (4, 5)])
        terms = {}
        for _ in range(5):
            mono = [0] * nv
            for _ in range(d):
                mono[rng.randrange(nv)] += 1
            terms[tuple(mono)] = Fraction(rng.randint(-4, 4), rng.randint(1, 2))
        f = HomogPoly.from_terms(Q, nv, terms, degree=d)
        total = HomogPoly.zero(Q, nv, d)
        for i in range(nv):
            total = total + HomogPoly.variable(Q, nv, i) * f.partial(i)
        assert total == f.scale(d)


def test_partial_examples():
    f = poly(Q, 3, {(4, 0, 0): 1})
    assert f.partial(0) == poly(Q, 3, {(3, 0, 0): 4})
    g = poly(Q, 3, {(0, 4, 0): 1})
    assert g.partial(0).is_zero()
    h = poly(Q, 3, {(3, 0, 1): 1})
    assert h.partial(2) == poly(Q, 3, {(3, 0, 0): 1})


def test_expand_in_examples():
    f = fermat_quartic()
    parts = f.expand_in(0)
    assert set(parts) == {0, 4}
    assert parts[4] == poly(Q, 3, {(0, 0, 0): 1})
    assert parts[0] == poly(Q, 3, {(0, 4, 0): 1, (0, 0, 4): 1})
    g = poly(Q, 3, {(3, 1, 0): 1, (0, 4, 0): 1})
    parts = g.expand_in(0)
    assert parts[3] == poly(Q, 3, {(0, 1, 0): 1})
    assert parts[0] == poly(Q, 3, {(0, 4, 0): 1})
    # binomial case, oracle-checked coefficient of x0^3
    h = poly(Q, 3, {(4, 0, 0): 1, (3, 1, 0): 4, (2, 2, 0): 6, (1, 3, 0): 4, (0, 4, 0): 2, (0, 0, 4): 1})
    assert h.expand_in(0)[3] == poly(Q, 3, {(0, 1, 0): 4})


def test_expand_reassembles():
    rng = random.Random(21)
    for _ in range(6):
        nv, d = 3, 5
        terms = {}
        for _ in range(6):
            mono = [0] * nv
            for _ in range(d):
                mono[rng.randrange(nv)] += 1
            terms[tuple(mono)] = rng.randint(-3, 3)
        f = HomogPoly.from_terms(Q, nv, terms, degree=d)
        i = rng.randrange(nv)
        total = HomogPoly.zero(Q, nv, d)
        xi = HomogPoly.variable(Q, nv, i)
        for k, gk in f.expand_in(i).items():
            total = total + xi**k * gk
        assert total == f


def test_divide_by_linear():
    x1 = HomogPoly.variable(Q, 3, 1)
    f = poly(Q, 3, {(0, 2, 0): 1, (0, 1, 1): 1})
    assert f.divide_by_linear(x1) == poly(Q, 3, {(0, 1, 0): 1, (0, 0, 1): 1})
    g = poly(Q, 3, {(0, 2, 0): 1, (0, 0, 2): 1})
    assert g.divide_by_linear(x1) is None
    L = poly(Q, 3, {(0, 1, 0): 1, (0, 0, 1): 1})
    assert (L * L).divide_by_linear(L) == L


def test_divide_by_linear_round_trip():
    rng = random.Random(17)
    for _ in range(10):
        nv = 3
        terms = {}
        for _ in range(4):
            mono = [0] * nv
            for _ in range(3):
                mono[rng.randrange(nv)] += 1
            terms[tuple(mono)] = rng.randint(-3, 3)
        f = HomogPoly.from_terms(Q, nv, terms, degree=3)
        lterms = {}
        for i in range(nv):
            c = rng.randint(-2, 2)
            if c:
                lterms[tuple(1 if j == i else 0 for j in range(nv))] = c
        if not lterms:
            continue
        L = HomogPoly.from_terms(Q, nv, lterms, degree=1)
        if f.is_zero():
            continue
        assert (f * L).divide_by_linear(L) == f


def test_restrict_examples():
    f = poly(Q, 4, {(0, 0, 4, 0): 1, (0, 0, 0, 4): 1})
    e2 = (0, 0, 1, 0)
    e3 = (0, 0, 0, 1)
    r = f.restrict([e2, e3])
    assert r == poly(Q, 2, {(4, 0): 1, (0, 4): 1})
    g = poly(Q, 4, {(3, 0, 1, 0): 1, (0, 3, 0, 1): 1, (0, 0, 4, 0): 1, (0, 0, 0, 4): 1})
    assert g.restrict([e2, e3]) == poly(Q, 2, {(4, 0): 1, (0, 4): 1})
    h = poly(Q, 3, {(4, 0, 0): 1})
    rr = h.restrict([(0, 1, 0), (0, 0, 1)])
    assert rr.is_zero() and rr.degree == 4


def test_distinct_root_count_examples():
    import sympy

    b = poly(Q, 2, {(4, 0): 1, (0, 4): 1})
    # oracle: squarefree degree via sympy gcd
    t = sympy.symbols("t")
    u = t**4 + 1
    g = sympy.gcd(u, sympy.diff(u, t))
    assert sympy.degree(u) - sympy.degree(g) == 4
    assert distinct_root_count(b) == 4
    assert distinct_root_count(poly(Q, 2, {(2, 2): 1})) == 2
    assert distinct_root_count(poly(Q, 2, {(4, 0): 1})) == 1
    assert distinct_root_count(poly(Q, 2, {(0, 4): 1})) == 1
    # repeated root across both charts
    sq = poly(Q, 2, {(2, 0): 1, (1, 1): 2, (0, 2): 1})  # (x0+x1)^2
    assert distinct_root_count(sq) == 1


def test_binary_form_roots_enumeration():
    F8 = cyclo_field(8)
    b = poly(F8, 2, {(4, 0): 1, (0, 4): 1})
    roots = binary_form_roots(b)
    assert roots is not None and len(roots) == 4
    for r in roots:
        assert b.eval_at(r).is_zero()
    # not solvable in the small field
    F4 = cyclo_field(4)
    b2 = poly(F4, 2, {(4, 0): 1, (0, 4): 1})
    assert binary_form_roots(b2) is None
    # trinomial forms are counted but not enumerated
    b3 = poly(Q, 2, {(2, 0): 1, (1, 1): 1, (0, 2): 1})
    assert binary_form_roots(b3) is None
    assert distinct_root_count(b3) == 2


def test_eval_at_examples():
    f = fermat_quartic()
    assert f.eval_at((1, 0, 0)) == 1
    sextic = poly(Q, 3, {(0, 0, 6): 1, (5, 0, 1): 1, (0, 5, 1): 1, (3, 3, 0): 1})
    assert sextic.eval_at((1, 0, 0)).is_zero()
    quartic_surface = poly(Q, 4, {(3, 0, 1, 0): 1, (0, 3, 0, 1): 1, (0, 0, 4, 0): 1, (0, 0, 0, 4): 1})
    assert quartic_surface.eval_at((1, 0, 0, 0)).is_zero()
    with pytest.raises(ValueError):
        f.eval_at((0, 0, 0))
