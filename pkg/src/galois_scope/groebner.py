"""Buchberger Groebner-basis kernel in grevlex order.

Only what the smoothness certificate needs: S-polynomial reduction with the
coprime-leading-term criterion and a cooperative deadline.  Coefficients are
exact field elements, so no precision concerns; leading coefficients are
normalized to 1 as polynomials enter the basis.
"""
from __future__ import annotations

import time

from .polyring import HomogPoly, grevlex_key


class Deadline:
    """Cooperative time budget; None means no limit."""

    def __init__(self, seconds=None):
        self.limit = None if seconds is None else time.monotonic() + seconds

    def expired(self) -> bool:
        return self.limit is not None and time.monotonic() > self.limit


def _divides(m1, m2) -> bool:
    return all(a <= b for a, b in zip(m1, m2))


def _mono_mul(m1, m2):
    return tuple(a + b for a, b in zip(m1, m2))


def _mono_lcm(m1, m2):
    return tuple(max(a, b) for a, b in zip(m1, m2))


def _monic(f: HomogPoly) -> HomogPoly:
    lm = f.leading_monomial()
    return f.scale(f.terms[lm].inverse())


def normal_form(f: HomogPoly, basis: list[HomogPoly], deadline: Deadline | None = None):
    """Remainder of f under division by the basis; None on deadline expiry."""
    field, nvars = f.field, f.nvars
    rem_terms: dict = {}
    work = f
    lms = [g.leading_monomial() for g in basis]
    while not work.is_zero():
        if deadline is not None and deadline.expired():
            return None
        lm = work.leading_monomial()
        lc = work.terms[lm]
        for g, glm in zip(basis, lms):
            if _divides(glm, lm):
                shift = tuple(a - b for a, b in zip(lm, glm))
                factor = HomogPoly(field, nvars, sum(shift), {shift: lc / g.terms[glm]})
                work = work - factor * g
                break
        else:
            rem_terms[lm] = lc
            work = HomogPoly(field, nvars, work.degree,
                             {m: c for m, c in work.terms.items() if m != lm})
    return rem_terms


def s_polynomial(f: HomogPoly, g: HomogPoly) -> HomogPoly:
    lf, lg = f.leading_monomial(), g.leading_monomial()
    lcm = _mono_lcm(lf, lg)
    field, nvars = f.field, f.nvars
    mf = tuple(a - b for a, b in zip(lcm, lf))
    mg = tuple(a - b for a, b in zip(lcm, lg))
    tf = HomogPoly(field, nvars, sum(mf), {mf: f.terms[lf].inverse()})
    tg = HomogPoly(field, nvars, sum(mg), {mg: g.terms[lg].inverse()})
    return tf * f - tg * g


def groebner_basis(gens: list[HomogPoly], deadline: Deadline | None = None):
    """Groebner basis of the ideal (grevlex); None if the deadline expires."""
    basis = [_monic(g) for g in gens if not g.is_zero()]
    if not basis:
        return []
    nvars = basis[0].nvars
    pairs = [(i, j) for i in range(len(basis)) for j in range(i)]
    while pairs:
        if deadline is not None and deadline.expired():
            return None
        # normal selection: smallest lcm degree first
        pairs.sort(key=lambda p: sum(_mono_lcm(basis[p[0]].leading_monomial(),
                                                basis[p[1]].leading_monomial())), reverse=True)
        i, j = pairs.pop()
        lf = basis[i].leading_monomial()
        lg = basis[j].leading_monomial()
        if _mono_lcm(lf, lg) == _mono_mul(lf, lg):
            continue  # coprime leading terms reduce to zero
        s = s_polynomial(basis[i], basis[j])
        if s.is_zero():
            continue
        rem = normal_form(s, basis, deadline)
        if rem is None:
            return None
        if rem:
            h = _monic(HomogPoly(s.field, nvars, s.degree, rem))
            basis.append(h)
            pairs.extend((len(basis) - 1, k) for k in range(len(basis) - 1))
    return _interreduce(basis)


def _interreduce(basis: list[HomogPoly]) -> list[HomogPoly]:
    lms = [g.leading_monomial() for g in basis]
    keep = []
    for i, lm in enumerate(lms):
        if not any(j != i and _divides(lms[j], lm) and (lms[j] != lm or j < i)
                   for j in range(len(basis))):
            keep.append(basis[i])
    keep.sort(key=lambda g: grevlex_key(g.leading_monomial()))
    return keep


def leading_pure_powers(basis: list[HomogPoly], nvars: int) -> list[bool]:
    """For each variable, whether some pure power of it leads a basis element."""
    out = [False] * nvars
    for g in basis:
        lm = g.leading_monomial()
        nz = [i for i, e in enumerate(lm) if e]
        if len(nz) == 1:
            out[nz[0]] = True
    return out
