# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled reduced row echelon kernel.

Rows are scaled to primitive integer vectors and eliminated fraction-free,
which avoids rational normalisation in the inner loop. The reduced echelon
form is unique, so the output matches the pure-Python kernel exactly.
"""

from fractions import Fraction
from math import gcd, lcm


cdef object _content(dict row):
    cdef object g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    return g


cdef dict _primitive(dict row):
    cdef object g = _content(row)
    if g == 1:
        return row
    return {k: v // g for k, v in row.items()}


cdef dict _to_integer(raw):
    cdef object den = 1
    cdef dict fr = {}
    for c, v in raw.items():
        if v:
            f = Fraction(v)
            fr[c] = f
            den = lcm(den, f.denominator)
    return {c: (f.numerator * (den // f.denominator)) for c, f in fr.items()}


cdef dict _combine(dict row, object a, dict other, object b):
    # returns a*row - b*other, dropping zeros
    cdef dict out = {}
    cdef object nv
    if a == 1:
        out = dict(row)
    else:
        for k, v in row.items():
            out[k] = a * v
    for k, v in other.items():
        nv = out.get(k, 0) - b * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def rref(rows):
    """Reduce sparse rational rows to reduced row echelon form.

    Same contract as ``qhecke._pykernel.rref``.
    """
    cdef dict basis = {}
    cdef dict row
    cdef dict other
    cdef object a, d, g, piv, lead
    for raw in rows:
        row = _to_integer(raw)
        if not row:
            continue
        hits = [c for c in row if c in basis]
        for c in hits:
            a = row.get(c, 0)
            if not a:
                continue
            other = basis[c]
            d = other[c]
            g = gcd(a, d)
            row = _combine(row, d // g, other, a // g)
        if not row:
            continue
        row = _primitive(row)
        piv = min(row)
        lead = row[piv]
        for key in list(basis):
            other = basis[key]
            a = other.get(piv)
            if a:
                g = gcd(a, lead)
                basis[key] = _primitive(_combine(other, lead // g, row, a // g))
        basis[piv] = row
    pivots = sorted(basis)
    out = []
    for p in pivots:
        row = basis[p]
        lead = row[p]
        out.append({k: Fraction(v, lead) for k, v in row.items()})
    return out, pivots
