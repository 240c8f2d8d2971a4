"""Pure-Python reduced row echelon kernel over the rationals.

This is the reference implementation and the fallback used when the
compiled kernel in ``_ckernel`` is not available.
"""

from __future__ import annotations

from fractions import Fraction


def rref(rows):
    """Reduce sparse rational rows to reduced row echelon form.

    Args:
        rows: iterable of mappings ``{column: value}``; zero entries may be
            present and are ignored.

    Returns:
        ``(reduced, pivots)`` where ``reduced`` is a list of dicts sorted by
        pivot column, each with a 1 at its pivot and zeros in every other
        pivot column, and ``pivots`` is the increasing list of pivot columns.
    """
    basis: dict[int, dict[int, Fraction]] = {}
    for raw in rows:
        row = {c: Fraction(v) for c, v in raw.items() if v}
        if not row:
            continue
        hits = [(c, row[c]) for c in row if c in basis]
        for c, factor in hits:
            for k, v in basis[c].items():
                nv = row.get(k, 0) - factor * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        if not row:
            continue
        piv = min(row)
        lead = row[piv]
        if lead != 1:
            row = {k: v / lead for k, v in row.items()}
        for other in basis.values():
            factor = other.get(piv)
            if factor:
                for k, v in row.items():
                    nv = other.get(k, 0) - factor * v
                    if nv:
                        other[k] = nv
                    else:
                        del other[k]
        basis[piv] = row
    pivots = sorted(basis)
    return [basis[p] for p in pivots], pivots
