"""Fixed polygon families: corridors, rectangles and combs."""

from __future__ import annotations

from ..grid import GridPolygon


def gen_rectangle(w: int, h: int) -> GridPolygon:
    """``w`` columns by ``h`` rows, start in the top-left corner."""
    if w < 1 or h < 1:
        raise ValueError("rectangle dimensions must be positive")
    return GridPolygon(frozenset((x, y) for x in range(w) for y in range(h)), (0, 0))


def gen_corridor(width: int, length: int) -> GridPolygon:
    """A horizontal corridor ``width`` rows high and ``length`` cells long."""
    return gen_rectangle(length, width)


def gen_comb(teeth: int, tooth_len: int) -> GridPolygon:
    """A spine row with ``teeth`` downward teeth on every other column.

    Adjacent teeth are separated by a blocked column, so the comb never
    contains a 2x2 free square.
    """
    if teeth < 1 or tooth_len < 0:
        raise ValueError("need at least one tooth and a non-negative tooth length")
    spine = {(x, 0) for x in range(2 * teeth - 1)}
    teeth_cells = {(2 * i, y) for i in range(teeth) for y in range(1, tooth_len + 1)}
    return GridPolygon(frozenset(spine | teeth_cells), (0, 0))
