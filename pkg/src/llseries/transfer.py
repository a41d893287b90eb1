"""The maps phi between section spaces of adjacent multidegrees.

For a multidegree d and a component q, the neighbour ``d.tilde(q)`` moves one
unit of degree away from X_q.  The "down" map d -> d~ kills the X_q part and
multiplies the rest by the node forms of X_q; the "up" map d~ -> d keeps only
the X_q part and multiplies it by the same node forms seen from X_q.

On raw triples (s1, s2, s3) this reads:

    q=1  down (s1, s2, s3) -> (0, u*s2, s3)        up  s1 -> (t*s1, 0, 0)
    q=2  down (s1, s2, s3) -> (t*s1, 0, v*s3)      up  s2 -> (0, u*s2, 0)
    q=3  down (s1, s2, s3) -> (s1, s2, 0)          up  s3 -> (0, 0, v*s3)

where s2 is always read in the X2 chart of the target degree, so keeping
the same coefficients in a chart one degree larger is multiplication by
the form vanishing at B = infinity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .field import QQ
from .curve import COMPONENTS, ChainCurve, CurveError, Multidegree, ambient
from .linalg import Matrix, ShapeError

DOWN = "down"
UP = "up"

# target minus source in (i, l) for each (q, direction)
_STEPS = {
    (1, DOWN): (-1, 0),
    (1, UP): (1, 0),
    (2, DOWN): (1, 1),
    (2, UP): (-1, -1),
    (3, DOWN): (0, -1),
    (3, UP): (0, 1),
}
_BY_STEP = {step: key for key, step in _STEPS.items()}


@dataclass(frozen=True)
class TransferMap:
    """phi between two adjacent multidegrees, as a matrix in the canonical charts."""

    source: Multidegree
    target: Multidegree
    q: int
    direction: str
    matrix: Matrix

    def apply(self, v: Sequence) -> tuple:
        return self.matrix.apply(v)


def _mul_x(coeffs: Sequence, length: int, field) -> list:
    """Multiply by the variable (shift up by one) and pad to ``length``."""
    return _pad([field.zero] + list(coeffs), length, field)


def _fit(coeffs: Sequence, length: int) -> list:
    if any(c != 0 for c in coeffs[length:]):
        raise CurveError("polynomial of degree >= %d in a %d-coefficient chart" % (length, length))
    return list(coeffs[:length])


def _pad(coeffs: Sequence, length: int, field) -> list:
    out = list(coeffs)
    if len(out) > length:
        return _fit(out, length)
    return out + [field.zero] * (length - len(out))


def _raw_step(q: int, direction: str, parts, sizes, field):
    s1, s2, s3 = parts
    n1, n2, n3 = sizes
    zero = lambda n: [field.zero] * n
    if q == 1 and direction == DOWN:
        return zero(n1), _mul_x(s2, n2, field), _pad(s3, n3, field)
    if q == 1 and direction == UP:
        return _mul_x(s1, n1, field), zero(n2), zero(n3)
    if q == 2 and direction == DOWN:
        return _mul_x(s1, n1, field), zero(n2), _mul_x(s3, n3, field)
    if q == 2 and direction == UP:
        return zero(n1), _mul_x(s2, n2, field), zero(n3)
    if q == 3 and direction == DOWN:
        return _pad(s1, n1, field), _pad(s2, n2, field), zero(n3)
    if q == 3 and direction == UP:
        return zero(n1), zero(n2), _mul_x(s3, n3, field)
    raise CurveError("unknown transfer (%r, %r)" % (q, direction))


@lru_cache(maxsize=None)
def transfer(curve: ChainCurve, source: Multidegree, target: Multidegree) -> TransferMap:
    """The map phi_{source,target} between two adjacent multidegrees."""
    step = (target.i - source.i, target.l - source.l)
    if step not in _BY_STEP:
        raise CurveError("%r and %r are not adjacent" % (source, target))
    q, direction = _BY_STEP[step]
    src, tgt = ambient(curve, source), ambient(curve, target)
    f = curve.field
    cols = []
    for k in range(src.dim):
        e = [f.zero] * src.dim
        e[k] = f.one
        parts = src.parts(e)
        cols.append(tgt.from_parts(*_raw_step(q, direction, parts, tgt.sizes, f)))
    return TransferMap(source, target, q, direction, Matrix.from_columns(cols, tgt.dim, f))


def phi(curve: ChainCurve, md: Multidegree, q: int, direction: str) -> TransferMap:
    """phi_{d,d~} (``down``) or phi_{d~,d} (``up``) for d = md and d~ = md.tilde(q)."""
    if q not in COMPONENTS:
        raise CurveError("component must be 1, 2 or 3, got %r" % (q,))
    if direction not in (DOWN, UP):
        raise CurveError("direction must be 'down' or 'up', got %r" % (direction,))
    other = md.tilde(q)
    if other is None:
        raise CurveError("%r has no neighbour across X%d" % (md, q))
    if direction == DOWN:
        return transfer(curve, md, other)
    return transfer(curve, other, md)


def neighbours(md: Multidegree) -> list[tuple[int, Multidegree]]:
    """(q, md.tilde(q)) for every q whose neighbour lies in the grid."""
    return [(q, md.tilde(q)) for q in COMPONENTS if md.tilde(q) is not None]


def edges(curve: ChainCurve) -> list[tuple[Multidegree, int, Multidegree]]:
    """Every (d, q, d~) with d~ = d.tilde(q) valid, in grid order."""
    return [(md, q, other) for md in curve.grid() for q, other in neighbours(md)]


def composite(maps: Sequence[TransferMap], dim: int | None = None, field=None) -> Matrix:
    """Matrix of maps[-1] o ... o maps[0]; the empty path needs ``dim``."""
    if not maps:
        if dim is None:
            raise ShapeError("the empty composite needs an explicit dimension")
        return Matrix.identity(dim, field or QQ)
    out = maps[0].matrix
    for prev, nxt in zip(maps, maps[1:]):
        if prev.target != nxt.source:
            raise ShapeError("path breaks between %r and %r" % (prev.target, nxt.source))
        out = nxt.matrix @ out
    return out


def path_maps(curve: ChainCurve, points: Sequence[tuple[int, int]]) -> list[TransferMap]:
    """Transfer maps along a walk through adjacent grid points given as (i, l)."""
    mds = [curve.md(i, l) for i, l in points]
    return [transfer(curve, a, b) for a, b in zip(mds, mds[1:])]
