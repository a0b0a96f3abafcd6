"""H(curl^2)-conforming modes on the reference square.

Every mode is a closed-form combination of three reference families built
from the generalized Jacobi polynomials K1 = K^{-1,-1} and K2 = K^{-2,-2}:

    p(m, n)  = (K1_m' K1_n, K1_m K1_n')     gradients, curl 0
    q(m, n)  = (K2_m' K2_n, 0)              curl -K2_m' K2_n'
    q*(m, n) = (0, K2_m K2_n')              curl  K2_m' K2_n'

Curl-edge modes multiply q or q* by the element's det J, vertex modes
combine q and q* with coefficients built from the corner cross products.
Evaluation returns the reference value, the reference curl and the
reference gradient of the curl.
"""

from typing import NamedTuple, Optional, Sequence

import numpy as np

from quadcurl.config import settings
from quadcurl.logger import get_logger
from quadcurl.schemas.basis import (
    EDGE_FAMILIES,
    Mode,
    ModeEval,
    ModeFamily,
    ScalarMode,
    SpectralOrder,
)
from quadcurl.schemas.geometry import Quadrilateral
from quadcurl.services.base import BasisError, GeometryError, ModeIndexError
from quadcurl.services.geometry import (
    BilinearMap,
    edge_endpoints,
    edge_reference_points,
    jacobian,
)
from quadcurl.services.orthopoly import MAX_INDEX, k11_table, k22_table

logger = get_logger("refbasis")

LOW_INDICES = {1: (0, 0), 2: (1, 0), 3: (1, 1), 4: (0, 1)}
VERTEX_INDICES = {1: (0, 0), 2: (0, 1), 3: (1, 1), 4: (1, 0)}
SCALAR_VERTEX_INDICES = {1: (0, 0), 2: (1, 0), 3: (1, 1), 4: (0, 1)}


def _curl_indices(nmax: int) -> list[int]:
    return [2] + list(range(4, nmax + 1))


def _function_edge_indices(edge: int, k: int) -> tuple[int, int]:
    return {1: (0, k), 2: (k, 0), 3: (1, k), 4: (k, 1)}[edge]


def _curl_edge_indices(edge: int, k: int) -> tuple[int, int]:
    return {1: (1, k), 2: (k, 1), 3: (3, k), 4: (k, 3)}[edge]


def _scalar_edge_indices(edge: int, k: int) -> tuple[int, int]:
    return _function_edge_indices(edge, k)


def enumerate_modes(
    order: SpectralOrder, low_modes: Optional[str] = None
) -> list[Mode]:
    """All local modes of V_{L,M,N}: interior, edges 1..4, vertices.

    `low_modes` picks the phi or tilde-phi low function-edge family and
    defaults to settings.basis.low_modes.
    """
    low_modes = low_modes or settings.basis.low_modes
    if low_modes not in ("phi", "tilde"):
        raise BasisError(f"unknown low-mode family '{low_modes}'")
    low_family = (
        ModeFamily.FUNCTION_EDGE_LOW
        if low_modes == "phi"
        else ModeFamily.TILDE_FUNCTION_EDGE_LOW
    )
    L, M, N = order.L, order.M, order.N
    modes: list[Mode] = []

    for m in range(2, L + 1):
        for n in range(2, L + 1):
            modes.append(Mode(family=ModeFamily.INTERIOR_PHI, m=m, n=n))
    if N >= 4:
        for m in _curl_indices(N):
            for n in range(4, N + 1):
                modes.append(Mode(family=ModeFamily.INTERIOR_PSI, m=m, n=n))
        for m in range(4, N + 1):
            modes.append(Mode(family=ModeFamily.INTERIOR_PSI, m=m, n=2))

    for edge in (1, 2, 3, 4):
        lm, ln = LOW_INDICES[edge]
        modes.append(Mode(family=low_family, m=lm, n=ln, edge=edge))
        for k in range(2, M + 1):
            m, n = _function_edge_indices(edge, k)
            modes.append(Mode(family=ModeFamily.FUNCTION_EDGE, m=m, n=n, edge=edge))
        if N >= 3:
            for k in _curl_indices(N):
                m, n = _curl_edge_indices(edge, k)
                modes.append(Mode(family=ModeFamily.CURL_EDGE, m=m, n=n, edge=edge))

    vertex_family = ModeFamily.TILDE_VERTEX if order.is_low else ModeFamily.VERTEX
    for corner in (1, 2, 3, 4):
        m, n = VERTEX_INDICES[corner]
        modes.append(Mode(family=vertex_family, m=m, n=n, corner=corner))
    return modes


def expected_mode_count(order: SpectralOrder) -> int:
    if order.is_low:
        return 8 if order.N == 1 else 13
    L, M, N = order.L, order.M, order.N
    return (L - 1) ** 2 + (N - 1) * (N - 3) + 4 * M + 4 * (N - 2) + 4


def scalar_modes(order: SpectralOrder) -> list[ScalarMode]:
    """Modes of R_{L,M}: interior, edges 1..4, vertices."""
    L, M = order.L, order.M
    modes: list[ScalarMode] = []
    for m in range(2, L + 1):
        for n in range(2, L + 1):
            modes.append(ScalarMode(m=m, n=n, entity="interior"))
    for edge in (1, 2, 3, 4):
        for k in range(2, M + 1):
            m, n = _scalar_edge_indices(edge, k)
            modes.append(ScalarMode(m=m, n=n, entity="edge", edge=edge))
    for corner in (1, 2, 3, 4):
        m, n = SCALAR_VERTEX_INDICES[corner]
        modes.append(ScalarMode(m=m, n=n, entity="vertex", corner=corner))
    return modes


def check_mode(mode: Mode, order: Optional[SpectralOrder] = None) -> None:
    """Reject indices outside the family's range (and the order, if given)."""
    m, n, f = mode.m, mode.n, mode.family
    if max(m, n) > MAX_INDEX:
        raise ModeIndexError(f"{mode.label()} exceeds index cap {MAX_INDEX}")
    curl_like = m == 2 or m >= 4
    if f == ModeFamily.INTERIOR_PHI:
        ok = m >= 2 and n >= 2
    elif f == ModeFamily.INTERIOR_PSI:
        ok = (curl_like and n >= 4) or (m >= 4 and n == 2)
    elif f == ModeFamily.FUNCTION_EDGE:
        k = mode.trace_index
        ok = k >= 2 and (m, n) == _function_edge_indices(mode.edge, k)
    elif f in (ModeFamily.FUNCTION_EDGE_LOW, ModeFamily.TILDE_FUNCTION_EDGE_LOW):
        ok = (m, n) == LOW_INDICES[mode.edge]
    elif f == ModeFamily.CURL_EDGE:
        k = mode.trace_index
        ok = (k == 2 or k >= 4) and (m, n) == _curl_edge_indices(mode.edge, k)
    else:
        ok = (m, n) == VERTEX_INDICES[mode.corner]
    if not ok:
        raise ModeIndexError(f"indices out of range for {mode.label()}")
    if order is not None and mode not in enumerate_modes(order):
        raise ModeIndexError(f"{mode.label()} is not a mode of order {order}")


class _Jet(NamedTuple):
    v1: np.ndarray
    v2: np.ndarray
    c: np.ndarray
    cx: np.ndarray
    cy: np.ndarray


class _QJet(NamedTuple):
    v1: np.ndarray
    v2: np.ndarray
    v1x: np.ndarray
    v1y: np.ndarray
    v2x: np.ndarray
    v2y: np.ndarray
    c: np.ndarray
    cx: np.ndarray
    cy: np.ndarray

    @property
    def jet(self) -> _Jet:
        return _Jet(self.v1, self.v2, self.c, self.cx, self.cy)


def _combine(terms: Sequence[tuple[float, tuple]]) -> tuple:
    kind = type(terms[0][1])
    fields = [sum(coef * part[i] for coef, part in terms) for i in range(len(terms[0][1]))]
    return kind(*fields)


class _Tables:
    """K1 and K2 jets in x and y at a fixed point set."""

    def __init__(self, x: np.ndarray, y: np.ndarray, kmax1: int, kmax2: int):
        self.x = x
        self.y = y
        self.zero = np.zeros_like(x)
        self.k1x, self.d1x = k11_table(kmax1, x)
        self.k1y, self.d1y = k11_table(kmax1, y)
        self.k2x, self.e1x, self.e2x = k22_table(kmax2, x)
        self.k2y, self.e1y, self.e2y = k22_table(kmax2, y)

    def p(self, m: int, n: int) -> _Jet:
        z = self.zero
        return _Jet(self.d1x[m] * self.k1y[n], self.k1x[m] * self.d1y[n], z, z, z)

    def q(self, m: int, n: int) -> _QJet:
        z = self.zero
        mixed = self.e1x[m] * self.e1y[n]
        return _QJet(
            v1=self.e1x[m] * self.k2y[n],
            v2=z,
            v1x=self.e2x[m] * self.k2y[n],
            v1y=mixed,
            v2x=z,
            v2y=z,
            c=-mixed,
            cx=-self.e2x[m] * self.e1y[n],
            cy=-self.e1x[m] * self.e2y[n],
        )

    def q_star(self, m: int, n: int) -> _QJet:
        z = self.zero
        mixed = self.e1x[m] * self.e1y[n]
        return _QJet(
            v1=z,
            v2=self.k2x[m] * self.e1y[n],
            v1x=z,
            v1y=z,
            v2x=mixed,
            v2y=self.k2x[m] * self.e2y[n],
            c=mixed,
            cx=self.e2x[m] * self.e1y[n],
            cy=self.e1x[m] * self.e2y[n],
        )

    def low(self, edge: int) -> _Jet:
        x, y = self.x, self.y
        q1 = y * (y * y - 1.0) * (3.0 * x * x - 5.0) / 32.0
        q2 = x * (x * x - 1.0) * (3.0 * y * y - 5.0) / 32.0
        beta = 9.0 / 16.0 * (x * x - 1.0) * (y * y - 1.0)
        bx = 9.0 / 8.0 * x * (y * y - 1.0)
        by = 9.0 / 8.0 * y * (x * x - 1.0)
        if edge == 1:
            v1, v2, sign = q1, -q2 - (x - 1.0) / 4.0, -1.0
        elif edge == 2:
            v1, v2, sign = -q1 - (y - 1.0) / 4.0, q2, 1.0
        elif edge == 3:
            v1, v2, sign = -q1, q2 + (1.0 + x) / 4.0, 1.0
        else:
            v1, v2, sign = q1 + (1.0 + y) / 4.0, -q2, -1.0
        return _Jet(v1, v2, sign * beta, sign * bx, sign * by)


def _times_det(qj: _QJet, coeffs: tuple[float, float, float, float], t: _Tables) -> _Jet:
    """Reference jet of J(x, y) * q for the bilinear det J."""
    j0, jx, jy, jxy = coeffs
    x, y = t.x, t.y
    J = j0 + jx * x + jy * y + jxy * x * y
    Jx = jx + jxy * y
    Jy = jy + jxy * x
    return _Jet(
        v1=J * qj.v1,
        v2=J * qj.v2,
        c=J * qj.c + Jx * qj.v2 - Jy * qj.v1,
        cx=Jx * qj.c + J * qj.cx + Jx * qj.v2x - jxy * qj.v1 - Jy * qj.v1x,
        cy=Jy * qj.c + J * qj.cy + jxy * qj.v2 + Jx * qj.v2y - Jy * qj.v1y,
    )


def vertex_coefficients(corner: int, cross: np.ndarray) -> list[tuple[float, str, int, int]]:
    """(coefficient, 'q' | 'q*', m, n) terms of the vertex mode at a corner."""
    c1, c2, c3, c4 = (float(c) for c in cross)
    table = {
        1: [
            (-c1 / 8.0, "q", 1, 1),
            (-(c1 / 6.0 + c2 / 12.0), "q", 2, 1),
            (c1 / 8.0, "q*", 1, 1),
            (c1 / 6.0 + c4 / 12.0, "q*", 1, 2),
        ],
        2: [
            (-c2 / 8.0, "q", 3, 1),
            (-(c1 / 12.0 + c2 / 6.0), "q", 2, 1),
            (c2 / 8.0, "q*", 3, 1),
            (c2 / 6.0 + c3 / 12.0, "q*", 3, 2),
        ],
        3: [
            (-c3 / 8.0, "q", 3, 3),
            (-(c4 / 12.0 + c3 / 6.0), "q", 2, 3),
            (c3 / 8.0, "q*", 3, 3),
            (c2 / 12.0 + c3 / 6.0, "q*", 3, 2),
        ],
        4: [
            (-c4 / 8.0, "q", 1, 3),
            (-(c4 / 6.0 + c3 / 12.0), "q", 2, 3),
            (c4 / 8.0, "q*", 1, 3),
            (c1 / 12.0 + c4 / 6.0, "q*", 1, 2),
        ],
    }
    return table[corner]


def tilde_vertex_corrections(corner: int, cross: np.ndarray) -> list[tuple[float, int, int]]:
    """(coefficient, m, n) of the p(2,3), p(3,2) gradients added to a vertex mode."""
    c1, c2, c3, c4 = (float(c) for c in cross)
    table = {
        1: [(-(2 * c1 + c4) / 48.0, 2, 3), ((2 * c1 + c2) / 48.0, 3, 2)],
        2: [((2 * c2 + c1) / 48.0, 3, 2), ((2 * c2 + c3) / 48.0, 2, 3)],
        3: [((2 * c3 + c2) / 48.0, 2, 3), (-(2 * c3 + c4) / 48.0, 3, 2)],
        4: [(-(2 * c4 + c3) / 48.0, 3, 2), (-(2 * c4 + c1) / 48.0, 2, 3)],
    }
    return table[corner]


class _ElementContext(NamedTuple):
    cross: np.ndarray
    det: tuple[float, float, float, float]


def _context(quad: Optional[Quadrilateral]) -> Optional[_ElementContext]:
    if quad is None:
        return None
    return _ElementContext(quad.corner_cross, BilinearMap(quad).det_coefficients())


def _is_geometric(mode: Mode) -> bool:
    return mode.family in (
        ModeFamily.CURL_EDGE,
        ModeFamily.VERTEX,
        ModeFamily.TILDE_VERTEX,
    )


def _mode_jet(mode: Mode, t: _Tables, ctx: Optional[_ElementContext]) -> _Jet:
    f, m, n = mode.family, mode.m, mode.n
    if f in (ModeFamily.INTERIOR_PHI, ModeFamily.FUNCTION_EDGE):
        return t.p(m, n)
    if f == ModeFamily.INTERIOR_PSI:
        return (t.q_star(m, n) if n == 2 else t.q(m, n)).jet
    if f == ModeFamily.FUNCTION_EDGE_LOW:
        return t.low(mode.edge)
    if f == ModeFamily.TILDE_FUNCTION_EDGE_LOW:
        sign = 1.0 if mode.edge in (1, 2) else -1.0
        return _combine([(1.0, t.low(mode.edge)), (sign / 8.0, t.p(3, 3))])

    if ctx is None:
        raise GeometryError(f"{mode.label()} needs the element geometry")
    if f == ModeFamily.CURL_EDGE:
        qj = t.q_star(m, n) if mode.edge in (1, 3) else t.q(m, n)
        return _times_det(qj, ctx.det, t)

    terms = [
        (coef, (t.q(a, b) if kind == "q" else t.q_star(a, b)).jet)
        for coef, kind, a, b in vertex_coefficients(mode.corner, ctx.cross)
    ]
    if f == ModeFamily.TILDE_VERTEX:
        terms += [
            (coef, t.p(a, b))
            for coef, a, b in tilde_vertex_corrections(mode.corner, ctx.cross)
        ]
    return _combine(terms)


def _to_eval(jet: _Jet) -> ModeEval:
    return ModeEval(
        value=np.stack([jet.v1, jet.v2], axis=-1),
        curl=jet.c,
        curl_grad=np.stack([jet.cx, jet.cy], axis=-1),
    )


def _split_points(refpt) -> tuple[np.ndarray, np.ndarray]:
    pts = np.asarray(refpt, dtype=float)
    if pts.shape[-1] != 2:
        raise GeometryError(f"reference points need a trailing axis of 2, got {pts.shape}")
    return pts[..., 0], pts[..., 1]


def eval_mode(mode: Mode, quad: Optional[Quadrilateral], refpt) -> ModeEval:
    check_mode(mode)
    x, y = _split_points(refpt)
    kmax = max(mode.m, mode.n, 3)
    t = _Tables(x, y, kmax, kmax)
    return _to_eval(_mode_jet(mode, t, _context(quad) if _is_geometric(mode) else None))


def tilde_vertex_mode(corner: int, quad: Quadrilateral, refpt) -> ModeEval:
    if corner not in VERTEX_INDICES:
        raise ModeIndexError(f"corner must be 1..4, got {corner}")
    m, n = VERTEX_INDICES[corner]
    return eval_mode(
        Mode(family=ModeFamily.TILDE_VERTEX, m=m, n=n, corner=corner), quad, refpt
    )


def eval_scalar_mode(m: int, n: int, refpt) -> tuple[np.ndarray, np.ndarray]:
    """Value and reference gradient of K1_m(x) K1_n(y)."""
    x, y = _split_points(refpt)
    kmax = max(m, n, 1)
    kx, dx = k11_table(kmax, x)
    ky, dy = k11_table(kmax, y)
    value = kx[m] * ky[n]
    return value, np.stack([dx[m] * ky[n], kx[m] * dy[n]], axis=-1)


def edge_trace(mode: Mode, quad: Quadrilateral, edge: int, s) -> tuple[np.ndarray, np.ndarray]:
    """Physical tangential component and curl along an edge.

    The tangent is the unit vector of the counterclockwise edge direction.
    """
    points = edge_reference_points(edge, s)
    ev = eval_mode(mode, quad, points)
    data = jacobian(quad, points)
    v = np.einsum("...ij,...j->...i", data.B_inv_T, ev.value)
    start, end = edge_endpoints(edge)
    tangent = quad.vertices[end] - quad.vertices[start]
    tangent = tangent / np.linalg.norm(tangent)
    return v @ tangent, ev.curl / data.detJ


class ReferenceTabulation:
    """All modes of an order at a fixed reference point set.

    Geometry-free modes are evaluated once; curl-edge and vertex modes are
    refilled per element by `evaluate`.
    """

    def __init__(
        self,
        order: SpectralOrder,
        x: np.ndarray,
        y: np.ndarray,
        low_modes: Optional[str] = None,
    ):
        self.order = order
        self.modes = enumerate_modes(order, low_modes)
        self.x = np.asarray(x, dtype=float)
        self.y = np.asarray(y, dtype=float)
        self._tables = _Tables(
            self.x, self.y, max(order.L, order.M, 3), max(order.N, 3)
        )
        shape = (len(self.modes),) + self.x.shape
        self._value = np.zeros(shape + (2,))
        self._curl = np.zeros(shape)
        self._curl_grad = np.zeros(shape + (2,))
        self._geometric = []
        for i, mode in enumerate(self.modes):
            if _is_geometric(mode):
                self._geometric.append(i)
            else:
                self._store(i, _mode_jet(mode, self._tables, None))
        self._scalar = scalar_modes(order)

    def _store(self, i: int, jet: _Jet, value=None, curl=None, grad=None) -> None:
        value = self._value if value is None else value
        curl = self._curl if curl is None else curl
        grad = self._curl_grad if grad is None else grad
        value[i, ..., 0] = jet.v1
        value[i, ..., 1] = jet.v2
        curl[i] = jet.c
        grad[i, ..., 0] = jet.cx
        grad[i, ..., 1] = jet.cy

    def __len__(self) -> int:
        return len(self.modes)

    def evaluate(self, quad: Quadrilateral) -> ModeEval:
        """Reference jets of every mode, mode axis first."""
        value = self._value.copy()
        curl = self._curl.copy()
        grad = self._curl_grad.copy()
        ctx = _context(quad)
        for i in self._geometric:
            self._store(i, _mode_jet(self.modes[i], self._tables, ctx), value, curl, grad)
        return ModeEval(value=value, curl=curl, curl_grad=grad)

    @property
    def scalar_modes(self) -> list[ScalarMode]:
        return self._scalar

    def scalar(self) -> tuple[np.ndarray, np.ndarray]:
        return tabulate_scalar(self.order, np.stack([self.x, self.y], axis=-1))


def tabulate(
    order: SpectralOrder,
    quad: Quadrilateral,
    points,
    low_modes: Optional[str] = None,
) -> ModeEval:
    x, y = _split_points(points)
    return ReferenceTabulation(order, x, y, low_modes).evaluate(quad)


def tabulate_scalar(order: SpectralOrder, points) -> tuple[np.ndarray, np.ndarray]:
    """Values (modes, ...) and reference gradients (modes, ..., 2) of R_{L,M}."""
    x, y = _split_points(points)
    kmax = max(order.L, order.M, 1)
    kx, dx = k11_table(kmax, x)
    ky, dy = k11_table(kmax, y)
    modes = scalar_modes(order)
    values = np.stack([kx[s.m] * ky[s.n] for s in modes])
    grads = np.stack(
        [np.stack([dx[s.m] * ky[s.n], kx[s.m] * dy[s.n]], axis=-1) for s in modes]
    )
    return values, grads


IDENTITY_FIELDS = ("1,0", "0,1", "x,0", "0,x", "y,0", "0,y")

# edge i runs from vertex _FROM[i] to vertex _TO[i] (0-based)
_FROM = (3, 0, 1, 2)
_TO = (0, 1, 2, 3)
_LOW_SIGNS = (-1.0, 1.0, 1.0, -1.0)


def low_order_identity(field: str, quad: Quadrilateral) -> list[tuple[Mode, float]]:
    """Combination of modes whose push-forward equals a low-order field.

    Fields are the constants (1,0), (0,1) and the linear fields (x,0), (0,x),
    (y,0), (0,y). The linear ones use the k=2 function-edge modes, the
    interior p(2,2) and the tilde vertex modes.
    """
    if field not in IDENTITY_FIELDS:
        raise BasisError(f"unknown identity field '{field}', expected one of {IDENTITY_FIELDS}")
    first, second = field.split(",")
    coords = {"x": quad.x, "y": quad.y}
    terms: list[tuple[Mode, float]] = []
    lows = [
        Mode(family=ModeFamily.FUNCTION_EDGE_LOW, m=LOW_INDICES[e][0], n=LOW_INDICES[e][1], edge=e)
        for e in (1, 2, 3, 4)
    ]

    if "1" in (first, second):
        b = coords["x"] if first == "1" else coords["y"]
        for e, mode in enumerate(lows):
            terms.append((mode, _LOW_SIGNS[e] * float(b[_TO[e]] - b[_FROM[e]])))
        return terms

    # the active component carries coordinate a and integrates against d(b)
    a = coords[first] if first != "0" else coords[second]
    b = coords["x"] if first != "0" else coords["y"]
    for e, mode in enumerate(lows):
        i, j = _FROM[e], _TO[e]
        line = 0.5 * float(a[i] + a[j]) * float(b[j] - b[i])
        terms.append((mode, _LOW_SIGNS[e] * line))
    for e in (1, 2, 3, 4):
        i, j = _FROM[e - 1], _TO[e - 1]
        m, n = _function_edge_indices(e, 2)
        coef = 0.5 * float(a[j] - a[i]) * float(b[j] - b[i])
        terms.append((Mode(family=ModeFamily.FUNCTION_EDGE, m=m, n=n, edge=e), coef))
    da = float(a[2] - a[1] + a[0] - a[3])
    db = float(b[2] - b[1] + b[0] - b[3])
    terms.append((Mode(family=ModeFamily.INTERIOR_PHI, m=2, n=2), 0.5 * da * db))

    curl = {"0,x": 1.0, "y,0": -1.0}.get(field, 0.0)
    if curl:
        for corner in (1, 2, 3, 4):
            m, n = VERTEX_INDICES[corner]
            terms.append(
                (Mode(family=ModeFamily.TILDE_VERTEX, m=m, n=n, corner=corner), curl)
            )
    return terms


def evaluate_combination(
    terms: Sequence[tuple[Mode, float]], quad: Quadrilateral, refpt
) -> tuple[np.ndarray, np.ndarray]:
    """Physical value and curl of a linear combination of modes."""
    value = 0.0
    curl = 0.0
    for mode, coef in terms:
        ev = eval_mode(mode, quad, refpt)
        value = value + coef * ev.value
        curl = curl + coef * ev.curl
    data = jacobian(quad, refpt)
    v = np.einsum("...ij,...j->...i", data.B_inv_T, np.asarray(value, dtype=float))
    return v, np.asarray(curl, dtype=float) / data.detJ


__all__ = [
    "EDGE_FAMILIES",
    "IDENTITY_FIELDS",
    "ReferenceTabulation",
    "check_mode",
    "edge_trace",
    "enumerate_modes",
    "eval_mode",
    "eval_scalar_mode",
    "evaluate_combination",
    "expected_mode_count",
    "low_order_identity",
    "scalar_modes",
    "tabulate",
    "tabulate_scalar",
    "tilde_vertex_mode",
    "vertex_coefficients",
]
