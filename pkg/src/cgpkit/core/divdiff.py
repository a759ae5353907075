"""Divided differences with repeated nodes.

``f[x_1, ..., x_n]`` for distinct nodes is the classical quotient sum
``sum_j f(x_j) / prod_{i != j} (x_j - x_i)``. When nodes coincide the sum
has removable 0/0 terms; the confluent (Hermite) table replaces them with
``f^(k)(x) / k!``. Nodes closer than ``CLUSTER_TOL`` are merged first.
"""
from dataclasses import dataclass
from math import factorial, log
from typing import Callable, Protocol, Sequence

import numpy as np

from ..exceptions import DerivativeUnavailable

CLUSTER_TOL = 1e-9


class SmoothFunction(Protocol):
    """A function that can report its k-th derivative at a point.

    ``max_order`` is the highest derivative available, or None for no limit.
    """

    max_order: int | None

    def __call__(self, x: float, order: int = 0) -> float: ...


def _falling(a: float, k: int) -> tuple[float, float]:
    """Falling factorial a(a-1)...(a-k+1) and its derivative with respect to a."""
    val, der = 1.0, 0.0
    for m in range(k):
        der = der * (a - m) + val
        val = val * (a - m)
    return val, der


class Power:
    """``x**a`` for real ``a`` on ``x >= 0``."""

    max_order = None

    def __init__(self, a: float):
        self.a = float(a)

    def __call__(self, x: float, order: int = 0) -> float:
        val, _ = _falling(self.a, order)
        if x == 0.0:
            e = self.a - order
            if e > 0 or val == 0.0:
                return 0.0
            if e == 0:
                return val
            raise DerivativeUnavailable(f"d^{order}/dx^{order} x^{self.a} is singular at 0")
        return val * x ** (self.a - order)

    def __repr__(self):
        return f"Power({self.a!r})"


class PowerLog:
    """``x**a * ln(x)``; derivatives below order ``a`` take their limit 0 at ``x = 0``."""

    max_order = None

    def __init__(self, a: float):
        self.a = float(a)

    def __call__(self, x: float, order: int = 0) -> float:
        if x == 0.0:
            if order < self.a:
                return 0.0
            raise DerivativeUnavailable(
                f"d^{order}/dx^{order} x^{self.a} ln x has no finite limit at 0"
            )
        val, der = _falling(self.a, order)
        return x ** (self.a - order) * (val * log(x) + der)

    def __repr__(self):
        return f"PowerLog({self.a!r})"


class TabulatedFunction:
    """Wrap explicit callables ``[f, f', f'', ...]`` as a SmoothFunction."""

    def __init__(self, derivatives: Sequence[Callable[[float], float]]):
        if not derivatives:
            raise ValueError("need at least the function itself")
        self._derivs = list(derivatives)
        self.max_order = len(self._derivs) - 1

    def __call__(self, x: float, order: int = 0) -> float:
        if order > self.max_order:
            raise DerivativeUnavailable(
                f"derivative of order {order} requested, only {self.max_order} supplied"
            )
        return float(self._derivs[order](x))


@dataclass(frozen=True)
class NodeSet:
    nodes: tuple[float, ...]
    multiplicities: tuple[int, ...]

    @property
    def size(self) -> int:
        return sum(self.multiplicities)

    def expanded(self) -> list[float]:
        return [x for x, m in zip(self.nodes, self.multiplicities) for _ in range(m)]


def cluster_nodes(nodes, tol: float = CLUSTER_TOL) -> NodeSet:
    """Sort ``nodes`` and merge runs whose consecutive gaps are ``<= tol``.

    Each cluster is represented by its mean.
    """
    xs = sorted(float(x) for x in nodes)
    if not xs:
        raise ValueError("empty node list")
    groups = [[xs[0]]]
    for x in xs[1:]:
        if x - groups[-1][-1] <= tol:
            groups[-1].append(x)
        else:
            groups.append([x])
    reps = []
    for g in groups:
        rep = sum(g) / len(g)
        # mean of values all equal to g[0] must be g[0] exactly
        reps.append(g[0] if g[0] == g[-1] else rep)
    return NodeSet(tuple(reps), tuple(len(g) for g in groups))


def confluent_divided_difference(f: SmoothFunction, nodes, tol: float = CLUSTER_TOL) -> float:
    """Divided difference ``f[x_1, ..., x_n]`` allowing repeated nodes.

    Nodes within ``tol`` of each other are clustered; the table then uses
    ``f^(k)(x) / k!`` wherever a span lies inside one cluster, and the usual
    Newton recursion elsewhere. Symmetric in the nodes because they are
    sorted before use.

    Raises
    ------
    DerivativeUnavailable
        If a cluster of multiplicity ``m`` needs a derivative of order
        ``m - 1`` beyond what ``f`` provides.
    """
    ns = cluster_nodes(nodes, tol)
    need = max(ns.multiplicities) - 1
    max_order = getattr(f, "max_order", None)
    if max_order is not None and need > max_order:
        raise DerivativeUnavailable(
            f"node multiplicity {need + 1} needs derivative order {need}, f supplies {max_order}"
        )
    z = ns.expanded()
    cid = [i for i, m in enumerate(ns.multiplicities) for _ in range(m)]
    n = len(z)
    cache: dict[tuple[int, int], float] = {}

    def deriv(c: int, k: int) -> float:
        key = (c, k)
        if key not in cache:
            cache[key] = f(ns.nodes[c], k) / factorial(k)
        return cache[key]

    col = [deriv(cid[i], 0) for i in range(n)]
    for level in range(1, n):
        nxt = []
        for i in range(n - level):
            j = i + level
            if cid[i] == cid[j]:
                nxt.append(deriv(cid[i], level))
            else:
                nxt.append((col[i + 1] - col[i]) / (z[j] - z[i]))
        col = nxt
    return float(col[0])


def quotient_divided_difference(f: Callable[[float], float], nodes) -> float:
    """Classical quotient sum for pairwise distinct nodes.

    No clustering: coincident nodes give a ZeroDivisionError. Used as the
    reference path against which the confluent table is checked.
    """
    xs = [float(x) for x in nodes]
    total = 0.0
    for j, xj in enumerate(xs):
        den = 1.0
        for i, xi in enumerate(xs):
            if i != j:
                den *= xj - xi
        total += f(xj) / den
    return total


def two_point_xsq_log(a: float, b: float) -> float:
    """``f[a, b]`` for ``f(x) = x^2 ln x``, stable as ``a -> b``.

    Uses ``(a + b) ln a + b * log1p(r) / r`` with ``r = (a - b) / b`` and
    ``a >= b`` after reordering, so no catastrophic cancellation occurs.
    """
    a, b = max(a, b), min(a, b)
    if a == 0.0:
        return 0.0
    if b == 0.0:
        return a * log(a)
    r = (a - b) / b
    ratio = 1.0 if r == 0.0 else float(np.log1p(r)) / r
    return (a + b) * log(a) + b * ratio
