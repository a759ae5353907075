"""Quantum channels in Kraus form, their Kraus matrices, and a small gate library.

A channel ``Phi(rho) = sum_mu M_mu rho M_mu^dagger`` is stored as the tuple
of its Kraus operators. Its Kraus matrix ``B(Phi) = sum_mu |M_mu|^2``
(entrywise) is column-stochastic, bi-stochastic for unital channels, and
sends the diagonal of an incoherent input to the diagonal of the output.
"""
import json
from dataclasses import dataclass, field
from math import cos, pi, sin, sqrt
from pathlib import Path

import numpy as np

from .core.arrays import as_square, check_unitary
from .exceptions import (
    BadParameter,
    DimensionMismatch,
    NotTracePreserving,
    ParseError,
    ValidationError,
)

TP_TOL = 1e-10
GATE_UNITARY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """Completely positive map given by Kraus operators.

    Construction checks trace preservation unless ``require_tp=False``,
    which is only meant for adjoints of non-unital channels (those are
    unital but not trace preserving). Unitality is detected, never declared.
    """

    kraus_ops: tuple
    require_tp: bool = True
    dim: int = field(init=False)
    trace_preserving: bool = field(init=False)
    unital: bool = field(init=False)

    def __post_init__(self):
        ops = tuple(as_square(m, "Kraus operator") for m in self.kraus_ops)
        if not ops:
            raise ValidationError("a channel needs at least one Kraus operator")
        n = ops[0].shape[0]
        for k, m in enumerate(ops):
            if m.shape != (n, n):
                raise DimensionMismatch(f"Kraus operator {k} has shape {m.shape}, expected {(n, n)}")
        eye = np.eye(n)
        tp_err = np.abs(sum(m.conj().T @ m for m in ops) - eye).max()
        un_err = np.abs(sum(m @ m.conj().T for m in ops) - eye).max()
        if self.require_tp and tp_err > TP_TOL:
            raise NotTracePreserving(
                f"trace preservation failed: max|sum M^dagger M - I| = {tp_err:.3e} > {TP_TOL:.0e}"
            )
        object.__setattr__(self, "kraus_ops", ops)
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "trace_preserving", bool(tp_err <= TP_TOL))
        object.__setattr__(self, "unital", bool(un_err <= TP_TOL))

    @classmethod
    def from_unitary(cls, u) -> "KrausChannel":
        return cls((check_unitary(u),))

    @property
    def is_unitary(self) -> bool:
        """True for a single Kraus operator that is unitary."""
        return len(self.kraus_ops) == 1 and self.trace_preserving and self.unital

    def __len__(self):
        return len(self.kraus_ops)

    def __call__(self, rho):
        return apply(self, rho)


@dataclass(frozen=True, eq=False)
class StochasticMatrix:
    """Entrywise nonnegative matrix whose columns sum to one."""

    entries: np.ndarray
    bi_stochastic: bool = field(init=False)

    def __post_init__(self):
        b = np.array(self.entries, dtype=np.float64)
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise DimensionMismatch(f"stochastic matrix must be square, got shape {b.shape}")
        if b.min() < -1e-12:
            raise ValidationError(f"stochastic matrix has negative entry {b.min():.3e}")
        b[b < 0] = 0.0
        cols = np.abs(b.sum(axis=0) - 1.0)
        if cols.max() > 1e-10:
            j = int(np.argmax(cols))
            raise ValidationError(f"column {j} sums to {b[:, j].sum()!r}, not 1")
        b.setflags(write=False)
        object.__setattr__(self, "entries", b)
        object.__setattr__(self, "bi_stochastic", bool(np.abs(b.sum(axis=1) - 1.0).max() <= 1e-10))

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    @property
    def T(self) -> np.ndarray:
        return self.entries.T

    @property
    def shape(self):
        return self.entries.shape


def apply(channel: KrausChannel, rho) -> np.ndarray:
    """``sum_mu M_mu rho M_mu^dagger`` for any square ``rho`` of matching size."""
    x = as_square(rho, "input")
    if x.shape[0] != channel.dim:
        raise DimensionMismatch(f"input has dimension {x.shape[0]}, channel acts on {channel.dim}")
    return sum(m @ x @ m.conj().T for m in channel.kraus_ops)


def dual(channel: KrausChannel) -> KrausChannel:
    """Adjoint map ``Y -> sum_mu M_mu^dagger Y M_mu``.

    Satisfies ``Tr[X dual(Phi)(Y)] = Tr[Phi(X) Y]``. The dual of a
    non-unital channel is not trace preserving and is returned with
    ``require_tp=False``.
    """
    ops = tuple(m.conj().T for m in channel.kraus_ops)
    return KrausChannel(ops, require_tp=channel.unital)


def schur_square_sum(ops) -> np.ndarray:
    """``sum_mu M_mu * conj(M_mu)`` entrywise, with no stochasticity check."""
    return sum(np.abs(np.asarray(m)) ** 2 for m in ops)


def kraus_matrix(channel: KrausChannel) -> StochasticMatrix:
    """Kraus matrix ``B(Phi)``; ``bi_stochastic`` is set iff the channel is unital."""
    if not channel.trace_preserving:
        raise NotTracePreserving("Kraus matrix of a non-trace-preserving map is not stochastic")
    return StochasticMatrix(schur_square_sum(channel.kraus_ops))


def diagonal_images(channel: KrausChannel) -> np.ndarray:
    """Stack of ``Phi(|j><j|)`` for ``j = 0..N-1``, shape ``(N, N, N)``."""
    n = channel.dim
    out = np.zeros((n, n, n), dtype=np.complex128)
    for m in channel.kraus_ops:
        # Phi(|j><j|) = sum_mu M[:, j] M[:, j]^dagger
        out += np.einsum("ij,kj->jik", m, m.conj())
    return out


# -- gates -----------------------------------------------------------------

GATE_NAMES = (
    "identity",
    "hadamard",
    "rotation",
    "sqrt-swap",
    "partial-swap",
    "swap",
    "fourier",
    "custom",
)


@dataclass(frozen=True)
class GateSpec:
    """Named gate with parameters.

    ``rotation`` takes an angle in radians, ``partial-swap`` takes
    ``t`` in [0, 1] and a local dimension ``d``, ``swap`` takes ``d``,
    ``fourier`` and ``identity`` take the dimension, ``custom`` takes a path.
    """

    name: str
    params: tuple = ()

    def __post_init__(self):
        name = self.name.replace("_", "-").lower()
        if name not in GATE_NAMES:
            raise BadParameter(f"unknown gate {self.name!r}; known: {', '.join(GATE_NAMES)}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "params", tuple(self.params))

    @classmethod
    def parse(cls, text: str) -> "GateSpec":
        """Parse ``"name[:p1[:p2]]"``, e.g. ``"rotation:0.7853"``, ``"partial-swap:0.5:2"``."""
        head, *rest = text.strip().split(":")
        spec = cls(head)
        if spec.name == "custom":
            if len(rest) < 1:
                raise BadParameter("custom gate needs a file path: custom:<path>")
            return cls("custom", (":".join(rest),))
        try:
            if spec.name in ("rotation",):
                params = tuple(float(x) for x in rest)
            elif spec.name == "partial-swap":
                params = tuple(float(x) if i == 0 else int(x) for i, x in enumerate(rest))
            else:
                params = tuple(int(x) for x in rest)
        except ValueError as exc:
            raise BadParameter(f"bad parameter in gate {text!r}: {exc}") from None
        return cls(spec.name, params)

    def __str__(self):
        return ":".join([self.name, *map(str, self.params)])


def hadamard() -> np.ndarray:
    return np.array([[1, 1], [1, -1]], dtype=np.complex128) / sqrt(2.0)


def rotation(theta: float) -> np.ndarray:
    c, s = cos(theta), sin(theta)
    return np.array([[c, s], [-s, c]], dtype=np.complex128)


def sqrt_swap() -> np.ndarray:
    a, b = 0.5 + 0.5j, 0.5 - 0.5j
    return np.array(
        [[1, 0, 0, 0], [0, a, b, 0], [0, b, a, 0], [0, 0, 0, 1]], dtype=np.complex128
    )


def swap(d: int = 2) -> np.ndarray:
    """``S = sum_{ij} |ij><ji|`` on ``C^d (x) C^d``."""
    if d < 1:
        raise BadParameter(f"local dimension must be positive, got {d}")
    s = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            s[i * d + j, j * d + i] = 1.0
    return s


def partial_swap(t: float, d: int = 2) -> np.ndarray:
    """``sqrt(t) I + i sqrt(1 - t) S`` on ``C^d (x) C^d``."""
    if not 0.0 <= t <= 1.0:
        raise BadParameter(f"partial swap needs t in [0, 1], got {t}")
    return sqrt(t) * np.eye(d * d, dtype=np.complex128) + 1j * sqrt(1.0 - t) * swap(d)


def fourier(n: int) -> np.ndarray:
    if n < 1:
        raise BadParameter(f"Fourier dimension must be positive, got {n}")
    jk = np.outer(np.arange(n), np.arange(n)) % n
    return np.exp(2j * pi * jk / n) / sqrt(n)


def max_cgp_qubit(phi: float, theta: float, gamma: float) -> np.ndarray:
    """Qubit unitary with all entries of modulus ``1/sqrt(2)``."""
    z = np.array(
        [[np.exp(1j * theta), -np.exp(-1j * gamma)], [np.exp(1j * gamma), np.exp(-1j * theta)]]
    )
    return np.exp(1j * phi) * z / sqrt(2.0)


def make_gate(spec: GateSpec | str) -> np.ndarray:
    """Build the unitary described by ``spec`` and check it to 1e-12."""
    if isinstance(spec, str):
        spec = GateSpec.parse(spec)
    name, p = spec.name, spec.params

    def arg(i, default=None):
        if len(p) > i:
            return p[i]
        if default is None:
            raise BadParameter(f"gate {name!r} needs parameter #{i + 1}")
        return default

    if name == "identity":
        u = np.eye(int(arg(0, 2)), dtype=np.complex128)
    elif name == "hadamard":
        u = hadamard()
    elif name == "rotation":
        u = rotation(float(arg(0)))
    elif name == "sqrt-swap":
        u = sqrt_swap()
    elif name == "partial-swap":
        u = partial_swap(float(arg(0)), int(arg(1, 2)))
    elif name == "swap":
        u = swap(int(arg(0, 2)))
    elif name == "fourier":
        u = fourier(int(arg(0)))
    else:  # custom
        u = load_unitary(arg(0))
    return check_unitary(u, GATE_UNITARY_TOL)


def random_unitary(dim: int, seed=None) -> np.ndarray:
    """Haar-random unitary from the QR factorization of a complex Ginibre matrix.

    Columns are rescaled so that the triangular factor has a positive real
    diagonal, which makes the distribution exactly Haar. ``seed`` may be an
    int or a ``numpy.random.Generator``.
    """
    if dim < 1:
        raise BadParameter(f"dimension must be positive, got {dim}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_unital_channel(dim: int, num_unitaries: int, seed=None) -> KrausChannel:
    """Random mixture ``sum_j w_j Ad_{U_j}`` with simplex-uniform weights."""
    if num_unitaries < 1:
        raise BadParameter("need at least one unitary")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    us = [random_unitary(dim, rng) for _ in range(num_unitaries)]
    w = rng.dirichlet(np.ones(num_unitaries)) if num_unitaries > 1 else np.ones(1)
    return KrausChannel(tuple(np.sqrt(wj) * u for wj, u in zip(w, us)))


def mixture(weights, unitaries) -> KrausChannel:
    w = np.asarray(weights, dtype=np.float64)
    return KrausChannel(tuple(np.sqrt(wj) * np.asarray(u) for wj, u in zip(w, unitaries)))


def dephasing(dim: int) -> KrausChannel:
    ops = []
    for i in range(dim):
        m = np.zeros((dim, dim), dtype=np.complex128)
        m[i, i] = 1.0
        ops.append(m)
    return KrausChannel(tuple(ops))


def amplitude_damping(gamma: float) -> KrausChannel:
    if not 0.0 <= gamma <= 1.0:
        raise BadParameter(f"damping rate must be in [0, 1], got {gamma}")
    k0 = np.array([[1, 0], [0, sqrt(1 - gamma)]], dtype=np.complex128)
    k1 = np.array([[0, sqrt(gamma)], [0, 0]], dtype=np.complex128)
    return KrausChannel((k0, k1))


# -- file format -----------------------------------------------------------
#
# {"dim": N, "unitary": [[[re, im], ...], ...]}   or
# {"dim": N, "kraus": [<matrix>, <matrix>, ...]}


def encode_matrix(m) -> list:
    m = np.asarray(m, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def decode_matrix(rows, dim: int, where: str = "matrix") -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != dim:
        got = len(rows) if isinstance(rows, list) else type(rows).__name__
        raise ParseError(f"{where}: expected {dim} rows, got {got}")
    out = np.empty((dim, dim), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise ParseError(f"{where}: row {i} must have {dim} entries")
        for j, z in enumerate(row):
            if (
                not isinstance(z, list)
                or len(z) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in z)
            ):
                raise ParseError(f"{where}: entry at row {i}, column {j} must be [re, im]")
            if not all(np.isfinite(z)):
                raise ParseError(f"{where}: entry at row {i}, column {j} is not finite")
            out[i, j] = complex(z[0], z[1])
    return out


def unitary_document(u) -> dict:
    u = np.asarray(u)
    return {"dim": int(u.shape[0]), "unitary": encode_matrix(u)}


def channel_document(channel: KrausChannel) -> dict:
    return {"dim": channel.dim, "kraus": [encode_matrix(m) for m in channel.kraus_ops]}


def parse_document(doc) -> tuple[str, list]:
    """Decode a parsed JSON object into ``("unitary", [U])`` or ``("kraus", [M, ...])``.

    Structural problems raise ParseError; no unitarity or trace checks here.
    """
    if not isinstance(doc, dict):
        raise ParseError("top level must be a JSON object")
    dim = doc.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError(f'"dim" must be a positive integer, got {dim!r}')
    if ("unitary" in doc) == ("kraus" in doc):
        raise ParseError('exactly one of "unitary" or "kraus" is required')
    if "unitary" in doc:
        return "unitary", [decode_matrix(doc["unitary"], dim, "unitary")]
    ops = doc["kraus"]
    if not isinstance(ops, list) or not ops:
        raise ParseError('"kraus" must be a nonempty list of matrices')
    return "kraus", [decode_matrix(m, dim, f"kraus[{k}]") for k, m in enumerate(ops)]


def read_document(path) -> tuple[str, list]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"{path}: cannot read file: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from None
    try:
        return parse_document(doc)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def load_unitary(path) -> np.ndarray:
    """Read a gate file; a one-operator ``kraus`` file is accepted as a unitary."""
    kind, mats = read_document(path)
    if kind == "kraus" and len(mats) != 1:
        raise ParseError(f"{path}: expected a unitary, found {len(mats)} Kraus operators")
    return mats[0]


def load_channel(path) -> KrausChannel:
    _, mats = read_document(path)
    return KrausChannel(tuple(mats))


def write_document(doc: dict, path) -> None:
    Path(path).write_text(json.dumps(doc) + "\n")
