"""Magic-state fiducials, generalized Pauli orbits and MIC checks.

A fiducial ``f`` is *magic* when it is an eigenvector of no non-identity
Pauli operator.  Its Pauli orbit gives ``d^2`` rank-one projectors; the set is
informationally complete when their Gram matrix ``tr(P_i P_j)`` has full rank.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

MAGIC_TOL = 1e-9
RANK_TOL = 1e-8
OMEGA6 = np.exp(1j * np.pi / 3)


def _shift_clock(d: int) -> tuple[np.ndarray, np.ndarray]:
    x = np.roll(np.eye(d), 1, axis=0)
    z = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    return x.astype(complex), z


def pauli_group(d: int, structure: str = "single") -> list[np.ndarray]:
    """The ``d^2`` operators ``X^j Z^k`` or, for ``structure="two-qubit"``, 16 Pauli tensor products.

    The identity comes first in both cases.
    """
    if d < 2:
        raise ValueError("dimension must be at least 2")
    if structure in ("single", "single-qudit"):
        x, z = _shift_clock(d)
        xs = [np.linalg.matrix_power(x, j) for j in range(d)]
        zs = [np.linalg.matrix_power(z, k) for k in range(d)]
        return [xs[j] @ zs[k] for j in range(d) for k in range(d)]
    if structure in ("two-qubit", "two_qubit", "2qb"):
        if d != 4:
            raise ValueError("two-qubit Paulis need d = 4")
        one = pauli_group(2)
        return [np.kron(p, q) for p in one for q in one]
    raise ValueError(f"unknown Pauli structure {structure!r}")


def is_magic(v: np.ndarray, paulis: Sequence[np.ndarray], tol: float = MAGIC_TOL) -> bool:
    """No non-identity Pauli has ``v`` as an eigenvector."""
    v = np.asarray(v, dtype=complex)
    v = v / np.linalg.norm(v)
    eye = np.eye(len(v))
    for p in paulis:
        if np.allclose(p, eye * p[0, 0]):
            continue
        if abs(abs(np.vdot(v, p @ v)) - 1) < tol:
            return False
    return True


@dataclass(frozen=True)
class Fiducial:
    vector: np.ndarray
    source: str = "explicit"
    magic: bool | None = None

    def __post_init__(self):
        v = np.asarray(self.vector, dtype=complex)
        n = np.linalg.norm(v)
        if n == 0:
            raise ValueError("fiducial vector is zero")
        object.__setattr__(self, "vector", v / n)

    @property
    def dim(self) -> int:
        return len(self.vector)

    def tagged(self, paulis: Sequence[np.ndarray]) -> "Fiducial":
        return Fiducial(self.vector, self.source, is_magic(self.vector, paulis))

    def same_ray(self, other: np.ndarray, tol: float = 1e-9) -> bool:
        w = np.asarray(other, dtype=complex)
        w = w / np.linalg.norm(w)
        return len(w) == self.dim and abs(abs(np.vdot(self.vector, w)) - 1) < tol


def f_qt(sign: int = -1) -> Fiducial:
    return Fiducial(np.array([0, 1, sign], dtype=complex), "qutrit (0,1,+-1)")


def f_2qb() -> Fiducial:
    return Fiducial(np.array([0, 1, -OMEGA6, OMEGA6 - 1]), "two-qubit (0,1,-w6,w6-1)")


def _cycles(perm: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for s in range(len(perm)):
        if seen[s]:
            continue
        cyc = []
        i = s
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = perm[i]
        out.append(cyc)
    return out


def permutation_eigenvectors(m: np.ndarray) -> list[np.ndarray]:
    """An eigenbasis of a permutation matrix, one Fourier vector per cycle and root of unity.

    ``m[j, i] = 1`` means ``i -> j``.  On a cycle ``(c_0 .. c_{L-1})`` the vector
    with entries ``w^{-k}`` at ``c_k`` has eigenvalue ``w = e^{2 pi i r / L}``.
    """
    m = np.asarray(m)
    n = m.shape[0]
    perm = [int(np.argmax(m[:, i])) for i in range(n)]
    if sorted(perm) != list(range(n)) or not np.array_equal(m.sum(axis=0), np.ones(n)):
        raise ValueError("not a permutation matrix")
    vecs = []
    for cyc in _cycles(perm):
        L = len(cyc)
        for r in range(L):
            w = np.exp(2j * np.pi * r / L)
            v = np.zeros(n, dtype=complex)
            for k, c in enumerate(cyc):
                v[c] = w ** (-k)
            vecs.append(_clean(v / np.linalg.norm(v)))
    return vecs


def _clean(v: np.ndarray, eps: float = 1e-13) -> np.ndarray:
    re, im = v.real.copy(), v.imag.copy()
    re[abs(re) < eps] = 0
    im[abs(im) < eps] = 0
    return re + 1j * im


def fiducial_candidates(matrices: Sequence[np.ndarray], paulis: Sequence[np.ndarray] | None = None,
                        products: bool = True) -> list[Fiducial]:
    """Eigenvectors of each matrix and each ordered pair product, deduplicated up to phase.

    Each candidate is tagged magic or not against ``paulis`` (default: the
    single-qudit family of the dimension).
    """
    mats = [np.asarray(m) for m in matrices]
    if not mats:
        return []
    d = mats[0].shape[0]
    if any(m.shape != (d, d) for m in mats):
        raise ValueError("matrices must share one dimension")
    if paulis is None:
        paulis = pauli_group(d) if d >= 2 else []
    sources = [(f"m{i}", m) for i, m in enumerate(mats)]
    if products:
        for i, j in itertools.product(range(len(mats)), repeat=2):
            sources.append((f"m{i}*m{j}", mats[i] @ mats[j]))
    out: list[Fiducial] = []
    for label, m in sources:
        for v in permutation_eigenvectors(m):
            if any(f.same_ray(v) for f in out):
                continue
            out.append(Fiducial(v, f"eigenvector of {label}").tagged(paulis) if d >= 2
                       else Fiducial(v, f"eigenvector of {label}", False))
    return out


@dataclass
class ProjectorSet:
    dim: int
    fiducial: Fiducial
    states: np.ndarray
    projectors: np.ndarray
    gram: np.ndarray

    @property
    def size(self) -> int:
        return len(self.projectors)

    def gram_rank(self, rel_tol: float = RANK_TOL) -> int:
        s = np.linalg.svd(self.gram, compute_uv=False)
        return int(np.sum(s > rel_tol * s[0])) if s[0] > 0 else 0

    @property
    def is_mic(self) -> bool:
        return self.gram_rank() == self.dim ** 2

    def twirl_error(self) -> float:
        total = self.projectors.sum(axis=0)
        return float(np.max(np.abs(total - self.dim * np.eye(self.dim))))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "fiducial": [[round(float(z.real), 12), round(float(z.imag), 12)] for z in self.fiducial.vector],
            "magic": self.fiducial.magic,
            "gram_rank": self.gram_rank(),
            "mic": self.is_mic,
            "twirl_error": float(f"{self.twirl_error():.3e}"),
        }


def build_povm(f: Fiducial, paulis: Sequence[np.ndarray]) -> ProjectorSet:
    """Projectors onto ``P_i |f>`` and their Gram matrix ``|<psi_i|psi_j>|^2``."""
    paulis = [np.asarray(p, dtype=complex) for p in paulis]
    d = f.dim
    if any(p.shape != (d, d) for p in paulis):
        raise ValueError(f"Pauli operators do not act on dimension {d}")
    states = np.array([p @ f.vector for p in paulis])
    states /= np.linalg.norm(states, axis=1)[:, None]
    projectors = np.einsum("ia,ib->iab", states, states.conj())
    overlaps = states.conj() @ states.T
    gram = np.abs(overlaps) ** 2
    return ProjectorSet(d, f, states, projectors, gram)


@dataclass
class Cluster:
    value: complex
    triples: list[tuple[int, int, int]]

    @property
    def count(self) -> int:
        return len(self.triples)

    def is_real(self, tol: float) -> bool:
        return abs(self.value.imag) < tol


@dataclass
class TripleGeometry:
    total: int
    clusters: list[Cluster]
    lines: list[tuple[int, int, int]] = field(default_factory=list)
    configuration: str | None = None
    points_per_line: int | None = None
    lines_per_point: dict[int, int] = field(default_factory=dict)

    @property
    def regular(self) -> int | None:
        """Common number of lines through each point, if uniform."""
        vals = set(self.lines_per_point.values())
        return vals.pop() if len(vals) == 1 else None

    def to_json(self) -> dict:
        return {
            "triples": self.total,
            "clusters": [{"re": round(c.value.real, 9) + 0.0, "im": round(c.value.imag, 9) + 0.0, "count": c.count}
                         for c in self.clusters],
            "line_count": len(self.lines),
            "configuration": self.configuration,
            "lines_per_point": self.regular,
            "points": len(self.lines_per_point),
        }


KNOWN_LINE_COUNTS = {3: (12, "Hesse"), 4: (15, "GQ(2,2)")}


def triple_products(states: np.ndarray) -> dict[tuple[int, int, int], complex]:
    """``tr(P_i P_j P_k) = <i|j><j|k><k|i>`` over unordered ``i < j < k``."""
    g = states.conj() @ states.T
    n = len(states)
    return {(i, j, k): complex(g[i, j] * g[j, k] * g[k, i])
            for i, j, k in itertools.combinations(range(n), 3)}


def cluster_values(values: dict, tol: float) -> list[Cluster]:
    clusters: list[Cluster] = []
    for key in sorted(values):
        v = values[key]
        for c in clusters:
            if abs(c.value - v) < tol:
                c.triples.append(key)
                break
        else:
            clusters.append(Cluster(v, [key]))
    clusters.sort(key=lambda c: (-c.count, round(c.value.real, 9), round(c.value.imag, 9)))
    return clusters


def triple_product_geometry(ps: ProjectorSet, tol: float = MAGIC_TOL) -> TripleGeometry:
    """Cluster triple products and pick out the line set.

    Lines are the triples of the real cluster whose size matches the known
    configuration for the dimension; failing that, the largest real cluster is
    reported with no configuration name.
    """
    values = triple_products(ps.states)
    clusters = cluster_values(values, tol)
    real = [c for c in clusters if c.is_real(tol)]
    target = KNOWN_LINE_COUNTS.get(ps.dim)
    chosen, config = None, None
    if target is not None:
        for c in real:
            if c.count == target[0]:
                chosen, config = c, target[1]
                break
    if chosen is None and real:
        chosen = real[0]
    lines = list(chosen.triples) if chosen else []
    per_point = {i: 0 for i in range(ps.size)}
    for t in lines:
        for i in t:
            per_point[i] += 1
    return TripleGeometry(len(values), clusters, lines, config, 3 if lines else None, per_point)
