"""
Triangle meshes of the immersions and their OBJ / PLY serialization.

Both tessellations use the same topology: ``nu`` rings of ``ntheta``
vertices, quad strips split into two triangles, and optionally two apex
vertices closing the poles with triangle fans. A closed mesh is a
topological sphere (``V - E + F = 2``) even when the image winds several
times around the axis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, TextIO, Tuple

import numpy as np

from . import branched as br
from . import geometry as geo
from .geometry import DomainError, FootballParams


@dataclass(frozen=True)
class MeshConfig:
    nu: int = 64
    ntheta: int = 128
    close_poles: bool = True
    r_max: float = 10.0

    def __post_init__(self):
        if self.nu < 2:
            raise DomainError(f"nu must be >= 2, got {self.nu}")
        if self.ntheta < 3:
            raise DomainError(f"ntheta must be >= 3, got {self.ntheta}")
        if not self.r_max > 1.0:
            raise DomainError(f"r_max must exceed 1, got {self.r_max}")


@dataclass
class Mesh:
    vertices: np.ndarray  # (V, 3) float
    triangles: np.ndarray  # (F, 3) int, 0-based

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float).reshape(-1, 3)
        self.triangles = np.asarray(self.triangles, dtype=np.int64).reshape(-1, 3)
        if self.triangles.size:
            if self.triangles.min() < 0 or self.triangles.max() >= len(self.vertices):
                raise DomainError("triangle index out of range")
            t = self.triangles
            if np.any((t[:, 0] == t[:, 1]) | (t[:, 1] == t[:, 2]) | (t[:, 0] == t[:, 2])):
                raise DomainError("degenerate triangle with a repeated index")

    def edges(self) -> np.ndarray:
        """Undirected edges, each listed once, sorted."""
        t = self.triangles
        e = np.concatenate([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]])
        return np.unique(np.sort(e, axis=1), axis=0)

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges()) + len(self.triangles)

    def is_closed(self) -> bool:
        """Every undirected edge borders exactly two triangles."""
        t = self.triangles
        if not len(t):
            return False
        e = np.sort(np.concatenate([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]]), axis=1)
        _, counts = np.unique(e, axis=0, return_counts=True)
        return bool(np.all(counts == 2))

    def area(self) -> float:
        v = self.vertices[self.triangles]
        return float(0.5 * np.linalg.norm(np.cross(v[:, 1] - v[:, 0], v[:, 2] - v[:, 0]), axis=1).sum())


def _ring_triangles(nu: int, ntheta: int, close_poles: bool) -> np.ndarray:
    j = np.arange(ntheta)
    jn = (j + 1) % ntheta
    tris = []
    for i in range(nu - 1):
        a, b = i * ntheta + j, i * ntheta + jn
        c, d = (i + 1) * ntheta + j, (i + 1) * ntheta + jn
        tris.append(np.column_stack([a, c, d]))
        tris.append(np.column_stack([a, d, b]))
    if close_poles:
        south, north = nu * ntheta, nu * ntheta + 1
        top = (nu - 1) * ntheta
        tris.insert(0, np.column_stack([np.full(ntheta, south), j, jn]))
        tris.append(np.column_stack([np.full(ntheta, north), top + jn, top + j]))
    return np.concatenate(tris) if tris else np.zeros((0, 3), dtype=np.int64)


def tessellate(p: FootballParams, cfg: MeshConfig) -> Mesh:
    """Rings at ``u_i = pi i / (nu + 1)``, ``i = 1..nu``, and ``theta_j = 2 pi j / ntheta``.

    For ``lambda >= 2`` the image is traversed ``lambda`` times; no vertex
    merging is attempted.
    """
    us = math.pi * np.arange(1, cfg.nu + 1) / (cfg.nu + 1)
    ts = geo.TWO_PI * np.arange(cfg.ntheta) / cfg.ntheta
    heights = geo.profile_heights(us, p.B)
    phase = np.array([p.lam * geo.wrap_angle(t) for t in ts])
    s = p.B * np.sin(us)
    x1 = np.outer(s, np.cos(phase))
    x2 = np.outer(s, np.sin(phase))
    x3 = np.repeat(heights[:, None], cfg.ntheta, axis=1)
    verts = np.column_stack([x1.ravel(), x2.ravel(), x3.ravel()])
    if cfg.close_poles:
        verts = np.vstack([verts, [0.0, 0.0, 0.0], list(geo.north_pole(p))])
    return Mesh(verts, _ring_triangles(cfg.nu, cfg.ntheta, cfg.close_poles))


def tessellate_branched(bp: br.BranchParams, cfg: MeshConfig) -> Mesh:
    """Rings on a geometric progression of radii from ``1/r_max`` to ``r_max``.

    The apexes are the images of ``z = 0`` and of ``z = oo`` (north pole).
    """
    rs = np.geomspace(1.0 / cfg.r_max, cfg.r_max, cfg.nu)
    ts = geo.TWO_PI * np.arange(cfg.ntheta) / cfg.ntheta
    verts = [
        br.branched_immersion(complex(r * math.cos(t), r * math.sin(t)), bp)
        for r in rs
        for t in ts
    ]
    if cfg.close_poles:
        verts.append(br.branched_immersion(0j, bp))
        verts.append(br.branched_immersion(br.INFINITY, bp))
    return Mesh(np.array(verts, dtype=float), _ring_triangles(cfg.nu, cfg.ntheta, cfg.close_poles))


# -- serialization ------------------------------------------------------------------


def format_float(x: float) -> str:
    """Shortest round-trip decimal; integral values lose the trailing ``.0``."""
    x = float(x)
    if x == 0.0:
        return "0"
    s = repr(x)
    if s.endswith(".0"):
        s = s[:-2]
    return s


def write_obj(m: Mesh, sink: TextIO) -> None:
    """ASCII Wavefront OBJ: ``v`` records then ``f`` records with 1-based indices."""
    for v in m.vertices:
        sink.write("v " + " ".join(format_float(c) for c in v) + "\n")
    for t in m.triangles:
        sink.write(f"f {t[0] + 1} {t[1] + 1} {t[2] + 1}\n")


PLY_HEADER = """ply
format ascii 1.0
element vertex {nv}
property float x
property float y
property float z
element face {nf}
property list uchar int vertex_indices
end_header
"""


def write_ply(m: Mesh, sink: TextIO) -> None:
    sink.write(PLY_HEADER.format(nv=len(m.vertices), nf=len(m.triangles)))
    for v in m.vertices:
        sink.write(" ".join(format_float(c) for c in v) + "\n")
    for t in m.triangles:
        sink.write(f"3 {t[0]} {t[1]} {t[2]}\n")


WRITERS = {"obj": write_obj, "ply": write_ply}


def save_mesh(m: Mesh, path, fmt: str = "obj") -> None:
    try:
        writer = WRITERS[fmt]
    except KeyError:
        raise DomainError(f"unknown mesh format {fmt!r}") from None
    with open(path, "w", encoding="ascii", newline="\n") as f:
        writer(m, f)


def read_obj(lines: Iterable[str]) -> Mesh:
    verts, tris = [], []
    for line in lines:
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "v":
            verts.append([float(x) for x in parts[1:4]])
        elif parts[0] == "f":
            tris.append([int(x.split("/")[0]) - 1 for x in parts[1:4]])
    return Mesh(np.array(verts, dtype=float), np.array(tris, dtype=np.int64))


def read_ply(lines: Iterable[str]) -> Mesh:
    it = iter(lines)
    nv = nf = 0
    for line in it:
        parts = line.split()
        if parts[:2] == ["element", "vertex"]:
            nv = int(parts[2])
        elif parts[:2] == ["element", "face"]:
            nf = int(parts[2])
        elif parts == ["end_header"]:
            break
    verts = [[float(x) for x in next(it).split()] for _ in range(nv)]
    tris = []
    for _ in range(nf):
        parts = [int(x) for x in next(it).split()]
        if parts[0] != 3:
            raise DomainError("only triangular faces are supported")
        tris.append(parts[1:4])
    return Mesh(np.array(verts, dtype=float), np.array(tris, dtype=np.int64))


def mesh_stats(m: Mesh) -> Tuple[int, int, int, int]:
    """``(V, E, F, chi)``."""
    nv, ne, nf = len(m.vertices), len(m.edges()), len(m.triangles)
    return nv, ne, nf, nv - ne + nf
