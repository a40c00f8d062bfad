"""Wavefront OBJ export of sampled ruled surfaces.

Vertices are the lattice points r(s_i, v_j), written row-major in s then v,
with the Minkowski coordinates emitted as Euclidean triples.  Output is
deterministic: identical inputs give byte-identical files.
"""

from __future__ import annotations

import os

import numpy as np

from .surface import RuledSurfaceGrid


def export_mesh(
    surface: RuledSurfaceGrid,
    v_range: tuple[float, float],
    v_samples: int,
    path,
    comment: str = "timelike ruled surface",
) -> str:
    """Write the (s, v) lattice as an OBJ quad mesh and return the path.

    ``comment`` goes on the leading # line; the second comment line warns
    that a viewer measures Euclidean, not Lorentzian, distances.
    """
    if v_samples < 2:
        raise ValueError("v_samples must be at least 2")
    v_min, v_max = float(v_range[0]), float(v_range[1])
    vs = v_min + (v_max - v_min) * np.arange(v_samples) / (v_samples - 1)

    n_s = surface.n_samples
    lines = [f"# {comment}", "# coordinates: (x1, x2, x3), x1 timelike; viewer distances are Euclidean"]
    k = surface.directrix.k
    q = surface.q
    for i in range(n_s):
        for v in vs:
            p = k[i] + v * q[i]
            lines.append(f"v {p[0]:.17g} {p[1]:.17g} {p[2]:.17g}")
    for i in range(n_s - 1):
        base = i * v_samples
        for j in range(v_samples - 1):
            a = base + j + 1
            b = base + v_samples + j + 1
            lines.append(f"f {a} {b} {b + 1} {a + 1}")

    path = os.fspath(path)
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return path
