"""Colorable cell complexes ("colexes") on closed 2- and 3-manifolds.

A d-colex carries qubits on vertices, (d+1)-colorable top cells, and a
bipartition of the vertex graph.  All builders construct the colex as the
dual of a properly vertex-colored triangulation: top simplices become
qubits, triangulation vertices become plaquettes (2D) or volumes (3D), and
lower simplices become the remaining colex cells.  Everything is stored as
explicit incidence lists; there is no coordinate geometry downstream.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import ConstructionError, DegenerateBoundaryError
from .f2 import BinVec

COLORS_2D = "ABC"
COLORS_3D = "ABCD"


@dataclass(frozen=True)
class Cell:
    """One colex cell: an edge, plaquette, or volume.

    `colors` holds the sorted color letters of the top cells containing this
    cell (one letter for top cells themselves).  For edges, `connects` names
    the two top cells of the complementary color reached through the edge's
    endpoints; strings and membranes are walks on that relation.
    """

    index: int
    colors: str
    qubits: tuple[int, ...]
    in_cells: tuple[int, ...] = ()
    connects: tuple[int, ...] = ()

    @property
    def support(self) -> int:
        mask = 0
        for q in self.qubits:
            mask |= 1 << q
        return mask

    def weight(self) -> int:
        return len(self.qubits)


@dataclass(frozen=True)
class Colex:
    dimension: int
    manifold: str
    n_qubits: int
    edges: tuple[Cell, ...]
    plaquettes: tuple[Cell, ...]
    volumes: tuple[Cell, ...]
    t_set: int  # bipartition: qubits in T (complement is T^c)
    names: dict[str, int] = field(default_factory=dict, compare=False)

    @property
    def colors(self) -> str:
        return COLORS_2D if self.dimension == 2 else COLORS_3D

    @property
    def top_cells(self) -> tuple[Cell, ...]:
        return self.plaquettes if self.dimension == 2 else self.volumes

    def top_cells_of_color(self, color: str) -> tuple[Cell, ...]:
        return tuple(c for c in self.top_cells if c.colors == color)

    def bipartition_vec(self) -> BinVec:
        return BinVec(self.n_qubits, self.t_set)

    def bipartition_sign(self, qubit: int) -> int:
        """+1 on T, -1 on T^c."""
        return 1 if (self.t_set >> qubit) & 1 else -1

    def euler_characteristic(self) -> int:
        chi = self.n_qubits - len(self.edges) + len(self.plaquettes)
        if self.dimension == 3:
            chi -= len(self.volumes)
        return chi

    # -- validation ---------------------------------------------------------

    def validate(self) -> None:
        valence = [0] * self.n_qubits
        for e in self.edges:
            if len(e.qubits) != 2:
                raise ConstructionError(f"edge {e.index} is not 2-qubit")
            for q in e.qubits:
                valence[q] += 1
        want = self.dimension + 1
        if any(v != want for v in valence):
            raise ConstructionError(f"vertex valence differs from {want}")
        # proper colorability: each qubit lies in exactly one top cell per color
        seen: list[dict[str, int]] = [dict() for _ in range(self.n_qubits)]
        for c in self.top_cells:
            for q in c.qubits:
                if c.colors in seen[q]:
                    raise ConstructionError(
                        f"qubit {q} touches two {c.colors}-cells"
                    )
                seen[q][c.colors] = c.index
        for q, by_color in enumerate(seen):
            if len(by_color) != want:
                raise ConstructionError(f"qubit {q} misses a color class")
        self._check_bipartite()
        expected_chi = {"torus": 0, "sphere": 2, "s3": 0, "t3": 0}[self.manifold]
        if self.euler_characteristic() != expected_chi:
            raise ConstructionError(
                f"Euler characteristic {self.euler_characteristic()} != "
                f"{expected_chi} for {self.manifold}"
            )

    def _check_bipartite(self) -> None:
        adj: list[list[int]] = [[] for _ in range(self.n_qubits)]
        for e in self.edges:
            a, b = e.qubits
            adj[a].append(b)
            adj[b].append(a)
        side = [-1] * self.n_qubits
        for start in range(self.n_qubits):
            if side[start] >= 0:
                continue
            side[start] = 1 if (self.t_set >> start) & 1 else 0
            stack = [start]
            while stack:
                u = stack.pop()
                for v in adj[u]:
                    if side[v] < 0:
                        side[v] = 1 - side[u]
                        stack.append(v)
                    elif side[v] == side[u]:
                        raise ConstructionError("vertex graph is not bipartite")
        for q in range(self.n_qubits):
            if ((self.t_set >> q) & 1) != side[q]:
                raise ConstructionError("stored bipartition is inconsistent")

    # -- serialization ------------------------------------------------------

    def to_json(self) -> str:
        def cell(c: Cell) -> dict:
            return {
                "colors": c.colors,
                "qubits": list(c.qubits),
                "in_cells": list(c.in_cells),
                "connects": list(c.connects),
            }

        doc = {
            "format": "colexlab-colex",
            "version": 1,
            "dimension": self.dimension,
            "manifold": self.manifold,
            "n_qubits": self.n_qubits,
            "t_set": [q for q in range(self.n_qubits) if (self.t_set >> q) & 1],
            "edges": [cell(c) for c in self.edges],
            "plaquettes": [cell(c) for c in self.plaquettes],
            "volumes": [cell(c) for c in self.volumes],
            "names": dict(sorted(self.names.items())),
        }
        return json.dumps(doc, indent=1, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "Colex":
        doc = json.loads(text)
        if doc.get("format") != "colexlab-colex" or doc.get("version") != 1:
            raise ConstructionError("unrecognized colex serialization")

        def cells(items: list[dict]) -> tuple[Cell, ...]:
            return tuple(
                Cell(
                    index=i,
                    colors=d["colors"],
                    qubits=tuple(d["qubits"]),
                    in_cells=tuple(d["in_cells"]),
                    connects=tuple(d["connects"]),
                )
                for i, d in enumerate(items)
            )

        t_set = 0
        for q in doc["t_set"]:
            t_set |= 1 << q
        return Colex(
            dimension=doc["dimension"],
            manifold=doc["manifold"],
            n_qubits=doc["n_qubits"],
            edges=cells(doc["edges"]),
            plaquettes=cells(doc["plaquettes"]),
            volumes=cells(doc["volumes"]),
            t_set=t_set,
            names={str(k): int(v) for k, v in doc.get("names", {}).items()},
        )


# ---------------------------------------------------------------------------
# assembly from colored triangulations
# ---------------------------------------------------------------------------


def _bipartition_from_adjacency(n: int, pairs: Iterable[tuple[int, int]]) -> int:
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in pairs:
        adj[a].append(b)
        adj[b].append(a)
    side = [-1] * n
    for start in range(n):
        if side[start] >= 0:
            continue
        side[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if side[v] < 0:
                    side[v] = 1 - side[u]
                    stack.append(v)
                elif side[v] == side[u]:
                    raise ConstructionError("top-cell adjacency is not bipartite")
    mask = 0
    for q in range(n):
        if side[q]:
            mask |= 1 << q
    return mask


def _assemble_2d(
    vertex_colors: Sequence[str],
    triangles: Sequence[tuple[int, int, int]],
    glued_pairs: Sequence[tuple[tuple[int, int], tuple[int, int]]],
    manifold: str,
    names: Optional[dict[str, int]] = None,
) -> Colex:
    """Dualize a 3-colored surface triangulation.

    `glued_pairs` lists each triangulation edge once, as a pair of
    (triangle, opposite-vertex) slots; builders supply the gluing explicitly
    so that quotient lattices with repeated vertex sets stay unambiguous.
    """
    nq = len(triangles)
    stars: dict[int, list[int]] = {v: [] for v in range(len(vertex_colors))}
    for t, tri in enumerate(triangles):
        for v in tri:
            stars[v].append(t)
    plaquettes = tuple(
        Cell(index=v, colors=vertex_colors[v], qubits=tuple(sorted(stars[v])))
        for v in range(len(vertex_colors))
    )
    edges = []
    for (t1, opp1), (t2, opp2) in glued_pairs:
        shared1 = [v for v in triangles[t1] if v != opp1]
        shared2 = [v for v in triangles[t2] if v != opp2]
        if sorted(shared1) != sorted(shared2):
            raise ConstructionError("inconsistent gluing data")
        colors = "".join(sorted(vertex_colors[v] for v in shared1))
        edges.append(
            Cell(
                index=len(edges),
                colors=colors,
                qubits=tuple(sorted((t1, t2))),
                in_cells=tuple(sorted(shared1)),
                connects=(opp1, opp2) if t1 <= t2 else (opp2, opp1),
            )
        )
    t_set = _bipartition_from_adjacency(nq, [e.qubits for e in edges])
    colex = Colex(
        dimension=2,
        manifold=manifold,
        n_qubits=nq,
        edges=tuple(edges),
        plaquettes=plaquettes,
        volumes=(),
        t_set=t_set,
        names=names or {},
    )
    colex.validate()
    return colex


def _assemble_3d(
    vertex_colors: Sequence[str],
    tets: Sequence[tuple[int, int, int, int]],
    plaquette_spec: Sequence[tuple[tuple[int, int], tuple[int, ...]]],
    manifold: str,
    names: Optional[dict[str, int]] = None,
) -> Colex:
    """Dualize a 4-colored 3-manifold triangulation.

    Colex edges come from facet (triangle) matching, which is unambiguous
    for all builders here; plaquettes are supplied by the builder as
    (dual triangulation edge endpoints, qubit ring), since quotient lattices
    can carry two distinct plaquettes on one vertex pair.
    """
    nq = len(tets)
    stars: dict[int, list[int]] = {v: [] for v in range(len(vertex_colors))}
    for t, tet in enumerate(tets):
        for v in tet:
            stars[v].append(t)
    volumes = tuple(
        Cell(index=v, colors=vertex_colors[v], qubits=tuple(sorted(stars[v])))
        for v in range(len(vertex_colors))
    )
    facets: dict[tuple[int, ...], list[tuple[int, int]]] = {}
    for t, tet in enumerate(tets):
        for opp in tet:
            key = tuple(sorted(v for v in tet if v != opp))
            facets.setdefault(key, []).append((t, opp))
    edges = []
    for key, hits in sorted(facets.items()):
        if len(hits) != 2:
            raise ConstructionError(f"facet {key} shared by {len(hits)} tets")
        (t1, opp1), (t2, opp2) = hits
        colors = "".join(sorted(vertex_colors[v] for v in key))
        edges.append(
            Cell(
                index=len(edges),
                colors=colors,
                qubits=tuple(sorted((t1, t2))),
                in_cells=key,
                connects=(opp1, opp2) if t1 <= t2 else (opp2, opp1),
            )
        )
    plaquettes = []
    for (va, vb), ring in plaquette_spec:
        colors = "".join(sorted((vertex_colors[va], vertex_colors[vb])))
        plaquettes.append(
            Cell(
                index=len(plaquettes),
                colors=colors,
                qubits=tuple(sorted(ring)),
                in_cells=tuple(sorted((va, vb))),
            )
        )
    t_set = _bipartition_from_adjacency(nq, [e.qubits for e in edges])
    colex = Colex(
        dimension=3,
        manifold=manifold,
        n_qubits=nq,
        edges=tuple(edges),
        plaquettes=tuple(plaquettes),
        volumes=volumes,
        t_set=t_set,
        names=names or {},
    )
    colex.validate()
    return colex


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def build_hex_torus(d1: int, d2: int) -> Colex:
    """Hexagonal colex on a torus: 6*d1*d2 qubits, d1*d2 plaquettes per color.

    The dual is a triangular lattice whose vertices are colored by
    (i - j) mod 3; the torus is the quotient by d1*(1,1) and d2*(2,-1),
    which both preserve the coloring, so any d1, d2 >= 1 is consistent.
    """
    if d1 < 1 or d2 < 1:
        raise ValueError("torus dimensions must be >= 1")

    def canon(i: int, j: int) -> tuple[int, int]:
        p = i - j
        t = p % (3 * d2)
        k = (p - t) // (3 * d2)
        jj = (j + k * d2) % d1
        return (t, jj)

    verts: dict[tuple[int, int], int] = {}
    for t in range(3 * d2):
        for jj in range(d1):
            verts[(t, jj)] = len(verts)

    def vid(i: int, j: int) -> int:
        return verts[canon(i, j)]

    vertex_colors = [COLORS_2D[t % 3] for (t, _), _ in sorted(verts.items(), key=lambda kv: kv[1])]
    # enumerate triangles by position; two per unit cell of the quotient
    tri_pos: dict[tuple[int, int, str], int] = {}
    triangles: list[tuple[int, int, int]] = []

    def tri_canon(i: int, j: int) -> tuple[int, int]:
        return canon(i, j)

    for t in range(3 * d2):
        for jj in range(d1):
            i, j = t + jj, jj
            for kind in ("u", "d"):
                tri_pos[(t, jj, kind)] = len(triangles)
                if kind == "u":
                    triangles.append((vid(i, j), vid(i + 1, j), vid(i, j + 1)))
                else:
                    triangles.append((vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)))

    def tri_id(i: int, j: int, kind: str) -> int:
        t, jj = tri_canon(i, j)
        return tri_pos[(t, jj, kind)]

    glued: list[tuple[tuple[int, int], tuple[int, int]]] = []
    for t in range(3 * d2):
        for jj in range(d1):
            i, j = t + jj, jj
            up = tri_id(i, j, "u")
            # shared edge {(i+1,j),(i,j+1)} with down(i,j)
            glued.append(((up, vid(i, j)), (tri_id(i, j, "d"), vid(i + 1, j + 1))))
            # shared edge {(i,j),(i,j+1)} with down(i-1,j)
            glued.append(((up, vid(i + 1, j)), (tri_id(i - 1, j, "d"), vid(i - 1, j + 1))))
            # shared edge {(i,j),(i+1,j)} with down(i,j-1)
            glued.append(((up, vid(i, j + 1)), (tri_id(i, j - 1, "d"), vid(i + 1, j - 1))))
    names = {}
    for (t, jj), v in verts.items():
        names[f"plaq:{t},{jj}"] = v
    return _assemble_2d(vertex_colors, triangles, glued, "torus", names)


def _subdivide(
    vertex_colors: list[str], triangles: list[tuple[int, int, int]]
) -> tuple[list[str], list[tuple[int, int, int]]]:
    """One round of 4-to-1 midpoint subdivision, preserving 3-colorability.

    A midpoint inherits the color complementary to its edge's endpoints, so
    proper colorings stay proper.
    """
    midpoint: dict[tuple[int, int], int] = {}

    def mid(a: int, b: int) -> int:
        key = (min(a, b), max(a, b))
        if key not in midpoint:
            third = next(
                c for c in COLORS_2D
                if c not in (vertex_colors[a], vertex_colors[b])
            )
            midpoint[key] = len(vertex_colors)
            vertex_colors.append(third)
        return midpoint[key]

    out: list[tuple[int, int, int]] = []
    for a, b, c in triangles:
        ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
        out.extend([(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)])
    return vertex_colors, out


def _glue_simplicial_2d(
    triangles: Sequence[tuple[int, int, int]],
) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    sides: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for t, tri in enumerate(triangles):
        for opp in tri:
            key = tuple(sorted(v for v in tri if v != opp))
            sides.setdefault(key, []).append((t, opp))
    glued = []
    for key, hits in sorted(sides.items()):
        if len(hits) != 2:
            raise ConstructionError(f"edge {key} shared by {len(hits)} triangles")
        glued.append((hits[0], hits[1]))
    return glued


def build_octahedral_sphere(refinement: int) -> Colex:
    """2-colex on a sphere: dual of the axis-colored octahedron, subdivided.

    Refinement 0 dualizes to the cube graph (8 qubits, 6 plaquettes, two
    opposite faces per color); each refinement splits every triangle in four.
    """
    if refinement < 0:
        raise ValueError("refinement must be >= 0")
    # octahedron: vertices +-e_i colored by axis
    vertex_colors = ["A", "A", "B", "B", "C", "C"]  # +x,-x,+y,-y,+z,-z
    triangles = [
        (x, y, z)
        for x in (0, 1)
        for y in (2, 3)
        for z in (4, 5)
    ]
    base_names = {
        "plaq:+x": 0, "plaq:-x": 1,
        "plaq:+y": 2, "plaq:-y": 3,
        "plaq:+z": 4, "plaq:-z": 5,
    }
    for _ in range(refinement):
        vertex_colors, triangles = _subdivide(vertex_colors, triangles)
    glued = _glue_simplicial_2d(triangles)
    return _assemble_2d(vertex_colors, triangles, glued, "sphere", dict(base_names))


def build_16cell_colex() -> Colex:
    """3-colex on S^3: dual of the 16-cell boundary, vertices colored by axis.

    16 qubits (one per tetrahedron), 8 volumes of weight 8, 24 plaquettes of
    weight 4, 32 colex edges.
    """
    # vertices: +-e_i, i = 1..4; index 2*(i-1) + (0 for +, 1 for -)
    vertex_colors = [COLORS_3D[i // 2] for i in range(8)]
    names = {}
    for i in range(4):
        names[f"vol:+{i + 1}"] = 2 * i
        names[f"vol:-{i + 1}"] = 2 * i + 1
    tets = [
        (a, b, c, d)
        for a in (0, 1)
        for b in (2, 3)
        for c in (4, 5)
        for d in (6, 7)
    ]
    pair_ring: dict[tuple[int, int], list[int]] = {}
    for t, tet in enumerate(tets):
        for i in range(4):
            for j in range(i + 1, 4):
                pair_ring.setdefault((tet[i], tet[j]), []).append(t)
    plaquette_spec = []
    for pair, ring in sorted(pair_ring.items()):
        plaquette_spec.append((pair, tuple(ring)))
        names[f"plaq:{pair[0]},{pair[1]}"] = len(plaquette_spec) - 1
    return _assemble_3d(vertex_colors, tets, plaquette_spec, "s3", names)


def build_bcc_torus(l1: int, l2: int, l3: int) -> Colex:
    """3-colex on a 3-torus: dual of the tetragonal-disphenoid honeycomb.

    Triangulation vertices form a BCC lattice (cube corners and centers,
    coordinates mod 2L); corners split into colors A/B and centers into C/D
    by checkerboard parity, which is consistent only for even L.  The colex
    itself is the bitruncated-cubic honeycomb of truncated octahedra.
    """
    dims = (l1, l2, l3)
    if any(l < 2 or l % 2 for l in dims):
        raise ValueError("each length must be even and >= 2")
    mod = tuple(2 * l for l in dims)

    def wrap(p: tuple[int, int, int]) -> tuple[int, int, int]:
        return (p[0] % mod[0], p[1] % mod[1], p[2] % mod[2])

    verts: dict[tuple[int, int, int], int] = {}
    vertex_colors: list[str] = []
    names: dict[str, int] = {}

    def add_vertex(p: tuple[int, int, int]) -> None:
        p = wrap(p)
        if p in verts:
            return
        if all(c % 2 == 0 for c in p):
            color = "AB"[((p[0] + p[1] + p[2]) // 2) % 2]
        else:
            color = "CD"[((p[0] - 1 + p[1] - 1 + p[2] - 1) // 2) % 2]
        verts[p] = len(vertex_colors)
        vertex_colors.append(color)
        names[f"vol:{p[0]},{p[1]},{p[2]}"] = verts[p]

    corners = [
        (2 * x, 2 * y, 2 * z)
        for x in range(dims[0])
        for y in range(dims[1])
        for z in range(dims[2])
    ]
    centers = [(c[0] + 1, c[1] + 1, c[2] + 1) for c in corners]
    for p in corners + centers:
        add_vertex(p)

    def shifted(p: tuple[int, int, int], axis: int, amount: int) -> tuple[int, int, int]:
        q = list(p)
        q[axis] += amount
        return wrap(tuple(q))

    axes = (0, 1, 2)
    tets: list[tuple[int, int, int, int]] = []
    # plaquettes around axis edges collect their four tets as we build
    axis_edge_ring: dict[tuple[tuple[int, int, int], int], list[int]] = {}
    for p in corners:
        for k in axes:
            i, j = [a for a in axes if a != k]
            p2 = shifted(p, k, 2)
            centers4 = {}
            for s in (-1, 1):
                for t in (-1, 1):
                    q = list(p)
                    q[k] += 1
                    q[i] += s
                    q[j] += t
                    centers4[(s, t)] = wrap(tuple(q))
            # the 4 center-edges of the ring around this corner edge
            ring_edges = [
                (centers4[(-1, -1)], centers4[(1, -1)], i),
                (centers4[(1, -1)], centers4[(1, 1)], j),
                (centers4[(-1, 1)], centers4[(1, 1)], i),
                (centers4[(-1, -1)], centers4[(-1, 1)], j),
            ]
            for qa, qb, m in ring_edges:
                tid = len(tets)
                tets.append((verts[p], verts[p2], verts[qa], verts[qb]))
                axis_edge_ring.setdefault((p, k), []).append(tid)
                # identify the center edge by its low endpoint germ
                lo = qa if shifted(qa, m, 2) == qb else qb
                axis_edge_ring.setdefault((lo, m + 3), []).append(tid)

    plaquette_spec: list[tuple[tuple[int, int], tuple[int, ...]]] = []
    for (p, tag), ring in sorted(axis_edge_ring.items()):
        if len(ring) != 4:
            raise ConstructionError("axis plaquette ring is not 4 tets")
        axis = tag if tag < 3 else tag - 3
        p2 = shifted(p, axis, 2)
        plaquette_spec.append(((verts[p], verts[p2]), tuple(sorted(set(ring)))))
        names[f"plaq:ax:{tag}:{p[0]},{p[1]},{p[2]}"] = len(plaquette_spec) - 1
    # hexagonal plaquettes: one per adjacent corner/center pair
    diag_ring: dict[tuple[int, int], set[int]] = {}
    for tid, tet in enumerate(tets):
        for a in tet[:2]:
            for b in tet[2:]:
                key = (min(a, b), max(a, b))
                diag_ring.setdefault(key, set()).add(tid)
    for (a, b), ring in sorted(diag_ring.items()):
        if len(ring) != 6:
            raise ConstructionError("diagonal plaquette ring is not 6 tets")
        plaquette_spec.append(((a, b), tuple(sorted(ring))))
        names[f"plaq:diag:{a},{b}"] = len(plaquette_spec) - 1
    return _assemble_3d(vertex_colors, tets, plaquette_spec, "t3", names)


# ---------------------------------------------------------------------------
# regions and boundaries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Region:
    """A union of same-color top cells, the support of a restricted gate."""

    color: str
    cell_ids: tuple[int, ...]
    qubits: BinVec

    @property
    def support(self) -> int:
        return self.qubits.bits


@dataclass(frozen=True)
class BoundaryLattice:
    """Where a region's excitations can live, plus its dual-lattice shape.

    2D: `cycle` is the alternating closed walk of boundary plaquettes and
    `cycle_qubits[i]` is the in-region qubit shared by consecutive pair i,
    i+1 (the qubit whose phase factor couples those two modes).

    3D: `dual_vertices` are the boundary plaquettes reinterpreted as
    vertices of the dual triangulation, `dual_triangles` its faces (indices
    into dual_vertices, one per in-region qubit, aligned with
    `triangle_qubits`), and `mode_cells[i]` the stabilizer cell (volume)
    whose excitation the i-th dual vertex records.
    """

    dimension: int
    boundary_cells: tuple[int, ...]
    mode_cells: tuple[int, ...]
    cycle: tuple[int, ...] = ()
    cycle_qubits: tuple[int, ...] = ()
    dual_vertices: tuple[int, ...] = ()
    dual_colors: tuple[str, ...] = ()
    dual_triangles: tuple[tuple[int, int, int], ...] = ()
    triangle_qubits: tuple[int, ...] = ()
    degenerate: bool = False


def region_and_boundary(
    colex: Colex,
    color: str,
    cell_ids: Iterable[int],
    *,
    allow_degenerate: bool = False,
) -> tuple[Region, BoundaryLattice]:
    cell_ids = tuple(sorted(set(cell_ids)))
    if not cell_ids:
        raise ValueError("empty region")
    cells = [colex.top_cells[i] for i in cell_ids]
    for c in cells:
        if c.colors != color:
            raise ValueError(f"cell {c.index} has color {c.colors}, not {color}")
    support = 0
    for c in cells:
        support |= c.support
    region = Region(color, cell_ids, BinVec(colex.n_qubits, support))
    _check_region_connected(colex, color, cell_ids, support)
    if colex.dimension == 2:
        boundary = _boundary_2d(colex, region, allow_degenerate)
    else:
        boundary = _boundary_3d(colex, region)
    return region, boundary


def _check_region_connected(
    colex: Colex, color: str, cell_ids: tuple[int, ...], support: int
) -> None:
    if len(cell_ids) == 1:
        return
    ids = set(cell_ids)
    adj: dict[int, set[int]] = {i: set() for i in ids}
    for e in colex.edges:
        a, b = e.connects
        if a in ids and b in ids and a != b:
            adj[a].add(b)
            adj[b].add(a)
    seen = {cell_ids[0]}
    stack = [cell_ids[0]]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    if seen != ids:
        raise ValueError("region cells are not connected")


def _boundary_2d(colex: Colex, region: Region, allow_degenerate: bool) -> BoundaryLattice:
    v = region.support
    boundary = []
    for p in colex.plaquettes:
        if p.colors == region.color:
            continue
        inside = (p.support & v).bit_count()
        if 0 < inside < p.weight():
            boundary.append(p.index)
    if not boundary:
        raise DegenerateBoundaryError("region has no boundary plaquettes")
    # consecutive boundary plaquettes share a colex edge crossing the cut
    links: dict[int, list[tuple[int, int]]] = {b: [] for b in boundary}
    bset = set(boundary)
    for e in colex.edges:
        p1, p2 = e.in_cells
        if p1 not in bset or p2 not in bset:
            continue
        q1, q2 = e.qubits
        ins = [(q, (v >> q) & 1) for q in (q1, q2)]
        inside = [q for q, flag in ins if flag]
        if len(inside) != 1:
            continue
        links[p1].append((p2, inside[0]))
        links[p2].append((p1, inside[0]))
    degenerate = any(len(ls) != 2 for ls in links.values())
    if degenerate and not allow_degenerate:
        raise DegenerateBoundaryError(
            "boundary walk is not a simple cycle; pass allow_degenerate to keep it"
        )
    cycle: list[int] = []
    cycle_qubits: list[int] = []
    if not degenerate:
        start = min(boundary)
        prev, cur = None, start
        while True:
            cycle.append(cur)
            nxt = None
            for cand, q in links[cur]:
                if prev is None or cand != prev or len(links[cur]) == 1:
                    if len(cycle) >= 2 and cand == cycle[-2]:
                        continue
                    nxt = (cand, q)
                    break
            if nxt is None:
                degenerate = True
                break
            cycle_qubits.append(nxt[1])
            prev, cur = cur, nxt[0]
            if cur == start:
                break
        if len(cycle) != len(boundary):
            degenerate = True
        if not degenerate:
            colors = [colex.plaquettes[p].colors for p in cycle]
            if any(colors[i] == colors[(i + 1) % len(colors)] for i in range(len(colors))):
                raise DegenerateBoundaryError("boundary cycle does not alternate colors")
    if degenerate and not allow_degenerate:
        raise DegenerateBoundaryError("boundary walk is not a simple alternating cycle")
    return BoundaryLattice(
        dimension=2,
        boundary_cells=tuple(sorted(boundary)),
        mode_cells=tuple(cycle) if not degenerate else tuple(sorted(boundary)),
        cycle=tuple(cycle),
        cycle_qubits=tuple(cycle_qubits),
        degenerate=degenerate,
    )


def _boundary_3d(colex: Colex, region: Region) -> BoundaryLattice:
    ids = set(region.cell_ids)
    plaqs = []
    for p in colex.plaquettes:
        touching = [c for c in p.in_cells if c in ids]
        if len(touching) == 1:
            plaqs.append(p.index)
    dual_index = {p: i for i, p in enumerate(plaqs)}
    mode_cells = []
    dual_colors = []
    for p in plaqs:
        cell = colex.plaquettes[p]
        other = next(c for c in cell.in_cells if c not in ids)
        mode_cells.append(other)
        dual_colors.append(colex.volumes[other].colors)
    triangles = []
    triangle_qubits = []
    v = region.support
    plaq_by_qubit: dict[int, list[int]] = {}
    for p in plaqs:
        for q in colex.plaquettes[p].qubits:
            plaq_by_qubit.setdefault(q, []).append(p)
    for q in sorted(plaq_by_qubit):
        if not (v >> q) & 1:
            continue
        tri = plaq_by_qubit[q]
        if len(tri) != 3:
            raise DegenerateBoundaryError(
                f"qubit {q} lies on {len(tri)} boundary plaquettes, expected 3"
            )
        triangles.append(tuple(sorted(dual_index[p] for p in tri)))
        triangle_qubits.append(q)
    # closed-surface sanity: every dual edge borders exactly two triangles
    edge_count: dict[tuple[int, int], int] = {}
    for tri in triangles:
        for i in range(3):
            for j in range(i + 1, 3):
                edge_count[(tri[i], tri[j])] = edge_count.get((tri[i], tri[j]), 0) + 1
    if any(cnt != 2 for cnt in edge_count.values()):
        raise DegenerateBoundaryError("dual boundary lattice is not a closed surface")
    for (a, b) in edge_count:
        if dual_colors[a] == dual_colors[b]:
            raise DegenerateBoundaryError("dual boundary lattice is not 3-colorable")
    return BoundaryLattice(
        dimension=3,
        boundary_cells=tuple(plaqs),
        mode_cells=tuple(mode_cells),
        dual_vertices=tuple(plaqs),
        dual_colors=tuple(dual_colors),
        dual_triangles=tuple(triangles),
        triangle_qubits=tuple(triangle_qubits),
    )


# ---------------------------------------------------------------------------
# strings and membranes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CellSupport:
    """Qubit support of a string or membrane, with boundary classification."""

    colors: str
    kind: str  # "edges" (string) or "plaquettes" (membrane)
    cell_ids: tuple[int, ...]
    qubits: BinVec
    closed: bool
    boundary_cells: tuple[int, ...]

    @property
    def support(self) -> int:
        return self.qubits.bits


def cell_support(colex: Colex, colors: str, spec) -> CellSupport:
    """Union support of same-colored edges (strings) or plaquettes (membranes).

    `spec` is ("edges", ids), ("plaquettes", ids), or
    ("edge_path", start_top_cell, end_top_cell) which walks the connects
    relation over edges of the requested colors.
    """
    colors = "".join(sorted(colors))
    kind = spec[0]
    if kind == "edge_path":
        ids = _edge_path(colex, colors, spec[1], spec[2])
        kind = "edges"
    else:
        ids = tuple(spec[1])
    if kind == "edges":
        cells = [colex.edges[i] for i in ids]
    elif kind == "plaquettes":
        if colex.dimension != 3:
            raise ValueError("membranes exist only in 3D colexes")
        cells = [colex.plaquettes[i] for i in ids]
    else:
        raise ValueError(f"unknown support kind {kind!r}")
    for c in cells:
        if c.colors != colors:
            raise ValueError(f"cell {c.index} has colors {c.colors}, wanted {colors}")
    support = 0
    for c in cells:
        support |= c.support
    if kind == "edges":
        counts: dict[int, int] = {}
        for c in cells:
            for top in c.connects:
                counts[top] = counts.get(top, 0) + 1
        boundary = tuple(sorted(t for t, k in counts.items() if k % 2))
    else:
        # violated plaquettes of the complementary color pair
        boundary = []
        comp = "".join(c for c in colex.colors if c not in colors)
        for p in colex.plaquettes:
            if p.colors != comp:
                continue
            if (p.support & support).bit_count() % 2:
                boundary.append(p.index)
        boundary = tuple(boundary)
    return CellSupport(
        colors=colors,
        kind=kind,
        cell_ids=tuple(ids),
        qubits=BinVec(colex.n_qubits, support),
        closed=not boundary,
        boundary_cells=boundary,
    )


def _edge_path(colex: Colex, colors: str, start: int, end: int) -> tuple[int, ...]:
    """Shortest walk of `colors`-edges between two complementary top cells."""
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in colex.edges:
        if e.colors != colors:
            continue
        a, b = e.connects
        adj.setdefault(a, []).append((b, e.index))
        adj.setdefault(b, []).append((a, e.index))
    if start not in adj:
        raise ValueError(f"top cell {start} has no incident {colors}-edges")
    prev: dict[int, tuple[int, int]] = {start: (-1, -1)}
    queue = [start]
    while queue:
        nxt = []
        for u in queue:
            for v, eid in adj.get(u, ()):
                if v not in prev:
                    prev[v] = (u, eid)
                    nxt.append(v)
        if end in prev:
            break
        queue = nxt
    if end not in prev:
        raise ValueError(f"no {colors}-path between cells {start} and {end}")
    path = []
    cur = end
    while cur != start:
        u, eid = prev[cur]
        path.append(eid)
        cur = u
    return tuple(reversed(path))
