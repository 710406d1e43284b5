"""Combinatorial models of the eleven Archimedean tilings as quantum graphs.

A tiling is described by a fundamental domain: a set of edges (all of
the same length) plus the vertices of the domain, each vertex listing
the edge endpoints attached to it.  An attachment can carry a Floquet
phase (p1, p2), meaning the edge endpoint belongs to the copy of the
domain shifted by p1 and p2 lattice periods; its endpoint values enter
the vertex conditions multiplied by exp(i(p1*theta1 + p2*theta2)).

Five tilings (trH, SS, RTH, ST, trTH) carry complete vertex models,
enough to assemble the 2I x 2I characteristic system.  The remaining
six are registered with their names, sizes and dispersion relations
only; asking for their vertex model raises UnsupportedTilingError.

Edge indices are 1-based throughout this module, matching the usual
labelling of fundamental-domain figures.
"""

import json
from dataclasses import asdict, dataclass
from enum import Enum

__all__ = [
    "End",
    "Attachment",
    "VertexSpec",
    "TilingSpec",
    "UnsupportedTilingError",
    "TILING_NAMES",
    "FULL_MODEL_NAMES",
    "get_tiling",
    "validate_tiling",
    "tiling_to_json",
]


class End(Enum):
    """Which endpoint of an edge an attachment refers to."""

    START = "Start"
    END = "End"


class UnsupportedTilingError(ValueError):
    """Raised when an operation needs a vertex model the tiling lacks."""


@dataclass(frozen=True)
class Attachment:
    edge: int
    end: End
    phase: tuple = (0, 0)
    kirchhoff_sign: int = 1


@dataclass(frozen=True)
class VertexSpec:
    name: str
    attachments: tuple

    @property
    def degree(self):
        return len(self.attachments)


@dataclass(frozen=True)
class TilingSpec:
    """One Archimedean tiling.

    ``lattice_vectors`` are unit-normalised period directions recorded
    for documentation; no geometric computation uses them.  ``vertices``
    is empty for the six tilings that only carry a dispersion relation.
    """

    name: str
    vertex_configuration: str
    n_edges: int
    vertices: tuple
    lattice_vectors: tuple

    @property
    def matrix_dim(self):
        return 2 * self.n_edges

    @property
    def has_vertex_model(self):
        return len(self.vertices) > 0


_S = End.START
_E = End.END

_HEX = ((1.0, 0.0), (0.5, 0.8660254037844386))
_SQR = ((1.0, 0.0), (0.0, 1.0))


def _v(name, *atts):
    return VertexSpec(name=name, attachments=tuple(
        Attachment(edge=e, end=end, phase=ph, kirchhoff_sign=sg)
        for (e, end, ph, sg) in atts
    ))


# Truncated hexagonal (3.12.12): 9 edges, 6 degree-3 vertices.  Two
# triangles {1,6,7} and {3,8,9} joined by the linking edges 2, 4, 5.
# Attachment order is chosen so that pairwise-chained continuity rows
# reproduce the published characteristic matrix up to row signs.
_TRH = TilingSpec(
    name="trH",
    vertex_configuration="3.12.12",
    n_edges=9,
    lattice_vectors=_HEX,
    vertices=(
        _v("v1", (5, _S, (0, 0), 1), (1, _S, (0, 0), 1), (6, _S, (0, 0), 1)),
        _v("v2", (7, _E, (0, 0), 1), (1, _E, (0, 0), 1), (2, _E, (0, 0), 1)),
        _v("v3", (4, _S, (0, 1), 1), (7, _S, (0, 0), 1), (6, _E, (0, 0), -1)),
        _v("v4", (3, _S, (0, 0), 1), (2, _S, (0, 0), 1), (8, _S, (0, 0), 1)),
        _v("v5", (4, _E, (0, 0), 1), (3, _E, (0, 0), 1), (9, _E, (0, 0), 1)),
        _v("v6", (5, _E, (-1, 0), 1), (9, _S, (0, 0), -1), (8, _E, (0, 0), 1)),
    ),
)

# Snub square (3.3.4.3.4): 10 edges, 4 degree-5 vertices.
_SS = TilingSpec(
    name="SS",
    vertex_configuration="3.3.4.3.4",
    n_edges=10,
    lattice_vectors=_SQR,
    vertices=(
        _v("v1", (1, _E, (0, 0), 1), (2, _E, (0, 0), 1), (5, _E, (0, 0), 1),
           (6, _S, (0, 0), -1), (9, _S, (1, 0), -1)),
        _v("v2", (2, _S, (0, 0), -1), (3, _E, (0, 0), 1), (6, _E, (0, 1), 1),
           (8, _S, (1, 1), -1), (10, _E, (1, 0), 1)),
        _v("v3", (1, _S, (0, 0), 1), (3, _S, (0, 0), 1), (4, _S, (0, 0), 1),
           (7, _S, (0, 1), 1), (10, _S, (0, 0), 1)),
        _v("v4", (4, _E, (0, 0), 1), (5, _S, (0, 0), -1), (7, _E, (0, 0), 1),
           (8, _E, (0, 0), 1), (9, _E, (0, 0), 1)),
    ),
)

# Rhombitrihexagonal (3.4.6.4): 12 edges, 6 degree-4 vertices.
_RTH = TilingSpec(
    name="RTH",
    vertex_configuration="3.4.6.4",
    n_edges=12,
    lattice_vectors=_HEX,
    vertices=(
        _v("v1", (2, _S, (0, 0), -1), (3, _E, (0, 0), 1), (4, _E, (0, 0), 1),
           (7, _S, (0, 1), -1)),
        _v("v2", (1, _E, (0, 0), 1), (2, _E, (0, 0), 1), (12, _E, (0, 0), 1),
           (9, _E, (0, 1), 1)),
        _v("v3", (1, _S, (0, 0), 1), (3, _S, (0, 0), 1), (5, _S, (0, 0), 1),
           (6, _S, (0, 0), 1)),
        _v("v4", (6, _E, (0, 0), 1), (7, _E, (0, 0), 1), (8, _E, (0, 0), 1),
           (11, _E, (0, 0), 1)),
        _v("v5", (4, _S, (1, 0), 1), (10, _S, (0, 0), 1), (11, _S, (0, 0), 1),
           (12, _S, (0, 0), 1)),
        _v("v6", (8, _S, (0, 0), -1), (9, _S, (0, 0), -1), (10, _E, (0, 0), 1),
           (5, _E, (1, 0), 1)),
    ),
)

# Snub trihexagonal (3.3.3.3.6): 15 edges, 6 degree-5 vertices.
_ST = TilingSpec(
    name="ST",
    vertex_configuration="3.3.3.3.6",
    n_edges=15,
    lattice_vectors=_HEX,
    vertices=(
        _v("v1", (1, _E, (0, 0), 1), (6, _E, (0, 0), 1), (15, _E, (0, 0), 1),
           (12, _E, (0, 0), 1), (13, _E, (0, 0), 1)),
        _v("v2", (6, _S, (0, 0), 1), (5, _S, (0, 0), 1), (10, _S, (0, 1), 1),
           (14, _E, (0, 0), -1), (9, _E, (0, 1), -1)),
        _v("v3", (4, _E, (0, 0), 1), (5, _E, (0, 0), 1), (7, _E, (-1, 1), 1),
           (15, _S, (-1, 1), -1), (11, _S, (0, 1), -1)),
        _v("v4", (3, _S, (0, 0), 1), (4, _S, (0, 0), 1), (13, _S, (-1, 0), 1),
           (14, _S, (-1, 0), 1), (8, _E, (-1, 1), -1)),
        _v("v5", (2, _E, (0, 0), 1), (3, _E, (0, 0), 1), (10, _E, (0, 0), 1),
           (11, _E, (0, 0), 1), (12, _S, (-1, 0), -1)),
        _v("v6", (1, _S, (0, 0), 1), (2, _S, (0, 0), 1), (7, _S, (0, 0), 1),
           (8, _S, (0, 0), 1), (9, _S, (0, 0), 1)),
    ),
)

# Truncated trihexagonal (4.6.12): 18 edges, 12 degree-3 vertices, all
# Kirchhoff signs positive (each vertex is all-Start or all-End).
_TRTH = TilingSpec(
    name="trTH",
    vertex_configuration="4.6.12",
    n_edges=18,
    lattice_vectors=_HEX,
    vertices=(
        _v("v1", (1, _S, (0, 0), 1), (2, _S, (0, 0), 1), (10, _S, (0, 0), 1)),
        _v("v2", (2, _E, (0, 0), 1), (3, _E, (0, 0), 1), (9, _E, (0, 0), 1)),
        _v("v3", (3, _S, (0, 0), 1), (4, _S, (0, 0), 1), (5, _S, (0, 0), 1)),
        _v("v4", (1, _E, (0, 0), 1), (4, _E, (0, 0), 1), (14, _E, (0, 0), 1)),
        _v("v5", (18, _S, (0, 0), 1), (13, _S, (0, 0), 1), (14, _S, (0, 0), 1)),
        _v("v6", (12, _E, (0, 0), 1), (13, _E, (0, 0), 1), (17, _E, (0, 0), 1)),
        _v("v7", (15, _S, (0, 0), 1), (12, _S, (0, 0), 1), (11, _S, (0, 0), 1)),
        _v("v8", (16, _E, (0, 0), 1), (11, _E, (0, 0), 1), (10, _E, (0, 0), 1)),
        _v("v9", (9, _S, (0, 0), 1), (17, _S, (1, 0), 1), (8, _S, (0, 0), 1)),
        _v("v10", (8, _E, (0, 0), 1), (7, _E, (0, 0), 1), (18, _E, (1, 0), 1)),
        _v("v11", (7, _S, (0, 0), 1), (16, _S, (0, 1), 1), (6, _S, (0, 0), 1)),
        _v("v12", (5, _E, (0, 0), 1), (6, _E, (0, 0), 1), (15, _E, (0, 1), 1)),
    ),
)

_PRIOR = [
    ("T", "3.3.3.3.3.3", 3, _HEX),
    ("ET", "3.3.3.4.4", 5, _SQR),
    ("TH", "3.6.3.6", 6, _HEX),
    ("S", "4.4.4.4", 2, _SQR),
    ("trS", "4.8.8", 6, _SQR),
    ("H", "6.6.6", 3, _HEX),
]

_REGISTRY = {t.name: t for t in (_TRH, _SS, _RTH, _ST, _TRTH)}
for _name, _cfg, _ne, _lat in _PRIOR:
    _REGISTRY[_name] = TilingSpec(
        name=_name, vertex_configuration=_cfg, n_edges=_ne,
        vertices=(), lattice_vectors=_lat,
    )

TILING_NAMES = ("T", "ST", "ET", "SS", "TH", "RTH", "trH", "S", "trTH", "trS", "H")
FULL_MODEL_NAMES = ("trH", "SS", "RTH", "ST", "trTH")

_LOWER = {n.lower(): n for n in TILING_NAMES}


def get_tiling(name):
    """Look up a tiling by name, case-insensitively."""
    key = _LOWER.get(str(name).strip().lower())
    if key is None:
        raise KeyError(f"unknown tiling {name!r}; known: {', '.join(TILING_NAMES)}")
    return _REGISTRY[key]


def validate_tiling(spec):
    """Structural diagnostics; returns a list of problem strings.

    An empty list means the model is consistent: every edge appears
    exactly once with each endpoint, Kirchhoff signs are +-1, phases
    lie in the allowed integer window, and the vertex degrees sum to
    the matrix dimension.
    """
    problems = []
    if not spec.has_vertex_model:
        return problems
    starts = {}
    ends = {}
    degree_sum = 0
    for v in spec.vertices:
        degree_sum += v.degree
        for att in v.attachments:
            if not (1 <= att.edge <= spec.n_edges):
                problems.append(f"{v.name}: edge index {att.edge} out of range")
                continue
            side = starts if att.end is End.START else ends
            if att.edge in side:
                problems.append(
                    f"edge {att.edge} has its {att.end.value} attached twice "
                    f"({side[att.edge]} and {v.name})"
                )
            side[att.edge] = v.name
            if att.kirchhoff_sign not in (-1, 1):
                problems.append(f"{v.name}: bad Kirchhoff sign {att.kirchhoff_sign}")
            if any(p not in (-1, 0, 1, 2) for p in att.phase):
                problems.append(f"{v.name}: phase {att.phase} outside allowed set")
    for e in range(1, spec.n_edges + 1):
        if e not in starts:
            problems.append(f"edge {e} has no Start attachment")
        if e not in ends:
            problems.append(f"edge {e} has no End attachment")
    if degree_sum != spec.matrix_dim:
        problems.append(
            f"vertex degrees sum to {degree_sum}, expected {spec.matrix_dim}"
        )
    return problems


def tiling_to_json(spec, indent=2):
    """Serialise a TilingSpec to JSON (enums as their string values)."""
    d = asdict(spec)
    for v in d["vertices"]:
        for att in v["attachments"]:
            att["end"] = att["end"].value if isinstance(att["end"], End) else att["end"]
            att["phase"] = list(att["phase"])
    d["matrix_dim"] = spec.matrix_dim
    d["lattice_vectors"] = [list(x) for x in spec.lattice_vectors]
    return json.dumps(d, indent=indent, sort_keys=True)
