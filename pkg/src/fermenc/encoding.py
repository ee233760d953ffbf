"""Shared container for fermion-to-qubit encodings on hopping graphs.

An Encoding maps each vertex k to a Hermitian occupation-parity operator
(vertex op) and each oriented edge (j,k) to a Hermitian hopping
generator (edge op, antisymmetric under orientation reversal), together
with an abelian stabilizer group that commutes with all of them.  The
defining contract, checked by :func:`verify_encoding`, is that the qubit
images reproduce the quadratic Majorana commutation algebra exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import InvariantViolation
from .lattice import HoppingGraph, cycle_basis
from .majorana import commutation_sign, edge_generator, vertex_generator
from .pauli import MEMBER, PauliString, Phase, StabilizerGroup, parse_pauli

ENCODING_SCHEMA = "fermenc/encoding/v1"

EVEN = "even"
ODD = "odd"

# Stabilizer tags marking generators that arise as closed-loop products
# of edge operators (as opposed to, say, boundary or parity generators).
LOOP_TAGS = {"face", "winding", "cycle"}


@dataclass
class Encoding:
    """Qubit images of the vertex/edge generator algebra on a graph."""

    kind: str
    graph: HoppingGraph
    n_qubits: int
    qubit_labels: list[str]
    vertex_ops: list[PauliString]  # one per vertex
    edge_ops: dict[int, PauliString]  # edge index -> op along (tail, head)
    stabilizers: StabilizerGroup
    parity_sector: str = EVEN
    qubit_adjacency: list[set[int]] | None = field(default=None, repr=False)
    # one label per stabilizer generator ("face", "winding", "boundary",
    # "cycle"); None when the generators have no geometric role
    stabilizer_tags: list[str] | None = None

    def __post_init__(self):
        if self.stabilizer_tags is not None and len(
            self.stabilizer_tags
        ) != len(self.stabilizers.generators):
            raise InvariantViolation(
                "stabilizer_tags must label every generator"
            )

    def vertex_op(self, k: int) -> PauliString:
        return self.vertex_ops[k]

    def edge_op(self, j: int, k: int) -> PauliString:
        """Edge operator for the oriented edge (j,k); reversing the
        orientation flips the sign."""
        idx = self.graph.edge_between(j, k)
        op = self.edge_ops[idx]
        e = self.graph.edges[idx]
        if (j, k) == (e.tail, e.head):
            return op
        return op.with_phase(Phase(op.phase.k + 2))

    def operator_weights(self) -> dict[str, object]:
        """Weight summary over vertex ops, edge ops, and stabilizers."""
        vertex = sorted({p.weight for p in self.vertex_ops})
        edge = sorted({p.weight for p in self.edge_ops.values()})
        stab = sorted({p.weight for p in self.stabilizers.generators})
        return {
            "vertex_weights": vertex,
            "edge_weights": edge,
            "stabilizer_weights": stab,
        }

    def render_labels(self) -> list[str]:
        return list(self.qubit_labels)

    # ---------------------------------------------------- serialization

    def to_json_dict(self) -> dict:
        labels = self.qubit_labels
        return {
            "schema": ENCODING_SCHEMA,
            "kind": self.kind,
            "parity_sector": self.parity_sector,
            "n_qubits": self.n_qubits,
            "qubit_labels": labels,
            "graph": self.graph.to_json_dict(),
            "vertex_ops": [p.render(labels) for p in self.vertex_ops],
            "edge_ops": {
                str(i): p.render(labels) for i, p in self.edge_ops.items()
            },
            "stabilizers": [
                p.render(labels) for p in self.stabilizers.generators
            ],
            "stabilizer_tags": self.stabilizer_tags,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Encoding":
        if doc.get("schema") != ENCODING_SCHEMA:
            raise InvariantViolation(
                f"expected schema {ENCODING_SCHEMA}, got {doc.get('schema')!r}"
            )
        graph = HoppingGraph.from_json_dict(doc["graph"])
        n = doc["n_qubits"]
        labels = list(doc["qubit_labels"])
        stabs = [parse_pauli(s, n, labels) for s in doc["stabilizers"]]
        return cls(
            kind=doc["kind"],
            graph=graph,
            n_qubits=n,
            qubit_labels=labels,
            vertex_ops=[parse_pauli(s, n, labels) for s in doc["vertex_ops"]],
            edge_ops={
                int(i): parse_pauli(s, n, labels)
                for i, s in doc["edge_ops"].items()
            },
            stabilizers=StabilizerGroup(stabs, n=n),
            parity_sector=doc["parity_sector"],
            stabilizer_tags=doc.get("stabilizer_tags"),
        )

    @classmethod
    def from_json(cls, text: str) -> "Encoding":
        return cls.from_json_dict(json.loads(text))

    def adjacency(self) -> list[set[int]]:
        """Geometric adjacency between qubits (used for locality
        measures); defaults to edges sharing a lattice vertex."""
        if self.qubit_adjacency is not None:
            return self.qubit_adjacency
        return self.graph.edge_adjacency()


def loop_stabilizer(enc: Encoding, path) -> PauliString:
    """(-i)^l times the edge-op product along a closed vertex path; by
    the loop identity this acts as ±1 on the encoded algebra."""
    if len(path) < 2 or path[0] != path[-1]:
        raise InvariantViolation("path must be closed (first == last vertex)")
    steps = list(zip(path, path[1:]))
    acc = PauliString.identity(enc.n_qubits).with_phase(Phase(-len(steps)))
    for a, b in steps:
        acc = acc * enc.edge_op(a, b)
    return acc


def verify_loop_conditions(enc: Encoding, paths=None) -> int:
    """Check the loop identities: around every closed path, the product
    of edge images (with the phase convention of :func:`loop_stabilizer`)
    must lie in the stabilizer group with sign exactly +1.

    ``paths`` defaults to a cycle basis of the real edges; callers may
    pass extra composite loops for a stronger phase check.  Returns the
    number of loops checked.
    """
    if paths is None:
        paths = cycle_basis(enc.graph).paths
    for path in paths:
        op = loop_stabilizer(enc, path)
        if enc.stabilizers.contains(op) != MEMBER:
            raise InvariantViolation(
                f"loop product along {list(path)} is not a stabilizer"
            )
    return len(paths)


def generator_image(enc: Encoding, gen) -> PauliString:
    """Qubit image of an abstract vertex/edge generator."""
    if gen.kind == "vertex":
        return enc.vertex_ops[gen.vertices[0]]
    return enc.edge_op(*gen.vertices)


def piece_image(enc: Encoding, piece) -> PauliString:
    """Qubit image of one expanded Hamiltonian-term summand, phase
    included; the full summand is ``piece.magnitude * piece_image(...)``."""
    acc = PauliString.identity(enc.n_qubits).with_phase(piece.phase)
    for g in piece.generators:
        acc = acc * generator_image(enc, g)
    return acc


def _oriented_pairs(enc: Encoding):
    for i in sorted(enc.edge_ops):
        e = enc.graph.edges[i]
        yield (e.tail, e.head, enc.edge_ops[i])


def verify_encoding(enc: Encoding) -> dict:
    """Exhaustively check that the encoding realizes the generator
    algebra; raises InvariantViolation naming the first failure.

    Checks: Hermitian self-inverse generators, edge antisymmetry by
    construction, the full pairwise commutation pattern against the
    abstract Majorana generators, stabilizer commutation with every
    generator, and stabilizer phases.
    """
    g = enc.graph
    nv = g.n_vertices
    named: list[tuple[str, object, PauliString]] = []
    for k, op in enumerate(enc.vertex_ops):
        named.append((f"vertex {k}", vertex_generator(k, nv).op, op))
    for tail, head, op in _oriented_pairs(enc):
        named.append(
            (f"edge ({tail},{head})", edge_generator(tail, head, nv).op, op)
        )

    for label, _, op in named:
        if not op.is_hermitian:
            raise InvariantViolation(f"{label} image is not Hermitian")
        if not (op * op).is_identity:
            raise InvariantViolation(f"{label} image does not square to +1")

    pairs_checked = 0
    for a in range(len(named)):
        la, abs_a, im_a = named[a]
        for b in range(a + 1, len(named)):
            lb, abs_b, im_b = named[b]
            want = commutation_sign(abs_a, abs_b) == 1
            got = im_a.commutes(im_b)
            if want != got:
                raise InvariantViolation(
                    f"commutation mismatch between {la} and {lb}: "
                    f"abstract {'commute' if want else 'anticommute'}, "
                    f"images {'commute' if got else 'anticommute'}"
                )
            pairs_checked += 1

    for s_idx, s in enumerate(enc.stabilizers.generators):
        if not s.is_hermitian:
            raise InvariantViolation(f"stabilizer {s_idx} has complex phase")
        for label, _, op in named:
            if not s.commutes(op):
                raise InvariantViolation(
                    f"stabilizer {s_idx} anticommutes with {label}"
                )

    # the product of all vertex ops fixes the encoded parity sector
    total = PauliString.identity(enc.n_qubits)
    for op in enc.vertex_ops:
        total = total * op
    sector = None
    if total == PauliString.identity(enc.n_qubits):
        sector = EVEN
    elif total == PauliString.identity(enc.n_qubits).with_phase(Phase(2)):
        sector = ODD
    return {
        "generators": len(named),
        "pairs_checked": pairs_checked,
        "stabilizer_rank": enc.stabilizers.rank,
        "parity_product": sector,
        "ok": True,
    }
