"""Rewriting encodings in place: Majorana-frame changes and targeted
single-logical edits.

Both operations take an existing :class:`~fermenc.encoding.Encoding` and
return a new one over the same qubits.  A frame change rewrites every
generator image through a linear substitution of Majorana modes and
leaves the stabilizer group untouched; a logical edit multiplies one
generator by a chosen Pauli and repairs the rest of the algebra with a
stabilizer, then regenerates the loop stabilizers from the new edge
operators.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import gf2
from .encoding import LOOP_TAGS, Encoding, loop_stabilizer, verify_encoding
from .errors import InvariantViolation
from .lattice import cycle_basis, spanning_tree
from .majorana import MajoranaOperator
from .pauli import PauliString, Phase, StabilizerGroup


# ------------------------------------------------------------------
# images of arbitrary even Majorana words
# ------------------------------------------------------------------


def _tree_path(tree, j: int, k: int) -> list[int]:
    """Vertex path j -> k through the spanning tree."""
    up_j = tree.path_to_root(j)
    up_k = tree.path_to_root(k)
    common = {v: i for i, v in enumerate(up_k)}
    for i, v in enumerate(up_j):
        if v in common:
            return up_j[: i + 1] + up_k[: common[v]][::-1]
    raise InvariantViolation("spanning tree does not connect the vertices")


class WordImager:
    """Maps even-weight Majorana operators to their qubit images under a
    fixed encoding, extending the generator images multiplicatively.

    Non-adjacent quadratic terms route through a spanning tree of the
    graph, so every even word gets an exact image, phase included.
    """

    def __init__(self, enc: Encoding):
        self.enc = enc
        self._tree = spanning_tree(enc.graph)
        self._pair_cache: dict[tuple[int, int], PauliString] = {}

    def _even_pair(self, j: int, k: int) -> PauliString:
        """Image of i f_2j f_2k for distinct sites j, k."""
        key = (j, k)
        cached = self._pair_cache.get(key)
        if cached is not None:
            return cached
        enc = self.enc
        try:
            out = enc.edge_op(j, k)
        except InvariantViolation:
            path = _tree_path(self._tree, j, k)
            # i f_2j f_2k = (-i)^(L-1) * prod of adjacent quadratics
            out = PauliString.identity(enc.n_qubits).with_phase(
                Phase(-(len(path) - 2))
            )
            for a, b in zip(path, path[1:]):
                out = out * enc.edge_op(a, b)
        self._pair_cache[key] = out
        return out

    def quadratic(self, a: int, b: int) -> PauliString:
        """Image of i f_a f_b for raw mode indices a < b."""
        if not a < b:
            raise InvariantViolation("mode indices must satisfy a < b")
        enc = self.enc
        j, oa = divmod(a, 2)
        k, ob = divmod(b, 2)
        if j == k:
            return enc.vertex_ops[j]
        # f_(2j+o) = (i eta_j)^o f_2j, and eta factors commute past
        # disjoint modes, so  i f_a f_b = i^(oa+ob) eta_j^oa eta_k^ob
        # (i f_2j f_2k)
        out = PauliString.identity(enc.n_qubits).with_phase(Phase(oa + ob))
        if oa:
            out = out * enc.vertex_ops[j]
        if ob:
            out = out * enc.vertex_ops[k]
        return out * self._even_pair(j, k)

    def image(self, op: MajoranaOperator) -> PauliString:
        """Qubit image of an even-weight Majorana operator."""
        if op.weight % 2:
            raise InvariantViolation(
                "only even Majorana operators have encoded images"
            )
        if op.n_modes != self.enc.graph.n_vertices:
            raise InvariantViolation(
                f"operator acts on {op.n_modes} modes, encoding has "
                f"{self.enc.graph.n_vertices}"
            )
        # f_a1 ... f_a2m = (-i)^m * prod over pairs of (i f f)
        word = op.support
        m = len(word) // 2
        out = PauliString.identity(self.enc.n_qubits).with_phase(
            op.phase * Phase(-m)
        )
        for t in range(m):
            out = out * self.quadratic(word[2 * t], word[2 * t + 1])
        return out


def word_image(enc: Encoding, op: MajoranaOperator) -> PauliString:
    """One-shot form of :meth:`WordImager.image`."""
    return WordImager(enc).image(op)


# ------------------------------------------------------------------
# linear Majorana-frame changes
# ------------------------------------------------------------------


@dataclass(frozen=True)
class MajoranaTransform:
    """A substitution f_a -> phase_a * prod_{b in rows[a]} f_b.

    Validity (checked by :meth:`validate`): the matrix of rows is square
    and invertible over GF(2), rows are pairwise orthogonal, all row
    weights share one parity, and every image squares to +1.  Together
    these make the substituted modes a faithful Majorana set; since an
    invertible pairwise-orthogonal set cannot be all even, valid rows
    are always odd-weight.
    """

    n_modes: int
    rows: tuple[tuple[int, ...], ...]
    phases: tuple[Phase, ...] = ()

    def __post_init__(self):
        if not self.phases:
            object.__setattr__(
                self, "phases", tuple(Phase(0) for _ in self.rows)
            )

    @classmethod
    def identity(cls, n_modes: int) -> "MajoranaTransform":
        return cls(n_modes, tuple((a,) for a in range(2 * n_modes)))

    @classmethod
    def from_permutation(cls, perm: list[int], n_modes: int):
        """Relabel modes by a permutation of 0..2n-1."""
        if sorted(perm) != list(range(2 * n_modes)):
            raise InvariantViolation("not a permutation of the mode indices")
        return cls(n_modes, tuple((p,) for p in perm))

    def mode_operator(self, a: int) -> MajoranaOperator:
        return MajoranaOperator(
            self.n_modes, tuple(sorted(self.rows[a])), self.phases[a]
        )

    def validate(self) -> None:
        n2 = 2 * self.n_modes
        if len(self.rows) != n2 or len(self.phases) != n2:
            raise InvariantViolation(
                f"need {n2} rows and phases, got {len(self.rows)}"
            )
        sets = [frozenset(r) for r in self.rows]
        for a, row in enumerate(self.rows):
            if len(sets[a]) != len(row):
                raise InvariantViolation(f"row {a} repeats a mode index")
            if row and not all(0 <= b < n2 for b in row):
                raise InvariantViolation(f"row {a} has an index outside the modes")
            if not row:
                raise InvariantViolation(f"row {a} is empty")
        parities = {len(r) % 2 for r in self.rows}
        if len(parities) != 1:
            raise InvariantViolation("row weights must all share one parity")
        for a in range(n2):
            for b in range(a + 1, n2):
                if len(sets[a] & sets[b]) % 2:
                    raise InvariantViolation(
                        f"rows {a} and {b} are not orthogonal"
                    )
        bitrows = [sum(1 << b for b in r) for r in self.rows]
        if gf2.rank(bitrows) != n2:
            raise InvariantViolation("transform matrix is singular over GF(2)")
        for a in range(n2):
            u = self.mode_operator(a)
            if not (u * u).is_identity:
                raise InvariantViolation(f"image of mode {a} does not square to +1")


def apply_majorana_transform(
    enc: Encoding, transform: MajoranaTransform
) -> Encoding:
    """Rewrite every generator image through the substitution; the
    stabilizer group is untouched because substituted words differ from
    the originals by elements of the encoded algebra only."""
    transform.validate()
    g = enc.graph
    if transform.n_modes != g.n_vertices:
        raise InvariantViolation(
            f"transform acts on {transform.n_modes} modes, encoding has "
            f"{g.n_vertices}"
        )
    imager = WordImager(enc)
    i_phase = Phase(1)

    def substituted(a: int, b: int) -> PauliString:
        word = transform.mode_operator(a) * transform.mode_operator(b)
        return imager.image(word.scaled(i_phase))

    vertex_ops = [
        substituted(2 * k, 2 * k + 1) for k in range(g.n_vertices)
    ]
    edge_ops = {
        i: substituted(2 * e.tail, 2 * e.head)
        for i, e in enumerate(g.edges)
        if i in enc.edge_ops
    }
    return Encoding(
        kind=enc.kind,
        graph=g,
        n_qubits=enc.n_qubits,
        qubit_labels=list(enc.qubit_labels),
        vertex_ops=vertex_ops,
        edge_ops=edge_ops,
        stabilizers=enc.stabilizers,
        parity_sector=enc.parity_sector,
        qubit_adjacency=enc.qubit_adjacency,
        stabilizer_tags=enc.stabilizer_tags,
    )


# ------------------------------------------------------------------
# targeted logical edits
# ------------------------------------------------------------------


def _hermitian_fix(p: PauliString) -> PauliString:
    if p.is_hermitian:
        return p
    out = p.with_phase(p.phase * Phase(1))
    if not out.is_hermitian:
        raise InvariantViolation("operator cannot be made Hermitian")
    return out


def modify_logical(
    enc: Encoding, delta: PauliString, target: int | tuple[int, int]
) -> Encoding:
    """Multiply one generator image by ``delta`` and repair the rest.

    ``target`` is a vertex index or an edge (j, k).  ``delta`` must
    anticommute with at least one stabilizer generator S; every other
    logical generator that anticommutes with delta is multiplied by S,
    which restores the full commutation pattern.  Loop stabilizers are
    then regenerated from the new edge operators.

    The repair stabilizer is chosen among the anticommuting generators
    so that the regenerated loop group keeps its rank (the loop whose
    product equals S degenerates to the identity unless it runs through
    the edit); if no choice does, the edit has no valid repair and an
    InvariantViolation reports the rank collapse.
    """
    if delta.n != enc.n_qubits:
        raise InvariantViolation(
            f"delta acts on {delta.n} qubits, encoding has {enc.n_qubits}"
        )
    if enc.stabilizer_tags is not None and not set(
        enc.stabilizer_tags
    ) <= LOOP_TAGS:
        raise InvariantViolation(
            "stabilizer group is not generated by graph loops alone; "
            "cannot regenerate it from edge operators"
        )
    candidates = [
        s for s in enc.stabilizers.generators if not s.commutes(delta)
    ]
    if not candidates:
        raise InvariantViolation(
            "delta commutes with every stabilizer, so it maps the encoded "
            "algebra to itself and there is nothing to modify"
        )
    g = enc.graph
    if isinstance(target, int):
        if not 0 <= target < g.n_vertices:
            raise InvariantViolation(f"vertex {target} out of range")
        target_key = ("vertex", target)
    else:
        target_key = ("edge", g.edge_between(*target))
    basis = cycle_basis(g)

    def rewritten(repair: PauliString) -> Encoding:
        def rewrite(key, op: PauliString) -> PauliString:
            if key == target_key:
                return _hermitian_fix(op * delta)
            if not op.commutes(delta):
                return op * repair
            return op

        out = Encoding(
            kind=enc.kind,
            graph=g,
            n_qubits=enc.n_qubits,
            qubit_labels=list(enc.qubit_labels),
            vertex_ops=[
                rewrite(("vertex", k), op)
                for k, op in enumerate(enc.vertex_ops)
            ],
            edge_ops={
                i: rewrite(("edge", i), op)
                for i, op in enc.edge_ops.items()
            },
            stabilizers=StabilizerGroup([], n=enc.n_qubits),
            parity_sector=enc.parity_sector,
            qubit_adjacency=enc.qubit_adjacency,
        )
        stabs = [loop_stabilizer(out, path) for path in basis]
        out.stabilizers = StabilizerGroup(stabs, n=enc.n_qubits, validate=False)
        out.stabilizer_tags = list(basis.kinds)
        return out

    for repair in candidates:
        out = rewritten(repair)
        if out.stabilizers.rank == enc.stabilizers.rank:
            verify_encoding(out)
            return out
    raise InvariantViolation(
        "every repair choice collapses the independent stabilizer count "
        f"below {enc.stabilizers.rank}; the edit has no valid repair"
    )
