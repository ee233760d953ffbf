import random

import pytest

from fermenc.bksf import bksf_encode
from fermenc.encoding import verify_encoding
from fermenc.errors import InvariantViolation
from fermenc.lattice import OPEN, TORUS, build_lattice
from fermenc.majorana import (
    MajoranaOperator,
    edge_generator,
    vertex_generator,
)
from fermenc.pauli import MEMBER, PauliString, Phase
from fermenc.transforms import (
    MajoranaTransform,
    WordImager,
    apply_majorana_transform,
    modify_logical,
    word_image,
)


@pytest.fixture(scope="module")
def torus4():
    return bksf_encode(build_lattice(4, 4, TORUS))


@pytest.fixture(scope="module")
def open23():
    return bksf_encode(build_lattice(2, 3, OPEN))


# ---------------------------------------------------------- word images


def test_word_image_reproduces_vertex_generators(open23):
    g = open23.graph
    imager = WordImager(open23)
    for k in range(g.n_vertices):
        abstract = vertex_generator(k, g.n_vertices).op
        assert imager.image(abstract) == open23.vertex_ops[k]


def test_word_image_reproduces_edge_generators_both_orientations(open23):
    g = open23.graph
    imager = WordImager(open23)
    for e in g.edges:
        fwd = edge_generator(e.tail, e.head, g.n_vertices).op
        rev = edge_generator(e.head, e.tail, g.n_vertices).op
        assert imager.image(fwd) == open23.edge_op(e.tail, e.head)
        assert imager.image(rev) == open23.edge_op(e.head, e.tail)


def test_word_image_of_pure_phase_is_phased_identity(open23):
    n = open23.graph.n_vertices
    for k in (0, 2):
        op = MajoranaOperator(n, (), Phase(k))
        assert word_image(open23, op) == PauliString.identity(
            open23.n_qubits
        ).with_phase(Phase(k))


def test_word_image_rejects_odd_words(open23):
    n = open23.graph.n_vertices
    with pytest.raises(InvariantViolation):
        word_image(open23, MajoranaOperator(n, (3,)))


def test_word_image_multiplicative_up_to_stabilizers(torus4):
    """The pairing/tree decomposition is canonical, so products may pick
    up loop stabilizers but nothing else; phases must match exactly."""
    n = torus4.graph.n_vertices
    rng = random.Random(11)
    imager = WordImager(torus4)
    for _ in range(40):
        support_a = tuple(sorted(rng.sample(range(2 * n), rng.choice([2, 4, 6]))))
        support_b = tuple(sorted(rng.sample(range(2 * n), rng.choice([2, 4]))))
        a = MajoranaOperator(n, support_a, Phase(rng.randrange(4)))
        b = MajoranaOperator(n, support_b, Phase(rng.randrange(4)))
        lhs = imager.image(a * b)
        rhs = imager.image(a) * imager.image(b)
        residue = lhs * rhs.adjoint()
        assert torus4.stabilizers.contains(residue) == MEMBER


def test_word_image_commutation_matches_abstract_algebra(torus4):
    from fermenc.majorana import commutation_sign

    n = torus4.graph.n_vertices
    rng = random.Random(7)
    imager = WordImager(torus4)
    ops = []
    for _ in range(12):
        support = tuple(sorted(rng.sample(range(2 * n), rng.choice([2, 4]))))
        ops.append(MajoranaOperator(n, support))
    for i, a in enumerate(ops):
        for b in ops[i + 1 :]:
            want = commutation_sign(a, b) == 1
            assert imager.image(a).commutes(imager.image(b)) == want


# ------------------------------------------------- frame-change validity


def quartet_rows(n_modes, phase=Phase(1)):
    """Mix the first four mode indices by the weight-3 pattern (each row
    omits one index), identity elsewhere."""
    base = [(0, 1, 2), (1, 2, 3), (0, 2, 3), (0, 1, 3)]
    rows = base + [(a,) for a in range(4, 2 * n_modes)]
    phases = [phase] * 4 + [Phase(0)] * (2 * n_modes - 4)
    return MajoranaTransform(n_modes, tuple(rows), tuple(phases))


def test_identity_transform_roundtrips(open23):
    t = MajoranaTransform.identity(open23.graph.n_vertices)
    t.validate()
    out = apply_majorana_transform(open23, t)
    assert out.vertex_ops == open23.vertex_ops
    assert out.edge_ops == open23.edge_ops
    assert out.stabilizers is open23.stabilizers


def test_quartet_transform_preserves_algebra_and_stabilizers(torus4):
    t = quartet_rows(torus4.graph.n_vertices)
    out = apply_majorana_transform(torus4, t)
    assert out.stabilizers is torus4.stabilizers
    assert verify_encoding(out)["ok"]
    assert out.vertex_ops[0] != torus4.vertex_ops[0]


def test_mode_permutation_transform_preserves_algebra(open23):
    n = open23.graph.n_vertices
    perm = list(range(2 * n))
    perm[1], perm[2] = perm[2], perm[1]  # mix modes across sites 0 and 1
    t = MajoranaTransform.from_permutation(perm, n)
    out = apply_majorana_transform(open23, t)
    assert verify_encoding(out)["ok"]
    assert out.vertex_ops[0] != open23.vertex_ops[0]


def test_transform_rejects_nonorthogonal_rows():
    rows = [(0, 1, 2), (2, 3, 4)] + [(a,) for a in range(5, 8)]
    # pad to square: 4 modes -> 8 rows
    rows += [(4,), (3,), (2,)]
    t = MajoranaTransform(4, tuple(rows), tuple([Phase(1), Phase(1)] + [Phase(0)] * 6))
    with pytest.raises(InvariantViolation, match="orthogonal"):
        t.validate()


def test_transform_rejects_mixed_weight_parity():
    rows = [(0, 1), (2,)] + [(a,) for a in range(2, 8)]
    t = MajoranaTransform(4, tuple(rows))
    with pytest.raises(InvariantViolation, match="parity"):
        t.validate()


def test_transform_rejects_singular_matrix():
    # pairwise-orthogonal odd rows are automatically independent, so the
    # only way to reach the rank check is an even-weight duplicate set
    rows = [(0, 1), (0, 1), (2, 3), (2, 3), (4, 5), (4, 5), (6, 7), (6, 7)]
    t = MajoranaTransform(4, tuple(rows))
    with pytest.raises(InvariantViolation, match="singular"):
        t.validate()


def test_transform_rejects_wrong_square_phase():
    t = quartet_rows(4, phase=Phase(0))  # weight-3 words need a +/-i
    with pytest.raises(InvariantViolation, match="square"):
        t.validate()


def test_transform_rejects_repeated_index_in_row():
    rows = [(0, 0, 1)] + [(a,) for a in range(1, 8)]
    t = MajoranaTransform(4, tuple(rows))
    with pytest.raises(InvariantViolation, match="repeats"):
        t.validate()


# ------------------------------------------------------- logical edits


def test_modify_logical_single_z_keeps_algebra_and_rank(torus4):
    e0 = torus4.graph.edges[0]
    q = 0
    delta = PauliString.from_letters(torus4.n_qubits, {q: "Z"})
    out = modify_logical(torus4, delta, (e0.tail, e0.head))
    assert verify_encoding(out)["ok"]
    assert out.stabilizers.rank == torus4.stabilizers.rank
    assert out.edge_ops[0] != torus4.edge_ops[0]


def test_modify_logical_far_errors_keep_their_syndromes(torus4):
    """Editing one edge generator must not change how distant errors are
    detected: only the qubit under the edit sees different stabilizers."""
    e0 = torus4.graph.edges[0]
    q = 0
    delta = PauliString.from_letters(torus4.n_qubits, {q: "Z"})
    out = modify_logical(torus4, delta, (e0.tail, e0.head))
    for far_q in range(1, torus4.n_qubits):
        for letter in "XYZ":
            err = PauliString.from_letters(torus4.n_qubits, {far_q: letter})
            assert torus4.stabilizers.syndrome(err) == out.stabilizers.syndrome(
                err
            )
    flipped = [
        PauliString.from_letters(torus4.n_qubits, {q: letter})
        for letter in "XY"
    ]
    assert any(
        torus4.stabilizers.syndrome(e) != out.stabilizers.syndrome(e)
        for e in flipped
    )


def test_modify_logical_rejects_centralizer_delta(torus4):
    delta = torus4.stabilizers.generators[0]
    with pytest.raises(InvariantViolation, match="commutes with every"):
        modify_logical(torus4, delta, 0)


def test_modify_logical_rejects_mismatched_register(torus4):
    delta = PauliString.from_letters(3, {0: "Z"})
    with pytest.raises(InvariantViolation, match="qubits"):
        modify_logical(torus4, delta, 0)


def test_modify_logical_vertex_target_collapses_rank(torus4):
    """A vertex-targeted edit leaves no edge to absorb the delta, so the
    loop through the repair stabilizer always degenerates and the edit
    must be refused rather than silently shrinking the group."""
    q = 0
    delta = PauliString.from_letters(torus4.n_qubits, {q: "X"})
    with pytest.raises(InvariantViolation, match="collapses"):
        modify_logical(torus4, delta, 2)
