"""Auxiliary-mode encodings: interleaved-chain and four-qubit-block."""

import itertools

import numpy as np
import pytest

from fermenc.aux_fermion import (
    AUXILIARY,
    BlockLayout,
    BvcLayout,
    CORRECTABLE,
    DETECTABLE,
    UNDETECTABLE_LOGICAL,
    _block_majorana,
    block_encode,
    block_syndrome_report,
    bvc_detectability_report,
    bvc_encode,
)
from fermenc.errors import InvariantViolation
from fermenc.majorana import MajoranaOperator, jw_pauli
from fermenc.pauli import PauliString, Phase

from oracles import (
    jw_majorana_matrix,
    majorana_word_matrix,
    mat_equal,
    pauli_matrix,
)


# ------------------------------------------------ chain transform oracle


def test_chain_transform_matches_dense_matrices():
    """jw_pauli agrees with the explicit matrix representation for every
    single component and for quadratic words, phases included."""
    n_modes = 5
    for a in range(2 * n_modes):
        op = MajoranaOperator.single(a, n_modes)
        assert mat_equal(
            pauli_matrix(jw_pauli(op)), jw_majorana_matrix(a, n_modes)
        )
    for a, b in itertools.combinations(range(2 * n_modes), 2):
        word = (
            MajoranaOperator.single(a, n_modes)
            * MajoranaOperator.single(b, n_modes)
        ).scaled(Phase(1))
        dense = 1j * majorana_word_matrix([a, b], n_modes)
        assert mat_equal(pauli_matrix(jw_pauli(word)), dense)


def test_chain_transform_number_parity_is_minus_z():
    op = (
        MajoranaOperator.single(4, 4) * MajoranaOperator.single(5, 4)
    ).scaled(Phase(1))
    assert jw_pauli(op) == PauliString.from_letters(4, {2: "Z"}, -1)


# ----------------------------------------------- interleaved-chain maps


@pytest.fixture(scope="module")
def bvc33():
    return bvc_encode(BvcLayout(3, 3))


def test_bvc_rejects_degenerate_grids():
    with pytest.raises(InvariantViolation):
        BvcLayout(1, 5)
    with pytest.raises(InvariantViolation):
        BvcLayout(4, 1)


def test_bvc_horizontal_hop_images(bvc33):
    """Every horizontal bond maps to minus X(data) Z(aux) X(data) on
    three consecutive chain qubits."""
    enc, lay = bvc33, bvc33.layout
    seen = 0
    for i, e in enumerate(enc.graph.edges):
        if e.orientation != "h":
            continue
        sites = sorted(
            lay.snake_site(*divmod(v, lay.cols)) for v in e.endpoints()
        )
        a, b = sites
        assert b == a + 1
        expect = PauliString.from_letters(
            enc.n_qubits,
            {2 * a: "X", 2 * a + 1: "Z", 2 * b: "X"},
            -1,
        )
        assert enc.hop_images[i] == expect
        seen += 1
    assert seen == 6


def test_bvc_dressed_vertical_hop_images(bvc33):
    """Every vertical bond times its gauge maps to plus X(data) Y(aux)
    Y(data) X(aux) on the two endpoint sites."""
    enc, lay = bvc33, bvc33.layout
    seen = 0
    for i, e in enumerate(enc.graph.edges):
        if e.orientation != "v":
            continue
        a, b = sorted(
            lay.snake_site(*divmod(v, lay.cols)) for v in e.endpoints()
        )
        expect = PauliString.from_letters(
            enc.n_qubits,
            {2 * a: "X", 2 * a + 1: "Y", 2 * b: "Y", 2 * b + 1: "X"},
        )
        assert enc.hop_images[i] == expect
        seen += 1
    assert seen == 6


def test_bvc_gauge_pair_stabilizers(bvc33):
    """Adjacent-column gauge products collapse to the weight-6 string
    minus X(aux j) Z(data j+1) Y(aux j+1) Y(aux k-1) Z(data k) X(aux k)."""
    enc, lay = bvc33, bvc33.layout
    assert len(enc.local_stabilizer_images) == 4
    pair_index = 0
    for r in range(lay.rows - 1):
        for c in range(lay.cols - 1):
            left = enc.graph.edge_between(
                r * lay.cols + c, (r + 1) * lay.cols + c
            )
            sites = [
                lay.snake_site(*divmod(v, lay.cols))
                for v in enc.graph.edges[left].endpoints()
            ]
            right = enc.graph.edge_between(
                r * lay.cols + c + 1, (r + 1) * lay.cols + c + 1
            )
            sites += [
                lay.snake_site(*divmod(v, lay.cols))
                for v in enc.graph.edges[right].endpoints()
            ]
            j, k = min(sites), max(sites)
            expect = PauliString.from_letters(
                enc.n_qubits,
                {
                    2 * j + 1: "X",
                    2 * (j + 1): "Z",
                    2 * (j + 1) + 1: "Y",
                    2 * (k - 1) + 1: "Y",
                    2 * k: "Z",
                    2 * k + 1: "X",
                },
                -1,
            )
            assert enc.local_stabilizer_images[pair_index] == expect
            pair_index += 1


def test_bvc_images_match_dense_majorana_products():
    """On a 2x2 grid (8 qubits) every stored image equals the dense
    matrix of its defining Majorana word."""
    enc = bvc_encode(BvcLayout(2, 2))
    lay = enc.layout
    for i, e in enumerate(enc.graph.edges):
        a, b = sorted(
            lay.snake_site(*divmod(v, lay.cols)) for v in e.endpoints()
        )
        hop = 1j * majorana_word_matrix([4 * a + 1, 4 * b], lay.n_modes)
        if e.orientation == "h":
            assert mat_equal(pauli_matrix(enc.hop_images[i]), hop)
        else:
            gauge = 1j * majorana_word_matrix(
                [4 * a + 3, 4 * b + 2], lay.n_modes
            )
            assert mat_equal(pauli_matrix(enc.gauge_images[i]), gauge)
            assert mat_equal(pauli_matrix(enc.hop_images[i]), hop @ gauge)
    for v in range(lay.n_sites):
        r, c = divmod(v, lay.cols)
        s = lay.snake_site(r, c)
        num = 1j * majorana_word_matrix([4 * s, 4 * s + 1], lay.n_modes)
        assert mat_equal(pauli_matrix(enc.occupation_images[v]), num)


def test_bvc_occupation_images_are_minus_z(bvc33):
    enc, lay = bvc33, bvc33.layout
    for v in range(lay.n_sites):
        r, c = divmod(v, lay.cols)
        s = lay.snake_site(r, c)
        assert enc.occupation_images[v] == PauliString.from_letters(
            enc.n_qubits, {2 * s: "Z"}, -1
        )


def test_bvc_group_ranks(bvc33):
    # one gauge per vertical bond; pairs lose one rank per row boundary
    assert bvc33.stabilizers.rank == 6
    assert bvc33.pair_group.rank == 4


def test_bvc_serialization_shape(bvc33):
    doc = bvc33.to_json_dict()
    assert doc["schema"] == "fermenc/bvc-encoding/v1"
    assert doc["n_qubits"] == 18
    assert doc["qubit_roles"][:2] == ["data", "auxiliary"]
    assert len(doc["local_stabilizers"]) == 4
    assert doc["hop_images"]["0"].startswith("-X_d0")


# ------------------------------------- detectability census (3x3 grid)

# Chain-boundary exceptions, computed exhaustively: the snake's first
# site escapes every gauge string entirely, and the first/last auxiliary
# qubits carry orphan Majorana components.  Everything else follows the
# bulk pattern: data-Z logical, data-X/Y detectable, aux detectable.
UNDETECTABLE_FULL = {
    ("data", "X"): {0},
    ("data", "Y"): {0},
    ("data", "Z"): set(range(9)),
    ("auxiliary", "X"): {0, 8},
    ("auxiliary", "Y"): set(),
    ("auxiliary", "Z"): set(),
}
# The pair group is weaker: it also misses the data qubit at the top of
# each row boundary's chain-first vertical bond, and two more aux sites.
UNDETECTABLE_PAIRS = {
    ("data", "X"): {0, 3, 6},
    ("data", "Y"): {0, 3, 6},
    ("data", "Z"): set(range(9)),
    ("auxiliary", "X"): {0, 8},
    ("auxiliary", "Y"): {2, 6},
    ("auxiliary", "Z"): set(),
}


@pytest.mark.parametrize(
    "basis,frozen",
    [("gauges", UNDETECTABLE_FULL), ("pairs", UNDETECTABLE_PAIRS)],
)
def test_bvc_detectability_census(bvc33, basis, frozen):
    enc = bvc33
    report = bvc_detectability_report(enc, basis=basis)
    assert len(report.entries) == 3 * enc.n_qubits

    generators = (
        list(enc.stabilizers.generators)
        if basis == "gauges"
        else list(enc.local_stabilizer_images)
    )
    # independent route: no weight-1 group member exists, so a single
    # error is undetectable exactly when it commutes with each generator
    group_elements = (
        enc.stabilizers.elements()
        if basis == "gauges"
        else enc.pair_group.elements()
    )
    assert all(g.weight != 1 for g in group_elements if not g.is_identity)

    got = {key: set() for key in frozen}
    for q, letter, role, label in report.entries:
        err = PauliString.from_letters(enc.n_qubits, {q: letter})
        commutes_all = all(err.commutes(g) for g in generators)
        assert (label == UNDETECTABLE_LOGICAL) == commutes_all
        if label == UNDETECTABLE_LOGICAL:
            got[(role, letter)].add(q // 2)
    assert got == frozen


def test_bvc_detectability_counts(bvc33):
    report = bvc_detectability_report(bvc33, basis="gauges")
    assert report.count(UNDETECTABLE_LOGICAL) == 13
    assert report.count(DETECTABLE) == 30
    assert report.count(CORRECTABLE) == 11
    assert report.label_of(0, "Z") == UNDETECTABLE_LOGICAL
    doc = report.to_json_dict()
    assert doc["counts"][DETECTABLE] == 30


def test_bvc_collisions_match_independent_route(bvc33):
    """Same-syndrome pairs (with relative error outside the group) found
    by the report must match a from-scratch enumeration."""
    enc = bvc33
    report = bvc_detectability_report(enc, basis="pairs")
    generators = list(enc.local_stabilizer_images)
    elements = {
        (g.x, g.z) for g in enc.pair_group.elements()
    }
    errors = [
        PauliString.from_letters(enc.n_qubits, {q: l})
        for q in range(enc.n_qubits)
        for l in "XYZ"
    ]
    by_synd = {}
    for e in errors:
        synd = tuple(e.commutes(g) for g in generators)
        by_synd.setdefault(synd, []).append(e)
    ambiguous = set()
    for bucket in by_synd.values():
        for a, b in itertools.combinations(bucket, 2):
            rel = a * b
            if (rel.x, rel.z) not in elements:
                ambiguous.add((a.support[0], a.letter(a.support[0])))
                ambiguous.add((b.support[0], b.letter(b.support[0])))
    for q, letter, _, label in report.entries:
        if label == DETECTABLE:
            assert (q, letter) in ambiguous
        elif label == CORRECTABLE:
            assert (q, letter) not in ambiguous


def test_bvc_chain_end_aux_flip_harm(bvc33):
    """X on the first auxiliary qubit silently corrupts the first
    horizontal bond; X on the last auxiliary qubit touches only an
    orphan Majorana component and is harmless."""
    enc = bvc33
    all_images = (
        list(enc.gauge_images.values())
        + list(enc.occupation_images)
        + list(enc.hop_images.values())
    )
    first = PauliString.from_letters(enc.n_qubits, {1: "X"})
    last = PauliString.from_letters(enc.n_qubits, {enc.n_qubits - 1: "X"})
    assert not all(first.commutes(p) for p in all_images)
    assert all(last.commutes(p) for p in all_images)


def test_bvc_report_rejects_unknown_basis(bvc33):
    with pytest.raises(InvariantViolation):
        bvc_detectability_report(bvc33, basis="bogus")


# ----------------------------------------------------- four-qubit blocks


@pytest.fixture(scope="module")
def block32():
    return block_encode(BlockLayout(3, 2))


def test_block_layout_validation():
    with pytest.raises(InvariantViolation):
        BlockLayout(1, 4)


def _pair_image(code, b, a, bname):
    word = (
        _block_majorana(code.layout, b, a)
        * _block_majorana(code.layout, b, bname)
    ).scaled(Phase(1))
    return code.pauli_of(word)


def test_block_displayed_quadratic_images(block32):
    """The six advertised quadratic images on a prefix-free block."""
    code = block32
    n = code.n_qubits
    expect = {
        ("f0", "f3"): PauliString.from_letters(
            n, {0: "Z", 2: "X", 3: "Y"}, -1
        ),
        ("f1", "f2"): PauliString.from_letters(
            n, {0: "Z", 2: "Y", 3: "X"}, -1
        ),
        ("f0", "f1"): PauliString.from_letters(
            n, {1: "Z", 2: "X", 3: "X"}, -1
        ),
        ("f2", "f3"): PauliString.from_letters(
            n, {1: "Z", 2: "Y", 3: "Y"}
        ),
        ("f0", "g1"): PauliString.from_letters(
            n, {1: "X", 2: "Z", 3: "Y"}
        ),
        ("f1", "g1"): PauliString.from_letters(
            n, {1: "Y", 2: "Y", 3: "Z"}
        ),
    }
    for (a, bname), want in expect.items():
        assert _pair_image(code, 0, a, bname) == want, (a, bname)


def test_block_hop_weights(block32):
    assert block32.intra_block_hop(0).weight == 3
    assert block32.inter_block_hop(0).weight == 7
    for b in range(block32.layout.n_blocks - 1):
        assert block32.inter_block_hop(b).weight == 7


def test_block_parity_images_are_z_words(block32):
    for b in range(block32.layout.n_blocks):
        image = block32.block_parity_image(b)
        assert image.weight == 4
        assert all(image.letter(q) == "Z" for q in image.support)
        assert image.phase.k in (0, 2)


def test_block_local_stabilizers_are_weight_6(block32):
    assert len(block32.local_stabilizer_images) == 4
    assert all(p.weight == 6 for p in block32.local_stabilizer_images)


def test_block_defining_algebra_against_dense_oracle():
    """16-dimensional matrix check of the prefix-free block: the eight
    defining cubics satisfy the single-qubit Pauli algebra and the
    inversion words reproduce each Majorana component exactly."""
    lay = BlockLayout(2, 1)
    code = block_encode(lay)
    n_modes = 4  # one block: 8 Majorana components, 16-dim matrices
    gamma = [jw_majorana_matrix(a, n_modes) for a in range(8)]
    ident = np.eye(16)

    def word(indices, phase=1.0):
        acc = phase * ident
        for a in indices:
            acc = acc @ gamma[a]
        return acc

    triples_x = {0: (0, 1, 5), 1: (1, 2, 7), 2: (2, 5, 6), 3: (3, 5, 7)}
    triples_y = {0: (2, 3, 4), 1: (0, 3, 6), 2: (0, 4, 7), 3: (1, 4, 6)}
    X = {i: word(triples_x[i], 1j) for i in range(4)}
    Y = {i: word(triples_y[i], 1j) for i in range(4)}
    Z = {i: -1j * X[i] @ Y[i] for i in range(4)}
    for i in range(4):
        for m in (X[i], Y[i], Z[i]):
            assert mat_equal(m @ m, ident)
        assert mat_equal(X[i] @ Y[i], -Y[i] @ X[i])
    for i, j in itertools.combinations(range(4), 2):
        for a in (X[i], Y[i], Z[i]):
            for b in (X[j], Y[j], Z[j]):
                assert mat_equal(a @ b, b @ a)

    by_letter = {"X": X, "Y": Y, "Z": Z}
    sign_words = {
        0: (+1, "XYYZ"), 1: (-1, "XXZY"), 2: (+1, "YXXZ"), 3: (-1, "YYZX"),
        4: (+1, "YZYY"), 5: (-1, "XZXX"), 6: (-1, "ZYXY"), 7: (-1, "ZXYX"),
    }
    for a, (sign, letters) in sign_words.items():
        acc = sign * ident
        for i, letter in enumerate(letters):
            acc = acc @ by_letter[letter][i]
        assert mat_equal(acc, gamma[a]), a

    # and the symbolic images agree with the advertised words
    for a, (sign, letters) in sign_words.items():
        assert code.single_images[a] == PauliString.from_letters(
            code.n_qubits, dict(enumerate(letters)), sign
        )


def test_block_defining_algebra_with_prefix_against_dense_oracle():
    """256-dimensional check of the second block, running parity
    included: definitions still satisfy the Pauli algebra and invert."""
    lay = BlockLayout(2, 1)
    code = block_encode(lay)
    n_modes = 8
    dim = 2**n_modes

    def dense(op: MajoranaOperator) -> np.ndarray:
        acc = op.phase.as_complex() * np.eye(dim)
        for a in op.support:
            acc = acc @ jw_majorana_matrix(a, n_modes)
        return acc

    ident = np.eye(dim)
    for i in range(4):
        x = dense(code.defining_ops[(1, "X", i)])
        y = dense(code.defining_ops[(1, "Y", i)])
        z = dense(code.defining_ops[(1, "Z", i)])
        assert mat_equal(x @ x, ident)
        assert mat_equal(x @ y, -y @ x)
        assert mat_equal(-1j * x @ y, z)
    # cross-block commutation with block 0
    for i in range(4):
        a = dense(code.defining_ops[(0, "X", i)])
        b = dense(code.defining_ops[(1, "Y", (i + 1) % 4)])
        assert mat_equal(a @ b, b @ a)


def test_block_gauge_images_generate_valid_group(block32):
    assert block32.stabilizers.rank == 8
    assert len(block32.gauges) == 8
    for label, word, image in block32.gauges:
        assert word.weight == 2
        assert image.is_hermitian


def test_block_syndrome_report(block32):
    """Ten of twelve single-qubit errors on an interior block carry
    unique syndromes; the two data-occupation errors that consume all
    four auxiliary components collide but stay detectable."""
    rep = block_syndrome_report(block32)
    assert rep.block == (1, 0)
    assert rep.all_detectable
    assert len(rep.unique_labels) == 10
    assert rep.colliding == [("Z2", "Z3")]
    by_label = {t.label: t for t in rep.entries}
    assert by_label["Z0"].aux_content == ("g0", "g1")
    assert by_label["Z1"].aux_content == ("g2", "g3")
    assert by_label["Z0"].syndrome != by_label["Z1"].syndrome
    assert by_label["Z2"].syndrome == by_label["Z3"].syndrome
    xy = [by_label[f"{l}{i}"].syndrome for l in "XY" for i in range(4)]
    assert len(set(xy)) == 8
    assert by_label["X2"].aux_content == ("g1", "g2")


def test_block_syndromes_agree_with_qubit_route(block32):
    """Dual route: commutation of Majorana words must match commutation
    of their qubit images against the gauge images."""
    rep = block_syndrome_report(block32)
    images = [image for _, _, image in block32.gauges]
    for t in rep.entries:
        err_image = block32.pauli_of(t.error)
        qubit_route = tuple(
            1 if err_image.commutes(g) else -1 for g in images
        )
        assert qubit_route == t.syndrome


def test_block_syndrome_report_any_interior_block(block32):
    rep = block_syndrome_report(block32, block=(1, 1))
    assert len(rep.unique_labels) == 10
    assert rep.colliding == [("Z2", "Z3")]
    assert rep.all_detectable


def test_block_syndrome_report_preconditions():
    with pytest.raises(InvariantViolation):
        block_syndrome_report(block_encode(BlockLayout(2, 2)))
    with pytest.raises(InvariantViolation):
        block_syndrome_report(block_encode(BlockLayout(3, 1)))
    with pytest.raises(InvariantViolation):
        block_syndrome_report(block_encode(BlockLayout(3, 2)), block=(0, 0))


def test_block_report_serialization(block32):
    doc = block_syndrome_report(block32).to_json_dict()
    assert doc["schema"] == "fermenc/block-syndrome-report/v1"
    assert len(doc["errors"]) == 12
    assert doc["colliding"] == [["Z2", "Z3"]]
    assert doc["all_detectable"] is True
