"""Auxiliary-mode encodings that restore locality on square lattices.

Both constructions here give every data fermion mode an auxiliary
partner mode, fix the auxiliary sector with commuting quadratic
("gauge") stabilizers, and multiply each vertical hopping term by a
gauge operator so that its qubit image becomes geometrically local.

``bvc_encode`` keeps one qubit per mode: data and auxiliary modes are
interleaved along a row-major snake and mapped with the linear-chain
Jordan-Wigner transform.  Horizontal hops are then local outright and
gauge-dressed vertical hops act on the four qubits of their endpoints.

``block_encode`` compresses two data and two auxiliary modes into four
qubits per block.  The denser packing buys better error resolution:
ten of the twelve single-qubit errors on a block acquire pairwise
distinct gauge syndromes, and the remaining two are still detectable.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .errors import InvariantViolation
from .lattice import OPEN, HoppingGraph, build_lattice
from .majorana import MajoranaOperator, commutation_sign, jw_pauli
from .pauli import PauliString, Phase, StabilizerGroup

BVC_SCHEMA = "fermenc/bvc-encoding/v1"
BLOCK_REPORT_SCHEMA = "fermenc/block-syndrome-report/v1"

DATA = "data"
AUXILIARY = "auxiliary"


# --------------------------------------------------- interleaved layout


@dataclass(frozen=True)
class BvcLayout:
    """Rectangular site grid with one data and one auxiliary mode per
    site, ordered along a row-major snake with the auxiliary mode
    immediately after its data partner."""

    rows: int
    cols: int

    def __post_init__(self):
        if self.rows < 2 or self.cols < 2:
            raise InvariantViolation(
                "auxiliary-mode layout needs rows, cols >= 2"
            )

    @property
    def n_sites(self) -> int:
        return self.rows * self.cols

    @property
    def n_modes(self) -> int:
        return 2 * self.n_sites

    @property
    def n_qubits(self) -> int:
        return 2 * self.n_sites

    def snake_site(self, r: int, c: int) -> int:
        """Chain position of site (r, c) along the row-major snake."""
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise InvariantViolation(f"site ({r}, {c}) is off the grid")
        return r * self.cols + (c if r % 2 == 0 else self.cols - 1 - c)

    def site_coords(self, s: int) -> tuple[int, int]:
        r, offset = divmod(s, self.cols)
        return (r, offset if r % 2 == 0 else self.cols - 1 - offset)

    def data_qubit(self, s: int) -> int:
        return 2 * s

    def aux_qubit(self, s: int) -> int:
        return 2 * s + 1

    @property
    def qubit_roles(self) -> tuple[str, ...]:
        return (DATA, AUXILIARY) * self.n_sites

    @property
    def qubit_labels(self) -> list[str]:
        out = []
        for s in range(self.n_sites):
            out.append(f"d{s}")
            out.append(f"a{s}")
        return out

    # Majorana indices on the interleaved chain: the data mode of chain
    # site s is fermion mode 2s, its auxiliary partner is mode 2s + 1.

    def data_majorana(self, s: int, parity: int) -> MajoranaOperator:
        return MajoranaOperator.single(4 * s + parity, self.n_modes)

    def aux_majorana(self, s: int, parity: int) -> MajoranaOperator:
        return MajoranaOperator.single(4 * s + 2 + parity, self.n_modes)


@dataclass(frozen=True)
class BvcEncoding:
    """One-qubit-per-mode encoding with gauge-dressed vertical hops.

    ``hop_images`` maps each lattice edge to the local image used for
    that bond: the bare hop for horizontal edges and the gauge-dressed
    hop for vertical ones.  ``gauge_images`` holds the (nonlocal) gauge
    stabilizer attached to each vertical edge; products of the two
    gauges between the same row pair in adjacent columns are the
    weight-6 local stabilizers in ``local_stabilizer_images``.
    """

    layout: BvcLayout
    graph: HoppingGraph
    occupation_images: tuple[PauliString, ...]
    hop_images: dict[int, PauliString]
    gauge_images: dict[int, PauliString]
    local_stabilizer_images: tuple[PauliString, ...]
    stabilizers: StabilizerGroup
    kind: str = "bvc"

    @property
    def n_qubits(self) -> int:
        return self.layout.n_qubits

    @property
    def qubit_roles(self) -> tuple[str, ...]:
        return self.layout.qubit_roles

    @property
    def pair_group(self) -> StabilizerGroup:
        """Group generated by the weight-6 local gauge pairs only — the
        stabilizers that can actually be measured locally.  A proper
        subgroup of ``stabilizers``: each row boundary contributes one
        fewer independent pair than it has gauges."""
        return StabilizerGroup(
            list(self.local_stabilizer_images), self.n_qubits
        )

    def to_json_dict(self) -> dict:
        labels = self.layout.qubit_labels
        return {
            "schema": BVC_SCHEMA,
            "kind": self.kind,
            "rows": self.layout.rows,
            "cols": self.layout.cols,
            "n_qubits": self.n_qubits,
            "qubit_labels": labels,
            "qubit_roles": list(self.qubit_roles),
            "graph": self.graph.to_json_dict(),
            "occupation_images": [
                p.render(labels) for p in self.occupation_images
            ],
            "hop_images": {
                str(i): p.render(labels) for i, p in self.hop_images.items()
            },
            "gauge_images": {
                str(i): p.render(labels) for i, p in self.gauge_images.items()
            },
            "local_stabilizers": [
                p.render(labels) for p in self.local_stabilizer_images
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def _site_pair(layout: BvcLayout, graph: HoppingGraph, edge_index: int):
    """Chain positions (low, high) of an edge's endpoint sites."""
    e = graph.edges[edge_index]
    coords = [divmod(v, layout.cols) for v in e.endpoints()]
    a, b = sorted(layout.snake_site(r, c) for r, c in coords)
    return a, b


def bvc_encode(layout: BvcLayout) -> BvcEncoding:
    """Build the interleaved auxiliary-mode encoding for an open grid.

    Checks the defining locality facts as it goes: every horizontal hop
    image has weight 3, every gauge-dressed vertical hop image acts on
    exactly the four qubits of its endpoint sites, and the gauge pairs
    between adjacent columns multiply to weight-6 local stabilizers.
    """
    graph = build_lattice(layout.rows, layout.cols, OPEN)
    occ = []
    for v in range(graph.n_vertices):
        r, c = divmod(v, layout.cols)
        s = layout.snake_site(r, c)
        num = layout.data_majorana(s, 0) * layout.data_majorana(s, 1)
        image = jw_pauli(num.scaled(Phase(1)))
        # the number-parity quadratic equals 2n - 1, i.e. minus Z
        expect = PauliString.from_letters(
            layout.n_qubits, {layout.data_qubit(s): "Z"}
        ).with_phase(Phase(2))
        if image != expect:
            raise InvariantViolation(
                f"occupation image of site {s} is non-local: "
                f"{image.render()}"
            )
        occ.append(image)

    hop_images: dict[int, PauliString] = {}
    gauge_images: dict[int, PauliString] = {}
    for i, e in enumerate(graph.edges):
        a, b = _site_pair(layout, graph, i)
        bare = layout.data_majorana(a, 1) * layout.data_majorana(b, 0)
        bare_image = jw_pauli(bare.scaled(Phase(1)))
        if e.orientation == "h":
            if b != a + 1:
                raise InvariantViolation(
                    f"horizontal edge {i} joins non-consecutive chain "
                    f"sites {a} and {b}"
                )
            if bare_image.weight != 3:
                raise InvariantViolation(
                    f"horizontal hop image on edge {i} has weight "
                    f"{bare_image.weight}, expected 3"
                )
            hop_images[i] = bare_image
        else:
            gauge = layout.aux_majorana(a, 1) * layout.aux_majorana(b, 0)
            gauge_image = jw_pauli(gauge.scaled(Phase(1)))
            dressed = bare_image * gauge_image
            site_qubits = {2 * a, 2 * a + 1, 2 * b, 2 * b + 1}
            if set(dressed.support) != site_qubits:
                raise InvariantViolation(
                    f"dressed vertical hop on edge {i} acts outside its "
                    f"endpoint sites: {dressed.render()}"
                )
            gauge_images[i] = gauge_image
            hop_images[i] = dressed

    local_stabs = []
    for r in range(layout.rows - 1):
        for c in range(layout.cols - 1):
            left = graph.edge_between(r * layout.cols + c,
                                      (r + 1) * layout.cols + c)
            right = graph.edge_between(r * layout.cols + c + 1,
                                       (r + 1) * layout.cols + c + 1)
            pair = gauge_images[left] * gauge_images[right]
            if pair.weight != 6:
                raise InvariantViolation(
                    f"gauge pair between columns {c} and {c + 1} has "
                    f"weight {pair.weight}, expected 6"
                )
            local_stabs.append(pair)

    group = StabilizerGroup(
        [gauge_images[i] for i in sorted(gauge_images)], layout.n_qubits
    )
    return BvcEncoding(
        layout=layout,
        graph=graph,
        occupation_images=tuple(occ),
        hop_images=hop_images,
        gauge_images=gauge_images,
        local_stabilizer_images=tuple(local_stabs),
        stabilizers=group,
    )


UNDETECTABLE_LOGICAL = "undetectable-logical"
DETECTABLE = "detectable"
CORRECTABLE = "correctable"


@dataclass(frozen=True)
class _GroupView:
    """Minimal encoding facade for the error classifier: a register
    size plus whichever stabilizer group the caller wants to test
    against."""

    n_qubits: int
    stabilizers: StabilizerGroup


@dataclass
class BvcDetectabilityReport:
    """Single-qubit error census for the interleaved encoding.

    Each entry labels one weight-1 error: ``correctable`` when its
    syndrome is nontrivial and shared with no other weight-1 error
    (up to stabilizers), ``detectable`` when the syndrome is nontrivial
    but ambiguous, and ``undetectable-logical`` when the error commutes
    with every gauge yet lies outside the gauge group.
    """

    entries: list[tuple[int, str, str, str]]  # (qubit, letter, role, label)

    def count(self, label: str) -> int:
        return sum(1 for _, _, _, got in self.entries if got == label)

    def label_of(self, qubit: int, letter: str) -> str:
        for q, l, _, got in self.entries:
            if q == qubit and l == letter:
                return got
        raise InvariantViolation(f"no entry for {letter} on qubit {qubit}")

    def to_json_dict(self) -> dict:
        return {
            "schema": "fermenc/bvc-detectability/v1",
            "entries": [
                {"qubit": q, "letter": l, "role": role, "label": got}
                for q, l, role, got in self.entries
            ],
            "counts": {
                label: self.count(label)
                for label in (UNDETECTABLE_LOGICAL, DETECTABLE, CORRECTABLE)
            },
        }


def bvc_detectability_report(
    enc: BvcEncoding, basis: str = "pairs"
) -> BvcDetectabilityReport:
    """Classify every single-qubit error against the stabilizer group.

    ``basis`` picks the group: "pairs" (default) uses only the locally
    measurable weight-6 gauge pairs, "gauges" uses the full gauge group
    that defines the code space.
    """
    from .analyzer import classify_errors, single_qubit_errors

    if basis == "pairs":
        group = enc.pair_group
    elif basis == "gauges":
        group = enc.stabilizers
    else:
        raise InvariantViolation(f"unknown stabilizer basis {basis!r}")
    view = _GroupView(enc.n_qubits, group)
    errors = list(single_qubit_errors(enc.n_qubits))
    report = classify_errors(view, errors)
    ambiguous = set(itertools.chain.from_iterable(report.colliding_pairs))
    entries = []
    for idx, entry in enumerate(report.entries):
        qubit = entry.error.support[0]
        letter = entry.error.letter(qubit)
        role = enc.qubit_roles[qubit]
        if not entry.detectable:
            label = UNDETECTABLE_LOGICAL
        elif idx in ambiguous:
            label = DETECTABLE
        else:
            label = CORRECTABLE
        entries.append((qubit, letter, role, label))
    return BvcDetectabilityReport(entries)


# ----------------------------------------------------- four-qubit blocks


@dataclass(frozen=True)
class BlockLayout:
    """Grid of four-qubit blocks, each holding two data and two
    auxiliary modes, chained along a row-major snake of blocks."""

    block_rows: int
    block_cols: int

    def __post_init__(self):
        if self.block_rows < 2 or self.block_cols < 1:
            raise InvariantViolation(
                "block grid needs >= 2 rows (for vertical gauge pairs) "
                "and >= 1 column"
            )

    @property
    def n_blocks(self) -> int:
        return self.block_rows * self.block_cols

    @property
    def n_modes(self) -> int:
        return 4 * self.n_blocks

    @property
    def n_qubits(self) -> int:
        return 4 * self.n_blocks

    def chain_block(self, r: int, c: int) -> int:
        """Chain position of block (r, c) along the row-major snake."""
        if not (0 <= r < self.block_rows and 0 <= c < self.block_cols):
            raise InvariantViolation(f"block ({r}, {c}) is off the grid")
        return r * self.block_cols + (
            c if r % 2 == 0 else self.block_cols - 1 - c
        )

    def block_coords(self, b: int) -> tuple[int, int]:
        r, offset = divmod(b, self.block_cols)
        return (r, offset if r % 2 == 0 else self.block_cols - 1 - offset)

    @property
    def qubit_labels(self) -> list[str]:
        return [f"b{b}q{i}" for b in range(self.n_blocks) for i in range(4)]


# Majorana bookkeeping inside chain block b (base index 8b): the four
# data components come first, then the four auxiliary components.
_DATA_NAMES = ("f0", "f1", "f2", "f3")
_AUX_NAMES = ("g0", "g1", "g2", "g3")
_MAJORANA_NAMES = _DATA_NAMES + _AUX_NAMES

# Defining qubit operators: each Pauli-X and Pauli-Y on a block qubit is
# i times the running parity of all preceding blocks times a cubic in
# the block's own Majorana components.
_X_TRIPLES = {0: ("f0", "f1", "g1"), 1: ("f1", "f2", "g3"),
              2: ("f2", "g1", "g2"), 3: ("f3", "g1", "g3")}
_Y_TRIPLES = {0: ("f2", "f3", "g0"), 1: ("f0", "f3", "g2"),
              2: ("f0", "g0", "g3"), 3: ("f1", "g0", "g2")}

# Inversions: each single Majorana component equals the running parity
# times a signed four-letter word on the block's own qubits.
_INVERSE_TABLE = {
    "f0": (+1, "XYYZ"),
    "f1": (-1, "XXZY"),
    "f2": (+1, "YXXZ"),
    "f3": (-1, "YYZX"),
    "g0": (+1, "YZYY"),
    "g1": (-1, "XZXX"),
    "g2": (-1, "ZYXY"),
    "g3": (-1, "ZXYX"),
}


def _majorana_index(layout: BlockLayout, b: int, name: str) -> int:
    return 8 * b + _MAJORANA_NAMES.index(name)


def _block_majorana(layout: BlockLayout, b: int, name: str):
    return MajoranaOperator.single(
        _majorana_index(layout, b, name), layout.n_modes
    )


def _running_parity(layout: BlockLayout, b: int) -> MajoranaOperator:
    """Product of the number-parity quadratics of every mode in blocks
    that precede block b on the chain; its overall phase is +1."""
    return MajoranaOperator(layout.n_modes, tuple(range(8 * b)), Phase(0))


@dataclass(frozen=True)
class BlockCode:
    """Four-qubit-per-block encoding on a snake-ordered block grid.

    ``defining_ops[(b, letter, i)]`` is the Majorana word equal to the
    Pauli ``letter`` on qubit i of chain block b.  ``gauges`` lists the
    vertical auxiliary pairings (label, Majorana word, qubit image); the
    images generate ``stabilizers``.  ``pauli_of`` rewrites any Majorana
    word over the register into its exact qubit image.
    """

    layout: BlockLayout
    defining_ops: dict[tuple[int, str, int], MajoranaOperator]
    single_images: dict[int, PauliString]
    parity_images: tuple[PauliString, ...]
    gauges: tuple[tuple[str, MajoranaOperator, PauliString], ...]
    stabilizers: StabilizerGroup
    local_stabilizer_images: tuple[PauliString, ...]

    @property
    def n_qubits(self) -> int:
        return self.layout.n_qubits

    def pauli_of(self, op: MajoranaOperator) -> PauliString:
        """Exact qubit image of a Majorana word (phase included)."""
        if op.n_modes != self.layout.n_modes:
            raise InvariantViolation(
                "operator acts on a different mode register"
            )
        acc = PauliString.identity(self.n_qubits).with_phase(op.phase)
        for a in op.support:
            acc = acc * self.parity_images[a // 8] * self.single_images[a]
        return acc

    def block_parity_image(self, b: int) -> PauliString:
        """Qubit image of block b's own total number parity."""
        word = MajoranaOperator(
            self.layout.n_modes,
            tuple(range(8 * b, 8 * b + 8)),
            Phase(0),
        )
        return self.pauli_of(word)

    def intra_block_hop(self, b: int) -> PauliString:
        """Image of the data bond inside chain block b."""
        word = (
            _block_majorana(self.layout, b, "f0")
            * _block_majorana(self.layout, b, "f3")
        ).scaled(Phase(1))
        return self.pauli_of(word)

    def inter_block_hop(self, b: int) -> PauliString:
        """Image of the data bond joining chain blocks b and b + 1."""
        if b + 1 >= self.layout.n_blocks:
            raise InvariantViolation(f"no chain block after {b}")
        word = (
            _block_majorana(self.layout, b, "f3")
            * _block_majorana(self.layout, b + 1, "f0")
        ).scaled(Phase(1))
        return self.pauli_of(word)


def _build_defining_ops(layout: BlockLayout):
    ops: dict[tuple[int, str, int], MajoranaOperator] = {}
    for b in range(layout.n_blocks):
        parity = _running_parity(layout, b)
        for i in range(4):
            for letter, triples in (("X", _X_TRIPLES), ("Y", _Y_TRIPLES)):
                word = parity
                for name in triples[i]:
                    word = word * _block_majorana(layout, b, name)
                ops[(b, letter, i)] = word.scaled(Phase(1))
            x, y = ops[(b, "X", i)], ops[(b, "Y", i)]
            ops[(b, "Z", i)] = (x * y).scaled(Phase(3))
    return ops


def _verify_block_algebra(layout: BlockLayout, ops) -> None:
    """The defining words must satisfy the single-qubit Pauli algebra:
    squares are +1, same-qubit letters anticommute pairwise with the
    right triple products, and different qubits commute."""
    identity = MajoranaOperator.identity(layout.n_modes)
    for b in range(layout.n_blocks):
        for i in range(4):
            x = ops[(b, "X", i)]
            y = ops[(b, "Y", i)]
            z = ops[(b, "Z", i)]
            for letter, op in (("X", x), ("Y", y), ("Z", z)):
                if op * op != identity:
                    raise InvariantViolation(
                        f"{letter} on qubit {i} of block {b} does not "
                        f"square to +1"
                    )
            if commutation_sign(x, y) != -1:
                raise InvariantViolation(
                    f"X and Y on qubit {i} of block {b} fail to "
                    f"anticommute"
                )
            if (x * y).scaled(Phase(3)) != z:
                raise InvariantViolation(
                    f"triple product identity fails on qubit {i} of "
                    f"block {b}"
                )
    keys = [(b, letter, i)
            for b in range(layout.n_blocks)
            for i in range(4)
            for letter in ("X", "Z")]
    for ka, kb in itertools.combinations(keys, 2):
        if (ka[0], ka[2]) == (kb[0], kb[2]):
            continue
        if commutation_sign(ops[ka], ops[kb]) != 1:
            raise InvariantViolation(
                f"operators for distinct qubits {ka} and {kb} fail to "
                f"commute"
            )


def _verify_inversions(layout: BlockLayout, ops) -> None:
    """Each single Majorana component must be recovered exactly (sign
    included) by the advertised four-letter word times the running
    parity."""
    for b in range(layout.n_blocks):
        parity = _running_parity(layout, b)
        for name, (sign, word) in _INVERSE_TABLE.items():
            acc = parity
            for i, letter in enumerate(word):
                acc = acc * ops[(b, letter, i)]
            if sign < 0:
                acc = acc.scaled(Phase(2))
            expect = _block_majorana(layout, b, name)
            if acc != expect:
                raise InvariantViolation(
                    f"inversion of {name} on block {b} yields "
                    f"{acc.render()} instead of {expect.render()}"
                )


def _single_images(layout: BlockLayout) -> dict[int, PauliString]:
    """Per-Majorana qubit image with the running parity stripped."""
    images: dict[int, PauliString] = {}
    for b in range(layout.n_blocks):
        for name, (sign, word) in _INVERSE_TABLE.items():
            letters = {4 * b + i: letter for i, letter in enumerate(word)}
            p = PauliString.from_letters(layout.n_qubits, letters, sign)
            images[_majorana_index(layout, b, name)] = p
    return images


def block_encode(layout: BlockLayout) -> BlockCode:
    """Build the four-qubit block encoding and verify it symbolically.

    Raises InvariantViolation if the defining words fail the Pauli
    algebra, if the inversion table does not reproduce every single
    Majorana component exactly, or if any block parity image is not a
    weight-4 Z word (the fact that keeps inter-block bonds at weight 7).
    """
    ops = _build_defining_ops(layout)
    _verify_block_algebra(layout, ops)
    _verify_inversions(layout, ops)

    singles = _single_images(layout)
    block_parities = []
    for b in range(layout.n_blocks):
        acc = PauliString.identity(layout.n_qubits)
        for a in range(8 * b, 8 * b + 8):
            acc = acc * singles[a]
        if acc.weight != 4 or any(
            acc.letter(q) != "Z" for q in acc.support
        ) or not acc.is_hermitian:
            raise InvariantViolation(
                f"block {b} parity image is not a signed four-qubit Z "
                f"word: {acc.render()}"
            )
        block_parities.append(acc)
    prefixes = [PauliString.identity(layout.n_qubits)]
    for b in range(layout.n_blocks - 1):
        prefixes.append(prefixes[-1] * block_parities[b])

    code = BlockCode(
        layout=layout,
        defining_ops=ops,
        single_images=singles,
        parity_images=tuple(prefixes),
        gauges=(),
        stabilizers=StabilizerGroup([], layout.n_qubits),
        local_stabilizer_images=(),
    )

    for b in range(layout.n_blocks):
        for i in range(4):
            for letter in ("X", "Y", "Z"):
                image = code.pauli_of(ops[(b, letter, i)])
                expect = PauliString.from_letters(
                    layout.n_qubits, {4 * b + i: letter}
                )
                if image != expect:
                    raise InvariantViolation(
                        f"round trip of {letter} on qubit {i} of block "
                        f"{b} gives {image.render()}"
                    )

    gauges = []
    for r in range(layout.block_rows - 1):
        for c in range(layout.block_cols):
            top = layout.chain_block(r, c)
            bottom = layout.chain_block(r + 1, c)
            for tag, t_name, b_name in (
                ("alpha", "g1", "g0"),
                ("beta", "g3", "g2"),
            ):
                word = (
                    _block_majorana(layout, top, t_name)
                    * _block_majorana(layout, bottom, b_name)
                ).scaled(Phase(1))
                image = code.pauli_of(word)
                gauges.append((f"{tag}[{r}->{r + 1},{c}]", word, image))

    local_stabs = []
    for r in range(layout.block_rows - 1):
        for c in range(layout.block_cols):
            pair_images = [
                image
                for label, _, image in gauges
                if label.endswith(f"[{r}->{r + 1},{c}]")
            ]
            local_stabs.append(pair_images[0] * pair_images[1])

    group = StabilizerGroup([img for _, _, img in gauges], layout.n_qubits)
    return BlockCode(
        layout=layout,
        defining_ops=ops,
        single_images=singles,
        parity_images=tuple(prefixes),
        gauges=tuple(gauges),
        stabilizers=group,
        local_stabilizer_images=tuple(local_stabs),
    )


@dataclass
class BlockErrorEntry:
    label: str
    error: MajoranaOperator
    syndrome: tuple[int, ...]
    aux_content: tuple[str, ...]
    detectable: bool


@dataclass
class BlockSyndromeReport:
    """Gauge syndromes of the twelve single-qubit errors on one block.

    ``unique_labels`` lists errors whose syndrome is shared by no other
    single-qubit error on the block; ``colliding`` pairs up the rest.
    """

    block: tuple[int, int]
    gauge_labels: tuple[str, ...]
    entries: list[BlockErrorEntry]
    unique_labels: list[str]
    colliding: list[tuple[str, str]]
    all_detectable: bool

    def to_json_dict(self) -> dict:
        return {
            "schema": BLOCK_REPORT_SCHEMA,
            "block": list(self.block),
            "gauge_labels": list(self.gauge_labels),
            "errors": [
                {
                    "label": t.label,
                    "syndrome": list(t.syndrome),
                    "aux_content": list(t.aux_content),
                    "detectable": t.detectable,
                }
                for t in self.entries
            ],
            "unique": self.unique_labels,
            "colliding": [list(pair) for pair in self.colliding],
            "all_detectable": self.all_detectable,
        }


def block_syndrome_report(
    code: BlockCode, block: tuple[int, int] | None = None
) -> BlockSyndromeReport:
    """Syndromes of all twelve single-qubit errors on one interior block.

    The block must have vertical neighbors both above and below, and the
    grid must be at least two blocks wide: a single column leaves the
    running-parity tail of X and Y errors invisible to the sideways
    gauges that would otherwise separate them from the Z errors.
    """
    layout = code.layout
    if layout.block_rows < 3:
        raise InvariantViolation(
            "syndrome census needs >= 3 block rows so the probed block "
            "has gauge partners above and below"
        )
    if layout.block_cols < 2:
        raise InvariantViolation(
            "syndrome census needs >= 2 block columns to resolve "
            "running-parity tails"
        )
    if block is None:
        block = (layout.block_rows // 2, 0)
    r, c = block
    if not (1 <= r <= layout.block_rows - 2):
        raise InvariantViolation(
            f"block row {r} lacks a vertical neighbor above or below"
        )
    b = layout.chain_block(r, c)

    entries = []
    for i in range(4):
        for letter in ("X", "Y", "Z"):
            err = code.defining_ops[(b, letter, i)]
            synd = tuple(
                commutation_sign(err, word) for _, word, _ in code.gauges
            )
            aux = tuple(
                _MAJORANA_NAMES[a - 8 * b]
                for a in err.support
                if 8 * b + 4 <= a < 8 * b + 8
            )
            entries.append(BlockErrorEntry(
                label=f"{letter}{i}",
                error=err,
                syndrome=synd,
                aux_content=aux,
                detectable=any(s == -1 for s in synd),
            ))

    by_synd: dict[tuple[int, ...], list[str]] = {}
    for t in entries:
        by_synd.setdefault(t.syndrome, []).append(t.label)
    unique = [grp[0] for grp in by_synd.values() if len(grp) == 1]
    colliding = [
        pair
        for grp in by_synd.values()
        for pair in itertools.combinations(grp, 2)
    ]
    return BlockSyndromeReport(
        block=(r, c),
        gauge_labels=tuple(label for label, _, _ in code.gauges),
        entries=entries,
        unique_labels=sorted(unique),
        colliding=sorted(colliding),
        all_detectable=all(t.detectable for t in entries),
    )
