"""Error analysis for stabilizer encodings.

Syndrome computation, detectability/correctability classification of
error sets, minimum-distance search by exhaustive enumeration up to a
weight bound, and a cross-encoding weight/distance comparison table.

Syndromes are evaluated as bit-packed anticommutation masks (one bit
per stabilizer generator), so an error's syndrome is the XOR of the
per-qubit masks of its letters; group membership of trivial-syndrome
candidates is settled by phase-tracked reduction against the group.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb

from .encoding import Encoding, piece_image
from .errors import BudgetExceeded, InvariantViolation
from .majorana import FermionTerm, expand_term
from .pauli import NON_MEMBER, PauliString, StabilizerGroup

LETTERS = ("X", "Y", "Z")


def syndrome(error: PauliString, enc: Encoding) -> tuple[int, ...]:
    """Sign vector of the error against the stabilizer generators:
    component s is -1 exactly when generator s anticommutes with it."""
    if error.n != enc.n_qubits:
        raise InvariantViolation(
            f"error acts on {error.n} qubits, encoding has {enc.n_qubits}"
        )
    return enc.stabilizers.syndrome(error)


def single_qubit_errors(n: int):
    """All 3n weight-one Pauli errors, qubit-major, letters X,Y,Z."""
    for q in range(n):
        for letter in LETTERS:
            yield PauliString.from_letters(n, {q: letter})


def syndrome_masks(group: StabilizerGroup, n: int) -> list[tuple[int, ...]]:
    """Per-qubit anticommutation masks: ``masks[q][l]`` has bit s set
    iff letter l (0=X, 1=Y, 2=Z) on qubit q anticommutes with generator
    s.  The mask of any error is the XOR over its support."""
    masks = [[0, 0, 0] for _ in range(n)]
    for s, g in enumerate(group.generators):
        bit = 1 << s
        for q in range(n):
            gx = (g.x >> q) & 1
            gz = (g.z >> q) & 1
            if gz:
                masks[q][0] ^= bit
            if gx ^ gz:
                masks[q][1] ^= bit
            if gx:
                masks[q][2] ^= bit
    return [tuple(m) for m in masks]


# --------------------------------------------------------------- tables


@dataclass(frozen=True)
class SyndromeTable:
    """Ordered generators and the ±1 sign vector of each listed error."""

    generators: tuple[PauliString, ...]
    rows: tuple[tuple[PauliString, tuple[int, ...]], ...]

    def sign_vector(self, error: PauliString) -> tuple[int, ...]:
        for e, signs in self.rows:
            if e == error:
                return signs
        raise KeyError(error.render())

    def render(self, labels: list[str] | None = None) -> str:
        lines = []
        for e, signs in self.rows:
            cells = " ".join(f"{s:+d}" for s in signs)
            lines.append(f"{e.render(labels):<24} {cells}")
        return "\n".join(lines)

    def to_json_dict(self, labels: list[str] | None = None) -> dict:
        return {
            "schema": "fermenc/syndrome-table/v1",
            "generators": [g.render(labels) for g in self.generators],
            "rows": [
                {"error": e.render(labels), "syndrome": list(signs)}
                for e, signs in self.rows
            ],
        }


def syndrome_table(enc: Encoding, errors, generators=None) -> SyndromeTable:
    """Tabulate sign vectors for the given errors, by default against
    the encoding's stabilizer generators (pass ``generators`` to test
    a chosen sub-list, e.g. the plaquettes around one vertex)."""
    gens = (
        tuple(generators)
        if generators is not None
        else tuple(enc.stabilizers.generators)
    )
    rows = []
    for e in errors:
        rows.append((e, tuple(1 if g.commutes(e) else -1 for g in gens)))
    return SyndromeTable(gens, tuple(rows))


# ----------------------------------------------------- classification


@dataclass(frozen=True)
class ErrorEntry:
    error: PauliString
    syndrome: tuple[int, ...]
    membership: str
    detectable: bool


@dataclass
class ErrorSetReport:
    """Per-error classification plus set-level correctability."""

    entries: list[ErrorEntry]
    correctable: bool
    undetectable_indices: list[int]
    # same-syndrome pairs whose relative error is outside the group:
    # they can be detected but not told apart
    colliding_pairs: list[tuple[int, int]]

    def to_json_dict(self, labels: list[str] | None = None) -> dict:
        return {
            "schema": "fermenc/error-report/v1",
            "correctable": self.correctable,
            "undetectable": [
                self.entries[i].error.render(labels)
                for i in self.undetectable_indices
            ],
            "colliding_pairs": [
                [
                    self.entries[a].error.render(labels),
                    self.entries[b].error.render(labels),
                ]
                for a, b in self.colliding_pairs
            ],
            "errors": [
                {
                    "error": t.error.render(labels),
                    "syndrome": list(t.syndrome),
                    "membership": t.membership,
                    "detectable": t.detectable,
                }
                for t in self.entries
            ],
        }


def classify_errors(enc: Encoding, errors) -> ErrorSetReport:
    """Classify each error and the set as a whole.

    An error is detectable when its syndrome is nontrivial or it lies in
    the stabilizer group.  The set is correctable when the identity plus
    every pair (a, b) has a detectable-or-member relative error a† b —
    so a single undetectable logical already breaks correctability.
    """
    group = enc.stabilizers
    entries = []
    for e in errors:
        synd = syndrome(e, enc)
        membership = group.contains(e)
        detectable = any(s == -1 for s in synd) or membership != NON_MEMBER
        entries.append(ErrorEntry(e, synd, membership, detectable))

    undetectable = [i for i, t in enumerate(entries) if not t.detectable]
    colliding: list[tuple[int, int]] = []
    by_synd: dict[tuple[int, ...], list[int]] = {}
    for i, t in enumerate(entries):
        by_synd.setdefault(t.syndrome, []).append(i)
    for idxs in by_synd.values():
        for a, b in itertools.combinations(idxs, 2):
            rel = entries[a].error.adjoint() * entries[b].error
            if group.contains(rel) == NON_MEMBER:
                colliding.append((a, b))
    correctable = not undetectable and not colliding
    return ErrorSetReport(entries, correctable, undetectable, colliding)


# ---------------------------------------------------- distance search


@dataclass
class DistanceReport:
    """Result of the weight-bounded logical-operator search.

    ``distance`` is exact when set: weights are scanned in increasing
    order and the scan stops at the first weight containing a logical
    (that whole weight class is still enumerated, so the counts and the
    lexicographically smallest witness are complete).
    """

    w_searched: int
    distance: int | None
    witness: PauliString | None
    logical_counts: dict[int, int]
    member_counts: dict[int, int]
    evaluations: int

    @property
    def verdict(self) -> str:
        if self.distance is not None:
            return f"distance {self.distance}"
        return f"distance > {self.w_searched}"

    def to_json_dict(self, labels: list[str] | None = None) -> dict:
        return {
            "schema": "fermenc/distance-report/v1",
            "w_searched": self.w_searched,
            "verdict": self.verdict,
            "distance": self.distance,
            "witness": (
                self.witness.render(labels) if self.witness else None
            ),
            "logical_counts": {
                str(k): v for k, v in sorted(self.logical_counts.items())
            },
            "member_counts": {
                str(k): v for k, v in sorted(self.member_counts.items())
            },
            "evaluations": self.evaluations,
        }


def _error_from_key(n: int, key) -> PauliString:
    qubits, letters = key
    return PauliString.from_letters(
        n, {q: LETTERS[l] for q, l in zip(qubits, letters)}
    )


def _scan_weight(task) -> tuple[int, list, int]:
    """Enumerate weight-k errors whose syndrome mask is zero.

    ``task`` = (masks, k, n, residue, step): only candidates whose
    anchor qubit is ``residue`` modulo ``step`` are produced, so a pool
    of workers with distinct residues partitions the space exactly.
    Returns (evaluations, candidate keys, count).  Keys are
    ((qubits...), (letter indices...)) with qubits ascending.
    """
    masks, k, n, residue, step = task
    evals = 0
    found = []
    if k == 1:
        for q in range(residue, n, step):
            for l in range(3):
                evals += 1
                if masks[q][l] == 0:
                    found.append(((q,), (l,)))
    elif k == 2:
        for a in range(residue, n, step):
            ma = masks[a]
            for b in range(a + 1, n):
                mb = masks[b]
                for la in range(3):
                    x = ma[la]
                    for lb in range(3):
                        evals += 1
                        if x == mb[lb]:
                            found.append(((a, b), (la, lb)))
    elif k == 3:
        # meet in the middle: single (smallest qubit) + pair
        singles: dict[int, list] = {}
        for q in range(n):
            for l in range(3):
                singles.setdefault(masks[q][l], []).append((q, l))
        for b in range(residue, n, step):
            mb = masks[b]
            for c in range(b + 1, n):
                mc = masks[c]
                for lb in range(3):
                    x = mb[lb]
                    for lc in range(3):
                        evals += 1
                        hits = singles.get(x ^ mc[lc])
                        if not hits:
                            continue
                        for a, la in hits:
                            if a >= b:
                                break
                            found.append(((a, b, c), (la, lb, lc)))
    elif k == 4:
        # meet in the middle: left pair (two smallest) + right pair
        pairs: dict[int, list] = {}
        for a in range(n):
            ma = masks[a]
            for b in range(a + 1, n):
                mb = masks[b]
                for la in range(3):
                    x = ma[la]
                    for lb in range(3):
                        pairs.setdefault(x ^ mb[lb], []).append(
                            (b, a, la, lb)
                        )
        for v in pairs.values():
            v.sort()
        for c in range(residue, n, step):
            mc = masks[c]
            for d in range(c + 1, n):
                md = masks[d]
                for lc in range(3):
                    x = mc[lc]
                    for ld in range(3):
                        evals += 1
                        hits = pairs.get(x ^ md[ld])
                        if not hits:
                            continue
                        for b, a, la, lb in hits:
                            if b >= c:
                                break
                            found.append(
                                ((a, b, c, d), (la, lb, lc, ld))
                            )
    else:
        for qubits in itertools.combinations(range(n), k):
            if qubits[0] % step != residue:
                continue
            qmasks = [masks[q] for q in qubits]
            for letters in itertools.product(range(3), repeat=k):
                evals += 1
                x = 0
                for m, l in zip(qmasks, letters):
                    x ^= m[l]
                if x == 0:
                    found.append((qubits, letters))
    return evals, found, len(found)


def enumeration_cost(n: int, w: int) -> int:
    """Number of weight-≤w syndrome evaluations on n qubits."""
    return sum(comb(n, k) * 3**k for k in range(1, w + 1))


def distance_up_to(
    enc: Encoding,
    w: int,
    budget: int = 10**9,
    workers: int = 1,
) -> DistanceReport:
    """Search every Pauli error of weight ≤ w for logical operators:
    trivial syndrome but outside the stabilizer group.

    Returns the exact distance when a witness is found (scan order
    guarantees no lighter one exists) together with per-weight counts
    of logicals and of group members encountered.  The witness is the
    lexicographically smallest by (support, letters, X<Y<Z).  Raises
    BudgetExceeded up front when the enumeration would exceed
    ``budget`` evaluations, naming the feasible bound.
    """
    if w < 1:
        raise InvariantViolation("weight bound must be >= 1")
    n = enc.n_qubits
    total = enumeration_cost(n, w)
    if total > budget:
        feasible = 0
        for k in range(1, w + 1):
            if enumeration_cost(n, k) > budget:
                break
            feasible = k
        raise BudgetExceeded(
            f"weight-{w} enumeration on {n} qubits needs {total:,} "
            f"evaluations (budget {budget:,}); feasible bound is "
            f"w={feasible}",
            feasible_weight=feasible,
        )

    group = enc.stabilizers
    masks = syndrome_masks(group, n)
    evaluations = 0
    logical_counts: dict[int, int] = {}
    member_counts: dict[int, int] = {}
    distance = None
    witness_key = None

    pool = (
        ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    )
    try:
        for k in range(1, w + 1):
            tasks = [
                (masks, k, n, residue, max(workers, 1))
                for residue in range(max(workers, 1))
            ]
            if pool is not None:
                results = list(pool.map(_scan_weight, tasks))
            else:
                results = [_scan_weight(t) for t in tasks]
            keys = []
            for evals, found, _ in results:
                evaluations += evals
                keys.extend(found)

            logical = member = 0
            best = None
            for key in sorted(keys):
                e = _error_from_key(n, key)
                if group.contains(e) == NON_MEMBER:
                    logical += 1
                    if best is None:
                        best = key
                else:
                    member += 1
            logical_counts[k] = logical
            member_counts[k] = member
            if logical:
                distance = k
                witness_key = best
                break
    finally:
        if pool is not None:
            pool.shutdown()

    witness = None
    if witness_key is not None:
        witness = _error_from_key(n, witness_key)
        if group.contains(witness) != NON_MEMBER or any(
            s == -1 for s in syndrome(witness, enc)
        ):
            raise InvariantViolation("distance witness failed verification")
    w_searched = distance if distance is not None else w
    return DistanceReport(
        w_searched=w_searched,
        distance=distance,
        witness=witness,
        logical_counts=logical_counts,
        member_counts=member_counts,
        evaluations=evaluations,
    )


# ------------------------------------------------------- weight report


def occupation_image_weights(enc: Encoding) -> list[int]:
    """Weight of the widest summand of each encoded occupation term."""
    nv = enc.graph.n_vertices
    out = []
    for k in range(nv):
        pieces = expand_term(FermionTerm.occupation(k), nv)
        out.append(max(piece_image(enc, p).weight for p in pieces))
    return out


def hopping_image_weights(enc: Encoding) -> list[int]:
    """Per graph edge, the widest summand of the encoded hopping term
    (the two summands are a commuting pair; the wide one sets the
    term's error footprint)."""
    nv = enc.graph.n_vertices
    out = []
    for i in enc.graph.real_edge_indices:
        e = enc.graph.edges[i]
        pieces = expand_term(FermionTerm.hopping(e.tail, e.head), nv)
        out.append(max(piece_image(enc, p).weight for p in pieces))
    return out


def stabilizer_weight_range(enc: Encoding) -> tuple[int, int]:
    """(min, max) generator weight over the geometrically local
    generators: tagged global loops ("winding") are excluded when tags
    are present, since their weight grows with the lattice."""
    gens = enc.stabilizers.generators
    if not gens:
        raise InvariantViolation("encoding has no stabilizer generators")
    tags = enc.stabilizer_tags
    if tags is not None:
        local = [g for g, t in zip(gens, tags) if t != "winding"]
        if local:
            gens = local
    ws = [g.weight for g in gens]
    return (min(ws), max(ws))


def single_syndromes_distinct(enc: Encoding) -> bool:
    """True when all single-qubit errors have pairwise distinct,
    nontrivial syndromes (every one is then uniquely correctable)."""
    masks = syndrome_masks(enc.stabilizers, enc.n_qubits)
    seen = set()
    for q in range(enc.n_qubits):
        for l in range(3):
            m = masks[q][l]
            if m == 0 or m in seen:
                return False
            seen.add(m)
    return True


@dataclass
class EncodingSummary:
    """One comparison-table row."""

    kind: str
    n_qubits: int
    distance_report: DistanceReport
    occupation_weights: tuple[int, int]  # (min, max)
    hopping_weights: tuple[int, int]  # (min, max) of per-term maxima
    stabilizer_weights: tuple[int, int]
    single_syndromes_distinct: bool

    @property
    def distance(self) -> int | None:
        return self.distance_report.distance

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n_qubits": self.n_qubits,
            "distance": self.distance_report.verdict,
            "occupation_weights": list(self.occupation_weights),
            "hopping_weights": list(self.hopping_weights),
            "stabilizer_weights": list(self.stabilizer_weights),
            "single_syndromes_distinct": self.single_syndromes_distinct,
        }


def summarize_encoding(
    enc: Encoding,
    w: int = 3,
    budget: int = 10**9,
    workers: int = 1,
) -> EncodingSummary:
    occ = occupation_image_weights(enc)
    hop = hopping_image_weights(enc)
    return EncodingSummary(
        kind=enc.kind,
        n_qubits=enc.n_qubits,
        distance_report=distance_up_to(enc, w, budget, workers),
        occupation_weights=(min(occ), max(occ)),
        hopping_weights=(min(hop), max(hop)),
        stabilizer_weights=stabilizer_weight_range(enc),
        single_syndromes_distinct=single_syndromes_distinct(enc),
    )


def compare_encodings(
    encodings,
    w: int = 3,
    budget: int = 10**9,
    workers: int = 1,
) -> list[EncodingSummary]:
    """Comparison rows (distance, term weights, stabilizer weights) for
    encodings on comparable lattices."""
    return [summarize_encoding(e, w, budget, workers) for e in encodings]


def render_comparison(summaries) -> str:
    header = (
        f"{'encoding':<12} {'qubits':>6} {'distance':>12} "
        f"{'occupation':>11} {'hopping':>9} {'stabilizers':>11} "
        f"{'1q-distinct':>11}"
    )
    lines = [header, "-" * len(header)]
    for s in summaries:
        occ = _range_str(s.occupation_weights)
        hop = _range_str(s.hopping_weights)
        stab = _range_str(s.stabilizer_weights)
        lines.append(
            f"{s.kind:<12} {s.n_qubits:>6} "
            f"{s.distance_report.verdict.replace('distance ', ''):>12} "
            f"{occ:>11} {hop:>9} {stab:>11} "
            f"{str(s.single_syndromes_distinct):>11}"
        )
    return "\n".join(lines)


def _range_str(rng: tuple[int, int]) -> str:
    lo, hi = rng
    return str(hi) if lo == hi else f"{lo}-{hi}"
