"""Abstract Majorana-mode operator algebra on 2n modes.

A fermionic site k carries two Majorana modes f_{2k} and f_{2k+1}; an
operator is a phase times a product of distinct modes written with
indices strictly increasing left to right.  Products canonicalize by
bubble-sorting (each transposition contributes -1) and annihilating
duplicate indices (f_k^2 = 1), so the algebra is exact and independent
of any qubit representation.
"""

from __future__ import annotations

from bisect import bisect_right, insort
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantViolation
from .pauli import PauliString, Phase

VERTEX = "vertex"
EDGE = "edge"


@dataclass(frozen=True, slots=True)
class MajoranaOperator:
    """phase * f_{a0} f_{a1} ... with a0 < a1 < ... < 2*n_modes."""

    n_modes: int
    support: tuple[int, ...] = ()
    phase: Phase = Phase(0)

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.support, self.support[1:])):
            raise InvariantViolation("support indices must strictly increase")
        if self.support and not (
            0 <= self.support[0] and self.support[-1] < 2 * self.n_modes
        ):
            raise InvariantViolation(
                f"mode index outside 0..{2 * self.n_modes - 1}"
            )

    @classmethod
    def identity(cls, n_modes: int) -> "MajoranaOperator":
        return cls(n_modes)

    @classmethod
    def single(cls, index: int, n_modes: int) -> "MajoranaOperator":
        return cls(n_modes, (index,))

    @property
    def weight(self) -> int:
        return len(self.support)

    @property
    def is_identity(self) -> bool:
        return not self.support and self.phase.k == 0

    def __mul__(self, other: "MajoranaOperator") -> "MajoranaOperator":
        if self.n_modes != other.n_modes:
            raise InvariantViolation(
                f"mode-count mismatch: {self.n_modes} vs {other.n_modes}"
            )
        acc = list(self.support)
        swaps = 0
        for b in other.support:
            pos = bisect_right(acc, b)
            # transpositions to move f_b left past every larger index
            swaps += len(acc) - pos
            if pos and acc[pos - 1] == b:
                acc.pop(pos - 1)  # lands next to its twin; f_b^2 = 1
            else:
                insort(acc, b)
        k = self.phase.k + other.phase.k + 2 * (swaps % 2)
        return MajoranaOperator(self.n_modes, tuple(acc), Phase(k))

    def with_phase(self, phase: Phase) -> "MajoranaOperator":
        return MajoranaOperator(self.n_modes, self.support, phase)

    def scaled(self, phase: Phase) -> "MajoranaOperator":
        return self.with_phase(self.phase * phase)

    def render(self) -> str:
        body = " ".join(f"f_{a}" for a in self.support) or "1"
        sign = {0: "", 1: "i ", 2: "-", 3: "-i "}[self.phase.k]
        return sign + body


def majorana_product(a: MajoranaOperator, b: MajoranaOperator):
    """Canonicalized product a*b (function form)."""
    return a * b


def jw_pauli(op: MajoranaOperator) -> "PauliString":
    """Jordan-Wigner qubit image of a Majorana word on a linear chain:
    mode mu maps to qubit mu, f_{2mu} -> Z..Z X_mu and
    f_{2mu+1} -> Z..Z Y_mu, with the word's phase carried through."""
    acc = PauliString.identity(op.n_modes).with_phase(op.phase)
    for a in op.support:
        mu, odd = divmod(a, 2)
        letters = {nu: "Z" for nu in range(mu)}
        letters[mu] = "Y" if odd else "X"
        acc = acc * PauliString.from_letters(op.n_modes, letters)
    return acc


def commutation_sign(a: MajoranaOperator, b: MajoranaOperator) -> int:
    """+1 if ab = ba, -1 if ab = -ba: (-1)^(|A||B| + |A inter B|)."""
    shared = len(set(a.support) & set(b.support))
    return -1 if (len(a.support) * len(b.support) + shared) % 2 else 1


@dataclass(frozen=True, slots=True)
class QuadraticGenerator:
    """A vertex generator i f_{2k} f_{2k+1} or an edge generator
    i f_{2j} f_{2k} (antisymmetric under swapping j and k)."""

    kind: str
    vertices: tuple[int, ...]
    op: MajoranaOperator

    def render(self) -> str:
        if self.kind == VERTEX:
            return f"eta_{self.vertices[0]}"
        j, k = self.vertices
        return f"xi_{j},{k}"


def vertex_generator(k: int, n_modes: int) -> QuadraticGenerator:
    """Occupation-parity generator i f_{2k} f_{2k+1} for site k."""
    op = MajoranaOperator(n_modes, (2 * k, 2 * k + 1), Phase(1))
    return QuadraticGenerator(VERTEX, (k,), op)


def edge_generator(j: int, k: int, n_modes: int) -> QuadraticGenerator:
    """Hopping generator i f_{2j} f_{2k}; reversing (j,k) flips the sign."""
    if j == k:
        raise InvariantViolation("edge generator needs two distinct sites")
    op = MajoranaOperator(n_modes, (2 * j,), Phase(1)) * MajoranaOperator(
        n_modes, (2 * k,)
    )
    return QuadraticGenerator(EDGE, (j, k), op)


def loop_product(path: list[int], n_modes: int, edges=None):
    """(-i)^l * xi_{k0,k1} xi_{k1,k2} ... xi_{k(l-1),k0} along a closed
    vertex path [k0, ..., k(l-1), k0]; identity for any closed path."""
    if len(path) < 2 or path[0] != path[-1]:
        raise InvariantViolation("path must be closed (first == last vertex)")
    steps = list(zip(path, path[1:]))
    if edges is not None:
        known = {frozenset(e) for e in edges}
        for j, k in steps:
            if frozenset((j, k)) not in known:
                raise InvariantViolation(f"({j},{k}) is not a graph edge")
    acc = MajoranaOperator.identity(n_modes).with_phase(Phase(-len(steps)))
    for j, k in steps:
        acc = acc * edge_generator(j, k, n_modes).op
    return acc


@dataclass(frozen=True, slots=True)
class FermionTerm:
    """A number-conserving Hamiltonian term: site occupation n_k or a
    Hermitian hopping c_j†c_k + c_k†c_j."""

    kind: str  # "occupation" | "hopping"
    sites: tuple[int, ...]

    @classmethod
    def occupation(cls, k: int) -> "FermionTerm":
        return cls("occupation", (k,))

    @classmethod
    def hopping(cls, j: int, k: int) -> "FermionTerm":
        if j == k:
            raise InvariantViolation("hopping needs two distinct sites")
        return cls("hopping", (j, k))


@dataclass(frozen=True, slots=True)
class ExpandedPiece:
    """One summand: magnitude * i^phase * (product of generators)."""

    generators: tuple[QuadraticGenerator, ...]
    magnitude: Fraction
    phase: Phase

    def operator(self, n_modes: int) -> MajoranaOperator:
        """i^phase times the generator product; the full summand is
        ``magnitude * operator()``."""
        acc = MajoranaOperator.identity(n_modes).with_phase(self.phase)
        for g in self.generators:
            acc = acc * g.op
        return acc


def expand_term(
    term: FermionTerm, n_modes: int, edges=None
) -> list[ExpandedPiece]:
    """Rewrite a Hamiltonian term as a rational combination of products
    of vertex/edge generators:

    - occupation(k)  ->  1/2 * 1  +  1/2 * eta_k
    - hopping(j,k)   ->  -i/2 * xi_jk eta_k  +  -i/2 * eta_j xi_jk
    """
    if term.kind == "occupation":
        (k,) = term.sites
        return [
            ExpandedPiece((), Fraction(1, 2), Phase(0)),
            ExpandedPiece(
                (vertex_generator(k, n_modes),), Fraction(1, 2), Phase(0)
            ),
        ]
    if term.kind == "hopping":
        j, k = term.sites
        if j > k:
            j, k = k, j  # the Hermitian pair is symmetric in (j,k)
        if edges is not None and frozenset((j, k)) not in {
            frozenset(e) for e in edges
        }:
            raise InvariantViolation(f"({j},{k}) is not a graph edge")
        xi = edge_generator(j, k, n_modes)
        return [
            ExpandedPiece(
                (xi, vertex_generator(k, n_modes)), Fraction(1, 2), Phase(3)
            ),
            ExpandedPiece(
                (vertex_generator(j, n_modes), xi), Fraction(1, 2), Phase(3)
            ),
        ]
    raise InvariantViolation(f"unknown term kind {term.kind!r}")
