"""Exact n-qubit Pauli arithmetic in the GF(2) symplectic picture.

A Pauli operator is stored as ``i^k * X^x * Z^z`` where ``x`` and ``z``
are bit-packed GF(2) vectors (bit j = qubit j) and ``k`` is an integer
mod 4.  A Y on qubit j therefore has both bits set and contributes one
factor of i to ``k`` (Y = i X Z), so the stored triple determines the
operator uniquely, signs included.

Qubits are indexed 0..n-1; human-readable edge/vertex labels are applied
only at render/parse time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce

from .errors import InvariantViolation, PauliParseError

MEMBER = "member"
MEMBER_UP_TO_SIGN = "member_up_to_sign"
NON_MEMBER = "non_member"

_PHASE_STR = {0: "", 1: "i", 2: "-", 3: "-i"}
_PHASE_COMPLEX = {0: 1, 1: 1j, 2: -1, 3: -1j}


@dataclass(frozen=True, slots=True)
class Phase:
    """Element of {+1, +i, -1, -i}, stored as the exponent of i mod 4."""

    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % 4)

    def __mul__(self, other: "Phase") -> "Phase":
        return Phase(self.k + other.k)

    def __neg__(self) -> "Phase":
        return Phase(self.k + 2)

    def conjugate(self) -> "Phase":
        return Phase(-self.k)

    @property
    def is_real(self) -> bool:
        return self.k % 2 == 0

    def as_complex(self) -> complex:
        return _PHASE_COMPLEX[self.k]

    def __str__(self) -> str:
        return {0: "+1", 1: "+i", 2: "-1", 3: "-i"}[self.k]


def _popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True, slots=True)
class PauliString:
    """n-qubit Pauli operator ``i^phase.k * X^x * Z^z`` (bit-packed)."""

    n: int
    x: int = 0
    z: int = 0
    phase: Phase = Phase(0)

    def __post_init__(self):
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask:
            raise InvariantViolation(
                f"x/z bits outside the {self.n}-qubit register"
            )

    # -- constructors -------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n)

    @classmethod
    def from_letters(
        cls, n: int, letters: dict[int, str], sign: int = 1
    ) -> "PauliString":
        """Build from {qubit: 'X'|'Y'|'Z'} with an overall sign of +1/-1
        (or a Phase)."""
        x = z = 0
        k = sign.k if isinstance(sign, Phase) else {1: 0, -1: 2}[sign]
        for q, letter in letters.items():
            if not 0 <= q < n:
                raise InvariantViolation(f"qubit {q} outside register of {n}")
            if letter == "X":
                x |= 1 << q
            elif letter == "Z":
                z |= 1 << q
            elif letter == "Y":
                x |= 1 << q
                z |= 1 << q
                k += 1  # Y = i X Z
            else:
                raise PauliParseError(f"unknown Pauli letter {letter!r}")
        return cls(n, x, z, Phase(k))

    # -- inspection ---------------------------------------------------

    @property
    def weight(self) -> int:
        return _popcount(self.x | self.z)

    @property
    def support(self) -> tuple[int, ...]:
        bits = self.x | self.z
        return tuple(q for q in range(self.n) if bits >> q & 1)

    def letter(self, q: int) -> str:
        xb, zb = self.x >> q & 1, self.z >> q & 1
        return {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}[(xb, zb)]

    @property
    def y_count(self) -> int:
        return _popcount(self.x & self.z)

    @property
    def is_hermitian(self) -> bool:
        # P† = i^{-k} Z^z X^x = i^{-k+2|x∧z|} X^x Z^z
        return (self.phase.k - self.y_count) % 2 == 0

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0 and self.phase.k == 0

    def symplectic(self) -> int:
        """2n-bit vector: low n bits = x part, high n bits = z part."""
        return self.x | self.z << self.n

    # -- algebra ------------------------------------------------------

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.n != other.n:
            raise InvariantViolation(
                f"length mismatch: {self.n} vs {other.n} qubits"
            )
        # (X^x1 Z^z1)(X^x2 Z^z2): moving X^x2 left past Z^z1 costs
        # (-1)^{|z1 ∧ x2|}
        k = self.phase.k + other.phase.k + 2 * _popcount(self.z & other.x)
        return PauliString(
            self.n, self.x ^ other.x, self.z ^ other.z, Phase(k)
        )

    def commutes(self, other: "PauliString") -> bool:
        if self.n != other.n:
            raise InvariantViolation(
                f"length mismatch: {self.n} vs {other.n} qubits"
            )
        return (
            _popcount(self.x & other.z) + _popcount(self.z & other.x)
        ) % 2 == 0

    def adjoint(self) -> "PauliString":
        return PauliString(
            self.n,
            self.x,
            self.z,
            Phase(-self.phase.k + 2 * self.y_count),
        )

    def with_phase(self, phase: Phase) -> "PauliString":
        return PauliString(self.n, self.x, self.z, phase)

    # -- text form ----------------------------------------------------

    def render(self, labels: list[str] | None = None) -> str:
        """Human-readable form, e.g. ``-Y_ij Y_jk Y_kl Y_li`` or ``iX_0 Z_3``.

        The printed letters multiply to i^{y_count} X^x Z^z, so the sign
        prefix is i^(k - y_count).
        """
        body = []
        for q in self.support:
            name = labels[q] if labels is not None else str(q)
            body.append(f"{self.letter(q)}_{name}")
        sign = _PHASE_STR[(self.phase.k - self.y_count) % 4]
        return sign + (" ".join(body) if body else "I")


_TERM_RE = re.compile(r"([XYZ])_(\S+)")


def parse_pauli(
    text: str, n: int, labels: list[str] | None = None
) -> PauliString:
    """Inverse of :meth:`PauliString.render`.

    ``labels`` maps qubit index -> label; by default labels are the
    decimal qubit indices.
    """
    s = text.strip()
    k = 0
    if s.startswith("-"):
        k += 2
        s = s[1:].lstrip()
    if s.startswith("i") and (len(s) == 1 or s[1] in "XYZI _"):
        k += 1
        s = s[1:].lstrip()
    if s in ("", "I"):
        return PauliString(n, phase=Phase(k))
    index = {
        label: q
        for q, label in enumerate(labels if labels is not None else [])
    }
    letters: dict[int, str] = {}
    matched = _TERM_RE.findall(s)
    if not matched or "".join(
        f"{c}_{lbl}" for c, lbl in matched
    ) != s.replace(" ", ""):
        raise PauliParseError(f"cannot parse Pauli text {text!r}")
    for letter, label in matched:
        if labels is not None:
            if label not in index:
                raise PauliParseError(f"unknown qubit label {label!r}")
            q = index[label]
        else:
            try:
                q = int(label)
            except ValueError:
                raise PauliParseError(
                    f"non-integer qubit label {label!r} without a label list"
                ) from None
        if not 0 <= q < n:
            raise PauliParseError(f"qubit {q} outside register of {n}")
        if q in letters:
            raise PauliParseError(f"duplicate qubit label {label!r}")
        letters[q] = letter
    p = PauliString.from_letters(n, letters)
    return p.with_phase(Phase(p.y_count + k))


def multiply(p: PauliString, q: PauliString) -> PauliString:
    """Exact group product (function form of ``p * q``)."""
    return p * q


def commutes(p: PauliString, q: PauliString) -> bool:
    """True iff pq = qp."""
    return p.commutes(q)


def weight(p: PauliString) -> int:
    """Number of qubits acted on non-trivially."""
    return p.weight


def product(factors, n: int | None = None) -> PauliString:
    """Product of an iterable of PauliStrings (left to right)."""
    factors = list(factors)
    if not factors:
        if n is None:
            raise ValueError("empty product needs an explicit qubit count")
        return PauliString.identity(n)
    return reduce(lambda a, b: a * b, factors)


class StabilizerGroup:
    """Abelian group of Hermitian Pauli strings, with exact phases.

    Keeps the generators as given plus a phase-tracked row-echelon form
    (rows are reduced by group multiplication, so every echelon row is a
    bona fide group element with its true sign).
    """

    def __init__(
        self,
        generators: list[PauliString],
        n: int | None = None,
        validate: bool = True,
    ):
        generators = list(generators)
        if not generators and n is None:
            raise InvariantViolation(
                "an empty stabilizer group needs an explicit qubit count"
            )
        n = generators[0].n if generators else n
        if any(g.n != n for g in generators):
            raise InvariantViolation("generators act on different registers")
        self.n = n
        self.generators = tuple(generators)
        if validate:
            for g in generators:
                if not g.is_hermitian:
                    raise InvariantViolation(
                        f"non-Hermitian generator {g.render()}"
                    )
            for i, g in enumerate(generators):
                for h in generators[i + 1 :]:
                    if not g.commutes(h):
                        raise InvariantViolation(
                            f"generators anticommute: "
                            f"{g.render()} vs {h.render()}"
                        )
        # phase-tracked echelon rows: list of (pivot_bit, PauliString)
        self._rows: list[tuple[int, PauliString]] = []
        for g in generators:
            row = self._reduce(g)
            if row.symplectic() == 0:
                if validate:
                    raise InvariantViolation(
                        "generators are GF(2)-dependent "
                        f"(redundant: {g.render()})"
                    )
                continue
            self._rows.append((row.symplectic().bit_length() - 1, row))
            self._rows.sort(key=lambda t: -t[0])

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, p: PauliString) -> PauliString:
        """Multiply echelon rows into p until its symplectic vector has no
        pivot in common with the rows."""
        v = p.symplectic()
        for pivot, row in self._rows:
            if v >> pivot & 1:
                p = p * row
                v = p.symplectic()
        return p

    def contains(self, p: PauliString) -> str:
        """Three-way membership: member / member_up_to_sign / non_member."""
        if p.n != self.n:
            raise InvariantViolation("operator acts on a different register")
        residue = self._reduce(p.adjoint())
        if residue.symplectic() != 0:
            return NON_MEMBER
        # residue = p† · (group element with p's symplectic vector)
        return MEMBER if residue.phase.k == 0 else MEMBER_UP_TO_SIGN

    def syndrome(self, p: PauliString) -> tuple[int, ...]:
        """±1 per generator: −1 where the generator anticommutes with p."""
        return tuple(
            1 if g.commutes(p) else -1 for g in self.generators
        )

    def elements(self):
        """Iterate all 2^rank group elements (small groups only)."""
        acc = [PauliString.identity(self.n)]
        for _, row in self._rows:
            acc += [e * row for e in acc]
        return acc
