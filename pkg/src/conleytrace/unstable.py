"""Permutation models of the essential quasicomponents of the unstable set.

``PermutationModel.phi[j]`` is the index of the quasicomponent that ``j`` is
sent to under the inverse of the lifted dynamics.  Every formula downstream
depends only on the cycle type, so using the forward map instead gives
identical traces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Mapping, Sequence

from .errors import InconsistentBlocks, InvalidPermutation, ParseError
from .exactalg import Matrix, Polynomial, det, permutation_matrix


@dataclass(frozen=True)
class PermutationModel:
    size: int
    phi: tuple[int, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(self.phi))
        object.__setattr__(self, "labels", tuple(self.labels))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]] | None = None, *, lengths: Sequence[int] = ()):
        """Build from explicit cycles, or from cycle lengths laid out consecutively."""
        if cycles is None:
            cycles, start = [], 0
            for r in lengths:
                cycles.append(list(range(start, start + r)))
                start += r
        size = sum(len(c) for c in cycles)
        phi = [None] * size
        for c in cycles:
            for a, b in zip(c, list(c[1:]) + [c[0]]):
                phi[a] = b
        return cls(size, tuple(phi))

    def check(self) -> None:
        if self.size < 0 or len(self.phi) != self.size:
            raise InvalidPermutation(f"phi has {len(self.phi)} entries but size is {self.size}")
        if sorted(self.phi) != list(range(self.size)):
            raise InvalidPermutation(f"{list(self.phi)} is not a permutation of 0..{self.size - 1}")
        if self.labels and len(self.labels) != self.size:
            raise InvalidPermutation("labels must match size")

    def inverse(self) -> "PermutationModel":
        self.check()
        inv = [0] * self.size
        for j, i in enumerate(self.phi):
            inv[i] = j
        return PermutationModel(self.size, tuple(inv), self.labels)

    def to_json(self) -> dict:
        out = {"size": self.size, "phi": list(self.phi)}
        if self.labels:
            out["labels"] = list(self.labels)
        return out


@dataclass(frozen=True)
class CycleStructure:
    cycles: tuple[tuple[int, ...], ...]
    d: int

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cycles)


def cycle_decomposition(p: PermutationModel) -> CycleStructure:
    """Cycles listed from their smallest member, in increasing order of it."""
    p.check()
    seen = [False] * p.size
    cycles = []
    for start in range(p.size):
        if seen[start]:
            continue
        cyc = []
        j = start
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = p.phi[j]
        cycles.append(tuple(cyc))
    d = reduce(gcd, (len(c) for c in cycles), 0)
    return CycleStructure(tuple(cycles), d)


def fix_count(p: PermutationModel, n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    return sum(r for r in cycle_decomposition(p).lengths if n % r == 0)


def h1_model_matrix(p: PermutationModel) -> Matrix:
    """Permutation matrix of phi on the span of the quasicomponents."""
    p.check()
    return permutation_matrix(p.phi)


def cycle_type_char_poly(p: PermutationModel) -> Polynomial:
    """prod over cycles of (x^r - 1)."""
    out = Polynomial([1])
    for r in cycle_decomposition(p).lengths:
        out = out * (Polynomial.monomial(r) - 1)
    return out


@dataclass(frozen=True)
class BranchCohomology:
    """Higher cohomology of the closures of the essential quasicomponents.

    ``betti[q][j]`` is the q-th Betti number of the j-th closure (q >= 2).
    ``block_maps[q][j]``, when given, is the map from the block of ``j`` to
    the block of ``phi[j]``; missing blocks default to the identity.
    """

    betti: Mapping[int, Sequence[int]] = field(default_factory=dict)
    block_maps: Mapping[int, Mapping[int, Matrix]] = field(default_factory=dict)

    def degrees(self) -> list[int]:
        return sorted(self.betti)

    def to_json(self) -> dict:
        return {str(q): list(v) for q, v in sorted(self.betti.items())}


def check_blocks(b: BranchCohomology, p: PermutationModel) -> None:
    structure = cycle_decomposition(p)
    for q, counts in b.betti.items():
        if q < 2:
            raise InconsistentBlocks(f"branch betti numbers start at degree 2, got {q}")
        if len(counts) != p.size:
            raise InconsistentBlocks(f"degree {q}: {len(counts)} betti numbers for {p.size} quasicomponents")
        for cyc in structure.cycles:
            vals = {counts[j] for j in cyc}
            if len(vals) > 1:
                raise InconsistentBlocks(f"degree {q}: betti numbers {sorted(vals)} vary along cycle {cyc}")
        for j, blk in b.block_maps.get(q, {}).items():
            k = counts[j]
            if blk.shape != (k, k):
                raise InconsistentBlocks(f"degree {q}: block for {j} has shape {blk.shape}, expected {(k, k)}")
            if k and det(blk) == 0:
                raise InconsistentBlocks(f"degree {q}: block for {j} is not invertible")


def block_matrix(b: BranchCohomology, p: PermutationModel, q: int) -> Matrix:
    """The block-permuted map on the direct sum of the blocks in degree q."""
    check_blocks(b, p)
    counts = list(b.betti.get(q, [0] * p.size))
    offsets = [0]
    for k in counts:
        offsets.append(offsets[-1] + k)
    total = offsets[-1]
    rows = [[Fraction(0)] * total for _ in range(total)]
    blocks = b.block_maps.get(q, {})
    for j in range(p.size):
        k = counts[j]
        blk = blocks.get(j, Matrix.identity(k))
        i = p.phi[j]
        for a in range(k):
            for c in range(k):
                rows[offsets[i] + a][offsets[j] + c] = blk[a, c]
    return Matrix(rows, shape=(total, total))


def higher_block_trace(b: BranchCohomology, p: PermutationModel, q: int, n: int) -> Fraction:
    if q < 2:
        raise ValueError("higher_block_trace is defined for q >= 2")
    if n < 1:
        raise ValueError("n must be >= 1")
    m = block_matrix(b, p, q)
    return (m**n).trace() if m.rows else Fraction(0)


@dataclass(frozen=True)
class ChiVerdict:
    passed: bool
    d: int
    chi_X: int
    chi_Wu_rel: int
    chi_block: int
    block_congruent: bool
    exact_additivity: bool
    message: str


def relative_euler_characteristic(b: BranchCohomology, p: PermutationModel) -> int:
    """chi of the unstable set relative to X and the point at infinity.

    Degree 1 contributes the number of essential quasicomponents; degree
    q >= 2 contributes the sum of the branch Betti numbers; degree 0 is zero.
    """
    check_blocks(b, p)
    chi = -p.size
    for q, counts in b.betti.items():
        chi += (-1) ** q * sum(counts)
    return chi


def chi_congruence_check(b: BranchCohomology, p: PermutationModel, chi_X: int, chi_Wu_rel: int) -> ChiVerdict:
    d = cycle_decomposition(p).d
    chi_block = relative_euler_characteristic(b, p)
    diff = chi_Wu_rel - chi_X
    if d == 0:
        passed = diff == 0
        block_ok = chi_block == 0
        msg = "no essential quasicomponents: requires exact equality"
    else:
        passed = diff % d == 0
        block_ok = chi_block % d == 0
        msg = f"congruence mod {d}"
    exact = chi_block == diff
    if not passed:
        msg += f"; chi(Wu, inf) - chi(X) = {diff} fails"
    if not block_ok:
        msg += f"; block model chi = {chi_block} fails"
    return ChiVerdict(passed and block_ok, d, chi_X, chi_Wu_rel, chi_block, block_ok, exact, msg)


def permutation_from_json(data, where: str = "$") -> tuple[PermutationModel, BranchCohomology]:
    if not isinstance(data, dict):
        raise ParseError("permutation model must be an object", where)
    phi = data.get("phi")
    if not isinstance(phi, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in phi):
        raise ParseError("phi must be a list of integers", f"{where}.phi")
    size = data.get("size", len(phi))
    labels = data.get("labels", [])
    p = PermutationModel(size, tuple(phi), tuple(str(x) for x in labels))
    try:
        p.check()
    except InvalidPermutation as exc:
        raise ParseError(str(exc), where) from None
    betti = {}
    for q, counts in data.get("branch_betti", {}).items():
        if not str(q).isdigit() or not isinstance(counts, list):
            raise ParseError("branch_betti must map degrees to lists of counts", f"{where}.branch_betti")
        betti[int(q)] = tuple(counts)
    branch = BranchCohomology(betti)
    try:
        check_blocks(branch, p)
    except InconsistentBlocks as exc:
        raise ParseError(str(exc), f"{where}.branch_betti") from None
    return p, branch
