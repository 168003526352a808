"""Finite chain-complex models of index pairs and their relative cohomology.

A :class:`ChainPairModel` is the relative chain complex C(N)/C(L) of an index
pair, with boundary matrices ``boundary[q]: C_q -> C_{q-1}`` and a chain map
``chain_map[q]: C_q -> C_q`` standing for the index map.  Cohomology is taken
over Q with coboundary ``delta^q = boundary[q+1]^T``; the index map acts on
cochains by the transpose of ``chain_map[q]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import InvalidModel, ParseError
from .exactalg import Matrix, image_basis, inverse, kernel_basis, rank, solve, to_fraction


@dataclass(frozen=True)
class ChainPairModel:
    max_degree: int
    boundary: Mapping[int, Matrix]
    chain_map: Mapping[int, Matrix]
    name: str = ""

    def dim(self, q: int) -> int:
        """Rank of the relative chain group C_q (0 outside 0..max_degree)."""
        if q < 0 or q > self.max_degree:
            return 0
        f = self.chain_map.get(q)
        return f.rows if f is not None else 0

    def boundary_at(self, q: int) -> Matrix:
        """The boundary C_q -> C_{q-1}, zero when not supplied."""
        b = self.boundary.get(q)
        if b is not None:
            return b
        return Matrix.zeros(self.dim(q - 1), self.dim(q))

    def map_at(self, q: int) -> Matrix:
        f = self.chain_map.get(q)
        return f if f is not None else Matrix.zeros(self.dim(q))

    def degrees(self) -> range:
        return range(self.max_degree + 1)

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * self.dim(q) for q in self.degrees())

    def with_chain_map(self, chain_map: Mapping[int, Matrix]) -> "ChainPairModel":
        return ChainPairModel(self.max_degree, dict(self.boundary), dict(chain_map), self.name)

    def to_json(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "boundary": {str(q): self.boundary_at(q).to_json() for q in range(1, self.max_degree + 1)},
            "chain_map": {str(q): self.map_at(q).to_json() for q in self.degrees()},
        }


@dataclass(frozen=True)
class Violation:
    kind: str
    degrees: tuple[int, ...]
    message: str

    def __str__(self) -> str:
        return f"[{self.kind} @ degrees {self.degrees}] {self.message}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate(model: ChainPairModel) -> ValidationReport:
    """Check shapes, d∘d = 0 and that the chain map commutes with d."""
    report = ValidationReport()
    add = report.violations.append
    top = model.max_degree
    if top < 0:
        add(Violation("degree_range", (top,), "max_degree must be >= 0"))
        return report

    for q in model.chain_map:
        if not 0 <= q <= top:
            add(Violation("degree_range", (q,), f"chain map given in degree {q} outside 0..{top}"))
    for q in model.boundary:
        if not 1 <= q <= top:
            add(Violation("degree_range", (q,), f"boundary given in degree {q} outside 1..{top}"))

    shapes_ok = True
    for q in model.degrees():
        f = model.chain_map.get(q)
        if f is None:
            add(Violation("missing", (q,), f"no chain map in degree {q}"))
            shapes_ok = False
        elif not f.is_square:
            add(Violation("shape", (q,), f"chain map in degree {q} is {f.shape}, not square"))
            shapes_ok = False
    if not shapes_ok:
        return report
    for q in range(1, top + 1):
        b = model.boundary_at(q)
        want = (model.dim(q - 1), model.dim(q))
        if b.shape != want:
            add(Violation("shape", (q,), f"boundary in degree {q} is {b.shape}, expected {want}"))
            shapes_ok = False
    if not shapes_ok:
        return report

    for q in range(1, top):
        if not (model.boundary_at(q) @ model.boundary_at(q + 1)).is_zero():
            add(Violation("boundary_squared", (q, q + 1), f"d_{q} o d_{q + 1} != 0"))
    for q in range(1, top + 1):
        b = model.boundary_at(q)
        if b @ model.map_at(q) != model.map_at(q - 1) @ b:
            add(
                Violation(
                    "chain_map_commutation",
                    (q, q - 1),
                    f"d_{q} o f_{q} != f_{q - 1} o d_{q}",
                )
            )
    return report


def require_valid(model: ChainPairModel) -> None:
    report = validate(model)
    if not report.ok:
        lines = "; ".join(str(v) for v in report.violations)
        raise InvalidModel(f"invalid chain pair model: {lines}", report.violations)


@dataclass(frozen=True)
class CohomologyGroup:
    """Ȟ^q as Z^q / B^q with chosen cocycle representatives (as columns)."""

    degree: int
    betti: int
    representatives: Matrix
    coboundaries: Matrix

    def coordinates(self, cocycle_columns: Matrix) -> Matrix:
        """Coordinates of cocycles in the representative basis."""
        frame = self.coboundaries.hstack(self.representatives)
        x = solve(frame, cocycle_columns)
        nb = self.coboundaries.cols
        return x.submatrix(range(nb, nb + self.betti), range(x.cols))


def _columns(vectors, nrows: int) -> Matrix:
    return Matrix.from_columns(vectors, nrows)


def cohomology(model: ChainPairModel) -> dict[int, CohomologyGroup]:
    """Relative cohomology of the model in every degree 0..max_degree."""
    require_valid(model)
    groups: dict[int, CohomologyGroup] = {}
    for q in model.degrees():
        n = model.dim(q)
        cocycles = kernel_basis(model.boundary_at(q + 1).T)
        coboundaries = image_basis(model.boundary_at(q).T) if q > 0 else []
        chosen: list[tuple] = []
        current = len(coboundaries)
        for z in cocycles:
            trial = _columns(coboundaries + chosen + [z], n)
            if rank(trial) > current:
                chosen.append(z)
                current += 1
        groups[q] = CohomologyGroup(q, len(chosen), _columns(chosen, n), _columns(coboundaries, n))

    chi_chains = model.euler_characteristic()
    chi_coh = sum((-1) ** q * g.betti for q, g in groups.items())
    assert chi_chains == chi_coh, "Euler-Poincare identity failed"
    return groups


@dataclass(frozen=True)
class InducedMap:
    degree: int
    betti: int
    matrix: Matrix
    group: CohomologyGroup


@dataclass(frozen=True)
class GradedEndomorphism:
    """The endomorphism induced on Ȟ^*(N/L,[L]), degree by degree."""

    maps: dict[int, InducedMap]

    def __getitem__(self, q: int) -> Matrix:
        return self.maps[q].matrix

    def betti(self, q: int) -> int:
        return self.maps[q].betti if q in self.maps else 0

    def degrees(self):
        return sorted(self.maps)

    def verify_certificate(self, model: ChainPairModel) -> bool:
        """Recompute every matrix from the stored representatives."""
        for q, m in self.maps.items():
            images = model.map_at(q).T @ m.group.representatives
            if m.group.coordinates(images) != m.matrix:
                return False
        return True


def induced_endomorphism(model: ChainPairModel) -> GradedEndomorphism:
    groups = cohomology(model)
    maps = {}
    for q, g in groups.items():
        images = model.map_at(q).T @ g.representatives
        maps[q] = InducedMap(q, g.betti, g.coordinates(images), g)
    return GradedEndomorphism(maps)


def iterate_model(model: ChainPairModel, n: int) -> ChainPairModel:
    """Same complex with the chain map replaced by its n-th power."""
    if n < 1:
        raise ValueError("iterate count must be >= 1")
    require_valid(model)
    if n == 1:
        return model
    return model.with_chain_map({q: model.map_at(q) ** n for q in model.degrees()})


def conjugate_model(model: ChainPairModel, change: Mapping[int, Matrix]) -> ChainPairModel:
    """Rewrite the model in a new chain basis: X'_q = S_q X_q S_q^{-1}."""
    inv = {q: inverse(change[q]) for q in model.degrees()}
    boundary = {
        q: change[q - 1] @ model.boundary_at(q) @ inv[q] for q in range(1, model.max_degree + 1)
    }
    chain_map = {q: change[q] @ model.map_at(q) @ inv[q] for q in model.degrees()}
    return ChainPairModel(model.max_degree, boundary, chain_map, model.name)


# ---------------------------------------------------------------------------
# JSON


def _parse_matrix(data, where: str, shape: tuple[int, int] | None) -> Matrix:
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise ParseError("expected a list of rows", where)
    if shape is not None and (shape[0] == 0 or shape[1] == 0):
        if any(len(r) for r in data) or (shape[0] == 0 and data):
            raise ParseError(f"expected an empty {shape} matrix", where)
        return Matrix.zeros(*shape)
    for i, row in enumerate(data):
        for j, x in enumerate(row):
            try:
                to_fraction(x)
            except (TypeError, ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad rational entry {x!r} ({exc})", f"{where}[{i}][{j}]") from None
    try:
        return Matrix(data, shape=shape)
    except ValueError as exc:
        raise ParseError(str(exc), where) from None


def model_from_json(data, where: str = "$") -> ChainPairModel:
    """Parse the chain-pair JSON schema; errors carry a JSON-path location."""
    if not isinstance(data, dict):
        raise ParseError("chain pair model must be an object", where)
    for key in ("max_degree", "chain_map"):
        if key not in data:
            raise ParseError(f"missing key {key!r}", where)
    top = data["max_degree"]
    if not isinstance(top, int) or isinstance(top, bool) or top < 0:
        raise ParseError("max_degree must be a non-negative integer", f"{where}.max_degree")
    raw_maps = data["chain_map"]
    raw_bd = data.get("boundary", {})
    for key, raw in (("chain_map", raw_maps), ("boundary", raw_bd)):
        if not isinstance(raw, dict):
            raise ParseError("expected an object keyed by degree", f"{where}.{key}")
        for q in raw:
            if not str(q).lstrip("-").isdigit():
                raise ParseError(f"degree key {q!r} is not an integer", f"{where}.{key}")

    chain_map: dict[int, Matrix] = {}
    for q_str, m in raw_maps.items():
        q = int(q_str)
        loc = f"{where}.chain_map.{q_str}"
        if not isinstance(m, list):
            raise ParseError("expected a list of rows", loc)
        n = len(m)
        chain_map[q] = _parse_matrix(m, loc, (n, n) if n == 0 else None)
    dims = {q: f.rows for q, f in chain_map.items()}
    boundary: dict[int, Matrix] = {}
    for q_str, m in raw_bd.items():
        q = int(q_str)
        loc = f"{where}.boundary.{q_str}"
        shape = (dims.get(q - 1, 0), dims.get(q, 0))
        boundary[q] = _parse_matrix(m, loc, shape if 0 in shape else None)
    return ChainPairModel(top, boundary, chain_map, str(data.get("name", "")))
