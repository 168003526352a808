"""Built-in scenarios: minimal chain models with their permutation data.

The chain complexes are the smallest relative complexes realising the
required cohomology and index maps, not discretisations of actual maps.

The workhorse is the *star* complex of a permutation of m quasicomponents:
one 0-cell ``c`` and m 1-cells ``e_j`` with relative boundary ``-c`` (the
other endpoint of each ``e_j`` lies in the exit set).  Its relative
cohomology is concentrated in degree 1, of dimension m - 1, and the index
map permuting the ``e_j`` has trace #Fix(phi^n) - 1 there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .chains import ChainPairModel, validate
from .errors import UnsupportedDimension
from .exactalg import Matrix, permutation_matrix
from .formulas import RestrictionData, ScenarioBundle, lcy_template
from .unstable import BranchCohomology, PermutationModel, block_matrix

DEFAULT_N_MAX = 8


def _empty(n: int = 0) -> Matrix:
    return Matrix.zeros(n)


def _pad(chain_map: dict[int, Matrix], top: int) -> dict[int, Matrix]:
    return {q: chain_map.get(q, _empty()) for q in range(top + 1)}


def star_model(perm: PermutationModel, max_degree: int = 1, name: str = "") -> ChainPairModel:
    """Relative complex whose degree-1 index is the permutation modulo constants."""
    perm.check()
    m = perm.size
    boundary = {1: Matrix([[-1] * m], shape=(1, m))}
    chain_map = {0: Matrix([[1]]), 1: permutation_matrix(perm.phi)}
    return ChainPairModel(max_degree, boundary, _pad(chain_map, max_degree), name)


def point_model(degree: int, sign: int, max_degree: int, name: str = "") -> ChainPairModel:
    """One cell in ``degree`` with index map ``sign``; nothing else."""
    chain_map = {degree: Matrix([[sign]])}
    return ChainPairModel(max_degree, {}, _pad(chain_map, max_degree), name)


def s2_model(unstable: PermutationModel, stable: PermutationModel, sign: int, name: str = "") -> ChainPairModel:
    """Three-dimensional model: a star for the unstable side in degrees 0-1 and
    the dual star of the stable side in degrees 2-3, twisted by ``sign``."""
    m, k = unstable.size, stable.size
    boundary = {
        1: Matrix([[-1] * m], shape=(1, m)),
        2: Matrix.zeros(m, k),
        3: Matrix([[1] for _ in range(k)], shape=(k, 1)),
    }
    chain_map = {
        0: Matrix([[1]]),
        1: permutation_matrix(unstable.phi),
        2: permutation_matrix(stable.phi) * sign,
        3: Matrix([[sign]]),
    }
    return ChainPairModel(3, boundary, chain_map, name)


def _trivial_restriction(top: int, hX: dict[int, Matrix] | None = None) -> RestrictionData:
    hX = hX or {0: Matrix([[1]])}
    return RestrictionData(
        im_i_star={q: _empty() for q in range(1, max(top, 1) + 1)},
        hX={q: hX.get(q, _empty()) for q in range(top + 1)},
    )


def gen_g_horseshoe(n_max: int = DEFAULT_N_MAX) -> ScenarioBundle:
    """Planar G-horseshoe: H_1(N, L) spanned by two vertical arcs a, b with
    f(a) = f(b) = a + b, giving eigenvalues 0 and 2."""
    model = ChainPairModel(
        2,
        {},
        {0: _empty(), 1: Matrix([[1, 1], [1, 1]]), 2: _empty()},
        "g_horseshoe",
    )
    return ScenarioBundle.from_model(
        model,
        n_max,
        perm=None,
        restriction=RestrictionData(),
        planar=True,
        dim_ambient=2,
        name="g_horseshoe",
        expected={
            "nonzero_spectra": {1: ["-2", "1"]},
            "index_sequence": [-(2**n) for n in range(1, n_max + 1)],
            "theorem7": "infinitely many components",
        },
    )


def gen_smale_horseshoe_unstable() -> PermutationModel:
    """The horseshoe's single essential quasicomponent, fixed by the dynamics."""
    return PermutationModel(1, (0,), ("F",))


def gen_lcy(r: int, q: int, n_max: int = DEFAULT_N_MAX) -> ScenarioBundle:
    """Planar fixed point with r*q essential quasicomponents in q cycles of length r."""
    if r < 1 or q < 1:
        raise ValueError("r and q must be >= 1")
    perm = PermutationModel.from_cycles(lengths=[r] * q)
    model = star_model(perm, max_degree=2, name=f"lcy_r{r}_q{q}")
    dual = star_model(perm.inverse(), max_degree=2, name=f"lcy_r{r}_q{q}_inverse")
    return ScenarioBundle.from_model(
        model,
        n_max,
        perm=perm,
        restriction=_trivial_restriction(2),
        planar=True,
        dual_model=dual,
        dim_ambient=2,
        orientation=1,
        name="lcy",
        parameters={"r": r, "q": q},
        expected={"index_sequence": lcy_template(r, q, n_max)},
    )


def _check_dim(dim: int, allowed) -> None:
    if dim not in allowed:
        raise UnsupportedDimension(f"dimension {dim} not in {sorted(allowed)}")


def gen_attractor_point(dim: int = 2, orientation: int = 1, n_max: int = DEFAULT_N_MAX) -> ScenarioBundle:
    """Attracting fixed point: (N, empty) with N a point up to homotopy."""
    _check_dim(dim, {0, 1, 2, 3})
    model = point_model(0, 1, dim, f"attractor_point_d{dim}")
    dual = point_model(dim, orientation, dim, f"repeller_d{dim}") if dim else None
    return ScenarioBundle.from_model(
        model,
        n_max,
        perm=PermutationModel(0, ()),
        restriction=_trivial_restriction(dim),
        is_attractor=True,
        planar=dim == 2,
        dual_model=dual,
        dim_ambient=dim,
        orientation=orientation,
        name="attractor_point",
        parameters={"dim": dim, "orientation": orientation},
        expected={"index_sequence": [1] * n_max},
    )


def gen_attractor_circle(orientation: int = 1, n_max: int = DEFAULT_N_MAX) -> ScenarioBundle:
    """Attracting invariant circle in the plane; f acts on it with degree ``orientation``."""
    model = ChainPairModel(
        2,
        {1: Matrix([[0]])},
        {0: Matrix([[1]]), 1: Matrix([[orientation]]), 2: _empty()},
        "attractor_circle",
    )
    on_circle = Matrix([[orientation]])
    restriction = RestrictionData(
        im_i_star={1: on_circle, 2: _empty()},
        hX={0: Matrix([[1]]), 1: on_circle, 2: _empty()},
    )
    return ScenarioBundle.from_model(
        model,
        n_max,
        perm=PermutationModel(0, ()),
        restriction=restriction,
        is_attractor=True,
        planar=True,
        name="attractor_circle",
        parameters={"orientation": orientation},
        expected={"index_sequence": [1 - orientation**n for n in range(1, n_max + 1)]},
    )


def gen_repeller(orientation: int = 1, dim: int = 2, n_max: int = DEFAULT_N_MAX) -> ScenarioBundle:
    """Repelling fixed point: (N, boundary of N) with N/L a dim-sphere."""
    _check_dim(dim, {1, 2, 3})
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    model = point_model(dim, orientation, dim, f"repeller_d{dim}")
    if dim == 1:
        # two half-lines, swapped when orientation is reversed
        perm = PermutationModel(2, (0, 1) if orientation == 1 else (1, 0))
        branch = BranchCohomology()
    else:
        perm = PermutationModel(1, (0,))
        branch = BranchCohomology({dim: (1,)})
    sign = (-1) ** dim
    return ScenarioBundle.from_model(
        model,
        n_max,
        perm=perm,
        restriction=_trivial_restriction(dim),
        branch=branch,
        planar=dim == 2,
        dual_model=point_model(0, 1, dim, f"attractor_point_d{dim}"),
        dim_ambient=dim,
        orientation=orientation,
        name="repeller",
        parameters={"orientation": orientation, "dim": dim},
        expected={"index_sequence": [sign * orientation**n for n in range(1, n_max + 1)]},
    )


def gen_s2_continuum(n_max: int = DEFAULT_N_MAX) -> ScenarioBundle:
    """Isolated continuum with the cohomology of S^2 for an orientation-reversing
    homeomorphism of R^3 fixing both complementary components.

    Unstable side: two essential quasicomponents swapped.  Stable side: two
    quasicomponents, each fixed.
    """
    phi = PermutationModel(2, (1, 0))
    psi = PermutationModel(2, (0, 1))
    sign = -1
    model = s2_model(phi, psi, sign, "s2_continuum")
    dual = s2_model(psi, phi, sign, "s2_continuum_inverse")
    on_sphere = Matrix([[sign]])
    restriction = RestrictionData(
        im_i_star={1: _empty(), 2: on_sphere, 3: _empty()},
        hX={0: Matrix([[1]]), 1: _empty(), 2: on_sphere, 3: _empty()},
    )
    return ScenarioBundle.from_model(
        model,
        n_max,
        perm=phi,
        restriction=restriction,
        stable_perm=psi,
        orientation_reversing=True,
        fixes_complement_components=True,
        dual_model=dual,
        dim_ambient=3,
        orientation=sign,
        name="s2_continuum",
        expected={"index_sequence": [0] * n_max},
    )


def gen_cycle_with_branches(
    k: int, branch_betti: dict[int, int] | None = None, n_max: int = DEFAULT_N_MAX
) -> ScenarioBundle:
    """Point-like X whose k essential quasicomponents form one cycle; each
    closure carries ``branch_betti[q]`` dimensions of Ȟ^q, permuted blockwise."""
    if k < 1:
        raise ValueError("k must be >= 1")
    betti = {q: b for q, b in (branch_betti or {}).items() if b}
    perm = PermutationModel.from_cycles(lengths=[k])
    branch = BranchCohomology({q: (b,) * k for q, b in betti.items()})
    top = max([2, *betti])
    star = star_model(perm, max_degree=1)
    chain_map = {0: star.map_at(0), 1: star.map_at(1)}
    for q in range(2, top + 1):
        chain_map[q] = block_matrix(branch, perm, q) if q in betti else _empty()
    boundary = {1: star.boundary_at(1)}
    for q in range(2, top + 1):
        boundary[q] = Matrix.zeros(chain_map[q - 1].rows, chain_map[q].rows)
    model = ChainPairModel(top, boundary, chain_map, f"cycle_k{k}")
    return ScenarioBundle.from_model(
        model,
        n_max,
        perm=perm,
        branch=branch,
        restriction=_trivial_restriction(top),
        name="cycle_with_branches",
        parameters={"k": k, "branch_betti": {str(q): b for q, b in sorted(betti.items())}},
    )


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    description: str
    factory: Callable[..., ScenarioBundle]
    parameters: dict = field(default_factory=dict)

    def build(self, n_max: int = DEFAULT_N_MAX, **overrides) -> ScenarioBundle:
        params = {**self.parameters, **{k: v for k, v in overrides.items() if v is not None}}
        return self.factory(n_max=n_max, **params)


SCENARIOS: dict[str, ScenarioSpec] = {
    s.name: s
    for s in (
        ScenarioSpec("g_horseshoe", "planar G-horseshoe, h^1 eigenvalues 0 and 2", gen_g_horseshoe),
        ScenarioSpec("lcy", "planar fixed point with r*q petals in q cycles of length r", gen_lcy, {"r": 3, "q": 2}),
        ScenarioSpec("attractor_point", "attracting fixed point", gen_attractor_point, {"dim": 2, "orientation": 1}),
        ScenarioSpec("attractor_circle", "attracting invariant circle", gen_attractor_circle, {"orientation": 1}),
        ScenarioSpec("repeller", "repelling fixed point", gen_repeller, {"orientation": 1, "dim": 2}),
        ScenarioSpec("s2_continuum", "S^2-like continuum in R^3, orientation reversing", gen_s2_continuum),
    )
}


def all_builtin_bundles(n_max: int = DEFAULT_N_MAX) -> list[ScenarioBundle]:
    """A spread of parameter choices over every built-in scenario."""
    out = [gen_g_horseshoe(n_max), gen_s2_continuum(n_max)]
    out += [gen_lcy(r, q, n_max) for r in (1, 2, 3) for q in (1, 2)]
    out += [gen_attractor_point(dim, o, n_max) for dim in (0, 1, 2, 3) for o in (1, -1)]
    out += [gen_attractor_circle(o, n_max) for o in (1, -1)]
    out += [gen_repeller(o, dim, n_max) for dim in (1, 2, 3) for o in (1, -1)]
    for b in out:
        assert validate(b.model).ok, b.name
    return out
