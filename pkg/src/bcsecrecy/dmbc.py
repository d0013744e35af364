"""Rate-region evaluators for finite broadcast channels with an eavesdropper.

A distribution over (U, V1, V2, X, Y1, Y2, Z) is supplied factored as
p(u) * p(v1,v2|u) * p(x|v1,v2) * p(y1,y2,z|x).  Mutual informations are
computed exactly from the joint table and fed to the single-letter region
formulas, each of which returns half-planes over the rate pair (R1, R2).

Every evaluator is plain arithmetic, so Fraction-valued inputs yield
Fraction-valued half-plane constants (used by the projection cross-checks).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from fractions import Fraction

from .errors import AlphabetBudgetError, SchemaError
from .ldbc import DeterministicChannelParams

__all__ = [
    "VAR_ORDER",
    "JointDistribution",
    "mutual_information",
    "conditional_entropy",
    "InfoTerms",
    "info_terms",
    "SideCondition",
    "RegionSpec2D",
    "region_primitive",
    "region_superposition",
    "region_superposition_lessnoisy",
    "region_deterministic_capacity",
    "region_upper_bound",
    "region_capacity_comparable",
    "region_marton_individual",
    "region_marton_joint",
    "region_joint_lessnoisy",
    "region_ekrem_comparison",
    "ldbc_as_dmbc",
    "union_contains",
]

VAR_ORDER = ("U", "V1", "V2", "X", "Y1", "Y2", "Z")

_NORM_TOL = 1e-12
_CHAIN_TOL = 1e-9


def _check_pmf_slice(row, what):
    if any(p < 0 for p in row):
        raise SchemaError(f"negative probability in {what}")
    if abs(sum(row) - 1) > _NORM_TOL:
        raise SchemaError(f"{what} sums to {float(sum(row))!r}, not 1")


class JointDistribution:
    """Finite joint law over (U, V1, V2, X, Y1, Y2, Z), stored by support.

    Construct through :meth:`from_factors` (dense factor tables, validated)
    or :meth:`from_json`.  The channel may be given as a dense conditional
    table indexed [x][y1][y2][z] or as three deterministic maps x -> symbol.
    """

    def __init__(self, sizes, input_support, channel_entries):
        self.sizes = dict(sizes)
        self._input_support = tuple(input_support)
        self._channel_entries = tuple(channel_entries)
        self._joint = None
        self._marginals = {}

    @classmethod
    def from_factors(cls, p_u, p_v1v2_given_u, p_x_given_v1v2, channel=None,
                     deterministic=None):
        nu = len(p_u)
        nv1 = len(p_v1v2_given_u[0])
        nv2 = len(p_v1v2_given_u[0][0])
        nx = len(p_x_given_v1v2[0][0])
        _check_pmf_slice(p_u, "p(u)")
        for u in range(nu):
            _check_pmf_slice(
                [p_v1v2_given_u[u][a][b] for a in range(nv1) for b in range(nv2)],
                f"p(v1,v2|u={u})",
            )
        for a in range(nv1):
            for b in range(nv2):
                _check_pmf_slice(p_x_given_v1v2[a][b], f"p(x|v1={a},v2={b})")

        if (channel is None) == (deterministic is None):
            raise SchemaError("supply exactly one of channel / deterministic")
        if deterministic is not None:
            y1m, y2m, zm = deterministic["y1"], deterministic["y2"], deterministic["z"]
            if not (len(y1m) == len(y2m) == len(zm) == nx):
                raise SchemaError("deterministic maps must have one entry per x")
            ny1 = max(y1m, default=0) + 1
            ny2 = max(y2m, default=0) + 1
            nz = max(zm, default=0) + 1
            channel_entries = tuple(
                (((y1m[x], y2m[x], zm[x]), 1),) for x in range(nx)
            )
        else:
            ny1, ny2, nz = len(channel[0]), len(channel[0][0]), len(channel[0][0][0])
            channel_entries = []
            for x in range(nx):
                flat = [
                    channel[x][y1][y2][z]
                    for y1 in range(ny1) for y2 in range(ny2) for z in range(nz)
                ]
                _check_pmf_slice(flat, f"p(y1,y2,z|x={x})")
                channel_entries.append(tuple(
                    ((y1, y2, z), channel[x][y1][y2][z])
                    for y1 in range(ny1) for y2 in range(ny2) for z in range(nz)
                    if channel[x][y1][y2][z] > 0
                ))
            channel_entries = tuple(channel_entries)

        support = []
        for u in range(nu):
            pu = p_u[u]
            if pu <= 0:
                continue
            for a in range(nv1):
                for b in range(nv2):
                    pv = p_v1v2_given_u[u][a][b]
                    if pv <= 0:
                        continue
                    for x in range(nx):
                        px = p_x_given_v1v2[a][b][x]
                        if px > 0:
                            support.append(((u, a, b, x), pu * pv * px))
        sizes = {"U": nu, "V1": nv1, "V2": nv2, "X": nx,
                 "Y1": ny1, "Y2": ny2, "Z": nz}
        return cls(sizes, support, channel_entries)

    @classmethod
    def from_json(cls, doc):
        try:
            kwargs = {}
            if "channel_deterministic" in doc:
                kwargs["deterministic"] = doc["channel_deterministic"]
            else:
                kwargs["channel"] = doc["channel"]
            return cls.from_factors(
                doc["p_u"], doc["p_v1v2_given_u"], doc["p_x_given_v1v2"], **kwargs
            )
        except (KeyError, IndexError, TypeError) as exc:
            raise SchemaError(f"malformed distribution document: {exc}") from exc

    def joint(self):
        """Dict {(u, v1, v2, x, y1, y2, z): p} over the support."""
        if self._joint is None:
            table = {}
            for (u, a, b, x), pin in self._input_support:
                for (y1, y2, z), pch in self._channel_entries[x]:
                    key = (u, a, b, x, y1, y2, z)
                    table[key] = table.get(key, 0) + pin * pch
            self._joint = table
        return self._joint

    def marginal(self, names):
        """Marginal pmf over the named variables (keys follow VAR_ORDER)."""
        names = _canonical_vars(names)
        if names not in self._marginals:
            idx = tuple(VAR_ORDER.index(n) for n in names)
            table = {}
            for key, p in self.joint().items():
                sub = tuple(key[i] for i in idx)
                table[sub] = table.get(sub, 0) + p
            self._marginals[names] = table
        return self._marginals[names]


def _canonical_vars(names):
    names = tuple(names) if not isinstance(names, str) else (names,)
    for n in names:
        if n not in VAR_ORDER:
            raise SchemaError(f"unknown variable {n!r} (expected one of {VAR_ORDER})")
    if len(set(names)) != len(names):
        raise SchemaError(f"duplicate variable in {names}")
    return tuple(n for n in VAR_ORDER if n in names)


def _subkey(key, vars_all, wanted):
    pos = [vars_all.index(w) for w in wanted]
    return tuple(key[i] for i in pos)


def mutual_information(dist, left, right, given=()):
    """I(left; right | given) in bits, with the 0 log 0 = 0 convention."""
    left = _canonical_vars(left)
    right = _canonical_vars(right)
    given = _canonical_vars(given) if given else ()
    if set(left) & set(right) or set(left) & set(given) or set(right) & set(given):
        raise SchemaError("variable sets must be disjoint")
    vars_all = _canonical_vars(left + right + given)
    vars_lg = _canonical_vars(left + given)
    vars_rg = _canonical_vars(right + given)
    p_lrg = dist.marginal(vars_all)
    p_lg = dist.marginal(vars_lg)
    p_rg = dist.marginal(vars_rg)
    p_g = dist.marginal(given) if given else {(): 1}
    total = 0.0
    for key, p in p_lrg.items():
        if p <= 0:
            continue
        lg = _subkey(key, vars_all, vars_lg)
        rg = _subkey(key, vars_all, vars_rg)
        g = _subkey(key, vars_all, given) if given else ()
        total += p * math.log2((p * p_g[g]) / (p_lg[lg] * p_rg[rg]))
    assert total >= -_NORM_TOL, f"mutual information {total} < 0 beyond rounding"
    return max(total, 0.0)


def conditional_entropy(dist, left, given=()):
    """H(left | given) in bits."""
    left = _canonical_vars(left)
    given = _canonical_vars(given) if given else ()
    if set(left) & set(given):
        raise SchemaError("variable sets must be disjoint")
    vars_all = _canonical_vars(left + given)
    p_lg = dist.marginal(vars_all)
    p_g = dist.marginal(given) if given else {(): 1}
    total = 0.0
    for key, p in p_lg.items():
        if p <= 0:
            continue
        g = _subkey(key, vars_all, given) if given else ()
        total -= p * math.log2(p / p_g[g])
    return max(total, 0.0)


@dataclass(frozen=True)
class InfoTerms:
    """Named information quantities consumed by the region formulas.

    Conditioning is written ``_g_``; ``i_uv1_y1`` abbreviates I(U,V1; Y1).
    Values may be floats (measured from a distribution) or Fractions
    (synthetic instantiations for exact cross-checks).
    """

    i_u_y1: object = 0.0
    i_u_y2: object = 0.0
    i_u_z: object = 0.0
    i_v1_y1_g_u: object = 0.0
    i_v2_y2_g_u: object = 0.0
    i_v1_z_g_u: object = 0.0
    i_v2_z_g_u: object = 0.0
    i_uv1_y1: object = 0.0
    i_uv2_y2: object = 0.0
    i_v1_v2_g_u: object = 0.0
    i_v12_z_g_u: object = 0.0
    i_uv12_z: object = 0.0
    i_x_y1: object = 0.0
    i_x_y2: object = 0.0
    i_x_z: object = 0.0
    h_y2_g_z: object = 0.0

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


def info_terms(dist) -> InfoTerms:
    """Measure every named term from a distribution; checks the chain rule."""
    mi = lambda *a, **k: mutual_information(dist, *a, **k)
    t = InfoTerms(
        i_u_y1=mi("U", "Y1"),
        i_u_y2=mi("U", "Y2"),
        i_u_z=mi("U", "Z"),
        i_v1_y1_g_u=mi("V1", "Y1", given="U"),
        i_v2_y2_g_u=mi("V2", "Y2", given="U"),
        i_v1_z_g_u=mi("V1", "Z", given="U"),
        i_v2_z_g_u=mi("V2", "Z", given="U"),
        i_uv1_y1=mi(("U", "V1"), "Y1"),
        i_uv2_y2=mi(("U", "V2"), "Y2"),
        i_v1_v2_g_u=mi("V1", "V2", given="U"),
        i_v12_z_g_u=mi(("V1", "V2"), "Z", given="U"),
        i_uv12_z=mi(("U", "V1", "V2"), "Z"),
        i_x_y1=mi("X", "Y1"),
        i_x_y2=mi("X", "Y2"),
        i_x_z=mi("X", "Z"),
        h_y2_g_z=conditional_entropy(dist, "Y2", given="Z"),
    )
    assert abs(t.i_uv1_y1 - (t.i_u_y1 + t.i_v1_y1_g_u)) <= _CHAIN_TOL
    assert abs(t.i_uv2_y2 - (t.i_u_y2 + t.i_v2_y2_g_u)) <= _CHAIN_TOL
    return t


def _term(terms, name):
    if isinstance(terms, dict):
        if name not in terms:
            raise SchemaError(f"missing information term {name!r}")
        return terms[name]
    try:
        return getattr(terms, name)
    except AttributeError as exc:
        raise SchemaError(f"missing information term {name!r}") from exc


def _pos(x):
    """Clamp at zero, preserving exact arithmetic for Fractions."""
    return x if x > 0 else 0 * x


@dataclass(frozen=True)
class SideCondition:
    description: str
    satisfied: bool
    slack: object  # rhs - lhs; nonnegative iff satisfied


@dataclass(frozen=True)
class RegionSpec2D:
    """Intersection of half-planes a*R1 + b*R2 <= c over nonnegative rates.

    When a side condition fails the formula does not certify any rate pair
    and the region is treated as empty (flagged, not an error).
    """

    half_planes: tuple
    side_conditions: tuple = ()

    @property
    def certified(self) -> bool:
        return all(sc.satisfied for sc in self.side_conditions)

    def contains(self, r1, r2, tol=0) -> bool:
        if not self.certified:
            return False
        if r1 < -tol or r2 < -tol:
            return False
        return all(a * r1 + b * r2 <= c + tol for a, b, c in self.half_planes)

    def canonical(self):
        """Tightest constant per direction: {(a, b): c}."""
        out = {}
        for a, b, c in self.half_planes:
            key = (a, b)
            if key not in out or c < out[key]:
                out[key] = c
        return out

    def bounding_box(self):
        """(r1_max, r2_max) implied by the half-planes (for sampling)."""
        can = self.canonical()
        r1_caps = [c for (a, _), c in can.items() if a == 1]
        r2_caps = [c for (_, b), c in can.items() if b == 1]
        r1 = min(r1_caps) if r1_caps else 0
        r2 = min(r2_caps) if r2_caps else 0
        return _pos(r1), _pos(r2)


def region_primitive(terms) -> RegionSpec2D:
    """Both messages ride one cloud codeword; each pads the other.

    The sum rate is limited by the worse receiver and each individual rate
    pays the full eavesdropper penalty.
    """
    m = min(_term(terms, "i_u_y1"), _term(terms, "i_u_y2"))
    iuz = _term(terms, "i_u_z")
    return RegionSpec2D((
        (1, 1, m),
        (1, 0, m - iuz),
        (0, 1, m - iuz),
    ))


def region_superposition(terms) -> RegionSpec2D:
    """Cloud layer as in the primitive scheme plus a padded satellite to rx 1."""
    p = _pos(_term(terms, "i_v1_y1_g_u") - _term(terms, "i_v1_z_g_u"))
    iuy1 = _term(terms, "i_u_y1")
    iuy2 = _term(terms, "i_u_y2")
    iuz = _term(terms, "i_u_z")
    return RegionSpec2D((
        (0, 1, iuy2 - iuz),
        (1, 0, p + iuy2 - iuz),
        (1, 0, p + iuy1 - iuz),
        (0, 1, p + iuy1 - iuz),
        (1, 1, p + min(iuy1, iuy2)),
    ))


def region_superposition_lessnoisy(terms) -> RegionSpec2D:
    """Superposition region when receiver 1 is less noisy than receiver 2.

    The hypothesis is the caller's assertion; it is not verified here.
    """
    p = _pos(_term(terms, "i_v1_y1_g_u") - _term(terms, "i_v1_z_g_u"))
    iuy2 = _term(terms, "i_u_y2")
    iuz = _term(terms, "i_u_z")
    return RegionSpec2D((
        (0, 1, iuy2 - iuz),
        (1, 0, p + iuy2 - iuz),
        (1, 1, p + iuy2),
    ))


def region_deterministic_capacity(terms) -> RegionSpec2D:
    """Capacity when Y2 = f(X), rx 1 less noisy, and Z degraded w.r.t. Y2."""
    return RegionSpec2D((
        (0, 1, _term(terms, "h_y2_g_z")),
        (1, 0, _term(terms, "i_x_y1") - _term(terms, "i_x_z")),
        (1, 1, _term(terms, "i_x_y1")),
    ))


def region_upper_bound(terms) -> RegionSpec2D:
    """Outer bound for degraded receivers with rx 2 less noisy than Z."""
    iuy2 = _term(terms, "i_u_y2")
    iuz = _term(terms, "i_u_z")
    sat = _term(terms, "i_v1_y1_g_u")
    return RegionSpec2D((
        (0, 1, iuy2 - iuz),
        (1, 0, sat - _term(terms, "i_v1_z_g_u") + iuy2 - iuz),
        (1, 1, sat + iuy2),
    ))


def region_capacity_comparable(terms) -> RegionSpec2D:
    """Capacity under a comparable eavesdropper: I(U;Z) <= I(U;Y2) <= 2 I(U;Z).

    The sum bound of the superposition region is redundant there, so only
    the two marginal bounds remain.
    """
    iuy2 = _term(terms, "i_u_y2")
    iuz = _term(terms, "i_u_z")
    return RegionSpec2D((
        (0, 1, iuy2 - iuz),
        (1, 0, _term(terms, "i_v1_y1_g_u") - _term(terms, "i_v1_z_g_u") + iuy2 - iuz),
    ))


def _marton_side_condition(terms) -> SideCondition:
    lhs = _term(terms, "i_v1_v2_g_u") + _term(terms, "i_v12_z_g_u")
    rhs = _term(terms, "i_v1_z_g_u") + _term(terms, "i_v2_z_g_u")
    return SideCondition(
        "I(V1;V2|U) + I(V1,V2;Z|U) <= I(V1;Z|U) + I(V2;Z|U)",
        lhs <= rhs,
        rhs - lhs,
    )


def region_marton_individual(terms) -> RegionSpec2D:
    """Individual-secrecy region with jointly covered satellites to both users."""
    p1 = _pos(_term(terms, "i_v1_y1_g_u") - _term(terms, "i_v1_z_g_u"))
    p2 = _pos(_term(terms, "i_v2_y2_g_u") - _term(terms, "i_v2_z_g_u"))
    s = p1 + p2
    iuy1 = _term(terms, "i_u_y1")
    iuy2 = _term(terms, "i_u_y2")
    iuz = _term(terms, "i_u_z")
    return RegionSpec2D(
        (
            (0, 1, p2 + iuy2 - iuz),
            (0, 1, s + iuy1 - iuz),
            (1, 0, p1 + iuy1 - iuz),
            (1, 0, s + iuy2 - iuz),
            (1, 1, s + min(iuy1, iuy2)),
        ),
        (_marton_side_condition(terms),),
    )


def region_marton_joint(terms) -> RegionSpec2D:
    """Joint-secrecy counterpart of :func:`region_marton_individual`."""
    p1 = _pos(_term(terms, "i_v1_y1_g_u") - _term(terms, "i_v1_z_g_u"))
    p2 = _pos(_term(terms, "i_v2_y2_g_u") - _term(terms, "i_v2_z_g_u"))
    iuy1 = _term(terms, "i_u_y1")
    iuy2 = _term(terms, "i_u_y2")
    iuz = _term(terms, "i_u_z")
    return RegionSpec2D(
        (
            (1, 0, p1 + iuy1 - iuz),
            (0, 1, p2 + iuy2 - iuz),
            (1, 1, p1 + p2 + min(iuy1, iuy2) - iuz),
        ),
        (_marton_side_condition(terms),),
    )


def region_joint_lessnoisy(terms) -> RegionSpec2D:
    """Joint-secrecy region after collapsing the cloud onto user 2 (U = V2)."""
    p1 = _pos(_term(terms, "i_v1_y1_g_u") - _term(terms, "i_v1_z_g_u"))
    iuy2 = _term(terms, "i_u_y2")
    iuz = _term(terms, "i_u_z")
    return RegionSpec2D((
        (0, 1, iuy2 - iuz),
        (1, 1, p1 + iuy2 - iuz),
    ))


def region_ekrem_comparison(terms) -> RegionSpec2D:
    """Joint-secrecy region of the public+confidential scheme at zero public rate.

    Used for comparisons against :func:`region_marton_joint`: its marginal
    bounds are weaker, its sum bound potentially stronger.
    """
    p1 = _pos(_term(terms, "i_v1_y1_g_u") - _term(terms, "i_v1_z_g_u"))
    p2 = _pos(_term(terms, "i_v2_y2_g_u") - _term(terms, "i_v2_z_g_u"))
    iuy1 = _term(terms, "i_u_y1")
    iuy2 = _term(terms, "i_u_y2")
    iuz = _term(terms, "i_u_z")
    m = min(iuy1, iuy2)
    conditions = (
        _marton_side_condition(terms),
        SideCondition("I(U;Z) <= I(U;Y1)", iuz <= iuy1, iuy1 - iuz),
        SideCondition("I(U;Z) <= I(U;Y2)", iuz <= iuy2, iuy2 - iuz),
        SideCondition(
            "I(V1;Z|U) <= I(V1;Y1|U)",
            _term(terms, "i_v1_z_g_u") <= _term(terms, "i_v1_y1_g_u"),
            _term(terms, "i_v1_y1_g_u") - _term(terms, "i_v1_z_g_u"),
        ),
        SideCondition(
            "I(V2;Z|U) <= I(V2;Y2|U)",
            _term(terms, "i_v2_z_g_u") <= _term(terms, "i_v2_y2_g_u"),
            _term(terms, "i_v2_y2_g_u") - _term(terms, "i_v2_z_g_u"),
        ),
    )
    sum_c = (
        _term(terms, "i_v1_y1_g_u") + _term(terms, "i_v2_y2_g_u") + m
        - _term(terms, "i_v1_v2_g_u") - _term(terms, "i_uv12_z")
    )
    return RegionSpec2D(
        (
            (1, 0, p1 + m - iuz),
            (0, 1, p2 + m - iuz),
            (1, 1, sum_c),
        ),
        conditions,
    )


def ldbc_as_dmbc(params: DeterministicChannelParams, max_x_bits: int = 10) -> JointDistribution:
    """Finite-distribution view of the truncation channel.

    X is uniform over its n1 relevant bits, the cloud variable U is the
    n2-bit prefix of X (what receiver 2 sees), V1 = X and V2 is trivial.
    """
    n1, n2, ne = params.n1, params.n2, min(params.ne, params.n1)
    if n1 > max_x_bits:
        raise AlphabetBudgetError(f"|X| = 2^{n1} exceeds the 2^{max_x_bits} budget")
    nx, nu, nz = 2 ** n1, 2 ** n2, 2 ** ne
    prefix2 = lambda x: x >> (n1 - n2)
    prefixe = lambda x: x >> (n1 - ne)
    support = tuple(
        ((prefix2(x), x, 0, x), Fraction(1, nx)) for x in range(nx)
    )
    channel_entries = tuple(
        (((x, prefix2(x), prefixe(x)), 1),) for x in range(nx)
    )
    sizes = {"U": nu, "V1": nx, "V2": 1, "X": nx, "Y1": nx, "Y2": nu, "Z": nz}
    return JointDistribution(sizes, support, channel_entries)


def union_contains(regions, r1, r2, tol=0) -> bool:
    """Membership in a union of per-distribution regions (sweep utility)."""
    return any(region.contains(r1, r2, tol) for region in regions)
