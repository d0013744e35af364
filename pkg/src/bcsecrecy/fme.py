"""Exact rational Fourier-Motzkin elimination over named rate variables.

Systems hold inequalities ``sum a_i * var_i <= b`` where every ``a_i`` is
rational and ``b`` is an affine rational combination of named parameters.
Parameters are instantiated with rationals before any elimination, so all
projection, redundancy and feasibility decisions are exact.

Strict inequalities are closed to non-strict on input: the regions under
study are closures, and projections are insensitive to the change (the
perturbation test in the suite checks this on instantiations).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .errors import SchemaError, SecrecyToolkitError, UnsupportedShapeError

__all__ = [
    "Affine",
    "RawConstraint",
    "SymbolicInequality",
    "LinIneqSystem",
    "NumericSystem",
    "parse_raw_constraint",
    "expand_minmax",
    "parse_system",
    "load_system",
    "params_from_info_terms",
    "add_nonnegativity",
    "eliminate",
    "remove_redundant",
    "feasible",
    "variable_range",
    "substitute",
    "find_witness",
    "prepare_full_system",
    "project_to_rates",
    "DEFAULT_ELIMINATION_ORDER",
]

DEFAULT_ELIMINATION_ORDER = (
    "Rr", "R1r", "R2r", "R1c", "R2c", "R1k", "R1s", "R2k", "R2s",
)

_MAX_ROWS = 100_000


@dataclass
class Affine:
    """const + sum coeff[name] * name, names not yet split into vars/params."""

    const: Fraction = Fraction(0)
    coeffs: dict = field(default_factory=dict)

    def add_term(self, name: str, coeff: Fraction) -> None:
        self.coeffs[name] = self.coeffs.get(name, Fraction(0)) + coeff

    def __add__(self, other: "Affine") -> "Affine":
        out = Affine(self.const + other.const, dict(self.coeffs))
        for name, c in other.coeffs.items():
            out.add_term(name, c)
        return out

    def __neg__(self) -> "Affine":
        return Affine(-self.const, {n: -c for n, c in self.coeffs.items()})


@dataclass
class RawConstraint:
    """One parsed line: affine (+ optional min/max composite) REL affine."""

    lhs: Affine
    minmax: Optional[tuple]  # ("min"|"max", [Affine, ...]) or None
    op: str  # "<=" or ">="
    rhs: Affine


@dataclass(frozen=True)
class SymbolicInequality:
    """sum var_coeffs * var <= rhs_const + sum rhs_params * param."""

    var_coeffs: tuple  # sorted ((name, Fraction), ...)
    rhs_const: Fraction
    rhs_params: tuple  # sorted ((name, Fraction), ...)


@dataclass(frozen=True)
class LinIneqSystem:
    """Inequalities over declared rate variables with symbolic parameters."""

    variables: tuple
    inequalities: tuple

    @property
    def parameters(self) -> frozenset:
        return frozenset(
            name for ineq in self.inequalities for name, _ in ineq.rhs_params
        )

    def instantiate(self, params: dict) -> "NumericSystem":
        """Resolve parameters to rationals; unknown names raise SchemaError."""
        values = {k: Fraction(v) for k, v in params.items()}
        rows = []
        for ineq in self.inequalities:
            rhs = ineq.rhs_const
            for name, coeff in ineq.rhs_params:
                if name not in values:
                    raise SchemaError(f"parameter {name!r} not instantiated")
                rhs += coeff * values[name]
            rows.append(_normalize_row(dict(ineq.var_coeffs), rhs))
        return NumericSystem(self.variables, _dedupe(rows))


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<rel><=|>=)|(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[{}+,*-]))"
)


def _tokenize(text: str):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise SchemaError(f"cannot tokenize {text[pos:]!r}")
            break
        pos = m.end()
        out.append(m.group(m.lastgroup))
    return out


class _Tokens:
    def __init__(self, items):
        self.items = items
        self.k = 0

    def peek(self):
        return self.items[self.k] if self.k < len(self.items) else None

    def take(self):
        tok = self.peek()
        self.k += 1
        return tok


def _parse_affine(toks: _Tokens, stop=(None, ",", "}", "<=", ">=")):
    """Parse a signed sum of terms; returns (Affine, minmax-or-None)."""
    expr = Affine()
    minmax = None
    sign = Fraction(1)
    while toks.peek() not in stop:
        tok = toks.peek()
        if tok in ("+", "-"):
            toks.take()
            sign *= 1 if tok == "+" else -1
            continue
        if tok in ("min", "max") and toks.items[toks.k + 1 : toks.k + 2] == ["{"]:
            toks.take()
            toks.take()  # "{"
            if sign < 0:
                raise UnsupportedShapeError("negated min/max is not supported")
            if minmax is not None:
                raise UnsupportedShapeError("at most one min/max per constraint")
            members = []
            while True:
                member, inner = _parse_affine(toks)
                if inner is not None:
                    raise UnsupportedShapeError("nested min/max is not supported")
                members.append(member)
                nxt = toks.take()
                if nxt == "}":
                    break
                if nxt != ",":
                    raise SchemaError(f"expected ',' or '}}' in min/max, got {nxt!r}")
            minmax = (tok, members)
            sign = Fraction(1)
            continue
        tok = toks.take()
        if re.fullmatch(r"\d+(/\d+)?", tok or ""):
            coeff = sign * Fraction(tok)
            if toks.peek() == "*":
                toks.take()
            nxt = toks.peek()
            if nxt is not None and re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", nxt):
                expr.add_term(toks.take(), coeff)
            else:
                expr.const += coeff
        elif re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok or ""):
            expr.add_term(tok, sign)
        else:
            raise SchemaError(f"unexpected token {tok!r}")
        sign = Fraction(1)
    return expr, minmax


def parse_raw_constraint(text: str) -> RawConstraint:
    toks = _Tokens(_tokenize(text))
    lhs, minmax = _parse_affine(toks)
    op = toks.take()
    if op not in ("<=", ">="):
        raise SchemaError(f"expected <= or >= in {text!r}")
    rhs, rhs_minmax = _parse_affine(toks)
    if rhs_minmax is not None:
        raise UnsupportedShapeError("min/max on the right-hand side is not supported")
    if toks.peek() is not None:
        raise SchemaError(f"trailing tokens in {text!r}")
    return RawConstraint(lhs, minmax, op, rhs)


def expand_minmax(raw: RawConstraint, variables) -> list:
    """Expand a min/max composite into plain inequalities.

    max{...} + rest <= b expands member-wise, as does min{...} + rest >= b.
    The disjunctive placements (max on the >= side, min on the <= side)
    have no conjunctive expansion and are rejected.
    """
    var_set = set(variables)
    if raw.minmax is None:
        branches = [raw.lhs]
    else:
        kind, members = raw.minmax
        if (kind, raw.op) not in (("max", "<="), ("min", ">=")):
            raise UnsupportedShapeError(
                f"{kind}{{...}} on the {raw.op!r} side is disjunctive"
            )
        branches = [raw.lhs + m for m in members]
    out = []
    for branch in branches:
        moved = branch + (-raw.rhs)  # moved <= 0  (or >= 0 for ">=")
        if raw.op == ">=":
            moved = -moved
        var_coeffs = {}
        rhs_params = {}
        for name, coeff in moved.coeffs.items():
            if coeff == 0:
                continue
            if name in var_set:
                var_coeffs[name] = coeff
            else:
                rhs_params[name] = -coeff
        out.append(
            SymbolicInequality(
                tuple(sorted(var_coeffs.items())),
                -moved.const,
                tuple(sorted(rhs_params.items())),
            )
        )
    return out


def parse_system(text: str, variables: Optional[Sequence[str]] = None) -> LinIneqSystem:
    """Parse one inequality per line; '#' starts a comment.

    The variable list comes from the ``variables`` argument or a leading
    ``vars: NAME NAME ...`` line; every other symbol is a parameter.
    """
    declared = list(variables) if variables is not None else None
    inequalities = []
    for rawline in text.splitlines():
        line = rawline.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("vars:"):
            names = line.split(":", 1)[1].split()
            if declared is None:
                declared = names
            continue
        if declared is None:
            raise SchemaError("no variable list: pass variables= or a vars: line")
        inequalities.extend(expand_minmax(parse_raw_constraint(line), declared))
    if declared is None:
        raise SchemaError("no variable list: pass variables= or a vars: line")
    return LinIneqSystem(tuple(declared), tuple(inequalities))


def load_system(path, variables: Optional[Sequence[str]] = None) -> LinIneqSystem:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_system(fh.read(), variables)


def params_from_info_terms(terms) -> dict:
    """Parameter instantiation matching the bundled constraint files."""
    return {
        "IUY1": terms.i_u_y1,
        "IUY2": terms.i_u_y2,
        "IUZ": terms.i_u_z,
        "IV1Y1gU": terms.i_v1_y1_g_u,
        "IV2Y2gU": terms.i_v2_y2_g_u,
        "IV1ZgU": terms.i_v1_z_g_u,
        "IV2ZgU": terms.i_v2_z_g_u,
        "IV1V2gU": terms.i_v1_v2_g_u,
        "IV12ZgU": terms.i_v12_z_g_u,
        "IUV1Y1": terms.i_u_y1 + terms.i_v1_y1_g_u,
        "IUV2Y2": terms.i_u_y2 + terms.i_v2_y2_g_u,
    }


# Numeric systems: rows are ((var, int-coeff) sorted tuple, Fraction rhs),
# lhs coefficients integer with gcd 1.  A row with no variables is a
# consistency certificate 0 <= rhs.


def _normalize_row(coeffs: dict, rhs: Fraction):
    live = {v: Fraction(c) for v, c in coeffs.items() if c != 0}
    if not live:
        return ((), Fraction(rhs))
    denom_lcm = 1
    for c in live.values():
        denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
    scaled = {v: int(c * denom_lcm) for v, c in live.items()}
    g = 0
    for c in scaled.values():
        g = gcd(g, abs(c))
    factor = Fraction(denom_lcm, g)
    return (
        tuple(sorted((v, c // g) for v, c in scaled.items())),
        Fraction(rhs) * factor,
    )


def _dedupe(rows):
    best = {}
    for lhs, rhs in rows:
        if lhs not in best or rhs < best[lhs]:
            best[lhs] = rhs
    return tuple(sorted(best.items(), key=lambda r: (r[0], r[1])))


@dataclass(frozen=True)
class NumericSystem:
    """Instantiated inequality system; rows are exact and canonical."""

    variables: tuple
    rows: tuple

    @property
    def certificates(self):
        """Variable-free rows 0 <= rhs produced by elimination."""
        return tuple(rhs for lhs, rhs in self.rows if not lhs)

    @property
    def trivially_infeasible(self) -> bool:
        return any(rhs < 0 for rhs in self.certificates)

    def membership(self, assignment: dict) -> bool:
        """Exact check of every row at the given variable values."""
        for lhs, rhs in self.rows:
            total = Fraction(0)
            for var, coeff in lhs:
                if var not in assignment:
                    raise SchemaError(f"no value for variable {var!r}")
                total += coeff * Fraction(assignment[var])
            if total > rhs:
                return False
        return True

    def canonical_rows(self):
        """Rows without trivially-true certificates, in canonical order."""
        return tuple((lhs, rhs) for lhs, rhs in self.rows if lhs or rhs < 0)


def add_nonnegativity(system: NumericSystem) -> NumericSystem:
    rows = list(system.rows)
    rows.extend(_normalize_row({v: -1}, Fraction(0)) for v in system.variables)
    return NumericSystem(system.variables, _dedupe(rows))


def eliminate(system: NumericSystem, var: str, max_rows: int = _MAX_ROWS) -> NumericSystem:
    """Project the feasible set away from one variable (exact)."""
    if var not in system.variables:
        raise SchemaError(f"unknown variable {var!r}")
    zero, pos, neg = [], [], []
    for lhs, rhs in system.rows:
        coeff = dict(lhs).get(var, 0)
        if coeff == 0:
            zero.append((lhs, rhs))
        elif coeff > 0:
            pos.append((dict(lhs), rhs, coeff))
        else:
            neg.append((dict(lhs), rhs, coeff))
    out = list(zero)
    if len(zero) + len(pos) * len(neg) > max_rows:
        raise SecrecyToolkitError(
            f"eliminating {var} would exceed {max_rows} rows"
        )
    for lp, bp, cp in pos:
        for ln, bn, cn in neg:
            combo = {}
            for v, c in lp.items():
                combo[v] = combo.get(v, 0) + c * -cn
            for v, c in ln.items():
                combo[v] = combo.get(v, 0) + c * cp
            combo.pop(var, None)
            out.append(_normalize_row(combo, bp * -cn + bn * cp))
    return NumericSystem(
        tuple(v for v in system.variables if v != var), _dedupe(out)
    )


def _cheapest_variable(system: NumericSystem, candidates):
    best, best_cost = None, None
    for var in candidates:
        pos = neg = 0
        for lhs, _ in system.rows:
            c = dict(lhs).get(var, 0)
            pos += c > 0
            neg += c < 0
        cost = pos * neg - (pos + neg)
        if best_cost is None or cost < best_cost:
            best, best_cost = var, cost
    return best


def _eliminate_all(system: NumericSystem, spare=()) -> NumericSystem:
    while True:
        remaining = [v for v in system.variables if v not in spare]
        if not remaining:
            return system
        system = eliminate(system, _cheapest_variable(system, remaining))


def feasible(system: NumericSystem) -> bool:
    """Exact feasibility by full elimination."""
    return not _eliminate_all(system).trivially_infeasible


def variable_range(system: NumericSystem, var: str):
    """Exact reachable interval of one variable.

    Returns (lo, hi) with None marking an unbounded side, or None when the
    system is infeasible.
    """
    reduced = _eliminate_all(system, spare=(var,))
    if reduced.trivially_infeasible:
        return None
    lo, hi = None, None
    for lhs, rhs in reduced.rows:
        if not lhs:
            continue
        ((_, coeff),) = lhs
        bound = Fraction(rhs, coeff)
        if coeff > 0:
            hi = bound if hi is None else min(hi, bound)
        else:
            lo = bound if lo is None else max(lo, bound)
    if lo is not None and hi is not None and lo > hi:
        return None
    return lo, hi


def substitute(system: NumericSystem, assignment: dict) -> NumericSystem:
    """Pin variables to exact values, folding them into the right-hand side."""
    values = {v: Fraction(x) for v, x in assignment.items()}
    rows = []
    for lhs, rhs in system.rows:
        coeffs = {}
        new_rhs = rhs
        for var, coeff in lhs:
            if var in values:
                new_rhs -= coeff * values[var]
            else:
                coeffs[var] = coeff
        rows.append(_normalize_row(coeffs, new_rhs))
    return NumericSystem(
        tuple(v for v in system.variables if v not in values), _dedupe(rows)
    )


def find_witness(system: NumericSystem, fixed: dict, rng=None):
    """Exact point in the feasible set extending ``fixed``, or None.

    Works one variable at a time: the exact reachable interval of the next
    variable is computed by full elimination, a rational inside it is
    chosen (midpoint, or randomly when ``rng`` is given), and the system is
    re-substituted.  Any value inside the projected interval leaves the
    remainder feasible, so the constructed point is always a true witness.
    """
    current = substitute(system, fixed)
    if current.trivially_infeasible or not feasible(current):
        return None
    point = {k: Fraction(v) for k, v in fixed.items()}
    for var in current.variables:
        interval = variable_range(current, var)
        if interval is None:
            return None
        lo, hi = interval
        if lo is not None and hi is not None:
            frac = Fraction(rng.randint(0, 16), 16) if rng else Fraction(1, 2)
            value = lo + (hi - lo) * frac
        elif lo is not None:
            value = lo + (rng.randint(0, 8) if rng else 1)
        elif hi is not None:
            value = hi - (rng.randint(0, 8) if rng else 1)
        else:
            value = Fraction(0)
        point[var] = value
        current = substitute(current, {var: value})
    assert not current.trivially_infeasible
    return point


def remove_redundant(system: NumericSystem):
    """Drop every inequality implied by the rest (exact test).

    Returns (reduced_system, report) where report lists rows kept because
    their objective is unbounded over the remaining rows.
    """
    if not feasible(system):
        row = _normalize_row({}, Fraction(-1))
        return NumericSystem(system.variables, (row,)), ()
    rows = list(system.rows)
    unbounded_kept = []
    k = 0
    while k < len(rows):
        lhs, rhs = rows[k]
        if not lhs:
            if rhs >= 0:
                rows.pop(k)  # trivially true certificate
                continue
            k += 1
            continue
        rest = NumericSystem(system.variables, tuple(rows[:k] + rows[k + 1 :]))
        objective = dict(lhs)
        value = _maximize(rest, objective)
        if value is not None and value <= rhs:
            rows.pop(k)
            continue
        if value is None:
            unbounded_kept.append((lhs, rhs))
        k += 1
    return NumericSystem(system.variables, tuple(rows)), tuple(unbounded_kept)


def _maximize(system: NumericSystem, objective: dict):
    """Exact max of objective over the system, or None when unbounded."""
    tvar = "__t__"
    rows = list(system.rows)
    rows.append(_normalize_row({tvar: 1, **{v: -c for v, c in objective.items()}}, Fraction(0)))
    rows.append(_normalize_row({tvar: -1, **dict(objective)}, Fraction(0)))
    augmented = NumericSystem(system.variables + (tvar,), _dedupe(rows))
    interval = variable_range(augmented, tvar)
    if interval is None:
        raise SecrecyToolkitError("maximize called on an infeasible system")
    _, hi = interval
    return hi


def prepare_full_system(system: NumericSystem, keep=("R1", "R2"), compositions=None) -> NumericSystem:
    """Augment a raw system with total-rate ties and nonnegativity rows.

    This is the full-dimensional system whose projection onto ``keep`` the
    elimination computes; witness searches run against it directly.
    """
    if compositions is None:
        compositions = {"R1": ("R1k", "R1s"), "R2": ("R2k", "R2s")}
    variables = list(system.variables)
    rows = list(system.rows)
    for total, parts in compositions.items():
        present = [p for p in parts if p in variables]
        if total in keep and present and total not in variables:
            variables.append(total)
            rows.append(_normalize_row({total: 1, **{p: -1 for p in present}}, Fraction(0)))
            rows.append(_normalize_row({total: -1, **{p: 1 for p in present}}, Fraction(0)))
    return add_nonnegativity(NumericSystem(tuple(variables), _dedupe(rows)))


def project_to_rates(
    system: NumericSystem,
    keep=("R1", "R2"),
    order: Optional[Sequence[str]] = None,
    compositions=None,
    prune_threshold: int = 24,
) -> NumericSystem:
    """Project onto the kept rate variables, exactly.

    Split rates are first tied to their totals (R1 = R1k + R1s and
    R2 = R2k + R2s by default), nonnegativity rows are added for every
    rate variable, and the remaining variables are eliminated in the given
    order (a default order is used when none is supplied).  Redundant rows
    are removed exactly whenever the system grows past ``prune_threshold``
    and once at the end.
    """
    current = prepare_full_system(system, keep, compositions)
    variables = current.variables

    if order is None:
        order = [v for v in DEFAULT_ELIMINATION_ORDER if v in variables and v not in keep]
    else:
        order = [v for v in order if v in variables and v not in keep]
    order += [v for v in variables if v not in keep and v not in order]

    for var in order:
        current = eliminate(current, var)
        if len(current.rows) > prune_threshold:
            current, _ = remove_redundant(current)
    reduced, _ = remove_redundant(current)
    return reduced
