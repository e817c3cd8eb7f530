"""Finite-depth root expansion of f in generalized power series.

The engine grows truncations w of roots of f one term at a time.  At a node
w the Taylor data c_i = D^(i)f(w) is exact, and the candidate next exponents
r are the negated slopes of the lower convex hull of the points (i, v(c_i)),
i = 0..n; the coefficient candidates for an edge are the nonzero roots of
the edge-restricted leading-coefficient equation.  Edges through index 0 are
exactly the valuation-raising "approximation term" steps; edges avoiding
index 0 are the tie branches that split off roots diverging from w at r.
The hull census is sound and complete: the children of a node of
multiplicity mu account for exactly mu roots of f.

Expansion never continues past an accumulation of exponents: a prefix with
infinitely many terms below a finite bound has no exact finite carrier.
Instead, a stable two-line zigzag over the last steps of a chain is detected
and reported as the limit exponent, the line set tied there, and the branch
equation with its solutions.  For inputs that are not additive in X the
detector is an extrapolation and is labelled heuristic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import ffield
from .ffield import FF, FieldCtx
from .hahn import HahnSeries, expands_at
from .hasse import INF, NewtonLine, Poly, evaluate, gamma_J, taylor_at
from .ore import is_additive
from .ratfun import leading_term

# chain steps over which the (term line, valuation line) pair must repeat
_STABLE_STEPS = 4


class AlreadyRootError(ValueError):
    """Raised when next-term candidates are requested at an exact root."""


@dataclass(frozen=True)
class AccumulationReport:
    """Limit data for a chain whose exponents pile up below r_star."""

    r_star: Fraction
    J_star: frozenset[int]
    equation: tuple[FF, ...]
    solutions: tuple[tuple[FF, bool], ...]
    ctx: FieldCtx
    heuristic: bool


@dataclass(eq=False)
class BranchNode:
    """One node of the expansion tree: a truncation w plus its bookkeeping."""

    w: HahnSeries
    last_r: Fraction | None
    multiplicity: int
    residual_valuation: Fraction | float
    status: str = "live"
    step_zeta: FF | None = None
    term_lines: frozenset[int] = frozenset()
    parent: "BranchNode | None" = None
    children: list["BranchNode"] = field(default_factory=list)
    lines: tuple[NewtonLine, ...] = ()
    accumulation: AccumulationReport | None = None

    def chain(self) -> list["BranchNode"]:
        out: list[BranchNode] = []
        node: BranchNode | None = self
        while node is not None:
            out.append(node)
            node = node.parent
        out.reverse()
        return out

    def depth(self) -> int:
        return len(self.w.terms)


def _lower_hull(points: list[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    """Vertices of the lower convex hull, for points with distinct ascending x."""
    hull: list[tuple[int, Fraction]] = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def _edge_children(f: Poly, node: BranchNode) -> list[BranchNode]:
    """All children of a node, including an exact-root leaf when f(w) = 0."""
    w = node.w
    coeffs = taylor_at(f, w)
    node.lines = tuple(
        NewtonLine(i, *leading_term(c)) for i, c in enumerate(coeffs) if i >= 1 and not c.is_zero()
    )
    points = [(i, Fraction(c.valuation())) for i, c in enumerate(coeffs) if not c.is_zero()]
    kids: list[BranchNode] = []
    order = points[0][0]
    if order > 0:
        kids.append(
            BranchNode(
                w=w,
                last_r=node.last_r,
                multiplicity=order,
                residual_valuation=INF,
                status="exact_root",
                parent=node,
            )
        )
    hull = _lower_hull(points)
    lookup = dict(points)
    for (i1, v1), (i2, v2) in zip(hull, hull[1:]):
        slope = Fraction(v2 - v1, i2 - i1)
        r = -slope
        if node.last_r is not None and r <= node.last_r:
            continue
        on_edge = [i for i, v in lookup.items() if v == v1 + slope * (i - i1)]
        top = max(on_edge)
        equation = [node.w.ctx.zero] * (top + 1)
        for i in on_edge:
            equation[i] = coeffs[i].num[min(coeffs[i].num)]
        solved = ffield.poly_roots(equation)
        w_base = w.embed(solved.embed) if solved.ctx != w.ctx else w
        for zeta, mult in solved.roots:
            if not zeta:
                continue
            w_child = w_base.append_term(r, zeta)
            value = evaluate(f, w_child)
            kids.append(
                BranchNode(
                    w=w_child,
                    last_r=r,
                    multiplicity=mult,
                    residual_valuation=value.valuation(),
                    status="exact_root" if value.is_zero() else "live",
                    step_zeta=zeta,
                    term_lines=frozenset(i for i in on_edge if i >= 1),
                    parent=node,
                )
            )
    total = sum(k.multiplicity for k in kids)
    if total != node.multiplicity:
        raise AssertionError(
            f"child multiplicities {total} fail to account for the node's {node.multiplicity}"
        )
    kids.sort(
        key=lambda k: (
            k.step_zeta is not None,
            k.last_r if k.step_zeta is not None else Fraction(0),
            k.step_zeta.sort_key() if k.step_zeta is not None else (),
        )
    )
    node.children = kids
    return kids


def approximation_terms(f: Poly, w: HahnSeries) -> list[tuple[Fraction, FF, int]]:
    """All (r, zeta, multiplicity) making w + zeta*t^r a valuation-raising step.

    r is pinned by requiring the minimum of the lines at r to equal v(f(w)),
    and zeta runs over the nonzero roots of the tied-line cancellation
    equation.  Empty when the forced r does not extend w's support.
    """
    coeffs = taylor_at(f, w)
    if coeffs[0].is_zero():
        raise AlreadyRootError("w is already an exact root; no terms to add")
    lines = tuple(
        NewtonLine(i, *leading_term(c)) for i, c in enumerate(coeffs) if i >= 1 and not c.is_zero()
    )
    if not lines:
        return []
    vfw, b = leading_term(coeffs[0])
    r = max(Fraction(vfw - line.rho, line.i) for line in lines)
    if w.terms and r <= w.terms[-1][0]:
        return []
    _, J = gamma_J(lines, r)
    by_index = {line.i: line.b for line in lines}
    top = max(J)
    equation = [w.ctx.zero] * (top + 1)
    equation[0] = b
    for i in J:
        equation[i] = by_index[i]
    solved = ffield.poly_roots(equation)
    return [(r, zeta, mult) for zeta, mult in solved.roots if zeta]


def branch_step(f: Poly, node: BranchNode) -> list[BranchNode]:
    """Expand one live node with f(w) != 0 into its children."""
    if node.status != "live":
        raise ValueError("only live nodes can be stepped")
    if node.residual_valuation == INF:
        raise AlreadyRootError("node is already an exact root")
    return _edge_children(f, node)


@dataclass
class ExpansionTree:
    f: Poly
    depth: int
    root: BranchNode

    def leaves(self) -> list[BranchNode]:
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.children:
                stack.extend(node.children)
            else:
                out.append(node)
        return out

    def edges(self):
        stack = [self.root]
        while stack:
            node = stack.pop()
            for kid in node.children:
                yield node, kid
                stack.append(kid)


def expand_roots(f: Poly, depth: int) -> ExpansionTree:
    """Breadth-limited expansion tree of all roots of f starting from w = 0.

    Every leaf is an exact root, an accumulation report, or a budget cut;
    leaf multiplicities sum to deg f.
    """
    if depth < 1:
        raise ValueError("expansion depth must be at least 1")
    if f.is_zero() or f.degree < 1:
        raise ValueError("expansion requires a polynomial of degree >= 1")
    f = f.monic()
    ctx = f.ctx
    w0 = HahnSeries.zero(ctx)
    value = evaluate(f, w0)
    root = BranchNode(
        w=w0,
        last_r=None,
        multiplicity=f.degree,
        residual_valuation=value.valuation(),
        status="live",
    )
    tree = ExpansionTree(f, depth, root)
    frontier = [root]
    while frontier:
        node = frontier.pop()
        if node.status != "live":
            continue
        if node.depth() >= depth:
            _close_out(f, node)
            continue
        for kid in _edge_children(f, node):
            if kid.status == "live":
                frontier.append(kid)
    return tree


def _close_out(f: Poly, node: BranchNode) -> None:
    report = accumulation_analysis(f, node.chain())
    if report is None:
        node.status = "budget_exhausted"
    else:
        node.status = "accumulating"
        node.accumulation = report


def accumulation_analysis(f: Poly, chain: list[BranchNode]) -> AccumulationReport | None:
    """Detect a two-line zigzag limit at the end of a chain.

    The last steps must use one fixed term line l (a singleton edge) while
    the residual valuation lands on one fixed other line m, with both lines'
    data unchanged; the limit is then the exact intersection of the two
    lines, approached monotonically from below.  Returns None if no such
    stable cycle exists.
    """
    steps = [n for n in chain if n.parent is not None and n.step_zeta is not None]
    if len(steps) < _STABLE_STEPS:
        return None
    window = steps[-_STABLE_STEPS:]
    pairs = []
    for node in window:
        parent = node.parent
        assert parent is not None
        if len(node.term_lines) != 1:
            return None
        (ell,) = node.term_lines
        if node.residual_valuation == INF:
            return None
        matches = {
            line.i
            for line in parent.lines
            if line.i != ell and line.gamma(node.last_r) == node.residual_valuation
        }
        if len(matches) != 1:
            return None
        (m,) = matches
        line_map = {line.i: line for line in parent.lines}
        pairs.append((ell, m, line_map[ell], line_map[m]))
    ref = pairs[0]
    if any(p[:2] != ref[:2] for p in pairs):
        return None
    ell, m = ref[0], ref[1]
    if any(p[2] != ref[2] or p[3] != ref[3] for p in pairs):
        return None
    line_l, line_m = ref[2], ref[3]
    r_star = Fraction(line_m.rho - line_l.rho, line_l.i - line_m.i)
    exponents = [n.last_r for n in window]
    if any(b <= a for a, b in zip(exponents, exponents[1:])):
        return None
    if any(e >= r_star for e in exponents):
        return None

    leaf = chain[-1]
    leaf_lines = leaf.lines or _lines_at(f, leaf.w)
    _, J_star = gamma_J(leaf_lines, r_star)
    if not {ell, m} <= J_star:
        return None
    by_index = {line.i: line for line in leaf_lines}
    if by_index[ell] != line_l or by_index[m] != line_m:
        return None
    top = max(J_star)
    equation = [leaf.w.ctx.zero] * (top + 1)
    for j in J_star:
        equation[j] = by_index[j].b
    solved = ffield.poly_roots(equation)
    prefix = [c for _, c in leaf.w.terms]
    solutions = tuple(
        (zeta, expands_at(prefix, zeta)) for zeta, _ in solved.roots
    )
    return AccumulationReport(
        r_star=r_star,
        J_star=J_star,
        equation=tuple(equation),
        solutions=solutions,
        ctx=solved.ctx,
        heuristic=not is_additive(f),
    )


def _lines_at(f: Poly, w: HahnSeries) -> tuple[NewtonLine, ...]:
    coeffs = taylor_at(f, w)
    return tuple(
        NewtonLine(i, *leading_term(c)) for i, c in enumerate(coeffs) if i >= 1 and not c.is_zero()
    )


def equation_text(coeffs: tuple[FF, ...]) -> str:
    """Render a branch equation in the unknown z, highest power first."""
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        cs = str(c)
        if "+" in cs:
            cs = f"({cs})"
        if i == 0:
            parts.append(cs)
        else:
            z = "z" if i == 1 else f"z^{i}"
            parts.append(z if cs == "1" else f"{cs}*{z}")
    return "+".join(parts) if parts else "0"
