"""Executable transfer/charging scheme for min-degree matcher guarantees.

Pipeline: canonicalize the optimum so the union of the two matchings
decomposes into one-one paths and augmenting paths only; decompose; replay
the execution trace to find transfers (fund movements over edges outside
both matchings, from a node at its matching step to an augmenting-path
endpoint whose end-of-step degree is at most maxdeg - 2); then check
per-component balances and local approximation ratios in exact rationals.

Two transfer systems are supported:

* regular - valid for hosts with max degree 3 and for regular hosts; the
  moved amount is 1 / (2 * (2*maxdeg - 3)) and the certified global ratio is
  (maxdeg - 1) / (2*maxdeg - 3).
* indirect - valid for any max degree: the two nodes of the edge that
  creates an augmenting path emit no transfers, and a length-3 augmenting
  path with exactly one direct credit receives one extra indirect transfer
  from the mate of its credit source.  The amount is 1 / (2 * (2*maxdeg-2))
  and the certified ratio is (2*maxdeg - 1) / (4*maxdeg - 4).

Balances and ratios use Fractions throughout; no floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NonCanonicalInputError, NotMaximumError, ParameterError
from .graph import Graph
from .matching import Matching
from .trace import ExecutionTrace, validate_trace

MODES = ("regular", "indirect")


# -- decomposition ------------------------------------------------------

@dataclass(frozen=True)
class Component:
    index: int
    kind: str  # "one-one" | "augmenting"
    nodes: tuple[int, ...]
    m_edges: tuple[tuple[int, int], ...]
    opt_edges: tuple[tuple[int, int], ...]
    endpoints: tuple[int, ...] = ()

    @property
    def m_x(self) -> int:
        return len(self.m_edges)

    @property
    def w_x(self) -> int:
        return len(self.opt_edges)


@dataclass
class ComponentDecomposition:
    components: list[Component]
    comp_of: dict[int, int]

    @property
    def m_size(self) -> int:
        return sum(c.m_x for c in self.components)

    @property
    def opt_size(self) -> int:
        return sum(c.w_x for c in self.components)

    def augmenting(self) -> list[Component]:
        return [c for c in self.components if c.kind == "augmenting"]


def _union_components(matching: Matching, opt: Matching):
    """Connected components of the union of the two matchings.

    Yields (nodes, m_edges, opt_edges); nodes covered by neither matching are
    skipped."""
    m_mate = matching.mate_map()
    o_mate = opt.mate_map()
    seen = set()
    for root in sorted(set(m_mate) | set(o_mate)):
        if root in seen:
            continue
        stack = [root]
        nodes = []
        seen.add(root)
        while stack:
            u = stack.pop()
            nodes.append(u)
            for nxt in (m_mate.get(u), o_mate.get(u)):
                if nxt is not None and nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        node_set = set(nodes)
        m_edges = sorted({(min(u, m_mate[u]), max(u, m_mate[u]))
                          for u in nodes if u in m_mate and m_mate[u] in node_set})
        opt_edges = sorted({(min(u, o_mate[u]), max(u, o_mate[u]))
                            for u in nodes if u in o_mate})
        yield sorted(nodes), m_edges, opt_edges


def canonicalize_opt(g: Graph, matching: Matching, opt: Matching) -> Matching:
    """Swap the optimum's edges for the matcher's inside every even
    alternating component, leaving only one-one and augmenting paths.

    Raises NotMaximumError if the claimed optimum admits an augmenting path
    (a component with more matcher edges than optimum edges)."""
    new_opt = set(opt.pairs)
    for nodes, m_edges, opt_edges in _union_components(matching, opt):
        if len(m_edges) > len(opt_edges):
            raise NotMaximumError("claimed optimum admits an augmenting path")
        if len(m_edges) == len(opt_edges) and not (
                len(m_edges) == 1 and m_edges == opt_edges):
            new_opt.difference_update(opt_edges)
            new_opt.update(m_edges)
    return Matching(sorted(new_opt))


def decompose(g: Graph, matching: Matching, opt_canonical: Matching
              ) -> ComponentDecomposition:
    """Decompose the union of a matching and a canonical optimum."""
    m_set = matching.as_set()
    comps: list[Component] = []
    comp_of: dict[int, int] = {}
    for nodes, m_edges, opt_edges in _union_components(matching, opt_canonical):
        if len(m_edges) == 1 and m_edges == opt_edges:
            comp = Component(len(comps), "one-one", tuple(nodes),
                             tuple(m_edges), tuple(opt_edges))
        elif len(opt_edges) == len(m_edges) + 1 and len(m_edges) >= 1:
            m_mate = matching.mate_map()
            ends = tuple(sorted(u for u in nodes if u not in m_mate))
            if len(ends) != 2:
                raise NonCanonicalInputError(
                    f"augmenting component with {len(ends)} free ends")
            comp = Component(len(comps), "augmenting", tuple(nodes),
                             tuple(m_edges), tuple(opt_edges), ends)
        else:
            raise NonCanonicalInputError(
                f"component with {len(m_edges)} matcher edges and "
                f"{len(opt_edges)} optimum edges; canonicalize first")
        comps.append(comp)
        for u in nodes:
            comp_of[u] = comp.index
    dec = ComponentDecomposition(comps, comp_of)
    if dec.m_size != matching.size or dec.opt_size != opt_canonical.size:
        raise NonCanonicalInputError("edge counts do not add up across components")
    _ = m_set
    return dec


# -- transfers ----------------------------------------------------------

@dataclass(frozen=True)
class Transfer:
    src: int
    dst: int
    step: int
    kind: str  # "direct" | "indirect"


@dataclass
class TransferLedger:
    mode: str
    delta: int
    theta: Fraction
    transfers: list[Transfer]
    debits: list[int]
    credits: list[int]
    credits_to_node: dict[int, int]
    min_degree_respecting: bool


def _theta(mode: str, delta: int) -> Fraction:
    if delta <= 2:
        return Fraction(0)
    if mode == "regular":
        return Fraction(1, 2 * (2 * delta - 3))
    return Fraction(1, 2 * (2 * delta - 2))


def target_ratio(mode: str, delta: int) -> Fraction:
    if delta <= 2:
        return Fraction(1)
    if mode == "regular":
        return Fraction(delta - 1, 2 * delta - 3)
    return Fraction(2 * delta - 1, 4 * delta - 4)


def compute_transfers(g: Graph, trace: ExecutionTrace, dec: ComponentDecomposition,
                      mode: str = "regular", matching: Matching | None = None,
                      opt: Matching | None = None) -> TransferLedger:
    """Replay the trace and list every transfer the mode's rules produce."""
    if mode not in MODES:
        raise ParameterError(f"unknown mode {mode!r}")
    info = validate_trace(g, trace)
    delta = g.max_degree()
    if matching is None:
        matching = Matching(trace.matched_pairs())
    m_set = matching.as_set()
    opt_set = opt.as_set() if opt is not None else frozenset(
        p for c in dec.components for p in c.opt_edges)

    endpoint_of: dict[int, Component] = {}
    for comp in dec.augmenting():
        for w in comp.endpoints:
            endpoint_of[w] = comp

    # step at which each matched node is removed, and each component created
    matched_step: dict[int, int] = {}
    for s in trace:
        matched_step[s.selected] = s.index
        matched_step[s.mate] = s.index
    creation_step: dict[int, int] = {}
    for comp in dec.components:
        creation_step[comp.index] = min(matched_step[u] for u, _ in comp.m_edges)

    deg = g.degrees().tolist()
    transfers: list[Transfer] = []
    for s in trace:
        for x, y, _ in s.removed:
            deg[x] -= 1
            deg[y] -= 1
        pair = {s.selected, s.mate}
        suppressed = False
        if mode == "indirect":
            comp_idx = dec.comp_of.get(s.selected)
            if comp_idx is not None:
                comp = dec.components[comp_idx]
                if comp.kind == "augmenting" and creation_step[comp.index] == s.index:
                    suppressed = True
        if suppressed:
            continue
        for x, y, is_m in s.removed:
            if is_m:
                continue
            if x in pair and y in pair:
                continue
            v, w = (x, y) if x in pair else (y, x)
            if w in pair:
                continue
            key = (min(v, w), max(v, w))
            if key in m_set or key in opt_set:
                continue
            if w in endpoint_of and deg[w] <= delta - 2:
                transfers.append(Transfer(v, w, s.index, "direct"))

    if mode == "indirect":
        m_mate = matching.mate_map()
        for comp in dec.augmenting():
            if comp.m_x != 1:
                continue
            direct = [t for t in transfers
                      if t.kind == "direct" and t.dst in comp.endpoints]
            if len(direct) == 1:
                t = direct[0]
                transfers.append(Transfer(m_mate[t.src], t.dst, t.step, "indirect"))

    debits = [0] * len(dec.components)
    credits = [0] * len(dec.components)
    credits_to_node: dict[int, int] = {}
    for t in transfers:
        debits[dec.comp_of[t.src]] += 1
        credits[dec.comp_of[t.dst]] += 1
        credits_to_node[t.dst] = credits_to_node.get(t.dst, 0) + 1
    return TransferLedger(mode, delta, _theta(mode, delta), transfers,
                          debits, credits, credits_to_node,
                          info["min_degree_respecting"])


# -- balance checks -----------------------------------------------------

def balance_bound(comp: Component, mode: str, delta: int) -> int:
    """Maximum allowed balance (debits minus credits) for a component.

    For hosts of max degree at most 2 no edge can satisfy the transfer
    condition, so every balance is zero and the check is vacuous."""
    if delta <= 2:
        return 0
    if mode == "regular":
        if comp.kind == "one-one":
            return 2 * (delta - 1) - 2
        return 2 * comp.m_x * (delta - 2) - 2 * (delta - 2) - 2
    if comp.kind == "one-one":
        return 2 * (delta - 1) - 2 + 1
    if comp.m_x == 1:
        return -2
    return 2 * comp.m_x * (delta - 2) - 2 * (delta - 2) - 2 + 1


@dataclass
class ComponentRow:
    index: int
    kind: str
    m_x: int
    w_x: int
    debits: int
    credits: int
    bound: int
    alpha: Fraction
    balance_ok: bool
    alpha_ok: bool


@dataclass
class CertReport:
    mode: str
    delta: int
    theta: Fraction
    target: Fraction
    rows: list[ComponentRow]
    global_ratio: Fraction
    conservation_ok: bool
    min_degree_respecting: bool
    violations: list[str] = field(default_factory=list)

    @property
    def balances_ok(self) -> bool:
        return all(r.balance_ok for r in self.rows)

    @property
    def locals_ok(self) -> bool:
        return all(r.alpha_ok for r in self.rows)

    @property
    def global_ok(self) -> bool:
        return self.global_ratio >= self.target

    @property
    def ok(self) -> bool:
        return (self.balances_ok and self.locals_ok and self.global_ok
                and self.conservation_ok and not self.violations)

    def to_json(self) -> str:
        def frac(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"
        return json.dumps({
            "mode": self.mode,
            "delta": self.delta,
            "theta": frac(self.theta),
            "target": frac(self.target),
            "global_ratio": frac(self.global_ratio),
            "ok": self.ok,
            "conservation_ok": self.conservation_ok,
            "min_degree_respecting": self.min_degree_respecting,
            "violations": self.violations,
            "components": [{
                "kind": r.kind, "m": r.m_x, "w": r.w_x,
                "debits": r.debits, "credits": r.credits,
                "bound": r.bound, "alpha": frac(r.alpha),
                "balance_ok": r.balance_ok, "alpha_ok": r.alpha_ok,
            } for r in self.rows],
        }, indent=1, sort_keys=True)


def check_balances(dec: ComponentDecomposition, ledger: TransferLedger,
                   mode: str, delta: int) -> CertReport:
    """Per-component balance bounds, local ratios, and the global ratio."""
    theta = _theta(mode, delta)
    target = target_ratio(mode, delta)
    rows = []
    violations = []
    for comp in dec.components:
        d_x = ledger.debits[comp.index]
        c_x = ledger.credits[comp.index]
        bound = balance_bound(comp, mode, delta)
        alpha = (Fraction(comp.m_x) - theta * (d_x - c_x)) / comp.w_x
        balance_ok = (d_x - c_x) <= bound
        alpha_ok = alpha >= target
        if not balance_ok:
            violations.append(
                f"component {comp.index} ({comp.kind}, m={comp.m_x}): "
                f"balance {d_x - c_x} exceeds bound {bound}")
        if not alpha_ok:
            violations.append(
                f"component {comp.index} ({comp.kind}, m={comp.m_x}): "
                f"local ratio {alpha} below target {target}")
        rows.append(ComponentRow(comp.index, comp.kind, comp.m_x, comp.w_x,
                                 d_x, c_x, bound, alpha, balance_ok, alpha_ok))
    conservation_ok = sum(ledger.debits) == sum(ledger.credits)
    if not conservation_ok:
        violations.append("transfer conservation violated")
    total_funds = sum((Fraction(c.m_x) - theta * (ledger.debits[c.index]
                                                  - ledger.credits[c.index])
                       for c in dec.components), Fraction(0))
    if conservation_ok and total_funds != dec.m_size:
        violations.append("fund aggregation identity violated")
    global_ratio = (Fraction(total_funds, dec.opt_size) if dec.opt_size
                    else Fraction(1))
    return CertReport(mode, delta, theta, target, rows, global_ratio,
                      conservation_ok, ledger.min_degree_respecting, violations)


def endpoint_degree_check(g: Graph, dec: ComponentDecomposition) -> list[str]:
    """Every augmenting-path endpoint must have input degree at least 2."""
    problems = []
    for comp in dec.augmenting():
        for w in comp.endpoints:
            if g.degree(w) < 2:
                problems.append(
                    f"endpoint {w} of component {comp.index} has degree {g.degree(w)}")
    return problems


def credit_lower_bound_check(g: Graph, dec: ComponentDecomposition,
                             ledger: TransferLedger) -> list[str]:
    """Regular mode: each endpoint w gets at least min(deg(w)-1, delta-2)
    credits."""
    problems = []
    for comp in dec.augmenting():
        for w in comp.endpoints:
            need = min(g.degree(w) - 1, ledger.delta - 2)
            got = ledger.credits_to_node.get(w, 0)
            if got < need:
                problems.append(f"endpoint {w}: {got} credits, expected >= {need}")
    return problems


def creation_nonisolation_check(g: Graph, trace: ExecutionTrace,
                                dec: ComponentDecomposition) -> list[str]:
    """When the first matcher edge of an augmenting path is picked, at least
    one endpoint of that path still has positive degree afterwards."""
    matched_step = {}
    for s in trace:
        matched_step[s.selected] = s.index
        matched_step[s.mate] = s.index
    creation = {c.index: min(matched_step[u] for u, _ in c.m_edges)
                for c in dec.components}
    watch: dict[int, list[int]] = {}
    for comp in dec.augmenting():
        watch.setdefault(creation[comp.index], []).append(comp.index)
    problems = []
    deg = g.degrees().tolist()
    for s in trace:
        for x, y, _ in s.removed:
            deg[x] -= 1
            deg[y] -= 1
        for ci in watch.get(s.index, ()):
            comp = dec.components[ci]
            if all(deg[w] == 0 for w in comp.endpoints):
                problems.append(
                    f"component {ci}: both endpoints isolated at creation step {s.index}")
    return problems


def certify(g: Graph, trace: ExecutionTrace, matching: Matching,
            optimum: Matching, mode: str = "regular") -> CertReport:
    """Full pipeline: canonicalize, decompose, transfer, check.

    Regular mode is only sound for hosts of max degree 3 or regular hosts;
    that precondition is enforced here.  Traces from non-min-degree matchers
    are processed but flagged, and no bound is asserted for them.
    """
    delta = g.max_degree()
    if mode == "regular" and delta > 3:
        degs = set(g.degrees().tolist())
        if len(degs) != 1:
            raise ParameterError(
                "regular mode needs max degree <= 3 or a regular host")
    opt_canonical = canonicalize_opt(g, matching, optimum)
    dec = decompose(g, matching, opt_canonical)
    ledger = compute_transfers(g, trace, dec, mode, matching, opt_canonical)
    report = check_balances(dec, ledger, mode, delta)
    report.violations.extend(endpoint_degree_check(g, dec))
    if ledger.min_degree_respecting:
        if mode == "regular":
            report.violations.extend(credit_lower_bound_check(g, dec, ledger))
        report.violations.extend(creation_nonisolation_check(g, trace, dec))
    return report
