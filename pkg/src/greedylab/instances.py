"""Certified generators for hard instances and standard random families.

Every generator returns an Instance bundling the graph with an optimum
certificate (exact where known, a lower bound otherwise) and per-node group
labels, so downstream ratio computations never need a general-graph exact
solver.

Node labeling conventions (0-based ids throughout):

* layered family ``gab(a, b)``: group1 = 0..a-1, group2 = a..2a-1,
  group3 = 2a..2a+c-1 with c = 2*ceil(sqrt(a)).  Rules: every group1 node
  joins every group3 node; group1 node i pairs with group2 node a+i; group3
  nodes pair up consecutively (2a+2j, 2a+2j+1); group2 splits into disjoint
  cliques of size b on consecutive ids.  The pairing edges plus the group3
  pairs form a perfect matching of size a + c/2.
* the bipartite double takes two such copies, replaces inner group3 pairs by
  cross pairs and each clique by a complete bipartite clique pair.
* ``ga2_bipartite`` removes the group3 pairs from gab(a, 2), adds a fourth
  group, and rewires group1 nodes to group3 or the new group by parity.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import (InfeasibleParametersError, ParameterError,
                     ResamplingBudgetError)
from .graph import Graph
from .matching import Matching, verify_matching
from .oracle import OptimumCertificate, max_matching_bipartite, max_matching_bruteforce
from .rng import RandomStream


def ceil_sqrt(a: int) -> int:
    r = math.isqrt(a)
    return r if r * r == a else r + 1


@dataclass
class Instance:
    graph: Graph
    optimum: OptimumCertificate | None
    family: str
    params: dict
    labels: dict[str, list[int]] | None = None

    def validate(self) -> None:
        if self.optimum is not None:
            self.optimum.validate(self.graph)
        if self.labels is not None:
            tagged = [u for nodes in self.labels.values() for u in nodes]
            if sorted(tagged) != list(range(self.graph.n)):
                raise ValueError("labels do not partition the node set")

    def sides(self) -> tuple[list[int], list[int]] | None:
        if self.labels and "side0" in self.labels and "side1" in self.labels:
            return self.labels["side0"], self.labels["side1"]
        return None


def _certificate_from_witness(pairs, size=None, exact=True) -> OptimumCertificate:
    witness = Matching(pairs)
    return OptimumCertificate(size=size if size is not None else witness.size,
                              witness=witness, source="generator-certified", exact=exact)


def gen_gab(a: int, b: int) -> Instance:
    """The layered hard family: minimum degree sits in the cliques, so greedy
    matchers burn the cliques internally and strand most of group1."""
    if a < 4:
        raise ParameterError("need a >= 4")
    if b < 2 or b % 2 != 0:
        raise ParameterError("clique size b must be even and >= 2")
    if a % b != 0:
        raise ParameterError("b must divide a")
    c = 2 * ceil_sqrt(a)
    s1 = np.arange(a)
    s3 = np.arange(2 * a, 2 * a + c)
    e13 = np.stack([np.repeat(s1, c), np.tile(s3, a)], axis=1)
    e12 = np.stack([s1, s1 + a], axis=1)
    e33 = np.stack([s3[0::2], s3[1::2]], axis=1)
    pair_i, pair_j = np.triu_indices(b, k=1)
    starts = a + b * np.arange(a // b)
    e22 = np.stack([
        (starts[:, None] + pair_i[None, :]).ravel(),
        (starts[:, None] + pair_j[None, :]).ravel(),
    ], axis=1)
    edges = np.concatenate([e13, e12, e33, e22])
    g = Graph(2 * a + c, edges)
    witness_pairs = [(int(i), int(i + a)) for i in range(a)]
    witness_pairs += [(int(u), int(v)) for u, v in e33]
    opt = _certificate_from_witness(witness_pairs)
    labels = {"S1": list(range(a)), "S2": list(range(a, 2 * a)),
              "S3": list(range(2 * a, 2 * a + c))}
    return Instance(g, opt, "gab", {"a": a, "b": b, "c": c}, labels)


def gen_gab_bipartite_double(a: int) -> Instance:
    """Two copies of gab(a, sqrt(a)) glued into a bipartite graph: group3
    pairs become cross pairs, cliques become complete bipartite clique pairs."""
    t = math.isqrt(a)
    if t * t != a or t % 2 != 0 or a < 4:
        raise ParameterError("need a = t*t with t even, t >= 2")
    b = t
    c = 2 * t
    n1 = 2 * a + c
    off = n1

    def copy_edges(base: int) -> list[np.ndarray]:
        s1 = np.arange(a) + base
        s3 = np.arange(2 * a, 2 * a + c) + base
        e13 = np.stack([np.repeat(s1, c), np.tile(s3, a)], axis=1)
        e12 = np.stack([s1, s1 + a], axis=1)
        return [e13, e12]

    parts = copy_edges(0) + copy_edges(off)
    s3l = np.arange(2 * a, 2 * a + c)
    parts.append(np.stack([s3l, s3l + off], axis=1))
    starts = a + b * np.arange(a // b)
    li = (starts[:, None, None] + np.arange(b)[None, :, None])
    rj = (starts[:, None, None] + np.arange(b)[None, None, :]) + off
    parts.append(np.stack([np.broadcast_to(li, (a // b, b, b)).ravel(),
                           np.broadcast_to(rj, (a // b, b, b)).ravel()], axis=1))
    edges = np.concatenate(parts)
    g = Graph(2 * n1, edges)
    witness = [(i, i + a) for i in range(a)]
    witness += [(off + i, off + i + a) for i in range(a)]
    witness += [(2 * a + j, off + 2 * a + j) for j in range(c)]
    opt = _certificate_from_witness(witness)
    side0 = list(range(a)) + [off + u for u in range(a, 2 * a)] + \
        [off + u for u in range(2 * a, 2 * a + c)]
    side1 = sorted(set(range(2 * n1)) - set(side0))
    labels = {"side0": side0, "side1": side1}
    inst = Instance(g, opt, "gab-double", {"a": a, "b": b, "c": c}, labels)
    if g.two_coloring() is None:
        raise AssertionError("double construction is not bipartite")
    return inst


def gen_ga2_bipartite(a: int, solver_limit: int = 10_000) -> Instance:
    """Bipartite variant of gab(a, 2): inner group3 pairs removed, a fourth
    group added, group1 rewired by parity (1-based-odd ids keep group3).

    The optimum is solved exactly at build time for a <= solver_limit,
    otherwise certified as the lower bound a via the group1-group2 pairing.
    """
    if a < 16 or a % 2 != 0:
        raise ParameterError("need even a >= 16")
    c = 2 * ceil_sqrt(a)
    s3 = np.arange(2 * a, 2 * a + c)
    s3p = np.arange(2 * a + c, 2 * a + 2 * c)
    # our even ids are 1-based-odd nodes: they keep the group3 side
    s1_odd = np.arange(0, a, 2)
    s1_even = np.arange(1, a, 2)
    e13 = np.stack([np.repeat(s1_odd, c), np.tile(s3, a // 2)], axis=1)
    e13p = np.stack([np.repeat(s1_even, c), np.tile(s3p, a // 2)], axis=1)
    s1 = np.arange(a)
    e12 = np.stack([s1, s1 + a], axis=1)
    pair_lo = a + np.arange(0, a, 2)
    e22 = np.stack([pair_lo, pair_lo + 1], axis=1)
    edges = np.concatenate([e13, e13p, e12, e22])
    g = Graph(2 * a + 2 * c, edges)
    side0 = s1_odd.tolist() + (s1_even + a).tolist() + s3p.tolist()
    side1 = sorted(set(range(g.n)) - set(side0))
    labels = {"side0": side0, "side1": side1}
    if g.two_coloring() is None:
        raise AssertionError("ga2 construction is not bipartite")
    if a <= solver_limit:
        opt = max_matching_bipartite(g, (side0, side1))
    else:
        opt = _certificate_from_witness([(i, i + a) for i in range(a)],
                                        size=a, exact=False)
    return Instance(g, opt, "ga2-bipartite", {"a": a, "c": c}, labels)


FIG2_ROLES = ("u", "v", "w", "z", "b", "c")
FIG2_EDGES = ((0, 1), (0, 2), (1, 2), (1, 3), (3, 4), (3, 5), (4, 5))
FIG2_OPT = ((0, 2), (1, 3), (4, 5))


def gen_fig2_gadget(labeling=(0, 1, 2, 3, 4, 5)) -> Instance:
    """The 6-node, 7-edge gadget with a perfect matching, relabeled by the
    given permutation of 0..5 (role order u, v, w, z, b, c)."""
    perm = tuple(labeling)
    if sorted(perm) != list(range(6)):
        raise ParameterError("labeling must be a permutation of 0..5")
    edges = [(perm[x], perm[y]) for x, y in FIG2_EDGES]
    g = Graph(6, edges)
    opt = _certificate_from_witness([(perm[x], perm[y]) for x, y in FIG2_OPT])
    labels = {role: [perm[i]] for i, role in enumerate(FIG2_ROLES)}
    return Instance(g, opt, "fig2", {"labeling": list(perm)}, labels)


def gen_thm6_graph(delta: int, transcript) -> Instance:
    """Package a finished degree-capped adversary game as a certified instance.

    Validates the transcript against the final graph, checks the degree cap,
    and certifies the optimum 2*delta - 3 with the adversary's witness.
    """
    from .game.engine import check_consistency
    from .errors import InconsistentTranscriptError

    if delta < 3:
        raise ParameterError("need delta >= 3")
    report = check_consistency(transcript)
    if not report.ok:
        raise InconsistentTranscriptError("; ".join(report.problems))
    g = transcript.final_graph
    if g.max_degree() > delta:
        raise InconsistentTranscriptError(
            f"max degree {g.max_degree()} exceeds cap {delta}")
    witness = transcript.opt_witness
    if witness is None or witness.size != 2 * delta - 3:
        raise InconsistentTranscriptError("optimum witness missing or of wrong size")
    rep = verify_matching(g, witness)
    if not (rep.valid and rep.maximal):
        raise InconsistentTranscriptError(f"optimum witness rejected: {rep.problems}")
    opt = OptimumCertificate(size=witness.size, witness=witness,
                             source="generator-certified")
    return Instance(g, opt, "thm6", {"delta": delta},
                    labels=transcript.labels)


def _maybe_bruteforce(g: Graph) -> OptimumCertificate | None:
    if g.n <= 18:
        return max_matching_bruteforce(g)
    return None


def gen_erdos_renyi(n: int, m: int, seed) -> Instance:
    """Uniform simple graph with exactly m edges."""
    max_m = n * (n - 1) // 2
    if m > max_m or n < 0 or m < 0:
        raise InfeasibleParametersError(f"cannot place {m} edges on {n} nodes")
    rng = np.random.default_rng(RandomStream(seed, ("erdos-renyi",)).numpy_seed())
    chosen = np.empty((0,), dtype=np.int64)
    while chosen.size < m:
        need = m - chosen.size
        u = rng.integers(0, n, size=2 * need + 8)
        v = rng.integers(0, n, size=2 * need + 8)
        ok = u != v
        lo = np.minimum(u[ok], v[ok]).astype(np.int64)
        hi = np.maximum(u[ok], v[ok]).astype(np.int64)
        codes = lo * n + hi
        chosen = np.unique(np.concatenate([chosen, codes]))
        if chosen.size > m:
            chosen = rng.permutation(chosen)[:m]
            chosen = np.unique(chosen)
    edges = np.stack([chosen // n, chosen % n], axis=1)
    g = Graph(n, edges)
    return Instance(g, _maybe_bruteforce(g), "erdos-renyi",
                    {"n": n, "m": m, "seed": seed})


def gen_random_regular(n: int, d: int, seed, max_attempts: int = 5000) -> Instance:
    """Random d-regular graph by the pairing model, resampled until simple."""
    if n <= 0 or d < 0 or d >= n or (n * d) % 2 != 0:
        raise InfeasibleParametersError(f"no {d}-regular graph on {n} nodes")
    rng = np.random.default_rng(RandomStream(seed, ("random-regular",)).numpy_seed())
    stubs = np.repeat(np.arange(n, dtype=np.int64), d)
    for _ in range(max_attempts):
        perm = rng.permutation(stubs)
        u = perm[0::2]
        v = perm[1::2]
        if (u == v).any():
            continue
        lo = np.minimum(u, v)
        hi = np.maximum(u, v)
        codes = lo * n + hi
        if np.unique(codes).size != codes.size:
            continue
        g = Graph(n, np.stack([lo, hi], axis=1))
        return Instance(g, _maybe_bruteforce(g), "random-regular",
                        {"n": n, "d": d, "seed": seed})
    raise ResamplingBudgetError(
        f"no simple pairing after {max_attempts} attempts (n={n}, d={d})")


def gen_path(n: int) -> Instance:
    if n < 1:
        raise ParameterError("path needs at least one node")
    g = Graph(n, [(i, i + 1) for i in range(n - 1)])
    pairs = [(2 * i, 2 * i + 1) for i in range(n // 2)]
    return Instance(g, _certificate_from_witness(pairs), "path", {"n": n})


def gen_cycle(n: int) -> Instance:
    if n < 3:
        raise ParameterError("cycle needs at least three nodes")
    g = Graph(n, [(i, (i + 1) % n) for i in range(n)])
    pairs = [(2 * i, 2 * i + 1) for i in range(n // 2)]
    return Instance(g, _certificate_from_witness(pairs), "cycle", {"n": n})


GENERATORS = {
    "gab": gen_gab,
    "gab-double": gen_gab_bipartite_double,
    "ga2-bipartite": gen_ga2_bipartite,
    "fig2": gen_fig2_gadget,
    "erdos-renyi": gen_erdos_renyi,
    "random-regular": gen_random_regular,
    "path": gen_path,
    "cycle": gen_cycle,
}


# -- serialization -----------------------------------------------------

def save_instance(inst: Instance, basepath: str) -> None:
    with open(basepath + ".graph", "w") as fp:
        fp.write(f"c family {inst.family}\n")
        fp.write(inst.graph.to_text())
    meta = {"family": inst.family, "params": inst.params}
    if inst.labels is not None:
        meta["labels"] = {k: list(map(int, v)) for k, v in inst.labels.items()}
    if inst.optimum is not None:
        meta["certificate"] = {
            "size": inst.optimum.size,
            "source": inst.optimum.source,
            "exact": inst.optimum.exact,
            "witness": ([[int(u), int(v)] for u, v in inst.optimum.witness]
                        if inst.optimum.witness is not None else None),
        }
    with open(basepath + ".meta.json", "w") as fp:
        json.dump(meta, fp, indent=1, sort_keys=True)
        fp.write("\n")


def load_instance(basepath: str) -> Instance:
    with open(basepath + ".graph") as fp:
        g = Graph.from_text(fp.read())
    meta_path = basepath + ".meta.json"
    if not os.path.exists(meta_path):
        return Instance(g, None, "unknown", {})
    with open(meta_path) as fp:
        meta = json.load(fp)
    cert = None
    if "certificate" in meta:
        c = meta["certificate"]
        witness = Matching([tuple(p) for p in c["witness"]]) if c.get("witness") else None
        cert = OptimumCertificate(size=c["size"], witness=witness,
                                  source=c["source"], exact=c.get("exact", True))
    labels = meta.get("labels")
    if labels is not None:
        labels = {k: list(map(int, v)) for k, v in labels.items()}
    return Instance(g, cert, meta.get("family", "unknown"), meta.get("params", {}), labels)
