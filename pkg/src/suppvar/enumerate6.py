"""Classification pipeline for homogeneous monomial ideals with 6 generators.

Six-vertex GCD graphs are enumerated up to isomorphism, graphs forced to
full support are discarded, and for each survivor the homogeneous weight
vectors on its cliques form a cone whose extreme rays seed the candidate
ideals.  Every candidate's support is computed symbolically and classified.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from .cone import extreme_rays
from .config import RunConfig
from .monomial import Monomial, MonomialSeq
from .support import (
    CLASS_FULL,
    CLASS_ORIGIN,
    LINEAR_SUBSPACE,
    SEXTIC_135246,
    UNION_TWO_HYPERPLANES,
    classify,
    support_symbolic,
)

N_VERTICES = 6
PAIRS = [(i, j) for i in range(1, N_VERTICES + 1) for j in range(i + 1, N_VERTICES + 1)]
_PAIR_INDEX = {pair: k for k, pair in enumerate(PAIRS)}

ALLOWED_CLASSES = frozenset(
    {LINEAR_SUBSPACE, UNION_TWO_HYPERPLANES, SEXTIC_135246, CLASS_FULL, CLASS_ORIGIN}
)


class PipelineCap(RuntimeError):
    """A per-graph resource cap was exceeded."""


class ClassificationFailure(RuntimeError):
    """A candidate classified outside the allowed class set."""

    def __init__(self, ideal: MonomialSeq, classification):
        super().__init__(f"unexpected class {classification} for {ideal}")
        self.ideal = ideal
        self.classification = classification


# ---------------------------------------------------------------------------
# GCD graphs on 6 vertices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GcdGraph:
    """A 6-vertex graph as a 15-bit edge mask over PAIRS order."""

    mask: int

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        key = (u, v) if u < v else (v, u)
        return bool(self.mask >> _PAIR_INDEX[key] & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [PAIRS[k] for k in range(len(PAIRS)) if self.mask >> k & 1]

    def neighbors(self, v: int) -> set[int]:
        return {u for u in range(1, N_VERTICES + 1) if self.has_edge(u, v)}

    def __str__(self) -> str:
        return ";".join(f"{u}-{v}" for u, v in self.edges()) or "empty"


def graph_from_edges(edges) -> GcdGraph:
    mask = 0
    for u, v in edges:
        key = (u, v) if u < v else (v, u)
        mask |= 1 << _PAIR_INDEX[key]
    return GcdGraph(mask)


_PERM_TABLES: list[list[int]] | None = None


def _perm_tables() -> list[list[int]]:
    global _PERM_TABLES
    if _PERM_TABLES is None:
        tables = []
        for perm in itertools.permutations(range(1, N_VERTICES + 1)):
            table = []
            for u, v in PAIRS:
                pu, pv = perm[u - 1], perm[v - 1]
                key = (pu, pv) if pu < pv else (pv, pu)
                table.append(_PAIR_INDEX[key])
            tables.append(table)
        _PERM_TABLES = tables
    return _PERM_TABLES


def canonical_form(g: GcdGraph) -> GcdGraph:
    """Lexicographic-minimum edge mask over all 720 vertex permutations."""
    best = g.mask
    for table in _perm_tables():
        img = 0
        m = g.mask
        k = 0
        while m:
            if m & 1:
                img |= 1 << table[k]
            m >>= 1
            k += 1
        if img < best:
            best = img
    return GcdGraph(best)


def enumerate_graphs() -> list[GcdGraph]:
    """Canonical 6-vertex graphs not excluded by the full-support filter."""
    seen: set[int] = set()
    reps: list[GcdGraph] = []
    for mask in range(1 << len(PAIRS)):
        if mask in seen:
            continue
        orbit = set()
        for table in _perm_tables():
            img = 0
            m = mask
            k = 0
            while m:
                if m & 1:
                    img |= 1 << table[k]
                m >>= 1
                k += 1
            orbit.add(img)
        seen |= orbit
        reps.append(GcdGraph(min(orbit)))
    reps.sort(key=lambda g: g.mask)
    return [g for g in reps if not lemma612_filter(g)]


def count_isomorphism_classes() -> int:
    seen: set[int] = set()
    count = 0
    for mask in range(1 << len(PAIRS)):
        if mask in seen:
            continue
        orbit = set()
        for table in _perm_tables():
            img = 0
            m = mask
            k = 0
            while m:
                if m & 1:
                    img |= 1 << table[k]
                m >>= 1
                k += 1
            orbit.add(img)
        seen |= orbit
        count += 1
    return count


def lemma612_filter(g: GcdGraph) -> bool:
    """True when the graph forces full support.

    Either some vertex is adjacent to every other vertex, or some edge (u,v)
    has every other vertex adjacent to exactly one of u, v.
    """
    verts = range(1, N_VERTICES + 1)
    for v in verts:
        if len(g.neighbors(v)) == N_VERTICES - 1:
            return True
    for u, v in g.edges():
        if all(
            w in (u, v) or (g.has_edge(w, u) != g.has_edge(w, v))
            for w in verts
        ):
            return True
    return False


def dense_edges(g: GcdGraph) -> list[tuple[int, int]]:
    """Edges (u,v) with every vertex adjacent to u or v (u,v count themselves)."""
    out = []
    for u, v in g.edges():
        if all(
            w in (u, v) or g.has_edge(w, u) or g.has_edge(w, v)
            for w in range(1, N_VERTICES + 1)
        ):
            out.append((u, v))
    return out


def all_cliques(g: GcdGraph) -> list[frozenset[int]]:
    """All nonempty cliques, singletons included, in (size, vertex) order."""
    out = []
    for size in range(1, N_VERTICES + 1):
        for sub in itertools.combinations(range(1, N_VERTICES + 1), size):
            if all(g.has_edge(u, v) for u, v in itertools.combinations(sub, 2)):
                out.append(frozenset(sub))
    return out


def forbidden_support(g: GcdGraph, active: frozenset[frozenset[int]]) -> bool:
    """Would variables on exactly these cliques force full support?

    (a) for some dense edge, the active cliques disjoint from it cover all
    common neighbors of its endpoints; (b) two dense edges share a vertex,
    their far endpoints are non-adjacent, and some active 2-clique is
    disjoint from both.
    """
    dense = dense_edges(g)
    for u, v in dense:
        commons = g.neighbors(u) & g.neighbors(v)
        covered = set()
        for c in active:
            if u not in c and v not in c:
                covered |= c
        if commons <= covered:
            return True
    for (a1, b1), (a2, b2) in itertools.combinations(dense, 2):
        shared = {a1, b1} & {a2, b2}
        if len(shared) != 1:
            continue
        far = ({a1, b1} | {a2, b2}) - shared
        x, y = sorted(far)
        if g.has_edge(x, y):
            continue
        both = {a1, b1} | {a2, b2}
        for c in active:
            if len(c) == 2 and not (c & both):
                return True
    return False


def my_cliques(g: GcdGraph) -> list[frozenset[int]]:
    """Cliques admissible as variables: not forbidden under every completion."""
    return [c for c in all_cliques(g) if not forbidden_support(g, frozenset([c]))]


# ---------------------------------------------------------------------------
# Clique cones, rays, candidate ideals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CliqueCone:
    graph: GcdGraph
    cliques: tuple[frozenset[int], ...]
    equalities: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class CliqueVector:
    graph: GcdGraph
    cliques: tuple[frozenset[int], ...]
    weights: tuple[int, ...]

    def active(self) -> frozenset[frozenset[int]]:
        return frozenset(c for c, w in zip(self.cliques, self.weights) if w)

    def covers_graph(self) -> bool:
        active = self.active()
        for u, v in self.graph.edges():
            if not any(u in c and v in c for c in active):
                return False
        return all(any(i in c for c in active) for i in range(1, N_VERTICES + 1))


def build_cone(g: GcdGraph, cliques=None) -> CliqueCone:
    """The cone of nonnegative clique weights giving equal generator degrees."""
    cliques = tuple(cliques if cliques is not None else my_cliques(g))
    rows = []
    for i in range(2, N_VERTICES + 1):
        rows.append(
            tuple((1 in c) - (i in c) for c in cliques)
        )
    return CliqueCone(g, cliques, tuple(rows))


def cone_rays(cone: CliqueCone) -> list[tuple[int, ...]]:
    return extreme_rays(cone.equalities, len(cone.cliques))


def ray_closure(
    cone: CliqueCone, rays: list[tuple[int, ...]], node_cap: int = 1 << 22
) -> list[CliqueVector]:
    """Subset-sums of the rays, deduplicated by which weights are nonzero.

    Sums whose active cliques are forbidden are pruned (the predicate is
    monotone in the support), and only vectors realizing the graph exactly
    are kept.
    """
    g = cone.graph
    m = len(cone.cliques)
    patterns: dict[frozenset[int], tuple[int, ...]] = {}
    nodes = 0

    def supp(vec) -> frozenset[int]:
        return frozenset(i for i, w in enumerate(vec) if w)

    def rec(idx: int, vec: tuple[int, ...]):
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise PipelineCap(f"ray closure exceeded {node_cap} nodes")
        if idx == len(rays):
            if any(vec):
                patterns.setdefault(supp(vec), vec)
            return
        rec(idx + 1, vec)
        summed = tuple(a + b for a, b in zip(vec, rays[idx]))
        active = frozenset(cone.cliques[i] for i in supp(summed))
        if not forbidden_support(g, active):
            rec(idx + 1, summed)

    rec(0, (0,) * m)
    out = []
    for pattern in sorted(patterns, key=sorted):
        cv = CliqueVector(g, cone.cliques, patterns[pattern])
        if cv.covers_graph():
            out.append(cv)
    return out


@dataclass(frozen=True)
class CandidateIdeal:
    seq: MonomialSeq
    vector: CliqueVector


class NonMinimal(Exception):
    pass


def ideal_from_vector(cv: CliqueVector) -> CandidateIdeal:
    """Build f_i as the product of active clique variables containing i.

    Raises NonMinimal when some generator divides another.  Weight vectors
    that would give degree-1 generators are doubled; the nonzero pattern,
    hence the support, is unchanged.
    """
    active = [(c, w) for c, w in zip(cv.cliques, cv.weights) if w]
    for i, j in itertools.permutations(range(1, N_VERTICES + 1), 2):
        cl_i = {k for k, (c, _) in enumerate(active) if i in c}
        cl_j = {k for k, (c, _) in enumerate(active) if j in c}
        if cl_i <= cl_j:
            raise NonMinimal(f"f_{i} divides f_{j}")
    degrees = {
        i: sum(w for c, w in active if i in c) for i in range(1, N_VERTICES + 1)
    }
    if len(set(degrees.values())) != 1:
        raise ValueError("clique vector is not homogeneous")
    scale = 2 if degrees[1] == 1 else 1
    gens = []
    for i in range(1, N_VERTICES + 1):
        gens.append(
            Monomial({k + 1: w * scale for k, (c, w) in enumerate(active) if i in c})
        )
    seq = MonomialSeq(gens, d=len(active))
    return CandidateIdeal(seq, cv)


# ---------------------------------------------------------------------------
# The pipeline
# ---------------------------------------------------------------------------


@dataclass
class GraphResult:
    graph: GcdGraph
    rays: list[tuple[int, ...]]
    n_vectors: int
    n_candidates: int
    classes: dict[str, int]
    examples: dict[str, str]
    capped: str | None = None

    def to_json(self) -> dict:
        return {
            "graph": self.graph.mask,
            "edges": self.graph.edges(),
            "rays": [list(r) for r in self.rays],
            "n_vectors": self.n_vectors,
            "n_candidates": self.n_candidates,
            "classes": self.classes,
            "examples": self.examples,
            "capped": self.capped,
        }


def process_graph(g: GcdGraph, config: RunConfig | None = None, dry_run: bool = False) -> GraphResult:
    config = config or RunConfig()
    cone = build_cone(g)
    rays = cone_rays(cone)
    try:
        vectors = ray_closure(cone, rays)
    except PipelineCap as exc:
        return GraphResult(g, rays, 0, 0, {}, {}, capped=str(exc))
    classes: dict[str, int] = {}
    examples: dict[str, str] = {}
    n_candidates = 0
    for cv in vectors:
        try:
            cand = ideal_from_vector(cv)
        except NonMinimal:
            continue
        n_candidates += 1
        if dry_run:
            continue
        report = support_symbolic(cand.seq, config)
        cls = classify(report.variety)
        if cls.kind not in ALLOWED_CLASSES:
            raise ClassificationFailure(cand.seq, cls)
        classes[cls.kind] = classes.get(cls.kind, 0) + 1
        examples.setdefault(cls.kind, str(cand.seq))
    return GraphResult(g, rays, len(vectors), n_candidates, classes, examples)


@dataclass
class PipelineResult:
    results: list[GraphResult]

    @property
    def tally(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self.results:
            for k, v in r.classes.items():
                out[k] = out.get(k, 0) + v
        return out

    @property
    def capped(self) -> list[GraphResult]:
        return [r for r in self.results if r.capped]

    def to_json(self) -> dict:
        return {
            "graphs": len(self.results),
            "tally": self.tally,
            "capped": [r.graph.mask for r in self.capped],
        }

    def summary(self) -> str:
        lines = [f"graphs processed: {len(self.results)}"]
        for k in sorted(self.tally):
            lines.append(f"  {k}: {self.tally[k]}")
        if self.capped:
            lines.append(f"  capped graphs: {len(self.capped)}")
        return "\n".join(lines)


def _worker(payload: tuple[int, dict, bool]) -> dict:
    mask, cfg_fields, dry_run = payload
    try:
        res = process_graph(GcdGraph(mask), RunConfig(**cfg_fields), dry_run)
    except ClassificationFailure as exc:
        return {"failure": {"ideal": str(exc.ideal), "class": str(exc.classification)}}
    return res.to_json()


def _result_from_json(rec: dict) -> GraphResult:
    return GraphResult(
        GcdGraph(rec["graph"]),
        [tuple(r) for r in rec["rays"]],
        rec["n_vectors"],
        rec["n_candidates"],
        rec["classes"],
        rec["examples"],
        rec.get("capped"),
    )


def run_pipeline(
    graphs: list[GcdGraph] | None = None,
    config: RunConfig | None = None,
    checkpoint: str | Path | None = None,
    resume: str | Path | None = None,
    dry_run: bool = False,
    progress=None,
    threads: int = 1,
) -> PipelineResult:
    """Classify the supports of every candidate ideal over the given graphs.

    Results are appended to ``checkpoint`` as JSON lines; ``resume`` skips
    graphs already present in an earlier checkpoint file.  Graphs are
    independent work units, so ``threads`` > 1 maps them over a process
    pool; checkpoint writes stay serialized in the parent.
    """
    config = config or RunConfig()
    if graphs is None:
        graphs = enumerate_graphs()
    done: dict[int, GraphResult] = {}
    if resume:
        for line in Path(resume).read_text().splitlines():
            if not line.strip():
                continue
            gr = _result_from_json(json.loads(line))
            done[gr.graph.mask] = gr
    handle = open(checkpoint, "a") if checkpoint else None
    results: list[GraphResult] = []
    pending = []
    for g in sorted(graphs, key=lambda x: x.mask):
        if g.mask in done:
            results.append(done[g.mask])
        else:
            pending.append(g)

    def record(res: GraphResult):
        results.append(res)
        if handle:
            handle.write(json.dumps(res.to_json(), sort_keys=True) + "\n")
            handle.flush()
        if progress:
            progress(res)

    try:
        if threads > 1 and len(pending) > 1:
            from concurrent.futures import ProcessPoolExecutor

            cfg_fields = {
                "primes": config.primes,
                "seed": config.seed,
                "minor_budget": config.minor_budget,
                "groebner_pair_cap": config.groebner_pair_cap,
                "samples": config.samples,
                "stabilize_window": config.stabilize_window,
            }
            payloads = [(g.mask, cfg_fields, dry_run) for g in pending]
            with ProcessPoolExecutor(max_workers=threads) as pool:
                for rec in pool.map(_worker, payloads):
                    if "failure" in rec:
                        raise ClassificationFailure(
                            rec["failure"]["ideal"], rec["failure"]["class"]
                        )
                    record(_result_from_json(rec))
        else:
            for g in pending:
                record(process_graph(g, config, dry_run))
    finally:
        if handle:
            handle.close()
    results.sort(key=lambda r: r.graph.mask)
    return PipelineResult(results)


def ci_subset_graphs() -> list[GcdGraph]:
    """Ten fixed graphs, the 6-cycle included, for a CI-scale pipeline run."""
    cyc6 = [(i, i + 1) for i in range(1, 6)] + [(1, 6)]
    specs = [
        [],  # empty graph: the regular sequence
        [(1, 2)],
        [(1, 2), (3, 4), (5, 6)],  # perfect matching
        [(1, 2), (2, 3)],
        [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6)],  # path P6
        cyc6,
        [(1, 2), (2, 3), (1, 3)],  # triangle
        [(1, 2), (2, 3), (3, 4), (1, 4)],  # C4
        [(1, 2), (1, 3), (1, 4)],  # star on 4 of 6
        [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)],  # C5
    ]
    return [canonical_form(graph_from_edges(e)) for e in specs]
