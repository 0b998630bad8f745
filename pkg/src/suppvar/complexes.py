"""Taylor complexes over the closed field, subcomplex diagrams, totalizations.

All bases are labeled by generator-subset bitmasks.  Matrix entries are either
a constant +/-1 or +/-a_i for a single parameter index i; that is all the
constructions here ever produce.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .monomial import MonomialSeq, bits, mask_of, popcount, sgn_prepend


@dataclass(frozen=True)
class EntryCoeff:
    """A matrix entry: ``sign`` when ``param == 0``, else ``sign * a_param``."""

    sign: int
    param: int = 0

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise ValueError("entry sign must be +/-1")

    def __str__(self) -> str:
        s = "-" if self.sign < 0 else ""
        return f"{s}a{self.param}" if self.param else f"{s}1"


class SparseMatrix:
    """Sparse matrix with subset-labeled bases; at most one entry per cell."""

    __slots__ = ("row_basis", "col_basis", "entries", "_rowpos", "_colpos")

    def __init__(self, row_basis: Iterable[int], col_basis: Iterable[int]):
        self.row_basis: tuple[int, ...] = tuple(row_basis)
        self.col_basis: tuple[int, ...] = tuple(col_basis)
        if len(set(self.row_basis)) != len(self.row_basis):
            raise ValueError("duplicate row labels")
        if len(set(self.col_basis)) != len(self.col_basis):
            raise ValueError("duplicate column labels")
        self.entries: dict[tuple[int, int], EntryCoeff] = {}
        self._rowpos = {m: i for i, m in enumerate(self.row_basis)}
        self._colpos = {m: i for i, m in enumerate(self.col_basis)}

    @property
    def rows(self) -> int:
        return len(self.row_basis)

    @property
    def cols(self) -> int:
        return len(self.col_basis)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def put(self, row_label: int, col_label: int, coeff: EntryCoeff) -> None:
        key = (self._rowpos[row_label], self._colpos[col_label])
        if key in self.entries:
            raise ValueError(f"duplicate entry at {key}")
        self.entries[key] = coeff

    def dense_rows(self) -> list[list[EntryCoeff | None]]:
        out: list[list[EntryCoeff | None]] = [
            [None] * self.cols for _ in range(self.rows)
        ]
        for (r, c), e in self.entries.items():
            out[r][c] = e
        return out

    def transpose_entries(self) -> dict[tuple[int, int], EntryCoeff]:
        return {(c, r): e for (r, c), e in self.entries.items()}

    def column(self, c: int) -> list[tuple[int, EntryCoeff]]:
        return [(r, e) for (r, cc), e in self.entries.items() if cc == c]

    def compose_symbolic(self, inner: "SparseMatrix") -> dict[tuple[int, int], dict[tuple[int, ...], int]]:
        """Entries of self @ inner as integer polynomials in the parameters.

        Keys of the inner dicts are sorted tuples of parameter indices (a
        degree-<=2 monomial); values are integer coefficients.  Zero dicts are
        pruned.
        """
        if self.col_basis != inner.row_basis:
            raise ValueError("basis mismatch in composition")
        by_col: dict[int, list[tuple[int, EntryCoeff]]] = {}
        for (r, c), e in inner.entries.items():
            by_col.setdefault(c, []).append((r, e))
        out: dict[tuple[int, int], dict[tuple[int, ...], int]] = {}
        outer_by_col: dict[int, list[tuple[int, EntryCoeff]]] = {}
        for (r, c), e in self.entries.items():
            outer_by_col.setdefault(c, []).append((r, e))
        for c, inner_col in by_col.items():
            for mid, e1 in inner_col:
                for r, e2 in outer_by_col.get(mid, ()):  # self[r, mid] * inner[mid, c]
                    mono = tuple(sorted(p for p in (e1.param, e2.param) if p))
                    cell = out.setdefault((r, c), {})
                    cell[mono] = cell.get(mono, 0) + e1.sign * e2.sign
        for key in list(out):
            out[key] = {m: v for m, v in out[key].items() if v}
            if not out[key]:
                del out[key]
        return out

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, {len(self.entries)} entries)"


# ---------------------------------------------------------------------------
# Taylor complex over the closed field (b-basis)
# ---------------------------------------------------------------------------


@dataclass
class TotalComplex:
    """A complex of based vector spaces: pieces[i] --diffs[i]--> pieces[i-1]."""

    n: int
    pieces: dict[int, tuple[int, ...]]
    diffs: dict[int, SparseMatrix]

    def dim(self, degree: int) -> int:
        return len(self.pieces.get(degree, ()))

    def total_dim(self) -> int:
        return sum(len(v) for v in self.pieces.values())

    def degrees(self) -> list[int]:
        return sorted(self.pieces)

    def check_square_zero(self) -> None:
        for d in self.degrees():
            upper = self.diffs.get(d + 1)
            lower = self.diffs.get(d)
            if upper is None or lower is None:
                continue
            if lower.compose_symbolic(upper):
                raise AssertionError(f"d^2 != 0 at degree {d + 1}")


def taylor_intra_terms(seq: MonomialSeq, J: int) -> list[tuple[int, int]]:
    """Surviving faces of d(b_J): pairs (J\\{j}, (-1)^(i-1)) with f unchanged."""
    fj = seq.lcm_subset(J)
    out = []
    for i, j in enumerate(bits(J), start=1):
        K = J & ~(1 << (j - 1))
        if seq.lcm_subset(K) == fj:
            out.append((K, -1 if i % 2 == 0 else 1))
    return out


def taylor_kbar(seq: MonomialSeq) -> TotalComplex:
    """The Taylor complex tensored down to the closed field, graded by |J|."""
    pieces: dict[int, list[int]] = {i: [] for i in range(seq.n + 1)}
    for J in range(1 << seq.n):
        pieces[popcount(J)].append(J)
    for v in pieces.values():
        v.sort()
    diffs: dict[int, SparseMatrix] = {}
    for i in range(1, seq.n + 1):
        mat = SparseMatrix(pieces[i - 1], pieces[i])
        for J in pieces[i]:
            for K, sign in taylor_intra_terms(seq, J):
                mat.put(K, J, EntryCoeff(sign))
        diffs[i] = mat
    return TotalComplex(seq.n, {k: tuple(v) for k, v in pieces.items()}, diffs)


def taylor_class_matrices(seq: MonomialSeq, J: int, basis: str = "c") -> list[SparseMatrix]:
    """Differential matrices of the Taylor subcomplex T_J, smallest size first.

    Bases are the class members S_{J,i} in increasing bitmask order; the
    c-basis folds in the ksgn twist that matches the cochain matrices of the
    monomial subcomplex.
    """
    members = seq.s_class(J)
    by_size: dict[int, list[int]] = {}
    for K in members:
        by_size.setdefault(popcount(K), []).append(K)
    sizes = sorted(by_size)
    out: list[SparseMatrix] = []
    for i in sizes:
        if i - 1 not in by_size:
            continue
        mat = SparseMatrix(by_size[i - 1], by_size[i])
        member_set = set(by_size[i - 1])
        for K in by_size[i]:
            for T, sign in taylor_intra_terms(seq, K):
                if T not in member_set:
                    raise AssertionError("intra term left the class")
                if basis == "c":
                    sign *= seq.ksgn(K) * seq.ksgn(T)
                mat.put(T, K, EntryCoeff(sign))
        out.append(mat)
    return out


def e_action(seq: MonomialSeq, j: int, J: int, basis: str = "b") -> tuple[int, int] | None:
    """Multiplication by b_j on basis element J.

    Returns (coefficient sign, target subset) or None.  In the b-basis the
    coefficient is sgn({j}J); the c-basis folds in ksgn(j, J).
    """
    if (J >> (j - 1)) & 1:
        return None
    fj = seq.lcm_subset(J)
    gen = seq.gens[j - 1]
    if not gen.coprime(fj):
        return None
    target = J | 1 << (j - 1)
    sign = sgn_prepend(j, J)
    if basis == "c":
        sign *= seq.ksgn_pair(j, J)
    elif basis != "b":
        raise ValueError("basis must be 'b' or 'c'")
    return sign, target


def chat_complex(seq: MonomialSeq) -> tuple[SparseMatrix, SparseMatrix]:
    """The 2-periodic oracle complex on the full 2^n basis, split by parity.

    Returns (even_to_odd, odd_to_even); both are square of size 2^(n-1).
    """
    even = sorted(J for J in range(1 << seq.n) if popcount(J) % 2 == 0)
    odd = sorted(J for J in range(1 << seq.n) if popcount(J) % 2 == 1)
    eo = SparseMatrix(odd, even)
    oe = SparseMatrix(even, odd)
    for mat, source in ((eo, even), (oe, odd)):
        for J in source:
            for K, sign in taylor_intra_terms(seq, J):
                mat.put(K, J, EntryCoeff(sign))
            for j in range(1, seq.n + 1):
                hit = e_action(seq, j, J)
                if hit is not None:
                    sign, target = hit
                    mat.put(target, J, EntryCoeff(sign, param=j))
    return eo, oe


# ---------------------------------------------------------------------------
# Subcomplex diagram, weak gradings, totalization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiagramEdge:
    source: int  # class representative (an M-mask)
    target: int
    generator: int


@dataclass
class SubcomplexDiagram:
    seq: MonomialSeq
    classes: tuple[int, ...]  # distinct M-masks, sorted by (popcount, value)
    members: dict[int, tuple[int, ...]]  # class -> subsets in the class
    edges: tuple[DiagramEdge, ...]

    def out_edges(self, cls: int) -> list[DiagramEdge]:
        return [e for e in self.edges if e.source == cls]


def subcomplex_diagram(seq: MonomialSeq) -> SubcomplexDiagram:
    """Quotient of the Taylor graph by the M-class partition."""
    members: dict[int, list[int]] = {}
    for J in range(1 << seq.n):
        members.setdefault(seq.m_closure(J), []).append(J)
    classes = sorted(members, key=lambda m: (popcount(m), m))
    edges: list[DiagramEdge] = []
    for cls in classes:
        f_cls = seq.lcm_subset(cls)
        for j in range(1, seq.n + 1):
            if (cls >> (j - 1)) & 1:
                continue
            if seq.gens[j - 1].coprime(f_cls):
                target = seq.m_closure(cls | 1 << (j - 1))
                edges.append(DiagramEdge(cls, target, j))
    return SubcomplexDiagram(
        seq=seq,
        classes=tuple(classes),
        members={m: tuple(sorted(v)) for m, v in members.items()},
        edges=tuple(edges),
    )


@dataclass
class WeakGrading:
    weights: dict[int, int]  # class representative -> Sigma


@dataclass
class Obstruction:
    """Two directed class-paths of different lengths joining the same classes."""

    path_a: tuple[int, ...]
    path_b: tuple[int, ...]

    @property
    def classes(self) -> frozenset[int]:
        return frozenset(self.path_a) | frozenset(self.path_b)


def weak_grading(diag: SubcomplexDiagram) -> WeakGrading | Obstruction:
    """BFS weight assignment; every edge must raise the weight by one.

    Returns the grading normalized to minimum weight 0 per connected
    component, or an Obstruction holding the two conflicting root paths.
    """
    adj: dict[int, list[tuple[int, int]]] = {c: [] for c in diag.classes}
    for e in diag.edges:
        adj[e.source].append((e.target, 1))
        adj[e.target].append((e.source, -1))
    weight: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    component: dict[int, int] = {}
    for root in diag.classes:
        if root in weight:
            continue
        weight[root] = 0
        parent[root] = None
        component[root] = root
        queue = [root]
        while queue:
            u = queue.pop(0)
            for v, step in adj[u]:
                w = weight[u] + step
                if v not in weight:
                    weight[v] = w
                    parent[v] = u
                    component[v] = root
                    queue.append(v)
                elif weight[v] != w:
                    return Obstruction(_root_path(parent, u) + (v,), _root_path(parent, v))
    mins: dict[int, int] = {}
    for cls, w in weight.items():
        comp = component[cls]
        mins[comp] = min(mins.get(comp, w), w)
    return WeakGrading({cls: w - mins[component[cls]] for cls, w in weight.items()})


def _root_path(parent: dict[int, int | None], node: int) -> tuple[int, ...]:
    path = [node]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return tuple(reversed(path))


def homogeneous_sigma(seq: MonomialSeq) -> WeakGrading:
    """Sigma_J = floor(deg f_J / deg f_1), valid whenever f is homogeneous."""
    if not seq.is_homogeneous():
        raise ValueError("generators are not of equal total degree")
    base = seq.gens[0].degree
    diag = subcomplex_diagram(seq)
    return WeakGrading({cls: seq.lcm_subset(cls).degree // base for cls in diag.classes})


def check_grading(diag: SubcomplexDiagram, grading: WeakGrading) -> None:
    for e in diag.edges:
        if grading.weights[e.target] != grading.weights[e.source] + 1:
            raise ValueError(f"grading violates edge {e}")


def totalization(seq: MonomialSeq, grading: WeakGrading) -> TotalComplex:
    """The 2^n complex T(f, a) in the c-basis.

    Basis element J sits in degree |J| - 2*Sigma_{M_J} (naive shift, no
    suspension signs).  Intra-subcomplex coefficients are the cochain
    constants; inter-subcomplex coefficients are ksgn(j,J)*sgn({j}J)*a_j.
    """
    diag = subcomplex_diagram(seq)
    check_grading(diag, grading)
    degree: dict[int, int] = {}
    for J in range(1 << seq.n):
        degree[J] = popcount(J) - 2 * grading.weights[seq.m_closure(J)]
    pieces: dict[int, list[int]] = {}
    for J, d in degree.items():
        pieces.setdefault(d, []).append(J)
    for v in pieces.values():
        v.sort()
    diffs: dict[int, SparseMatrix] = {}
    for d, source in pieces.items():
        target = pieces.get(d - 1, [])
        mat = SparseMatrix(target, source)
        for J in source:
            kJ = seq.ksgn(J)
            for K, sign in taylor_intra_terms(seq, J):
                mat.put(K, J, EntryCoeff(sign * kJ * seq.ksgn(K)))
            for j in range(1, seq.n + 1):
                hit = e_action(seq, j, J, basis="c")
                if hit is not None:
                    sign, K = hit
                    if degree[K] != d - 1:
                        raise AssertionError("inter map does not lower degree by 1")
                    mat.put(K, J, EntryCoeff(sign, param=j))
        diffs[d] = mat
    return TotalComplex(seq.n, {k: tuple(v) for k, v in pieces.items()}, diffs)


def components(diag: SubcomplexDiagram) -> list[frozenset[int]]:
    """Undirected connected components of the diagram, as sets of classes."""
    neighbors: dict[int, set[int]] = {c: set() for c in diag.classes}
    for e in diag.edges:
        neighbors[e.source].add(e.target)
        neighbors[e.target].add(e.source)
    seen: set[int] = set()
    out: list[frozenset[int]] = []
    for root in diag.classes:
        if root in seen:
            continue
        stack, comp = [root], set()
        while stack:
            u = stack.pop()
            if u in comp:
                continue
            comp.add(u)
            stack.extend(neighbors[u] - comp)
        seen |= comp
        out.append(frozenset(comp))
    return out


def restrict_total(total: TotalComplex, seq: MonomialSeq, classes: frozenset[int]) -> TotalComplex:
    """The direct summand of a totalization spanned by the given M-classes."""
    keep = {J for d in total.pieces for J in total.pieces[d] if seq.m_closure(J) in classes}
    pieces = {
        d: tuple(J for J in masks if J in keep)
        for d, masks in total.pieces.items()
    }
    pieces = {d: m for d, m in pieces.items() if m}
    diffs: dict[int, SparseMatrix] = {}
    for d, source in pieces.items():
        target = pieces.get(d - 1, ())
        full = total.diffs[d]
        mat = SparseMatrix(target, source)
        tset = set(target)
        for (r, c), e in full.entries.items():
            row_label = full.row_basis[r]
            col_label = full.col_basis[c]
            if col_label in keep:
                if row_label not in tset:
                    if row_label in keep:
                        raise AssertionError("restriction leaked outside pieces")
                    continue
                mat.put(row_label, col_label, e)
        diffs[d] = mat
    return TotalComplex(total.n, pieces, diffs)
