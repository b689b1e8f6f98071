"""Finite and affine Coxeter diagram recognition, Solomon growth polynomials,
and the family of finite parabolic subsets."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from .coxeter import INF, CoxeterMatrix, GrowthType, Label
from .errors import CapExceeded, InputError
from .poly import CyclotomicProduct, IntPolynomial, bracket_poly

MAX_ENUM_RANK = 25

Subset = tuple[int, ...]


@dataclass(frozen=True, order=True)
class FiniteTypeLabel:
    family: str
    rank: int
    m: int = 0  # dihedral label, I2 only

    def __post_init__(self):
        f, n = self.family, self.rank
        ok = (
            (f == "A" and n >= 1)
            or (f == "B" and n >= 2)
            or (f == "D" and n >= 4)
            or (f == "E" and n in (6, 7, 8))
            or (f == "F" and n == 4)
            or (f == "H" and n in (3, 4))
            or (f == "I2" and n == 2 and self.m >= 5)
        )
        if not ok:
            raise InputError(f"no finite Coxeter type {f}{n}" + (f"({self.m})" if self.m else ""))

    def __str__(self):
        return f"I2({self.m})" if self.family == "I2" else f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> FiniteTypeLabel:
        text = text.strip().replace("_", "")
        if text.upper().startswith("I2(") and text.endswith(")"):
            m = int(text[3:-1])
            if m == 3:
                return cls("A", 2)
            if m == 4:
                return cls("B", 2)
            return cls("I2", 2, m)
        return cls(text[0].upper(), int(text[1:]))

    @property
    def bracket(self) -> tuple[int, ...]:
        """Parts of the Solomon bracket polynomial."""
        f, n = self.family, self.rank
        if f == "A":
            return tuple(range(2, n + 2))
        if f == "B":
            return tuple(range(2, 2 * n + 1, 2))
        if f == "D":
            return tuple(range(2, 2 * n - 1, 2)) + (n,)
        if f == "I2":
            return (2, self.m)
        return _EXCEPTIONAL_BRACKETS[str(self)]


_EXCEPTIONAL_BRACKETS = {
    "E6": (2, 5, 6, 8, 9, 12),
    "E7": (2, 6, 8, 10, 12, 14, 18),
    "E8": (2, 8, 12, 14, 18, 20, 24, 30),
    "F4": (2, 6, 8, 12),
    "H3": (2, 6, 10),
    "H4": (2, 12, 20, 30),
}


def solomon_series(label: FiniteTypeLabel) -> IntPolynomial:
    return bracket_poly(label.bracket)


def solomon_factors(label: FiniteTypeLabel) -> CyclotomicProduct:
    return CyclotomicProduct.bracket(label.bracket)


def group_order(label: FiniteTypeLabel) -> int:
    order = 1
    for m in label.bracket:
        order *= m
    return order


# -- diagram helpers -------------------------------------------------------------


def _is_edge(m: Label) -> bool:
    return m is INF or m >= 3


def _check_subset(M: CoxeterMatrix, T: Iterable[int]) -> list[int]:
    T = sorted(set(T))
    for i in T:
        if type(i) is not int or not 0 <= i < M.rank:
            raise InputError(f"generator index {i} out of range for rank {M.rank}")
    return T


def irreducible_components(M: CoxeterMatrix, T: Iterable[int]) -> list[Subset]:
    """Connected components of the Coxeter diagram restricted to T (edges: m >= 3 or inf)."""
    remaining = _check_subset(M, T)
    blocks = []
    unseen = set(remaining)
    for start in remaining:
        if start not in unseen:
            continue
        unseen.discard(start)
        block, stack = [start], [start]
        while stack:
            i = stack.pop()
            for j in list(unseen):
                if _is_edge(M[i, j]):
                    unseen.discard(j)
                    block.append(j)
                    stack.append(j)
        blocks.append(tuple(sorted(block)))
    return blocks


class _Diagram:
    """Restriction of the Coxeter diagram to one connected component."""

    def __init__(self, M: CoxeterMatrix, comp: Sequence[int]):
        self.nodes = list(comp)
        self.adj: dict[int, dict[int, Label]] = {i: {} for i in comp}
        for a, i in enumerate(comp):
            for j in comp[a + 1:]:
                m = M[i, j]
                if _is_edge(m):
                    self.adj[i][j] = self.adj[j][i] = m
        self.n_edges = sum(len(v) for v in self.adj.values()) // 2

    def degree(self, i: int) -> int:
        return len(self.adj[i])

    def labels(self) -> list[Label]:
        return [m for i in self.nodes for j, m in self.adj[i].items() if i < j]

    def branch_nodes(self) -> list[int]:
        return [i for i in self.nodes if self.degree(i) >= 3]

    def path_labels(self) -> list[Label]:
        """Edge labels along a path diagram, read from one end."""
        ends = [i for i in self.nodes if self.degree(i) == 1]
        prev, cur, out = None, ends[0], []
        while True:
            nxt = [j for j in self.adj[cur] if j != prev]
            if not nxt:
                return out
            out.append(self.adj[cur][nxt[0]])
            prev, cur = cur, nxt[0]

    def arms(self, center: int) -> list[list[Label]]:
        """For each neighbour of ``center``, the labels walking outward along that arm."""
        out = []
        for first, m in self.adj[center].items():
            labels, prev, cur = [m], center, first
            while True:
                nxt = [j for j in self.adj[cur] if j != prev]
                if len(nxt) != 1:
                    break
                labels.append(self.adj[cur][nxt[0]])
                prev, cur = cur, nxt[0]
            out.append(labels)
        return out


def _connected(M: CoxeterMatrix, comp: Sequence[int]) -> bool:
    return len(irreducible_components(M, comp)) == 1


def recognize_irreducible(M: CoxeterMatrix, component: Iterable[int]) -> Optional[FiniteTypeLabel]:
    """Finite type of a connected diagram, or None when the parabolic subgroup is infinite."""
    comp = _check_subset(M, component)
    if not comp or not _connected(M, comp):
        raise InputError(f"subset {[i + 1 for i in comp]} is not a connected diagram component")
    n = len(comp)
    if n == 1:
        return FiniteTypeLabel("A", 1)
    d = _Diagram(M, comp)
    labels = d.labels()
    if INF in labels or d.n_edges != n - 1:
        return None
    if n == 2:
        m = labels[0]
        if m == 3:
            return FiniteTypeLabel("A", 2)
        if m == 4:
            return FiniteTypeLabel("B", 2)
        return FiniteTypeLabel("I2", 2, m)

    branch = d.branch_nodes()
    if not branch:
        path = d.path_labels()
        odd = [k for k, m in enumerate(path) if m != 3]
        if not odd:
            return FiniteTypeLabel("A", n)
        if len(odd) != 1:
            return None
        k, m = odd[0], path[odd[0]]
        at_end = k in (0, n - 2)
        if m == 4 and at_end:
            return FiniteTypeLabel("B", n)
        if m == 4 and n == 4 and k == 1:
            return FiniteTypeLabel("F", 4)
        if m == 5 and at_end and n in (3, 4):
            return FiniteTypeLabel("H", n)
        return None

    if len(branch) != 1 or d.degree(branch[0]) != 3 or any(m != 3 for m in labels):
        return None
    arms = sorted(len(a) for a in d.arms(branch[0]))
    if arms[:2] == [1, 1]:
        return FiniteTypeLabel("D", n)
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return FiniteTypeLabel("E", n)
    return None


def recognize_affine(M: CoxeterMatrix, component: Iterable[int]) -> Optional[str]:
    """Name of the irreducible affine type of a connected diagram, or None."""
    comp = _check_subset(M, component)
    if not comp or not _connected(M, comp):
        raise InputError(f"subset {[i + 1 for i in comp]} is not a connected diagram component")
    n = len(comp)
    if n == 1:
        return None
    d = _Diagram(M, comp)
    labels = d.labels()
    if n == 2:
        return "~A1" if labels == [INF] else None
    if INF in labels:
        return None
    if d.n_edges == n:
        if all(m == 3 for m in labels) and all(d.degree(i) == 2 for i in comp):
            return f"~A{n - 1}"
        return None
    if d.n_edges != n - 1:
        return None

    branch = d.branch_nodes()
    if not branch:
        path = d.path_labels()
        if n == 3 and sorted(path) == [3, 6]:
            return "~G2"
        if path[0] == 4 and path[-1] == 4 and all(m == 3 for m in path[1:-1]):
            return f"~C{n - 1}"
        if n == 5 and path in ([3, 3, 4, 3], [3, 4, 3, 3]):
            return "~F4"
        return None

    simply_laced = all(m == 3 for m in labels)
    if len(branch) == 1:
        c = branch[0]
        arms = d.arms(c)
        if d.degree(c) == 4:
            return "~D4" if simply_laced and all(len(a) == 1 for a in arms) else None
        if d.degree(c) != 3:
            return None
        lengths = sorted(len(a) for a in arms)
        if simply_laced:
            return {(2, 2, 2): "~E6", (1, 3, 3): "~E7", (1, 2, 5): "~E8"}.get(tuple(lengths))
        short = [a for a in arms if a == [3]]
        long_ = [a for a in arms if a != [3]]
        if len(short) >= 2 and len(long_) <= 1:
            tail = long_[0] if long_ else [4]
            if tail[-1] == 4 and all(m == 3 for m in tail[:-1]):
                return f"~B{n - 1}"
        return None
    if len(branch) == 2 and simply_laced and all(d.degree(b) == 3 for b in branch):
        leaves = [sum(1 for j in d.adj[b] if d.degree(j) == 1) for b in branch]
        if leaves == [2, 2]:
            return f"~D{n - 1}"
    return None


def diagram_type(M: CoxeterMatrix) -> GrowthType:
    """Exact trichotomy from the diagram catalogs."""
    affine = False
    for comp in irreducible_components(M, range(M.rank)):
        if recognize_irreducible(M, comp) is not None:
            continue
        if recognize_affine(M, comp) is None:
            return GrowthType.NON_AFFINE
        affine = True
    return GrowthType.AFFINE if affine else GrowthType.ELLIPTIC


def decompose(M: CoxeterMatrix, T: Iterable[int]) -> Optional[list[tuple[Subset, FiniteTypeLabel]]]:
    """Irreducible finite components of T with their types, or None if G_T is infinite."""
    out = []
    for comp in irreducible_components(M, T):
        label = recognize_irreducible(M, comp)
        if label is None:
            return None
        out.append((comp, label))
    return out


def growth_factors_of_finite(M: CoxeterMatrix, T: Iterable[int]) -> CyclotomicProduct:
    parts = decompose(M, T)
    if parts is None:
        raise InputError(f"parabolic subgroup on {sorted(i + 1 for i in T)} is infinite")
    result = CyclotomicProduct()
    for _, label in parts:
        result = result * solomon_factors(label)
    return result


def growth_poly_of_finite(M: CoxeterMatrix, T: Iterable[int]) -> IntPolynomial:
    """Growth polynomial of the finite parabolic subgroup on T: product over its components."""
    parts = decompose(M, T)
    if parts is None:
        raise InputError(f"parabolic subgroup on {sorted(i + 1 for i in T)} is infinite")
    result = IntPolynomial([1])
    for _, label in parts:
        result = result * solomon_series(label)
    return result


# -- the finite parabolic family --------------------------------------------------


@dataclass(frozen=True)
class FiniteParabolic:
    subset: Subset
    components: tuple[tuple[Subset, FiniteTypeLabel], ...]
    factors: CyclotomicProduct

    @property
    def degree(self) -> int:
        """Length of the longest element, i.e. degree of the growth polynomial."""
        return self.factors.degree

    @property
    def poly(self) -> IntPolynomial:
        return self.factors.expand()

    @property
    def type_name(self) -> str:
        return " x ".join(str(lab) for _, lab in self.components) or "1"


@dataclass(frozen=True)
class ParabolicFamily:
    rank: int
    members: dict[Subset, FiniteParabolic] = field(default_factory=dict)

    def __contains__(self, T) -> bool:
        return tuple(sorted(T)) in self.members

    def __iter__(self) -> Iterator[FiniteParabolic]:
        return iter(self.members.values())

    def __len__(self) -> int:
        return len(self.members)

    def subsets(self) -> set[Subset]:
        return set(self.members)


def enumerate_finite_subsets(M: CoxeterMatrix, max_rank: int = MAX_ENUM_RANK) -> ParabolicFamily:
    """All T with G_T finite, by increasing size; a candidate is tested only if
    every one-smaller subset is already known finite."""
    n = M.rank
    if n > max_rank:
        raise CapExceeded(f"rank {n} exceeds the enumeration cap {max_rank}")
    members: dict[Subset, FiniteParabolic] = {(): FiniteParabolic((), (), CyclotomicProduct())}
    level = [()]
    while level:
        nxt = []
        known = set(level)
        for T in level:
            start = T[-1] + 1 if T else 0
            for j in range(start, n):
                cand = T + (j,)
                if any(cand[:k] + cand[k + 1:] not in known for k in range(len(cand) - 1)):
                    continue
                parts = decompose(M, cand)
                if parts is None:
                    continue
                factors = CyclotomicProduct()
                for _, label in parts:
                    factors = factors * solomon_factors(label)
                members[cand] = FiniteParabolic(cand, tuple(parts), factors)
                nxt.append(cand)
        level = nxt
    return ParabolicFamily(n, members)


def has_label(M: CoxeterMatrix, T: Sequence[int], L: int) -> bool:
    return any(M[i, j] == L for i, j in combinations(T, 2))


def finite_subsets_with_label(M: CoxeterMatrix, L: Label, family: ParabolicFamily | None = None) -> set[Subset]:
    """Members of the finite family whose diagram has an edge labelled exactly L."""
    if L is INF or type(L) is not int or L < 4:
        raise InputError(f"diagram labels are finite integers >= 4, got {L}")
    family = family or enumerate_finite_subsets(M)
    return {T for T in family.subsets() if has_label(M, T, L)}


# -- catalog table ------------------------------------------------------------------


def catalog_labels(max_rank: int = 8, max_dihedral: int = 8) -> list[FiniteTypeLabel]:
    out = [FiniteTypeLabel("A", n) for n in range(1, max_rank + 1)]
    out += [FiniteTypeLabel("B", n) for n in range(2, max_rank + 1)]
    out += [FiniteTypeLabel("D", n) for n in range(4, max_rank + 1)]
    out += [FiniteTypeLabel("E", n) for n in (6, 7, 8) if n <= max_rank]
    if max_rank >= 4:
        out.append(FiniteTypeLabel("F", 4))
    out += [FiniteTypeLabel("H", n) for n in (3, 4) if n <= max_rank]
    if max_rank >= 2:
        out += [FiniteTypeLabel("I2", 2, m) for m in range(5, max_dihedral + 1)]
    return out


def label_matrix(label: FiniteTypeLabel) -> CoxeterMatrix:
    """A standard Coxeter matrix for a catalog type (nodes numbered along the diagram)."""
    f, n = label.family, label.rank
    pairs: dict[tuple[int, int], Label] = {}
    if f == "I2":
        return CoxeterMatrix.dihedral(label.m)
    if f in ("A", "B", "F", "H"):
        for i in range(n - 1):
            pairs[(i, i + 1)] = 3
        if f == "B":
            pairs[(n - 2, n - 1)] = 4
        elif f == "F":
            pairs[(1, 2)] = 4
        elif f == "H":
            pairs[(0, 1)] = 5
    elif f == "D":
        for i in range(n - 2):
            pairs[(i, i + 1)] = 3
        pairs[(n - 3, n - 1)] = 3
    elif f == "E":
        # chain 0-1-...-(n-2) with node n-1 attached to node 2
        for i in range(n - 2):
            pairs[(i, i + 1)] = 3
        pairs[(2, n - 1)] = 3
    return CoxeterMatrix.from_pairs(n, pairs)


_DIAGRAMS = {
    "A": "path of {n} nodes, all edges unlabelled",
    "B": "path of {n} nodes, one end edge labelled 4",
    "D": "path of {d} nodes with two leaves forked off one end",
    "E": "tree with one branch node and arms of 1, 2 and {e} nodes",
    "F": "path of 4 nodes, middle edge labelled 4",
    "H": "path of {n} nodes, one end edge labelled 5",
    "I2": "two nodes joined by an edge labelled {m}",
}


def catalog_table(max_rank: int = 8, max_dihedral: int = 8) -> list[dict]:
    rows = []
    for lab in catalog_labels(max_rank, max_dihedral):
        parts = lab.bracket
        rows.append(
            {
                "label": str(lab),
                "diagram": _DIAGRAMS[lab.family].format(n=lab.rank, d=lab.rank - 2, e=lab.rank - 4, m=lab.m),
                "bracket": list(parts),
                "degree": sum(m - 1 for m in parts),
                "order": group_order(lab),
            }
        )
    return rows
