"""Brute-force ground truth: word reduction by braid moves, Cayley balls,
growth counts, and the ball-isomorphism test for the marked-group metric.

Words are tuples of 0-based generator indices. Generators are involutions,
so no inverse letters are needed.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .coxeter import INF, CoxeterMatrix
from .errors import CapExceeded, InputError

Word = tuple[int, ...]

MAX_WORD_LENGTH = 24
VERTEX_BUDGET = 10**6


class WordReducer:
    """Normal forms (lexicographically least reduced words) for one Coxeter matrix.

    Memo tables live on the instance; create one per computation.
    """

    def __init__(self, M: CoxeterMatrix, max_length: int = MAX_WORD_LENGTH):
        self.M = M
        self.max_length = max_length
        n = M.rank
        self._braid = [[None if M[s, t] is INF or s == t else M[s, t] for t in range(n)] for s in range(n)]
        self._nf: dict[Word, Word] = {}
        self._product: dict[tuple[Word, int], Word] = {}

    def _moves(self, w: Word) -> Iterator[Word]:
        for p in range(len(w) - 1):
            s, t = w[p], w[p + 1]
            m = self._braid[s][t]
            if m is None or p + m > len(w):
                continue
            if all(w[p + k] == (s if k % 2 == 0 else t) for k in range(2, m)):
                swapped = tuple(t if k % 2 == 0 else s for k in range(m))
                yield w[:p] + swapped + w[p + m:]

    def _explore(self, w: Word) -> tuple[set[Word], Optional[Word]]:
        """Braid-move class of w, or a shorter word as soon as a letter repeats."""
        seen, stack = {w}, [w]
        while stack:
            u = stack.pop()
            for p in range(len(u) - 1):
                if u[p] == u[p + 1]:
                    return seen, u[:p] + u[p + 2:]
            for v in self._moves(u):
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen, None

    def _normal_form_of_reduced(self, w: Word) -> Word:
        nf = self._nf.get(w)
        if nf is None:
            cls, shorter = self._explore(w)
            if shorter is not None:
                raise AssertionError(f"word {w} was assumed reduced")
            nf = min(cls)
            for u in cls:
                self._nf[u] = nf
        return nf

    def multiply(self, x: Word, s: int) -> Word:
        """Normal form of x*s for a normal form x."""
        key = (x, s)
        out = self._product.get(key)
        if out is None:
            w = x + (s,)
            if len(w) > self.max_length:
                raise CapExceeded(f"word length {len(w)} exceeds cap {self.max_length}")
            cls, shorter = self._explore(w)
            if shorter is None:
                out = min(cls)
                for u in cls:
                    self._nf[u] = out
            else:
                # x reduced, so x*s has length |x| - 1 and the shorter word is reduced
                out = self._normal_form_of_reduced(shorter)
            self._product[key] = out
        return out

    def reduce(self, w: Sequence[int]) -> Word:
        w = tuple(w)
        if len(w) > self.max_length:
            raise CapExceeded(f"word length {len(w)} exceeds cap {self.max_length}")
        for s in w:
            if type(s) is not int or not 0 <= s < self.M.rank:
                raise InputError(f"generator index {s} out of range for rank {self.M.rank}")
        x: Word = ()
        for s in w:
            x = self.multiply(x, s)
        return x


def reduce_word(M: CoxeterMatrix, w: Sequence[int], max_length: int = MAX_WORD_LENGTH) -> Word:
    return WordReducer(M, max_length).reduce(w)


@dataclass
class CayleyBall:
    """Ball of radius R around the identity, vertices keyed by normal form."""

    rank: int
    radius: int
    layers: list[list[Word]]
    step: dict[tuple[Word, int], Word] = field(repr=False)

    @property
    def vertices(self) -> list[Word]:
        return [v for layer in self.layers for v in layer]

    def __len__(self) -> int:
        return sum(len(layer) for layer in self.layers)

    def __contains__(self, w) -> bool:
        w = tuple(w)
        return len(w) < len(self.layers) and w in self.layers[len(w)]

    def neighbor(self, v: Word, label: int, radius: Optional[int] = None) -> Optional[Word]:
        u = self.step.get((v, label))
        if u is None or len(u) > (self.radius if radius is None else radius):
            return None
        return u

    def edges(self) -> list[tuple[Word, Word, int]]:
        return [(v, u, i) for (v, i), u in self.step.items() if len(u) <= self.radius]

    def layer_counts(self) -> list[int]:
        return [len(layer) for layer in self.layers]

    def to_dot(self) -> str:
        def name(w):
            return "e" if not w else "".join(f"s{i + 1}" for i in w)

        lines = ["digraph ball {"]
        for v in self.vertices:
            lines.append(f'  "{name(v)}";')
        for v, u, i in sorted(self.edges()):
            lines.append(f'  "{name(v)}" -> "{name(u)}" [label="{i + 1}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def ball(
    M: CoxeterMatrix,
    R: int,
    max_length: int = MAX_WORD_LENGTH,
    budget: int = VERTEX_BUDGET,
    reducer: Optional[WordReducer] = None,
) -> CayleyBall:
    """Breadth-first ball of radius R in the Cayley graph."""
    if type(R) is not int or R < 0:
        raise InputError("radius must be a non-negative integer")
    if R > max_length:
        raise CapExceeded(f"radius {R} exceeds the word-length cap {max_length}")
    red = reducer or WordReducer(M, max_length + 1)
    layers: list[list[Word]] = [[()]]
    step: dict[tuple[Word, int], Word] = {}
    seen = {()}
    total = 1
    for k in range(R + 1):
        nxt = []
        for x in layers[k]:
            for s in range(M.rank):
                y = red.multiply(x, s)
                if len(y) > R:
                    continue
                step[(x, s)] = y
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    total += 1
                    if total > budget:
                        raise CapExceeded(f"ball exceeds the vertex budget {budget}")
        if k < R:
            layers.append(sorted(nxt))
    return CayleyBall(M.rank, R, layers, step)


def oracle_coefficients(M: CoxeterMatrix, m_max: int, **caps) -> list[int]:
    """a(0..m_max) by counting ball layers."""
    counts = ball(M, m_max, **caps).layer_counts()
    return counts + [0] * (m_max + 1 - len(counts))


def _isomorphic_at(b1: CayleyBall, b2: CayleyBall, R: int) -> bool:
    """Rooted, labelled isomorphism of the radius-R sub-balls by simultaneous BFS."""
    phi: dict[Word, Word] = {(): ()}
    image = {()}
    queue = deque([()])
    while queue:
        u = queue.popleft()
        pu = phi[u]
        for i in range(b1.rank):
            v1 = b1.neighbor(u, i, R)
            v2 = b2.neighbor(pu, i, R)
            if (v1 is None) != (v2 is None):
                return False
            if v1 is None:
                continue
            if v1 in phi:
                if phi[v1] != v2:
                    return False
            else:
                if v2 in image:
                    return False
                phi[v1] = v2
                image.add(v2)
                queue.append(v1)
    size2 = sum(len(layer) for layer in b2.layers[: R + 1])
    return len(phi) == size2


def balls_isomorphic(M: CoxeterMatrix, M2: CoxeterMatrix, R: int, **caps) -> bool:
    if M.rank != M2.rank:
        raise InputError(f"rank mismatch: {M.rank} vs {M2.rank}")
    return _isomorphic_at(ball(M, R, **caps), ball(M2, R, **caps), R)


@dataclass(frozen=True)
class DistanceBound:
    """What finite ball inspection says about the marked distance d = e^{-v}."""

    agree_radius: int  # largest R <= R_max with isomorphic balls
    first_disagreement: Optional[int]
    v_lower: int
    exact: bool
    d_upper: float
    d_lower: float = 0.0
    d_exact: Optional[float] = None
    v_exact: Optional[int] = None

    def __str__(self):
        if self.exact:
            return (
                f"balls agree through R = {self.agree_radius}, differ at R = {self.first_disagreement}; "
                f"d in [{self.d_lower:.6g}, {self.d_upper:.6g}], d = e^-{self.v_exact} = {self.d_exact:.6g}"
            )
        return f"balls agree through R = {self.agree_radius}; d <= e^-{self.v_lower} = {self.d_upper:.6g}"


def marked_distance_bound(M: CoxeterMatrix, M2: CoxeterMatrix, R_max: int, **caps) -> DistanceBound:
    """Bound the marked distance through the radius-R ball criterion.

    Isomorphic balls of radius R mean d <= e^{-(2R+1)}. At the first radius R*
    where they differ, d lies in [e^{-(2R*+1)}, e^{-(2R*-1)}]. Every relator of
    a Coxeter group has even length, so the kernels already differ among words
    of length 2R*, giving v = 2R* - 1 exactly.
    """
    if M.rank != M2.rank:
        raise InputError(f"rank mismatch: {M.rank} vs {M2.rank}")
    if R_max < 1:
        raise InputError("R_max must be at least 1")
    b1, b2 = ball(M, R_max, **caps), ball(M2, R_max, **caps)
    agree = 0
    for R in range(1, R_max + 1):
        if not _isomorphic_at(b1, b2, R):
            v = 2 * R - 1
            return DistanceBound(
                agree_radius=agree,
                first_disagreement=R,
                v_lower=v,
                exact=True,
                d_upper=math.exp(-v),
                d_lower=math.exp(-(2 * R + 1)),
                d_exact=math.exp(-v),
                v_exact=v,
            )
        agree = R
    v = 2 * R_max + 1
    return DistanceBound(agree_radius=R_max, first_disagreement=None, v_lower=v, exact=False, d_upper=math.exp(-v))
