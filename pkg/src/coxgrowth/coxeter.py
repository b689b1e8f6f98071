"""Coxeter matrices, their metric and partial order, Gram matrices and the
elliptic / affine / non-affine trichotomy.

Indices are 0-based in the Python API and 1-based in the text/JSON formats.
"""
from __future__ import annotations

import enum
import json
import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import InconsistencyError, InputError

MAX_LABEL = 2**31
SPECTRAL_TOL = 1e-9


class _Infinity:
    """The label ``inf``. Compares above every integer and supports no arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())

    def __hash__(self):
        return hash("coxgrowth.INF")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INF = _Infinity()

Label = Union[int, _Infinity]


def is_label(value, diagonal: bool = False) -> bool:
    if diagonal:
        return type(value) is int and value == 1
    if value is INF:
        return True
    return type(value) is int and 2 <= value < MAX_LABEL


def parse_label(token: str) -> Label:
    token = token.strip().lower()
    if token in ("inf", "infinity", "oo", "∞"):
        return INF
    if not re.fullmatch(r"\d+", token):
        raise InputError(f"bad label {token!r}")
    return int(token)


def exp_neg(m: Label) -> float:
    """e^{-m}, with e^{-inf} = 0."""
    return 0.0 if m is INF else math.exp(-m)


@dataclass(frozen=True)
class CoxeterMatrix:
    entries: tuple[tuple[Label, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if n < 1:
            raise InputError("rank must be at least 1")
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise InputError(f"row {i + 1} has length {len(row)}, expected {n}")
            for j, m in enumerate(row):
                if i == j:
                    if not is_label(m, diagonal=True):
                        raise InputError(f"diagonal entry ({i + 1},{i + 1}) must be 1, got {m}")
                elif not is_label(m):
                    raise InputError(
                        f"off-diagonal entry ({i + 1},{j + 1}) = {m}: labels must be integers >= 2 or inf"
                    )
                elif self.entries[j][i] != m:
                    raise InputError(f"asymmetric entries at ({i + 1},{j + 1})")

    @classmethod
    def from_pairs(cls, rank: int, pairs: Mapping[tuple[int, int], Label] | None = None) -> CoxeterMatrix:
        """Build from 0-based pairs; unspecified off-diagonal pairs default to 2."""
        if type(rank) is not int or rank < 1:
            raise InputError("rank must be a positive integer")
        rows = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]
        for (i, j), m in (pairs or {}).items():
            if not (0 <= i < rank and 0 <= j < rank):
                raise InputError(f"index pair ({i}, {j}) out of range for rank {rank}")
            if i == j:
                if m != 1:
                    raise InputError(f"diagonal entry ({i + 1},{i + 1}) must be 1, got {m}")
                continue
            rows[i][j] = rows[j][i] = m
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def dihedral(cls, m: Label) -> CoxeterMatrix:
        return cls.from_pairs(2, {(0, 1): m})

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Label:
        i, j = ij
        return self.entries[i][j]

    def pairs(self) -> Iterable[tuple[int, int, Label]]:
        n = self.rank
        for i in range(n):
            for j in range(i + 1, n):
                yield i, j, self.entries[i][j]

    def has_infinity(self) -> bool:
        return any(m is INF for _, _, m in self.pairs())

    def with_entry(self, i: int, j: int, m: Label) -> CoxeterMatrix:
        rows = [list(r) for r in self.entries]
        rows[i][j] = rows[j][i] = m
        return CoxeterMatrix(tuple(tuple(r) for r in rows))

    def restrict(self, subset: Sequence[int]) -> CoxeterMatrix:
        return CoxeterMatrix(tuple(tuple(self.entries[i][j] for j in subset) for i in subset))

    def to_text(self) -> str:
        lines = [f"rank {self.rank}"]
        lines += [f"m {i + 1} {j + 1} = {m}" for i, j, m in self.pairs() if m != 2]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "entries": [[i + 1, j + 1, str(m)] for i, j, m in self.pairs() if m != 2],
        }

    def __str__(self):
        return "\n".join(" ".join(f"{str(m):>3}" for m in row) for row in self.entries)


class GrowthType(enum.Enum):
    ELLIPTIC = "Elliptic"
    AFFINE = "Affine"
    NON_AFFINE = "NonAffine"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ContractibleEdgeSpec:
    """An edge between generators ``pair`` of type <k1, k2, n, l1, l2>."""

    pair: tuple[int, int]
    incident_labels: tuple[Label, Label, Label, Label, Label]

    @property
    def base_label(self) -> Label:
        return self.incident_labels[2]

    def check(self) -> None:
        k1, k2, n, l1, l2 = self.incident_labels
        if (k1, k2, l1, l2) != (2, 2, 2, 2):
            raise InputError(
                f"edge of type <{k1},{k2},{n},{l1},{l2}> is not contractible (needs <2,2,N,2,2>)"
            )
        if not is_label(n):
            raise InputError(f"bad edge label {n}")
        i, j = self.pair
        if i == j:
            raise InputError("contractible edge needs two distinct generators")


# -- parsing -----------------------------------------------------------------

_ENTRY_RE = re.compile(r"m\s+(\S+)\s+(\S+)\s*=\s*(\S+)$")


def parse_matrix(text: str) -> CoxeterMatrix:
    """Parse the text format (``rank n`` then ``m i j = label`` lines) or its JSON twin.

    Statements are separated by newlines or semicolons; ``#`` starts a comment.
    """
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    statements = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        col = 0
        for part in line.split(";"):
            if part.strip():
                statements.append((lineno, col + len(part) - len(part.lstrip()) + 1, part.strip()))
            col += len(part) + 1
    if not statements:
        raise InputError("empty matrix document")

    lineno, col, first = statements[0]
    fields = first.split()
    if len(fields) != 2 or fields[0] != "rank" or not fields[1].isdigit():
        raise InputError(f"syntax error at line {lineno}, column {col}: expected 'rank <n>'")
    rank = int(fields[1])
    if rank < 1:
        raise InputError(f"line {lineno}: rank must be at least 1")

    assigned: dict[tuple[int, int], Label] = {}
    for lineno, col, stmt in statements[1:]:
        where = f"line {lineno}, column {col}"
        match = _ENTRY_RE.match(stmt)
        if not match:
            raise InputError(f"syntax error at {where}: expected 'm <i> <j> = <label>', got {stmt!r}")
        si, sj, slabel = match.groups()
        if not (si.isdigit() and sj.isdigit()):
            raise InputError(f"syntax error at {where}: indices must be positive integers")
        i, j = int(si) - 1, int(sj) - 1
        if not (0 <= i < rank and 0 <= j < rank):
            raise InputError(f"{where}: index out of range for rank {rank}")
        try:
            label = parse_label(slabel)
        except InputError as exc:
            raise InputError(f"syntax error at {where}: {exc}") from None
        _assign(assigned, i, j, label, where)
    return CoxeterMatrix.from_pairs(rank, assigned)


def _assign(assigned, i, j, label, where):
    if i == j:
        if label != 1:
            raise InputError(f"{where}: bad diagonal entry m_{i + 1}{i + 1} = {label} (must be 1)")
        return
    if label == 1 or (label is not INF and label < 2):
        raise InputError(
            f"{where}: off-diagonal label {label} at ({i + 1},{j + 1}); only the diagonal may be 1"
        )
    if label is not INF and label >= MAX_LABEL:
        raise InputError(f"{where}: label {label} too large")
    key = (min(i, j), max(i, j))
    if key in assigned and assigned[key] != label:
        raise InputError(f"{where}: asymmetric or conflicting entries for pair ({i + 1},{j + 1})")
    assigned[key] = label


def _parse_json(text: str) -> CoxeterMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or set(doc) - {"rank", "entries"} or "rank" not in doc:
        raise InputError("JSON matrix must be an object with keys 'rank' and 'entries'")
    rank = doc["rank"]
    if type(rank) is not int or rank < 1:
        raise InputError("JSON 'rank' must be a positive integer")
    assigned: dict[tuple[int, int], Label] = {}
    for k, item in enumerate(doc.get("entries", [])):
        where = f"entries[{k}]"
        if not (isinstance(item, list) and len(item) == 3):
            raise InputError(f"{where}: expected [i, j, label]")
        i, j, raw = item
        if type(i) is not int or type(j) is not int or not (1 <= i <= rank and 1 <= j <= rank):
            raise InputError(f"{where}: index out of range for rank {rank}")
        label = parse_label(str(raw))
        _assign(assigned, i - 1, j - 1, label, where)
    return CoxeterMatrix.from_pairs(rank, assigned)


# -- metric and order ----------------------------------------------------------


def _same_rank(M: CoxeterMatrix, M2: CoxeterMatrix) -> None:
    if M.rank != M2.rank:
        raise InputError(f"rank mismatch: {M.rank} vs {M2.rank}")


def matrix_metric_D(M: CoxeterMatrix, M2: CoxeterMatrix) -> float:
    """max_ij |e^{-m_ij} - e^{-m'_ij}|."""
    _same_rank(M, M2)
    return max(
        (abs(exp_neg(a) - exp_neg(b)) for (_, _, a), (_, _, b) in zip(M.pairs(), M2.pairs())),
        default=0.0,
    )


def partial_order_leq(M: CoxeterMatrix, M2: CoxeterMatrix) -> bool:
    _same_rank(M, M2)
    return all(a <= b for (_, _, a), (_, _, b) in zip(M.pairs(), M2.pairs()))


# -- Gram matrix and classification -------------------------------------------


def _neg_cos(m: Label) -> float:
    if m is INF:
        return -1.0
    if m == 2:
        return 0.0
    if m == 3:
        return -0.5
    return -math.cos(math.pi / m)


def gram_matrix(M: CoxeterMatrix) -> np.ndarray:
    n = M.rank
    G = np.eye(n)
    for i, j, m in M.pairs():
        G[i, j] = G[j, i] = _neg_cos(m)
    return G


def gram_spectrum(M: CoxeterMatrix) -> np.ndarray:
    """Ascending eigenvalues of the Gram matrix."""
    return np.linalg.eigvalsh(gram_matrix(M))


def spectral_type(spectrum: Sequence[float], tol: float = SPECTRAL_TOL) -> GrowthType:
    lam_min = float(min(spectrum))
    if lam_min > tol:
        return GrowthType.ELLIPTIC
    if lam_min >= -tol:
        return GrowthType.AFFINE
    return GrowthType.NON_AFFINE


def classify(M: CoxeterMatrix) -> GrowthType:
    """Spectral verdict on the Gram matrix, confirmed by exact diagram recognition."""
    from .catalog import diagram_type

    spectral = spectral_type(gram_spectrum(M))
    exact = diagram_type(M)
    if spectral is not exact:
        raise InconsistencyError(
            f"Gram spectrum says {spectral} but diagram recognition says {exact}"
        )
    return exact


# -- builders -------------------------------------------------------------------


def deform(M: CoxeterMatrix, l: int) -> CoxeterMatrix:
    """Replace every inf entry by ``l``."""
    if type(l) is not int or l < 2:
        raise InputError(f"deformation parameter must be an integer >= 2, got {l}")
    return CoxeterMatrix(tuple(tuple(l if m is INF else m for m in row) for row in M.entries))


def polygon_matrix(angles: Sequence[Label]) -> CoxeterMatrix:
    """Reflection group of a Coxeter n-gon with angle pi/a_i at vertex i.

    Sides i and i+1 (mod n) meet at angle pi/a_i; non-adjacent sides get inf.
    """
    n = len(angles)
    if n < 3:
        raise InputError("a polygon needs at least 3 vertices")
    for a in angles:
        if not is_label(a):
            raise InputError(f"polygon angle label {a} must be an integer >= 2 or inf")
    pairs = {(i, j): INF for i in range(n) for j in range(i + 1, n)}
    for i, a in enumerate(angles):
        j = (i + 1) % n
        pairs[(min(i, j), max(i, j))] = a
    return CoxeterMatrix.from_pairs(n, pairs)


def edge_family(M: CoxeterMatrix, spec: ContractibleEdgeSpec, m: Label) -> CoxeterMatrix:
    """Member of the angle family along a contractible edge; ``m = INF`` gives the contracted limit."""
    spec.check()
    i, j = spec.pair
    if not (0 <= i < M.rank and 0 <= j < M.rank):
        raise InputError(f"edge pair {spec.pair} out of range for rank {M.rank}")
    if not is_label(m) or m < spec.base_label:
        raise InputError(f"family parameter {m} is below the base label {spec.base_label}")
    return M.with_entry(i, j, m)
