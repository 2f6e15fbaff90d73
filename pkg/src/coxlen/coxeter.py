"""Coxeter matrices: parsing, Gram forms, and exact type classification.

Bond orders are stored as ints with 0 denoting an infinite order (the same
sentinel used by the structured matrix-file format).  Classification verdicts
are decided purely by exact signs of principal minors and characteristic
polynomial coefficients of the Gram matrix.
"""

from __future__ import annotations

import enum
import itertools
import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import DomainError, InputError
from .exactfield import RealCyclotomicField

INF = 0  # sentinel bond order for m_ij = infinity

GENERATOR_NAMES = "abcdefghijklmnopqrstuvwxyz"


def order_text(m: int) -> str:
    return "inf" if m == INF else str(m)


@dataclass(frozen=True)
class CoxeterMatrix:
    """The combinatorial datum (S, m_ij); entries symmetric, m_ii = 1."""

    rank: int
    entries: tuple  # tuple of tuples of ints, 0 = infinity
    labels: tuple

    @classmethod
    def make(cls, entries, labels=None):
        entries = tuple(tuple(int(x) for x in row) for row in entries)
        rank = len(entries)
        if rank < 1:
            raise InputError("rank must be >= 1")
        for i, row in enumerate(entries):
            if len(row) != rank:
                raise InputError("row %d has %d entries, expected %d" % (i + 1, len(row), rank))
            if row[i] != 1:
                raise InputError("m_%d%d = %s but diagonal entries must be 1"
                                 % (i + 1, i + 1, order_text(row[i])))
            for j in range(rank):
                if entries[i][j] != entries[j][i]:
                    raise InputError("asymmetric entries at (%d,%d): %s vs %s"
                                     % (i + 1, j + 1, order_text(entries[i][j]),
                                        order_text(entries[j][i])))
                if i != j and entries[i][j] != INF and entries[i][j] < 2:
                    raise InputError("m_%d%d = %s but off-diagonal orders must be >= 2 or inf"
                                     % (i + 1, j + 1, order_text(entries[i][j])))
        if labels is None:
            labels = tuple(GENERATOR_NAMES[i] if rank <= 26 else "s%d" % (i + 1)
                           for i in range(rank))
        return cls(rank, entries, tuple(labels))

    def order(self, i, j):
        return self.entries[i][j]

    def submatrix(self, subset):
        subset = tuple(subset)
        rows = tuple(tuple(self.entries[i][j] for j in subset) for i in subset)
        return CoxeterMatrix.make(rows, labels=tuple(self.labels[i] for i in subset))

    def conductor(self):
        """lcm of the finite off-diagonal bond orders (2 when there are none)."""
        n = 2
        first = True
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                m = self.entries[i][j]
                if m != INF:
                    n = m if first else n * m // math.gcd(n, m)
                    first = False
        return max(n, 2)

    def describe(self):
        parts = []
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                if self.entries[i][j] != 2:
                    parts.append("m%d%d=%s" % (i + 1, j + 1, order_text(self.entries[i][j])))
        return "rank %d; %s" % (self.rank, " ".join(parts)) if parts else "rank %d" % self.rank


_ASSIGN_RE = re.compile(r"^m(\d+)[_,]?(\d+)=(\d+|inf)$")


def parse_coxeter_matrix(text: str) -> CoxeterMatrix:
    """Parse the inline grammar: "rank <k>; m<i><j>=<v> ..." (1-based, i<j).

    Multi-digit indices use a separator, e.g. m1_10=3.  Unassigned pairs
    default to 2; the value "inf" denotes an infinite bond order.
    """
    tokens = text.replace(";", " ").split()
    if not tokens or tokens[0] != "rank":
        raise InputError("input must start with 'rank <k>'")
    if len(tokens) < 2 or not tokens[1].isdigit():
        raise InputError("missing rank value")
    rank = int(tokens[1])
    if rank < 1:
        raise InputError("rank must be >= 1")
    entries = [[2] * rank for _ in range(rank)]
    for i in range(rank):
        entries[i][i] = 1
    for tok in tokens[2:]:
        m = _ASSIGN_RE.match(tok)
        if not m:
            raise InputError("cannot parse assignment %r" % tok)
        i, j = int(m.group(1)), int(m.group(2))
        raw = m.group(3)
        v = INF if raw == "inf" else int(raw)
        if not (1 <= i < j <= rank):
            raise InputError("indices out of range in %r (need 1 <= i < j <= %d)" % (tok, rank))
        if v != INF and v < 2:
            raise InputError("m%d%d = %d is below 2" % (i, j, v))
        entries[i - 1][j - 1] = entries[j - 1][i - 1] = v
    return CoxeterMatrix.make(entries)


def load_matrix_json(text: str) -> CoxeterMatrix:
    """Full symmetric integer matrix as JSON (0 encodes infinity)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError("not valid JSON: %s" % e) from None
    if isinstance(data, dict):
        data = data.get("matrix")
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise InputError("expected a JSON list of rows (or {'matrix': [...]})")
    return CoxeterMatrix.make(data)


def parse_any(text: str) -> CoxeterMatrix:
    stripped = text.lstrip()
    if stripped.startswith("[") or stripped.startswith("{"):
        return load_matrix_json(text)
    return parse_coxeter_matrix(text)


@dataclass(frozen=True)
class GramMatrix:
    """The bilinear form B with B_ii = 1 and B_ij = -cos(pi/m_ij)."""

    cm: CoxeterMatrix
    field: RealCyclotomicField
    entries: tuple  # tuple of tuples of ExactScalar


def gram_matrix(cm: CoxeterMatrix) -> GramMatrix:
    field = RealCyclotomicField(cm.conductor())
    one = field.one
    minus_one = field.from_rational(-1)
    rows = []
    for i in range(cm.rank):
        row = []
        for j in range(cm.rank):
            if i == j:
                row.append(one)
            else:
                m = cm.entries[i][j]
                row.append(minus_one if m == INF else -field.cos_pi_over(m))
        rows.append(tuple(row))
    return GramMatrix(cm, field, tuple(rows))


class Kind(enum.Enum):
    SPHERICAL = "Spherical"
    AFFINE_EUCLIDEAN = "AffineEuclidean"
    NON_AFFINE = "NonAffine"


@dataclass(frozen=True)
class TypeVerdict:
    kind: Kind
    components: tuple  # ((subset tuple, Kind), ...)
    minimal_nonaffine: bool


def irreducible_components(cm: CoxeterMatrix):
    """Connected components of the diagram (edges where m_ij != 2)."""
    seen = [False] * cm.rank
    out = []
    for start in range(cm.rank):
        if seen[start]:
            continue
        comp = []
        stack = [start]
        seen[start] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in range(cm.rank):
                if w != v and not seen[w] and cm.entries[v][w] != 2:
                    seen[w] = True
                    stack.append(w)
        out.append(tuple(sorted(comp)))
    return sorted(out)


def canonical_diagram(cm: CoxeterMatrix, subset=None):
    """Entry matrix of the subdiagram, minimized over generator permutations.

    Only used as a cache/lookup key; verdicts are permutation invariant
    because permuting generators conjugates the Gram form by a permutation.
    """
    idx = tuple(range(cm.rank)) if subset is None else tuple(subset)
    k = len(idx)
    best = None
    for perm in itertools.permutations(range(k)):
        flat = tuple(cm.entries[idx[perm[i]]][idx[perm[j]]]
                     for i in range(k) for j in range(i + 1, k))
        if best is None or flat < best:
            best = flat
    return (k, best)


_KIND_CACHE = {}


def _classify_entries(entries):
    cm = CoxeterMatrix.make(entries)
    gm = gram_matrix(cm)
    field = gm.field
    minors = linalg.leading_principal_minors(field, gm.entries)
    if all(mn.sign() > 0 for mn in minors):
        return Kind.SPHERICAL
    pos, neg, zero = linalg.inertia(field, gm.entries)
    if neg == 0 and zero == 1:
        return Kind.AFFINE_EUCLIDEAN
    return Kind.NON_AFFINE


def classify_component(cm: CoxeterMatrix, subset) -> Kind:
    """Exact verdict for one irreducible component of the diagram."""
    subset = tuple(sorted(subset))
    comps = irreducible_components(cm.submatrix(subset))
    if len(comps) != 1:
        raise DomainError("subset %s is not a single irreducible component" % (subset,))
    if len(subset) <= 5:
        key = canonical_diagram(cm, subset)
        if key not in _KIND_CACHE:
            sub = cm.submatrix(subset)
            _KIND_CACHE[key] = _classify_entries(sub.entries)
        return _KIND_CACHE[key]
    return _classify_entries(cm.submatrix(subset).entries)


def subset_is_affine(cm: CoxeterMatrix, subset) -> bool:
    """Affine = every irreducible component spherical or Euclidean.

    The empty subset (trivial group) counts as spherical, hence affine.
    """
    subset = tuple(sorted(subset))
    if not subset:
        return True
    sub = cm.submatrix(subset)
    for comp in irreducible_components(sub):
        global_comp = tuple(subset[i] for i in comp)
        if classify_component(cm, global_comp) == Kind.NON_AFFINE:
            return False
    return True


def classify_group(cm: CoxeterMatrix) -> TypeVerdict:
    """Whole-group verdict with per-component kinds.

    minimal_nonaffine is decided on the maximal proper special subgroups
    S \\ {s} alone; that is sufficient because special subgroups of affine
    groups are affine.
    """
    comps = irreducible_components(cm)
    kinds = tuple((c, classify_component(cm, c)) for c in comps)
    if any(k == Kind.NON_AFFINE for _, k in kinds):
        kind = Kind.NON_AFFINE
    elif all(k == Kind.SPHERICAL for _, k in kinds):
        kind = Kind.SPHERICAL
    else:
        kind = Kind.AFFINE_EUCLIDEAN
    minimal = False
    if kind == Kind.NON_AFFINE:
        full = range(cm.rank)
        minimal = all(subset_is_affine(cm, tuple(x for x in full if x != s))
                      for s in range(cm.rank))
    return TypeVerdict(kind, kinds, minimal)


def minimal_nonaffine_subsets(cm: CoxeterMatrix):
    """All inclusion-minimal generator subsets spanning a non-affine group."""
    verdict = classify_group(cm)
    if verdict.kind != Kind.NON_AFFINE:
        raise DomainError("group is %s; only non-affine groups have minimal "
                          "non-affine special subgroups" % verdict.kind.value)
    out = []
    for size in range(1, cm.rank + 1):
        for subset in itertools.combinations(range(cm.rank), size):
            if subset_is_affine(cm, subset):
                continue
            if all(subset_is_affine(cm, tuple(x for x in subset if x != t))
                   for t in subset):
                out.append(subset)
    assert out, "non-affine group must contain a minimal non-affine subset"
    return out
