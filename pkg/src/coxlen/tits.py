"""The geometric (Tits) representation: exact matrices, keys, reflections.

Group elements are rank x rank matrices over the real cyclotomic field,
compared and hashed through a canonical byte key, so matrix equality is the
word problem.  Generator matrices have entries in Z[theta] (the minimal
polynomial is monic), which keeps products integral and fast.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .coxeter import CoxeterMatrix, GramMatrix, gram_matrix
from .errors import DomainError
from .parallel import parallel_map


def _mat_mul(A, B):
    n = len(A)
    out = []
    for i in range(n):
        Ai = A[i]
        row = []
        for j in range(n):
            acc = Ai[0] * B[0][j]
            for k in range(1, n):
                acc = acc + Ai[k] * B[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _mat_vec(A, v):
    n = len(A)
    return tuple(
        sum((A[i][k] * v[k] for k in range(1, n)), A[i][0] * v[0])
        for i in range(n)
    )


def _identity(field, n):
    one, zero = field.one, field.zero
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def matrix_key(matrix):
    """Canonical byte key: normalized coefficient vectors, serialized."""
    return repr(tuple(tuple((e.num, e.den) for e in row) for row in matrix)).encode()


class GroupElement:
    """An element of W as an exact matrix, with an optional defining word."""

    __slots__ = ("gram", "matrix", "word", "_key")

    def __init__(self, gram, matrix, word=None):
        self.gram = gram
        self.matrix = matrix
        self.word = word
        self._key = None

    @property
    def key(self):
        if self._key is None:
            self._key = matrix_key(self.matrix)
        return self._key

    def __mul__(self, other):
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return GroupElement(self.gram, _mat_mul(self.matrix, other.matrix), word)

    def inverse(self):
        if self.word is not None:
            # generators are involutions, so the reversed word inverts
            inv = GroupElement(self.gram, None, tuple(reversed(self.word)))
            inv.matrix = _mat_mul_word(self.gram, inv.word)
            return inv
        raise ValueError("cannot invert an element without a word")

    def is_identity(self):
        field = self.gram.field
        n = self.gram.cm.rank
        for i in range(n):
            for j in range(n):
                e = self.matrix[i][j]
                if i == j:
                    if e != field.one:
                        return False
                elif not e.is_zero():
                    return False
        return True

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "GroupElement(word=%r)" % (self.word,)


def _mat_mul_word(gram, word):
    gens = [tits_generator(gram, s).matrix for s in range(gram.cm.rank)]
    M = _identity(gram.field, gram.cm.rank)
    for s in word:
        M = _mat_mul(M, gens[s])
    return M


def tits_generator(gram: GramMatrix, s: int) -> GroupElement:
    """sigma_s(x) = x - 2 B(e_s, x) e_s as an exact matrix."""
    field = gram.field
    n = gram.cm.rank
    rows = []
    for i in range(n):
        if i != s:
            rows.append(tuple(field.one if j == i else field.zero for j in range(n)))
        else:
            row = []
            for j in range(n):
                two_b = gram.entries[s][j] + gram.entries[s][j]
                delta = field.one if j == s else field.zero
                row.append(delta - two_b)
            rows.append(tuple(row))
    return GroupElement(gram, tuple(rows), (s,))


class TitsGroup:
    """Bundle of a Coxeter matrix with its exact representation."""

    def __init__(self, cm: CoxeterMatrix):
        self.cm = cm
        self.gram = gram_matrix(cm)
        self.field = self.gram.field
        self.generators = tuple(tits_generator(self.gram, s) for s in range(cm.rank))
        self.identity = GroupElement(self.gram, _identity(self.field, cm.rank), ())

    def element(self, word) -> GroupElement:
        return evaluate_word(self.generators, word, identity=self.identity)

    def simple_root(self, i):
        return tuple(self.field.one if j == i else self.field.zero
                     for j in range(self.cm.rank))

    def root_is_negative(self, v):
        for x in v:
            s = x.sign()
            if s:
                return s < 0
        raise ValueError("zero vector is not a root")

    def right_descents(self, g: GroupElement):
        """Generators s with l(gs) < l(g): column s of the matrix is a negative root."""
        out = []
        n = self.cm.rank
        for s in range(n):
            col = tuple(g.matrix[i][s] for i in range(n))
            if self.root_is_negative(col):
                out.append(s)
        return out

    def reduced_word(self, g: GroupElement):
        """A reduced word for g (deterministic: smallest descent first)."""
        out = []
        cur = g
        while True:
            ds = self.right_descents(cur)
            if not ds:
                break
            s = ds[0]
            cur = cur * self.generators[s]
            out.append(s)
        assert cur.is_identity(), "descent recursion must end at the identity"
        return tuple(reversed(out))

    def length(self, g: GroupElement) -> int:
        return len(self.reduced_word(g))


def evaluate_word(gens, word, identity=None) -> GroupElement:
    """Exact product of generator matrices; the empty word is the identity."""
    if identity is None:
        g0 = gens[0]
        identity = GroupElement(g0.gram, _identity(g0.gram.field, g0.gram.cm.rank), ())
    out = identity
    for s in word:
        if not 0 <= s < len(gens):
            raise DomainError("generator index %d out of range" % s)
        out = out * gens[s]
    return out


def canonical_key(g: GroupElement) -> bytes:
    return g.key


@dataclass(frozen=True)
class Reflection:
    """A conjugate w s w^{-1}, realized by its positive unit root."""

    element: GroupElement
    root: tuple
    depth: int
    word: tuple  # a (not necessarily reduced) word w + (s,) + reversed(w)


def _root_key(v):
    return repr(tuple((x.num, x.den) for x in v)).encode()


def _normalize_root_sign(v):
    for x in v:
        s = x.sign()
        if s > 0:
            return v
        if s < 0:
            return tuple(-y for y in v)
    raise ValueError("zero vector is not a root")


def reflection_from_root(gram: GramMatrix, root):
    """Matrix of x -> x - 2 B(root, x) root; requires B(root, root) = 1."""
    field = gram.field
    n = gram.cm.rank
    b_root = _mat_vec(gram.entries, root)  # B(root, e_j) as a covector
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            delta = field.one if i == j else field.zero
            row.append(delta - (b_root[j] + b_root[j]) * root[i])
        rows.append(tuple(row))
    return tuple(rows)


def bilinear_value(gram: GramMatrix, u, v):
    w = _mat_vec(gram.entries, v)
    acc = u[0] * w[0]
    for i in range(1, len(u)):
        acc = acc + u[i] * w[i]
    return acc


def enumerate_reflections(gram: GramMatrix, depth_cap: int, threads: int = 1):
    """All reflections whose positive root has breadth-first depth <= depth_cap.

    The orbit of the simple roots is expanded level by level; roots are
    sign-normalized (first nonzero coordinate positive) and deduplicated by
    key, so the result is independent of scheduling.
    """
    group = TitsGroup(gram.cm)
    n = gram.cm.rank
    seen = {}
    frontier = []
    for i in range(n):
        v = group.simple_root(i)
        seen[_root_key(v)] = (v, 0, (i,))
        frontier.append((v, (i,)))
    gen_mats = [g.matrix for g in group.generators]
    for depth in range(1, depth_cap + 1):
        tasks = [(v, w, s) for (v, w) in frontier for s in range(n)]
        results = parallel_map(
            lambda t: (_normalize_root_sign(_mat_vec(gen_mats[t[2]], t[0])), t[1], t[2]),
            tasks, threads)
        new_frontier = []
        for (u, w, s) in results:
            k = _root_key(u)
            if k not in seen:
                word = (s,) + w
                seen[k] = (u, depth, word)
                new_frontier.append((u, word))
        frontier = new_frontier
        if not frontier:
            break
    out = []
    for k in sorted(seen):
        v, depth, word = seen[k]
        core = word  # word = u-word ending in the base simple reflection
        u_part, base = core[:-1], core[-1]
        refl_word = u_part + (base,) + tuple(reversed(u_part))
        elt = GroupElement(gram, reflection_from_root(gram, v), refl_word)
        out.append(Reflection(elt, v, depth, refl_word))
    out.sort(key=lambda r: (r.depth, _root_key(r.root)))
    return out


def gram_signature(gram: GramMatrix):
    """Exact inertia (positives, negatives, zeros) of the bilinear form."""
    return linalg.inertia(gram.field, gram.entries)


def fixed_space_codim(g: GroupElement) -> int:
    """rank(M - I): a product of k reflections fixes codimension <= k."""
    field = g.gram.field
    n = g.gram.cm.rank
    diff = tuple(
        tuple(g.matrix[i][j] - (field.one if i == j else field.zero)
              for j in range(n))
        for i in range(n)
    )
    return linalg.matrix_rank(field, diff)
