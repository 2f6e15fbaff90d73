"""Counting quasimorphisms on free products of order-2 generators.

Words live in W_k = Z/2 * ... * Z/2: strings over the first k letters with no
two equal adjacent letters; each letter is its own inverse, so inversion is
string reversal.  H_w(g) counts occurrences of the pattern w minus
occurrences of its reversal.

The defect sup |H(gh) - H(g) - H(h)| is computed exactly: writing g = g'c^-1,
h = ch' with maximal cancellation c, the deviation equals
cross(g',h') - cross(g',c^-1) - cross(c,h') where cross counts pattern
occurrences straddling a junction.  Each cross term sees at most |w|-1
letters on either side, so the supremum over all pairs of length <= B equals
a finite maximum over short triples (a, c, b); in particular the window
B = 3|w| already attains the global defect.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .coxeter import INF, CoxeterMatrix
from .errors import DomainError, InputError, NotCertifiedError, ResourceCapError
from .parallel import parallel_map

_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class FreeCoxeterWord:
    """Reduced word in Z/2 * ... * Z/2 (k factors)."""

    letters: str
    k: int

    def __post_init__(self):
        for x, y in zip(self.letters, self.letters[1:]):
            assert x != y, "word is not reduced"

    def __len__(self):
        return len(self.letters)

    def inverse(self):
        return FreeCoxeterWord(self.letters[::-1], self.k)

    def __str__(self):
        return self.letters or "1"


def _to_string(letters, k):
    if isinstance(letters, FreeCoxeterWord):
        return letters.letters
    if isinstance(letters, str):
        s = letters
    else:
        s = "".join(_ALPHABET[i - 1] if isinstance(i, int) else str(i) for i in letters)
    for ch in s:
        idx = _ALPHABET.find(ch)
        if idx < 0 or idx >= k:
            raise InputError("letter %r outside alphabet of size %d" % (ch, k))
    return s


def reduce_word(letters, k) -> FreeCoxeterWord:
    """Cancel equal adjacent letters until reduced (confluent)."""
    s = _to_string(letters, k)
    out = []
    for ch in s:
        if out and out[-1] == ch:
            out.pop()
        else:
            out.append(ch)
    return FreeCoxeterWord("".join(out), k)


def _reduce_str(s):
    out = []
    for ch in s:
        if out and out[-1] == ch:
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def _count(pat, s):
    n = 0
    start = 0
    while True:
        i = s.find(pat, start)
        if i < 0:
            return n
        n += 1
        start = i + 1


def counting_qm(w: FreeCoxeterWord, g) -> int:
    """H_w(g): occurrences of w minus occurrences of w^-1 in reduced g."""
    if len(w) == 0:
        raise DomainError("counting quasimorphism needs a nonempty pattern")
    s = g.letters if isinstance(g, FreeCoxeterWord) else _reduce_str(_to_string(g, w.k))
    return _count(w.letters, s) - _count(w.letters[::-1], s)


def _cross(pat, left, right):
    """Signed pattern occurrences straddling the junction of left + right."""
    m = len(pat)
    joined = left + right
    total = 0
    for p in (pat, pat[::-1]):
        sign = 1 if p is pat else -1
        lo = max(0, len(left) - m + 1)
        hi = min(len(left), len(joined) - m + 1)
        for start in range(lo, hi):
            if joined[start:start + m] == p:
                total += sign
    return total


def _reduced_words_upto(k, maxlen):
    out = [""]
    frontier = [""]
    for _ in range(maxlen):
        nxt = []
        for wd in frontier:
            for ch in _ALPHABET[:k]:
                if not wd or wd[-1] != ch:
                    nxt.append(wd + ch)
        out.extend(nxt)
        frontier = nxt
    return out


@dataclass
class DefectResult:
    pattern: FreeCoxeterWord
    window: int
    value: int
    pair: tuple          # (g, h) strings attaining the value
    stabilized: bool
    certified: bool      # False when obtained by sampling


def _defect_over_window(w: FreeCoxeterWord, B: int, threads=1):
    """Exact max of |H(gh)-H(g)-H(h)| over reduced g,h of length <= B."""
    pat = w.letters
    m = len(pat)
    k = w.k
    side = _reduced_words_upto(k, min(B, m - 1))
    # middles longer than 2m-1 only repeat boundary windows (k >= 3 lets a
    # separator letter realize any window combination), so they add nothing
    mid_cap = min(B, 2 * m - 1) if k >= 3 else B
    mids = _reduced_words_upto(k, mid_cap)
    best = 0
    best_pair = ("", "")

    def eval_mid(c):
        local_best = 0
        local_pair = ("", "")
        rc = c[::-1]
        for a in side:
            if len(a) + len(c) > B:
                continue
            if a and rc and a[-1] == rc[0]:
                continue
            cross_ac = _cross(pat, a, rc)
            for b in side:
                if len(c) + len(b) > B:
                    continue
                if c and b and c[-1] == b[0]:
                    continue
                if a and b and a[-1] == b[0]:
                    continue
                d = abs(_cross(pat, a, b) - cross_ac - _cross(pat, c, b))
                if d > local_best:
                    local_best = d
                    local_pair = (a + rc, c + b)
        return local_best, local_pair

    results = parallel_map(eval_mid, mids, threads)
    for val, pair in results:
        if val > best:
            best = val
            best_pair = pair
    return best, best_pair


def defect_window(w: FreeCoxeterWord, B: int, cap=5_000_000, threads=1,
                  sample=False, sample_pairs=200_000, seed=0) -> DefectResult:
    """Exact defect of H_w over the window of reduced words of length <= B.

    The result is flagged stabilized when the value is unchanged from window
    B-1 and B >= 3|w|.  The exhaustive enumeration is junction-based and
    exact; `sample=True` switches to random pairs and is never certified.
    """
    if len(w) == 0:
        raise DomainError("empty pattern")
    if B < len(w):
        raise DomainError("window must be at least the pattern length")
    if sample:
        rng = random.Random(seed)
        best = 0
        best_pair = ("", "")
        for _ in range(sample_pairs):
            g = random_reduced_word(w.k, rng.randrange(B + 1), rng)
            h = random_reduced_word(w.k, rng.randrange(B + 1), rng)
            d = abs(counting_qm(w, reduce_word(g + h, w.k)) -
                    counting_qm(w, reduce_word(g, w.k)) -
                    counting_qm(w, reduce_word(h, w.k)))
            if d > best:
                best, best_pair = d, (g, h)
        return DefectResult(w, B, best, best_pair, stabilized=False, certified=False)
    m = len(w)
    side_count = sum((w.k - 1) ** max(0, i - 1) * (w.k if i else 1)
                     for i in range(min(B, m - 1) + 1))
    mid_count = sum((w.k - 1) ** max(0, i - 1) * (w.k if i else 1)
                    for i in range(min(B, 2 * m - 1 if w.k >= 3 else B) + 1))
    if side_count * side_count * mid_count > cap:
        raise ResourceCapError(
            "window enumeration would exceed %d combinations; "
            "use a smaller window or sample=True (non-certified)" % cap)
    value, pair = _defect_over_window(w, B, threads)
    prev, _ = _defect_over_window(w, B - 1, threads)
    return DefectResult(w, B, value, pair,
                        stabilized=(value == prev and B >= 3 * m),
                        certified=True)


def random_reduced_word(k, length, rng):
    out = []
    for _ in range(length):
        choices = [c for c in _ALPHABET[:k] if not out or c != out[-1]]
        out.append(rng.choice(choices))
    return "".join(out)


def homogenize(w: FreeCoxeterWord, g, n_cap=64) -> Fraction:
    """phi_w(g): the exact slope of n -> H_w(g^n).

    Powers of a reduced word are eventually periodic (g^n = s c^n s^-1 with c
    cyclically reduced), so the first differences become constant; the slope
    is accepted once |w| + 2 consecutive differences agree.
    """
    gs = g.letters if isinstance(g, FreeCoxeterWord) else _reduce_str(_to_string(g, w.k))
    if not gs:
        return Fraction(0)
    need = len(w) + 2
    values = [0]
    power = ""
    run = 0
    last_diff = None
    for n in range(1, n_cap + 1):
        power = _reduce_str(power + gs)
        values.append(_count(w.letters, power) - _count(w.letters[::-1], power))
        diff = values[-1] - values[-2]
        if diff == last_diff:
            run += 1
        else:
            run = 1
            last_diff = diff
        if run >= need:
            return Fraction(last_diff)
    raise DomainError("power differences did not stabilize within %d steps; "
                      "raise n_cap" % n_cap)


@dataclass
class QuasimorphismCert:
    """A counting quasimorphism with its exact defect and derived constant.

    For any product of n conjugates of generators, homogeneity and
    conjugation invariance give |phi(g)| <= n (M + D_phi); hence every g has
    ||g|| >= |phi(g)| / (M + D_phi) in the conjugation-closed word metric,
    which for the standard generating set is reflection length.
    """

    k: int
    pattern: FreeCoxeterWord
    raw_defect: int
    window: int
    homogeneous_defect: Fraction  # bound: 2 * raw defect
    generator_max: Fraction
    constant: Fraction
    stabilized: bool
    defect_pair: tuple

    def pattern_text(self):
        return self.pattern.letters

    def phi(self, g) -> Fraction:
        return homogenize(self.pattern, g)

    def bound_for(self, g, power=1) -> int:
        """Certified lower bound for ||g^power|| in the bi-invariant metric."""
        val = abs(self.phi(g)) * power * self.constant
        return ceil(val) if val > 0 else 0

    def lower_bound_for_word(self, cm: CoxeterMatrix, word):
        """Adapter for the reflection-length engine (free Coxeter groups only)."""
        if cm.rank != self.k:
            return None
        for i in range(cm.rank):
            for j in range(i + 1, cm.rank):
                if cm.entries[i][j] != INF:
                    return None
        letters = "".join(_ALPHABET[s] for s in word)
        g = reduce_word(letters, self.k)
        return self.bound_for(g)


def build_certificate(k: int, pattern, window=None, cap=5_000_000,
                      threads=1) -> QuasimorphismCert:
    """Compute defect and constant for a counting quasimorphism on W_k.

    Requires k >= 3 (W_2 is affine and carries no useful homogeneous
    quasimorphism) and a cyclically reduced pattern, so that pattern powers
    keep growing and the homogenization has nonzero slope on the pattern.
    """
    if k < 3:
        raise DomainError("certificates are built for free Coxeter groups W_k, k >= 3")
    w = reduce_word(pattern, k)
    if len(w) == 0:
        raise DomainError("empty pattern")
    if _to_string(pattern, k) != w.letters:
        raise DomainError("pattern must be reduced")
    if len(w) >= 2 and w.letters[0] == w.letters[-1]:
        raise DomainError("pattern must be cyclically reduced "
                          "(first and last letters differ)")
    window = 3 * len(w) if window is None else window
    defect = defect_window(w, window, cap=cap, threads=threads)
    if not defect.stabilized:
        raise NotCertifiedError(
            "defect value not stabilized at window %d; refusing to certify" % window)
    d_phi = Fraction(2 * defect.value)
    gen_max = max((abs(homogenize(w, ch)) for ch in _ALPHABET[:k]), default=Fraction(0))
    denom = gen_max + d_phi
    if denom == 0:
        raise NotCertifiedError("quasimorphism is a homomorphism with zero "
                                "generator values; no positive constant exists")
    return QuasimorphismCert(k, w, defect.value, window, d_phi, gen_max,
                             Fraction(1) / denom, defect.stabilized, defect.pair)


def certify_lower_bound(cert: QuasimorphismCert, g, K: int):
    """(C, [bound for g^1 .. g^K]) with bound_k = ceil(k |phi(g)| C)."""
    if not cert.stabilized:
        raise NotCertifiedError("certificate defect is not stabilized")
    g = g if isinstance(g, FreeCoxeterWord) else reduce_word(g, cert.k)
    phi = abs(cert.phi(g))
    bounds = []
    for k in range(1, K + 1):
        val = phi * k * cert.constant
        bounds.append(ceil(val) if val > 0 else 0)
    return cert.constant, bounds


def defect_stress_sample(w: FreeCoxeterWord, claimed_defect: int, pairs: int,
                         max_len: int, seed: int = 0):
    """Count violations of |H(gh)-H(g)-H(h)| <= claimed defect on random pairs."""
    rng = random.Random(seed)
    violations = 0
    worst = 0
    for _ in range(pairs):
        g = random_reduced_word(w.k, rng.randrange(max_len + 1), rng)
        h = random_reduced_word(w.k, rng.randrange(max_len + 1), rng)
        d = abs(counting_qm(w, _reduce_str(g + h)) - counting_qm(w, g) -
                counting_qm(w, h))
        worst = max(worst, d)
        if d > claimed_defect:
            violations += 1
    return violations, worst
