"""The bigraded Fock space over a surface algebra.

A basis monomial is a product of creation parts q_size(color) applied to the
vacuum, stored as a tuple of (size, color-index) pairs in canonical order:
sizes weakly decreasing, colors weakly increasing among equal sizes.  Parts
with odd-degree colors anticommute, so reordering carries a Koszul sign and a
repeated odd (size, color) pair kills the monomial.

Weight of a monomial is the sum of part sizes (which Hilbert scheme it lives
on); cohomological degree is sum(2*(size-1) + deg color).
"""

import itertools

from ._rat import Rat, RAT_ONE
from .errors import InvalidPart, TruncationExceeded

# Global cap on monomial weight: computations that climb past this raise
# TruncationExceeded instead of silently dropping terms.
_MAX_WEIGHT = 64


def max_weight():
    return _MAX_WEIGHT


def set_max_weight(n):
    """Set the global weight cap; returns the previous value."""
    global _MAX_WEIGHT
    prev = _MAX_WEIGHT
    _MAX_WEIGHT = int(n)
    return prev


def weight(mono):
    return sum(p[0] for p in mono)


def degree(mono, algebra):
    degs = algebra.degrees
    return sum(2 * (s - 1) + degs[c] for s, c in mono)


def sort_key(mono):
    """Graded-lex key: weight, then partition (large parts first), then colors."""
    return (weight(mono), tuple((-s, c) for s, c in mono))


def canonical_from_parts(parts, algebra):
    """Sort raw (size, color) parts into canonical order.

    Returns (monomial, sign) or None when two identical odd parts collide.
    The sign is the parity of crossings among odd-color parts.
    """
    parities = algebra.parities
    odd_positions = [k for k, (s, c) in enumerate(parts) if parities[c]]
    odd_parts = [parts[k] for k in odd_positions]
    if len(set(odd_parts)) != len(odd_parts):
        return None
    order = sorted(range(len(parts)), key=lambda k: (-parts[k][0], parts[k][1], k))
    # crossings among odd parts = inversions of their relative order
    odd_rank = {k: r for r, k in enumerate(odd_positions)}
    seq = [odd_rank[k] for k in order if k in odd_rank]
    inversions = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inversions += 1
    mono = tuple(parts[k] for k in order)
    return mono, (-1 if inversions & 1 else 1)


def prepend_part(mono, size, color, algebra):
    """Insert one creation part into a canonical monomial.

    Returns (monomial, sign) or None when an odd part collides with itself.
    """
    if size < 1:
        raise InvalidPart(f"part size {size} < 1")
    if weight(mono) + size > _MAX_WEIGHT:
        raise TruncationExceeded(
            f"monomial weight would exceed the cap {_MAX_WEIGHT}")
    parities = algebra.parities
    odd = parities[color]
    key = (-size, color)
    pos = 0
    crossings = 0
    for s, c in mono:
        if (-s, c) < key:
            if odd and parities[c]:
                crossings += 1
            pos += 1
        else:
            break
    if odd and pos < len(mono) and mono[pos] == (size, color):
        return None
    new = mono[:pos] + ((size, color),) + mono[pos:]
    return new, (-1 if crossings & 1 else 1)


def create_into(acc, size, color, vec_terms, coeff, algebra):
    """acc += coeff * q_size(e_color) applied to {mono: c} terms."""
    for mono, c in vec_terms.items():
        hit = prepend_part(mono, size, color, algebra)
        if hit is None:
            continue
        new, sign = hit
        val = acc.get(new, 0) + (coeff * c if sign > 0 else -coeff * c)
        if val:
            acc[new] = val
        else:
            acc.pop(new, None)


def contract_into(acc, size, color, vec_terms, coeff, algebra):
    """acc += coeff * q_{-size}(e_color) applied to {mono: c} terms.

    The annihilation operator walks right with Koszul signs, and each part of
    matching size contributes -size * integral(e_color * part color) times the
    monomial with that part removed.
    """
    parities = algebra.parities
    pairing = algebra.pairing[color]
    odd = parities[color]
    for mono, c in vec_terms.items():
        passed_odd = 0
        for j, (s, cj) in enumerate(mono):
            if s == size:
                pval = pairing[cj]
                if pval:
                    scal = -size * pval * coeff * c
                    if odd and passed_odd & 1:
                        scal = -scal
                    new = mono[:j] + mono[j + 1:]
                    val = acc.get(new, 0) + scal
                    if val:
                        acc[new] = val
                    else:
                        acc.pop(new, None)
            if parities[cj]:
                passed_odd += 1


class FockVector:
    """Exact rational linear combination of canonical Fock monomials."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms=None):
        self.algebra = algebra
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def vacuum(cls, algebra):
        return cls(algebra, {(): RAT_ONE})

    @classmethod
    def zero(cls, algebra):
        return cls(algebra, {})

    def is_zero(self):
        return not self.terms

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), Rat(0))

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return FockVector(self.algebra, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) - c
        return FockVector(self.algebra, out)

    def __neg__(self):
        return FockVector(self.algebra, {m: -c for m, c in self.terms.items()})

    def scale(self, scalar):
        s = Rat(scalar)
        if not s:
            return FockVector.zero(self.algebra)
        return FockVector(self.algebra, {m: c * s for m, c in self.terms.items()})

    def __mul__(self, scalar):
        return self.scale(scalar)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, FockVector)
                and self.algebra is other.algebra
                and self.terms == other.terms)

    def __repr__(self):
        return render_vector(self)

    def _check(self, other):
        if self.algebra is not other.algebra:
            raise ValueError("vectors over different algebras")


def canonicalize(algebra, raw):
    """Build the vector q_{s1}(a1) q_{s2}(a2) ... |0> from raw factor data.

    `raw` is a sequence of (size, AlgebraElement) pairs; the product is
    expanded multilinearly over the basis and each monomial is reordered with
    the Koszul sign convention.
    """
    for size, _ in raw:
        if size < 1:
            raise InvalidPart(f"part size {size} < 1")
    acc = {(): RAT_ONE}
    for size, elem in reversed(list(raw)):
        nxt = {}
        for color, coeff in elem.coeffs.items():
            create_into(nxt, size, color, acc, coeff, algebra)
        acc = nxt
        if not acc:
            break
    return FockVector(algebra, acc)


def bidegree(v):
    """Common (weight, degree) of the support, or None when mixed or zero."""
    seen = {(weight(m), degree(m, v.algebra)) for m in v.terms}
    if len(seen) == 1:
        return seen.pop()
    return None


def fh_support_bound(v, k):
    """True iff every monomial in the support has sum(size - 1) <= k."""
    return all(weight(m) - len(m) <= k for m in v.terms)


def monomial_basis(n, algebra, degree_filter=None):
    """All canonical monomials of weight n, in graded-lex order.

    Odd colors appear at most once per part size.  `degree_filter` restricts
    to a single cohomological degree.
    """
    if n < 0:
        raise ValueError("weight must be nonnegative")
    out = []
    parities = algebra.parities
    dim = algebra.dim

    def color_multisets(count):
        return itertools.combinations_with_replacement(range(dim), count)

    for partition in partitions_of(n):
        groups = []
        for size, mult in _run_lengths(partition):
            choices = [combo for combo in color_multisets(mult)
                       if _no_odd_repeat(combo, parities)]
            groups.append((size, choices))
        for assignment in itertools.product(*(ch for _, ch in groups)):
            mono = []
            for (size, _), combo in zip(groups, assignment):
                mono.extend((size, c) for c in combo)
            mono = tuple(mono)
            if degree_filter is None or degree(mono, algebra) == degree_filter:
                out.append(mono)
    out.sort(key=sort_key)
    return out


def _no_odd_repeat(combo, parities):
    for a, b in zip(combo, combo[1:]):
        if a == b and parities[a]:
            return False
    return True


def _run_lengths(partition):
    for size, grp in itertools.groupby(partition):
        yield size, sum(1 for _ in grp)


def partitions_of(n):
    """Partitions of n as weakly decreasing tuples, in descending lex order."""
    if n == 0:
        return [()]
    out = []

    def rec(remaining, cap, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(cap, remaining), 0, -1):
            rec(remaining - part, part, prefix + [part])

    rec(n, n, [])
    return out


def inner_product(u, v):
    """The bilinear form, computed by turning creations into annihilations.

    The leading factor q_n(c) of the left argument moves across as
    (-1)^(n + m * deg rest) q_{-n}(c), with m the operator degree of the
    factor.  Nonzero only when weights agree and degrees are complementary
    (deg u + deg v = 4 * weight).
    """
    if u.algebra is not v.algebra:
        raise ValueError("vectors over different algebras")
    alg = u.algebra
    total = Rat(0)
    for mono, cu in u.terms.items():
        total += cu * _pair_mono(mono, v.terms, alg)
    return total


def _pair_mono(mono, right_terms, alg):
    if not right_terms:
        return Rat(0)
    if not mono:
        return right_terms.get((), Rat(0))
    size, color = mono[0]
    rest = mono[1:]
    m_deg = 2 * (size - 1) + alg.degrees[color]
    sign_exp = size + m_deg * degree(rest, alg)
    acc = {}
    contract_into(acc, size, color, right_terms, RAT_ONE, alg)
    val = _pair_mono(rest, acc, alg)
    return -val if sign_exp & 1 else val


# -- rendering ----------------------------------------------------------------


def render_monomial(mono, algebra):
    if not mono:
        return "|0>"
    qs = " ".join(f"q_{s}({algebra.basis[c].id})" for s, c in mono)
    return f"{qs} |0>"


def render_vector(v):
    """Deterministic textual form: `c * q_i(id) ... |0>` terms joined by +/-."""
    if not v.terms:
        return "0"
    bits = []
    for mono in sorted(v.terms, key=sort_key):
        c = v.terms[mono]
        body = f"{abs(c)} * {render_monomial(mono, v.algebra)}"
        if not bits:
            bits.append(body if c > 0 else f"-{body}")
        else:
            bits.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(bits)
