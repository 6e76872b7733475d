"""Graded Frobenius algebras standing in for the cohomology ring of a surface.

An algebra is described by a finite graded basis (degrees 0..4), sparse
structure constants, a linear integral supported in the top degree, and a
canonical class.  From these we derive the Poincare pairing, the dual basis,
the Kunneth expansion of the diagonal pushforward, and the Euler class.

Everything is exact rational arithmetic.  Instances are immutable after
loading (the internal operator caches only memoize pure computations) and can
be shared freely.
"""

import json
from dataclasses import dataclass
from importlib import resources

from . import _linalg
from ._rat import Rat, parse_rat
from .errors import (
    AxiomViolation,
    DegreeError,
    ParseError,
    SingularPairing,
    UnknownBasisId,
)

PRESETS = ("p2", "p1xp1", "torus_like", "point")


@dataclass(frozen=True)
class BasisClass:
    """A basis element of the algebra: symbolic id plus cohomological degree."""

    id: str
    degree: int


class AlgebraElement:
    """A rational linear combination of basis classes.

    Stored sparsely as {basis index: coefficient} with no zero entries.
    Supports +, -, scalar *, and the algebra product via *.
    """

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        self.algebra = algebra
        self.coeffs = {i: c for i, c in coeffs.items() if c}

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        """Common degree of the support, or None when mixed or zero."""
        degs = {self.algebra.degrees[i] for i in self.coeffs}
        if len(degs) == 1:
            return degs.pop()
        return None

    def homogeneous_parts(self):
        """Split into (degree, element) pieces, ascending degree."""
        by_deg = {}
        for i, c in self.coeffs.items():
            by_deg.setdefault(self.algebra.degrees[i], {})[i] = c
        return [(d, AlgebraElement(self.algebra, by_deg[d])) for d in sorted(by_deg)]

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, 0) + c
        return AlgebraElement(self.algebra, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, 0) - c
        return AlgebraElement(self.algebra, out)

    def __neg__(self):
        return AlgebraElement(self.algebra, {i: -c for i, c in self.coeffs.items()})

    def scale(self, scalar):
        s = Rat(scalar)
        return AlgebraElement(self.algebra, {i: c * s for i, c in self.coeffs.items()})

    __rmul__ = scale

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return mul(self, other)
        return self.scale(other)

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.algebra is other.algebra
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for i in sorted(self.coeffs):
            c = self.coeffs[i]
            bits.append(f"{c}*{self.algebra.basis[i].id}")
        return " + ".join(bits).replace("+ -", "- ")

    def _check(self, other):
        if self.algebra is not other.algebra:
            raise ValueError("elements over different algebras")


class SurfaceAlgebra:
    """The loaded algebra: basis, products, integral, pairing, and caches."""

    def __init__(self, name, basis, unit_index, product_table, integral_vec,
                 canonical_coeffs):
        self.name = name
        self.basis = basis
        self.degrees = [b.degree for b in basis]
        self.parities = [b.degree & 1 for b in basis]
        self.unit_index = unit_index
        self.index_of = {b.id: i for i, b in enumerate(basis)}
        # product[i][j] is a sparse {k: coeff} dict, both orders populated
        self.product = product_table
        self.integral_vec = integral_vec
        self.dim = len(basis)
        self.top_degree = max(self.degrees)
        self.canonical_class = AlgebraElement(self, canonical_coeffs)
        # pairing[i][j] = integral(e_i e_j)
        self.pairing = [
            [self._integrate_product(i, j) for j in range(self.dim)]
            for i in range(self.dim)
        ]
        inverse = _linalg.invert([[self.pairing[i][j] for j in range(self.dim)]
                                  for i in range(self.dim)])
        if inverse is None:
            raise SingularPairing(f"{name}: pairing matrix is singular")
        # duals[j] satisfies integral(e_i * duals[j]) = delta_ij
        self._dual_coeffs = [[inverse[k][j] for k in range(self.dim)]
                             for j in range(self.dim)]
        self._diagonal_cache = {}
        self._op_caches = {}
        self.euler = self._compute_euler()

    # -- basic queries ----------------------------------------------------

    def unit(self):
        return AlgebraElement(self, {self.unit_index: Rat(1)})

    def zero(self):
        return AlgebraElement(self, {})

    def basis_element(self, key):
        """Basis element by index or id."""
        if isinstance(key, str):
            if key not in self.index_of:
                raise UnknownBasisId(f"{self.name}: no basis class {key!r}")
            key = self.index_of[key]
        return AlgebraElement(self, {key: Rat(1)})

    def basis_elements(self):
        return [self.basis_element(i) for i in range(self.dim)]

    def even_basis_elements(self):
        return [self.basis_element(i) for i in range(self.dim)
                if not self.parities[i]]

    def element(self, coeffs_by_id):
        out = {}
        for key, c in coeffs_by_id.items():
            if key not in self.index_of:
                raise UnknownBasisId(f"{self.name}: no basis class {key!r}")
            out[self.index_of[key]] = Rat(c)
        return AlgebraElement(self, out)

    def mul_basis(self, i, j):
        """Sparse structure-constant row for e_i * e_j."""
        return self.product[i].get(j, {})

    def integral_basis(self, i):
        return self.integral_vec[i]

    def _integrate_product(self, i, j):
        return sum((c * self.integral_vec[k]
                    for k, c in self.mul_basis(i, j).items()), Rat(0))

    def clear_caches(self):
        self._op_caches.clear()

    # -- derived structure -------------------------------------------------

    def dual_basis(self):
        """Elements e^j with integral(e_i * e^j) = delta_ij exactly."""
        return [AlgebraElement(self, {k: c for k, c in enumerate(row) if c})
                for row in self._dual_coeffs]

    def _compute_euler(self):
        acc = {}
        duals = self.dual_basis()
        for i in range(self.dim):
            sign = -1 if self.parities[i] else 1
            for j, cj in duals[i].coeffs.items():
                for k, c in self.mul_basis(i, j).items():
                    acc[k] = acc.get(k, 0) + sign * cj * c
        return AlgebraElement(self, acc)

    def kunneth_triples(self, i):
        """Diagonal pushforward of basis class i as ((u, v, coeff), ...).

        The coefficients t_uv of tau(e_i) = sum t_uv e_u (x) e_v are pinned by
        the adjunction identity
            int((tau a) * (b (x) c)) = int(a b c)   for all basis b, c,
        with the Koszul product (u(x)v)(w(x)z) = (-1)^{deg v deg w} uw (x) vz
        on the square.  The system is solved per degree block.
        """
        if i in self._diagonal_cache:
            return self._diagonal_cache[i]
        s = self.degrees[i]
        top = self.top_degree
        unknowns = [(u, v) for u in range(self.dim) for v in range(self.dim)
                    if self.degrees[u] + self.degrees[v] == s + top]
        equations = [(b, c) for b in range(self.dim) for c in range(self.dim)
                     if self.degrees[b] + self.degrees[c] == top - s]
        if len(unknowns) != len(equations):
            raise SingularPairing(
                f"{self.name}: Kunneth block for degree {s} is not square")
        matrix = []
        rhs = []
        for (b, c) in equations:
            db = self.degrees[b]
            row = []
            for (u, v) in unknowns:
                sign = -1 if (self.degrees[v] & 1) and (db & 1) else 1
                row.append(sign * self.pairing[u][b] * self.pairing[v][c])
            matrix.append(row)
            # int(e_i e_b e_c)
            val = Rat(0)
            for k, ck in self.mul_basis(i, b).items():
                val += ck * self._integrate_product(k, c)
            rhs.append(val)
        sol = _linalg.solve(matrix, [rhs])
        if sol is None:
            raise SingularPairing(f"{self.name}: Kunneth system is singular")
        triples = tuple((u, v, t) for (u, v), t in zip(unknowns, sol[0]) if t)
        self._diagonal_cache[i] = triples
        return triples


# -- module-level operations (the public spellings) -------------------------


def mul(a, b):
    """Product in the algebra, extended bilinearly from structure constants."""
    if a.algebra is not b.algebra:
        raise ValueError("elements over different algebras")
    alg = a.algebra
    acc = {}
    for i, ca in a.coeffs.items():
        row = alg.product[i]
        for j, cb in b.coeffs.items():
            cell = row.get(j)
            if not cell:
                continue
            f = ca * cb
            for k, c in cell.items():
                acc[k] = acc.get(k, 0) + f * c
    return AlgebraElement(alg, acc)


def integral(a):
    """The integral functional; nonzero only through top-degree components."""
    return sum((c * a.algebra.integral_vec[i] for i, c in a.coeffs.items()),
               Rat(0))


def dual_basis(algebra):
    return algebra.dual_basis()


def euler_class(algebra):
    """Alternating sum of e_i * e^i; integrates to the Euler characteristic."""
    return algebra.euler


def diagonal_pushforward(a):
    """Kunneth pairs (x_j, y_j) with tau(a) = sum_j x_j (x) y_j."""
    alg = a.algebra
    pairs = []
    for i, c in a.coeffs.items():
        for u, v, t in alg.kunneth_triples(i):
            pairs.append((alg.basis_element(u).scale(c * t),
                          alg.basis_element(v)))
    return pairs


# -- parsing and validation --------------------------------------------------


def _parse_combination(algebra_ids, entries, what):
    out = {}
    if entries is None:
        return out
    if not isinstance(entries, list):
        raise ParseError(f"{what}: expected an array of {{basis, coeff}}")
    for item in entries:
        if not isinstance(item, dict) or "basis" not in item or "coeff" not in item:
            raise ParseError(f"{what}: entries need 'basis' and 'coeff'")
        bid = item["basis"]
        if bid not in algebra_ids:
            raise ParseError(f"{what}: unknown basis id {bid!r}")
        idx = algebra_ids[bid]
        out[idx] = out.get(idx, 0) + parse_rat(item["coeff"])
    return {i: c for i, c in out.items() if c}


def load_algebra(source):
    """Load and validate an algebra description.

    `source` may be a path to a JSON document or an already-decoded dict.
    Raises ParseError / DegreeError / AxiomViolation / SingularPairing.
    """
    if isinstance(source, dict):
        doc = source
    else:
        try:
            with open(source, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise ParseError(f"cannot read {source}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ParseError(f"{source}: invalid JSON: {exc}") from exc
    return _build(doc)


def _build(doc):
    for field in ("name", "basis", "unit", "integral"):
        if field not in doc:
            raise ParseError(f"missing field {field!r}")
    name = doc["name"]

    basis = []
    ids = {}
    for entry in doc["basis"]:
        if not isinstance(entry, dict) or "id" not in entry or "degree" not in entry:
            raise ParseError("basis entries need 'id' and 'degree'")
        bid, deg = str(entry["id"]), entry["degree"]
        if not isinstance(deg, int) or not 0 <= deg <= 4:
            raise DegreeError(f"basis class {bid!r}: degree {deg} outside 0..4")
        if bid in ids:
            raise ParseError(f"duplicate basis id {bid!r}")
        ids[bid] = len(basis)
        basis.append(BasisClass(bid, deg))
    if not basis:
        raise ParseError("empty basis")

    degree0 = [i for i, b in enumerate(basis) if b.degree == 0]
    if len(degree0) != 1:
        raise AxiomViolation(f"{name}: need exactly one degree-0 class")
    unit_index = degree0[0]
    if doc["unit"] not in ids or ids[doc["unit"]] != unit_index:
        raise AxiomViolation(f"{name}: unit must be the degree-0 class")

    degrees = [b.degree for b in basis]
    dim = len(basis)

    # product table: listed pairs must have left index <= right index; the
    # mirror entries come from supercommutativity and the unit row is implied.
    listed = {}
    for entry in doc.get("products", []):
        for field in ("left", "right", "result"):
            if field not in entry:
                raise ParseError("product entries need left/right/result")
        left, right = entry["left"], entry["right"]
        if left not in ids or right not in ids:
            raise ParseError(f"product references unknown id {left!r} or {right!r}")
        i, j = ids[left], ids[right]
        if i > j:
            raise ParseError(
                f"{name}: product ({left},{right}) listed with left index > right")
        if (i, j) in listed:
            raise ParseError(f"{name}: duplicate product entry ({left},{right})")
        listed[(i, j)] = _parse_combination(ids, entry["result"], "product result")

    table = [dict() for _ in range(dim)]
    unit_row = {}
    for i in range(dim):
        cell = {i: Rat(1)}
        unit_row[i] = cell
        table[i][unit_index] = cell
    table[unit_index] = unit_row
    for (i, j), cell in listed.items():
        if i == unit_index or j == unit_index:
            expect = {j if i == unit_index else i: Rat(1)}
            if cell != expect:
                raise AxiomViolation(f"{name}: unit law fails on listed product")
            continue
        table[i][j] = cell
        if i != j:
            sign = -1 if (degrees[i] & 1) and (degrees[j] & 1) else 1
            table[j][i] = {k: sign * c for k, c in cell.items()}

    # graded product degrees
    for i in range(dim):
        for j, cell in table[i].items():
            for k in cell:
                if degrees[k] != degrees[i] + degrees[j]:
                    raise AxiomViolation(
                        f"{name}: product {basis[i].id}*{basis[j].id} lands in "
                        f"degree {degrees[k]}, expected {degrees[i] + degrees[j]}")

    # odd squares must vanish
    for i in range(dim):
        if degrees[i] & 1 and table[i].get(i):
            raise AxiomViolation(f"{name}: odd class {basis[i].id} has nonzero square")

    # associativity over all basis triples
    def cell_mul(left_cell, j):
        acc = {}
        for k, c in left_cell.items():
            for l, c2 in table[k].get(j, {}).items():
                acc[l] = acc.get(l, 0) + c * c2
        return {k: c for k, c in acc.items() if c}

    for i in range(dim):
        for j in range(dim):
            ij = table[i].get(j, {})
            for k in range(dim):
                left = cell_mul(ij, k)
                right = {}
                for l, c in table[j].get(k, {}).items():
                    for m, c2 in table[i].get(l, {}).items():
                        right[m] = right.get(m, 0) + c * c2
                right = {m: c for m, c in right.items() if c}
                if left != right:
                    raise AxiomViolation(
                        f"{name}: associativity fails on "
                        f"({basis[i].id},{basis[j].id},{basis[k].id})")

    integral_vec = [Rat(0)] * dim
    for idx, c in _parse_combination(ids, doc["integral"], "integral").items():
        integral_vec[idx] = c
    top = max(degrees)
    if dim > 1 and top != 4:
        raise AxiomViolation(f"{name}: a multi-class algebra needs a degree-4 part")
    for i in range(dim):
        if integral_vec[i] and degrees[i] != top:
            raise AxiomViolation(
                f"{name}: integral supported in degree {degrees[i]}, "
                f"must live in top degree {top}")

    canonical = _parse_combination(ids, doc.get("canonical_class"), "canonical_class")
    for idx in canonical:
        if degrees[idx] != 2:
            raise AxiomViolation(f"{name}: canonical class must be degree 2")

    return SurfaceAlgebra(name, basis, unit_index, table, integral_vec, canonical)


_PRESET_CACHE = {}


def preset_path(name):
    if name not in PRESETS:
        raise ParseError(f"unknown preset {name!r}; choose from {PRESETS}")
    return resources.files(__package__) / "presets" / f"{name}.json"


def load_preset(name):
    """Load one of the shipped algebras: p2, p1xp1, torus_like, point.

    Instances are cached so repeated loads share derived data and caches.
    """
    if name not in _PRESET_CACHE:
        path = preset_path(name)
        _PRESET_CACHE[name] = load_algebra(json.loads(path.read_text()))
    return _PRESET_CACHE[name]


def parse_element(algebra, text):
    """Parse "h", "1/2*h + 3*h2", "-x1x2" into an AlgebraElement."""
    out = algebra.zero()
    stripped = text.replace(" ", "")
    if not stripped:
        raise ParseError("empty element expression")
    # split into signed terms
    terms = []
    cur, sign = "", 1
    for ch in stripped:
        if ch in "+-" and cur:
            terms.append((sign, cur))
            cur, sign = "", (1 if ch == "+" else -1)
        elif ch in "+-" and not cur:
            sign *= 1 if ch == "+" else -1
        else:
            cur += ch
    if not cur:
        raise ParseError(f"dangling sign in {text!r}")
    terms.append((sign, cur))
    for sign, term in terms:
        if "*" in term:
            coeff_text, _, bid = term.partition("*")
            coeff = parse_rat(coeff_text)
        elif term in algebra.index_of:
            coeff, bid = Rat(1), term
        else:
            # bare rational multiplies the unit
            try:
                coeff, bid = parse_rat(term), algebra.basis[algebra.unit_index].id
            except ParseError:
                raise UnknownBasisId(
                    f"{algebra.name}: no basis class {term!r}") from None
        out = out + algebra.basis_element(bid).scale(sign * coeff)
    return out
