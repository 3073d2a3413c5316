"""Sparse multilinear polynomial algebra and decomposability testing.

A polynomial is stored as a map from monomials to coefficients, where a
monomial is a frozenset of variables (multilinear: each variable occurs
with degree at most one).  Variables are tagged with a block letter and
a bitstring index, e.g. ``x[01]``, so that polynomials read off quantum
states keep their register structure visible.

The decomposability machinery has two independent routes:

* ``sv_partition_test`` checks the restriction identity
  ``f(a) * f == f|_I * f|_complement(I)`` at a justifying assignment,
  which holds exactly when I is a union of variable-partition classes;
* ``bipartition_rank_oracle`` checks whether the coefficient matrix of
  the split has rank <= 1, i.e. whether f factors as g(I) * h(rest).

They are used to cross-check each other in the verification suites.
"""
from __future__ import annotations

from typing import Iterable, NamedTuple

import numpy as np

from .numerics import (
    DEFAULT_TOL,
    Exact,
    Tolerance,
    abs2_scalar,
    approx_eq,
    is_exact,
    random_scalar,
    scalar_is_zero,
    to_float,
)


class VarId(NamedTuple):
    block: str
    index: str

    def __str__(self):
        return f"{self.block}[{self.index}]"


Monomial = frozenset
Assignment = dict


class MissingVariableError(ValueError):
    """An assignment does not cover a variable it is applied to."""


class JustifyingSearchError(RuntimeError):
    """No justifying assignment found within the attempt budget."""


class NotJustifyingError(ValueError):
    """An operation required a verified justifying assignment."""


class DecompositionBudgetError(ValueError):
    """Too many variables for the exhaustive bipartition search."""


def var(block: str, index) -> VarId:
    return VarId(block, str(index))


def mono(*vars_: VarId) -> Monomial:
    return frozenset(vars_)


def _mono_key(m: Monomial):
    return (len(m), tuple(sorted(m)))


class MultilinearPoly:
    """Multilinear polynomial as a pruned {monomial: coefficient} map."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        pruned = {}
        for m, c in (terms or {}).items():
            if not scalar_is_zero(c):
                pruned[frozenset(m)] = c
        self.terms = pruned

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "MultilinearPoly":
        return cls()

    @classmethod
    def constant(cls, c) -> "MultilinearPoly":
        return cls({frozenset(): c})

    @classmethod
    def variable(cls, v: VarId) -> "MultilinearPoly":
        return cls({frozenset([v]): Exact.ONE})

    # ---- queries ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant_value(self):
        return self.terms.get(frozenset(), 0)

    def variables(self) -> frozenset:
        out = set()
        for m in self.terms:
            out.update(m)
        return frozenset(out)

    def coefficient(self, m: Monomial):
        return self.terms.get(frozenset(m), 0)

    def leading_monomial(self) -> Monomial:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading monomial")
        return min(self.terms, key=_mono_key)

    # ---- ring operations ----------------------------------------------

    def __add__(self, other):
        if not isinstance(other, MultilinearPoly):
            other = MultilinearPoly.constant(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return MultilinearPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MultilinearPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultilinearPoly):
            other = MultilinearPoly.constant(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MultilinearPoly):
            return MultilinearPoly({m: c * other for m, c in self.terms.items()})
        # Only variable-disjoint products keep the result multilinear.
        if not self.is_constant and not other.is_constant:
            if self.variables() & other.variables():
                raise ValueError("product of polynomials with shared variables "
                                 "is not multilinear")
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 | m2
                c = c1 * c2
                out[m] = out[m] + c if m in out else c
        return MultilinearPoly(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        if not isinstance(other, MultilinearPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def approx_eq(self, other: "MultilinearPoly", tol: Tolerance = DEFAULT_TOL) -> bool:
        keys = set(self.terms) | set(other.terms)
        return all(approx_eq(self.terms.get(m, 0), other.terms.get(m, 0), tol)
                   for m in keys)

    def __repr__(self):
        if self.is_zero:
            return "<poly 0>"
        parts = []
        for m in sorted(self.terms, key=_mono_key):
            vs = "*".join(str(v) for v in sorted(m)) or "1"
            parts.append(f"({self.terms[m]})*{vs}")
        return "<poly " + " + ".join(parts) + ">"


def variables_of(f: MultilinearPoly) -> frozenset:
    """Variables f depends on; for a pruned multilinear map this is the
    union of the monomial supports."""
    return f.variables()


def evaluate(f: MultilinearPoly, a: Assignment):
    """Full substitution of a into f."""
    total = None
    for m, c in f.terms.items():
        val = c
        for v in m:
            if v not in a:
                raise MissingVariableError(f"assignment is missing {v}")
            val = val * a[v]
        total = val if total is None else total + val
    if total is None:
        return Exact.ZERO
    return total


def restrict(f: MultilinearPoly, subset: Iterable[VarId], a: Assignment) -> MultilinearPoly:
    """Substitute a[v] for each v in subset, leaving other variables free."""
    subset = frozenset(subset)
    for v in subset:
        if v not in a:
            raise MissingVariableError(f"assignment is missing {v}")
    out = {}
    for m, c in f.terms.items():
        fixed = m & subset
        val = c
        for v in fixed:
            val = val * a[v]
        rest = m - subset
        out[rest] = out[rest] + val if rest in out else val
    return MultilinearPoly(out)


def depends_on(f: MultilinearPoly, v: VarId, probes: Iterable[Assignment]) -> bool:
    """Brute-force dependence test: two evaluations differing only at v."""
    for a in probes:
        lo = dict(a)
        hi = dict(a)
        lo[v] = 0
        hi[v] = 1
        if not approx_eq(evaluate(f, lo), evaluate(f, hi)):
            return True
    return False


# ---- justifying assignments -------------------------------------------

def is_justifying(f: MultilinearPoly, a: Assignment,
                  tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff every single-variable restriction of f at a is non-constant.

    Each restriction is univariate multilinear, c0 + c1*v; it counts as
    non-constant when c1 is nonzero (exactly for exact scalars, above
    the tolerance relative to the restriction's own scale for floats,
    so that an assignment annihilating a whole factor is rejected even
    when rounding leaves residues of order 1e-17).
    """
    fvars = f.variables()
    for v in fvars:
        g = restrict(f, fvars - {v}, a)
        c1 = g.coefficient(mono(v))
        if is_exact(c1):
            if c1.is_zero:
                return False
        else:
            scale = max(1.0, abs(to_float(g.constant_value())))
            if abs(to_float(c1)) <= tol.threshold(scale):
                return False
    return True


def find_justifying_assignment(f: MultilinearPoly,
                               rng: np.random.Generator,
                               attempts: int = 200) -> Assignment:
    """Random search for a justifying assignment, verified definitionally.

    Small positive integers are tried first so exact-backend polynomials
    get exact witnesses; later attempts fall back to complex Gaussians.
    """
    if f.is_zero:
        raise ValueError("zero polynomial has no justifying assignment")
    fvars = sorted(f.variables())
    for attempt in range(attempts):
        if attempt < max(attempts // 2, 1):
            a = {v: Exact(int(rng.integers(1, 8))) for v in fvars}
        else:
            a = {v: random_scalar(rng) for v in fvars}
        if is_justifying(f, a):
            return a
    raise JustifyingSearchError(
        f"no justifying assignment in {attempts} attempts")


def sv_partition_test(f: MultilinearPoly,
                      a: Assignment,
                      subset: Iterable[VarId],
                      trials: int = 20,
                      rng: np.random.Generator | None = None,
                      tol: Tolerance = DEFAULT_TOL,
                      assume_justifying: bool = False) -> bool:
    """Decide whether f(a)*f == f|_subset * f|_rest as polynomials.

    With a justifying a this holds iff subset is a union of classes of
    the variable-partition of f.  Exact-coefficient inputs with at most
    16 variables are expanded symbolically; everything else is tested at
    random points.  Callers sweeping many subsets against one assignment
    can verify it once themselves and pass ``assume_justifying``.
    """
    if not assume_justifying and not is_justifying(f, a):
        raise NotJustifyingError("assignment is not justifying for f")
    subset = frozenset(subset)
    fvars = f.variables()
    rest = fvars - subset
    left = restrict(f, subset & fvars, a)
    right = restrict(f, rest, a)

    all_exact = (all(is_exact(c) for c in f.terms.values())
                 and all(is_exact(a[v]) for v in fvars))
    if all_exact and len(fvars) <= 16:
        return f * evaluate(f, a) == left * right

    rng = rng or np.random.default_rng(0)
    fa = to_float(evaluate(f, a))
    for _ in range(trials):
        p = {v: random_scalar(rng) for v in fvars}
        lhs = fa * to_float(evaluate(f, p))
        rhs = to_float(evaluate(left, p)) * to_float(evaluate(right, p))
        if not tol.close(lhs, rhs):
            return False
    return True


def _solve_single_variable_zero(f: MultilinearPoly, pivot: VarId,
                                others: Assignment):
    """Value for pivot making f vanish when the others are fixed, or None."""
    g = restrict(f, f.variables() - {pivot}, others)
    c1 = g.coefficient(mono(pivot))
    c0 = g.constant_value()
    if scalar_is_zero(c1, 1e-12):
        return None
    if is_exact(c0) and is_exact(c1):
        return -c0 / c1
    return -to_float(c0) / to_float(c1)


def find_zero_justifying_assignment(f: MultilinearPoly,
                                    rng: np.random.Generator,
                                    attempts: int = 200,
                                    candidates: Iterable[Assignment] = ()) -> Assignment | None:
    """Search for a justifying assignment on the zero set of f.

    A non-None result certifies that f is indecomposable; None means
    unknown (never "decomposable").  Explicit candidate assignments,
    e.g. from a structured family construction, are verified first.
    Generic search fixes all variables but one at random and solves the
    remaining linear equation.
    """
    if f.is_constant:
        raise ValueError("need a non-constant polynomial")
    for a in candidates:
        if (scalar_is_zero(evaluate(f, a), 1e-9) and is_justifying(f, a)):
            return a
    fvars = sorted(f.variables())
    for attempt in range(attempts):
        pivot = fvars[int(rng.integers(0, len(fvars)))]
        if attempt < max(attempts // 2, 1):
            others = {v: Exact(int(rng.integers(1, 8))) for v in fvars if v != pivot}
        else:
            others = {v: random_scalar(rng) for v in fvars if v != pivot}
        val = _solve_single_variable_zero(f, pivot, others)
        if val is None:
            continue
        a = dict(others)
        a[pivot] = val
        if is_justifying(f, a) and scalar_is_zero(evaluate(f, a), 1e-9):
            return a
    return None


# ---- rank-based splitting ----------------------------------------------

def _coefficient_matrix(f: MultilinearPoly, subset: frozenset):
    """Terms regrouped as {row: {col: coeff}} with row = monomial part in
    subset and col = part outside it."""
    rows = {}
    for m, c in f.terms.items():
        r = m & subset
        col = m - subset
        rows.setdefault(r, {})[col] = c
    return rows

def _rank_le_1_exact(rows) -> bool:
    # stored entries are all nonzero, so every row of a rank-1 matrix has
    # the same column support and vanishing 2x2 minors against the pivot row
    it = iter(rows.values())
    pivot = next(it)
    pivot_cols = set(pivot)
    for other in it:
        if set(other) != pivot_cols:
            return False
        c0 = next(iter(pivot_cols))
        for col in pivot_cols:
            if not other[col] * pivot[c0] == other[c0] * pivot[col]:
                return False
    return True


def _rank_le_1_float(rows, tol: Tolerance) -> bool:
    row_keys = sorted(rows, key=_mono_key)
    col_keys = sorted({c for r in rows.values() for c in r}, key=_mono_key)
    col_pos = {c: i for i, c in enumerate(col_keys)}
    mat = np.zeros((len(row_keys), len(col_keys)), dtype=complex)
    for i, rk in enumerate(row_keys):
        for ck, c in rows[rk].items():
            mat[i, col_pos[ck]] = to_float(c)
    s = np.linalg.svd(mat, compute_uv=False)
    if len(s) < 2:
        return True
    return s[1] <= tol.threshold(s[0])


def bipartition_rank_oracle(f: MultilinearPoly,
                            subset: Iterable[VarId],
                            tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff f factors as g(subset) * h(complement), decided by whether
    the coefficient matrix of the split has rank <= 1.

    Exact coefficients are decided exactly (vanishing 2x2 minors); floats
    use singular values with the numerical-rank threshold
    ``s_i <= rel_eps * s_1 + abs_eps``.
    """
    rows = _coefficient_matrix(f, frozenset(subset))
    if len(rows) <= 1:
        return True
    if all(is_exact(c) for r in rows.values() for c in r.values()):
        return _rank_le_1_exact(rows)
    return _rank_le_1_float(rows, tol)


def indecomposable_at_every_split(f: MultilinearPoly,
                                  tol: Tolerance = DEFAULT_TOL) -> bool:
    """Exhaustive sweep: no nontrivial variable bipartition has rank <= 1.

    Same semantics as calling ``bipartition_rank_oracle`` on every
    nonempty proper subset, with monomials packed into bitmasks so the
    sweep stays fast for the family suites.
    """
    fvars = sorted(f.variables())
    v = len(fvars)
    if v <= 1:
        return True
    if v > 24:
        raise DecompositionBudgetError(f"{v} variables exceeds the 24-variable cap")
    pos = {x: i for i, x in enumerate(fvars)}
    masks = []
    coeffs = []
    for m, c in f.terms.items():
        bits = 0
        for x in m:
            bits |= 1 << pos[x]
        masks.append(bits)
        coeffs.append(c)
    exact = all(is_exact(c) for c in coeffs)
    n_terms = len(masks)
    full = (1 << v) - 1
    # Subsets containing variable 0 enumerate each unordered bipartition once.
    for sub in range(0, 1 << (v - 1)):
        subset_mask = (sub << 1) | 1
        if subset_mask == full:
            continue
        rows = {}
        for i in range(n_terms):
            r = masks[i] & subset_mask
            rows.setdefault(r, {})[masks[i] & ~subset_mask] = coeffs[i]
        if len(rows) <= 1:
            return False
        if exact:
            if _rank_le_1_exact(rows):
                return False
        else:
            if _rank_le_1_masked_float(rows, tol):
                return False
    return True


def _rank_le_1_masked_float(rows, tol: Tolerance) -> bool:
    it = iter(rows.values())
    pivot = next(it)
    pivot_cols = set(pivot)
    for other in it:
        if set(other) != pivot_cols:
            # a column present in one row and absent in the other is a
            # nonzero 2x2 minor against any shared nonzero column
            return False
        c0 = next(iter(pivot_cols))
        p0 = to_float(pivot[c0])
        o0 = to_float(other[c0])
        for col in pivot_cols:
            lhs = to_float(other[col]) * p0
            rhs = o0 * to_float(pivot[col])
            if abs(lhs - rhs) > tol.threshold(max(abs(lhs), abs(rhs))):
                return False
    return True


def _extract_factors(f: MultilinearPoly, subset: frozenset):
    """Split a rank-1 coefficient matrix into (g on subset, h on rest)."""
    rows = _coefficient_matrix(f, subset)
    row_keys = sorted(rows, key=_mono_key)
    pivot_row = None
    pivot_col = None
    for rk in row_keys:
        for ck in sorted(rows[rk], key=_mono_key):
            pivot_row, pivot_col = rk, ck
            break
        if pivot_row is not None:
            break
    pivot_val = rows[pivot_row][pivot_col]
    g = MultilinearPoly({rk: rows[rk].get(pivot_col, 0) for rk in rows
                         if pivot_col in rows[rk]})
    h = MultilinearPoly({ck: c / pivot_val for ck, c in rows[pivot_row].items()})
    return g, h


def decompose(f: MultilinearPoly,
              tol: Tolerance = DEFAULT_TOL,
              max_vars: int = 24) -> list[MultilinearPoly]:
    """Variable-disjoint indecomposable factors of f.

    Exhaustive minimal-bipartition search (exponential in the variable
    count, capped at ``max_vars``).  Factors are normalized so that the
    leading-monomial coefficient is 1, with the residual scalar attached
    to the first factor; their product equals f up to that convention.
    """
    if f.is_zero:
        raise ValueError("cannot decompose the zero polynomial")
    fvars = sorted(f.variables())
    if len(fvars) > max_vars:
        raise DecompositionBudgetError(
            f"{len(fvars)} variables exceeds the {max_vars}-variable cap")

    factors = []

    def split(g: MultilinearPoly):
        gvars = sorted(g.variables())
        if len(gvars) <= 1:
            factors.append(g)
            return
        anchor = gvars[0]
        others = gvars[1:]
        # smallest subset containing the anchor whose split has rank <= 1
        for size in range(0, len(others)):
            found = None
            for combo in _combinations(others, size):
                subset = frozenset((anchor, *combo))
                if bipartition_rank_oracle(g, subset, tol):
                    found = subset
                    break
            if found is not None:
                left, right = _extract_factors(g, found)
                factors.append(left)  # minimal split: left is one class
                split(right)
                return
        factors.append(g)

    split(f)

    # normalize: unit leading coefficients, residual scalar on factor 0
    residual = None
    normalized = []
    for g in factors:
        lead = g.terms[g.leading_monomial()]
        normalized.append(g * _invert_scalar(lead))
        residual = lead if residual is None else residual * lead
    normalized[0] = normalized[0] * residual
    return normalized


def _invert_scalar(s):
    if is_exact(s):
        return Exact.ONE / s
    return 1.0 / to_float(s)


def _combinations(items, size):
    from itertools import combinations
    return combinations(items, size)


def variable_partition(f: MultilinearPoly,
                       tol: Tolerance = DEFAULT_TOL) -> list[frozenset]:
    """Variable sets of the indecomposable factors of f."""
    return [g.variables() for g in decompose(f, tol) if g.variables()]


def is_union_of_classes(subset: frozenset, partition: list[frozenset]) -> bool:
    return all(cls <= subset or not (cls & subset) for cls in partition)


# ---- random instances ---------------------------------------------------

def random_multilinear_poly(rng: np.random.Generator,
                            n_vars: int,
                            n_terms: int,
                            exact: bool = True,
                            block: str = "x") -> MultilinearPoly:
    """Sparse random polynomial on ``n_vars`` variables; exact instances
    draw small nonzero integer coefficients, float ones Gaussians."""
    width = max(1, (n_vars - 1).bit_length())
    vs = [var(block, format(i, f"0{width}b")) for i in range(n_vars)]
    terms = {}
    for _ in range(n_terms):
        m = frozenset(v for v in vs if rng.random() < 0.5)
        if exact:
            c = Exact(int(rng.integers(1, 6)) * (1 if rng.random() < 0.5 else -1))
        else:
            c = random_scalar(rng)
        terms[m] = terms[m] + c if m in terms else c
    f = MultilinearPoly(terms)
    if f.is_zero:
        f = MultilinearPoly({frozenset([vs[0]]): Exact.ONE})
    return f


def random_disjoint_product(rng: np.random.Generator,
                            n_factors: int,
                            vars_per_factor: int,
                            exact: bool = True) -> tuple[MultilinearPoly, list[MultilinearPoly]]:
    """Product of variable-disjoint random factors plus the factor list."""
    blocks = "xyzw"
    factors = []
    for i in range(n_factors):
        g = random_multilinear_poly(rng, vars_per_factor,
                                    vars_per_factor + 2, exact,
                                    block=blocks[i % len(blocks)])
        # make sure the factor actually uses its variables
        while g.is_constant:
            g = random_multilinear_poly(rng, vars_per_factor,
                                        vars_per_factor + 2, exact,
                                        block=blocks[i % len(blocks)])
        factors.append(g)
    prod = factors[0]
    for g in factors[1:]:
        prod = prod * g
    return prod, factors


# ---- text format --------------------------------------------------------

class PolyParseError(ValueError):
    def __init__(self, message, line_no=None):
        self.line_no = line_no
        super().__init__(message if line_no is None
                         else f"line {line_no}: {message}")


def format_poly(f: MultilinearPoly) -> str:
    """One term per line: ``coeff_re coeff_im : var[,var...]``."""
    lines = []
    for m in sorted(f.terms, key=_mono_key):
        c = to_float(f.terms[m])
        vs = ",".join(str(v) for v in sorted(m))
        lines.append(f"{c.real!r} {c.imag!r} : {vs}")
    return "\n".join(lines) + "\n"


def parse_poly(text: str) -> MultilinearPoly:
    terms = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise PolyParseError("expected 'coeff_re coeff_im : vars'", ln)
        head, tail = line.split(":", 1)
        parts = head.split()
        if len(parts) != 2:
            raise PolyParseError("coefficient needs exactly two numbers", ln)
        try:
            c = complex(float(parts[0]), float(parts[1]))
        except ValueError:
            raise PolyParseError("bad coefficient", ln) from None
        vs = set()
        tail = tail.strip()
        if tail:
            for tok in tail.split(","):
                tok = tok.strip()
                if len(tok) < 4 or tok[1] != "[" or not tok.endswith("]"):
                    raise PolyParseError(f"bad variable {tok!r}", ln)
                block, index = tok[0], tok[2:-1]
                if block not in "xyzw" or not index or set(index) - {"0", "1"}:
                    raise PolyParseError(f"bad variable {tok!r}", ln)
                vs.add(VarId(block, index))
        m = frozenset(vs)
        terms[m] = terms[m] + c if m in terms else c
    return MultilinearPoly(terms)
