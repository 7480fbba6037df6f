"""Z^d-graded twisted torus algebras and phase-twist deformation.

A :class:`BlockAlgebra` is the universal *-algebra generated by d commuting
-up-to-phase unitaries; its basis monomials are integer exponent vectors in
normal order.  A :class:`DirectSum` of blocks models finite direct sums (the
product of monomials from different blocks is zero and the unit is the sum of
the block units).

Deformation: for a skew matrix J (entries rational + rational*t) the twisted
product of homogeneous elements of degrees p, q is

    a x_J b = e(SIGMA * p.Jq) * ab

with the global sign SIGMA fixed once by the numerical oscillatory-integral
oracle :func:`oscillatory_integral` (see ``tests`` for the fixing run).  For
bi-graded elements the same formula with the doubled matrix
Jtilde = (-J) (+) J gives the companion product used on quantum-group models.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .freealg import Element
from .scalars import Scalar, ThetaLin

Frac = Fraction

#: Global sign in the twisted-product phase e(SIGMA * p.Jq).  Determined by
#: evaluating the regularized oscillatory integral
#:   I = int int e(p.Ju) e(q.v) e(u.v) du dv  ->  e(-p.Jq)
#: numerically (Gaussian regularization, closed form, eps -> 0); the fixing
#: run is test_graded.py::test_oracle_fixes_sigma.
SIGMA = -1


class BlockAlgebra:
    """Twisted torus algebra on d phase-commuting unitary generators.

    ``comm[(a, b)]`` (a < b) is the scalar c with  u_b u_a = c * u_a u_b.
    Basis monomials are exponent vectors; the monomial m stands for the
    normal-ordered product u_0^m0 ... u_{d-1}^m{d-1}.  ``bidegrees``
    optionally assigns each generator a weight vector for a two-sided torus
    action (adjoints carry negated weights).
    """

    def __init__(self, names, comm=None, bidegrees=None):
        self.names = list(names)
        self.d = len(self.names)
        self.comm = {}
        for a in range(self.d):
            for b in range(a + 1, self.d):
                c = comm.get((a, b)) if comm else None
                self.comm[(a, b)] = c if c is not None else Scalar.one()
        self.bidegrees = list(bidegrees) if bidegrees else None

    # -- monomial interface -----------------------------------------------------
    def one_terms(self):
        return {(0,) * self.d: Scalar.one()}

    def mul_mono(self, m1, m2):
        phase = Scalar.one()
        for (a, b), c in self.comm.items():
            k = m1[b] * m2[a]
            if k:
                phase = phase * c**k
        return [(phase, tuple(x + y for x, y in zip(m1, m2)))]

    def star_mono(self, m):
        phase = Scalar.one()
        for (a, b), c in self.comm.items():
            k = m[a] * m[b]
            if k:
                phase = phase * c**k
        return phase, tuple(-x for x in m)

    def deg(self, m):
        return sum(abs(x) for x in m)

    def render_mono(self, m):
        parts = [
            f"{n}^{x}" if x != 1 else n for n, x in zip(self.names, m) if x != 0
        ]
        return " ".join(parts) if parts else "1"

    # -- helpers ------------------------------------------------------------------
    def gen(self, i_or_name, power=1) -> Element:
        i = i_or_name if isinstance(i_or_name, int) else self.names.index(i_or_name)
        m = [0] * self.d
        m[i] = power
        return Element(self, {tuple(m): Scalar.one()})

    def monomial(self, m) -> Element:
        return Element(self, {tuple(m): Scalar.one()})

    def degree_vec(self, m):
        return tuple(m)

    def bidegree(self, m):
        assert self.bidegrees is not None
        k = len(self.bidegrees[0])
        tot = [0] * k
        for x, b in zip(m, self.bidegrees):
            for i, v in enumerate(b):
                tot[i] += x * v
        return tuple(tot)

    def specialize(self, theta) -> "BlockAlgebra":
        return BlockAlgebra(
            self.names,
            {k: c.specialize(theta) for k, c in self.comm.items()},
            self.bidegrees,
        )


class DirectSum:
    """Finite direct sum of block algebras; monomials are (block, exponents)."""

    def __init__(self, blocks, block_names=None):
        self.blocks = list(blocks)
        self.block_names = block_names or [str(i) for i in range(len(blocks))]

    def one_terms(self):
        out = {}
        for k, blk in enumerate(self.blocks):
            out[(k, (0,) * blk.d)] = Scalar.one()
        return out

    def mul_mono(self, m1, m2):
        k1, e1 = m1
        k2, e2 = m2
        if k1 != k2:
            return []
        return [(c, (k1, m)) for c, m in self.blocks[k1].mul_mono(e1, e2)]

    def star_mono(self, m):
        k, e = m
        c, se = self.blocks[k].star_mono(e)
        return c, (k, se)

    def deg(self, m):
        return self.blocks[m[0]].deg(m[1])

    def render_mono(self, m):
        k, e = m
        inner = self.blocks[k].render_mono(e)
        return f"[{self.block_names[k]}: {inner}]"

    # -- helpers ------------------------------------------------------------------
    def block_gen(self, k, i, power=1) -> Element:
        blk = self.blocks[k]
        m = [0] * blk.d
        m[i] = power
        return Element(self, {(k, tuple(m)): Scalar.one()})

    def block_unit(self, k) -> Element:
        return Element(self, {(k, (0,) * self.blocks[k].d): Scalar.one()})

    def bidegree(self, m):
        k, e = m
        return self.blocks[k].bidegree(e)

    def specialize(self, theta) -> "DirectSum":
        return DirectSum([b.specialize(theta) for b in self.blocks], self.block_names)


# ---------------------------------------------------------------------------
# Laplacians
# ---------------------------------------------------------------------------


class Laplacian:
    """Diagonal Laplacian on a graded algebra: eigenvalue from the degree vector.

    For the flat torus the monomial of degree (m, n) has eigenvalue
    -(m^2 + n^2).
    """

    def __init__(self, eigenvalue_fn=None):
        self.eigenvalue_fn = eigenvalue_fn or (lambda v: -sum(x * x for x in v))

    def eigenvalue(self, degree_vec) -> int:
        return self.eigenvalue_fn(degree_vec)

    def apply(self, elem: Element) -> Element:
        amb = elem.ambient
        out = Element.zero(amb)
        for m, c in elem.t.items():
            out._add_term(m, c * Scalar.rational(self.eigenvalue(amb.degree_vec(m))))
        return out

    def eigenspace(self, block: BlockAlgebra, ev, radius=None) -> list:
        """All monomials of the block with the given eigenvalue."""
        assert block.d == 2
        r = radius if radius is not None else int(abs(ev)) + 1
        out = []
        for m in range(-r, r + 1):
            for n in range(-r, r + 1):
                if self.eigenvalue((m, n)) == ev:
                    out.append((m, n))
        return out


# ---------------------------------------------------------------------------
# deformation matrices and twisted products
# ---------------------------------------------------------------------------


def skew_matrix(entries) -> list:
    """Build a matrix of ThetaLin entries and check skew-symmetry."""
    mat = [[e if isinstance(e, ThetaLin) else ThetaLin(e) for e in row] for row in entries]
    n = len(mat)
    for i in range(n):
        for j in range(n):
            assert mat[i][j] == -mat[j][i], "deformation matrix must be skew"
    return mat


def j_torus() -> list:
    """The standard 2x2 deformation matrix with e(2*<upper entry>) = phase.

    Orientation is fixed so that deforming the commutative 2-torus yields the
    rotation algebra with  U V = e(t) V U; see test_graded.py.
    """
    return skew_matrix(
        [
            [ThetaLin(0, 0), ThetaLin(0, Frac(-1, 2))],
            [ThetaLin(0, Frac(1, 2)), ThetaLin(0, 0)],
        ]
    )


def j_double(J) -> list:
    """The doubled matrix (-J) (+) J acting on bidegrees."""
    n = len(J)
    zero = ThetaLin(0, 0)
    out = []
    for i in range(2 * n):
        row = []
        for j in range(2 * n):
            if i < n and j < n:
                row.append(-J[i][j])
            elif i >= n and j >= n:
                row.append(J[i - n][j - n])
            else:
                row.append(zero)
        out.append(row)
    return out


def pair(p, J, q) -> ThetaLin:
    """p . (J q) for integer vectors p, q."""
    acc = ThetaLin(0, 0)
    for i, pi in enumerate(p):
        for j, qj in enumerate(q):
            if pi and qj:
                acc = acc + J[i][j] * (pi * qj)
    return acc


def twist_phase(p, J, q) -> Scalar:
    """The exact deformation phase e(SIGMA * p.Jq)."""
    return Scalar.exponential(pair(p, J, q) * SIGMA)


def rieffel_product(x: Element, y: Element, J, grading=None) -> Element:
    """Twisted product of graded elements: phase e(SIGMA*p.Jq) times ab.

    ``grading`` maps a monomial to its integer degree vector; by default the
    ambient ``degree_vec`` (block algebras) is used.  Pass
    ``grading=ambient.bidegree`` together with ``j_double(J)`` for the
    companion product on bi-graded quantum-group models.
    """
    amb = x.ambient
    grading = grading or amb.degree_vec
    out = Element.zero(amb)
    for m1, c1 in x.t.items():
        p = grading(m1)
        for m2, c2 in y.t.items():
            q = grading(m2)
            c = c1 * c2 * twist_phase(p, J, q)
            for pc, pm in amb.mul_mono(m1, m2):
                out._add_term(pm, c * pc)
    return out


def deform_block(block: BlockAlgebra, J, use_bidegrees=False) -> BlockAlgebra:
    """The deformed algebra of a block, presented on its own ordered basis.

    The result is again a block algebra: the generators pick up the relative
    commutation phase e(2*SIGMA*p_b.J p_a) and monomials denote twisted
    ordered products.
    """
    grading = block.bidegree if use_bidegrees else block.degree_vec
    unit = [0] * block.d
    gdeg = []
    for i in range(block.d):
        m = list(unit)
        m[i] = 1
        gdeg.append(grading(tuple(m)))
    comm = {}
    for (a, b), c in block.comm.items():
        extra = Scalar.exponential((pair(gdeg[b], J, gdeg[a]) - pair(gdeg[a], J, gdeg[b])) * SIGMA)
        comm[(a, b)] = c * extra
    return BlockAlgebra(block.names, comm, block.bidegrees)


def deform_sum(ds: DirectSum, J, use_bidegrees=True) -> DirectSum:
    return DirectSum(
        [deform_block(b, J, use_bidegrees) for b in ds.blocks], ds.block_names
    )


class DeformedFreeAlgebra:
    """Free *-algebra whose words multiply with a bidegree phase twist.

    Words denote twisted ordered products of the generators; concatenation
    therefore picks up e(SIGMA * bideg(w1).J bideg(w2)).
    """

    def __init__(self, base, J):
        self.base = base
        self.J = J
        self.names = base.names
        self.selfadjoint = base.selfadjoint
        self.index = base.index
        self.bidegrees = base.bidegrees

    def one_terms(self):
        return self.base.one_terms()

    def mul_mono(self, a, b):
        ph = twist_phase(self.base.word_bidegree(a), self.J, self.base.word_bidegree(b))
        return [(ph, a + b)]

    def star_mono(self, w):
        return self.base.star_mono(w)

    def deg(self, w):
        return len(w)

    def render_mono(self, w):
        return self.base.render_mono(w)

    def letter(self, name, star=False):
        return self.base.letter(name, star)

    def gen(self, name, star=False) -> Element:
        return Element(self, {(self.base.letter(name, star),): Scalar.one()})

    def word_bidegree(self, w):
        return self.base.word_bidegree(w)


# ---------------------------------------------------------------------------
# convolution by torus characters, trace, invariant functionals
# ---------------------------------------------------------------------------


def convolve_left(u, x: Element) -> Element:
    """Left slot of the two-sided torus action: phase e(chi_L . u) per monomial."""
    return _convolve(u, x, 0)


def convolve_right(u, x: Element) -> Element:
    """Right slot of the two-sided torus action: phase e(chi_R . u)."""
    return _convolve(u, x, 1)


def _convolve(u, x, side):
    amb = x.ambient
    out = Element.zero(amb)
    for m, c in x.t.items():
        bd = amb.bidegree(m)
        half = len(bd) // 2
        chi = bd[:half] if side == 0 else bd[half:]
        expo = ThetaLin(0, 0)
        for ci, ui in zip(chi, u):
            expo = expo + (ui if isinstance(ui, ThetaLin) else ThetaLin(ui)) * ci
        out._add_term(m, c * Scalar.exponential(expo))
    return out


def tau(x: Element, weights=None) -> Scalar:
    """Degree-zero coefficient; on a direct sum, the weighted sum over blocks.

    With ``weights`` (one rational per block) this is the invariant state
    candidate; without, the weight of every block is 1.
    """
    amb = x.ambient
    tot = Scalar.zero()
    for m, c in x.t.items():
        if isinstance(amb, DirectSum):
            k, e = m
            if any(e):
                continue
            w = weights[k] if weights is not None else 1
            tot = tot + c * Scalar.rational(w)
        else:
            if any(m):
                continue
            tot = tot + c
    return tot


def collapse_phase(c1, c2) -> Scalar:
    """Exact value of  int int e(c1.u + c2.v + u.v) du dv  =  e(-c1.c2).

    The entries of c1, c2 are ThetaLin exponent vectors.  This is the
    symbolic counterpart of :func:`oscillatory_integral`, with the same
    normalisation (the integral of e(u.v) alone is 1).
    """
    acc = ThetaLin(0, 0)
    for a, b in zip(c1, c2):
        a = a if isinstance(a, ThetaLin) else ThetaLin(a)
        b = b if isinstance(b, ThetaLin) else ThetaLin(b)
        acc = acc + ThetaLin(
            -(a.const * b.const), -(a.const * b.coef + a.coef * b.const)
        )
        assert a.coef * b.coef == 0, "quadratic parameter terms not supported"
    return Scalar.exponential(acc)


def oscillatory_integral(a, b, eps_schedule=None):
    """Numerically evaluate  int int e(a.u) e(b.v) e(u.v) du dv  over R^n x R^n.

    Gaussian regularization: the integrand is damped by
    exp(-pi*eps*(|u|^2+|v|^2)); for each eps the integral is a Gaussian-
    Fresnel integral evaluated in closed form, and the values are
    extrapolated over a decreasing eps schedule.  Returns (value, err)
    where err estimates the extrapolation error.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    n = len(a)
    c = np.concatenate([a, b])
    S = np.zeros((2 * n, 2 * n))
    S[:n, n:] = np.eye(n)
    S[n:, :n] = np.eye(n)
    if eps_schedule is None:
        eps_schedule = [10.0 ** (-k) for k in range(2, 9)]

    def value(eps):
        M = eps * np.eye(2 * n) - 1j * S
        det = np.linalg.det(M)
        sol = np.linalg.solve(M, c)
        return det ** (-0.5) * np.exp(-np.pi * np.dot(c, sol))

    vals = [value(e) for e in eps_schedule]
    # Richardson: I(eps) = I0 + c1*eps + O(eps^2)
    extr = [
        (e1 * v2 - e2 * v1) / (e1 - e2)
        for (e1, v1), (e2, v2) in zip(
            zip(eps_schedule, vals), list(zip(eps_schedule, vals))[1:]
        )
    ]
    err = abs(extr[-1] - extr[-2])
    return extr[-1], err
