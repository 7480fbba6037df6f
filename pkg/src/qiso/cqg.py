"""Quantum-group presentations and the verification toolbox.

A :class:`CQGPresentation` packages generators, star-closed relations and the
coproduct / counit / antipode tables, plus (optionally) a concrete graded
model in which every check is decisive.  An :class:`ActionSpec` is a
generator-to-element map from a source algebra into source (x) quantum group.

Every check runs in one of two modes:

- presentation mode: bounded-degree rewriting modulo the relation set; a
  nonzero normal form yields UNDECIDED (never a false failure);
- model mode: exact evaluation in a graded block algebra; always decisive.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .freealg import Element, FreeAlgebra, TensorAlgebra, substitute, substitute_factors, tensor
from .graded import (
    SIGMA,
    DirectSum,
    collapse_phase,
    j_double,
    pair,
    rieffel_product,
    tau,
    twist_phase,
)
from .rewrite import RuleSet, ideal_member, reduce_tensor, YES
from .scalars import Scalar, ThetaLin

Frac = Fraction

PASS = "PASS"
FAIL = "FAIL"
UNDECIDED = "UNDECIDED"
SKIPPED = "SKIPPED"


class MissingImage(KeyError):
    """A generator has no image under the supplied table."""


class NotHopfIdeal(ValueError):
    """The coproduct does not descend to the requested quotient."""


class CounitSolveError(ValueError):
    """The counit equations have no unique solution on the generators."""


@dataclass
class CheckResult:
    name: str
    mode: str  # "presentation" | "model"
    status: str  # PASS / FAIL / UNDECIDED / SKIPPED
    detail: str = ""
    seconds: float = 0.0

    def to_dict(self):
        return {
            "name": self.name,
            "mode": self.mode,
            "status": self.status,
            "detail": self.detail,
            "seconds": round(self.seconds, 4),
        }


class Report:
    """Deterministically ordered list of check results."""

    def __init__(self, name: str):
        self.name = name
        self.results: list[CheckResult] = []

    def add(self, result: CheckResult):
        self.results.append(result)
        return result

    def run(self, name, mode, fn) -> CheckResult:
        t0 = time.monotonic()
        try:
            status, detail = fn()
        except Exception as exc:  # surface, do not hide, genuine errors
            raise RuntimeError(f"check {name} raised") from exc
        return self.add(CheckResult(name, mode, status, detail, time.monotonic() - t0))

    @property
    def statuses(self):
        return [r.status for r in self.results]

    def ok(self) -> bool:
        return all(r.status in (PASS, SKIPPED) for r in self.results)

    def worst(self) -> str:
        if any(r.status == FAIL for r in self.results):
            return FAIL
        if any(r.status == UNDECIDED for r in self.results):
            return UNDECIDED
        return PASS

    def to_dict(self):
        return {"suite": self.name, "checks": [r.to_dict() for r in self.results]}


# ---------------------------------------------------------------------------
# presentations and actions
# ---------------------------------------------------------------------------


def star_close(relations) -> list:
    """Close a relation list under the involution (no duplicates)."""
    out = list(relations)
    for r in relations:
        rs = r.star()
        if not any((rs - q).is_zero() or (rs + q).is_zero() for q in out):
            out.append(rs)
    return out


@dataclass
class CQGPresentation:
    """Generators + relations + Hopf tables, with an optional concrete model."""

    algebra: FreeAlgebra
    relations: list = field(default_factory=list)
    coproduct: dict | None = None  # name -> Element in algebra (x) algebra
    counit: dict | None = None  # name -> Scalar
    antipode: dict | None = None  # name -> Element in algebra
    model: dict | None = None  # name -> Element in model ambient
    model_ambient: object | None = None
    name: str = ""

    def star_closed_relations(self) -> list:
        return star_close(self.relations)

    def rules(self, cap: int) -> RuleSet:
        return RuleSet(self.algebra, self.star_closed_relations(), cap)

    def in_model(self, elem: Element) -> Element:
        assert self.model is not None
        return substitute(elem, self.model)

    def delta(self, elem: Element) -> Element:
        assert self.coproduct is not None
        return substitute(elem, self.coproduct)

    def delta_model(self, elem: Element) -> Element:
        """Coproduct of a free element, evaluated in model (x) model."""
        images = {n: substitute_factors(d, [self.model, self.model]) for n, d in self.coproduct.items()}
        return substitute(elem, images)


@dataclass
class ActionSpec:
    """An action table  source generator -> element of  source (x) target."""

    source: FreeAlgebra
    source_relations: list
    table: dict  # name -> Element in Tensor(source ambient, target ambient)
    rulesets: tuple = (None, None)  # per-tensor-factor reduction (or None = exact)
    name: str = ""

    def apply(self, elem: Element) -> Element:
        return substitute(elem, self.table)

    def reduce(self, elem: Element) -> Element:
        if all(r is None for r in self.rulesets):
            return elem
        return reduce_tensor(elem, self.rulesets)


# ---------------------------------------------------------------------------
# homomorphism / extraction / isometry
# ---------------------------------------------------------------------------


def check_hom(act: ActionSpec, report: Report | None = None) -> Report:
    """The action respects every source relation (modulo target relations)."""
    report = report or Report(f"hom:{act.name}")
    presentation = any(r is not None for r in act.rulesets)
    mode = "presentation" if presentation else "model"
    for i, r in enumerate(act.source_relations):
        def one(r=r):
            image = act.reduce(act.apply(r))
            if image.is_zero():
                return PASS, ""
            if presentation:
                return UNDECIDED, f"nonzero normal form: {image.render()}"
            return FAIL, f"nonzero model value: {image.render()}"

        report.run(f"hom[{i}]: {r.render()}", mode, one)
    return report


def extract_relations(act: ActionSpec, relation: Element, targets=None) -> list:
    """Coefficient extraction: expand the action on a source relation and
    return the target-side coefficient of each basis monomial of the source.

    The image lives in source (x) target; the source factor is reduced to its
    monomial basis first (via the per-factor ruleset, or exactly if the
    source factor is a graded model).  ``targets`` optionally restricts to a
    list of source basis monomials.
    """
    image = act.apply(relation)
    a_rules = act.rulesets[0]
    if a_rules is not None:
        image = reduce_tensor(image, (a_rules, None))
    amb = image.ambient
    assert isinstance(amb, TensorAlgebra)
    q_amb = amb.factors[1]
    buckets: dict = {}
    for (am, qm), c in image.t.items():
        buckets.setdefault(am, Element.zero(q_amb))._add_term(qm, c)
    if targets is not None:
        return [buckets.get(t, Element.zero(q_amb)) for t in targets]
    keys = sorted(buckets, key=_mono_key)
    return [buckets[k] for k in keys if not buckets[k].is_zero()]


def _mono_key(m):
    def k(x):
        if isinstance(x, tuple):
            return (len(x), tuple(k(y) for y in x))
        return x

    return k(m)


def monic(elem: Element) -> Element:
    """Scale so the term-order-leading coefficient is 1 (or -x to x form)."""
    if elem.is_zero():
        return elem
    lead = max(elem.t, key=_mono_key)
    c = elem.t[lead]
    if c.is_unit():
        return elem * c.inv()
    return elem


def canonical_set(elems) -> list:
    """Canonical multiset of relations: monic normalisation, rendered, sorted."""
    return sorted(monic(e).render() for e in elems if not e.is_zero())


def same_relation_set(got, expected) -> bool:
    return canonical_set(got) == canonical_set(expected)


def check_isometry(act: ActionSpec, laplacian, monomials, report: Report | None = None) -> Report:
    """Every source monomial in the image of an eigenvector has the same
    eigenvalue.  The source factor must be a graded model."""
    report = report or Report(f"isometry:{act.name}")
    amb = next(iter(act.table.values())).ambient
    a_amb = amb.factors[0]

    def alpha_power(name, k):
        base = act.table[name]
        if k < 0:
            base, k = base.star(), -k
        out = None
        for _ in range(k):
            out = base if out is None else out * base
        return out

    for mono in monomials:
        m, n = mono
        def one(m=m, n=n):
            ev = laplacian.eigenvalue((m, n))
            img = tensor(Element.unit(a_amb), Element.unit(a_amb))  # placeholder
            parts = []
            if m:
                parts.append(alpha_power(act.source.names[0], m))
            if n:
                parts.append(alpha_power(act.source.names[1], n))
            if not parts:
                return PASS, ""
            img = parts[0]
            for p in parts[1:]:
                img = img * p
            bad = []
            for (am, qm) in img.t:
                if laplacian.eigenvalue(a_amb.degree_vec(am)) != ev:
                    bad.append(a_amb.render_mono(am))
            if bad:
                return FAIL, f"eigenvalue not preserved on {bad}"
            return PASS, ""

        report.run(f"isometry[{m},{n}]", "model", one)
    return report


# ---------------------------------------------------------------------------
# Hopf axioms
# ---------------------------------------------------------------------------


def check_coassoc(P: CQGPresentation, cap: int | None = None, mode: str = "presentation",
                  report: Report | None = None) -> Report:
    """(Delta (x) id) Delta = (id (x) Delta) Delta on every generator."""
    report = report or Report(f"coassoc:{P.name}")
    if mode == "presentation":
        rules = P.rules(cap)
        rulesets3 = (rules, rules, rules)
    for g in P.algebra.names:
        def one(g=g):
            dg = P.coproduct[g]
            left = substitute_factors(dg, [P.coproduct, None])
            right = substitute_factors(dg, [None, P.coproduct])
            diff = left - right
            if mode == "model":
                diff = substitute_factors(diff, [P.model, P.model, P.model])
                if diff.is_zero():
                    return PASS, ""
                return FAIL, f"nonzero model value: {diff.render()}"
            nf = reduce_tensor(diff, rulesets3)
            if nf.is_zero():
                return PASS, ""
            return UNDECIDED, f"nonzero normal form: {nf.render()}"

        report.run(f"coassoc[{g}]", mode, one)
    return report


def counit_of_word(alg: FreeAlgebra, w, eps_table) -> Scalar:
    """epsilon extended as a *-homomorphism over a word."""
    out = Scalar.one()
    for let in w:
        gi, st = divmod(let, 2)
        v = eps_table[alg.names[gi]]
        out = out * (v.conj() if st else v)
    return out


def apply_counit_factor(elem: Element, eps_table, which: int) -> Element:
    """Collapse one tensor factor of  alg (x) alg  through the counit."""
    amb = elem.ambient
    assert isinstance(amb, TensorAlgebra) and len(amb.factors) == 2
    alg = amb.factors[which]
    keep = amb.factors[1 - which]
    out = Element.zero(keep)
    for (m0, m1), c in elem.t.items():
        w = (m0, m1)[which]
        kw = (m0, m1)[1 - which]
        out._add_term(kw, c * counit_of_word(alg, w, eps_table))
    return out


def apply_antipode_to_relation(r: Element, kappa_images: dict, target=None) -> Element:
    """kappa extended as a linear antihomomorphism: reverse each word and map
    letters through the table (starred letters to the starred image, which is
    valid when kappa squares to the identity); coefficients are untouched."""
    alg = r.ambient
    if target is None:
        target = next(iter(kappa_images.values())).ambient
    out = Element.zero(target)
    for w, c in r.t.items():
        acc = Element.unit(target) * c
        for let in reversed(w):
            gi, st = divmod(let, 2)
            name = alg.names[gi]
            if name not in kappa_images:
                raise MissingImage(name)
            img = kappa_images[name]
            acc = acc * (img.star() if st else img)
        out = out + acc
    return out


def check_counit_antipode(P: CQGPresentation, cap: int | None = None,
                          mode: str = "presentation", report: Report | None = None) -> Report:
    """Counit laws, antipode laws, and Hopf compatibility on relations."""
    report = report or Report(f"counit-antipode:{P.name}")
    rules = P.rules(cap) if mode == "presentation" else None

    def residue(elem: Element):
        """(zero?, detail) of a free element modulo relations / in model."""
        if mode == "model":
            val = P.in_model(elem)
            return val.is_zero(), val
        nf = rules.normal_form(elem)
        return nf.is_zero(), nf

    for g in P.algebra.names:
        def counit_law(g=g):
            dg = P.coproduct[g]
            lhs = apply_counit_factor(dg, P.counit, 0)
            rhs = apply_counit_factor(dg, P.counit, 1)
            ge = P.algebra.gen(g)
            okl, dl = residue(lhs - ge)
            okr, dr = residue(rhs - ge)
            if okl and okr:
                return PASS, ""
            st = FAIL if mode == "model" else UNDECIDED
            return st, f"left residue {dl.render()}, right residue {dr.render()}"

        report.run(f"counit[{g}]", mode, counit_law)

    if P.antipode is not None:
        for g in P.algebra.names:
            def antipode_law(g=g):
                dg = P.coproduct[g]
                lhs = Element.zero(P.algebra)
                rhs = Element.zero(P.algebra)
                for (w1, w2), c in dg.t.items():
                    k1 = apply_antipode_to_relation(
                        Element(P.algebra, {w1: Scalar.one()}), P.antipode, P.algebra
                    )
                    k2 = apply_antipode_to_relation(
                        Element(P.algebra, {w2: Scalar.one()}), P.antipode, P.algebra
                    )
                    # m(kappa (x) id) and m(id (x) kappa); kappa is conjugate
                    # linear on coefficients, so re-attach c carefully: the
                    # term c*(w1 (x) w2) contributes kappa(w1)*c*w2.
                    lhs = lhs + k1 * c * Element(P.algebra, {w2: Scalar.one()})
                    rhs = rhs + Element(P.algebra, {w1: Scalar.one()}) * c * k2
                target = Element.unit(P.algebra) * P.counit[g]
                okl, dl = residue(lhs - target)
                okr, dr = residue(rhs - target)
                if okl and okr:
                    return PASS, ""
                st = FAIL if mode == "model" else UNDECIDED
                return st, f"left residue {dl.render()}, right residue {dr.render()}"

            report.run(f"antipode[{g}]", mode, antipode_law)

    for i, r in enumerate(P.relations):
        def eps_kills(r=r):
            v = Scalar.zero()
            for w, c in r.t.items():
                v = v + c * counit_of_word(P.algebra, w, P.counit)
            return (PASS, "") if v.is_zero() else (FAIL, f"epsilon(relation) = {v.render()}")

        report.run(f"counit-kills-relation[{i}]", "presentation", eps_kills)

    if P.antipode is not None:
        for i, r in enumerate(P.relations):
            def kappa_preserves(r=r):
                img = apply_antipode_to_relation(r, P.antipode, P.algebra)
                ok, d = residue(img)
                if ok:
                    return PASS, ""
                st = FAIL if mode == "model" else UNDECIDED
                return st, f"kappa image residue {d.render()}"

            report.run(f"antipode-preserves-relation[{i}]", mode, kappa_preserves)
    return report


# ---------------------------------------------------------------------------
# counit solving (for presentations whose table is not given)
# ---------------------------------------------------------------------------


def _scalar_coords(scalars):
    """Decompose Scalars into exact rational coordinate vectors on a common
    basis of (formal exponent, cyclotomic power-basis index) pairs."""
    # common cyclotomic conductor
    ns = [1]
    for s in scalars:
        for cy in s.terms.values():
            ns.append(cy.n)
    N = 1
    for n in ns:
        g = _gcd(N, n)
        N = N // g * n
    keys = []
    seen = {}
    rows = []
    for s in scalars:
        row = {}
        for expo, cy in s.terms.items():
            for i, v in enumerate(cy._to(N)):
                if v:
                    key = (expo, i)
                    if key not in seen:
                        seen[key] = len(keys)
                        keys.append(key)
                    row[seen[key]] = row.get(seen[key], Frac(0)) + v
        rows.append(row)
    return [[row.get(j, Frac(0)) for j in range(len(keys))] for row in rows]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _solve_rational(rows, rhs):
    """Gaussian elimination over Fractions.  Returns (solution, unique) or
    raises ValueError when inconsistent."""
    m = [list(r) + [v] for r, v in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    for i in range(r, len(m)):
        if m[i][-1] != 0:
            raise ValueError("inconsistent counit system")
    unique = len(pivots) == ncols
    sol = [Frac(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = m[i][-1]
    return sol, unique


def solve_counit(P: CQGPresentation, cap: int) -> dict:
    """Solve (epsilon (x) id) Delta(g) = g for rational counit values.

    Epsilon is posed as a multiplicative *-functional with one rational
    unknown per generator (so epsilon(word) is a product of the unknowns);
    the resulting polynomial system is solved exactly and a unique real
    rational solution is required.
    """
    import sympy

    alg = P.algebra
    rules = P.rules(cap)
    syms = {n: sympy.Symbol(f"eps_{n}", real=True) for n in alg.names}

    def word_value(w):
        out = sympy.Integer(1)
        for let in w:
            out *= syms[alg.names[let // 2]]  # rational values are self-conjugate
        return out

    equations = []
    for g in alg.names:
        dg = P.coproduct[g]
        per_mono: dict = {}
        for (w1, w2), c in dg.t.items():
            if not c.is_rational():
                raise CounitSolveError("non-rational coproduct coefficient")
            nf2 = rules.normal_form(Element(alg, {w2: c}))
            for m, cc in nf2.t.items():
                per_mono[m] = per_mono.get(m, sympy.Integer(0)) + sympy.Rational(
                    cc.rational_value()
                ) * word_value(w1)
        nfg = rules.normal_form(alg.gen(g))
        for m in set(per_mono) | set(nfg.t):
            rhs = nfg.coeff(m)
            if not rhs.is_rational():
                raise CounitSolveError("non-rational generator normal form")
            equations.append(sympy.Eq(per_mono.get(m, sympy.Integer(0)),
                                      sympy.Rational(rhs.rational_value())))
    sols = sympy.solve(equations, list(syms.values()), dict=True)
    sols = [s for s in sols if all(v.is_rational for v in s.values())]
    if len(sols) != 1 or any(len(s) != len(syms) for s in sols):
        raise CounitSolveError(f"counit system has {len(sols)} rational solutions")
    sol = sols[0]
    return {n: Scalar.rational(Frac(int(sympy.fraction(sol[syms[n]])[0]),
                                    int(sympy.fraction(sol[syms[n]])[1])))
            for n in alg.names}


# ---------------------------------------------------------------------------
# matrices, morphisms, quotients
# ---------------------------------------------------------------------------


def check_unitary_matrix(M, report: Report | None = None, rules: RuleSet | None = None,
                         name: str = "matrix") -> Report:
    """All entries of MM* - I and M*M - I vanish (exactly, or modulo rules)."""
    report = report or Report(f"unitary:{name}")
    n = len(M)
    amb = M[0][0].ambient
    one = Element.unit(amb)
    mode = "model" if rules is None else "presentation"
    for i in range(n):
        for j in range(n):
            def entry(i=i, j=j):
                lhs = Element.zero(amb)
                rhs = Element.zero(amb)
                for k in range(n):
                    lhs = lhs + M[i][k] * M[j][k].star()
                    rhs = rhs + M[k][i].star() * M[k][j]
                delta = one if i == j else Element.zero(amb)
                d1, d2 = lhs - delta, rhs - delta
                if rules is not None:
                    d1, d2 = rules.normal_form(d1), rules.normal_form(d2)
                if d1.is_zero() and d2.is_zero():
                    return PASS, ""
                st = FAIL if rules is None else UNDECIDED
                return st, f"MM*[{i}{j}]: {d1.render()}; M*M[{i}{j}]: {d2.render()}"

            report.run(f"{name}[{i},{j}]", mode, entry)
    return report


def check_morphism(phi: dict, src: CQGPresentation, src_action: ActionSpec | None = None,
                   tgt_action: ActionSpec | None = None, tgt_rules: RuleSet | None = None,
                   report: Report | None = None) -> Report:
    """phi kills source relations and intertwines the actions."""
    report = report or Report(f"morphism:{src.name}")
    mode = "model" if tgt_rules is None else "presentation"
    for i, r in enumerate(src.relations):
        def rel(r=r):
            img = substitute(r, phi)
            if tgt_rules is not None:
                img = tgt_rules.normal_form(img)
            if img.is_zero():
                return PASS, ""
            st = FAIL if tgt_rules is None else UNDECIDED
            return st, f"relation image {img.render()}"

        report.run(f"morphism-relation[{i}]", mode, rel)
    if src_action is not None and tgt_action is not None:
        for g in src_action.source.names:
            def intertwine(g=g):
                lhs = substitute_factors(src_action.table[g], [None, phi])
                rhs = tgt_action.table[g]
                d = tgt_action.reduce(lhs - rhs)
                if d.is_zero():
                    return PASS, ""
                st = FAIL if all(x is None for x in tgt_action.rulesets) else UNDECIDED
                return st, f"difference {d.render()}"

            report.run(f"morphism-intertwines[{g}]", mode, intertwine)
    return report


def hopf_quotient(P: CQGPresentation, killed, rename: dict | None = None) -> CQGPresentation:
    """Quotient by the ideal generated by ``killed`` generators.

    Verifies the coproduct descends: every term of Delta(killed generator)
    must contain a killed letter in one of its tensor legs.  Raises
    :class:`NotHopfIdeal` otherwise.
    """
    alg = P.algebra
    killed = set(killed)
    survivors = [n for n in alg.names if n not in killed]
    rename = rename or {}
    new_names = [rename.get(n, n) for n in survivors]
    new_alg = FreeAlgebra(new_names, selfadjoint={rename.get(n, n) for n in alg.selfadjoint if n not in killed})

    def word_hits_killed(w):
        return any(alg.names[let // 2] in killed for let in w)

    for g in killed:
        for (w1, w2), _c in P.coproduct[g].t.items():
            if not (word_hits_killed(w1) or word_hits_killed(w2)):
                raise NotHopfIdeal(
                    f"Delta({g}) has the killed-letter-free term "
                    f"{alg.render_mono(w1)} (x) {alg.render_mono(w2)}"
                )

    images = {}
    for n in alg.names:
        images[n] = Element.zero(new_alg) if n in killed else new_alg.gen(rename.get(n, n))

    relations = []
    for r in P.relations:
        img = substitute(r, images, target=new_alg)
        if not img.is_zero():
            relations.append(img)

    coproduct = {}
    for n in survivors:
        coproduct[rename.get(n, n)] = substitute_factors(P.coproduct[n], [images, images])
    counit = (
        {rename.get(n, n): P.counit[n] for n in survivors} if P.counit else None
    )
    antipode = None
    if P.antipode is not None:
        antipode = {}
        for n in survivors:
            antipode[rename.get(n, n)] = substitute(P.antipode[n], images, target=new_alg)

    model = None
    model_ambient = None
    if P.model is not None and isinstance(P.model_ambient, DirectSum):
        killed_blocks = set()
        for g in killed:
            for (k, _e) in P.model[g].t:
                killed_blocks.add(k)
        keep = [k for k in range(len(P.model_ambient.blocks)) if k not in killed_blocks]
        model_ambient = DirectSum(
            [P.model_ambient.blocks[k] for k in keep],
            [P.model_ambient.block_names[k] for k in keep],
        )
        reindex = {k: i for i, k in enumerate(keep)}
        model = {}
        for n in survivors:
            e = Element.zero(model_ambient)
            for (k, expo), c in P.model[n].t.items():
                if k in reindex:
                    e._add_term((reindex[k], expo), c)
            model[rename.get(n, n)] = e
    return CQGPresentation(
        algebra=new_alg,
        relations=relations,
        coproduct=coproduct,
        counit=counit,
        antipode=antipode,
        model=model,
        model_ambient=model_ambient,
        name=f"{P.name}/({', '.join(sorted(killed))})",
    )


# ---------------------------------------------------------------------------
# deformed-action and two-sided-twist checks
# ---------------------------------------------------------------------------


def bullet_product(x: Element, y: Element, J, Jt) -> Element:
    """(a (x) q) bullet_J (b (x) r) = (a x_J b) (x) (q twisted by Jtilde r)."""
    amb = x.ambient
    a_amb, q_amb = amb.factors
    out = Element.zero(amb)
    for (a1, q1), c1 in x.t.items():
        p = a_amb.degree_vec(a1)
        bd1 = q_amb.bidegree(q1)
        for (a2, q2), c2 in y.t.items():
            c = (
                c1
                * c2
                * twist_phase(p, J, a_amb.degree_vec(a2))
                * twist_phase(bd1, Jt, q_amb.bidegree(q2))
            )
            for pc, pm in amb.mul_mono((a1, q1), (a2, q2)):
                out._add_term(pm, c * pc)
    return out


def check_deformed_hom(act: ActionSpec, J, degree_bound: int = 3,
                       report: Report | None = None) -> Report:
    """alpha(a) bullet_J alpha(b) = alpha(a x_J b) on all monomial pairs of
    componentwise degree <= degree_bound (model mode, exact)."""
    report = report or Report(f"deformed-hom:{act.name}")
    amb = next(iter(act.table.values())).ambient
    a_amb = amb.factors[0]
    Jt = j_double(J)

    pairs_checked = 0
    failures = []

    def alpha_of(m, n):
        out = Element.unit(a_amb)
        out = tensor(out, Element.unit(amb.factors[1]))
        for name, k in ((act.source.names[0], m), (act.source.names[1], n)):
            base = act.table[name]
            if k < 0:
                base, k = base.star(), -k
            for _ in range(k):
                out = out * base
        return out

    rng = range(-degree_bound, degree_bound + 1)
    monos = [(m, n) for m in rng for n in rng]
    t0 = time.monotonic()
    cache = {mn: alpha_of(*mn) for mn in monos}
    for (m1, n1) in monos:
        a = a_amb.monomial((m1, n1))
        aa = cache[(m1, n1)]
        for (m2, n2) in monos:
            b = a_amb.monomial((m2, n2))
            lhs = bullet_product(aa, cache[(m2, n2)], J, Jt)
            ab = rieffel_product(a, b, J)
            rhs = Element.zero(aa.ambient)
            for mono, c in ab.t.items():
                if mono not in cache:
                    cache[mono] = alpha_of(*mono)
                rhs = rhs + cache[mono] * c
            pairs_checked += 1
            if not (lhs - rhs).is_zero():
                failures.append(((m1, n1), (m2, n2)))
    dt = time.monotonic() - t0
    if failures:
        report.add(
            CheckResult(
                "deformed-hom", "model", FAIL,
                f"{len(failures)}/{pairs_checked} pairs differ, e.g. {failures[0]}", dt,
            )
        )
    else:
        report.add(
            CheckResult("deformed-hom", "model", PASS, f"{pairs_checked} monomial pairs", dt)
        )
    return report


def _mat_vec_left(v, J):
    """Coefficient vector of u in v . Ju, i.e. J^T v, as ThetaLin entries."""
    n = len(J)
    out = []
    for i in range(n):
        acc = ThetaLin(0, 0)
        for k in range(n):
            if v[k]:
                acc = acc + J[k][i] * v[k]
        out.append(acc)
    return out


def _chi(amb, m, side):
    bd = amb.bidegree(m)
    half = len(bd) // 2
    return bd[:half] if side == 0 else bd[half:]


def odot(x: Element, y: Element, J) -> Element:
    """The quantum-group twisted product: rieffel product for Jtilde on the
    bidegree grading."""
    return rieffel_product(x, y, j_double(J), grading=x.ambient.bidegree)


def check_twist_identities(act: ActionSpec, J, degree_bound: int = 2,
                      report: Report | None = None) -> Report:
    """Convolution/twist identities on bihomogeneous monomials.

    All oscillatory integrals are replaced by their exact phase-collapse
    values  int int e(c1.u + c2.v + u.v) du dv = e(-c1.c2).
    """
    report = report or Report("twist-identities")
    amb = next(iter(act.table.values())).ambient
    a_amb, q_amb = amb.factors
    Jt = j_double(J)

    def alpha_of(m, n):
        out = tensor(Element.unit(a_amb), Element.unit(q_amb))
        for name, k in ((act.source.names[0], m), (act.source.names[1], n)):
            base = act.table[name]
            if k < 0:
                base, k = base.star(), -k
            for _ in range(k):
                out = out * base
        return out

    rng = range(-degree_bound, degree_bound + 1)
    monos = [(m, n) for m in rng for n in rng]
    alpha_cache = {mn: alpha_of(*mn) for mn in monos}
    q_monos = set()
    for mn in monos:
        for (_am, qm) in alpha_cache[mn].t:
            q_monos.add(qm)
    q_monos = sorted(q_monos, key=_mono_key)

    def twist_interchange():
        # int (Omega(Ju) conv x) odot (Omega(v) conv y) e(u.v)
        #   = int (x conv Omega(Ju)) (y conv Omega(v)) e(u.v)
        for mx in q_monos:
            x = Element(q_amb, {mx: Scalar.one()})
            for my in q_monos:
                y = Element(q_amb, {my: Scalar.one()})
                lhs = odot(x, y, J) * collapse_phase(
                    _mat_vec_left(_chi(q_amb, mx, 0), J), _chi(q_amb, my, 0)
                )
                rhs = (x * y) * collapse_phase(
                    _mat_vec_left(_chi(q_amb, mx, 1), J), _chi(q_amb, my, 1)
                )
                if not (lhs - rhs).is_zero():
                    return FAIL, f"pair {q_amb.render_mono(mx)}, {q_amb.render_mono(my)}"
        return PASS, f"{len(q_monos) ** 2} bihomogeneous pairs"

    def right_character_grading():
        # alpha(alpha_u(a)) = a_(1) (x) (id (x) Omega(u)) Delta(a_(2)):
        # per term of alpha(a), the right character of the quantum-group leg
        # must equal the torus degree of a.
        for (m, n) in monos:
            for (_am, qm) in alpha_cache[(m, n)].t:
                if tuple(_chi(q_amb, qm, 1)) != (m, n):
                    return FAIL, f"term of alpha({m},{n}) has right character {_chi(q_amb, qm, 1)}"
        return PASS, f"{len(monos)} monomials"

    def action_of_deformed_product():
        # alpha(a x_J b) = a1 b1 (x) int (a2 conv Omega(Ju)) (b2 conv Omega(v)) e(u.v)
        for (m1, n1) in monos:
            a = a_amb.monomial((m1, n1))
            for (m2, n2) in monos:
                b = a_amb.monomial((m2, n2))
                ab = rieffel_product(a, b, J)
                lhs = Element.zero(alpha_cache[(0, 0)].ambient)
                for mono, c in ab.t.items():
                    if mono not in alpha_cache:
                        alpha_cache[mono] = alpha_of(*mono)
                    lhs = lhs + alpha_cache[mono] * c
                rhs = Element.zero(lhs.ambient)
                for (am1, qm1), c1 in alpha_cache[(m1, n1)].t.items():
                    for (am2, qm2), c2 in alpha_cache[(m2, n2)].t.items():
                        ph = collapse_phase(
                            _mat_vec_left(_chi(q_amb, qm1, 1), J), _chi(q_amb, qm2, 1)
                        )
                        term = tensor(
                            Element(a_amb, {am1: Scalar.one()}) * Element(a_amb, {am2: Scalar.one()}),
                            Element(q_amb, {qm1: Scalar.one()}) * Element(q_amb, {qm2: Scalar.one()}),
                        )
                        rhs = rhs + term * (c1 * c2 * ph)
                if not (lhs - rhs).is_zero():
                    return FAIL, f"pair {(m1, n1)}, {(m2, n2)}"
        return PASS, f"{len(monos) ** 2} pairs"

    def deformed_product_of_action():
        # alpha(a) bullet_J alpha(b)
        #   = a1 b1 (x) int (Omega(Ju) conv a2) odot (Omega(v) conv b2) e(u.v)
        for (m1, n1) in monos:
            for (m2, n2) in monos:
                lhs = bullet_product(alpha_cache[(m1, n1)], alpha_cache[(m2, n2)], J, Jt)
                rhs = Element.zero(lhs.ambient)
                for (am1, qm1), c1 in alpha_cache[(m1, n1)].t.items():
                    x1 = Element(q_amb, {qm1: Scalar.one()})
                    for (am2, qm2), c2 in alpha_cache[(m2, n2)].t.items():
                        ph = collapse_phase(
                            _mat_vec_left(_chi(q_amb, qm1, 0), J), _chi(q_amb, qm2, 0)
                        )
                        term = tensor(
                            Element(a_amb, {am1: Scalar.one()}) * Element(a_amb, {am2: Scalar.one()}),
                            odot(x1, Element(q_amb, {qm2: Scalar.one()}), J),
                        )
                        rhs = rhs + term * (c1 * c2 * ph)
                if not (lhs - rhs).is_zero():
                    return FAIL, f"pair {(m1, n1)}, {(m2, n2)}"
        return PASS, f"{len(monos) ** 2} pairs"

    report.run("twist-interchange", "model", twist_interchange)
    report.run("right-character-grading", "model", right_character_grading)
    report.run("action-of-deformed-product", "model", action_of_deformed_product)
    report.run("deformed-product-of-action", "model", deformed_product_of_action)
    return report


# ---------------------------------------------------------------------------
# Haar functional
# ---------------------------------------------------------------------------


def haar(x: Element, weights) -> Scalar:
    """Weighted degree-zero coefficient over the blocks of a direct sum."""
    assert sum(weights) == 1, "weights must sum to 1"
    return tau(x, weights)


def check_haar_twist_invariance(model_ambient: DirectSum, weights, J,
                                degree_bound: int = 3, report: Report | None = None) -> Report:
    """h(a x_Jtilde b) = h(ab) on all monomial pairs of degree <= bound, and
    the two-sided torus action fixes h symbolically."""
    report = report or Report("haar-twist")
    Jt = j_double(J)

    monos = []
    for k, blk in enumerate(model_ambient.blocks):
        rng = range(-degree_bound, degree_bound + 1)
        monos.extend((k, (m, n)) for m in rng for n in rng)

    def twist(m1, m2):
        return twist_phase(
            model_ambient.bidegree(m1), Jt, model_ambient.bidegree(m2)
        )

    def invariance():
        count = 0
        for m1 in monos:
            a = Element(model_ambient, {m1: Scalar.one()})
            for m2 in monos:
                if m1[0] != m2[0]:
                    continue  # cross-block products vanish on both sides
                b = Element(model_ambient, {m2: Scalar.one()})
                ab = a * b
                lhs = haar(ab * twist(m1, m2), weights)
                rhs = haar(ab, weights)
                count += 1
                if not (lhs - rhs).is_zero():
                    return FAIL, f"pair {m1}, {m2}"
        return PASS, f"{count} same-block monomial pairs"

    def action_invariance():
        # lambda_(s,u) multiplies a bihomogeneous monomial by a phase that is
        # 1 whenever the degree-zero coefficient survives.
        for m in monos:
            k, e = m
            if any(e):
                continue
            bd = model_ambient.bidegree(m)
            if any(bd):
                return FAIL, f"degree-zero monomial {m} has nonzero bidegree {bd}"
        return PASS, "h(lambda_(s,u)(x)) = h(x) on all monomials"

    report.run("haar-twist-invariance", "model", invariance)
    report.run("haar-action-invariance", "model", action_invariance)
    return report


def solve_haar_weights(P: CQGPresentation, degree: int = 2, theta_sample: float = 0.2357022603955158,
                       extra_words=()):
    """Solve the right-invariance equations (id (x) h) Delta(x) = h(x) 1 for
    per-block weights over words of length <= ``degree`` in the generators.

    The linear system is assembled exactly; a numerical evaluation at a
    generic parameter value determines the solution-space dimension, and the
    returned candidate is then verified exactly against every equation.
    Returns (weights, unique).
    """
    import numpy as np

    ds = P.model_ambient
    assert isinstance(ds, DirectSum)
    nblocks = len(ds.blocks)
    alg = P.algebra
    delta_images = {
        n: substitute_factors(d, [P.model, P.model]) for n, d in P.coproduct.items()
    }

    letters = [alg.gen(n) for n in alg.names] + [alg.gen(n, star=True) for n in alg.names if n not in alg.selfadjoint]
    words = [Element.unit(alg)]
    frontier = [Element.unit(alg)]
    for _ in range(degree):
        frontier = [w * l for w in frontier for l in letters]
        words.extend(frontier)
    words.extend(extra_words)

    # linear forms in the weights: list of (dict block -> Scalar, Scalar const)
    forms = []
    for w in words:
        x_model = substitute(w, P.model)
        dx = substitute(w, delta_images)
        # (id (x) h_w) dx  as  sum over blocks of w_k * (partial element)
        lhs_by_block = {k: Element.zero(ds) for k in range(nblocks)}
        for (m1, m2), c in dx.t.items():
            k2, e2 = m2
            if any(e2):
                continue
            lhs_by_block[k2]._add_term(m1, c)
        # h_w(x) * 1 = sum_k w_k tau_k(x) * (sum_j unit_j)
        tau_by_block = {k: Scalar.zero() for k in range(nblocks)}
        for (k, e), c in x_model.t.items():
            if not any(e):
                tau_by_block[k] = tau_by_block[k] + c
        # coefficientwise equations over all model monomials that occur
        support = set()
        for k in range(nblocks):
            support.update(lhs_by_block[k].t)
        for j in range(nblocks):
            support.add((j, (0,) * ds.blocks[j].d))
        for mono in support:
            coeffs = {}
            for k in range(nblocks):
                c = lhs_by_block[k].coeff(mono)
                mk, me = mono
                if not any(me):
                    # subtract h(x)*1 contribution on the unit of block mk
                    c = c - tau_by_block[k]
                if not c.is_zero():
                    coeffs[k] = c
            if coeffs:
                forms.append(coeffs)
    # normalisation
    rows = []
    for coeffs in forms:
        rows.append([coeffs.get(k, Scalar.zero()) for k in range(nblocks)])
    A = np.array(
        [[c.numeric(theta_sample) for c in row] for row in rows] + [[1.0] * nblocks],
        dtype=complex,
    )
    b = np.zeros(len(rows) + 1, dtype=complex)
    b[-1] = 1.0
    sol, _res, rank, _sv = np.linalg.lstsq(A, b, rcond=None)
    unique = rank == nblocks
    # snap to rationals with small denominators and verify exactly
    cand = [Frac(round(float(sol[k].real) * 10080), 10080) for k in range(nblocks)]
    ok = sum(cand) == 1
    if ok:
        for coeffs in forms:
            acc = Scalar.zero()
            for k, c in coeffs.items():
                acc = acc + c * Scalar.rational(cand[k])
            if not acc.is_zero():
                ok = False
                break
    if not ok:
        raise ValueError("invariance system has no exactly verifiable rational solution")
    return cand, unique
