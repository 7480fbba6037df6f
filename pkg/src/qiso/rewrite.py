"""Degree-capped completion and normal forms in free *-algebras.

Relations are oriented into rewrite rules  lhs -> rhs  by the graded-
lexicographic term order of the algebra, then completed by resolving overlap
and inclusion ambiguities up to a degree cap.  Normal forms of words of
length <= cap are then canonical; ideal membership is decided by reduction to
zero and certified by an explicit combination

    p = sum_i  c_i * u_i * r_{k_i} * v_i

over the *input* relations, which is re-expanded and checked before a YES is
returned.  A nonzero normal form only ever yields UNDECIDED (the cap may be
too small), never a NO.
"""

from __future__ import annotations

import heapq

from .freealg import Element, FreeAlgebra, TensorAlgebra
from .scalars import Scalar

YES = "YES"
UNDECIDED = "UNDECIDED"


class DegreeOverflow(Exception):
    """An input exceeds the degree cap of the rewriting system."""


class NonUnitLeadCoefficient(Exception):
    """Completion produced a relation whose leading coefficient is not invertible."""


class Rule:
    __slots__ = ("lhs", "rhs", "rep")

    def __init__(self, lhs, rhs: Element, rep):
        self.lhs = lhs  # word
        self.rhs = rhs  # Element with monomials < lhs
        self.rep = rep  # [(Scalar, u, rel_index, v)] with lhs - rhs = sum c*u*r*v

    def poly(self, alg) -> Element:
        return Element(alg, {self.lhs: Scalar.one()}) - self.rhs


class RuleSet:
    """A completed, degree-capped rewriting system."""

    def __init__(self, algebra: FreeAlgebra, relations, cap: int, track=True):
        self.algebra = algebra
        self.relations = list(relations)
        self.cap = cap
        self.track = track
        self.rules: list[Rule] = []
        self.capped = False  # ambiguities above the cap were skipped
        self._index: dict[int, list[Rule]] = {}
        self._complete()

    # -- construction ---------------------------------------------------------
    def _add_rule(self, rule: Rule):
        self.rules.append(rule)
        self._index.setdefault(rule.lhs[0], []).append(rule)

    def _complete(self):
        alg = self.algebra
        counter = 0
        queue: list = []

        def push(elem, rep):
            nonlocal counter
            if elem.is_zero():
                return
            lead = max(elem.t, key=alg.order_key)
            heapq.heappush(queue, (alg.order_key(lead), counter, elem, rep))
            counter += 1

        for i, r in enumerate(self.relations):
            if r.deg() > self.cap:
                raise DegreeOverflow(f"relation of degree {r.deg()} exceeds cap {self.cap}")
            rep = [(Scalar.one(), (), i, ())] if self.track else None
            push(r, rep)

        while queue:
            _, _, elem, rep = heapq.heappop(queue)
            # rep represents elem itself; _reduce appends entries representing
            # the removed part, so the reduced element is rep minus the delta
            elem, delta = self._reduce(elem, [] if self.track else None)
            if self.track:
                rep = rep + [(-s, u, k, v) for s, u, k, v in delta]
            if elem.is_zero():
                continue
            lead = max(elem.t, key=alg.order_key)
            c = elem.t[lead]
            if not c.is_unit():
                raise NonUnitLeadCoefficient(
                    f"leading coefficient {c.render()} of {elem.render()} is not a unit"
                )
            ci = c.inv()
            rhs = -(elem - Element(alg, {lead: c})) * ci
            new_rep = (
                [(ci * s, u, k, v) for s, u, k, v in rep] if self.track else None
            )
            rule = Rule(lead, rhs, new_rep)
            # resolve ambiguities against all rules (including itself)
            self._add_rule(rule)
            for other in self.rules:
                for elem2, rep2 in self._ambiguities(rule, other):
                    push(elem2, rep2)
                if other is not rule:
                    for elem2, rep2 in self._ambiguities(other, rule):
                        push(elem2, rep2)

    def _ambiguities(self, r1: Rule, r2: Rule):
        """S-elements from overlaps (suffix of r1.lhs = prefix of r2.lhs) and
        inclusions (r2.lhs inside r1.lhs)."""
        alg = self.algebra
        l1, l2 = r1.lhs, r2.lhs
        out = []

        def s_overlap(x, y):
            # word l1 + y == x + l2:  r1 gives rhs1.y, r2 gives x.rhs2
            d = _mul_word(r1.rhs, (), y, alg) - _mul_word(r2.rhs, x, (), alg)
            if self.track:
                rep = [(-s, u, k, v + y) for s, u, k, v in r1.rep] + [
                    (s, x + u, k, v) for s, u, k, v in r2.rep
                ]
            else:
                rep = None
            return d, rep

        def s_inclusion(x, y):
            # word l1 == x + l2 + y:  r1 gives rhs1, r2 gives x.rhs2.y
            d = r1.rhs - _mul_word(r2.rhs, x, y, alg)
            if self.track:
                rep = [(-s, u, k, v) for s, u, k, v in r1.rep] + [
                    (s, x + u, k, v + y) for s, u, k, v in r2.rep
                ]
            else:
                rep = None
            return d, rep

        # proper overlaps: l1 = x + o, l2 = o + y with 0 < len(o) < min lens
        for olen in range(1, min(len(l1), len(l2))):
            if l1[len(l1) - olen :] == l2[:olen]:
                x = l1[: len(l1) - olen]
                y = l2[olen:]
                if len(l1) + len(y) <= self.cap:
                    out.append(s_overlap(x, y))
                else:
                    self.capped = True
        # inclusions: l2 occurs inside l1 (or distinct rules with equal lhs)
        if len(l2) < len(l1):
            for i in range(len(l1) - len(l2) + 1):
                if l1[i : i + len(l2)] == l2:
                    out.append(s_inclusion(l1[:i], l1[i + len(l2) :]))
        elif l1 == l2 and r1 is not r2:
            out.append(s_inclusion((), ()))
        return out

    # -- reduction -----------------------------------------------------------
    def _find(self, w):
        for i in range(len(w)):
            for rule in self._index.get(w[i], ()):
                L = len(rule.lhs)
                if w[i : i + L] == rule.lhs:
                    return i, rule
        return None

    def _reduce(self, elem: Element, rep):
        """Fully reduce an element; extends rep so that
        original = reduced + sum(rep applied to relations)."""
        alg = self.algebra
        work = list(elem.t.items())
        done = Element.zero(alg)
        rep = list(rep) if rep is not None else None
        while work:
            w, c = work.pop()
            hit = self._find(w)
            if hit is None:
                done._add_term(w, c)
                continue
            i, rule = hit
            u, v = w[:i], w[i + len(rule.lhs) :]
            repl = _mul_word(rule.rhs, u, v, alg) * c
            if rep is not None:
                rep.extend((c * s, u + ru, k, rv + v) for s, ru, k, rv in rule.rep)
            for m2, c2 in repl.t.items():
                work.append((m2, c2))
        # consolidate duplicates collected through work list
        out = Element.zero(alg)
        for m, c in done.t.items():
            out._add_term(m, c)
        return out, rep

    # -- public API -------------------------------------------------------------
    def normal_form(self, elem: Element, with_cert=False):
        if elem.deg() > self.cap:
            raise DegreeOverflow(
                f"degree {elem.deg()} input exceeds rewriting cap {self.cap}"
            )
        nf, rep = self._reduce(elem, [] if with_cert else None)
        if with_cert:
            return nf, rep
        return nf

    def is_confluent_for(self, deg: int) -> bool:
        """All ambiguities among words of length <= deg were resolved."""
        return deg <= self.cap and not self.capped


def _mul_word(elem: Element, u, v, alg) -> Element:
    if not u and not v:
        return elem
    return Element(alg, {u + m + v: c for m, c in elem.t.items()})


class Membership:
    def __init__(self, status, certificate=None):
        self.status = status
        self.certificate = certificate  # [(Scalar, u, rel_idx, v)]

    def __repr__(self):
        return f"Membership({self.status})"


def ideal_member(p: Element, relations, cap: int, rules: RuleSet | None = None) -> Membership:
    """Two-sided ideal membership with verified certificates.

    Returns YES with a certificate expressing p as a combination of the
    relations (checked by re-expansion), or UNDECIDED if the normal form at
    this cap is nonzero.
    """
    if rules is None:
        rules = RuleSet(p.ambient, relations, cap, track=True)
    nf, cert = rules.normal_form(p, with_cert=True)
    if not nf.is_zero():
        return Membership(UNDECIDED)
    if not verify_certificate(p, rules.relations, cert):
        raise AssertionError("internal error: certificate failed re-expansion")
    return Membership(YES, cert)


def verify_certificate(p: Element, relations, cert) -> bool:
    """Re-expand sum c*u*r*v and compare with p."""
    alg = p.ambient
    acc = Element.zero(alg)
    for c, u, k, v in cert:
        acc = acc + _mul_word(relations[k], u, v, alg) * c
    return (acc - p).is_zero()


def render_certificate(relations, cert, alg) -> str:
    parts = []
    for c, u, k, v in cert:
        piece = f"r{k}"
        if u:
            piece = f"{alg.render_mono(u)} . {piece}"
        if v:
            piece = f"{piece} . {alg.render_mono(v)}"
        cs = c.render()
        parts.append(piece if cs == "1" else f"({cs}) {piece}")
    return " + ".join(parts) if parts else "0"


def reduce_tensor(elem: Element, rulesets) -> Element:
    """Reduce each tensor factor of an element by its own rewriting system.

    ``rulesets`` is one RuleSet (or None) per tensor factor.  This computes
    normal forms modulo the ideal generated by the per-factor relations.
    """
    amb = elem.ambient
    assert isinstance(amb, TensorAlgebra)
    out = Element.zero(amb)
    for mono, c in elem.t.items():
        pieces = [(c, ())]
        for f, rs, w in zip(amb.factors, rulesets, mono):
            if rs is None:
                pieces = [(pc, pm + (w,)) for pc, pm in pieces]
                continue
            nf = rs.normal_form(Element(f, {w: Scalar.one()}))
            pieces = [
                (pc * nc, pm + (nm,)) for pc, pm in pieces for nm, nc in nf.t.items()
            ]
        for pc, pm in pieces:
            out._add_term(pm, pc)
    return out
