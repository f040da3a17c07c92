"""Strong Gröbner bases of submodules of A^r, A = k[X], k a field, ZZ or ZZ/m.

Vectors are dicts ``{(position, exponent): coeff}``; an ideal is the case
r = 1.  Every basis element carries its representation in the input
generators so that membership answers and syzygies come with cofactors.

Over ZZ and ZZ/m the basis is *strong*: every leading term of the module is
divisible, as a term, by the leading term of some basis element.  The pair
set therefore contains S-polynomials, gcd (G-)polynomials when neither
leading coefficient divides the other, and annihilator polynomials
ann(lc(g)) * g when k has zero divisors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .orders import MonomialOrder
from .ring import BaseRing


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _sub_exp(a, b):
    return tuple(x - y for x, y in zip(a, b))


def axpy(R: BaseRing, target: dict, src: dict, shift, c) -> None:
    """target += c * X^shift * src, in place; keys are (pos, exp)."""
    finite = R.is_finite
    m = R.modulus
    for (pos, exp), a in src.items():
        key = (pos, tuple(x + y for x, y in zip(exp, shift)))
        v = target.get(key, 0) + a * c
        if finite:
            v %= m
        if v == 0:
            target.pop(key, None)
        else:
            target[key] = v


def paxpy(R: BaseRing, target: dict, src: dict, shift, c) -> None:
    """Same as axpy for plain polynomial dicts keyed by exponent."""
    finite = R.is_finite
    m = R.modulus
    for exp, a in src.items():
        key = tuple(x + y for x, y in zip(exp, shift))
        v = target.get(key, 0) + a * c
        if finite:
            v %= m
        if v == 0:
            target.pop(key, None)
        else:
            target[key] = v


def pmul(R: BaseRing, a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        paxpy(R, out, b, ea, ca)
    return out


@dataclass
class Elem:
    vec: dict
    lt: tuple  # (pos, exp)
    lc: object
    rep: list | None  # polynomial dicts, one per input generator


class Engine:
    def __init__(self, R: BaseRing, nvars: int, order: MonomialOrder, pot: bool = True, track: bool = True):
        self.R = R
        self.nvars = nvars
        self.order = order
        self.pot = pot
        self.track = track
        self.zero_exp = (0,) * nvars
        self._keys: dict = {}
        self.elems: list[Elem] = []
        self.inputs: list[dict] = []

    # -- term order ------------------------------------------------------
    def tkey(self, t):
        k = self._keys.get(t)
        if k is None:
            mk = self.order.key(t[1])
            k = (-t[0], mk) if self.pot else (mk, -t[0])
            self._keys[t] = k
        return k

    def leading(self, vec: dict):
        return max(vec, key=self.tkey)

    def _make(self, vec: dict, rep) -> Elem:
        lt = self.leading(vec)
        R = self.R
        u = R.unit_normal(vec[lt])
        if u != R.one():
            vec = {t: R.mul(c, u) for t, c in vec.items()}
            if rep is not None:
                rep = [{e: R.mul(c, u) for e, c in p.items()} for p in rep]
        return Elem(vec, lt, vec[lt], rep)

    # -- reduction -------------------------------------------------------
    def reduce(self, vec: dict, basis: list[Elem] | None = None, full: bool = True):
        """Strong division of vec by basis.  Returns (remainder, cofactors)
        where cofactors maps basis index -> polynomial dict and
        vec == sum cof[i]*basis[i] + remainder."""
        R = self.R
        basis = self.elems if basis is None else basis
        p = dict(vec)
        rem: dict = {}
        cof: dict = {}
        while p:
            t = max(p, key=self.tkey)
            c = p[t]
            pos, exp = t
            exact = None
            best = None
            best_size = None
            for idx, g in enumerate(basis):
                gpos, gexp = g.lt
                if gpos != pos or not _divides(gexp, exp):
                    continue
                q = R.divide(c, g.lc)
                if q is not None:
                    exact = (idx, q)
                    break
                size = R.ideal_size(g.lc)
                if best is None or size < best_size:
                    best, best_size = idx, size
            if exact is not None:
                idx, q = exact
            elif best is not None:
                idx = best
                q, _ = R.divmod(c, basis[idx].lc)
            else:
                idx, q = None, 0
            if idx is not None and q != 0:
                g = basis[idx]
                shift = _sub_exp(exp, g.lt[1])
                axpy(R, p, g.vec, shift, R.neg(q))
                d = cof.setdefault(idx, {})
                d[shift] = R.add(d.get(shift, R.zero()), q)
                if d[shift] == 0:
                    del d[shift]
            if t in p:
                rem[t] = p.pop(t)
                if not full:
                    rem.update(p)
                    break
        return rem, cof

    def combine_rep(self, base_rep: list, cof: dict, basis: list[Elem] | None = None) -> list:
        """base_rep - sum cof[i] * rep(basis[i])."""
        R = self.R
        basis = self.elems if basis is None else basis
        out = [dict(p) for p in base_rep]
        minus_one = R.neg(R.one())
        for idx, poly in cof.items():
            rep = basis[idx].rep
            for exp, c in poly.items():
                cc = R.mul(c, minus_one)
                for i, rp in enumerate(rep):
                    if rp:
                        paxpy(R, out[i], rp, exp, cc)
        return out

    # -- pair polynomials ------------------------------------------------
    def _pair_vectors(self, i: int, j: int):
        """S- and G-polynomials of basis elements i, j with their
        representations as (coeff_i, shift_i, coeff_j, shift_j) combos."""
        R = self.R
        gi, gj = self.elems[i], self.elems[j]
        if gi.lt[0] != gj.lt[0]:
            return []
        L = _lcm(gi.lt[1], gj.lt[1])
        si, sj = _sub_exp(L, gi.lt[1]), _sub_exp(L, gj.lt[1])
        out = []
        lc = R.lcm_cofactors(gi.lc, gj.lc)
        if lc is not None:
            _, a, b = lc
            out.append(((a, si), (R.neg(b), sj)))
        if not R.is_field:
            if R.divide(gi.lc, gj.lc) is None and R.divide(gj.lc, gi.lc) is None:
                _, s, t = R.gcdext(gi.lc, gj.lc)
                out.append(((s, si), (t, sj)))
        return out

    def _combo(self, terms):
        """Vector and representation of sum c * X^shift * elems[k]."""
        R = self.R
        vec: dict = {}
        rep = [dict() for _ in self.inputs] if self.track else None
        for k, (c, shift) in terms:
            g = self.elems[k]
            axpy(R, vec, g.vec, shift, c)
            if rep is not None:
                for idx, rp in enumerate(g.rep):
                    if rp:
                        paxpy(R, rep[idx], rp, shift, c)
        return vec, rep

    def _coprime_skip(self, i: int, j: int) -> bool:
        # Buchberger's first criterion, ideal case over a field only
        if not self.R.is_field:
            return False
        if self.rank > 1:
            return False
        gi, gj = self.elems[i], self.elems[j]
        return all(a == 0 or b == 0 for a, b in zip(gi.lt[1], gj.lt[1]))

    # -- Buchberger ------------------------------------------------------
    def compute(self, inputs: list[dict], rank: int = 1) -> None:
        R = self.R
        self.rank = rank
        self.inputs = [dict(v) for v in inputs]
        s = len(inputs)
        queue: list = []
        zero = self.zero_exp

        def push_elem(vec, rep):
            e = self._make(vec, rep)
            self.elems.append(e)
            n = len(self.elems) - 1
            for i in range(n):
                if self.elems[i].lt[0] == e.lt[0]:
                    queue.append(("pair", i, n))
            ann = R.annihilator(e.lc)
            if ann != 0:
                queue.append(("ann", n, ann))

        for i, f in enumerate(self.inputs):
            if not f:
                continue
            rem, cof = self.reduce(f)
            if not rem:
                continue
            rep = None
            if self.track:
                base = [dict() for _ in range(s)]
                base[i][zero] = R.one()
                rep = self.combine_rep(base, cof)
            push_elem(rem, rep)

        while queue:
            pick = min(range(len(queue)), key=lambda q: self._queue_key(queue[q]))
            item = queue.pop(pick)
            if item[0] == "pair":
                _, i, j = item
                if self._coprime_skip(i, j):
                    continue
                combos = [[(i, a), (j, b)] for a, b in self._pair_vectors(i, j)]
            else:
                _, n, ann = item
                combos = [[(n, (ann, zero))]]
            for terms in combos:
                vec, rep = self._combo(terms)
                if not vec:
                    continue
                rem, cof = self.reduce(vec)
                if not rem:
                    continue
                if self.track:
                    rep = self.combine_rep(rep, cof)
                push_elem(rem, rep)
        self._interreduce()

    def _queue_key(self, item):
        if item[0] == "ann":
            g = self.elems[item[1]]
            return (sum(g.lt[1]), 0, item[1], 0)
        _, i, j = item
        L = _lcm(self.elems[i].lt[1], self.elems[j].lt[1])
        return (sum(L), 1, i, j)

    def _interreduce(self) -> None:
        R = self.R
        elems = self.elems
        keep = []
        for i, g in enumerate(elems):
            redundant = False
            for j, h in enumerate(elems):
                if i == j or h.lt[0] != g.lt[0] or not _divides(h.lt[1], g.lt[1]):
                    continue
                if R.divide(g.lc, h.lc) is None:
                    continue
                # h's leading term divides g's; on a tie keep the earlier one
                if h.lt == g.lt and R.ideal_size(h.lc) == R.ideal_size(g.lc) and j > i:
                    continue
                redundant = True
                break
            if not redundant:
                keep.append(g)
        keep.sort(key=lambda e: self.tkey(e.lt), reverse=True)
        out = []
        for k, g in enumerate(keep):
            others = keep[:k] + keep[k + 1:]
            tail = dict(g.vec)
            del tail[g.lt]
            rem, cof = self.reduce(tail, others)
            rem[g.lt] = g.lc
            rep = g.rep
            if self.track and cof:
                rep = self.combine_rep(g.rep, cof, others)
            out.append(Elem(rem, g.lt, g.lc, rep))
        self.elems = out

    # -- syzygies --------------------------------------------------------
    def basis_syzygies(self, audit: bool = True) -> list[dict]:
        """Generators of the syzygy module of the basis elements (Schreyer),
        as vectors {(basis_index, exp): coeff}.  Raises if some pair does not
        reduce to zero (the basis would not be Gröbner)."""
        R = self.R
        zero = self.zero_exp
        out = []
        t = len(self.elems)
        combos = []
        for i in range(t):
            ann = R.annihilator(self.elems[i].lc)
            if ann != 0:
                combos.append([(i, (ann, zero))])
            for j in range(i + 1, t):
                gi, gj = self.elems[i], self.elems[j]
                if gi.lt[0] != gj.lt[0]:
                    continue
                lc = R.lcm_cofactors(gi.lc, gj.lc)
                if lc is None:
                    continue
                L = _lcm(gi.lt[1], gj.lt[1])
                _, a, b = lc
                combos.append([(i, (a, _sub_exp(L, gi.lt[1]))), (j, (R.neg(b), _sub_exp(L, gj.lt[1])))])
        for terms in combos:
            vec: dict = {}
            syz: dict = {}
            for k, (c, shift) in terms:
                axpy(R, vec, self.elems[k].vec, shift, c)
                axpy(R, syz, {(k, zero): R.one()}, shift, c)
            rem, cof = self.reduce(vec)
            if rem and audit:
                raise AssertionError("basis is not Gröbner: a pair does not reduce to zero")
            for k, poly in cof.items():
                for exp, c in poly.items():
                    axpy(R, syz, {(k, zero): R.one()}, exp, R.neg(c))
            if syz:
                out.append(syz)
        return out

    def input_syzygies(self) -> list[dict]:
        """Generators of the syzygy module of the input generators, as
        vectors {(input_index, exp): coeff}."""
        R = self.R
        s = len(self.inputs)
        zero = self.zero_exp
        out = []
        seen = set()

        def emit(vec: dict):
            if not vec:
                return
            key = frozenset(vec.items())
            if key not in seen:
                seen.add(key)
                out.append(vec)

        # T^t * (syzygies of the basis)
        for syz in self.basis_syzygies():
            vec: dict = {}
            for (k, exp), c in syz.items():
                for i, rp in enumerate(self.elems[k].rep):
                    if rp:
                        for e2, c2 in rp.items():
                            key = (i, tuple(x + y for x, y in zip(exp, e2)))
                            v = R.add(vec.get(key, R.zero()), R.mul(c, c2))
                            if v == 0:
                                vec.pop(key, None)
                            else:
                                vec[key] = v
            emit(vec)
        # e_i - R_i * T for each input
        for i, f in enumerate(self.inputs):
            rem, cof = self.reduce(f)
            if rem:
                raise AssertionError("input does not reduce to zero modulo its own basis")
            base = [dict() for _ in range(s)]
            base[i][zero] = R.one()
            rep = self.combine_rep(base, cof)
            emit({(j, e): c for j, p in enumerate(rep) for e, c in p.items()})
        return out
