"""Exact multivariate polynomials over the rationals.

A :class:`Polynomial` is a finite map from exponent tuples to nonzero
``Fraction`` coefficients together with a fixed, ordered tuple of variable
names.  The variable order is immutable and every canonical form (leading
term, printing, sign normalization) is taken with respect to graded
lexicographic order on it.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, lcm

from .errors import DivisionByZero, InvalidInput


def _grlex_key(exps):
    return (sum(exps), exps)


class Polynomial:
    """Immutable multivariate polynomial with rational coefficients.

    ``terms`` maps exponent tuples (one entry per variable, nonnegative) to
    nonzero coefficients.  Two polynomials are equal iff they have the same
    variable tuple and the same term map.
    """

    __slots__ = ("vars", "terms", "_hash", "_intflag")

    def __init__(self, vars, terms):
        vars = tuple(vars)
        n = len(vars)
        clean = {}
        for exps, c in terms.items():
            c = c if isinstance(c, Fraction) else Fraction(c)
            if not c:
                continue
            exps = tuple(exps)
            if len(exps) != n or any(e < 0 or not isinstance(e, int) for e in exps):
                raise InvalidInput(f"bad exponent vector {exps} for variables {vars}")
            clean[exps] = c
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_intflag", None)

    @classmethod
    def _raw(cls, vars, terms):
        """Trusted constructor: terms already canonical (tuple exponents of
        the right length, nonzero Fraction values)."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "vars", vars)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "_hash", None)
        object.__setattr__(obj, "_intflag", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # ------------------------------------------------------------------ #
    # constructors

    @classmethod
    def zero(cls, vars):
        return cls(vars, {})

    @classmethod
    def one(cls, vars):
        return cls.constant(1, vars)

    @classmethod
    def constant(cls, value, vars):
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): Fraction(value)})

    @classmethod
    def variable(cls, name, vars):
        vars = tuple(vars)
        if name not in vars:
            raise InvalidInput(f"unknown variable {name!r}")
        exps = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {exps: Fraction(1)})

    @classmethod
    def linear_form(cls, coeffs, vars, shift=0):
        """Build ``sum(coeffs[i]*vars[i]) + shift``."""
        vars = tuple(vars)
        if len(coeffs) != len(vars):
            raise InvalidInput("coefficient vector length must match variables")
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = tuple(1 if j == i else 0 for j in range(len(vars)))
                terms[e] = Fraction(c)
        p = cls(vars, terms)
        if shift:
            p = p + cls.constant(shift, vars)
        return p

    # ------------------------------------------------------------------ #
    # basic queries

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant:
            raise InvalidInput("polynomial is not constant")
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def total_degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i):
        """Degree in the i-th variable; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def variables_present(self):
        """Indices of variables occurring with positive exponent."""
        present = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    present.add(i)
        return sorted(present)

    def sorted_terms(self):
        """Terms in decreasing graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading(self):
        """(exponents, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise InvalidInput("zero polynomial has no leading term")
        exps = max(self.terms, key=_grlex_key)
        return exps, self.terms[exps]

    def coeff(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def sort_key(self):
        """Total order key used to sort factor lists deterministically."""
        return (self.total_degree(), len(self.terms),
                tuple((e, c) for e, c in self.sorted_terms()))

    # ------------------------------------------------------------------ #
    # arithmetic

    def _check_same_vars(self, other):
        if self.vars != other.vars:
            raise InvalidInput(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.vars)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_same_vars(other)
        if self._all_integer() and other._all_integer():
            terms = {e: c.numerator for e, c in self.terms.items()}
            for e, c in other.terms.items():
                s = terms.get(e, 0) + c.numerator
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
            return Polynomial._raw(self.vars,
                                   {e: Fraction(c) for e, c in terms.items()})
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Polynomial._raw(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.vars)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _all_integer(self):
        flag = self._intflag
        if flag is None:
            flag = all(c.denominator == 1 for c in self.terms.values())
            object.__setattr__(self, "_intflag", flag)
        return flag

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial.zero(self.vars)
            other = Fraction(other)
            return Polynomial._raw(self.vars,
                                   {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_same_vars(other)
        # scaled-integer accumulation: one Fraction per result term
        ints1, d1 = self._scaled_ints()
        ints2, d2 = other._scaled_ints()
        if len(ints1) * len(ints2) >= 2000 and \
                _kron_box(ints1, ints2, len(self.vars)) <= (1 << 22):
            terms = _kron_mul(ints1, ints2, len(self.vars))
        else:
            terms = {}
            get = terms.get
            for e1, n1 in ints1.items():
                for e2, n2 in ints2.items():
                    e = tuple(map(int.__add__, e1, e2))
                    s = get(e, 0) + n1 * n2
                    if s:
                        terms[e] = s
                    else:
                        del terms[e]
        den = d1 * d2
        if den == 1:
            wrapped = {e: Fraction(c) for e, c in terms.items()}
        else:
            wrapped = {}
            for e, c in terms.items():
                f = Fraction(c, den)
                if f:
                    wrapped[e] = f
        return Polynomial._raw(self.vars, wrapped)

    def _scaled_ints(self):
        """(integer term map, common denominator) with terms*1/den == self."""
        if self._all_integer():
            return {e: c.numerator for e, c in self.terms.items()}, 1
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        return {e: c.numerator * (den // c.denominator)
                for e, c in self.terms.items()}, den

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise InvalidInput("polynomial powers take nonnegative integers")
        result = Polynomial.one(self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant and self.constant_value() == other
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            h = hash((self.vars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # ------------------------------------------------------------------ #
    # content and normalization

    def content(self):
        """Signed rational content: ``self / content`` is integer-primitive
        with positive graded-lex leading coefficient.  Zero for zero."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        mag = Fraction(num, den)
        _, lc = self.leading()
        return mag if lc > 0 else -mag

    def primitive(self):
        """Integer-primitive associate with positive leading coefficient."""
        if not self.terms:
            return self
        inv = 1 / self.content()
        return Polynomial(self.vars, {e: c * inv for e, c in self.terms.items()})

    # ------------------------------------------------------------------ #
    # views and substitution

    def coeffs_in(self, i):
        """Coefficients as a polynomial in the i-th variable: a map from
        exponent of that variable to a Polynomial free of it."""
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            rest = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[rest] = c
        return {k: Polynomial(self.vars, t) for k, t in out.items()}

    @classmethod
    def from_coeffs_in(cls, coeffs, i, vars):
        """Inverse of :meth:`coeffs_in`."""
        terms = {}
        for k, p in coeffs.items():
            for e, c in p.terms.items():
                full = e[:i] + (e[i] + k,) + e[i + 1:]
                s = terms.get(full, 0) + c
                if s:
                    terms[full] = s
                else:
                    terms.pop(full, None)
        return cls(vars, terms)

    def shift_var(self, i, m):
        """Substitute ``x_i -> x_i + m`` for an integer or rational m."""
        if not m:
            return self
        terms = {}
        for e, c in self.terms.items():
            k = e[i]
            for j in range(k + 1):
                coeff = c * comb(k, j) * Fraction(m) ** (k - j)
                full = e[:i] + (j,) + e[i + 1:]
                s = terms.get(full, 0) + coeff
                if s:
                    terms[full] = s
                else:
                    terms.pop(full, None)
        return Polynomial(self.vars, terms)

    def shifted(self, offsets):
        """Substitute ``x_i -> x_i + offsets[i]`` for every variable."""
        if len(offsets) != len(self.vars):
            raise InvalidInput("offset vector length must match variables")
        p = self
        for i, m in enumerate(offsets):
            p = p.shift_var(i, m)
        return p

    def compose(self, images, new_vars=None):
        """Substitute each variable by the given image polynomial.

        Every variable occurring in ``self`` must have an image; images must
        all share one variable tuple, which becomes the result's.
        """
        if new_vars is None:
            for img in images.values():
                new_vars = img.vars
                break
            if new_vars is None:
                raise InvalidInput("cannot infer target variables")
        new_vars = tuple(new_vars)
        for img in images.values():
            if img.vars != new_vars:
                raise InvalidInput("substitution images disagree on variables")
        result = Polynomial.zero(new_vars)
        powers = {name: {0: Polynomial.one(new_vars)} for name in self.vars}
        for e, c in self.terms.items():
            term = Polynomial.constant(c, new_vars)
            for i, k in enumerate(e):
                if not k:
                    continue
                name = self.vars[i]
                if name not in images:
                    raise InvalidInput(f"no image given for variable {name!r}")
                cache = powers[name]
                if k not in cache:
                    top = max(cache)
                    acc = cache[top]
                    for j in range(top + 1, k + 1):
                        acc = acc * images[name]
                        cache[j] = acc
                term = term * cache[k]
            result = result + term
        return result

    def eval_at(self, point):
        """Evaluate at a rational point given per variable name."""
        value = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    v *= Fraction(point[self.vars[i]]) ** k
            value += v
        return value

    # ------------------------------------------------------------------ #
    # division

    def divexact(self, other):
        """Exact quotient ``self / other`` or None if the division fails."""
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DivisionByZero("division of polynomial by zero")
            return self * (Fraction(1) / Fraction(other))
        self._check_same_vars(other)
        if other.is_zero:
            raise DivisionByZero("division of polynomial by zero")
        if other.is_constant:
            return self * (1 / other.constant_value())
        if self.is_zero:
            return self
        ip, dp = self._scaled_ints()
        io, do = other._scaled_ints()
        got = _int_divexact(ip, io)
        if got is not None:
            scale = Fraction(do, dp)
            return Polynomial._raw(self.vars,
                                   {e: c * scale for e, c in got.items()})
        # an exact quotient may still exist with fractional coefficients
        lead_e, lead_c = other.leading()
        rem = dict(self.terms)
        # lazy max-heap over grlex keys; stale entries are skipped on pop
        heap = [(-sum(e), tuple(-x for x in e)) for e in rem]
        heapq.heapify(heap)
        quo = {}
        while rem:
            while heap:
                deg, neg = heap[0]
                e = tuple(-x for x in neg)
                if e in rem:
                    break
                heapq.heappop(heap)
            c = rem[e]
            t = tuple(a - b for a, b in zip(e, lead_e))
            if any(x < 0 for x in t):
                return None
            q = c / lead_c
            quo[t] = q
            for e2, c2 in other.terms.items():
                full = tuple(a + b for a, b in zip(t, e2))
                old = rem.get(full)
                s = (old if old is not None else 0) - q * c2
                if s:
                    if old is None:
                        heapq.heappush(heap, (-sum(full),
                                              tuple(-x for x in full)))
                    rem[full] = s
                else:
                    rem.pop(full, None)
        return Polynomial._raw(self.vars, quo)

    # ------------------------------------------------------------------ #
    # printing

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{self.vars[i]}^{k}" if k > 1 else self.vars[i]
                for i, k in enumerate(e) if k
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        out = body if sign == "+" else f"-{body}"
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({str(self)!r}, vars={self.vars})"


# ---------------------------------------------------------------------- #
# Kronecker-packed multiplication: dense products are encoded as machine
# integers (one fixed-width slot per monomial of the degree box) so the
# convolution runs inside CPython's big-integer multiply.


def _kron_box(ints1, ints2, nvars):
    size = 1
    for i in range(nvars):
        size *= max(e[i] for e in ints1) + max(e[i] for e in ints2) + 1
    return size


def _kron_divexact(ints_p, ints_g, nvars):
    """Exact quotient of integer term maps through packed integers, or None.

    The quotient of the packed values is decoded with balanced digits and
    confirmed by a packed multiplication, so a non-None result is exact.
    """
    d = [max(e[i] for e in ints_p) + 1 for i in range(nvars)]
    for i in range(nvars):
        if max(e[i] for e in ints_g) >= d[i]:
            return None
    size = 1
    strides = []
    for i in range(nvars):
        strides.append(size)
        size *= d[i]
    if size > (1 << 22):
        return _int_divexact_heap(ints_p, ints_g)
    maxp = max(abs(c) for c in ints_p.values())
    maxg = max(abs(c) for c in ints_g.values())
    width = ((maxp * maxg).bit_length() + 40) // 8
    for _ in range(2):
        if size * width > (1 << 18):
            # big-integer division is quadratic; stay with the heap route
            return _int_divexact_heap(ints_p, ints_g)
        bits = width * 8

        def encode(terms):
            pos = bytearray(size * width)
            neg = bytearray(size * width)
            for e, c in terms.items():
                idx = 0
                for i in range(nvars):
                    idx += e[i] * strides[i]
                mag = c if c > 0 else -c
                nbytes = (mag.bit_length() + 7) // 8
                off = idx * width
                target = pos if c > 0 else neg
                target[off:off + nbytes] = mag.to_bytes(nbytes, "little")
            return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")

        p_val = encode(ints_p)
        g_val = encode(ints_g)
        quo, rem = divmod(p_val, g_val)
        if rem:
            return None
        half = 1 << (bits - 1)
        repunit = ((1 << (bits * size)) - 1) // ((1 << bits) - 1)
        shifted = quo + repunit * half
        if shifted < 0 or shifted.bit_length() > bits * size:
            width *= 2
            continue
        data = shifted.to_bytes(size * width, "little")
        out = {}
        for idx in range(size):
            c = int.from_bytes(data[idx * width:(idx + 1) * width], "little") - half
            if c:
                e = []
                rest = idx
                for i in range(nvars):
                    e.append(rest % d[i])
                    rest //= d[i]
                out[tuple(e)] = c
        check = _kron_mul(out, ints_g, nvars) if out else {}
        if check == ints_p:
            return out
        width *= 2
    return _int_divexact_heap(ints_p, ints_g)


def _kron_mul(ints1, ints2, nvars):
    d = []
    for i in range(nvars):
        m1 = max(e[i] for e in ints1)
        m2 = max(e[i] for e in ints2)
        d.append(m1 + m2 + 1)
    size = 1
    strides = []
    for i in range(nvars):
        strides.append(size)
        size *= d[i]
    max1 = max(abs(c) for c in ints1.values())
    max2 = max(abs(c) for c in ints2.values())
    bound = max1 * max2 * min(len(ints1), len(ints2)) * 2
    width = (bound.bit_length() + 8) // 8

    def encode(terms, want_positive):
        buf = bytearray(size * width)
        for e, c in terms.items():
            if (c > 0) != want_positive:
                continue
            idx = 0
            for i in range(nvars):
                idx += e[i] * strides[i]
            mag = c if c > 0 else -c
            off = idx * width
            buf[off:off + (mag.bit_length() + 7) // 8] = \
                mag.to_bytes((mag.bit_length() + 7) // 8, "little")
        return int.from_bytes(buf, "little")

    p_pos = encode(ints1, True)
    p_neg = encode(ints1, False)
    q_pos = encode(ints2, True)
    q_neg = encode(ints2, False)
    plus = p_pos * q_pos + p_neg * q_neg
    minus = p_pos * q_neg + p_neg * q_pos

    def decode(value, out, sign):
        data = value.to_bytes(size * width, "little")
        for idx in range(size):
            chunk = data[idx * width:(idx + 1) * width]
            c = int.from_bytes(chunk, "little")
            if c:
                out[idx] = out.get(idx, 0) + sign * c
        return out

    acc = {}
    decode(plus, acc, 1)
    decode(minus, acc, -1)
    terms = {}
    for idx, c in acc.items():
        if not c:
            continue
        e = []
        rest = idx
        for i in range(nvars):
            e.append(rest % d[i])
            rest //= d[i]
        terms[tuple(e)] = c
    return terms


# ---------------------------------------------------------------------- #
# gcd
#
# Main route: evaluation-homomorphism heuristic on integer term maps with
# exact trial-division verification; the primitive remainder sequence below
# is the fallback when the heuristic gives up.


def _int_eval_at(terms, i, xi):
    """Evaluate an integer term map at ``x_i = xi``; result drops x_i."""
    powers = {0: 1}
    out = {}
    for e, c in terms.items():
        k = e[i]
        if k not in powers:
            p = powers[max(powers)]
            for j in range(max(powers) + 1, k + 1):
                p *= xi
                powers[j] = p
        rest = e[:i] + (0,) + e[i + 1:]
        s = out.get(rest, 0) + c * powers[k]
        if s:
            out[rest] = s
        else:
            out.pop(rest, None)
    return out


def _int_content(terms):
    g = 0
    for c in terms.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def _int_primitive(terms):
    g = _int_content(terms)
    if g > 1:
        return {e: c // g for e, c in terms.items()}
    return dict(terms)


def _int_divexact(p, q):
    """Exact quotient of integer term maps, or None."""
    if not p:
        return {}
    if len(p) >= 500 and len(q) > 1:
        n = len(next(iter(p)))
        return _kron_divexact(p, q, n)
    return _int_divexact_heap(p, q)


def _int_divexact_heap(p, q):
    if not p:
        return {}
    lead_e = max(q, key=_grlex_key)
    lead_c = q[lead_e]
    rem = dict(p)
    heap = [(-sum(e), tuple(-x for x in e)) for e in rem]
    heapq.heapify(heap)
    quo = {}
    while rem:
        while heap:
            _, neg = heap[0]
            e = tuple(-x for x in neg)
            if e in rem:
                break
            heapq.heappop(heap)
        c = rem[e]
        t = tuple(a - b for a, b in zip(e, lead_e))
        if any(x < 0 for x in t) or c % lead_c:
            return None
        qc = c // lead_c
        quo[t] = qc
        for e2, c2 in q.items():
            full = tuple(a + b for a, b in zip(t, e2))
            old = rem.get(full)
            s = (old if old is not None else 0) - qc * c2
            if s:
                if old is None:
                    heapq.heappush(heap, (-sum(full), tuple(-x for x in full)))
                rem[full] = s
            else:
                rem.pop(full, None)
    return quo


def _heu_gcd(p, q):
    """Heuristic gcd of integer term maps over ZZ (content included), or
    None when six evaluation points in a row fail at some level.

    Per level: strip integer contents (their gcd is the content of the
    answer), evaluate one variable at a large point, recurse, reconstruct a
    candidate from the balanced base-xi digits, and accept only after exact
    trial division of both primitive parts.
    """
    cp = _int_content(p)
    cq = _int_content(q)
    cg = gcd(cp, cq)
    pp = {e: c // cp for e, c in p.items()} if cp > 1 else p
    qq = {e: c // cq for e, c in q.items()} if cq > 1 else q
    n = len(next(iter(p)))
    pv = {i for e in pp for i, k in enumerate(e) if k}
    qv = {i for e in qq for i, k in enumerate(e) if k}
    if not pv or not qv:
        return {(0,) * n: cg}
    i = max(pv | qv)
    norm = min(max(abs(c) for c in pp.values()), max(abs(c) for c in qq.values()))
    xi = 2 * norm + 29
    for _ in range(6):
        pe = _int_eval_at(pp, i, xi)
        qe = _int_eval_at(qq, i, xi)
        if pe and qe:
            ge = _heu_gcd(pe, qe)
            if ge is None:
                return None
            cand = {}
            level = 0
            while ge:
                nxt = {}
                for e, c in ge.items():
                    r = c % xi
                    if 2 * r > xi:
                        r -= xi
                    if r:
                        cand[e[:i] + (level,) + e[i + 1:]] = r
                    c = (c - r) // xi
                    if c:
                        nxt[e] = c
                ge = nxt
                level += 1
            cand = _int_primitive(cand)
            if cand and _int_divexact(pp, cand) is not None \
                    and _int_divexact(qq, cand) is not None:
                if cg > 1:
                    cand = {e: c * cg for e, c in cand.items()}
                return cand
        xi = xi * 73794 // 27011
    return None


def _content_and_pp_in(p, i):
    """Polynomial content w.r.t. the i-th variable and the matching
    primitive part.  Both carry the full variable tuple."""
    if p.degree_in(i) <= 0:
        return p, Polynomial.one(p.vars)
    coeffs = list(p.coeffs_in(i).values())
    cont = coeffs[0]
    for c in coeffs[1:]:
        if cont.is_constant:
            break
        cont = _gcd_inner(cont, c)
    if cont.is_constant:
        cont = Polynomial.one(p.vars)
    pp = p.divexact(cont)
    assert pp is not None
    return cont, pp


def _prem(p, q, i):
    """Pseudo-remainder of p by q in the i-th variable, up to a unit of the
    coefficient ring (sufficient for a primitive remainder sequence)."""
    dq = q.degree_in(i)
    qc = q.coeffs_in(i)
    lc_q = qc[dq]
    r = p
    while not r.is_zero:
        dr = r.degree_in(i)
        if dr < dq:
            break
        rc = r.coeffs_in(i)
        lc_r = rc[dr]
        xpow = Polynomial(p.vars,
                          {tuple(dr - dq if j == i else 0
                                 for j in range(len(p.vars))): Fraction(1)})
        r = r * lc_q - q * lc_r * xpow
    return r


def _gcd_inner(p, q):
    """Gcd up to a rational unit; inputs nonzero."""
    if p.is_constant or q.is_constant:
        return Polynomial.one(p.vars)
    present = set(p.variables_present()) | set(q.variables_present())
    i = min(present)
    cont_p, pp_p = _content_and_pp_in(p, i)
    cont_q, pp_q = _content_and_pp_in(q, i)
    cont_g = _gcd_inner(cont_p, cont_q) if not (cont_p.is_constant or cont_q.is_constant) \
        else Polynomial.one(p.vars)
    if pp_p.degree_in(i) <= 0 or pp_q.degree_in(i) <= 0:
        return cont_g
    a, b = pp_p, pp_q
    if a.degree_in(i) < b.degree_in(i):
        a, b = b, a
    while True:
        r = _prem(a, b, i)
        if r.is_zero:
            g_pp = b
            break
        if r.degree_in(i) <= 0:
            g_pp = Polynomial.one(p.vars)
            break
        a, b = b, _content_and_pp_in(r, i)[1]
    return cont_g * g_pp


def poly_gcd(p, q):
    """Greatest common divisor, integer-primitive with positive graded-lex
    leading coefficient.  Raises InvalidInput when both inputs are zero."""
    if not isinstance(p, Polynomial) or not isinstance(q, Polynomial):
        raise InvalidInput("poly_gcd expects Polynomial arguments")
    p._check_same_vars(q)
    if p.is_zero and q.is_zero:
        raise InvalidInput("gcd(0, 0) is undefined")
    if p.is_zero:
        return q.primitive()
    if q.is_zero:
        return p.primitive()
    if p.is_constant or q.is_constant:
        return Polynomial.one(p.vars)
    return _gcd_cached(p, q)


@lru_cache(maxsize=1 << 15)
def _gcd_cached(p, q):
    pp = p.primitive()
    qq = q.primitive()
    if pp == qq:
        return pp
    pi = {e: int(c) for e, c in pp.terms.items()}
    qi = {e: int(c) for e, c in qq.terms.items()}
    got = _heu_gcd(pi, qi)
    if got is not None:
        return Polynomial(p.vars, {e: Fraction(c) for e, c in got.items()}).primitive()
    return _gcd_inner(pp, qq).primitive()
