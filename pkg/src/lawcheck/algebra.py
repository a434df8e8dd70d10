"""Free graded-commutative differential algebra over the frame-form generators.

Generator vocabulary (indices range in 1..n):

* ``w(A,B)``   connection 1-forms, antisymmetric, stored with A < B;
* ``W(A,B)``   curvature 2-forms, antisymmetric, stored with A < B;
* ``WM(s,t)``  boundary curvature 2-forms of the induced metric, 2 <= s < t;
* ``th(A)``    tautological 1-forms of the sphere bundle;
* ``u(A)``     fiber coordinate 0-forms;
* ``dphi_i``   differentials of the formal angles of the coefficient ring.

A Form is a finite sum coefficient * monomial with TrigScalar coefficients.
Monomials keep even generators (u, W, WM) as a sorted multiset and odd
generators (w, th, dphi) as a sorted duplicate-free tuple; sorting odd factors
tracks the Koszul sign, so equality is coefficient comparison.

Two modes share the data structure.  The full algebra models the sphere
bundle over the interior: dw(A,B) = W(A,B) + sum_C w(A,C)w(C,B), the Bianchi
rewrite for dW, du(A) = th(A) - sum u(B)w(B,A) and the derived rule for dth.
The boundary algebra models the restriction to the boundary with the normal
index 1 split off: u/th are gone, dw(s,t) closes through WM(s,t), W(1,s)
survives as a free generator, and its differential eliminates interior
curvature through W(s,t) = WM(s,t) + w(1,s)w(1,t).
"""

from __future__ import annotations

from fractions import Fraction

from .trig import TrigScalar, ONE

# generator kind codes; odd kinds sort before a monomial's theta tail
K_DPHI, K_OMEGA, K_THETA = 0, 1, 2
K_U, K_CURV, K_CURVM = 3, 4, 5

_ODD = (K_DPHI, K_OMEGA, K_THETA)
DEGREE = {K_DPHI: 1, K_OMEGA: 1, K_THETA: 1, K_U: 0, K_CURV: 2, K_CURVM: 2}

Gen = tuple[int, int, int]
Monomial = tuple[tuple[Gen, ...], tuple[Gen, ...]]  # (evens, odds)

_EMPTY_MONO: Monomial = ((), ())


def signed_pair(kind, a, b):
    """Normalize an antisymmetric index pair; returns (sign, gen) or None."""
    if a == b:
        return None
    if a > b:
        return -1, (kind, b, a)
    return 1, (kind, a, b)


def gen_degree(gen):
    return DEGREE[gen[0]]


def mono_degree(mono):
    evens, odds = mono
    return sum(DEGREE[g[0]] for g in evens) + len(odds)


def mono_mul(m1: Monomial, m2: Monomial):
    """Multiply canonical monomials; returns (sign, monomial) or None."""
    e1, o1 = m1
    e2, o2 = m2
    evens = tuple(sorted(e1 + e2))
    # merge the two sorted odd tuples, counting the crossings
    odds = []
    sign = 1
    i = j = 0
    while i < len(o1) and j < len(o2):
        if o1[i] == o2[j]:
            return None
        if o1[i] < o2[j]:
            odds.append(o1[i])
            i += 1
        else:
            if (len(o1) - i) % 2:
                sign = -sign
            odds.append(o2[j])
            j += 1
    odds.extend(o1[i:])
    odds.extend(o2[j:])
    return sign, (evens, tuple(odds))


def _gen_name(gen):
    kind, a, b = gen
    if kind == K_DPHI:
        return "dphi" if a == 1 else f"dphi{a}"
    if kind == K_OMEGA:
        return f"w{a}{b}"
    if kind == K_THETA:
        return f"th{a}"
    if kind == K_U:
        return f"u{a}"
    if kind == K_CURV:
        return f"W{a}{b}"
    return f"WM{a}{b}"


class Form:
    """Element of the graded algebra; immutable by convention."""

    __slots__ = ("n", "boundary", "terms")

    def __init__(self, n, terms=None, boundary=False):
        self.n = n
        self.boundary = boundary
        self.terms: dict[Monomial, TrigScalar] = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    self.terms[mono] = coeff

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n, boundary=False):
        return cls(n, boundary=boundary)

    @classmethod
    def scalar(cls, n, coeff, boundary=False):
        if isinstance(coeff, (int, Fraction)):
            coeff = TrigScalar.rational(coeff)
        return cls(n, {_EMPTY_MONO: coeff}, boundary=boundary)

    @classmethod
    def of_gen(cls, n, gen, sign=1, boundary=False):
        kind = gen[0]
        mono = ((), (gen,)) if kind in _ODD else ((gen,), ())
        return cls(n, {mono: TrigScalar.rational(sign)}, boundary=boundary)

    @classmethod
    def omega(cls, n, a, b, boundary=False):
        cls._check_index(n, a), cls._check_index(n, b)
        sp = signed_pair(K_OMEGA, a, b)
        if sp is None:
            return cls.zero(n, boundary)
        return cls.of_gen(n, sp[1], sp[0], boundary)

    @classmethod
    def curvature(cls, n, a, b, boundary=False):
        cls._check_index(n, a), cls._check_index(n, b)
        sp = signed_pair(K_CURV, a, b)
        if sp is None:
            return cls.zero(n, boundary)
        return cls.of_gen(n, sp[1], sp[0], boundary)

    @classmethod
    def boundary_curvature(cls, n, s, t):
        if not (2 <= s <= n and 2 <= t <= n):
            raise ValueError(f"boundary curvature indices must lie in 2..{n}")
        sp = signed_pair(K_CURVM, s, t)
        if sp is None:
            return cls.zero(n, boundary=True)
        return cls.of_gen(n, sp[1], sp[0], boundary=True)

    @classmethod
    def theta(cls, n, a):
        cls._check_index(n, a)
        return cls.of_gen(n, (K_THETA, a, 0))

    @classmethod
    def coordinate(cls, n, a):
        cls._check_index(n, a)
        return cls.of_gen(n, (K_U, a, 0))

    @classmethod
    def dphi(cls, n, angle=1, boundary=False):
        return cls.of_gen(n, (K_DPHI, angle, 0), boundary=boundary)

    @staticmethod
    def _check_index(n, a):
        if not 1 <= a <= n:
            raise ValueError(f"frame index {a} outside 1..{n}")

    # -- algebra -----------------------------------------------------------

    def _compatible(self, other):
        if self.n != other.n:
            raise ValueError(f"ambient dimension mismatch: {self.n} vs {other.n}")
        if self.boundary != other.boundary:
            raise ValueError("cannot mix boundary and interior algebra forms")

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        self._compatible(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            new = out.get(mono)
            new = coeff if new is None else new + coeff
            if new:
                out[mono] = new
            elif mono in out:
                del out[mono]
        res = Form(self.n, boundary=self.boundary)
        res.terms = out
        return res

    def __neg__(self):
        res = Form(self.n, boundary=self.boundary)
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Wedge product (scalars act as 0-forms)."""
        if isinstance(other, (int, Fraction, TrigScalar)):
            return self.scale(other)
        if not isinstance(other, Form):
            return NotImplemented
        self._compatible(other)
        out: dict[Monomial, TrigScalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                hit = mono_mul(m1, m2)
                if hit is None:
                    continue
                sign, mono = hit
                coeff = c1 * c2
                if sign < 0:
                    coeff = -coeff
                new = out.get(mono)
                new = coeff if new is None else new + coeff
                if new:
                    out[mono] = new
                elif mono in out:
                    del out[mono]
        res = Form(self.n, boundary=self.boundary)
        res.terms = out
        return res

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, TrigScalar)):
            return self.scale(other)
        return NotImplemented

    def scale(self, coeff):
        if isinstance(coeff, (int, Fraction)):
            coeff = TrigScalar.rational(coeff)
        res = Form(self.n, boundary=self.boundary)
        for mono, c in self.terms.items():
            new = c * coeff
            if new:
                res.terms[mono] = new
        return res

    # -- differential ------------------------------------------------------

    def d(self):
        out = Form.zero(self.n, self.boundary)
        for mono, coeff in self.terms.items():
            # derivative of the coefficient contributes dphi_i wedge mono
            for angle in sorted(coeff.angles()):
                dc = coeff.deriv(angle)
                if not dc:
                    continue
                hit = mono_mul(((), ((K_DPHI, angle, 0),)), mono)
                if hit is None:
                    continue
                sign, new_mono = hit
                out = out + Form(self.n, {new_mono: dc if sign > 0 else -dc},
                                 self.boundary)
            # graded Leibniz over the canonical word
            evens, odds = mono
            word = evens + odds
            prefix_deg = 0
            for k, gen in enumerate(word):
                dg = _d_generator(gen, self.n, self.boundary)
                if dg is not None and dg.terms:
                    prefix = (tuple(g for g in word[:k] if g[0] not in _ODD),
                              tuple(g for g in word[:k] if g[0] in _ODD))
                    suffix = (tuple(g for g in word[k + 1:] if g[0] not in _ODD),
                              tuple(g for g in word[k + 1:] if g[0] in _ODD))
                    sign = -1 if prefix_deg % 2 else 1
                    piece = _mono_sandwich(prefix, dg, suffix)
                    c = coeff if sign > 0 else -coeff
                    out = out + piece.scale(c)
                prefix_deg += DEGREE[gen[0]]
        return out

    def interior_dphi(self, angle=1):
        """Interior product with the vector field dual to dphi (odd derivation)."""
        target = (K_DPHI, angle, 0)
        out = Form.zero(self.n, self.boundary)
        for (evens, odds), coeff in self.terms.items():
            for pos, gen in enumerate(odds):
                if gen == target:
                    sign = -1 if pos % 2 else 1
                    mono = (evens, odds[:pos] + odds[pos + 1:])
                    c = coeff if sign > 0 else -coeff
                    prev = out.terms.get(mono)
                    new = c if prev is None else prev + c
                    if new:
                        out.terms[mono] = new
                    elif mono in out.terms:
                        del out.terms[mono]
                    break
        return out

    def evaluate_at_zero(self):
        """Set the boundary angle to 0 and kill every dphi monomial."""
        out = Form.zero(self.n, self.boundary)
        target = (K_DPHI, 1, 0)
        for (evens, odds), coeff in self.terms.items():
            if target in odds:
                continue
            c = coeff.eval_angle(1, "0")
            if c:
                mono = (evens, odds)
                prev = out.terms.get(mono)
                new = c if prev is None else prev + c
                if new:
                    out.terms[mono] = new
                elif mono in out.terms:
                    del out.terms[mono]
        return out

    # -- boundary dimension bookkeeping -------------------------------------

    @staticmethod
    def _base_degree(mono):
        """Total degree of semibasic factors (pulled back from the boundary)."""
        evens, odds = mono
        deg = 0
        for kind, a, _b in evens:
            if kind in (K_CURV, K_CURVM):
                deg += 2
        for kind, a, _b in odds:
            if kind == K_OMEGA and a == 1:
                deg += 1
        return deg

    def base_degree_filter(self, max_degree=None):
        """Drop monomials whose semibasic degree exceeds the boundary dimension."""
        if not self.boundary:
            raise ValueError("the semibasic filter lives on the boundary algebra")
        if max_degree is None:
            max_degree = self.n - 1
        res = Form(self.n, boundary=self.boundary)
        for mono, coeff in self.terms.items():
            if self._base_degree(mono) <= max_degree:
                res.terms[mono] = coeff
        return res

    # -- substitution ------------------------------------------------------

    def substitute(self, mapping, boundary=None):
        """Replace generators by forms; unmapped generators pass through.

        The replacement for an odd generator must have odd degree (and even
        for even generators) or signs lose meaning; callers own that.
        """
        if boundary is None:
            boundary = self.boundary
        out = Form.zero(self.n, boundary)
        for (evens, odds), coeff in self.terms.items():
            acc = Form.scalar(self.n, coeff, boundary=boundary)
            for gen in evens + odds:
                rep = mapping.get(gen)
                if rep is None:
                    kind = gen[0]
                    mono = ((), (gen,)) if kind in _ODD else ((gen,), ())
                    rep = Form(self.n, {mono: ONE}, boundary=boundary)
                acc = acc * rep
                if not acc.terms:
                    break
            out = out + acc
        return out

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return (self.n == other.n and self.boundary == other.boundary
                and self.terms == other.terms)

    def __len__(self):
        return len(self.terms)

    def degrees(self):
        return sorted({mono_degree(m) for m in self.terms})

    def homogeneous_part(self, degree):
        res = Form(self.n, boundary=self.boundary)
        for mono, coeff in self.terms.items():
            if mono_degree(mono) == degree:
                res.terms[mono] = coeff
        return res

    def coefficient_of(self, mono: Monomial):
        return self.terms.get(mono, TrigScalar.zero())

    def max_abs_float(self, angle_values=None):
        """Crude size estimate used by tests for near-zero checks."""
        best = 0.0
        for coeff in self.terms.values():
            best = max(best, abs(coeff.to_float(angle_values or {})))
        return best

    def render(self):
        if not self.terms:
            return "0"
        lines = []
        for mono in sorted(self.terms, key=lambda m: (mono_degree(m), m)):
            coeff = self.terms[mono]
            evens, odds = mono
            gens = "*".join(_gen_name(g) for g in evens + odds) or "1"
            lines.append(f"({coeff.render()})*{gens}")
        return " + ".join(lines)

    def __repr__(self):
        kind = "boundary" if self.boundary else "interior"
        return f"Form(n={self.n}, {kind}, {len(self.terms)} terms)"


def _mono_sandwich(prefix: Monomial, form: Form, suffix: Monomial):
    """prefix * form * suffix with monomial multiplication on both sides."""
    out = Form.zero(form.n, form.boundary)
    for mono, coeff in form.terms.items():
        left = mono_mul(prefix, mono)
        if left is None:
            continue
        s1, m1 = left
        right = mono_mul(m1, suffix)
        if right is None:
            continue
        s2, m2 = right
        c = coeff if s1 * s2 > 0 else -coeff
        prev = out.terms.get(m2)
        new = c if prev is None else prev + c
        if new:
            out.terms[m2] = new
        elif m2 in out.terms:
            del out.terms[m2]
    return out


# -- structure equations ----------------------------------------------------

_D_CACHE: dict[tuple[int, bool, Gen], Form | None] = {}


def _d_generator(gen, n, boundary):
    key = (n, boundary, gen)
    hit = _D_CACHE.get(key, False)
    if hit is not False:
        return hit
    kind, a, b = gen
    out: Form | None
    if kind == K_DPHI:
        out = None
    elif kind == K_OMEGA:
        if boundary:
            if a == 1:
                out = Form.curvature(n, 1, b, boundary=True)
                for c in range(2, n + 1):
                    out = out + Form.omega(n, 1, c, True) * Form.omega(n, c, b, True)
            else:
                out = Form.boundary_curvature(n, a, b)
                for r in range(2, n + 1):
                    out = out + Form.omega(n, a, r, True) * Form.omega(n, r, b, True)
        else:
            out = Form.curvature(n, a, b)
            for c in range(1, n + 1):
                out = out + Form.omega(n, a, c) * Form.omega(n, c, b)
    elif kind == K_CURV:
        if boundary:
            if a != 1:
                raise ValueError("interior curvature with both indices >= 2 "
                                 "does not live on the boundary algebra")
            out = Form.zero(n, True)
            for t in range(2, n + 1):
                out = out + Form.omega(n, 1, t, True) * Form.boundary_curvature(n, t, b)
                out = out - Form.curvature(n, 1, t, True) * Form.omega(n, t, b, True)
        else:
            out = Form.zero(n)
            for c in range(1, n + 1):
                out = out + Form.omega(n, a, c) * Form.curvature(n, c, b)
                out = out - Form.curvature(n, a, c) * Form.omega(n, c, b)
    elif kind == K_CURVM:
        if not boundary:
            raise ValueError("boundary curvature in the interior algebra")
        out = Form.zero(n, True)
        for r in range(2, n + 1):
            out = out + Form.omega(n, a, r, True) * Form.boundary_curvature(n, r, b)
            out = out - Form.boundary_curvature(n, a, r) * Form.omega(n, r, b, True)
    elif kind == K_U:
        if boundary:
            raise ValueError("coordinate functions do not live on the boundary algebra")
        out = Form.theta(n, a)
        for c in range(1, n + 1):
            out = out - Form.coordinate(n, c) * Form.omega(n, c, a)
    elif kind == K_THETA:
        if boundary:
            raise ValueError("theta forms do not live on the boundary algebra")
        out = Form.zero(n)
        for c in range(1, n + 1):
            out = out + Form.theta(n, c) * Form.omega(n, c, a)
            out = out + Form.coordinate(n, c) * Form.curvature(n, c, a)
    else:
        raise ValueError(f"unknown generator kind {kind}")
    _D_CACHE[key] = out
    return out


# -- module-level operation surface -----------------------------------------

def wedge(a: Form, b: Form) -> Form:
    return a * b


def differential(a: Form) -> Form:
    return a.d()


def interior_dphi(a: Form) -> Form:
    return a.interior_dphi()


def evaluate_at_zero(a: Form) -> Form:
    return a.evaluate_at_zero()
