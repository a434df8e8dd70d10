"""Named forms of the transgression machinery and their identity checks.

Builds, over the free algebra of :mod:`lawcheck.algebra`:

* the permutation families Phi_k and the secondary form Phi on the sphere
  bundle, plus the Euler curvature form (zero in odd dimensions);
* the boundary specialization that reduces the structure group to the
  stabilizer of the outward normal (two nonzero fiber coordinates, one
  angle);
* the boundary form family PhiM(i, j) over the index region D1, the
  fiber-angle coefficient functions T, I, a, A, the angular derivative
  Upsilon and the transgression primitive Gamma.

Each check_* function returns a residual Form whose vanishing is the
verified identity.  The closed-manifold check normalizes through the exact
polar parametrization of the fiber sphere; the boundary checks hold formally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .algebra import Form, K_CURV, K_OMEGA, K_THETA, K_U
from .trig import TrigScalar, sphere_volume

MAX_BUILD_N = 6


def double_factorial(k):
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def perm_sign(perm):
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _invert_constant(ts: TrigScalar) -> TrigScalar:
    """Invert a single-monomial constant (rational times a pi power)."""
    if len(ts.terms) != 1:
        raise ValueError("can only invert monomial constants")
    (d, angles), coeff = next(iter(ts.terms.items()))
    if angles:
        raise ValueError("can only invert pi-power constants")
    return TrigScalar.pi_power(-d, Fraction(1, 1) / coeff)


# -- the secondary form family ------------------------------------------------

@dataclass(frozen=True)
class PhiFamily:
    n: int
    phi_k: tuple[Form, ...]          # unnormalized permutation sums
    phi: Form                        # normalized secondary form, degree n-1
    euler: Form                      # Euler curvature form, degree n (0 if odd)
    raw_term_counts: tuple[int, ...]  # permutation terms fed in, per k


@lru_cache(maxsize=None)
def build_phi(n: int) -> PhiFamily:
    if not 2 <= n <= MAX_BUILD_N:
        raise ValueError(f"supported ambient dimensions are 2..{MAX_BUILD_N}, got {n}")
    phi_k = []
    raw_counts = []
    for k in range((n - 1) // 2 + 1):
        total = Form.zero(n)
        raw = 0
        n_theta = n - 2 * k - 1
        for perm in permutations(range(1, n + 1)):
            raw += 1
            term = Form.coordinate(n, perm[0]).scale(perm_sign(perm))
            for pos in range(1, 1 + n_theta):
                term = term * Form.theta(n, perm[pos])
            for pair in range(k):
                a = perm[1 + n_theta + 2 * pair]
                b = perm[2 + n_theta + 2 * pair]
                term = term * Form.curvature(n, a, b)
            total = total + term
        phi_k.append(total)
        raw_counts.append(raw)

    inv_norm = _invert_constant(
        TrigScalar.rational(double_factorial(n - 2)) * sphere_volume(n - 1))
    phi = Form.zero(n)
    for k, part in enumerate(phi_k):
        coeff = Fraction((-1) ** k,
                         2 ** k * math.factorial(k) * double_factorial(n - 2 * k - 1))
        phi = phi + part.scale(coeff)
    phi = phi.scale(inv_norm)

    euler = Form.zero(n)
    if n % 2 == 0:
        m = n // 2
        scale = TrigScalar.pi_power(
            -m, Fraction((-1) ** m, 2 ** (2 * m) * math.factorial(m)))
        for perm in permutations(range(1, n + 1)):
            term = Form.scalar(n, perm_sign(perm))
            for pair in range(m):
                term = term * Form.curvature(n, perm[2 * pair], perm[2 * pair + 1])
            euler = euler + term
        euler = euler.scale(scale)

    return PhiFamily(n, tuple(phi_k), phi, euler, tuple(raw_counts))


# -- polar parametrization of the fiber sphere --------------------------------

@lru_cache(maxsize=None)
def polar_coordinates(n: int) -> tuple[TrigScalar, ...]:
    """Fiber coordinates as iterated sin/cos products of n-1 formal angles."""
    out = []
    for a in range(1, n + 1):
        mono = TrigScalar.rational(1)
        for i in range(1, a):
            mono = mono * TrigScalar.sin(i)
        if a < n:
            mono = mono * TrigScalar.cos(a)
        out.append(mono)
    return tuple(out)


@lru_cache(maxsize=None)
def _polar_theta(n: int) -> tuple[Form, ...]:
    coords = polar_coordinates(n)
    out = []
    for a in range(1, n + 1):
        theta = Form.scalar(n, coords[a - 1]).d()
        for b in range(1, n + 1):
            if b != a:
                theta = theta + Form.omega(n, b, a).scale(coords[b - 1])
        out.append(theta)
    return tuple(out)


def polar_substitute(f: Form) -> Form:
    """Substitute the polar fiber parametrization for the u and theta generators.

    This is a differential-algebra morphism that kills the sphere relations
    sum u^2 = 1 and sum u theta = 0, so identities of the bundle normalize to
    the genuine zero Form.
    """
    n = f.n
    if f.boundary:
        raise ValueError("polar substitution applies to the interior algebra")
    for coeff in f.terms.values():
        if coeff.angles():
            raise ValueError("polar substitution needs constant coefficients; "
                             "the fiber angles would collide")
    coords = polar_coordinates(n)
    thetas = _polar_theta(n)
    wedge_cache: dict[tuple, Form] = {(): Form.scalar(n, 1)}

    def theta_wedge(tail):
        hit = wedge_cache.get(tail)
        if hit is None:
            hit = theta_wedge(tail[:-1]) * thetas[tail[-1][1] - 1]
            wedge_cache[tail] = hit
        return hit

    out = Form.zero(n)
    for (evens, odds), coeff in f.terms.items():
        rest_evens = []
        for gen in evens:
            if gen[0] == K_U:
                coeff = coeff * coords[gen[1] - 1]
            else:
                rest_evens.append(gen)
        split = len(odds)
        while split and odds[split - 1][0] == K_THETA:
            split -= 1
        head, tail = odds[:split], odds[split:]
        piece = Form(n, {(tuple(rest_evens), head): coeff})
        out = out + piece * theta_wedge(tail)
    return out


def check_dphi(n: int) -> Form:
    """Residual of the transgression equation on the closed bundle.

    Returns d(Phi) + Euler after polar normalization; the contract is the
    zero Form.
    """
    fam = build_phi(n)
    return polar_substitute(fam.phi.d() + fam.euler)


# -- boundary specialization ---------------------------------------------------

def specialize_boundary(f: Form, n: int | None = None) -> Form:
    """Restrict a sphere-bundle form to the boundary-adapted frame.

    Substitutes the two-coordinate fiber slice (u_1, u_n) = (cos, sin) of the
    boundary angle, the induced expressions for the tautological forms, and
    eliminates interior curvature among tangential indices through the
    induced-metric curvature.
    """
    if n is None:
        n = f.n
    if f.n != n:
        raise ValueError(f"form lives in dimension {f.n}, not {n}")
    cos, sin = TrigScalar.cos(), TrigScalar.sin()
    dphi_plus = Form.dphi(n, 1, True) + Form.omega(n, 1, n, True)
    mapping = {
        (K_U, 1, 0): Form.scalar(n, cos, True),
        (K_U, n, 0): Form.scalar(n, sin, True),
        (K_THETA, 1, 0): dphi_plus.scale(-sin),
        (K_THETA, n, 0): dphi_plus.scale(cos),
    }
    for al in range(2, n):
        mapping[(K_U, al, 0)] = Form.zero(n, True)
        mapping[(K_THETA, al, 0)] = (Form.omega(n, 1, al, True).scale(cos)
                                     - Form.omega(n, al, n, True).scale(sin))
    for s in range(2, n + 1):
        for t in range(s + 1, n + 1):
            mapping[(K_CURV, s, t)] = (Form.boundary_curvature(n, s, t)
                                       + Form.omega(n, 1, s, True) * Form.omega(n, 1, t, True))
    return f.substitute(mapping, boundary=True)


# -- coefficient functions -----------------------------------------------------

def region_d1(n: int):
    """Index region of the nonzero boundary forms: i, j >= 0, 2i + j <= n - 2."""
    return [(i, j) for i in range((n - 2) // 2 + 1) for j in range(n - 1 - 2 * i)]


@dataclass(frozen=True)
class CoeffFunctions:
    n: int

    def T(self, p, q):
        if p < 0 or q < 0:
            raise ValueError("powers must be non-negative")
        return TrigScalar.monomial(cos=p) * TrigScalar.monomial(sin=q)

    def I(self, p, q):
        if p < 0 or q < 0:
            raise ValueError("powers must be non-negative")
        return _integral_tcs(p, q)

    def a(self, i, j):
        return self._series(i, j, lambda p, q: self.T(p, q))

    def A(self, i, j):
        return self._series(i, j, lambda p, q: self.I(p, q))

    def _series(self, i, j, primitive):
        n = self.n
        out = TrigScalar.zero()
        for k in range(i, (n - j) // 2):
            num = Fraction((-1) ** (n + j + k) * double_factorial(n - 2 * k - 2))
            den = (2 ** k * math.factorial(j) * math.factorial(n - 2 * k - j - 2)
                   * math.factorial(i) * math.factorial(k - i))
            out = out + primitive(n - 2 * k - j - 2, j) * TrigScalar.rational(num, den)
        return out


@lru_cache(maxsize=None)
def _integral_tcs(p, q):
    """Antiderivative of cos^p sin^q vanishing at 0, in closed trig form."""
    if q == 0:
        if p == 0:
            return TrigScalar.phi()
        if p == 1:
            return TrigScalar.sin()
        prev = _integral_tcs(p - 2, 0)
        head = TrigScalar.monomial(cos=p - 1) * TrigScalar.sin()
        return (head + TrigScalar.rational(p - 1) * prev) / Fraction(p)
    if q == 1:
        return (TrigScalar.rational(1) - TrigScalar.monomial(cos=p + 1)) / Fraction(p + 1)
    head = -(TrigScalar.monomial(cos=p + 1) * TrigScalar.monomial(sin=q - 1))
    prev = _integral_tcs(p, q - 2)
    return (head + TrigScalar.rational(q - 1) * prev) / Fraction(p + q)


def coeff_functions(n: int) -> CoeffFunctions:
    return CoeffFunctions(n)


# -- boundary form family ------------------------------------------------------

@lru_cache(maxsize=None)
def boundary_form(n: int, i: int, j: int) -> Form:
    """Permutation sum over the tangential indices with i curvature pairs,
    j forms toward the projected direction, and connection forms toward the
    normal filling the rest; zero outside the region D1."""
    if (i, j) not in region_d1(n):
        return Form.zero(n, boundary=True)
    n_omega1 = n - 2 * i - j - 2
    total = Form.zero(n, boundary=True)
    for perm in permutations(range(2, n)):
        term = Form.scalar(n, perm_sign(perm), boundary=True)
        for pos in range(n_omega1):
            term = term * Form.omega(n, 1, perm[pos], True)
        for pair in range(i):
            s = perm[n_omega1 + 2 * pair]
            t = perm[n_omega1 + 2 * pair + 1]
            term = term * Form.boundary_curvature(n, s, t)
        for pos in range(n_omega1 + 2 * i, n - 2):
            term = term * Form.omega(n, perm[pos], n, True)
        total = total + term
    return total


@dataclass(frozen=True)
class BoundaryFamily:
    n: int
    coeffs: CoeffFunctions
    phi_m: dict            # (i, j) -> Form on the boundary algebra
    upsilon: Form          # interior product of the specialized secondary form
    gamma: Form            # transgression primitive, degree n - 2


@lru_cache(maxsize=None)
def boundary_family(n: int) -> BoundaryFamily:
    if n < 2:
        raise ValueError("boundary machinery needs ambient dimension >= 2")
    coeffs = coeff_functions(n)
    phi_m = {(i, j): boundary_form(n, i, j) for (i, j) in region_d1(n)}
    inv_norm = _invert_constant(
        TrigScalar.rational(double_factorial(n - 2)) * sphere_volume(n - 1))
    upsilon = specialize_boundary(build_phi(n).phi).interior_dphi()
    gamma = Form.zero(n, boundary=True)
    for (i, j), fm in phi_m.items():
        gamma = gamma + fm.scale(coeffs.A(i, j) * inv_norm)
    return BoundaryFamily(n, coeffs, phi_m, upsilon, gamma)


def build_upsilon_and_check(n: int) -> Form:
    """Residual of the concrete angular-derivative formula; contract: zero."""
    fam = boundary_family(n)
    inv_norm = _invert_constant(
        TrigScalar.rational(double_factorial(n - 2)) * sphere_volume(n - 1))
    rhs = Form.zero(n, boundary=True)
    for (i, j), fm in fam.phi_m.items():
        rhs = rhs + fm.scale(fam.coeffs.a(i, j) * inv_norm)
    return fam.upsilon - rhs


def build_gamma_and_check(n: int) -> Form:
    """Residual of d(Gamma) = Phi - (Phi at angle 0) on the boundary algebra."""
    fam = boundary_family(n)
    phi_b = specialize_boundary(build_phi(n).phi)
    return fam.gamma.d() - (phi_b - phi_b.evaluate_at_zero())


def check_boundary_closure(n: int) -> Form:
    """d of the specialized secondary form, after imposing the boundary
    dimension on semibasic monomials; contract: zero."""
    phi_b = specialize_boundary(build_phi(n).phi)
    return phi_b.d().base_degree_filter(n - 1)


# -- frame-rotation invariance --------------------------------------------------

def _rotation_matrix(n, p, q, c=Fraction(3, 5), s=Fraction(4, 5)):
    g = [[Fraction(int(i == j)) for j in range(n + 1)] for i in range(n + 1)]
    g[p][p], g[p][q], g[q][p], g[q][q] = c, -s, s, c
    return g


def rotate_frame(f: Form, p: int, q: int) -> Form:
    """Substitute a constant rational rotation of the frame in the (p, q)
    plane into every generator of an interior-algebra form."""
    n = f.n
    g = _rotation_matrix(n, p, q)
    mapping = {}
    for a in (p, q):
        mapping[(K_U, a, 0)] = (Form.coordinate(n, p).scale(g[a][p])
                                + Form.coordinate(n, q).scale(g[a][q]))
        mapping[(K_THETA, a, 0)] = (Form.theta(n, p).scale(g[a][p])
                                    + Form.theta(n, q).scale(g[a][q]))
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if a not in (p, q) and b not in (p, q):
                continue
            w = Form.zero(n)
            W = Form.zero(n)
            for cc in range(1, n + 1):
                if not g[a][cc]:
                    continue
                for dd in range(1, n + 1):
                    if not g[b][dd]:
                        continue
                    coeff = g[a][cc] * g[b][dd]
                    w = w + Form.omega(n, cc, dd).scale(coeff)
                    W = W + Form.curvature(n, cc, dd).scale(coeff)
            mapping[(K_OMEGA, a, b)] = w
            mapping[(K_CURV, a, b)] = W
    return f.substitute(mapping)


def rotate_tangential_frame(f: Form, p: int, q: int) -> Form:
    """Rotation in a tangential plane (indices in 2..n-1) on the boundary
    algebra, acting on the partial frame used by the boundary family."""
    n = f.n
    if not (2 <= p < q <= n - 1):
        raise ValueError("tangential plane indices must lie in 2..n-1")
    g = _rotation_matrix(n, p, q)
    mapping = {}
    for a in (p, q):
        mapping[(K_OMEGA, 1, a)] = (Form.omega(n, 1, p, True).scale(g[a][p])
                                    + Form.omega(n, 1, q, True).scale(g[a][q]))
        mapping[(K_OMEGA, a, n)] = (Form.omega(n, p, n, True).scale(g[a][p])
                                    + Form.omega(n, q, n, True).scale(g[a][q]))
    from .algebra import K_CURVM
    for s in range(2, n + 1):
        for t in range(s + 1, n + 1):
            if s not in (p, q) and t not in (p, q):
                continue
            W = Form.zero(n, True)
            for cc in range(2, n + 1):
                if not g[s][cc]:
                    continue
                for dd in range(2, n + 1):
                    if not g[t][dd]:
                        continue
                    W = W + Form.boundary_curvature(n, cc, dd).scale(g[s][cc] * g[t][dd])
            mapping[(K_CURVM, s, t)] = W
    return f.substitute(mapping, boundary=True)
