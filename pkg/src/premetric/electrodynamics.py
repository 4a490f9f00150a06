"""Field pairs, energy-momentum forms, 3+1 splits, constitutive laws.

The central objects are an untwisted p-form F (field strength) and a
twisted (n-p)-form G (excitation) on the same chart.  From a vector field
u three densities are built:

    sigma_u = (F ^ (u _| G) - (-1)^p (u _| F) ^ G) / 2     (degree n-1)
    force_u = dF ^ (u _| G) + (u _| F) ^ dG                (degree n)
    phi_u   = (-1)^p (F ^ L_u G - L_u F ^ G) / 2           (degree n)

and d(sigma_u) = force_u + phi_u holds identically, with no assumption
about how G relates to F.  conservation_residual computes the difference
rather than returning zero by construction, so a sign error anywhere in
the exterior-calculus layer would surface as a nonzero residual.

All six operations keep exact twist parity: the three densities are
twisted (untwisted wedge twisted), as befits things meant to be
integrated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import StructuralError
from .forms import (
    Form,
    basis_form,
    contract,
    ext_d,
    lie_derivative,
    wedge,
)
from .hodge import hodge
from .report import CheckResult, nonzero_witness
from .scalars import Polynomial, Scalar


class FieldConfig:
    """An (F, G) pair: untwisted p-form plus twisted (n-p)-form, one chart.

    Degrees are restricted to 1 <= p <= n-1 so that every contraction in
    the density formulas lands on a form of degree >= 0.
    """

    __slots__ = ("chart", "p", "F", "G")

    def __init__(self, F, G):
        chart = F.chart
        if G.chart != chart:
            raise StructuralError("F and G must live on the same chart")
        p = F.degree
        if not 1 <= p <= chart.n - 1:
            raise StructuralError(f"field degree must satisfy 1 <= p <= n-1, got p={p}")
        if G.degree != chart.n - p:
            raise StructuralError(
                f"excitation degree must be n-p={chart.n - p}, got {G.degree}")
        if F.twist:
            raise StructuralError("field strength must be untwisted")
        if not G.twist:
            raise StructuralError("excitation must be twisted")
        self.chart = chart
        self.p = p
        self.F = F
        self.G = G

    def __repr__(self):
        return f"FieldConfig(n={self.chart.n}, p={self.p})"


def _check_u(u, cfg):
    if u.chart != cfg.chart:
        raise StructuralError("chart mismatch")


def _sign(p):
    return -1 if p % 2 else 1


def sigma_u(u, cfg):
    """Energy-momentum density along u; twisted (n-1)-form."""
    _check_u(u, cfg)
    F, G, p = cfg.F, cfg.G, cfg.p
    lhs = wedge(F, contract(u, G))
    rhs = wedge(contract(u, F), G).scale(_sign(p))
    return (lhs - rhs).scale(Fraction(1, 2))


def force_u(u, cfg):
    """Force density along u; twisted n-form built from the currents dF, dG."""
    _check_u(u, cfg)
    F, G = cfg.F, cfg.G
    return wedge(ext_d(F), contract(u, G)) + wedge(contract(u, F), ext_d(G))


def obstruction_phi_u(u, cfg):
    """The twisted n-form standing between d(sigma_u) and force_u."""
    _check_u(u, cfg)
    F, G, p = cfg.F, cfg.G, cfg.p
    inner = wedge(F, lie_derivative(u, G)) - wedge(lie_derivative(u, F), G)
    return inner.scale(Fraction(_sign(p), 2))


def conservation_residual(u, cfg):
    """d(sigma_u) - force_u - phi_u, computed term by term.

    Identically the zero n-form for every (F, G, u); asserting that is the
    core of the verification suites.
    """
    return ext_d(sigma_u(u, cfg)) - force_u(u, cfg) - obstruction_phi_u(u, cfg)


# -- n=4, p=2 closed forms ----------------------------------------------------
# Independent code paths for the physically central case; the suites check
# they agree with the general signed formulas above.


def sigma_u_4d(u, cfg):
    _require_4d(cfg)
    F, G = cfg.F, cfg.G
    out = wedge(F, contract(u, G)) - wedge(G, contract(u, F))
    return out.scale(Fraction(1, 2))


def force_u_4d(u, cfg):
    _require_4d(cfg)
    F, G = cfg.F, cfg.G
    return wedge(contract(u, F), ext_d(G)) - wedge(contract(u, G), ext_d(F))


def phi_u_4d(u, cfg):
    _require_4d(cfg)
    F, G = cfg.F, cfg.G
    out = wedge(F, lie_derivative(u, G)) - wedge(G, lie_derivative(u, F))
    return out.scale(Fraction(1, 2))


def _require_4d(cfg):
    if cfg.chart.n != 4 or cfg.p != 2:
        raise StructuralError("specialized formulas need n=4, p=2")


# -- step-by-step identities ----------------------------------------------------


def identity_suite(u, cfg, id_prefix=""):
    """The intermediate identities behind the conservation law, as checks.

    sym: contracting the vanishing (n+1)-form F^dG distributes as
         (u _| F)^dG + (-1)^p F^(u _| dG) and both routes give zero.
    a:   d(F ^ uG) = (-1)^p F ^ L_u G + force_u
    b:   (-1)^p d(uF ^ G) = (-1)^p L_u F ^ G - force_u
    a+b: their sum collapses to d(u _| (F^G)) = L_u F ^ G + F ^ L_u G.
    """
    _check_u(u, cfg)
    F, G, p = cfg.F, cfg.G, cfg.p
    sgn = _sign(p)
    f = force_u(u, cfg)
    checks = []

    dG = ext_d(G)
    expansion = wedge(contract(u, F), dG) + wedge(F, contract(u, dG)).scale(sgn)
    routed = contract(u, wedge(F, dG))
    ok = expansion == routed and expansion.is_zero()
    checks.append(CheckResult(
        id_prefix + "sym", "sym",
        "contraction of the vanishing (n+1)-form F^dG expands to zero",
        ok, "" if ok else nonzero_witness(expansion if not expansion.is_zero() else routed)))

    lhs_a = ext_d(wedge(F, contract(u, G)))
    rhs_a = wedge(F, lie_derivative(u, G)).scale(sgn) + f
    diff_a = lhs_a - rhs_a
    checks.append(CheckResult(
        id_prefix + "a", "a",
        "d(F ^ uG) = (-1)^p F ^ L_u G + force_u",
        diff_a.is_zero(), nonzero_witness(diff_a)))

    lhs_b = ext_d(wedge(contract(u, F), G)).scale(sgn)
    rhs_b = wedge(lie_derivative(u, F), G).scale(sgn) - f
    diff_b = lhs_b - rhs_b
    checks.append(CheckResult(
        id_prefix + "b", "b",
        "(-1)^p d(uF ^ G) = (-1)^p L_u F ^ G - force_u",
        diff_b.is_zero(), nonzero_witness(diff_b)))

    lhs_ab = ext_d(contract(u, wedge(F, G)))
    rhs_ab = wedge(lie_derivative(u, F), G) + wedge(F, lie_derivative(u, G))
    diff_ab = lhs_ab - rhs_ab
    checks.append(CheckResult(
        id_prefix + "a+b", "a+b",
        "d(u _| (F^G)) = L_u F ^ G + F ^ L_u G",
        diff_ab.is_zero(), nonzero_witness(diff_ab)))
    return checks


def currents(cfg):
    """(J, K) = (dG, dF): electric and magnetic current densities.

    Both are automatically closed, which is the exact-arithmetic version of
    charge conservation.
    """
    return ext_d(cfg.G), ext_d(cfg.F)


# -- 3+1 split (n=4, p=2, time coordinate x0) ---------------------------------


@dataclass(frozen=True)
class SplitFields:
    """Spatial pieces of (F, G, J): no dx0 in any index tuple.

    F = B + E^dx0, G = D - H^dx0, J = rho - j^dx0.  Coefficients may still
    depend on x0; only the index structure is spatial.
    """

    E: Form      # untwisted spatial 1-form
    B: Form      # untwisted spatial 2-form
    H: Form      # twisted spatial 1-form
    D: Form      # twisted spatial 2-form
    j: Form      # twisted spatial 2-form
    rho: Form    # twisted spatial 3-form

    def __post_init__(self):
        expected = [("E", self.E, 1, False), ("B", self.B, 2, False),
                    ("H", self.H, 1, True), ("D", self.D, 2, True),
                    ("j", self.j, 2, True), ("rho", self.rho, 3, True)]
        chart = self.E.chart
        if chart.n != 4:
            raise StructuralError("3+1 split needs a 4-dimensional chart")
        for name, form, degree, twist in expected:
            if form.chart != chart:
                raise StructuralError(f"{name}: chart mismatch")
            if form.degree != degree or form.twist != twist:
                raise StructuralError(
                    f"{name} must be a {'twisted' if twist else 'untwisted'} "
                    f"{degree}-form")
            if any(0 in idx for idx in form.components):
                raise StructuralError(f"{name} must be spatial (no dx0 factor)")


def _spatial_part(form):
    comps = {idx: poly for idx, poly in form.components.items() if 0 not in idx}
    return Form(form.chart, form.degree, form.twist, comps)


def _time_part(form, sign):
    """1 lower degree: the A in (A ^ dx0) summands, scaled by sign."""
    comps = {}
    for idx, poly in form.components.items():
        if 0 not in idx:
            continue
        rest = tuple(i for i in idx if i != 0)
        # idx is (0, rest...): A ^ dx0 puts dx0 last, costing (-1)^(deg-1)
        flip = -1 if (len(idx) - 1) % 2 else 1
        q = poly.scale(Scalar(sign * flip,
                              Fraction(0) if form.chart.complex_mode else None))
        comps[rest] = q
    return Form(form.chart, form.degree - 1, form.twist, comps)


def split_3plus1(F, G, J):
    """Decompose F = B + E^dx0, G = D - H^dx0, J = rho - j^dx0."""
    chart = F.chart
    if chart.n != 4:
        raise StructuralError("3+1 split needs a 4-dimensional chart")
    if F.degree != 2 or F.twist:
        raise StructuralError("F must be an untwisted 2-form")
    if G.degree != 2 or not G.twist:
        raise StructuralError("G must be a twisted 2-form")
    if J.chart != chart or J.degree != 3 or not J.twist:
        raise StructuralError("J must be a twisted 3-form on the same chart")
    return SplitFields(
        E=_time_part(F, 1),
        B=_spatial_part(F),
        H=_time_part(G, -1),
        D=_spatial_part(G),
        j=_time_part(J, -1),
        rho=_spatial_part(J),
    )


def recompose(split):
    """Rebuild (F, G, J) by wedging the split fields back together."""
    chart = split.E.chart
    dx0 = basis_form(chart, (0,))
    F = split.B + wedge(split.E, dx0)
    G = split.D - wedge(split.H, dx0)
    J = split.rho - wedge(split.j, dx0)
    return F, G, J


# -- constitutive laws ----------------------------------------------------------


class MaxwellLorentz:
    """G = hodge(F) / Z0 for a constant metric and impedance Z0.

    Z0 is a pseudoscalar: its value scales the dual, while the twist of the
    output is fixed by the excitation contract (twisted), which the Hodge
    dual already provides.
    """

    def __init__(self, metric, Z0):
        if not isinstance(Z0, Scalar):
            Z0 = Scalar(Z0, pseudo=True)
        if Z0.is_zero():
            raise StructuralError("impedance must be nonzero")
        if not Z0.pseudo:
            raise StructuralError("impedance is a pseudoscalar; tag it as such")
        self.metric = metric
        self.Z0 = Z0

    def apply(self, F):
        if F.twist:
            raise StructuralError("constitutive input must be untwisted")
        return hodge(self.metric, F).scale(self.Z0.inverse().as_plain())


class Axion:
    """G = hodge(F) / Z + alpha * F with a pseudoscalar coefficient alpha.

    alpha multiplies F as a pseudoscalar, so the alpha term comes out
    twisted like the dual does; that requires n = 2p for the degrees to
    line up.
    """

    def __init__(self, metric, Z, alpha):
        if not isinstance(Z, Scalar):
            Z = Scalar(Z, pseudo=True)
        if Z.is_zero():
            raise StructuralError("impedance must be nonzero")
        if not Z.pseudo:
            raise StructuralError("impedance is a pseudoscalar; tag it as such")
        if not isinstance(alpha, Polynomial):
            alpha = Polynomial.constant(metric.chart.n, alpha,
                                        metric.chart.complex_mode)
        self.metric = metric
        self.Z = Z
        self.alpha = alpha

    def apply(self, F):
        if F.twist:
            raise StructuralError("constitutive input must be untwisted")
        n, p = self.metric.chart.n, F.degree
        if n != 2 * p and not self.alpha.is_zero():
            raise StructuralError("axion term needs n = 2p")
        dual = hodge(self.metric, F).scale(self.Z.inverse().as_plain())
        return dual + F.scale(self.alpha, pseudo=True)


class LinearLocal:
    """G components as a constant-free matrix action on F components.

    chi maps the p-form component vector (strictly increasing index tuples
    in lexicographic order) to the (n-p)-form component vector in the same
    convention; entries are Polynomials, so pointwise media are allowed.
    """

    def __init__(self, chart, p, chi):
        n = chart.n
        self.rows = list(combinations(range(n), n - p))
        self.cols = list(combinations(range(n), p))
        if len(chi) != len(self.rows) or any(len(r) != len(self.cols) for r in chi):
            raise StructuralError(
                f"chi must be {len(self.rows)}x{len(self.cols)} for n={n}, p={p}")
        self.chart = chart
        self.p = p
        self.chi = [[self._entry(e) for e in row] for row in chi]

    def _entry(self, e):
        if isinstance(e, Polynomial):
            if e.n != self.chart.n or e.complex_mode != self.chart.complex_mode:
                raise StructuralError("chi entry does not match the chart")
            return e
        return Polynomial.constant(self.chart.n, e, self.chart.complex_mode)

    @classmethod
    def from_law(cls, law, chart, p):
        """Sample another law on basis forms to extract its matrix."""
        rows = list(combinations(range(chart.n), chart.n - p))
        cols = list(combinations(range(chart.n), p))
        chi = [[chart.zero_poly() for _ in cols] for _ in rows]
        for c, idx in enumerate(cols):
            image = law.apply(basis_form(chart, idx))
            for r, jdx in enumerate(rows):
                poly = image.components.get(jdx)
                if poly is not None:
                    chi[r][c] = poly
        return cls(chart, p, chi)

    def apply(self, F):
        if F.twist:
            raise StructuralError("constitutive input must be untwisted")
        if F.degree != self.p or F.chart != self.chart:
            raise StructuralError("field does not match the law's chart or degree")
        comps = {}
        for r, jdx in enumerate(self.rows):
            total = self.chart.zero_poly()
            for c, idx in enumerate(self.cols):
                poly = F.components.get(idx)
                if poly is None or self.chi[r][c].is_zero():
                    continue
                total = total + self.chi[r][c] * poly
            if not total.is_zero():
                comps[jdx] = total
        return Form(self.chart, self.chart.n - self.p, True, comps)


class Custom:
    """An opaque F -> G map; conservation is checked, never assumed."""

    def __init__(self, fn):
        self.fn = fn if callable(fn) else (lambda F, fixed=fn: fixed)

    def apply(self, F):
        G = self.fn(F)
        if not isinstance(G, Form) or not G.twist:
            raise StructuralError("custom law must produce a twisted form")
        if G.chart != F.chart or G.degree != F.chart.n - F.degree:
            raise StructuralError("custom law output has wrong chart or degree")
        return G


def apply_constitutive(law, F):
    """Run any of the law objects; output is always a twisted (n-p)-form."""
    return law.apply(F)
