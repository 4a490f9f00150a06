"""The pair-space complex structure (F, G) -> (zG, -F/z) and its checks.

The map acts on PAIRS of an untwisted 2-form and a twisted 2-form over a
4-dimensional chart, never on a single form: there is no well-defined
image of one 2-form alone, because the z-scaling that makes the square
equal -identity lives on the pair.  Accordingly this module exposes no
single-form operation, and the test suite demonstrates why (two pairs
sharing the same F map to different images).

z is a nonzero pseudoscalar stored per pair, so each pair carries its own
complex structure; orientation reversal sends z to -z and the structure
transforms along.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import MetricError, StructuralError
from .forms import Form, components_equal
from .hodge import double_hodge_sign, hodge
from .report import CheckResult, nonzero_witness
from .scalars import Scalar


class FieldPairZ:
    """(F, G) with an impedance-like pseudoscalar z; the unit of reciprocity."""

    __slots__ = ("chart", "F", "G", "z")

    def __init__(self, F, G, z):
        chart = F.chart
        if chart.n != 4:
            raise StructuralError("field pairs live on 4-dimensional charts")
        if G.chart != chart:
            raise StructuralError("F and G must live on the same chart")
        if F.degree != 2 or F.twist:
            raise StructuralError("F must be an untwisted 2-form")
        if G.degree != 2 or not G.twist:
            raise StructuralError("G must be a twisted 2-form")
        if not isinstance(z, Scalar):
            z = Scalar(z, Fraction(0) if chart.complex_mode else None, pseudo=True)
        if z.is_zero():
            raise StructuralError("z must be nonzero")
        if not z.pseudo:
            raise StructuralError("z is a pseudoscalar; tag it as such")
        if z.complex_mode != chart.complex_mode:
            raise StructuralError("z scalar mode must match the chart")
        self.chart = chart
        self.F = F
        self.G = G
        self.z = z

    def to_complex(self):
        if self.chart.complex_mode:
            return self
        chart = self.chart.to_complex()
        conv = lambda f: Form(chart, f.degree, f.twist,
                              {i: p.to_complex() for i, p in f.components.items()})
        return FieldPairZ(conv(self.F), conv(self.G), self.z.to_complex())

    def __eq__(self, other):
        if not isinstance(other, FieldPairZ):
            return NotImplemented
        return (self.chart == other.chart and self.z == other.z
                and self.F == other.F and self.G == other.G)

    def __repr__(self):
        return f"FieldPairZ(z={self.z!r}, F={self.F!r}, G={self.G!r})"


def star_z(pair):
    """(F, G) -> (zG, -F/z); applying it twice negates the pair.

    The pseudoscalar scalings carry the twist bookkeeping: zG lands
    untwisted in the F slot and -F/z lands twisted in the G slot.
    """
    new_F = pair.G.scale(pair.z)
    new_G = pair.F.scale(-pair.z.inverse())
    return FieldPairZ(new_F, new_G, pair.z)


class PairTensor:
    """Rank-4 component array T[ab][cd] = F_ab * G_cd on increasing pairs."""

    __slots__ = ("chart", "entries")

    def __init__(self, chart, entries):
        self.chart = chart
        self.entries = tuple(tuple(row) for row in entries)

    @classmethod
    def from_forms(cls, A, B):
        if A.chart != B.chart:
            raise StructuralError("chart mismatch")
        chart = A.chart
        pairs = list(combinations(range(chart.n), 2))
        zero = chart.zero_poly()
        rows = []
        for ab in pairs:
            a = A.components.get(ab)
            if a is None:
                rows.append([zero] * len(pairs))
                continue
            rows.append([a * B.components[cd] if cd in B.components else zero
                         for cd in pairs])
        return cls(chart, rows)

    def __neg__(self):
        return PairTensor(self.chart, [[-e for e in row] for row in self.entries])

    def __eq__(self, other):
        if not isinstance(other, PairTensor):
            return NotImplemented
        return self.chart == other.chart and self.entries == other.entries

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)


def pair_tensor(pair):
    """The z-independent tensor product of the pair's component arrays."""
    return PairTensor.from_forms(pair.F, pair.G)


def self_reciprocal_pair(pair, sign):
    """Eigenpair (F -+ izG, G +- iF/z) of the pair map, eigenvalue +-i.

    Needs Gaussian-rational (complex) scalar mode; sign is +1 or -1 and
    picks the eigenvalue +i or -i.  The two components are proportional:
    F_eig = -+ iz G_eig.
    """
    if sign not in (1, -1):
        raise StructuralError("sign must be +1 or -1")
    if not pair.chart.complex_mode:
        raise StructuralError("eigenpairs need a complex-mode chart")
    i = Scalar.i()
    iz = i * pair.z
    F_eig = pair.F - pair.G.scale(iz if sign > 0 else -iz)
    G_eig = pair.G + pair.F.scale(i * pair.z.inverse() if sign > 0
                                  else -(i * pair.z.inverse()))
    return FieldPairZ(F_eig, G_eig, pair.z)


def check_factorization(metric, Z0, F, id_prefix=""):
    """With G = hodge(F)/Z0 and z = Z0, the pair map IS the Hodge star.

    Verifies componentwise that star_z(F, G) = (hodge F, hodge G), and that
    the induced eigenpairs are Hodge self-dual: hodge(F_eig) = +-i F_eig.
    Needs a metric whose double dual is -1 on 2-forms.
    """
    chart = metric.chart
    if chart.n != 4:
        raise MetricError("factorization check needs a 4-dimensional chart")
    if double_hodge_sign(metric, 2) != -1:
        raise MetricError("factorization needs double-dual -1 on 2-forms "
                          "(Lorentzian-type signature)")
    if not isinstance(Z0, Scalar):
        Z0 = Scalar(Z0, pseudo=True)
    if Z0.is_zero():
        raise StructuralError("Z0 must be nonzero")
    G = hodge(metric, F).scale(Z0.inverse().as_plain())
    pair = FieldPairZ(F, G, Z0)
    starred = star_z(pair)

    checks = []
    diff_F = starred.F - Form(chart, 2, False, hodge(metric, F).components)
    checks.append(CheckResult(
        id_prefix + "factor-F", "factor",
        "first slot of the pair map equals hodge(F) componentwise",
        diff_F.is_zero(), nonzero_witness(diff_F)))
    diff_G = starred.G - Form(chart, 2, True, hodge(metric, G).components)
    checks.append(CheckResult(
        id_prefix + "factor-G", "factor",
        "second slot of the pair map equals hodge(G) componentwise",
        diff_G.is_zero(), nonzero_witness(diff_G)))

    cpair = pair.to_complex()
    cmetric_chart = cpair.chart
    for sign, name in ((1, "plus"), (-1, "minus")):
        eig = self_reciprocal_pair(cpair, sign)
        dual = hodge_complex(metric, cmetric_chart, eig.F)
        target = eig.F.scale(Scalar.i() if sign > 0 else -Scalar.i())
        ok = components_equal(dual, target)
        witness = ""
        if not ok:
            diff = Form(cmetric_chart, 2, False, dual.components) - target
            witness = nonzero_witness(diff)
        checks.append(CheckResult(
            id_prefix + f"selfdual-{name}", "factor",
            f"eigen field strength is hodge self-dual with eigenvalue "
            f"{'+' if sign > 0 else '-'}i",
            ok, witness))
    return checks


def hodge_complex(metric, complex_chart, a):
    """Hodge dual of a complex-mode form using a real-mode metric.

    The metric is rational data; only the form coefficients are complex,
    so the dual is computed on a complex-mode copy of the chart.
    """
    from .hodge import MetricSpec

    if metric.chart.n != complex_chart.n:
        raise StructuralError("chart dimension mismatch")
    cmetric = MetricSpec(complex_chart, metric.g)
    return hodge(cmetric, a)
