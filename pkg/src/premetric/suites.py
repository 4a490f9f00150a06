"""Verification suites: seeded batches of exact checks over random fields.

Every suite maps a RunConfig to a list of CheckResult rows.  Ids carry a
zero-padded instance number so sorted report order equals generation
order.  Each suite draws from its own deterministically seeded stream
(seed string "<seed>:<suite>"), so adding or removing suites never
shifts another suite's sample sequence.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .config import RunConfig, build_law, parse_field_inputs
from .electrodynamics import (FieldConfig, conservation_residual, force_u,
                              identity_suite, obstruction_phi_u, recompose,
                              sigma_u, split_3plus1)
from .errors import ConfigError
from .forms import coordinate_field
from .formexpr import parse_form, parse_vector_field
from .randgen import random_form
from .reciprocity import (FieldPairZ, PairTensor, check_factorization,
                          pair_tensor, self_reciprocal_pair, star_z)
from .report import CheckResult, nonzero_witness
from .scalars import Scalar

_DEFAULT_Z = (Fraction(1), Fraction(2), Fraction(-3), Fraction(1, 5))


def _rng(cfg, suite):
    return random.Random(f"{cfg.seed}:{suite}")


def _instances(cfg, *fields):
    """samples if any of the named inputs is drawn randomly, else 1."""
    for name in fields:
        if getattr(cfg, name) in (None, "random"):
            return cfg.samples
    return 1


def _result(check_id, equation, description, residual):
    ok = residual.is_zero()
    return CheckResult(check_id, equation, description, ok,
                       "" if ok else nonzero_witness(residual))


def conservation_suite(cfg: RunConfig):
    rng = _rng(cfg, "conservation")
    checks = []
    for k in range(_instances(cfg, "F", "G", "u")):
        F, G, _, u = parse_field_inputs(cfg, rng, "conservation")
        r = conservation_residual(u, FieldConfig(F, G))
        checks.append(_result(
            f"conservation-{k:04d}", "en-mom",
            f"d(Sigma_u) - f_u - phi_u = 0 at n={cfg.n}, p={cfg.p}", r))
    return checks


def identities_suite(cfg: RunConfig):
    rng = _rng(cfg, "identities")
    checks = []
    for k in range(_instances(cfg, "F", "G", "u")):
        F, G, _, u = parse_field_inputs(cfg, rng, "identities")
        checks.extend(identity_suite(u, FieldConfig(F, G),
                                     id_prefix=f"identity-{k:04d}-"))
    return checks


def phi_suite(cfg: RunConfig):
    """Symmetry-obstruction checks under the configured constitutive law.

    phi_u = 0 is a theorem for the metric laws with constant data and
    coordinate u; for a custom law it generally FAILS, with the nonzero
    witness reported.  The balance checks must pass either way: the
    conservation identity holds whatever G is.
    """
    if cfg.constitutive is None:
        raise ConfigError("phi suite needs a constitutive law")
    law = build_law(cfg)
    kind = cfg.constitutive["kind"]
    tag = "ML" if kind in ("maxwell-lorentz", "axion") else "constit"
    chart = cfg.chart()
    rng = _rng(cfg, "phi")

    if cfg.u == "random":
        us = [(f"u{a}", coordinate_field(chart, a)) for a in range(cfg.n)]
    else:
        us = [("u", parse_vector_field(cfg.u, chart))]

    checks = []
    for k in range(cfg.samples if cfg.F == "random" else 1):
        if cfg.F == "random":
            F = random_form(rng, chart, cfg.p, False, cfg.degree_bound)
        else:
            F = parse_form(cfg.F, chart, cfg.p, twist=False)
        fc = FieldConfig(F, law.apply(F))
        for label, u in us:
            phi = obstruction_phi_u(u, fc)
            checks.append(_result(
                f"phi-{k:04d}-{label}", tag,
                f"phi_u = 0 under the {kind} law for {label}", phi))
            r = conservation_residual(u, fc)
            checks.append(_result(
                f"phi-{k:04d}-{label}-balance", "en-mom",
                f"balance d(Sigma_u) = f_u + phi_u still exact for {label}", r))
    return checks


def split_suite(cfg: RunConfig):
    if cfg.n != 4 or cfg.p != 2:
        raise ConfigError("split suite needs n=4, p=2")
    rng = _rng(cfg, "split")
    checks = []
    for k in range(_instances(cfg, "F", "G", "J")):
        F, G, J, _ = parse_field_inputs(cfg, rng, "split")
        s = split_3plus1(F, G, J)
        F2, G2, J2 = recompose(s)
        rows = [("F", F2 - F, "F", "B + E^dx0 rebuilds F; E, B untwisted and spatial"),
                ("G", G2 - G, "G", "D - H^dx0 rebuilds G; H, D twisted and spatial"),
                ("J", J2 - J, "G", "rho - j^dx0 rebuilds J; j, rho twisted and spatial")]
        for name, residual, eq, desc in rows:
            checks.append(_result(f"split-{k:04d}-{name}", eq, desc, residual))
    return checks


def _as_pseudo(value, chart):
    return Scalar(value, Fraction(0) if chart.complex_mode else None, pseudo=True)


def reciprocity_suite(cfg: RunConfig):
    if cfg.n != 4 or cfg.p != 2:
        raise ConfigError("reciprocity suite needs n=4, p=2")
    rng = _rng(cfg, "reciprocity")
    zs = cfg.z if cfg.z else _DEFAULT_Z

    checks = []
    for k in range(_instances(cfg, "F", "G", "u")):
        F, G, _, u = parse_field_inputs(cfg, rng, "reciprocity")
        z = zs[k % len(zs)]
        pair = FieldPairZ(F, G, z)

        twice = star_z(star_z(pair))
        ok = twice.F == F.scale(-1) and twice.G == G.scale(-1)
        checks.append(CheckResult(
            f"recip-{k:04d}-square", "recip2",
            f"star_z applied twice negates the pair (z={z})", ok,
            "" if ok else nonzero_witness(twice.F + F)))

        st = star_z(pair)
        before = FieldConfig(pair.F, pair.G)
        after = FieldConfig(st.F, st.G)
        d_sigma = sigma_u(u, after) - sigma_u(u, before)
        d_force = force_u(u, after) - force_u(u, before)
        d_phi = obstruction_phi_u(u, after) - obstruction_phi_u(u, before)
        ok = d_sigma.is_zero() and d_force.is_zero() and d_phi.is_zero()
        bad = next((x for x in (d_sigma, d_force, d_phi) if not x.is_zero()),
                   d_sigma)
        checks.append(CheckResult(
            f"recip-{k:04d}-densities", "recip2",
            "Sigma_u, f_u, phi_u unchanged by the reciprocity map", ok,
            "" if ok else nonzero_witness(bad)))

        scaled = FieldPairZ(F.scale(3), G.scale(Fraction(1, 3)), z)
        ok = pair_tensor(scaled) == pair_tensor(pair)
        checks.append(CheckResult(
            f"recip-{k:04d}-tensor", "k",
            "pair tensor invariant under (F, G) -> (kF, G/k), k=3", ok,
            "" if ok else "tensor changed under rescaling"))

        ok = pair_tensor(st) == -PairTensor.from_forms(G, F)
        checks.append(CheckResult(
            f"recip-{k:04d}-swap", "O22",
            "tensor of the starred pair is -G (x) F, independent of z", ok,
            "" if ok else "starred tensor is not -G (x) F"))

        cpair = pair.to_complex()
        i = Scalar.i()
        for sign, label in ((1, "plus"), (-1, "minus")):
            eig = self_reciprocal_pair(cpair, sign)
            seig = star_z(eig)
            lam = i if sign == 1 else -i
            factor = -(i * cpair.z) if sign == 1 else i * cpair.z
            ok = (seig.F == eig.F.scale(lam) and seig.G == eig.G.scale(lam)
                  and eig.F == eig.G.scale(factor))
            checks.append(CheckResult(
                f"recip-{k:04d}-eigen-{label}", "evs2",
                "self-reciprocal pair is a star_z eigenvector "
                f"(eigenvalue {'+i' if sign == 1 else '-i'})", ok,
                "" if ok else "eigenpair relation failed"))
    return checks


def factorization_suite(cfg: RunConfig):
    if cfg.n != 4 or cfg.p != 2:
        raise ConfigError("factorization suite needs n=4, p=2")
    metric = cfg.metric_spec()
    Z0 = cfg.Z0 if cfg.Z0 is not None else Fraction(1)
    chart = cfg.chart()
    rng = _rng(cfg, "factorization")
    checks = []
    for k in range(_instances(cfg, "F")):
        if cfg.F == "random":
            F = random_form(rng, chart, 2, False, cfg.degree_bound)
        else:
            F = parse_form(cfg.F, chart, 2, twist=False)
        checks.extend(check_factorization(metric, _as_pseudo(Z0, chart), F,
                                          id_prefix=f"factor-{k:04d}-"))
    return checks


SUITE_RUNNERS = {
    "conservation": conservation_suite,
    "identities": identities_suite,
    "phi": phi_suite,
    "split": split_suite,
    "reciprocity": reciprocity_suite,
    "factorization": factorization_suite,
}


def run_suites(cfg: RunConfig, names):
    checks = []
    for name in names:
        checks.extend(SUITE_RUNNERS[name](cfg))
    return checks
