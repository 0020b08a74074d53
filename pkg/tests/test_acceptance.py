"""Acceptance criteria 1-10, one test per criterion.

Each test records a single PASS/FAIL line (shown in the terminal summary)
and then asserts the same verdict, including the runtime budget.
"""

import copy
import itertools
import json
import math
import time

import numpy as np
import pytest

from oracles import bessel_j_series, bessel_y_series, fd_jacobian_norms, monte_carlo_shell_volume
from torwave import coords
from torwave.cli_io import run_job
from torwave.cyl_modes import CylModeSpec, as_harmonic_mode
from torwave.field_algebra import HarmonicMode, beltrami_residual
from torwave.observables import ShellDomain, flux_through_torus, shell_integrals
from torwave.ring_integral import (
    RingModeSpec,
    assemble_ring_mode,
    build_quadrature,
    kernel_weights,
    kernel_weights_exponential,
    ring_mode,
    tau0_scaling_study,
)
from torwave.specfun import bessel, bessel_deriv

pytestmark = pytest.mark.acceptance

# ring modes of criteria 5-7: both kinds, m in {+-1, +-2}, l in {0, 1}
RING_MODES = list(itertools.product(["regular", "singular"], [1, -1, 2, -2], [0, 1]))
OMEGA = 3.0
TAU0 = 0.005
LEVELS = [(16, 96), (16, 128), (32, 192)]
FD_STEP = 1e-4


def ring_spec(kind, m, l, n=LEVELS[1]):
    return RingModeSpec(omega=OMEGA, m=m, l=l, kind=kind, tau0=TAU0, n_eta=n[0], n_phi=n[1])


def beltrami_targets():
    rng = np.random.default_rng(5)
    tau = rng.uniform(0.3, 0.7, 6)
    eta = rng.uniform(-math.pi, math.pi, 6)
    phi = rng.uniform(0, 2 * math.pi, 6)
    return coords.modified_to_cartesian(tau, eta, phi, 1.0)


def rot_z(delta):
    c, s = math.cos(delta), math.sin(delta)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def test_criterion_1_coordinates(report):
    start = time.perf_counter()
    rng = np.random.default_rng(1)
    tau = rng.uniform(1e-6, 1 - 1e-6, 1000)
    eta = rng.uniform(-math.pi, math.pi, 1000)
    phi = rng.uniform(0, 2 * math.pi, 1000)
    back = coords.cartesian_to_modified(coords.modified_to_cartesian(tau, eta, phi, 1.0), 1.0)
    rt = max(np.max(np.abs(g - w)) for g, w in zip(back, (tau, eta, phi)))

    jac = 0.0
    for t, e in zip(rng.uniform(0.02, 0.98, 20), rng.uniform(-math.pi, math.pi, 20)):
        fd = fd_jacobian_norms(lambda a, b, c: coords.modified_to_cartesian(a, b, c, 1.7), [t, e, 0.6])
        jac = max(jac, np.max(np.abs(np.asarray(coords.scale_factors(t, e, 1.7)) / fd - 1)))

    t, e, rho0 = 1e-4, 0.3, 2.0
    h = np.asarray(coords.scale_factors(t, e, rho0))
    asym = np.max(np.abs(h / [rho0, rho0 * t, rho0] - 1))
    frame = coords.frame_at(t, e, 0.9, rho0)
    bent = coords.bent_frame(e, 0.9)
    asym = max(asym, *(np.linalg.norm(a - b) for a, b in zip((frame.e_tau, frame.e_eta, frame.e_phi), bent)))
    # the volume element is a product of three factors, each off by ~tau cos(eta),
    # so its own bound is 3 tau rather than the per-factor tolerance
    vol = abs(coords.volume_element(t, e, rho0) / (rho0**3 * t) - 1)

    elapsed = time.perf_counter() - start
    ok = rt < 1e-12 and jac < 1e-6 and asym < 2e-4 and vol < 3 * t and elapsed < 1.0
    report(
        "1 coordinates", ok,
        f"round trip {rt:.1e}, FD Jacobian {jac:.1e}, near-ring scale factors/frame {asym:.1e}, "
        f"volume element {vol:.1e} (< 3 tau), {elapsed:.2f}s",
    )
    assert ok


def test_criterion_2_special_functions(report):
    start = time.perf_counter()
    x = np.linspace(0.1, 50, 500)
    wr = rec = 0.0
    for l in range(11):
        w = bessel("j", l, x) * bessel_deriv("y", l, x) - bessel_deriv("j", l, x) * bessel("y", l, x)
        wr = max(wr, np.max(np.abs(w * math.pi * x / 2 - 1)))
        if l:
            for kind in ("j", "y"):
                lhs = bessel(kind, l - 1, x) + bessel(kind, l + 1, x)
                rhs = 2 * l / x * bessel(kind, l, x)
                scale = np.abs(bessel(kind, l - 1, x)) + np.abs(bessel(kind, l + 1, x)) + np.abs(rhs)
                rec = max(rec, np.max(np.abs(lhs - rhs) / scale))
    spot = 0.0
    for l, xv in itertools.product([0, 1, 2, 5, 10], [0.1, 0.5, 1.0, 3.7, 8.0, 15.0]):
        for kind, oracle in (("j", bessel_j_series), ("y", bessel_y_series)):
            ref = oracle(l, xv)
            spot = max(spot, abs(bessel(kind, l, xv) - ref) / abs(ref))
    elapsed = time.perf_counter() - start
    ok = wr < 1e-10 and rec < 1e-10 and spot < 1e-12 and elapsed < 5.0
    report("2 special functions", ok, f"Wronskian {wr:.1e}, recurrence {rec:.1e}, series oracle {spot:.1e}, {elapsed:.2f}s")
    assert ok


def test_criterion_3_cylindrical_modes(report):
    start = time.perf_counter()
    rng = np.random.default_rng(3)
    worst = 0.0
    orders = []
    for _ in range(20):
        omega = rng.uniform(0.5, 5.0)
        spec = CylModeSpec(
            omega,
            rng.uniform(-0.9, 0.9) * omega,
            int(rng.integers(-4, 5)),
            kind=rng.choice(["regular", "singular"]),
            amplitude=complex(*rng.normal(size=2)),
        )
        mode = as_harmonic_mode(spec)
        rho = rng.uniform(1.0, 5.0) / spec.k_rho  # keep clear of the singular axis
        p = coords.cylindrical_to_cartesian(rho, rng.uniform(0, 2 * math.pi), rng.uniform(-2, 2))
        h = 1e-4 / omega
        r1, d1 = beltrami_residual(mode, p, h)
        worst = max(worst, r1, d1)
        r2, _ = beltrami_residual(mode, p, h / 2)
        orders.append(math.log2(r1 / r2))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-5 and min(orders) > 1.75 and max(orders) < 2.25 and elapsed < 30
    report(
        "3 cylindrical eigenmodes", ok,
        f"worst residual {worst:.1e} at h=1e-4/omega, observed order {min(orders):.2f}..{max(orders):.2f}, {elapsed:.2f}s",
    )
    assert ok


def test_criterion_4_kernel_identity(report):
    start = time.perf_counter()
    rng = np.random.default_rng(4)
    omega = rng.uniform(0.01, 10, 10_000)
    d = rng.uniform(0.01, 10, 10_000)
    a, b = kernel_weights(omega, d)
    ae, be = kernel_weights_exponential(omega, d)
    # relative to the size of the individual terms of each weight
    ea = np.max(np.abs(ae - a) / (2 * omega / d))
    eb = np.max(np.abs(be - b) / (2 / d**3 + 2 * omega / d**2))
    elapsed = time.perf_counter() - start
    ok = max(ea, eb) < 1e-15 and elapsed < 1.0
    report("4 kernel identity", ok, f"a: {ea:.1e}, b: {eb:.1e} over 1e4 samples, {elapsed:.2f}s")
    assert ok


def test_criterion_5_ring_mode_is_beltrami(report):
    start = time.perf_counter()
    pts = beltrami_targets()
    # FD floor: the same stencil on an exact eigenmode at the same points
    beam = as_harmonic_mode(CylModeSpec(OMEGA, 1.0, 1, kind="singular"))
    fd_floor = float(np.max(beltrami_residual(beam, pts, FD_STEP)))
    rows = []
    for kind, m, l in RING_MODES:
        res, fields = [], []
        for n in LEVELS:
            mode = ring_mode(ring_spec(kind, m, l, n))
            r, dv = beltrami_residual(mode, pts, FD_STEP)
            res.append(float(max(r.max(), dv.max())))
            fields.append(mode(pts))
        quad_floor = float(np.max(np.abs(fields[-1] - fields[-2])) / np.max(np.abs(fields[-1])))
        decreasing = all(b <= 1.05 * a + 10 * fd_floor for a, b in zip(res, res[1:]))
        rows.append((kind, m, l, res, quad_floor, res[-1] < 1e-3 and decreasing))
    elapsed = time.perf_counter() - start
    passed = [r for r in rows if r[-1]]
    ok = len(passed) == len(rows) and elapsed < 180
    failing = ", ".join(f"{k[0].upper()}(m={m},l={l})={res[-1]:.1e}" for k, m, l, res, _, good in rows if not good)
    report(
        "5 ring mode Beltrami", ok,
        f"{len(passed)}/{len(rows)} modes below 1e-3; FD floor {fd_floor:.1e}, "
        f"quadrature floor <= {max(r[4] for r in rows):.1e}; {elapsed:.1f}s"
        + (f"; failing: {failing}" if failing else ""),
    )
    assert ok, "\n".join(
        f"{k:8s} m={m:+d} l={l}: residuals {', '.join(f'{v:.2e}' for v in res)}  quad floor {q:.1e}"
        for k, m, l, res, q, _ in rows
    )


def test_criterion_6_standing_wave(report):
    start = time.perf_counter()
    shell = ShellDomain(0.3, 0.7, n_tau=6, n_eta=16, n_phi=32)
    worst_ratio = worst_conv = 0.0
    for kind, m, l in RING_MODES:
        mode = ring_mode(ring_spec(kind, m, l))
        energy = shell_integrals(mode, shell).mass
        f1 = flux_through_torus(mode, 0.5, 1.0, 32, 64)
        f2 = flux_through_torus(mode, 0.5, 1.0, 64, 128)
        worst_ratio = max(worst_ratio, abs(f2) / (OMEGA * energy))
        worst_conv = max(worst_conv, abs(f2 - f1) / (OMEGA * energy))
    elapsed = time.perf_counter() - start
    ok = worst_ratio < 1e-3 and worst_conv < 1e-6 and elapsed < 60
    report(
        "6 standing wave", ok,
        f"max |flux|/(omega E_shell) {worst_ratio:.1e}, change on doubling {worst_conv:.1e}, {elapsed:.1f}s",
    )
    assert ok


def test_criterion_7_equivariance(report):
    start = time.perf_counter()
    rng = np.random.default_rng(7)
    targets = np.column_stack([rng.uniform(0.3, 0.7, 5), rng.uniform(-math.pi, math.pi, 5), rng.uniform(0, 2 * math.pi, 5)])
    tol = 10 * 1e-3
    worst = 0.0
    for kind, m, l in RING_MODES:
        spec = ring_spec(kind, m, l)
        quad = build_quadrature(spec)
        base = assemble_ring_mode(spec, targets, quad=quad)
        for delta in (math.pi / 4, math.pi / 2):
            moved = assemble_ring_mode(spec, targets + [0, 0, delta], quad=quad)
            expected = np.exp(1j * m * delta) * base @ rot_z(delta).T
            worst = max(worst, np.max(np.linalg.norm(moved - expected, axis=1) / np.linalg.norm(base, axis=1)))
    elapsed = time.perf_counter() - start
    ok = worst < tol and elapsed < 30
    report("7 equivariance", ok, f"max relative mismatch {worst:.1e} (tolerance {tol:.0e}), {elapsed:.1f}s")
    assert ok


def test_criterion_8_tau0_scaling(report):
    start = time.perf_counter()
    seq = [0.2, 0.1, 0.05, 0.025, 0.0125]
    parts, ok = [], True
    for kind, l in itertools.product(["regular", "singular"], [0, 1]):
        spec = RingModeSpec(omega=OMEGA, m=1, l=l, kind=kind, n_eta=16, n_phi=128)
        study = tau0_scaling_study(spec, (0.5, 0.8, 0.3), seq)
        loc = study.local_exponents
        stable = abs(loc[-1] - loc[-2]) <= 0.1
        r = study.rescaled()
        agree = np.linalg.norm(r[-1] - r[-2]) / np.linalg.norm(r[-1])
        ok &= stable and agree < 0.05
        parts.append(f"{kind[0].upper()}{l}: p={study.exponent:.2f} (local {loc[-2]:.2f},{loc[-1]:.2f}) rescaled {agree:.1%}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 120
    report("8 tau0 scaling", ok, "; ".join(parts) + f"; {elapsed:.1f}s")
    assert ok


def test_criterion_9_observables(report):
    start = time.perf_counter()
    rng = np.random.default_rng(9)
    F = rng.normal(size=(100_000, 3)) + 1j * rng.normal(size=(100_000, 3))
    F *= 10.0 ** rng.uniform(-5, 5, (100_000, 1))
    lhs = np.linalg.norm(np.cross(F.real, F.imag), axis=1)
    rhs = 0.5 * np.sum(np.abs(F) ** 2, axis=1)
    amgm = float(np.max((lhs - rhs) / rhs))

    spec = RingModeSpec(omega=OMEGA, m=1, l=1, kind="singular", tau0=0.02, n_eta=16, n_phi=96, amplitude=0.6 - 0.3j)
    shell = ShellDomain(0.3, 0.7, n_tau=4, n_eta=8, n_phi=16)
    one = shell_integrals(ring_mode(spec), shell)
    two = shell_integrals(ring_mode(spec.with_(amplitude=2 * spec.amplitude)), shell)
    exact = two.mass == 4 * one.mass and two.spin == 4 * one.spin

    shell_c = ShellDomain(0.3, 0.7, rho0=1.2, n_tau=8, n_eta=32, n_phi=16)
    vol, err = monte_carlo_shell_volume(0.3, 0.7, 1.2, 400_000, np.random.default_rng(19))
    constant = HarmonicMode(1.0, lambda xyz: np.broadcast_to(np.array([1, 1j, 0]), np.shape(xyz)).copy())
    mass = shell_integrals(constant, shell_c).mass
    mc = abs(mass * 4 * math.pi / vol - 1)
    elapsed = time.perf_counter() - start
    ok = amgm <= 1e-14 and exact and mc < 1e-2 and elapsed < 60
    report(
        "9 observables", ok,
        f"AM-GM excess {amgm:.1e}, doubling exact: {exact}, shell volume vs Monte-Carlo {mc:.2%} "
        f"(MC stderr {err / vol:.2%}), {elapsed:.1f}s",
    )
    assert ok


def test_criterion_10_reproducibility(report, tmp_path):
    start = time.perf_counter()
    job = {
        "name": "repro",
        "task": "mode-eval",
        "mode": {"omega": OMEGA, "m": 2, "l": 1, "kind": "singular", "tau0": 0.01, "amplitude": [0.5, -1.0]},
        "quadrature": {"n_eta": 16, "n_phi": 128},
        "grid": {"system": "modified", "axes": {
            "tau": {"start": 0.3, "stop": 0.7, "num": 5},
            "eta": {"start": -math.pi, "stop": math.pi, "num": 8, "endpoint": False},
            "phi": {"start": 0.0, "stop": 2 * math.pi, "num": 8, "endpoint": False},
        }},
    }
    outputs = []
    for i, threads in enumerate([1, 1, 2, 4]):
        csv_path, _ = run_job(copy.deepcopy(job), tmp_path / str(i), threads=threads)
        outputs.append(csv_path.read_bytes())
    identical = all(o == outputs[0] for o in outputs)
    elapsed = time.perf_counter() - start
    ok = identical and elapsed < 30
    report("10 reproducibility", ok, f"4 runs (threads 1,1,2,4) byte-identical: {identical}, {elapsed:.1f}s")
    assert ok
