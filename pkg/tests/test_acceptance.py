"""Acceptance criteria, each run at its stated tolerance and time limit.

Every test records one PASS/FAIL line; the lines are printed in the pytest
terminal summary (and immediately with ``-s``).
"""

import csv
import io
import json
import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from corpus import CATALOG_LEMMAS, corpus, lemma_reports, random_subcodes
from eqlines import configurations as cfg
from eqlines.bounds import bound_absolute, bound_real_asymptotic, bound_real_spectral, bound_relative
from eqlines.cli import run
from eqlines.codes import code_to_graph, degree_bounded_switch, factor_gram, gram, gram_from_graph, restrict_switch, verify_equiangular
from eqlines.graphs import friedman_lower, graph_to_code, jiang_best_ball, jiang_lower_bound, mu, mu_lower_star, regular_graph_bounds
from eqlines.inequalities import analyze, evaluate_lemma, projection_ineq_complex, projection_ineq_real, sic_identity, welch


class Criterion:
    def __init__(self, label, limit):
        self.label = label
        self.limit = limit
        self.failures = []

    def check(self, ok, what):
        if not ok:
            self.failures.append(what)


@contextmanager
def criterion(label, limit):
    c = Criterion(label, limit)
    t0 = time.perf_counter()
    try:
        yield c
    except Exception as e:  # an exception is a failed criterion, reported then re-raised
        c.failures.append(f"{type(e).__name__}: {e}")
        _record(c, time.perf_counter() - t0)
        raise
    dt = time.perf_counter() - t0
    if c.limit is not None and dt >= c.limit:
        c.failures.append(f"runtime {dt:.2f} s exceeds {c.limit} s")
    _record(c, dt)
    assert not c.failures, "; ".join(c.failures[:5])


def _record(c, dt):
    status = "PASS" if not c.failures else "FAIL"
    detail = "" if not c.failures else " -- " + "; ".join(c.failures[:3])
    line = f"{c.label} {status} ({dt:.2f} s){detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def rel_slack_ok(r, tol):
    return abs(r.relative_slack) <= tol


def test_ac01_absolute_bound_witnesses():
    with criterion("AC1 absolute-bound witnesses", 1.0) as c:
        j = cfg.generate("johnson28")
        chk = verify_equiangular(j, 1e-9)
        c.check((j.n, j.r) == (28, 7) and j.n == math.comb(8, 2), "johnson28 shape")
        c.check(abs(chk.alpha - 1 / 3) <= 1e-9 and chk.max_deviation <= 1e-9, "johnson28 angle")
        ico = cfg.generate("icosahedron6")
        chk = verify_equiangular(ico, 1e-9)
        c.check(ico.n == 6 == math.comb(4, 2), "icosahedron6 size")
        c.check(abs(chk.alpha - 1 / math.sqrt(5)) <= 1e-9 and chk.is_equiangular, "icosahedron6 angle")


def test_ac02_projection_equality():
    with criterion("AC2 projection-inequality equality", 5.0) as c:
        rng = np.random.default_rng(2)
        for name in ("johnson28", "icosahedron6"):
            code = cfg.generate(name)
            ca = analyze(code)
            for _ in range(200):
                r = projection_ineq_real(ca, rng.standard_normal(code.n), rng.standard_normal(code.n))
                c.check(rel_slack_ok(r, 1e-7), f"{name}: slack {r.relative_slack:.3e}")
        for name in ("sic_c2", "sic_c3"):
            code = cfg.generate(name)
            ca = analyze(code)
            for _ in range(200):
                x = rng.standard_normal(code.n) + 1j * rng.standard_normal(code.n)
                y = rng.standard_normal(code.n) + 1j * rng.standard_normal(code.n)
                r = projection_ineq_complex(ca, x, y)
                c.check(rel_slack_ok(r, 1e-7), f"{name}: slack {r.relative_slack:.3e}")
                s = sic_identity(ca, x, y)
                c.check(rel_slack_ok(s, 1e-7) and s.hypothesis_ok, f"{name}: (r+1) identity {s.relative_slack:.3e}")


def test_ac03_improved_welch():
    with criterion("AC3 improved Welch bound", 10.0) as c:
        rng = np.random.default_rng(3)
        for k in range(100):
            r = int(rng.integers(1, 9))
            n = int(rng.integers(1, 41))
            w = welch(cfg.random_code(n, r, "complex", seed=1000 + k))
            c.check(w.pinv_quadform <= r + 1e-8, f"code {k}: quadform {w.pinv_quadform} > r")
            c.check(w.classic_sum >= w.improved_lower - 1e-8, f"code {k}: classic below improved")
            c.check(w.improved_lower >= w.welch_lower - 1e-8, f"code {k}: improved below n^2/r")
        for code in [cfg.basis(r, f) for r in (1, 2, 5, 8) for f in ("real", "complex")] + [cfg.sic_c2()]:
            w = welch(code)
            c.check(abs(w.pinv_quadform - code.r) <= 1e-8, f"equality (quadform) n={code.n} r={code.r}")
            c.check(abs(w.classic_sum - w.improved_lower) <= 1e-8, f"equality (sum) n={code.n} r={code.r}")


def test_ac04_lemma_suite():
    with criterion("AC4 lemma suite validity", 30.0) as c:
        codes = list(corpus())
        codes += [("johnson28/sub", s) for s in random_subcodes(cfg.johnson28(), 100, seed=41)]
        codes += [("sic_c3/sub", s) for s in random_subcodes(cfg.sic_c3(), 100, seed=42)]
        seen = set()
        for name, code in codes:
            for lid, r in lemma_reports(code, CATALOG_LEMMAS, samples=4, seed=4):
                if r.hypothesis_ok:
                    seen.add(lid)
                    c.check(r.relative_slack >= -1e-8, f"{name} {lid}: relative slack {r.relative_slack:.3e}")
        missing = set(CATALOG_LEMMAS) - seen
        c.check(not missing, f"lemmas never exercised with their hypothesis: {sorted(missing)}")
        jr = restrict_switch(cfg.johnson28(), 0)
        for i in range(1, 28):
            r = evaluate_lemma(jr, "R7", {"i": i})
            c.check(abs(r.lhs - 144) <= 1e-7 and abs(r.rhs - 144) <= 1e-7, f"R7 vertex {i}: {r.lhs} vs {r.rhs}")


def test_ac05_regular_graph_equality():
    with criterion("AC5 regular-graph bound witnesses", 5.0) as c:
        rep = regular_graph_bounds(cfg.cycle(5))
        s5 = math.sqrt(5)
        for v in (rep.bound1_lhs, rep.bound1_rhs):
            c.check(abs(v - (s5 + 1)) <= 1e-9, f"C5 bound1 {v}")
        for v in (rep.bound2_lhs, rep.bound2_rhs):
            c.check(abs(v - (s5 + 1) / 2) <= 1e-9, f"C5 bound2 {v}")
        c.check(rep.srg_equality_predicate, "C5 predicate")
        rep = regular_graph_bounds(cfg.schlafli_complement())
        for v in (rep.bound1_lhs, rep.bound1_rhs):
            c.check(abs(v - 14) <= 1e-7 * 14, f"Schlafli complement bound1 {v}")
        for v in (rep.bound2_lhs, rep.bound2_rhs):
            c.check(abs(v - 5) <= 1e-7 * 5, f"Schlafli complement bound2 {v}")
        c.check(rep.srg_equality_predicate, "Schlafli complement predicate")
        for g in (cfg.petersen(), cfg.paley(13)):
            rep = regular_graph_bounds(g)
            c.check(rep.bound1_lhs < rep.bound1_rhs and rep.bound2_lhs < rep.bound2_rhs, f"strict on {g}")
            c.check(not rep.tight1 and not rep.tight2, f"not tight on {g}")


def test_ac06_mu_tightness():
    with criterion("AC6 mu tightness on restricted johnson28", None) as c:
        g, a = code_to_graph(restrict_switch(cfg.johnson28(), 0))
        m = mu(g)
        c.check(abs(m - (1 - a) / (2 * a)) <= 1e-8 and abs(m - 1) <= 1e-8, f"mu = {m!r}")


def test_ac07_mu_lower_bounds():
    with criterion("AC7 mu lower bounds on random regular graphs", 60.0) as c:
        rng = np.random.default_rng(7)
        made = 0
        while made < 50:
            n = int(rng.integers(10, 201))
            k = int(rng.integers(1, 9))
            if n * k % 2 or k >= n:
                continue
            g = cfg.random_regular(n, k, seed=700 + made)
            made += 1
            m = mu(g, method="lapack")
            for t in range(1, g.max_degree + 1):
                c.check(m >= mu_lower_star(g, t) - 1e-8, f"n={n} k={k} t={t}: star bound")
            for q in (1, 2, 3):
                best = jiang_best_ball(g, q)
                lb = jiang_lower_bound(g.average_degree, q)
                c.check(best.value >= lb - 1e-8, f"n={n} k={k} q={q}: Jiang {best.value} < {lb}")
                c.check(m >= friedman_lower(g, list(best.vertices)) - 1e-8, f"n={n} k={k} q={q}: Friedman")


def test_ac08_bound_spot_values():
    with criterion("AC8 bound formula spot values", None) as c:
        c.check(bound_relative(7, "1/3") == 28, "relative(7, 1/3)")
        c.check(bound_absolute(23, "real") == 276, "absolute(23)")
        f2 = bound_real_asymptotic(10, "1/3", 2).factor
        c.check(abs(f2 - 1.5) <= 1e-12, f"factor(q=2) = {f2!r}")
        f100 = bound_real_asymptotic(10, "1/3", 100).factor
        c.check(abs(f100 - 1.25) <= 1e-4, f"factor(q=100) = {f100:.7f}, |diff| = {abs(f100 - 1.25):.2e} > 1e-4")
        r = 10**4
        v = bound_real_spectral(r, f"1/sqrt({r + 2})")
        c.check(abs(v / (r * r / 2) - 1) <= 0.05, f"spectral/absolute ratio {v / (r * r / 2):.4f}")


def test_ac09_pipeline_consistency():
    with criterion("AC9 pipeline consistency", None) as c:
        code = graph_to_code(cfg.cycle(5))
        M = gram(code)
        back = factor_gram(M)
        chk = verify_equiangular(back)
        c.check(chk.is_equiangular, "factored C5 code not equiangular")
        g, a = code_to_graph(back)
        c.check(np.max(np.abs(gram_from_graph(g, a).entries - M.entries)) <= 1e-8, "Gram not reproduced")
        jr = restrict_switch(cfg.johnson28(), 0)
        out, rep = degree_bounded_switch(jr)
        c.check(rep.high_degree == [] and np.array_equal(out.vectors, jr.vectors), "switch changed johnson28")


def _call(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, io.StringIO(stdin), out, err)
    return code, out.getvalue()


def test_ac10_cli_contract():
    with criterion("AC10 CLI contract", None) as c:
        _, j = _call(["generate", "--name", "johnson28"])
        code, out = _call(["verify", "--tol", "1e-9"], j)
        rep = json.loads(out)
        c.check(code == 0 and rep["is_equiangular"] and f"{rep['alpha']:.9f}" == "0.333333333", "verify pipeline")

        code, out = _call(["bounds", "--r", "7", "--alpha", "1/3", "--format", "csv"])
        rows = {r["bound_name"]: float(r["value"]) for r in csv.DictReader(io.StringIO(out)) if r["value"]}
        c.check(code == 0 and rows["relative"] == rows["absolute"] == rows["best"] == 28, "bounds csv")

        _, g = _call(["generate", "--name", "cycle", "--params", "n=5"])
        code, out = _call(["graph-bounds"], g)
        rep = json.loads(out)
        c.check(code == 0 and rep["tight1"] and rep["tight2"], "graph-bounds C5")

        for argv in (
            ["generate", "--name", "random_regular", "--params", "n=40", "k=5", "--seed", "3", "--no-timestamp"],
            ["generate", "--name", "random_code", "--seed", "3", "--no-timestamp"],
        ):
            c.check(_call(argv) == _call(argv + ["--threads", "2"]), f"not byte-identical: {' '.join(argv)}")
        _, sic = _call(["generate", "--name", "sic_c3", "--no-timestamp"])
        argv = ["ineq", "--lemma", "C2", "--samples", "10", "--seed", "5", "--no-timestamp"]
        c.check(_call(argv, sic) == _call(argv + ["--threads", "4"], sic), "ineq not byte-identical")
