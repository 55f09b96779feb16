"""Verification suites driven by ``flagquant verify``.

Each suite expands into independent cases. A case is a module-level function
name plus JSON-safe arguments, so cases can be shipped to worker processes;
results are merged back in case order, which makes serial and parallel runs
produce identical reports.
"""
from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import berezin as bz
from . import starprod as sp
from .bbw import bbw, duality_check
from .bruteforce import euclidean_system, oracle_bbw, oracle_negate_w0
from .parabolic import build_parabolic
from .rootsys import Weight, root_system
from .symbolic import GaussRational, RationalExpr, parse_expr

SUITES = ("rootsys", "bbw", "duality", "berezin", "star", "asymptotics")

SWEEP_SYSTEMS = (("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 3), ("G", 2))
SWEEP_RANGE = 6
ROOTSYS_SYSTEMS = SWEEP_SYSTEMS + (
    ("A", 5), ("B", 4), ("C", 4), ("D", 4), ("D", 5), ("E", 6), ("E", 7), ("E", 8), ("F", 4),
)
BEREZIN_MAX_N = 6
WORD_MAX_LEN = 3


@dataclass(frozen=True)
class Case:
    suite: str
    name: str
    func: str
    args: tuple = ()


@dataclass
class CaseResult:
    suite: str
    name: str
    passed: bool
    checked: int = 0
    counterexample: str | None = None
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"suite": self.suite, "case": self.name, "passed": self.passed, "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.detail:
            out["detail"] = self.detail
        return out


# -- sweeps -----------------------------------------------------------------------------

def thetas(rank: int):
    for k in range(rank + 1):
        yield from itertools.combinations(range(rank), k)


def sweep_weights(rank: int, theta, bound: int = SWEEP_RANGE):
    ranges = [range(-bound, bound + 1) if i not in theta else (0,) for i in range(rank)]
    for c in itertools.product(*ranges):
        yield Weight.of(*c)


def _theta_str(theta) -> str:
    return ",".join(str(i + 1) for i in theta) or "-"


# -- case functions (return passed, checked, counterexample, detail) -----------------------

def case_rootsys(family: str, rank: int):
    rs = root_system(family, rank)
    es = euclidean_system(family, rank)
    checks = 0
    problems = []
    checks += 1
    if len(rs.positive_roots) != len(es.positive_roots):
        problems.append(f"{len(rs.positive_roots)} positive roots, orbit count {len(es.positive_roots)}")
    checks += 1
    if len(rs.longest_element) != len(rs.positive_roots):
        problems.append("length of w0 differs from the number of positive roots")
    checks += 1
    if rs.apply_word(rs.longest_element, rs.rho) != -rs.rho:
        problems.append("w0 does not send rho to -rho")
    for i in range(rank):
        lam = Weight.of(*[int(j == i) for j in range(rank)])
        checks += 2
        if rs.weyl_dim(lam) != es.dim(lam):
            problems.append(f"dim {lam}: {rs.weyl_dim(lam)} vs {es.dim(lam)}")
        if rs.negate_by_w0(lam) != oracle_negate_w0(family, rank, lam):
            problems.append(f"-w0 {lam} disagrees with orbit oracle")
    return not problems, checks, (problems[0] if problems else None), {}


def case_bbw(family: str, rank: int, theta: tuple):
    pd = build_parabolic((family, rank), theta)
    n = 0
    for lam in sweep_weights(rank, theta):
        n += 1
        got = bbw(pd, lam)
        ref = oracle_bbw(family, rank, lam)
        same = got.vanishes == ref.vanishes and (
            got.vanishes
            or (got.degree, got.highest_weight, got.dim) == (ref.degree, ref.highest_weight, ref.dim)
        )
        if not same:
            return False, n, f"lambda={lam}: bbw {got.to_json()} vs oracle {ref}", {}
    return True, n, None, {}


def case_duality(family: str, rank: int, theta: tuple):
    pd = build_parabolic((family, rank), theta)
    n = 0
    for lam in sweep_weights(rank, theta):
        n += 1
        rep = duality_check(pd, lam)
        if not rep.passed:
            return False, n, f"lambda={lam}: {'; '.join(rep.failures)}", {}
    return True, n, None, {}


def case_berezin_traces(n: int):
    model = bz.Cp1Model(n)
    k = 0
    for w in bz.all_words(WORD_MAX_LEN):
        k += 1
        chk = bz.trace_identity_check(model, w)
        if not chk.passed:
            return False, k, f"trace identity, n={n}, word={''.join(w) or '1'}: {chk.to_json()}", {}
        k += 1
        if bz.sigma_map(model, w) != bz.covariant_symbol(model, bz.tau_word(model, w)):
            return False, k, f"sigma map vs covariant symbol, n={n}, word={''.join(w)}", {}
    return True, k, None, {}


def case_berezin_structure(n: int, seed: int = 0):
    model = bz.Cp1Model(n)
    rng = random.Random(seed * 1000 + n)
    k = 0
    # reproducing property of coherent states
    for _ in range(20):
        w = GaussRational(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                          Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        e = bz.coherent_eval(model, w)
        for j in range(model.N):
            k += 1
            s = [GaussRational(int(i == j)) for i in range(model.N)]
            if bz.inner_coeffs(model, s, e) != w ** j:
                return False, k, f"reproducing property, n={n}, k={j}, w={w}", {}
    k += 1
    s_h = bz.overlap(model) / parse_expr(f"(1+z*zbar)^{n}")
    if s_h != RationalExpr.const(model.N):
        return False, k, f"S h = {s_h}, expected {model.N}", {}
    fam, taus = bz.su2_model(model)
    for X in fam.xi:
        k += 1
        if not bz.moment_identity_holds(fam, X):
            return False, k, f"moment identity for {X}, n={n}", {}
    for X in fam.real_f:
        k += 1
        if fam.real_f[X] != fam.real_f[X].conjugate():
            return False, k, f"moment function for {X} is not real", {}
    for X, Y in itertools.combinations(bz.GENERATORS, 2):
        k += 2
        if not bz.equivariance_holds(fam, X, Y):
            return False, k, f"equivariance {X},{Y}", {}
        br = bz.bracket(X, Y)
        rhs = bz.zero_matrix(model.N)
        for g, c in br.items():
            rhs = bz.mat_add(rhs, taus[g], c)
        if bz.commutator(taus[X], taus[Y]) != rhs:
            return False, k, f"[tau({X}), tau({Y})]", {}
    k += 1
    if not bz.casimir_symbol(model).is_constant():
        return False, k, "Casimir symbol not constant", {}
    k += 1
    if bz.casimir_matrix(model) != bz.mat_scale(bz.identity_matrix(model.N), n * (n + 2)):
        return False, k, "Casimir matrix is not n(n+2)", {}
    for j, g in enumerate(TOEPLITZ_FUNCTIONS):
        for _ in range(4):
            k += 1
            A = random_matrix(rng, model.N)
            lhs, rhs = bz.toeplitz_pairing(model, A, parse_expr(g))
            if lhs != rhs:
                return False, k, f"Toeplitz pairing n={n}, g={g}: {lhs} vs {rhs}", {}
    return True, k, None, {}


TOEPLITZ_FUNCTIONS = (
    "z*zbar/(1+z*zbar)",
    "1",
    "(1-z*zbar)/(1+z*zbar)",
    "z/(1+z*zbar)",
    "zbar^2/(1+z*zbar)^2",
)


def random_matrix(rng: random.Random, N: int) -> list[list[GaussRational]]:
    def entry():
        return GaussRational(Fraction(rng.randint(-5, 5), rng.randint(1, 4)),
                             Fraction(rng.randint(-5, 5), rng.randint(1, 4)))

    return [[entry() for _ in range(N)] for _ in range(N)]


def case_star_axioms(order: int):
    ctx = sp.StarContext.fubini_study(1, order)
    fs = [parse_expr(f) for f in sp.TEST_FUNCTIONS]
    k = 0
    for f, g in itertools.product(fs, repeat=2):
        s = sp.star(ctx, f, g)
        t = sp.star(ctx, g, f)
        k += 3
        if s[0] != f * g:
            return False, k, f"C0({f}, {g}) != fg", {}
        if s[1] - t[1] != sp.poisson(ctx, f, g) * bz.I:
            return False, k, f"C1 antisymmetrization for ({f}, {g})", {}
        if s[1] != sp.c1_direct(ctx, f, g):
            return False, k, f"C1 closed form for ({f}, {g})", {}
    for f in fs:
        k += 1
        if not sp.constraint_residual(ctx, sp.build_left_operator(ctx, f)).is_zero():
            return False, k, f"left operator constraint for {f}", {}
    return True, k, None, {}


def case_star_assoc(i: int, j: int, l: int):
    ctx = sp.StarContext.fubini_study(1, 2)
    fs = sp.TEST_FUNCTIONS
    d = sp.associativity_defect(ctx, fs[i], fs[j], fs[l], 2)
    bad = [r for r, x in enumerate(d) if not x.is_zero()]
    if bad:
        return False, 3, f"associativity fails at nu^{bad[0]} for ({fs[i]}, {fs[j]}, {fs[l]})", {}
    return True, 3, None, {}


def case_star_separation(seed: int, order: int):
    ctx = sp.StarContext.fubini_study(1, order)
    rng = random.Random(seed)
    k = 0
    for _ in range(10):
        a = random_holomorphic(rng)
        b = a.conjugate()
        k += 2
        L = sp.build_left_operator(ctx, a)
        if L != sp.FormalOperator.mult(a, order):
            return False, k, f"L_a is not multiplication for a = {a}", {}
        for f in sp.TEST_FUNCTIONS:
            s = sp.star(ctx, f, b)
            if s[0] != parse_expr(f) * b or any(not c.is_zero() for c in s.coefficients[1:]):
                return False, k, f"R_b is not multiplication for b = {b}", {}
            t = sp.opposite_star(ctx, b, f)
            if t.coefficients != s.coefficients:
                return False, k, f"opposite product mirror fails for b = {b}", {}
    return True, k, None, {}


def random_holomorphic(rng: random.Random) -> RationalExpr:
    out = RationalExpr.const(0)
    for d in range(rng.randint(1, 4) + 1):
        c = GaussRational(Fraction(rng.randint(-6, 6), rng.randint(1, 3)), rng.randint(-3, 3))
        out = out + RationalExpr.monomial(d, 0, c)
    return out


def case_star_moments(order: int):
    checks = sp.moment_operator_checks(order)
    bad = [c for c in checks if not c.passed]
    if bad:
        return False, len(checks), bad[0].name, {}
    return True, len(checks), None, {}


def case_star_deformed(order: int):
    """Potential of -omega + nu omega_can with omega_can = -2 omega on CP^1."""
    ctx = sp.StarContext.from_series(["-z/(1+z*zbar)", "-2*z/(1+z*zbar)"], order)
    fs = [parse_expr(f) for f in sp.TEST_FUNCTIONS]
    k = 0
    for f, g in itertools.combinations(fs, 2):
        k += 2
        s, t = sp.star(ctx, f, g), sp.star(ctx, g, f)
        if s[0] != f * g:
            return False, k, f"deformed C0({f}, {g})", {}
        if s[1] - t[1] != sp.poisson(ctx, f, g) * bz.I:
            return False, k, f"deformed C1 antisymmetrization ({f}, {g})", {}
    for f in fs:
        k += 1
        if not sp.constraint_residual(ctx, sp.build_left_operator(ctx, f)).is_zero():
            return False, k, f"deformed constraint for {f}", {}
    return True, k, None, {}


def case_asymptotics(pair: str):
    rep = sp.berezin_asymptotics(pair)
    detail = {"max_errors": [r.max_error for r in rep.rows], "ratios": rep.ratios}
    if not rep.passed:
        return False, len(rep.rows), f"error ratios {rep.ratios} for {pair}", detail
    return True, len(rep.rows), None, detail


CASE_FUNCS = {
    f.__name__: f
    for f in (
        case_rootsys, case_bbw, case_duality, case_berezin_traces, case_berezin_structure,
        case_star_axioms, case_star_assoc, case_star_separation, case_star_moments,
        case_star_deformed, case_asymptotics,
    )
}


def cases_for(suite: str, order: int = 3) -> list[Case]:
    if suite == "all":
        return [c for s in SUITES for c in cases_for(s, order)]
    if suite == "rootsys":
        return [Case(suite, f"{f}{r}", "case_rootsys", (f, r)) for f, r in ROOTSYS_SYSTEMS]
    if suite in ("bbw", "duality"):
        return [
            Case(suite, f"{f}{r}[theta={_theta_str(th)}]", f"case_{suite}", (f, r, th))
            for f, r in SWEEP_SYSTEMS
            for th in thetas(r)
        ]
    if suite == "berezin":
        out = [Case(suite, f"traces n={n}", "case_berezin_traces", (n,)) for n in range(BEREZIN_MAX_N + 1)]
        out += [Case(suite, f"structure n={n}", "case_berezin_structure", (n,)) for n in range(1, 5)]
        return out
    if suite == "star":
        out = [Case(suite, f"axioms order={order}", "case_star_axioms", (order,))]
        out += [
            Case(suite, f"associativity {i}{j}{l}", "case_star_assoc", (i, j, l))
            for i, j, l in itertools.product(range(len(sp.TEST_FUNCTIONS)), repeat=3)
        ]
        out.append(Case(suite, "separation of variables", "case_star_separation", (7, order)))
        out.append(Case(suite, f"moment operators order={order}", "case_star_moments", (order,)))
        out.append(Case(suite, "deformed potential order=2", "case_star_deformed", (2,)))
        return out
    if suite == "asymptotics":
        return [Case(suite, f"pair {p}", "case_asymptotics", (p,)) for p in sp.ASYMPTOTIC_PAIRS]
    raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")


def run_case(case: Case) -> CaseResult:
    try:
        passed, checked, cex, detail = CASE_FUNCS[case.func](*case.args)
    except Exception as exc:  # a crash is a failure of that case, reported like one
        return CaseResult(case.suite, case.name, False, 0, f"{type(exc).__name__}: {exc}")
    return CaseResult(case.suite, case.name, passed, checked, cex, detail)


def run_cases(cases: list[Case], jobs: int = 1) -> list[CaseResult]:
    if jobs <= 1 or len(cases) <= 1:
        return [run_case(c) for c in cases]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(run_case, cases))


def summarize(results: list[CaseResult]) -> dict:
    by_suite: dict[str, dict] = {}
    for r in results:
        s = by_suite.setdefault(r.suite, {"cases": 0, "passed": 0, "checked": 0})
        s["cases"] += 1
        s["passed"] += int(r.passed)
        s["checked"] += r.checked
    first = next((r for r in results if not r.passed), None)
    return {
        "passed": first is None,
        "suites": by_suite,
        "first_failure": None if first is None else first.to_json(),
    }
