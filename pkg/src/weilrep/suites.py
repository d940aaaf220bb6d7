"""Verification suites and machine-readable reports.

Each suite sweeps one family of exact identities at a given (p, N) and
records failures; exhaustive/sampled crossover is parameter-driven so that
reports are comparable across runs:

  * pair sweeps over the group are exhaustive iff N = 1 and p <= 5
    (character sweeps stay exhaustive up to p = 7), seeded-random otherwise;
  * suites that materialize kernels or operators require p^{2N} <= 10^4;
  * WEILREP_MAX_CHECKS, or an explicit max_checks, truncates a run
    deterministically.

Serialized reports deliberately omit wall time so that reruns with the same
parameters and seed are byte-identical; timing is carried on the object and
printed to stderr by the CLI.
"""

from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass, field

import numpy as np

from .cyclotomic import CycNum, gauss_sum, psi
from .field import legendre
from .heisenberg import (PI_EXHAUSTIVE_PAIRS, HeisElement, Kernel, Operator,
                         enumerate_heisenberg, schrodinger_pi, v_convolve,
                         weyl_inverse, weyl_transform)
from .symplectic import (SpLieElement, SpMatrix, SympSpace, _det_mod, _inv_mod,
                         SymplecticError, cayley, enumerate_sp, in_U,
                         random_sp, random_sp_lie)
from .weil import (WeilKernelTable, cayley_of_product, character_rho,
                   character_tau, egorov_check, nu_cocycle_check,
                   product_check, quadratic_phase_kernel, symplectic_gauss_sum)

SUITE_NAMES = ("cayley", "heisenberg", "weyl-algebra", "multiplicativity", "egorov",
               "characters", "gauss", "cocycle", "deligne", "product")

EXHAUSTIVE_P_MAX = 5          # pair sweeps: exhaustive iff N == 1 and p <= this
CHARACTER_P_MAX = 7           # the character sweep stays exhaustive up to p = 7
KERNEL_POINT_CAP = 10_000     # p^{2N} cap for suites that materialize kernels
SQUARES_POINT_CAP = 100       # p^{2N} cap for the completion-of-squares sweep
MAX_CHECKS_ENV = "WEILREP_MAX_CHECKS"


class ResourceBoundError(ValueError):
    """A suite was asked to run beyond its documented size caps."""


class UnknownSuiteError(ValueError):
    pass


@dataclass
class CheckFailure:
    check: str
    inputs: str
    expected: str
    actual: str

    def to_json_dict(self) -> dict:
        return {"check": self.check, "inputs": self.inputs,
                "expected": self.expected, "actual": self.actual}


@dataclass
class SuiteReport:
    suite: str
    p: int
    N: int
    seed: int
    checks_run: int
    failures: list[CheckFailure] = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        # wall_time is intentionally not serialized: identical (flags, seed)
        # must reproduce byte-identical reports.
        return {"suite": self.suite, "p": self.p, "N": self.N, "seed": self.seed,
                "checks_run": self.checks_run, "passed": self.passed,
                "counts": {k: self.counts[k] for k in sorted(self.counts)},
                "failures": [f.to_json_dict() for f in self.failures]}


def _short(x) -> str:
    s = repr(x) if not isinstance(x, str) else x
    return s if len(s) <= 160 else s[:157] + "..."


class _Recorder:
    """Counts checks per id, captures failures, enforces the check budget."""

    def __init__(self, max_checks: int | None = None):
        self.checks_run = 0
        self.counts: dict[str, int] = {}
        self.failures: list[CheckFailure] = []
        self.max_checks = max_checks

    @property
    def done(self) -> bool:
        return self.max_checks is not None and self.checks_run >= self.max_checks

    def true(self, check: str, inputs: str, ok: bool, expected="holds", actual="fails"):
        if self.done:
            return
        self.checks_run += 1
        self.counts[check] = self.counts.get(check, 0) + 1
        if not ok:
            self.failures.append(CheckFailure(check, inputs, _short(expected), _short(actual)))

    def equal(self, check: str, inputs: str, expected, actual):
        if self.done:
            return
        self.checks_run += 1
        self.counts[check] = self.counts.get(check, 0) + 1
        if expected != actual:
            self.failures.append(CheckFailure(check, inputs, _short(expected), _short(actual)))


def _require_kernel_cap(space: SympSpace):
    if space.n_points > KERNEL_POINT_CAP:
        raise ResourceBoundError(
            f"p^(2N) = {space.n_points} exceeds the cap {KERNEL_POINT_CAP} for kernel suites")


def _group_sweep(space: SympSpace, seed: int, tag: str, n_sample: int):
    """Group elements for a sweep: all of SL2 when exhaustive, seeded otherwise."""
    if space.N == 1 and space.p <= EXHAUSTIVE_P_MAX:
        return list(enumerate_sp(space)), True
    rng = random.Random(f"{tag}|{seed}|{space.p}|{space.N}")
    return [random_sp(space, rng) for _ in range(n_sample)], False


def _pairs(elements, exhaustive: bool, seed: int, tag: str, n_pairs: int):
    if exhaustive:
        return [(g, h) for g in elements for h in elements]
    rng = random.Random(f"pairs|{tag}|{seed}")
    return [(rng.choice(elements), rng.choice(elements)) for _ in range(n_pairs)]


def _gstr(g) -> str:
    return g.to_string()


def _hstr(h: HeisElement) -> str:
    return f"v={','.join(str(c) for c in h.v)} z={h.z}"


# -- individual suites -------------------------------------------------


def _suite_cayley(space: SympSpace, seed: int, rec: _Recorder):
    p = space.p
    eye = np.eye(space.dim, dtype=np.int64)
    elements, exhaustive = _group_sweep(space, seed, "cayley", 60)
    for g in elements:
        if rec.done:
            return
        name = f"g={_gstr(g)}"
        if not in_U(g):
            try:
                cayley(g)
                rec.true("cayley-domain-error", name, False)
            except SymplecticError:
                rec.true("cayley-domain-error", name, True)
            continue
        k = cayley(g)
        Jk = space.J @ k.mat % p
        rec.true("kappa-in-sp", name, bool(np.array_equal(Jk, Jk.T % p)))
        rec.true("kappa-involution", name, cayley(k) == g)
        rec.true("kappa-antisymmetry", name, cayley(g.inverse()) == -k)
        rhs = 2 * g.mat @ _inv_mod((g.mat - eye) % p, p) % p
        rec.true("kappa-plus-identity", name,
                 bool(np.array_equal((k.mat + eye) % p, rhs)))
        left = (g.mat + eye) @ _inv_mod((g.mat - eye) % p, p) % p
        right = _inv_mod((g.mat - eye) % p, p) @ (g.mat + eye) % p
        rec.true("cayley-commutes", name, bool(np.array_equal(left, right)))
    if exhaustive:
        pairs = [(g, h) for g in elements for h in elements
                 if in_U(g) and in_U(h) and in_U(g @ h)]
    else:
        rng = random.Random(f"cayley-pairs|{seed}")
        u_pool = [g for g in elements if in_U(g)]
        pairs = []
        while len(pairs) < 500:
            g, h = rng.choice(u_pool), rng.choice(u_pool)
            if in_U(g @ h):
                pairs.append((g, h))
    for g, h in pairs:
        if rec.done:
            return
        gh = g @ h
        name = f"g={_gstr(g)} h={_gstr(h)}"
        kg, kh, kgh = cayley(g).mat, cayley(h).mat, cayley(gh).mat
        s = (kg + kh) % p
        invertible = _det_mod(s, p) != 0
        rec.true("kappa-sum-invertible", name, invertible)
        if not invertible:
            continue
        si = _inv_mod(s, p)
        iden1 = (kg + (eye + kg) @ si @ ((eye - kg) % p)) % p
        rec.true("cayley-iden1", name, bool(np.array_equal(iden1, kgh)))
        # second form, expanded from the first: kappa(gh) + I factors through
        # (I + kappa(g)) (kappa(g)+kappa(h))^{-1} (I + kappa(h))
        iden2 = ((eye + kg) @ si @ (eye + kh) - eye) % p
        rec.true("cayley-iden2", name, bool(np.array_equal(iden2, kgh)))


def _suite_heisenberg(space: SympSpace, seed: int, rec: _Recorder):
    _require_kernel_cap(space)
    p = space.p
    elements = list(enumerate_heisenberg(space))
    ops = {h: schrodinger_pi(space, h) for h in elements}
    ident = Operator.identity(space)
    for z in range(p):
        h = HeisElement(space, (0,) * space.dim, z)
        rec.equal("pi-central-character", f"z={z}", ident.scale(psi(z, p)), ops[h])
    if len(elements) ** 2 <= PI_EXHAUSTIVE_PAIRS:
        hom_pairs = [(a, b) for a in elements for b in elements]
    else:
        rng = random.Random(f"heis|{seed}")
        hom_pairs = [(rng.choice(elements), rng.choice(elements)) for _ in range(2000)]
    for a, b in hom_pairs:
        if rec.done:
            return
        rec.equal("pi-homomorphism", f"a=({_hstr(a)}) b=({_hstr(b)})",
                  ops[a * b], ops[a] @ ops[b])
    rng = random.Random(f"heis-assoc|{seed}")
    for _ in range(500):
        a, b, c = (rng.choice(elements) for _ in range(3))
        rec.true("h-mul-associative", f"a=({_hstr(a)}) b=({_hstr(b)}) c=({_hstr(c)})",
                 (a * b) * c == a * (b * c))
    for h in elements:
        if rec.done:
            return
        commutes = all(h * b == b * h for b in elements)
        rec.true("center-exact", _hstr(h), commutes == h.is_central())
        rec.true("pi-unitary", _hstr(h), ops[h] @ ops[h].conj_transpose() == ident)
        t = ops[h].trace()
        expected = psi(h.z, p) * space.q_pow_n if h.is_central() else CycNum.zero(p)
        rec.equal("pi-trace", _hstr(h), expected, t)
    total = CycNum.zero(p)
    for h in elements:
        t = ops[h].trace()
        total = total + t * t.conj()
    rec.equal("pi-irreducibility", f"|H|={len(elements)}",
              CycNum.from_int(len(elements), p), total)


def _random_operator(space: SympSpace, rng: random.Random) -> Operator:
    m, p = space.q_pow_n, space.p
    vals = np.array([rng.randrange(-2, 3) for _ in range(m * m * p)],
                    dtype=np.int64).reshape(m, m, p)
    return Operator(space, vals, 1)


def _suite_weyl_algebra(space: SympSpace, seed: int, rec: _Recorder):
    _require_kernel_cap(space)
    p = space.p
    rng = random.Random(f"weyl|{seed}|{p}|{space.N}")
    rec.equal("weyl-of-identity", "A=Id", Kernel.delta(space),
              weyl_transform(Operator.identity(space)))
    rec.equal("weyl-of-zero", "A=0", Kernel.zero(space), weyl_transform(Operator.zero(space)))
    for _ in range(10):
        u = tuple(rng.randrange(p) for _ in range(space.dim))
        w = tuple(rng.randrange(p) for _ in range(space.dim))
        pu = schrodinger_pi(space, HeisElement(space, u, 0))
        pw = schrodinger_pi(space, HeisElement(space, w, 0))
        rec.equal("weyl-of-pi", f"u={u}", Kernel.delta(space, u), weyl_transform(pu))
        # independent oracle for the twisted product of deltas: operator route
        rec.equal("delta-convolution", f"u={u} w={w}", weyl_transform(pu @ pw),
                  v_convolve(Kernel.delta(space, u), Kernel.delta(space, w)))
    for i in range(50):
        if rec.done:
            return
        a = _random_operator(space, rng)
        b = _random_operator(space, rng)
        fa = weyl_transform(a)
        fb = weyl_transform(b)
        rec.equal("weyl-round-trip", f"pair={i}", a, weyl_inverse(fa))
        rec.equal("weyl-round-trip-kernel", f"pair={i}", fa, weyl_transform(weyl_inverse(fa)))
        rec.equal("weyl-algebra-isomorphism", f"pair={i}", weyl_transform(a @ b),
                  v_convolve(fa, fb))
        rec.equal("delta-unit", f"pair={i}", fa, v_convolve(Kernel.delta(space), fa))


def _suite_multiplicativity(space: SympSpace, seed: int, rec: _Recorder):
    """One check per (g, h): K_{gh} = K_g * K_h, so checks_run is the pair count."""
    _require_kernel_cap(space)
    table = WeilKernelTable(space, seed)
    elements, exhaustive = _group_sweep(space, seed, "mult", 60)
    for g, h in _pairs(elements, exhaustive, seed, "mult", 1000):
        if rec.done:
            return
        rec.true("kernel-multiplicativity", f"g={_gstr(g)} h={_gstr(h)}",
                 v_convolve(table.kernel(g), table.kernel(h)) == table.kernel(g @ h))


def _suite_egorov(space: SympSpace, seed: int, rec: _Recorder):
    _require_kernel_cap(space)
    table = WeilKernelTable(space, seed)
    elements, exhaustive = _group_sweep(space, seed, "egorov", 20)
    if exhaustive:
        pairs = [(g, h) for g in elements for h in enumerate_heisenberg(space)]
    else:
        rng = random.Random(f"egorov-pairs|{seed}")
        hs = list(enumerate_heisenberg(space))
        pairs = [(rng.choice(elements), rng.choice(hs)) for _ in range(200)]
    for g, h in pairs:
        if rec.done:
            return
        rec.true("egorov", f"g={_gstr(g)} h=({_hstr(h)})", egorov_check(table, g, h))


def _suite_characters(space: SympSpace, seed: int, rec: _Recorder):
    _require_kernel_cap(space)
    p = space.p
    table = WeilKernelTable(space, seed)
    if space.N == 1 and p <= CHARACTER_P_MAX:
        elements = list(enumerate_sp(space))
    else:
        rng = random.Random(f"chars|{seed}|{p}|{space.N}")
        elements = [random_sp(space, rng) for _ in range(40)]
    rec.equal("rho-identity-trace", "g=I", CycNum.from_int(space.q_pow_n, p),
              table.rho(SpMatrix.identity(space)).trace())
    u_elements = []
    for g in elements:
        if rec.done:
            return
        name = f"g={_gstr(g)}"
        if in_U(g):
            u_elements.append(g)
            ch = character_rho(space, g)
            rec.equal("character-rho-trace", name, ch, table.rho(g).trace())
            rec.equal("character-kernel-value", name, ch,
                      table.kernel(g)[(0,) * space.dim] * space.q_pow_n)
        else:
            try:
                character_rho(space, g)
                rec.true("character-domain-error", name, False)
            except SymplecticError:
                rec.true("character-domain-error", name, True)
    rng = random.Random(f"tau|{seed}|{p}|{space.N}")
    for _ in range(200):
        if rec.done:
            return
        g = rng.choice(u_elements)
        h = HeisElement(space, tuple(rng.randrange(p) for _ in range(space.dim)),
                        rng.randrange(p))
        rec.equal("character-tau-trace", f"g={_gstr(g)} h=({_hstr(h)})",
                  character_tau(space, g, h),
                  (table.rho(g) @ schrodinger_pi(space, h)).trace())


def _sl2_lie_elements(p: int):
    for x in range(p):
        for y in range(p):
            for z in range(p):
                yield SpLieElement([[x, y], [z, (-x) % p]], p)


def _suite_gauss(space: SympSpace, seed: int, rec: _Recorder):
    p = space.p
    e = gauss_sum(p)
    sign = 1 if (p - 1) // 2 % 2 == 0 else -1
    rec.equal("gauss-square", f"p={p}", CycNum.from_int(sign * p, p), e * e)
    rec.equal("gauss-norm", f"p={p}", CycNum.from_int(p, p), e.conj() * e)
    total = CycNum.zero(p)
    for z in range(p):
        total = total + psi(z, p)
    rec.equal("psi-orthogonality", f"p={p}", CycNum.zero(p), total)
    for a in range(p):
        for b in range(p):
            rec.equal("psi-homomorphism", f"a={a} b={b}", psi(a, p) * psi(b, p),
                      psi((a + b) % p, p))
    for a in range(1, p):
        twisted = CycNum.zero(p)
        for z in range(p):
            twisted = twisted + psi(a * z * z % p, p)
        rec.equal("gauss-twist", f"a={a}", e * legendre(a, p), twisted)
    e2n = e ** space.dim
    rec.equal("symplectic-gauss-zero", "a=0",
              CycNum.from_int(space.n_points, p),
              symplectic_gauss_sum(space, SpLieElement(np.zeros((space.dim, space.dim), dtype=np.int64), p)))
    if space.N == 1:
        candidates = list(_sl2_lie_elements(p))
    else:
        rng = random.Random(f"gauss|{seed}|{p}|{space.N}")
        candidates = []
        while len(candidates) < 200:
            a = random_sp_lie(space, rng)
            if a.det() != 0:
                candidates.append(a)
    for a in candidates:
        if rec.done:
            return
        d = a.det()
        if d == 0:
            continue
        rec.equal("symplectic-gauss", f"a={_gstr(a)}", e2n * legendre(d, p),
                  symplectic_gauss_sum(space, a))


def _suite_cocycle(space: SympSpace, seed: int, rec: _Recorder):
    """The normalization-scalar bundle: the cocycle identity for nu on W,
    the completion-of-squares evaluation of the non-normalized convolution,
    multiplicativity restricted to U x U (both factors in closed form), and
    well-definedness of the extension off U."""
    _require_kernel_cap(space)
    p = space.p
    table = WeilKernelTable(space, seed)
    elements, exhaustive = _group_sweep(space, seed, "cocycle", 60)
    u_pool = [g for g in elements if in_U(g)]
    if exhaustive:
        u_pairs = [(g, h) for g in u_pool for h in u_pool]
    else:
        rng = random.Random(f"cocycle-pairs|{seed}")
        u_pairs = []
        while len(u_pairs) < 500:
            g, h = rng.choice(u_pool), rng.choice(u_pool)
            if in_U(g @ h):
                u_pairs.append((g, h))
    squares_ok = space.n_points <= SQUARES_POINT_CAP
    for g, h in u_pairs:
        if rec.done:
            return
        name = f"g={_gstr(g)} h={_gstr(h)}"
        # both kernels come straight from the ansatz on U
        rec.true("restricted-lemma", name,
                 v_convolve(table.kernel(g), table.kernel(h)) == table.kernel(g @ h))
        if not in_U(g @ h):
            continue
        rec.true("nu-cocycle", name, nu_cocycle_check(space, g, h))
        if squares_ok:
            kg, kh = cayley(g), cayley(h)
            b = cayley_of_product(space, g, h)
            lhs = v_convolve(quadratic_phase_kernel(space, kg),
                             quadratic_phase_kernel(space, kh))
            rhs = quadratic_phase_kernel(space, b).scale(
                symplectic_gauss_sum(space, kg + kh))
            rec.equal("completion-of-squares", name, rhs, lhs)
    refactored = 0
    for g in elements:
        if refactored >= 5 or rec.done:
            break
        if in_U(g):
            continue
        refactored += 1
        rec.equal("extension-well-defined", f"g={_gstr(g)}", table.kernel(g),
                  table.kernel_refactored(g, salt=f"alt{refactored}|"))
    if u_pool:
        # g * g^{-1} = I is never in U, so the precondition must trip.
        g = u_pool[0]
        try:
            nu_cocycle_check(space, g, g.inverse())
            rec.true("cocycle-domain-error", f"g={_gstr(g)} h=g^-1", False)
        except SymplecticError:
            rec.true("cocycle-domain-error", f"g={_gstr(g)} h=g^-1", True)


def _suite_deligne(space: SympSpace, seed: int, rec: _Recorder):
    from .deligne import deligne_kernel_direct, deligne_kernel_fourier, kernel_compose
    _require_kernel_cap(space)
    table = WeilKernelTable(space, seed)
    elements, exhaustive = _group_sweep(space, seed, "deligne", 30)
    cache = {}

    def direct(g):
        k = g.key()
        if k not in cache:
            cache[k] = deligne_kernel_direct(table, g)
        return cache[k]

    for g in elements:
        if rec.done:
            return
        name = f"g={_gstr(g)}"
        d = direct(g)
        rec.equal("deligne-route-equality", name, d, deligne_kernel_fourier(table, g))
        rec.true("deligne-realization", name, d.matrix == table.rho(g))
    comp_exhaustive = exhaustive and space.p == 3
    for g, h in _pairs(elements, comp_exhaustive, seed, "deligne", 300):
        if rec.done:
            return
        rec.equal("deligne-composition", f"g={_gstr(g)} h={_gstr(h)}",
                  direct(g @ h), kernel_compose(direct(g), direct(h)))


def _suite_product(space: SympSpace, seed: int, rec: _Recorder):
    p = space.p
    prod_space = SympSpace(p, 2 * space.N)
    if prod_space.n_points > KERNEL_POINT_CAP:
        raise ResourceBoundError(
            f"product suite needs p^(4N) = {prod_space.n_points} <= {KERNEL_POINT_CAP}")
    half = WeilKernelTable(space, seed)
    big = WeilKernelTable(prod_space, seed)
    exhaustive = space.N == 1 and p == 3
    if exhaustive:
        elements = list(enumerate_sp(space))
        pairs = [(g, h) for g in elements for h in elements]
    else:
        rng = random.Random(f"product|{seed}|{p}|{space.N}")
        pool = [random_sp(space, rng) for _ in range(20)]
        pairs = [(rng.choice(pool), rng.choice(pool)) for _ in range(200)]
    for g1, g2 in pairs:
        if rec.done:
            return
        rec.true("product-factorization", f"g1={_gstr(g1)} g2={_gstr(g2)}",
                 product_check(half, half, big, g1, g2))


_SUITES = {
    "cayley": _suite_cayley,
    "heisenberg": _suite_heisenberg,
    "weyl-algebra": _suite_weyl_algebra,
    "multiplicativity": _suite_multiplicativity,
    "egorov": _suite_egorov,
    "characters": _suite_characters,
    "gauss": _suite_gauss,
    "cocycle": _suite_cocycle,
    "deligne": _suite_deligne,
    "product": _suite_product,
}


def run_suite(suite: str, p: int, N: int, seed: int = 42,
              max_checks: int | None = None) -> SuiteReport:
    """Run one named suite (or `all`) at (p, N) and return its report."""
    if suite != "all" and suite not in _SUITES:
        raise UnknownSuiteError(
            f"unknown suite {suite!r}; choose from {', '.join(SUITE_NAMES)} or all")
    space = SympSpace(p, N)
    if max_checks is None:
        env = os.environ.get(MAX_CHECKS_ENV)
        if env:
            max_checks = int(env)
    rec = _Recorder(max_checks)
    start = time.perf_counter()
    names = SUITE_NAMES if suite == "all" else (suite,)
    for name in names:
        if rec.done:
            break
        _SUITES[name](space, seed, rec)
    failures = sorted(rec.failures, key=lambda f: (f.check, f.inputs))
    return SuiteReport(suite=suite, p=p, N=N, seed=seed, checks_run=rec.checks_run,
                       failures=failures, counts=rec.counts,
                       wall_time=time.perf_counter() - start)


# -- table and kernel exports ------------------------------------------


def character_table_rows(p: int, N: int = 1, elements: list[str] | None = None,
                         seed: int = 42, include_complex: bool = False) -> list[dict]:
    """Character-table rows: U rows carry the closed-form ch_rho and the trace
    cross-check; non-U rows report the trace of rho."""
    space = SympSpace(p, N)
    _require_kernel_cap(space)
    if elements is None:
        if N != 1:
            raise ValueError("N >= 2 needs an explicit element list")
        group = list(enumerate_sp(space))
    else:
        group = [SpMatrix.from_string(s, p).require_symplectic() for s in elements]
    table = WeilKernelTable(space, seed)
    rows = []
    for g in group:
        trace = table.rho(g).trace()
        member = in_U(g)
        if member:
            ch = character_rho(space, g)
            check = ch == trace
            value = ch
        else:
            value = trace
            check = True
        rows.append({"g": g.to_string(), "in_U": member,
                     "ch_rho": value.to_json_dict(include_complex), "trace_check": check})
    return rows


def kernel_payload(p: int, N: int, g_string: str, seed: int = 42,
                   include_complex: bool = False) -> dict:
    """One kernel fiber K_g as JSON, with its construction provenance."""
    space = SympSpace(p, N)
    _require_kernel_cap(space)
    g = SpMatrix.from_string(g_string, p).require_symplectic()
    table = WeilKernelTable(space, seed)
    kern, via = table.kernel_with_provenance(g)
    out = kern.to_json_dict(include_complex)
    out["g"] = g.to_string()
    out["via"] = via
    return out


def gauss_payload(p: int, include_complex: bool = True) -> dict:
    e = gauss_sum(p)
    square = e * e
    return {"p": p, "gauss_sum": e.to_json_dict(include_complex),
            "square": int(square.as_fraction())}
