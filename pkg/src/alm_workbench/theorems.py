"""Registry of theorem checks with stable ids.

Each check takes one algebra and returns a :class:`TheoremCheck`. A check
whose premise never applies on the given algebra holds vacuously. Checks never
raise for a failed claim; precondition errors become failed checks carrying
the error message.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Any

from alm_workbench import config
from alm_workbench.algebra import FiniteAlgebra
from alm_workbench.axioms import check_al_monoid, is_al_monoid
from alm_workbench.congruences import (
    bijection_check,
    lattice_isomorphism_check,
    quotient,
    remark_counterexamples,
)
from alm_workbench.errors import AlmError, UnknownPropertyError
from alm_workbench.ideals import (
    IdealSet,
    classify_all,
    convexity_witness,
    ideal_join_meet,
    ideal_lattice,
    intersection,
    principal_ideal,
    strong_witness,
)
from alm_workbench.logs import debug_log
from alm_workbench.morphisms import (
    Homomorphism,
    chain_checks,
    enumerate_homs,
    first_isomorphism_check,
    is_homomorphism,
    kernel_image,
    projection,
    second_isomorphism_check,
    subalgebras,
)
from alm_workbench.products import (
    coordinate_kernel_check,
    decompose_distant,
    direct_product,
    indecomposability_check,
    product_axiom_check,
    product_ideals_check,
    representability_check,
    tuple_hom_kernel_check,
)
from alm_workbench.spectrum import (
    minimal_maximal_primes,
    multiplicativity_witness,
    separation_check,
    spectrum,
    values_and_mu,
)
from alm_workbench.tracing import algebra_span

# endomorphism and subalgebra scans grow exponentially with the carrier
ENDOMORPHISM_BOUND = 6
SUBALGEBRA_BOUND = 8
SQUARE_IDEAL_BOUND = 25


@dataclass(frozen=True)
class TheoremCheck:
    theorem_id: str
    holds: bool
    vacuous: bool = False
    witness: tuple[str, ...] | None = None
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "theorem_id": self.theorem_id,
            "holds": self.holds,
            "vacuous": self.vacuous,
            "witness": list(self.witness) if self.witness else None,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class Theorem:
    theorem_id: str
    statement: str
    check: Callable[[FiniteAlgebra], TheoremCheck]


REGISTRY: dict[str, Theorem] = {}


def theorem(theorem_id: str, statement: str):
    def register(fn: Callable[[FiniteAlgebra], TheoremCheck]) -> Callable[[FiniteAlgebra], TheoremCheck]:
        REGISTRY[theorem_id] = Theorem(theorem_id, statement, fn)
        return fn

    return register


def _ok(tid: str, *, vacuous: bool = False, detail: str = "") -> TheoremCheck:
    return TheoremCheck(tid, True, vacuous, None, detail)


def _fail(tid: str, witness: Iterable[str] | None = None, detail: str = "") -> TheoremCheck:
    return TheoremCheck(tid, False, False, tuple(witness) if witness else None, detail)


@lru_cache(maxsize=32)
def _ideals(alg: FiniteAlgebra) -> list[IdealSet]:
    return classify_all(alg)


def _flagged(alg: FiniteAlgebra, flag: str) -> list[IdealSet]:
    return [I for I in _ideals(alg) if I.flags and getattr(I.flags, flag)]


def _homs(alg: FiniteAlgebra) -> list[Homomorphism]:
    """Quotient maps, plus every endomorphism on small carriers."""
    homs = [projection(quotient(alg, M)) for M in _ideals(alg)]
    if alg.n <= ENDOMORPHISM_BOUND:
        homs.extend(enumerate_homs(alg, alg))
    return homs


# -- ideals and congruences ---------------------------------------------------


@theorem("T-CONVEX", "every ideal is a convex subalgebra")
def _convex(alg: FiniteAlgebra) -> TheoremCheck:
    for I in _ideals(alg):
        found = convexity_witness(alg, I)
        if found:
            clause, witness = found
            return _fail("T-CONVEX", (str(I), *witness), clause)
    return _ok("T-CONVEX")


@theorem("T-IDEAL-CONG-BIJ", "ideals correspond one to one to congruences")
def _bijection(alg: FiniteAlgebra) -> TheoremCheck:
    report = bijection_check(alg, _ideals(alg))
    if report.holds:
        return _ok("T-IDEAL-CONG-BIJ", detail=f"{report.ideal_count} = {report.congruence_count}")
    return _fail("T-IDEAL-CONG-BIJ", detail="; ".join(report.failures))


@theorem("T-IDEAL-CONG-LATTICE", "the correspondence preserves and reflects inclusion")
def _bijection_order(alg: FiniteAlgebra) -> TheoremCheck:
    holds, pair = lattice_isomorphism_check(alg, _ideals(alg))
    return _ok("T-IDEAL-CONG-LATTICE") if holds else _fail("T-IDEAL-CONG-LATTICE", pair)


@theorem("T-CONG-REMARK", "c1 and c3 imply c2, c4 and c5")
def _remark(alg: FiniteAlgebra) -> TheoremCheck:
    if alg.n > config.PARTITION_BOUND:
        return _ok("T-CONG-REMARK", vacuous=True, detail="carrier above the partition bound")
    bad = remark_counterexamples(alg)
    if not bad:
        return _ok("T-CONG-REMARK")
    theta, check = bad[0]
    failed = [c.clause for c in check.clauses if not c.holds]
    return _fail("T-CONG-REMARK", (str(theta),), f"fails {', '.join(failed)}")


@theorem("T-PRINCIPAL-JOIN", "⟨a⟩∨⟨b⟩ = ⟨a+b⟩ and I∨J = {x : x ≤ i+j}")
def _principal_join(alg: FiniteAlgebra) -> TheoremCheck:
    for a in alg.elements:
        for b in alg.elements:
            join, _ = ideal_join_meet(alg, principal_ideal(alg, a), principal_ideal(alg, b))
            if join.members != principal_ideal(alg, int(alg.plus[a, b])).members:
                return _fail("T-PRINCIPAL-JOIN", alg.labels((a, b)))
    if not ideal_lattice(alg, _ideals(alg)).join_formula_agrees:
        return _fail("T-PRINCIPAL-JOIN", detail="join formula differs from the lattice join")
    return _ok("T-PRINCIPAL-JOIN")


# Every ideal of a finite lattice is compact, so the second half reads: every ideal is principal.
@theorem("T-IDEAL-ALGEBRAIC", "the ideal lattice is algebraic; compact ideals are principal")
def _algebraic(alg: FiniteAlgebra) -> TheoremCheck:
    lattice = ideal_lattice(alg, _ideals(alg))
    if not lattice.algebraic:
        return _fail("T-IDEAL-ALGEBRAIC", detail="an ideal is not the join of its principal ideals")
    for I, principal in zip(lattice.ideals, lattice.principal, strict=True):
        if principal is None:
            return _fail("T-IDEAL-ALGEBRAIC", (str(I),), "compact but not principal")
    return _ok("T-IDEAL-ALGEBRAIC")


@theorem("T-MAX-PRIME", "every maximal ideal is prime")
def _max_prime(alg: FiniteAlgebra) -> TheoremCheck:
    maximals = _flagged(alg, "is_maximal")
    for M in maximals:
        if not (M.flags and M.flags.is_prime):
            return _fail("T-MAX-PRIME", (str(M),))
    return _ok("T-MAX-PRIME", vacuous=not maximals)


@theorem("T-REG-PRIME", "every regular ideal is prime")
def _reg_prime(alg: FiniteAlgebra) -> TheoremCheck:
    regular = _flagged(alg, "is_regular")
    for R in regular:
        if not (R.flags and R.flags.is_prime):
            return _fail("T-REG-PRIME", (str(R),))
    return _ok("T-REG-PRIME", vacuous=not regular)


@theorem("T-STRONG-ALL", "every ideal is strong")
def _strong_all(alg: FiniteAlgebra) -> TheoremCheck:
    for I in _ideals(alg):
        found = strong_witness(alg, I)
        if found:
            clause, witness = found
            return _fail("T-STRONG-ALL", (str(I), *witness), f"{clause} condition fails")
    return _ok("T-STRONG-ALL")


@theorem("T-PRIME-MAXIMALS", "if the maximal ideals meet in {0}, every prime is maximal")
def _prime_maximals(alg: FiniteAlgebra) -> TheoremCheck:
    maximals = _flagged(alg, "is_maximal")
    if not maximals or intersection(alg, maximals) != {alg.zero}:
        return _ok("T-PRIME-MAXIMALS", vacuous=True)
    for P in _flagged(alg, "is_prime"):
        if not any(P.members == M.members for M in maximals):
            return _fail("T-PRIME-MAXIMALS", (str(P),))
    return _ok("T-PRIME-MAXIMALS")


@theorem("T-INDECOMP-DISTANT", "directly indecomposable iff the only distant ideals are {0} and A")
def _indecomposable(alg: FiniteAlgebra) -> TheoremCheck:
    report = indecomposability_check(alg)
    if report.agrees:
        return _ok("T-INDECOMP-DISTANT")
    witness = tuple(str(I) for I in report.pair) if report.pair else None
    return _fail(
        "T-INDECOMP-DISTANT",
        witness,
        f"decomposable={report.decomposable} but distant verdict indecomposable={report.distant_verdict}",
    )


# -- quotients, homomorphisms, chains -----------------------------------------


@theorem("T-QUOTIENT-ALM", "A/M is an AL-monoid and a ↦ [a] is a homomorphism with kernel M")
def _quotient_alm(alg: FiniteAlgebra) -> TheoremCheck:
    source_al = is_al_monoid(alg)
    for M in _ideals(alg):
        q = quotient(alg, M)
        if source_al and not q.report.is_al_monoid:
            failed = q.report.failures()[0]
            return _fail("T-QUOTIENT-ALM", (str(M), failed.axiom_id))
        f = projection(q)
        if not is_homomorphism(alg, q.algebra, f.mapping):
            return _fail("T-QUOTIENT-ALM", (str(M),), "projection is not a homomorphism")
        if kernel_image(f).kernel.members != M.members:
            return _fail("T-QUOTIENT-ALM", (str(M),), "projection kernel differs")
    return _ok("T-QUOTIENT-ALM")


@theorem("T-CHAIN-CRIT", "A is a chain iff a∧b = 0 implies a = 0 or b = 0")
def _chain_criterion(alg: FiniteAlgebra) -> TheoremCheck:
    report = chain_checks(alg)
    if report.is_chain == report.criterion_holds:
        return _ok("T-CHAIN-CRIT")
    return _fail("T-CHAIN-CRIT", report.criterion_witness, f"is_chain={report.is_chain}")


@theorem("T-PRIME-CHAIN-QUOT", "A/M is a chain iff M is prime")
def _prime_chain_quotient(alg: FiniteAlgebra) -> TheoremCheck:
    report = chain_checks(alg)
    if report.quotient_discrepancies:
        return _fail("T-PRIME-CHAIN-QUOT", detail=report.quotient_discrepancies[0])
    return _ok("T-PRIME-CHAIN-QUOT")


@theorem("T-PRIME-UPSET-CHAIN", "the ideals containing a prime form a chain")
def _prime_upset(alg: FiniteAlgebra) -> TheoremCheck:
    report = chain_checks(alg)
    if report.upset_failures:
        return _fail("T-PRIME-UPSET-CHAIN", detail=report.upset_failures[0])
    return _ok("T-PRIME-UPSET-CHAIN", vacuous=not _flagged(alg, "is_prime"))


@theorem("T-KER-PRIME-IM-CHAIN", "ker f is prime iff Im f is a chain")
def _kernel_prime(alg: FiniteAlgebra) -> TheoremCheck:
    prime = {P.members for P in _flagged(alg, "is_prime")}
    checked = 0
    for f in _homs(alg):
        ki = kernel_image(f)
        if not ki.kernel.is_proper():
            continue
        checked += 1
        image_chain = all(
            f.target.leq[x, y] or f.target.leq[y, x] for x in ki.image for y in ki.image
        )
        if (ki.kernel.members in prime) != image_chain:
            return _fail("T-KER-PRIME-IM-CHAIN", tuple(f.labels().values()), f"kernel {ki.kernel}")
    return _ok("T-KER-PRIME-IM-CHAIN", vacuous=checked == 0)


@theorem("T-ISO-FIRST", "A/ker f ≅ Im f")
def _iso_first(alg: FiniteAlgebra) -> TheoremCheck:
    for f in _homs(alg):
        report = first_isomorphism_check(f)
        if not report.holds:
            return _fail("T-ISO-FIRST", tuple(f.labels().values()), report.detail)
    return _ok("T-ISO-FIRST")


@theorem("T-ISO-SECOND", "B∗N is a subalgebra and B∗N/N ≅ B/(B∧N)")
def _iso_second(alg: FiniteAlgebra) -> TheoremCheck:
    if alg.n > SUBALGEBRA_BOUND:
        return _ok("T-ISO-SECOND", vacuous=True, detail="carrier above the subalgebra bound")
    for B in subalgebras(alg):
        for N in _ideals(alg):
            report = second_isomorphism_check(alg, B, N)
            if not report.holds:
                return _fail("T-ISO-SECOND", (str(B), str(N)), report.detail)
    return _ok("T-ISO-SECOND")


# -- products -----------------------------------------------------------------


def _square_fits(alg: FiniteAlgebra, limit: int) -> bool:
    return alg.n * alg.n <= limit


@theorem("T-KER-MEET", "ker α = ∩ ker αᵢ for tuple homomorphisms")
def _kernel_meet(alg: FiniteAlgebra) -> TheoremCheck:
    maps = [projection(quotient(alg, M)) for M in _ideals(alg)]
    checked = 0
    for f, g in combinations(maps, 2):
        if f.target.n * g.target.n > config.PRODUCT_BOUND:
            continue
        checked += 1
        report = tuple_hom_kernel_check([f, g])
        if not report.holds:
            return _fail("T-KER-MEET", (f.target.name, g.target.name))
    return _ok("T-KER-MEET", vacuous=checked == 0)


@theorem("T-PRODUCT-ALM", "a product of AL-monoids is an AL-monoid")
def _product_alm(alg: FiniteAlgebra) -> TheoremCheck:
    if not _square_fits(alg, config.PRODUCT_BOUND):
        return _ok("T-PRODUCT-ALM", vacuous=True, detail="A×A above the product bound")
    report = product_axiom_check([alg, alg])
    if report.holds:
        return _ok("T-PRODUCT-ALM", vacuous=not all(report.factors_al))
    failed = report.product_report.failures()[0]
    return _fail("T-PRODUCT-ALM", (failed.axiom_id, *(failed.witness or ())))


@theorem("T-PRODUCT-IDEALS", "ideals of a product are products of factor ideals")
def _product_ideals(alg: FiniteAlgebra) -> TheoremCheck:
    if not _square_fits(alg, SQUARE_IDEAL_BOUND):
        return _ok("T-PRODUCT-IDEALS", vacuous=True, detail="A×A above the ideal bound")
    holds, detail = product_ideals_check([alg, alg])
    return _ok("T-PRODUCT-IDEALS") if holds else _fail("T-PRODUCT-IDEALS", detail=detail or "")


@theorem("T-DISTANT-DECOMP", "distant ideals I, J give A ≅ A/I × A/J, and conversely")
def _distant_decomposition(alg: FiniteAlgebra) -> TheoremCheck:
    reports = decompose_distant(alg)
    for r in reports:
        if not r.isomorphic:
            return _fail("T-DISTANT-DECOMP", (str(r.first), str(r.second)))
    if alg.n > 1 and _square_fits(alg, config.PRODUCT_BOUND):
        converse = coordinate_kernel_check(direct_product([alg, alg]))
        if not converse.holds:
            return _fail("T-DISTANT-DECOMP", (str(converse.first), str(converse.second)), "A×A")
    return _ok("T-DISTANT-DECOMP", vacuous=not reports)


# -- spectrum -----------------------------------------------------------------


@theorem("T-SPEC-SEP", "incomparable primes have disjoint basic neighbourhoods")
def _separation(alg: FiniteAlgebra) -> TheoremCheck:
    report = separation_check(alg, spectrum(alg, _ideals(alg)))
    for s in report.pairs:
        if not s.holds:
            return _fail("T-SPEC-SEP", (str(s.P), str(s.Q)), s.failure or "")
    return _ok("T-SPEC-SEP", vacuous=report.vacuous)


@theorem("T-SPEC-MULT", "S(u∧v) = S(u) ∩ S(v)")
def _multiplicative(alg: FiniteAlgebra) -> TheoremCheck:
    witness = multiplicativity_witness(spectrum(alg, _ideals(alg)))
    return _fail("T-SPEC-MULT", witness) if witness else _ok("T-SPEC-MULT")


@theorem("T-MINPRIME-T2", "m(A) is T₂ and each S(a) is closed in m(A)")
def _minimal_t2(alg: FiniteAlgebra) -> TheoremCheck:
    spec = spectrum(alg, _ideals(alg))
    report = minimal_maximal_primes(alg, spec)
    if not report.minimal_t2:
        return _fail("T-MINPRIME-T2", detail="m(A) is not T₂")
    for a, closed in report.minimal_closed.items():
        if not closed:
            return _fail("T-MINPRIME-T2", (alg.label(a),), "S(a) not closed in m(A)")
    detail = "; ".join(report.polar_failures)
    return _ok("T-MINPRIME-T2", vacuous=not spec.primes, detail=detail)


@theorem("T-MAXPRIME-T2", "M(A) is T₂")
def _maximal_t2(alg: FiniteAlgebra) -> TheoremCheck:
    spec = spectrum(alg, _ideals(alg))
    report = minimal_maximal_primes(alg, spec)
    if not report.maximal_t2:
        return _fail("T-MAXPRIME-T2")
    premise = report.principal_whole is not None
    return _ok("T-MAXPRIME-T2", vacuous=not spec.primes, detail=f"some ⟨b⟩ = A: {premise}")


@theorem("T-MU-UNIQUE", "every prime in S(a) lies below exactly one value of a")
def _mu_unique(alg: FiniteAlgebra) -> TheoremCheck:
    ideals = _ideals(alg)
    spec = spectrum(alg, ideals)
    for a in alg.elements:
        if a == alg.zero:
            continue
        va = values_and_mu(alg, a, spec, ideals)
        for p, count in va.multiplicity.items():
            if count != 1:
                return _fail("T-MU-UNIQUE", (alg.label(a), str(spec.primes[p])), f"{count} values")
    return _ok("T-MU-UNIQUE", vacuous=not spec.primes)


@theorem("T-MU-CONT", "μ_a is continuous and Val(a) is T₂")
def _mu_continuous(alg: FiniteAlgebra) -> TheoremCheck:
    ideals = _ideals(alg)
    spec = spectrum(alg, ideals)
    for a in alg.elements:
        if a == alg.zero:
            continue
        va = values_and_mu(alg, a, spec, ideals)
        if va.unique and not va.continuous:
            return _fail("T-MU-CONT", (alg.label(a),), "μ_a not continuous")
        if not va.values_t2:
            return _fail("T-MU-CONT", (alg.label(a),), "Val(a) not T₂")
    return _ok("T-MU-CONT", vacuous=not spec.primes)


@theorem("T-REPR-EQUIV", "representable iff primes meet in {0} iff subdirect product of chains")
def _representable(alg: FiniteAlgebra) -> TheoremCheck:
    report = representability_check(alg)
    if report.agree:
        return _ok("T-REPR-EQUIV", detail=f"R1=R2=R3={report.r1}, M2={report.m2}")
    return _fail(
        "T-REPR-EQUIV", detail=f"R1={report.r1} R2={report.r2} R3={report.r3}"
    )


# -- running ------------------------------------------------------------------


def run_theorem(theorem_id: str, alg: FiniteAlgebra) -> TheoremCheck:
    if theorem_id not in REGISTRY:
        raise UnknownPropertyError(f"unknown property id {theorem_id!r}")
    try:
        return REGISTRY[theorem_id].check(alg)
    except AlmError as e:
        debug_log(f"{theorem_id}: {e}", alg=alg)
        return _fail(theorem_id, detail=f"error: {e}")


@dataclass
class VerifyReport:
    algebra: str
    is_al_monoid: bool
    checks: list[TheoremCheck]

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.checks)

    def failures(self) -> list[TheoremCheck]:
        return [c for c in self.checks if not c.holds]

    def to_dict(self) -> dict[str, Any]:
        return {
            "algebra": self.algebra,
            "is_al_monoid": self.is_al_monoid,
            "holds": self.holds,
            "checks": [c.to_dict() for c in self.checks],
        }


def verify_algebra(alg: FiniteAlgebra, theorem_ids: Iterable[str] | None = None) -> VerifyReport:
    ids = list(theorem_ids) if theorem_ids is not None else list(REGISTRY)
    with algebra_span("verify", alg) as span:
        checks = [run_theorem(tid, alg) for tid in ids]
        span.set_attribute("alm.failures", sum(not c.holds for c in checks))
    return VerifyReport(alg.name, check_al_monoid(alg).is_al_monoid, checks)
