"""The ten acceptance criteria, one test each.

Every test records its outcome in ``conftest.ACCEPTANCE`` and prints a
pass/fail line, so ``pytest -s tests/test_acceptance.py`` shows the verdicts
inline and the terminal summary repeats them after any run.
"""

import functools
import os
import subprocess
import sys
import time

import pytest

from conftest import ACCEPTANCE, CORPUS
from partialgroups.fixtures import (
    broken_star,
    corrupted_table,
    cyclic_by_inversion,
    cyclic_trivial,
    missing_overgroup,
    non_invariant_objects,
    non_maximal_sylow,
    sym3_at_three,
    sym4_full,
    sym4_restricted,
    wreath_sym2_sym3,
)
from partialgroups.groups import cyclic_group, symmetric_group
from partialgroups.locality import check_locality, domain_check
from partialgroups.locality_products import (
    build_delta_family,
    build_hypothesis,
    classify_internal_product,
    group_locality,
    locality_action_report,
    verify_product_localities,
)
from partialgroups.morphisms import find_isomorphism, is_isomorphism
from partialgroups.partial_group import verify_axioms
from partialgroups.properties import conjugation_calculus_report, partial_group_identities, product_locality_report
from partialgroups.semidirect import check_internal_semidirect, internal_to_external_iso
from partialgroups.wreath import centralizer_lemma_report


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            ok = False
            try:
                fn(*args, **kwargs)
                ok = True
            finally:
                ACCEPTANCE[number] = (ok, title)
                print(f"\ncriterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")

        return run

    return wrap


def timed(fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - start


def _wit(L, X, N, max_len=4):
    wit = check_internal_semidirect(L, X, N, max_len)
    assert wit, wit
    return wit


@criterion(1, "constructions satisfy the partial-group axioms up to length 4")
def test_constructions_satisfy_the_axioms():
    W = wreath_sym2_sym3()
    subjects = {
        "inversion product": cyclic_by_inversion().L,
        "trivial product": cyclic_trivial().L,
        "direct square": W.power.L,
        "sparse wreath": W.sparse.L,
        "ample wreath": W.ample.L,
    }
    for name, L in subjects.items():
        rep, seconds = timed(verify_axioms, L, 4)
        print(f"  {name}: {len(L)} elements, {seconds:.2f} s")
        assert rep.ok, rep.failures()
        assert seconds < 10


@criterion(2, "concrete isomorphisms with Sym(3) and C6")
def test_concrete_isomorphisms():
    for L, target in ((cyclic_by_inversion().L, symmetric_group(3)), (cyclic_trivial().L, cyclic_group(6, "c"))):
        iso = find_isomorphism(L, target)
        assert iso is not None
        assert is_isomorphism(iso, 4)
    assert find_isomorphism(cyclic_by_inversion().L, cyclic_group(6, "c")) is None


@criterion(3, "internal and external semidirect products agree")
def test_internal_external_equivalence():
    f1 = cyclic_by_inversion()
    X = {("1", "1"), ("x", "1")}
    N = {("1", "1"), ("1", "a"), ("1", "a^2")}
    wit = _wit(f1.L, X, N)
    assert wit.report.ok
    W = wreath_sym2_sym3().sparse
    for L, hx, hn in (
        (f1.L, X, N),
        (cyclic_trivial().L, X, N),
        (W.L, W.hat_X.L.labels, W.hat_N.L.labels),
    ):
        iso, E = internal_to_external_iso(_wit(L, hx, hn))
        assert len(E) == len(L)
        assert is_isomorphism(iso, 4)


@criterion(4, "partial-group identities: exhaustive to length 4, and 10^4 sampled words on the wreath product")
def test_partial_group_identities():
    for L in (cyclic_by_inversion().L, sym4_restricted().loc.L):
        rep = partial_group_identities(L, 4)
        assert rep.ok, rep.failures()
        assert all(e.instances > 0 for e in rep.entries)
    rep = partial_group_identities(wreath_sym2_sym3().sparse.L, 4, samples=10_000, seed=0)
    assert rep.ok, rep.failures()
    assert rep.get("split-product").instances >= 10_000


@criterion(5, "locality verification, with D = D_Δ in both directions on the 72-element product")
def test_locality_verification():
    W = wreath_sym2_sym3()
    for loc in (sym4_full().loc, sym4_restricted().loc, sym3_at_three().loc, W.power, W.sparse, W.ample):
        assert loc.report.ok, loc.report.failures()
        rep = check_locality(loc.L, loc.p, loc.S, loc.delta, 3)
        assert rep.ok, rep.failures()
    start = time.perf_counter()
    for loc in (W.sparse, W.ample):
        res = domain_check(loc.L, [loc.L.idx_set(P) for P in loc.delta], 3, "domain")
        assert res.passed and res.detail.startswith("both inclusions")
    assert time.perf_counter() - start < 60


@criterion(6, "object families of the wreath product: exact set comparisons")
def test_delta_families():
    W = wreath_sym2_sym3()
    for loc in (W.sparse, W.ample):
        wit = _wit(loc.L, loc.hat_X.L.labels, loc.hat_N.L.labels, 3)
        data = build_hypothesis(wit, loc.hat_X, loc.hat_N)
        family = build_delta_family(data)
        assert family.delta_sparse <= family.delta_plus
        sparse, ample = verify_product_localities(data, family, 3)
        closed = sparse.report.get("generating-conjugation-closed")
        domain = sparse.report.get("generating-domain")
        assert closed.passed and domain.passed and domain.bound == 3
        assert sparse.delta == family.delta_sparse and ample.delta == family.delta_plus
        cls = classify_internal_product(loc, loc.hat_X, loc.hat_N, 3)
        assert getattr(cls, loc.variant)
        rep = product_locality_report(loc, 3)
        assert rep.ok, rep.failures()


@criterion(7, "conjugation calculus over every admissible triple")
def test_conjugation_calculus():
    W = wreath_sym2_sym3().sparse
    for L, hx, hn in (
        (cyclic_by_inversion().L, {("1", "1"), ("x", "1")}, {("1", "1"), ("1", "a"), ("1", "a^2")}),
        (W.L, W.hat_X.L.labels, W.hat_N.L.labels),
    ):
        rep = conjugation_calculus_report(_wit(L, hx, hn))
        assert rep.ok, rep.failures()
        assert all(e.instances > 0 for e in rep.entries)


@criterion(8, "centralizer lemmas on both wreath products")
def test_centralizer_lemmas():
    W = wreath_sym2_sym3()
    for loc in (W.sparse, W.ample):
        rep = centralizer_lemma_report(loc)
        assert [e.check for e in rep.entries] == ["coordinate-centralizer", "object-centralizer"]
        assert rep.ok, rep.failures()


@criterion(9, "each mutated fixture fails as designed with a counterexample")
def test_mutation_sensitivity():
    pg4 = verify_axioms(corrupted_table(), 4).get("PG4")
    assert not pg4.passed and pg4.counterexample is not None

    m = non_invariant_objects()
    gamma = locality_action_report(group_locality(m.X, 2), m.N_loc, m.action).get("gamma-invariance")
    assert not gamma.passed and gamma.counterexample is not None

    m = broken_star()
    star = locality_action_report(m.X_loc, m.N_loc, m.action).get("star")
    assert not star.passed and star.counterexample is not None

    overgroup = missing_overgroup().get("overgroup-closed")
    assert not overgroup.passed and overgroup.counterexample is not None

    maximal = non_maximal_sylow().get("maximal")
    assert not maximal.passed and maximal.counterexample is not None


def _run_corpus(hash_seed):
    env = dict(os.environ, PYTHONHASHSEED=str(hash_seed))
    out = {}
    for path in sorted(CORPUS.glob("*.json")) + sorted((CORPUS / "mutants").glob("*.json")):
        proc = subprocess.run(
            [sys.executable, "-m", "partialgroups.cli", "verify", str(path), "--format", "json", "--seed", "0"],
            capture_output=True,
            env=env,
            cwd=CORPUS.parent,
        )
        out[path.relative_to(CORPUS).as_posix()] = (proc.returncode, proc.stdout)
    return out


@pytest.mark.slow
@criterion(10, "CLI runs over the corpus are byte-identical, exit 0 when clean and nonzero on mutants")
def test_cli_determinism():
    first, second = _run_corpus(0), _run_corpus(1)
    assert first.keys() == second.keys()
    for name, (code, stdout) in first.items():
        assert second[name] == (code, stdout), name
        if name.startswith("mutants/"):
            assert code != 0, name
        else:
            assert code == 0, name
