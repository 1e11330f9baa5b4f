import os
import subprocess
import sys

import pytest

from partialgroups import kernels
from partialgroups.fixtures import (
    corrupted_table,
    cyclic_by_inversion,
    cyclic_trivial,
    klein_by_swap,
    sym3_squared,
    sym4_restricted,
)
from partialgroups.partial_group import verify_axioms
from partialgroups.properties import partial_group_identities
from partialgroups.semidirect import canonical_parts, check_internal_semidirect

needs_compiled = pytest.mark.skipif("compiled" not in kernels.available_backends(), reason="extension not built")

SUBJECTS = {
    "inversion": lambda: cyclic_by_inversion().L,
    "trivial": lambda: cyclic_trivial().L,
    "corrupted": corrupted_table,
    "squared": lambda: sym3_squared().loc.L,
    "restricted": lambda: sym4_restricted().loc.L,
}


def _entries(report):
    return [(e.check, e.passed, e.counterexample, e.instances) for e in report.entries]


@needs_compiled
@pytest.mark.parametrize("subject", sorted(SUBJECTS))
def test_axiom_sweeps_agree(subject):
    L = SUBJECTS[subject]()
    n = 3 if len(L) > 20 else 4
    assert kernels.axiom_sweep(L, n, "compiled") == kernels.axiom_sweep(L, n, "python")
    assert _entries(verify_axioms(L, n, "compiled")) == _entries(verify_axioms(L, n, "python"))


@needs_compiled
@pytest.mark.parametrize("subject", sorted(SUBJECTS))
def test_lemma_sweeps_agree(subject):
    L = SUBJECTS[subject]()
    n = 3 if len(L) > 20 else 4
    assert kernels.lemma_sweep(L, n, backend="compiled") == kernels.lemma_sweep(L, n, backend="python")
    fast = partial_group_identities(L, n, backend="compiled")
    slow = partial_group_identities(L, n, backend="python")
    assert _entries(fast) == _entries(slow)


@needs_compiled
def test_sampled_lemma_sweeps_agree():
    L = sym3_squared().loc.L
    fast = partial_group_identities(L, 4, samples=300, seed=7, backend="compiled")
    slow = partial_group_identities(L, 4, samples=300, seed=7, backend="python")
    assert _entries(fast) == _entries(slow)


@needs_compiled
@pytest.mark.parametrize("which", ["inversion", "trivial", "swap"])
def test_split_sweeps_agree(which):
    if which == "swap":
        L = klein_by_swap().L
    else:
        L = (cyclic_by_inversion() if which == "inversion" else cyclic_trivial()).L
    hx, hn = canonical_parts(L)
    fast = check_internal_semidirect(L, hx, hn, 4, "compiled")
    slow = check_internal_semidirect(L, hx, hn, 4, "python")
    assert bool(fast) and bool(slow)
    assert _entries(fast.report) == _entries(slow.report)


def test_sweep_length_is_bounded():
    L = cyclic_by_inversion().L
    with pytest.raises(ValueError):
        kernels.axiom_sweep(L, kernels.MAX_SWEEP_LEN + 1)
    with pytest.raises(ValueError):
        kernels.get_backend("gpu")


def test_pure_python_fallback_is_selected_by_the_environment():
    env = dict(os.environ, PARTIALGROUPS_PURE_PYTHON="1")
    code = (
        "from partialgroups import kernels, BACKEND\n"
        "from partialgroups.fixtures import cyclic_by_inversion\n"
        "from partialgroups.partial_group import verify_axioms\n"
        "assert kernels.available_backends() == ['python'] and BACKEND == 'python'\n"
        "assert verify_axioms(cyclic_by_inversion().L, 3).ok\n"
        "print(BACKEND)\n"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
