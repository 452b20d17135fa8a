import pytest

from regbound import Ring, Submodule
from regbound.families import FamilySpec, sample_family
from regbound.parser import parse_input
from regbound.verifier import (
    Instance,
    StreamProfile,
    check_buchsbaum_ineq,
    check_char_s,
    check_deg_order,
    check_h_func,
    check_hypsec,
    check_oracles,
    check_reg_bound,
    check_twist,
    random_module_stream,
    replay_text,
    run_suite,
)

from conftest import ideal


def test_reg_bound_examples(R2):
    x0, x1 = R2.gens()
    inst = Instance(ideal(R2, x0**2, x0 * x1))
    for d in ("bdeg", "hdeg"):
        out = check_reg_bound(inst, d)
        assert out.status == "pass"
        assert out.witness["equality"]
    assert check_deg_order(inst).ok


def test_hypsec_and_buchsbaum_examples(R3):
    x0, x1, x2 = R3.gens()
    inst = Instance(ideal(R3, x0**2, x0 * x1, x1**3))
    for d in ("bdeg", "hdeg"):
        assert check_hypsec(inst, d).status == "pass"
        assert check_buchsbaum_ineq(inst, d).status == "pass"


def test_char_s_member():
    out = check_char_s(FamilySpec(2, 0, (1, 2, 1)), 3)
    assert out.status == "pass"
    assert out.witness["reg"] == out.witness["bdeg"] - 1


def test_h_func_examples(R2, R3):
    x0, x1 = R2.gens()
    out = check_h_func(Instance(ideal(R2, x0**2, x1**2)))
    assert out.status == "pass"
    assert out.witness["extremal"] is False and out.witness["fit"] is None
    assert check_h_func(Instance(ideal(R2, x0, x1))).status == "skip"
    assert check_h_func(Instance(ideal(R2, R2.one()))).status == "skip"
    _, I = sample_family(FamilySpec(2, 0, (1, 0, 2)), 1)
    out = check_h_func(Instance(I, 1))
    assert out.status == "pass" and out.witness["extremal"]


def test_twist_and_oracles(R3):
    x0, x1, x2 = R3.gens()
    inst = Instance(ideal(R3, x0**2, x0 * x1))
    for k in (1, 2):
        out = check_twist(inst, k)
        assert out.status == "pass", out.witness
        assert out.witness["reg"] == inst.reg + k
    assert check_oracles(inst).status == "pass"


def test_replay_roundtrip():
    for M in random_module_stream(7, StreamProfile(rank=2), 10):
        prog = parse_input(replay_text(M, "M"))
        N = prog.names["M"]
        assert N.free.twists == M.free.twists
        assert N.equals(M)


def test_stream_reproducible():
    a = [replay_text(M) for M in random_module_stream(3, count=12)]
    b = [replay_text(M) for M in random_module_stream(3, count=12)]
    assert a == b
    assert a != [replay_text(M) for M in random_module_stream(4, count=12)]


def test_monomial_profile():
    for M in random_module_stream(0, StreamProfile("monomial"), 15):
        assert all(len(g.terms) == 1 for g in M.gens)
        assert 2 <= M.ring.nvars <= 4


def test_profile_validation():
    with pytest.raises(ValueError):
        StreamProfile("cubic")
    with pytest.raises(ValueError):
        StreamProfile(min_vars=5, max_vars=3)


def test_run_suite_small():
    rep = run_suite("all", seed=2, samples=6)
    assert not rep.failures, [f.as_dict() for f in rep.failures]
    counts = rep.counts()
    assert counts["reg-bound/bdeg"]["pass"] == 6
    assert counts["char-s"]["pass"] == 80


def test_run_suite_rejects_unknown():
    with pytest.raises(ValueError):
        run_suite("nope")
    with pytest.raises(ValueError):
        run_suite("hypsec", which="sdeg")
