import random
import time

import pytest

from hdbuchi import (
    ADAM,
    GenSpec,
    build_g1,
    build_simulation,
    build_sprint,
    check_sd,
    eve_wins_g1,
    eve_wins_k_token,
    gen,
    goodness,
    hd_exact_given_dba,
    is_deterministic,
    is_hd_buchi,
    is_sd,
    make_good,
    parse_automaton,
    reachability_lift,
    solve_02,
    sprint_deterministic_witness,
    sprint_simulates,
    state_equiv,
    verify_adam_letter_strategy,
    verify_fixed_joker_strategy,
)
from hdbuchi.analysis import joker_strategy, joker_winning_states, stay_strategy, switch_strategy
from hdbuchi.automaton import disjoint_union, reachable_states, trim
from hdbuchi.errors import InputError, NotHDError, StrategyError
from hdbuchi.oracles import zielonka

from helpers import witness_violations

# q guesses between x and y; Adam's next letter decides which of them
# accepts first, so q loses its own sprint game. Every state is universal.
RACE = """\
parity 1 2
alphabet a b
states q x y f g
initial q
trans q a 1 x
trans q a 1 y
trans q b 1 f
trans x a 2 f
trans x b 1 g
trans y a 1 g
trans y b 2 f
trans f a 2 f
trans f b 2 f
trans g a 1 f
trans g b 1 f
"""


def _good_instance(seed, n=3, sabotage=False):
    A, D = gen(GenSpec("dba_copies", n, 2, copies=2, seed=seed, sabotage=sabotage, density=0.5))
    return A, D


# -- three-priority example: fixed-strategy verifiers -------------------------


def test_fig1_switch_strategy_wins_joker(fig1):
    start = time.perf_counter()
    assert verify_fixed_joker_strategy(fig1, switch_strategy(fig1))
    assert time.perf_counter() - start < 1


def test_fig1_stay_strategy_loses(fig1):
    assert not verify_fixed_joker_strategy(fig1, stay_strategy(fig1))


def test_fig1_adam_letters(fig1):
    p, q = fig1.state_index["p"], fig1.state_index["q"]
    a, b = fig1.letter_index["a"], fig1.letter_index["b"]
    assert verify_adam_letter_strategy(fig1, {p: a, q: b})
    assert not verify_adam_letter_strategy(fig1, {p: b, q: b})


def test_fig1_letters_survive_lasso_refutation(fig1):
    assert verify_adam_letter_strategy(fig1, {0: 0, 1: 1}, refute_bound=(3, 3))


def test_single_loop_strategies(t_acc):
    assert verify_fixed_joker_strategy(t_acc, stay_strategy(t_acc))
    assert not verify_adam_letter_strategy(t_acc, {0: 0})


def test_letter_strategy_must_be_total(fig1):
    with pytest.raises(StrategyError):
        verify_adam_letter_strategy(fig1, {0: 0})
    with pytest.raises(InputError):
        verify_adam_letter_strategy(fig1, {0: 0, 1: 1}, assume_universal=False)


def test_letter_strategy_refuted_on_non_universal(t_rej):
    with pytest.raises(InputError):
        verify_adam_letter_strategy(t_rej, {0: 0}, refute_bound=(2, 2))


def test_joker_strategy_must_be_total(fig1):
    from hdbuchi.analysis import TransitionStrategy

    with pytest.raises(StrategyError):
        verify_fixed_joker_strategy(fig1, TransitionStrategy({}))


# -- HD and token games ------------------------------------------------------


def test_single_loop_hd(t_acc, t_rej):
    assert is_hd_buchi(t_acc) and is_hd_buchi(t_rej)


def test_hd_rejects_parity(fig1):
    with pytest.raises(InputError):
        is_hd_buchi(fig1)


@pytest.mark.parametrize("seed", range(40))
def test_hd_implies_other_games(seed):
    A, D = _good_instance(seed, sabotage=seed % 2 == 1)
    if is_hd_buchi(A):
        assert eve_wins_g1(A) and eve_wins_k_token(A, 2)
    assert is_hd_buchi(A) == hd_exact_given_dba(A, D)


@pytest.mark.parametrize("seed", range(30))
def test_hd_implies_other_games_raw(seed):
    A = gen(GenSpec("raw_random", 4, 2, seed=seed, density=0.4))[0]
    if not eve_wins_g1(A) or not eve_wins_k_token(A, 2):
        assert not is_hd_buchi(A)


def test_joker_strategy_matches_verifier():
    for seed in range(10):
        A, _ = _good_instance(seed)
        if is_hd_buchi(A):
            assert verify_fixed_joker_strategy(A, joker_strategy(A))


# -- semantic determinism and equivalence --------------------------------------


def test_fig1_is_sd(fig1):
    assert check_sd(fig1) == (True, False)


def test_sd_counterexample():
    A = parse_automaton("parity 1 2\nalphabet a\nstates s x y\ninitial s\n"
                        "trans s a 1 x\ntrans s a 1 y\ntrans x a 2 x\ntrans y a 1 y\n")
    assert not is_sd(A)


@pytest.mark.parametrize("seed", range(20))
def test_dba_copies_are_sd(seed):
    A, _ = _good_instance(seed, sabotage=seed % 3 == 0)
    assert is_sd(A)


def test_state_equiv():
    A, _ = _good_instance(4)
    for q in range(A.n):
        assert state_equiv(A, q, q)
    # copies d{q}.0 and d{q}.1 share their language
    for i in range(0, A.n, 2):
        assert state_equiv(A, i, i + 1)
    U = disjoint_union(parse_automaton("parity 1 2\nalphabet a\nstates s\ninitial s\ntrans s a 2 s\n"),
                       parse_automaton("parity 1 2\nalphabet a\nstates s\ninitial s\n"))
    assert not state_equiv(U, 0, 1)


# -- make_good -----------------------------------------------------------------


def test_make_good_on_deterministic():
    _, D = _good_instance(1, n=4)
    assert make_good(D) == trim(D)


def test_make_good_refuses_non_hd():
    for seed in range(40):
        A, _ = _good_instance(seed, sabotage=True)
        if not is_hd_buchi(A):
            with pytest.raises(NotHDError):
                make_good(A)
            return
    pytest.fail("no non-HD instance in the sample")


@pytest.mark.parametrize("seed", range(20))
def test_make_good_properties(seed):
    A, D = _good_instance(seed, sabotage=seed % 2 == 1)
    if not is_hd_buchi(A):
        return
    H = make_good(A)
    report = goodness(H)
    assert report.is_good and report.is_sd and report.sd_exact
    assert {H.describe(t) for t in H.transitions} <= {A.describe(t) for t in A.transitions}
    for X, Y in ((H, A), (A, H), (H, D)):
        G = build_simulation(X, Y)
        assert solve_02(G).eve_wins(G.initial)


# -- sprint relations ----------------------------------------------------------


def test_sprint_deterministic_pairs():
    _, D = _good_instance(2, n=4)
    for q in range(D.n):
        assert sprint_simulates(D, q, q)


def test_sprint_accepting_against_rejecting(t_acc, t_rej):
    U = disjoint_union(t_acc, t_rej)
    assert sprint_simulates(U, 0, 1)
    assert not sprint_simulates(U, 1, 0)


@pytest.mark.parametrize("seed", range(15))
def test_sprint_self_matches_lifted_g1(seed):
    A, _ = _good_instance(seed)
    L = reachability_lift(A)
    for q in range(A.n):
        G = build_g1(L.with_initial(q))
        assert sprint_simulates(A, q, q) == solve_02(G).eve_wins(G.initial)


@pytest.mark.parametrize("seed", range(10))
def test_sprint_transitive(seed):
    A = gen(GenSpec("raw_random", 4, 2, seed=seed, density=0.4))[0]
    rng = random.Random(seed)
    for _ in range(30):
        p, q, r = (rng.randrange(A.n) for _ in range(3))
        if sprint_simulates(A, p, q) and sprint_simulates(A, q, r):
            assert sprint_simulates(A, p, r)


def test_race_state_excluded():
    H = parse_automaton(RACE)
    assert goodness(H).is_good
    q = H.state_index["q"]
    # certified independently by Zielonka on the sprint arena
    G = build_sprint(H, q, H, q)
    assert zielonka(G)[0][G.initial] == ADAM
    sd, F = sprint_deterministic_witness(H)
    assert q not in sd
    assert {H.states[s] for s in sd} == {"x", "y", "f", "g"}
    assert is_deterministic(F)
    assert witness_violations(H, F, sd, 2 * H.n) == []


def test_witness_on_deterministic():
    _, D = _good_instance(3, n=4)
    D = trim(D)
    sd, F = sprint_deterministic_witness(D)
    assert sd == frozenset(range(D.n))
    assert F == D


def test_witness_requires_good(fig1):
    A = parse_automaton("parity 1 2\nalphabet a\nstates s x y\ninitial s\n"
                        "trans s a 1 x\ntrans s a 1 y\ntrans x a 2 x\ntrans y a 1 y\n")
    with pytest.raises(InputError):
        sprint_deterministic_witness(A)


@pytest.mark.parametrize("seed", range(25))
def test_witness_property_on_good_instances(seed):
    A, _ = _good_instance(seed, n=2 + seed % 2, sabotage=seed % 4 == 3)
    if not is_hd_buchi(A):
        return
    H = make_good(A)
    sd, F = sprint_deterministic_witness(H)
    assert is_deterministic(F)
    assert witness_violations(H, F, sd, 2 * H.n) == []


def test_joker_winning_states_race():
    H = parse_automaton(RACE)
    assert joker_winning_states(H) == frozenset(range(H.n))
    assert reachable_states(H) == set(range(H.n))
