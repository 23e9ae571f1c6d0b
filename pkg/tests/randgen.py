"""Seeded generators of small random automata for property tests."""

import random

from memauto.automata import AnyLetter, Hra, HraEps, HraObs, Lama, LamaObs, Mode, NuAutomaton, Read, Reset, Write
from memauto.core import VariableId

INIT_LETTERS = ("a", "b", "c")


def _states(rng, max_states):
    n = rng.randint(1, max_states)
    return [f"p{i}" for i in range(n)]


def _finals(rng, states):
    return [q for q in states if rng.random() < 0.4]


def _injective_memory(rng, variables, layer_of=lambda v: v.layer):
    mem = {v: set() for v in variables}
    used = {}
    for u in INIT_LETTERS:
        if rng.random() < 0.5:
            continue
        v = rng.choice(variables)
        if u in used.setdefault(layer_of(v), set()):
            continue
        used[layer_of(v)].add(u)
        mem[v].add(u)
    return mem


def random_lama(rng: random.Random, layers=2, max_states=4, max_vars=3, max_transitions=6) -> Lama:
    states = _states(rng, max_states)
    nv = rng.randint(1, max_vars)
    variables = [VariableId(f"v{i}", rng.randint(1, layers)) for i in range(nv)]
    by_layer = {l: [v for v in variables if v.layer == l] for l in range(1, layers + 1)}
    transitions = []
    for _ in range(rng.randint(1, max_transitions)):
        p, q = rng.choice(states), rng.choice(states)
        if rng.random() < 0.2:
            transitions.append(Reset(p, {v for v in variables if rng.random() < 0.5}, q))
            continue
        alpha = []
        for l in range(1, layers + 1):
            if by_layer[l] and rng.random() < 0.6:
                alpha.append((l, rng.choice(by_layer[l]), rng.choice((Mode.R, Mode.W))))
        transitions.append(LamaObs(p, alpha, q))
    return Lama(
        states=states,
        initial=states[0],
        finals=_finals(rng, states),
        initial_memory=_injective_memory(rng, variables) if rng.random() < 0.5 else {},
        transitions=transitions,
        variables=variables,
        layers=layers,
    )


def random_hra(rng: random.Random, max_states=4, max_histories=2, max_transitions=6) -> Hra:
    states = _states(rng, max_states)
    hs = [VariableId(f"h{i}") for i in range(rng.randint(1, max_histories))]

    def subset():
        return {h for h in hs if rng.random() < 0.5}

    transitions = []
    for _ in range(rng.randint(1, max_transitions)):
        p, q = rng.choice(states), rng.choice(states)
        if rng.random() < 0.2:
            transitions.append(HraEps(p, subset(), q))
        else:
            transitions.append(HraObs(p, subset(), subset(), q))
    mem = {}
    if rng.random() < 0.5:
        mem = {h: {u for u in INIT_LETTERS if rng.random() < 0.3} for h in hs}
    return Hra(
        states=states,
        initial=states[0],
        finals=_finals(rng, states),
        initial_memory=mem,
        transitions=transitions,
        histories=hs,
    )


def random_nu(rng: random.Random, max_states=5, max_vars=3, max_transitions=8) -> NuAutomaton:
    states = _states(rng, max_states)
    variables = [VariableId(f"v{i}") for i in range(rng.randint(1, max_vars))]
    transitions = []
    for _ in range(rng.randint(1, max_transitions)):
        p, q = rng.choice(states), rng.choice(states)
        r = rng.random()
        if r < 0.35:
            transitions.append(Read(p, rng.choice(variables), q))
        elif r < 0.7:
            transitions.append(Write(p, rng.choice(variables), q))
        elif r < 0.85:
            transitions.append(AnyLetter(p, q))
        else:
            transitions.append(Reset(p, {v for v in variables if rng.random() < 0.5}, q))
    return NuAutomaton(
        states=states,
        initial=states[0],
        finals=_finals(rng, states),
        initial_memory=_injective_memory(rng, variables, layer_of=lambda v: 1) if rng.random() < 0.5 else {},
        transitions=transitions,
        variables=variables,
    )
