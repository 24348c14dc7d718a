"""Differential check: MemoryStore vs the naive list-scan reference model."""

import random

from kantkb.documents import snapshot
from kantkb.memory import MemoryStore

from kbgen import apply_op, random_ops
from reference_model import ReferenceKb


def run_sequence(seed: int, length: int) -> None:
    rng = random.Random(seed)
    ops = random_ops(rng, length)
    store = MemoryStore()
    reference = ReferenceKb()
    for step, op in enumerate(ops):
        got = apply_op(store, op)
        expected = apply_op(reference, op)
        assert got == expected, f"seed {seed} step {step}: {got} != {expected} on {op}"
        assert snapshot(store) == snapshot(reference), f"seed {seed} diverged at step {step}"


def test_random_sequences_match_reference():
    for seed in range(40):
        run_sequence(seed, 60)


def test_longer_sequences_match_reference():
    for seed in range(1000, 1008):
        run_sequence(seed, 200)
