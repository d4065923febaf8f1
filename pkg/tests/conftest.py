import random

import pytest

from stablecat.modules import FinModule, ModMorphism
from stablecat.sweeps import modules_up_to_order
from stablecat.under import UnderObject


def random_module(rng: random.Random, max_gens: int = 4) -> FinModule:
    k = rng.randint(0, max_gens)
    return FinModule.of(*(rng.choice((2, 4)) for _ in range(k)))


def random_morphism(rng: random.Random, m: FinModule, n: FinModule) -> ModMorphism:
    matrix = []
    for d in m.orders:
        row = []
        for e in n.orders:
            if d == 2 and e == 4:
                row.append(rng.choice((0, 2)))
            else:
                row.append(rng.randrange(e))
        matrix.append(row)
    return ModMorphism(m, n, matrix)


def random_under_object(rng: random.Random, max_order: int = 64) -> UnderObject:
    base = FinModule.of(4)
    carrier = rng.choice(modules_up_to_order(max_order))
    return UnderObject(carrier, random_morphism(rng, base, carrier))


@pytest.fixture
def rng():
    return random.Random(20260826)
