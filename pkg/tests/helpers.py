"""Shared test utilities: seeded random rationals and module parameters."""

import random
from fractions import Fraction

from hvir import ModuleParams


def rng(seed):
    return random.Random(seed)


def rand_fraction(r, num=6, den=4):
    return Fraction(r.randint(-num, num), r.randint(1, den))


def rand_nonzero_fraction(r, num=6, den=4):
    while True:
        value = rand_fraction(r, num, den)
        if value != 0:
            return value


def rand_params(r, group, nonzero_f=False):
    f = rand_nonzero_fraction(r) if nonzero_f else rand_fraction(r)
    return ModuleParams(rand_fraction(r), rand_fraction(r), f, group)
