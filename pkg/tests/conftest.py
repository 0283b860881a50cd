import random

from permpoly.polyring import MapTable, Poly


def make_rng(seed: int) -> random.Random:
    return random.Random(0xC0FFEE ^ seed)


def random_pp_table(field, rng) -> MapTable:
    vals = list(range(field.size))
    rng.shuffle(vals)
    return MapTable(field, vals)


def random_poly(field, rng, max_len=None) -> Poly:
    n = rng.randrange(1, (max_len or field.size + 3) + 1)
    return Poly(field, [rng.randrange(field.size) for _ in range(n)])


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]
