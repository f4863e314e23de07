"""Seeded random min/max expressions for property checks and verification suites"""

import random
from fractions import Fraction
from typing import List

from cpa.expression import CpaExpr, Leaf, Max, Min
from geometry.rational import AffineMap
from utils.exceptions import ConstructionError


def random_rational(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, 3))


def random_leaf(rng: random.Random, d: int, bound: int) -> Leaf:
    gradient = tuple(random_rational(rng, bound) for _ in range(d))
    return Leaf(AffineMap(gradient, random_rational(rng, bound)))


def random_expression(rng: random.Random, d: int, max_leaves: int, bound: int = 5) -> CpaExpr:
    """
    A random tree over 1..max_leaves random leaves. Children are merged pairwise
    (occasionally three at a time) under a random min or max.
    """
    if d < 1 or max_leaves < 1:
        raise ConstructionError("random expressions need d >= 1 and at least one leaf")
    nodes: List[CpaExpr] = [random_leaf(rng, d, bound) for _ in range(rng.randint(1, max_leaves))]
    while len(nodes) > 1:
        arity = 3 if len(nodes) >= 3 and rng.random() < 0.25 else 2
        children = [nodes.pop(rng.randrange(len(nodes))) for _ in range(arity)]
        node_type = Min if rng.random() < 0.5 else Max
        nodes.append(node_type(tuple(children)))
    return nodes[0]


__all__ = ['random_rational', 'random_leaf', 'random_expression']
