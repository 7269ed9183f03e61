"""Shared test helpers: graph and metric builders."""

from fractions import Fraction

from src.graphs.ribbon import from_rotations, relabel, rose_from_tokens, rose_from_word
from src.morse.metric import with_lengths

THETA_PAIRS = [(0, 1), (2, 3), (4, 5)]

WORKED_EXAMPLE = {
    "base": "a1^i a1^t a2^i a2^t a3^i a4^i a3^t a4^t a5^i a6^i a5^t a6^t",
    "pair": "e1^i a2^i a2^t e1^t a3^i a4^i a3^t a4^t a5^i a6^i a5^t a6^t",
    "handle": "a1^i a1^t a2^i a2^t a3^i e4^i a3^t a5^i a6^i a5^t e4^t a6^t",
    "both": "e1^i a2^i a2^t e1^t a3^i e4^i a3^t a5^i a6^i a5^t e4^t a6^t",
}


def make_theta(genus=1, plain=False):
    """Theta graph: basepoint (0 2 4), other vertex (1 3 5) for genus 1 or (1 5 3) for the sphere."""
    other = [1, 3, 5] if genus == 1 else [1, 5, 3]
    return from_rotations([[0, 2, 4], other], THETA_PAIRS, plain=plain)


def make_rose(word):
    """Rose from a string of loop labels such as ``"abab"``."""
    return rose_from_word(list(word))


def make_worked_example(name="base"):
    return rose_from_tokens(WORKED_EXAMPLE[name].split())


def make_double_edge_with_loop(layout="ddll"):
    """Basepoint joined to v by edges {0,1}, {2,3}; loop {4,5} at v.

    ``"ddll"`` gives v the rotation d1 d2 l1 l2 (sphere, three punctures), ``"ldld"`` gives
    l1 d1 l2 d2 (torus, one puncture).
    """
    rotation = [1, 3, 4, 5] if layout == "ddll" else [4, 1, 5, 3]
    return from_rotations([[0, 2], rotation], [(0, 1), (2, 3), (4, 5)])


def make_loop_metric(layout="ddll", lengths=(1, 1, 1)):
    return with_lengths(make_double_edge_with_loop(layout), [Fraction(x) for x in lengths])


def make_three_up_two_down():
    """Basepoint (0 2 4); v carries downward halves 1, 3, a long edge half 5 and a loop {6, 7}.

    Edges {0,1} and {2,3} have length 1, {4,5} has 3/2 and the loop 1.
    """
    graph = from_rotations([[0, 2, 4], [1, 3, 5, 6, 7]], [(0, 1), (2, 3), (4, 5), (6, 7)])
    return with_lengths(graph, [1, 1, Fraction(3, 2), 1])


def make_split_example():
    """Double edge b=v, edge v-w, loop at w, every length 1/4."""
    graph = from_rotations([[0, 2], [1, 3, 4], [5, 6, 7]], [(0, 1), (2, 3), (4, 5), (6, 7)])
    return with_lengths(graph, [Fraction(1, 4)] * 4)


def make_bridged_roses():
    """Two one-loop vertices joined by a single edge; the joining edge is a bridge."""
    return from_rotations([[0, 1, 4], [2, 3, 5]], [(0, 1), (2, 3), (4, 5)])


def make_bivalent():
    """Basepoint joined to a valence-2 vertex by a double edge."""
    return from_rotations([[0, 2], [1, 3]], [(0, 1), (2, 3)])


def random_relabel(graph, rng):
    perm = list(range(graph.half_edge_count))
    rng.shuffle(perm)
    return relabel(graph, perm)


THETA_FILE = """\
# theta graph, sphere with three punctures
ribbon-graph 1
halfedges 6
vertex 0 : 0 2 4
vertex 1 : 1 5 3
edge 0 1
edge 2 3
edge 4 5
basepoint 0
"""

METRIC_FILE = """\
ribbon-graph 1
halfedges 6
vertex 0 : 0 2
vertex 1 : 1 3 4 5
edge 0 1 len 1
edge 2 3 len 1
edge 4 5 len 1
basepoint 0
"""
