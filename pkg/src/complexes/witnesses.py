"""Families of pairwise non-isomorphic roses of a given surface type.

A rose is written as a word of loop labels around its vertex. The word is a run of
puncture blocks followed by handle blocks:

- each puncture block uses two loops and reads ``1 1 2 2`` (altered: ``1 2 2 1``); both
  forms are planar with three boundary cycles, so ``(p - 1) / 2`` of them give ``p``
  punctures once glued;
- each handle block uses four loops, has a single boundary cycle and genus 2. The first
  handle block has four forms selected by two bits, every later one has two forms.

Every independent alteration doubles the family, giving ``2 ** ((p - 1) / 2 + g / 2 + 1)``
roses of type ``(g, p)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product

from ..canon.codes import canonical_code
from ..config import DEFAULT_LIMITS
from ..data.validator import RuleResult
from ..errors import ConstructionError, PreconditionError, UsageError
from ..graphs.ribbon import SurfaceType, rose_from_word, surface_type
from .enumeration import enumerate_roses

logger = logging.getLogger(__name__)

PUNCTURE_BLOCK = (1, 1, 2, 2)
PUNCTURE_BLOCK_ALTERED = (1, 2, 2, 1)

# Indexed by handle-a + 2 * handle-b.
FIRST_HANDLE_BLOCKS = (
    (1, 2, 1, 2, 3, 4, 3, 4),
    (1, 2, 1, 3, 4, 3, 2, 4),
    (1, 2, 3, 4, 1, 2, 3, 4),
    (1, 2, 3, 4, 3, 1, 2, 4),
)
HANDLE_BLOCK = (1, 2, 3, 2, 4, 1, 3, 4)
HANDLE_BLOCK_ALTERED = (1, 2, 1, 3, 4, 2, 3, 4)


@dataclass(frozen=True)
class Witness:
    """One generated rose with the alterations applied to the base word."""

    alterations: tuple[str, ...]
    word: tuple[int, ...]
    graph: object

    @property
    def name(self):
        return "+".join(self.alterations) if self.alterations else "base"


@dataclass(frozen=True)
class WitnessReport:
    genus: int
    punctures: int
    witnesses: tuple[Witness, ...]
    checks: tuple[RuleResult, ...]

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def expected(self):
        return expected_witness_count(self.genus, self.punctures)


def _check_parameters(genus, punctures):
    if genus < 2 or genus % 2:
        raise PreconditionError(f"genus must be even and at least 2, got {genus}")
    if punctures < 1 or punctures % 2 == 0:
        raise PreconditionError(f"punctures must be odd and at least 1, got {punctures}")


def expected_witness_count(genus, punctures):
    return 2 ** ((punctures - 1) // 2 + genus // 2 + 1)


def alteration_names(genus, punctures):
    """Names of the independent alterations, in the order they are applied."""
    _check_parameters(genus, punctures)
    names = [f"pair-{j}" for j in range(1, (punctures - 1) // 2 + 1)]
    names += ["handle-a", "handle-b"]
    names += [f"handle-{j}" for j in range(2, genus // 2 + 1)]
    return tuple(names)


def _word(genus, punctures, chosen):
    blocks = []
    for j in range(1, (punctures - 1) // 2 + 1):
        blocks.append(PUNCTURE_BLOCK_ALTERED if f"pair-{j}" in chosen else PUNCTURE_BLOCK)
    variant = int("handle-a" in chosen) + 2 * int("handle-b" in chosen)
    blocks.append(FIRST_HANDLE_BLOCKS[variant])
    for j in range(2, genus // 2 + 1):
        blocks.append(HANDLE_BLOCK_ALTERED if f"handle-{j}" in chosen else HANDLE_BLOCK)

    word = []
    offset = 0
    for block in blocks:
        word.extend(offset + label for label in block)
        offset += max(block)
    return tuple(word)


def generate_rose_witnesses(genus, punctures, alterations=None):
    """Roses of type (genus, punctures), one per subset of the alterations.

    Args:
        genus (int): even, at least 2
        punctures (int): odd, at least 1
        alterations (Iterable[str] | None): restrict to subsets of these names; all of
            ``alteration_names(genus, punctures)`` when None

    Returns:
        list[Witness]: base word first, then subsets in binary order

    Raises:
        ConstructionError: a generated rose does not have the requested surface type
    """
    names = alteration_names(genus, punctures)
    if alterations is None:
        active = names
    else:
        active = tuple(alterations)
        unknown = [a for a in active if a not in names]
        if unknown:
            raise UsageError(f"unknown alteration {unknown[0]!r}; expected one of {', '.join(names)}")
    target = SurfaceType(genus, punctures)
    witnesses = []
    for bits in product((False, True), repeat=len(active)):
        chosen = tuple(a for a, bit in zip(reversed(active), bits, strict=True) if bit)[::-1]
        word = _word(genus, punctures, set(chosen))
        rose = rose_from_word(word)
        found = surface_type(rose)
        if found != target:
            raise ConstructionError(f"alterations {chosen or '(none)'} give surface type {found}, expected {target}")
        witnesses.append(Witness(chosen, word, rose))
    logger.info("generated %d witnesses of type %s", len(witnesses), target)
    return witnesses


def verify_rose_witnesses(genus, punctures, limits=DEFAULT_LIMITS):
    """Check the full witness family: count, surface type, distinct codes and census membership.

    The census check runs only while ``2g + p - 1`` is within ``limits.census_check_loops``.
    """
    witnesses = generate_rose_witnesses(genus, punctures)
    expected = expected_witness_count(genus, punctures)
    target = SurfaceType(genus, punctures)
    codes = [canonical_code(w.graph, limits=limits) for w in witnesses]

    checks = [
        RuleResult("count", len(witnesses) == expected, f"{len(witnesses)} witnesses, expected {expected}"),
        RuleResult(
            "surface-type",
            all(surface_type(w.graph) == target for w in witnesses),
            f"all of type {target}",
        ),
    ]
    duplicates = len(codes) - len(set(codes))
    checks.append(RuleResult("distinct", duplicates == 0, f"{duplicates} repeated canonical codes"))

    loops = target.rank
    if loops <= limits.census_check_loops:
        census = enumerate_roses(genus, punctures, limits=limits)
        missing = [w.name for w, code in zip(witnesses, codes, strict=True) if code not in census]
        detail = f"{len(census)} roses in census" + (f"; missing {', '.join(missing)}" if missing else "")
        checks.append(RuleResult("census", not missing, detail))
    else:
        checks.append(RuleResult("census", True, f"skipped: {loops} loops exceed the census check cap"))

    report = WitnessReport(genus, punctures, tuple(witnesses), tuple(checks))
    logger.info("witness verification %s: %s", target, "pass" if report.passed else "fail")
    return report
