"""Reduced reflection factorizations of a Coxeter element and the Hurwitz action.

A factorization is a tuple of positive-root indices ``(t_1, ..., t_n)`` whose
reflections multiply (left to right, as matrices) to ``c``.  Conjugating a
reflection is done on roots: ``s_a s_b s_a`` is the reflection in ``s_a(b)``.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from coxlab.errors import PropertyViolation
from coxlab.group import GroupElement, GroupTable, perm_power
from coxlab.rootsys import RootSystem

__all__ = [
    "DualPresentation",
    "Factorization",
    "c_conjugation_orbits",
    "canonical_renaming",
    "enumerate_factorizations",
    "export_dual_presentation",
    "factorization_product",
    "hurwitz_move",
    "hurwitz_orbits",
    "type_a_transposition",
]

Factorization = tuple[int, ...]


def enumerate_factorizations(gt: GroupTable, c: GroupElement | int) -> list[Factorization]:
    """All minimal-length reflection factorizations of ``c``, sorted.

    A prefix ``p`` is extended by ``t`` only if ``l_R(pt) = l_R(p) + 1`` and
    ``l_R((pt)^-1 c) = n - l_R(pt)``.
    """
    ci = c if isinstance(c, int) else gt.index_of(c)
    rl = gt.reflection_lengths()
    n = rl[ci]
    refl = list(enumerate(gt.refl_indices))
    out: list[Factorization] = []

    def extend(prefix: list[int], p: int):
        depth = len(prefix)
        if depth == n:
            if p == ci:
                out.append(tuple(prefix))
            return
        for pos, t in refl:
            q = gt.mult(p, t)
            if rl[q] != depth + 1 or rl[gt.mult(gt.inv(q), ci)] != n - depth - 1:
                continue
            prefix.append(pos)
            extend(prefix, q)
            prefix.pop()

    extend([], 0)
    out.sort()
    return out


def factorization_product(gt: GroupTable, f: Sequence[int]) -> int:
    p = 0
    for pos in f:
        p = gt.mult(p, gt.refl_indices[pos])
    return p


def _conj(rs: RootSystem, a: int, b: int) -> int:
    """Positive-root index of ``s_a s_b s_a``."""
    return rs.hyperplane(rs.reflection_perms[a][b])


def hurwitz_move(rs: RootSystem, f: Sequence[int], i: int, direction: int = 1) -> Factorization:
    """Braid move at positions ``i, i+1`` (1-based, ``1 <= i < n``).

    The positive move sends ``(a, b)`` to ``(a b a, a)``; the negative move
    sends ``(a, b)`` to ``(b, b a b)``.
    """
    if not 1 <= i < len(f):
        raise ValueError(f"position {i} out of range for a factorization of length {len(f)}")
    out = list(f)
    a, b = f[i - 1], f[i]
    if direction > 0:
        out[i - 1], out[i] = _conj(rs, a, b), a
    elif direction < 0:
        out[i - 1], out[i] = b, _conj(rs, b, a)
    else:
        raise ValueError("direction must be +1 or -1")
    return tuple(out)


def _orbits(items: Iterable[Factorization], neighbours) -> list[list[Factorization]]:
    todo = sorted(set(items))
    seen: set[Factorization] = set()
    orbits = []
    for start in todo:
        if start in seen:
            continue
        seen.add(start)
        orbit = [start]
        queue = deque([start])
        while queue:
            f = queue.popleft()
            for g in neighbours(f):
                if g not in seen:
                    seen.add(g)
                    orbit.append(g)
                    queue.append(g)
        orbits.append(sorted(orbit))
    return orbits


def hurwitz_orbits(rs: RootSystem, fs: Iterable[Factorization]) -> list[list[Factorization]]:
    """Orbits under all positive and negative Hurwitz moves."""

    def neighbours(f):
        for i in range(1, len(f)):
            yield hurwitz_move(rs, f, i, 1)
            yield hurwitz_move(rs, f, i, -1)

    return _orbits(fs, neighbours)


def _is_minus_one(rs: RootSystem, perm: Sequence[int]) -> bool:
    return all(perm[i] == rs.neg(i) for i in range(2 * rs.N))


@dataclass(frozen=True)
class ConjugationOrbits:
    orbits: list[list[Factorization]]
    h: int
    central: bool  # whether c^(h/2) = -1

    @property
    def sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]


def c_conjugation_orbits(rs: RootSystem, fs: Iterable[Factorization], c: GroupElement) -> ConjugationOrbits:
    """Orbits of ``(t_i) -> (c t_i c^-1)``.

    Every orbit must have size h/2 when ``c^(h/2) = -1`` and size h otherwise.
    """
    if not rs.irreducible:
        raise ValueError("c-conjugation orbit sizes are stated for irreducible groups")
    h = c.order()
    central = h % 2 == 0 and _is_minus_one(rs, perm_power(c.perm, h // 2))
    cp = c.perm

    def neighbours(f):
        yield tuple(rs.hyperplane(cp[t]) for t in f)

    orbits = _orbits(fs, neighbours)
    want = h // 2 if central else h
    for o in orbits:
        if len(o) != want:
            raise PropertyViolation(
                f"c-conjugation orbit of size {len(o)}; expected {want} (h = {h}, c^(h/2) = -1: {central})"
            )
    return ConjugationOrbits(orbits, h, central)


@dataclass(frozen=True)
class DualPresentation:
    group: str
    generators: tuple[tuple[str, int], ...]
    words: tuple[tuple[str, ...], ...]

    def to_text(self) -> str:
        lines = [f"gen {name} = reflection {root}" for name, root in self.generators]
        lines += [".".join(w) for w in self.words]
        lines.append(f"words: {len(self.words)}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "group": self.group,
            "generators": [{"name": name, "reflection": root} for name, root in self.generators],
            "words": [list(w) for w in self.words],
            "count": len(self.words),
        }
        return json.dumps(payload, indent=2) + "\n"


def export_dual_presentation(rs: RootSystem, fs: Iterable[Factorization]) -> DualPresentation:
    """One generator per reflection; every factorization is a word equal to ``c``."""
    gens = tuple((f"t{p}", p) for p in range(rs.N))
    words = tuple(tuple(f"t{p}" for p in f) for f in sorted(fs))
    return DualPresentation(rs.name, gens, words)


def canonical_renaming(pres: DualPresentation, max_letters: int = 8) -> list[str]:
    """Rewrite the relation words over letters ``a, b, c, ...``.

    Generators that occur are relabelled by the bijection giving the
    lexicographically smallest sorted word list, so isomorphic presentations
    print identically.  Beyond ``max_letters`` letters, first occurrence is used.
    """
    used = sorted({g for w in pres.words for g in w}, key=lambda g: int(g[1:]))
    letters = [chr(ord("a") + i) for i in range(len(used))]
    if len(used) > max_letters:
        order = []
        for w in pres.words:
            for g in w:
                if g not in order:
                    order.append(g)
        name = dict(zip(order, letters))
        return sorted("".join(name[g] for g in w) for w in pres.words)
    best = None
    for perm in itertools.permutations(letters):
        name = dict(zip(used, perm))
        cand = sorted("".join(name[g] for g in w) for w in pres.words)
        if best is None or cand < best:
            best = cand
    return best or []


def type_a_transposition(rs: RootSystem, p: int) -> tuple[int, int]:
    """The transposition ``(i j)`` (1-based) of the positive root ``e_i - e_j`` in type A.

    In simple-root coordinates that root is the 0/1 block on positions i..j-1.
    """
    v = [int(x.a) for x in rs.posroots[p]]
    support = [k for k, x in enumerate(v) if x]
    if any(x not in (0, 1) for x in v) or support != list(range(support[0], support[-1] + 1)):
        raise ValueError("not a type A root in simple coordinates")
    return support[0] + 1, support[-1] + 2
