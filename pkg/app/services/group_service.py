"""
Group service: regular embeddings, conjugation, and the census of regular
subgroups of Perm(G) normalized by λ(G).
"""

from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import structlog

from app.core.config import settings
from app.core.exceptions import BudgetExceededError, FixtureValidationError
from app.entities.group import FiniteGroup, Permutation, RegularSubgroup

logger = structlog.get_logger()

# no budget, configured or explicit, reaches past this order
MAX_ENUMERATION_ORDER = 12


class GroupService:
    """Regular subgroups of Perm(G) normalized by the left regular image."""

    # -- catalog -----------------------------------------------------------------

    def cyclic_group(self, n: int) -> FiniteGroup:
        table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
        labels = tuple("1" if i == 0 else ("r" if i == 1 else f"r{i}") for i in range(n))
        return FiniteGroup(n, table, 0, labels)

    def dihedral_group(self, m: int) -> FiniteGroup:
        """Dihedral group of order 2m; index a + m·b stands for r^a s^b."""
        n = 2 * m

        def mul(x: int, y: int) -> int:
            a, b = x % m, x // m
            c, d = y % m, y // m
            rot = (a + (c if b == 0 else -c)) % m
            return rot + m * ((b + d) % 2)

        def name(x: int) -> str:
            a, b = x % m, x // m
            r = "" if a == 0 else ("r" if a == 1 else f"r{a}")
            s = "s" if b else ""
            return (r + s) or "1"

        table = tuple(tuple(mul(x, y) for y in range(n)) for x in range(n))
        return FiniteGroup(n, table, 0, tuple(name(x) for x in range(n)))

    def symmetric_group_s3(self) -> FiniteGroup:
        return self.dihedral_group(3)

    def quaternion_group(self) -> FiniteGroup:
        """Q8 with index u + 4·[negative] for units u in (1, i, j, k)."""
        # unit products as (sign, unit)
        unit = {
            (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
            (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
            (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
            (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
        }

        def mul(x: int, y: int) -> int:
            sign, u = unit[(x % 4, y % 4)]
            if (x >= 4) != (y >= 4):
                sign = -sign
            return u + (4 if sign < 0 else 0)

        names = ("1", "i", "j", "k", "-1", "-i", "-j", "-k")
        table = tuple(tuple(mul(x, y) for y in range(8)) for x in range(8))
        return FiniteGroup(8, table, 0, names)

    def catalog(self, name: str) -> FiniteGroup:
        key = name.strip().upper()
        if key in ("1", "C1", "TRIVIAL"):
            return self.cyclic_group(1)
        if key == "S3":
            return self.symmetric_group_s3()
        if key == "Q8":
            return self.quaternion_group()
        if key.startswith("C") and key[1:].isdigit():
            return self.cyclic_group(int(key[1:]))
        if key.startswith("D") and key[1:].isdigit():
            # D4 is the dihedral group of order 8 (symmetries of a square)
            return self.dihedral_group(int(key[1:]))
        raise FixtureValidationError("unknown group in catalog", identity="catalog", name=name)

    def relabel(self, G: FiniteGroup, pi: Sequence[int]) -> FiniteGroup:
        """Copy of G whose element i is renamed pi[i]."""
        n = G.order
        inv = [0] * n
        for i, p in enumerate(pi):
            inv[p] = i
        table = tuple(tuple(pi[G.mul(inv[a], inv[b])] for b in range(n)) for a in range(n))
        labels = tuple(G.labels[inv[a]] for a in range(n))
        return FiniteGroup(n, table, pi[G.identity], labels)

    def relabel_subgroup(self, N: RegularSubgroup, target: FiniteGroup, pi: Sequence[int]) -> RegularSubgroup:
        """Transport N along the relabeling pi into Perm(target)."""
        n = target.order
        perms = []
        for perm in N.elements:
            images = [0] * n
            for x in range(n):
                images[pi[x]] = pi[perm(x)]
            perms.append(Permutation(tuple(images)))
        return RegularSubgroup.from_permutations(target, perms)

    # -- embeddings ---------------------------------------------------------------

    def left_translation(self, G: FiniteGroup, g: int) -> Permutation:
        return Permutation(tuple(G.mul(g, h) for h in G.elements()))

    @lru_cache(maxsize=None)
    def left_regular(self, G: FiniteGroup) -> RegularSubgroup:
        """λ(G), with λ(g)(h) = gh."""
        return RegularSubgroup.from_permutations(G, (self.left_translation(G, g) for g in G.elements()))

    @lru_cache(maxsize=None)
    def right_regular(self, G: FiniteGroup) -> RegularSubgroup:
        """ρ(G), with ρ(g)(h) = h·g⁻¹; ρ(g) is stored at index g⁻¹."""
        perms = (Permutation(tuple(G.mul(h, G.inv(g)) for h in G.elements())) for g in G.elements())
        return RegularSubgroup.from_permutations(G, perms)

    def rho_index(self, G: FiniteGroup, g: int) -> int:
        """Position of ρ(g) inside right_regular(G)."""
        return G.inv(g)

    def conj_action(self, G: FiniteGroup, g: int, eta: Permutation) -> Permutation:
        """λ(g) ∘ η ∘ λ(g)⁻¹"""
        return Permutation(tuple(G.mul(g, eta(G.mul(G.inv(g), x))) for x in G.elements()))

    def conjugation_table(self, G: FiniteGroup, N: RegularSubgroup) -> Tuple[Tuple[int, ...], ...]:
        """table[g][k] is the index in N of λ(g)·η_k·λ(g)⁻¹."""
        rows = []
        for g in G.elements():
            row = []
            for k in range(N.order):
                # the conjugate sends 1 to g·η_k(g⁻¹)
                target = G.mul(g, N.elements[k](G.inv(g)))
                row.append(target)
            rows.append(tuple(row))
        return tuple(rows)

    def normalizes(self, N: RegularSubgroup, G: FiniteGroup) -> bool:
        members = set(N.elements)
        return all(self.conj_action(G, g, eta) in members
                   for g in G.elements() for eta in N.elements)

    def centralizes(self, N: RegularSubgroup, M: RegularSubgroup) -> bool:
        """True iff every element of N commutes with every element of M."""
        return all(a.compose(b) == b.compose(a) for a in N.elements for b in M.elements)

    def is_regular(self, N: RegularSubgroup) -> bool:
        e = N.group.identity
        return (sorted(p(e) for p in N.elements) == list(N.group.elements())
                and all(p.is_identity() or not p.has_fixed_point() for p in N.elements))

    # -- enumeration ---------------------------------------------------------------

    def _semiregular_candidates(self, G: FiniteGroup, g: int) -> Iterator[Tuple[int, ...]]:
        """Fixed-point-free permutations with all cycles of equal length sending 1_G to g."""
        n = G.order
        e = G.identity
        for d in range(2, n + 1):
            if n % d:
                continue
            images: List[Optional[int]] = [None] * n
            used = [False] * n
            yield from self._build_cycles(n, d, e, g, images, used)

    def _build_cycles(self, n: int, d: int, e: int, g: int, images: List[Optional[int]],
                      used: List[bool]) -> Iterator[Tuple[int, ...]]:
        # each cycle starts at the smallest unused point, so every permutation appears once
        start = next((x for x in range(n) if not used[x]), None)
        if start is None:
            yield tuple(images)  # type: ignore[arg-type]
            return
        used[start] = True
        yield from self._extend_cycle(n, d, e, g, images, used, [start])
        used[start] = False

    def _extend_cycle(self, n: int, d: int, e: int, g: int, images: List[Optional[int]],
                      used: List[bool], cycle: List[int]) -> Iterator[Tuple[int, ...]]:
        last = cycle[-1]
        if len(cycle) == d:
            # closing edge last -> start must respect e -> g
            if (last == e) != (cycle[0] == g):
                return
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a] = b
            yield from self._build_cycles(n, d, e, g, images, used)
            for a in cycle:
                images[a] = None
            return
        choices = (g,) if last == e else range(n)
        for nxt in choices:
            if used[nxt] or (nxt == g and last != e):
                continue
            used[nxt] = True
            cycle.append(nxt)
            yield from self._extend_cycle(n, d, e, g, images, used, cycle)
            cycle.pop()
            used[nxt] = False

    def _propagate(self, G: FiniteGroup, assigned: Dict[int, Tuple[int, ...]],
                   seed: Tuple[int, ...]) -> Optional[Dict[int, Tuple[int, ...]]]:
        """Close an assignment g ↦ η_g under composition and λ(G)-conjugation."""
        e = G.identity
        n = G.order
        table = G.table
        inv = G.inverses
        result = dict(assigned)
        queue = [seed]
        while queue:
            p = queue.pop()
            k = p[e]
            known = result.get(k)
            if known is not None:
                if known != p:
                    return None
                continue
            if k != e and any(p[x] == x for x in range(n)):
                return None
            result[k] = p
            for a in range(n):
                ai = inv[a]
                queue.append(tuple(table[a][p[table[ai][x]]] for x in range(n)))
            for q in list(result.values()):
                queue.append(tuple(p[y] for y in q))
                queue.append(tuple(q[y] for y in p))
        return result

    def _search(self, G: FiniteGroup, assigned: Dict[int, Tuple[int, ...]],
                found: List[Tuple[Tuple[int, ...], ...]]) -> None:
        n = G.order
        if len(assigned) == n:
            found.append(tuple(assigned[g] for g in range(n)))
            return
        g = next(x for x in range(n) if x not in assigned)
        for candidate in self._semiregular_candidates(G, g):
            extended = self._propagate(G, assigned, candidate)
            if extended is not None:
                self._search(G, extended, found)

    def enumerate_regular_subgroups(self, G: FiniteGroup, budget: Optional[int] = None) -> List[RegularSubgroup]:
        """All regular subgroups of Perm(G) normalized by λ(G), in lexicographic order."""
        limit = min(settings.enumeration_budget if budget is None else budget, MAX_ENUMERATION_ORDER)
        if G.order > limit:
            raise BudgetExceededError("group order exceeds the enumeration budget", G.order, limit)
        e = G.identity
        identity = tuple(range(G.order))
        found: List[Tuple[Tuple[int, ...], ...]] = []
        self._search(G, {e: identity}, found)
        found.sort(key=lambda images: tuple(x for perm in images for x in perm))
        result = [RegularSubgroup(G, tuple(Permutation(p) for p in images)) for images in found]
        logger.info("Enumerated regular subgroups", order=G.order, count=len(result))
        return result

    def summary(self, N: RegularSubgroup) -> Dict[str, object]:
        return {"order": N.order, "abelian": N.is_abelian()}


group_service = GroupService()
