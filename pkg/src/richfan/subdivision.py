"""Richness ideals, the weakly rich subdivision, cut orders and smoothness.

The two constructions of the subdivision are both here: choice-function cones
(used for r = 1) and the Newton/min-function fan of the richness ideal (the
normative route for every finite r).  Their agreement at r = 1 is a tested
invariant, not an assumption baked into either construction.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .cones import Cone, Fan, is_unimodular, unit
from .curves import RealFamily
from .errors import (
    DimensionMismatch,
    InvalidChoice,
    NotMinimalOrder,
    SchemaError,
    UnknownCoordinate,
)
from .graphs import Graph
from .intlinalg import Vec
from .monoids import MAX_DIVISOR_TUPLES, SharpMonoid, check_r, divisors

_NP_THRESHOLD = 512
_NP_VALUE_CAP = 1 << 60
_SCREEN_WIDTHS = (64, 512, 4096)
_STAGE_BOUNDS = (512, 4096, 32768)
_BITSET_VMAX = 4096
_BITSET_CELLS = 200_000_000
_RICHNESS_CACHE_LIMIT = 20_000
_richness_cache: dict[tuple, "MonomialIdeal"] = {}


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal in N^rank, stored by its minimal generators."""

    rank: int
    generators: tuple[Vec, ...]

    @staticmethod
    def from_generators(rank: int, gens: Iterable[Sequence[int]]) -> "MonomialIdeal":
        vs = []
        for g in gens:
            v = tuple(int(t) for t in g)
            if len(v) != rank:
                raise DimensionMismatch("generator length does not match rank")
            if any(t < 0 for t in v):
                raise ValueError("monomial exponents must be nonnegative")
            vs.append(v)
        if not vs:
            raise ValueError("a monomial ideal needs at least one generator")
        return MonomialIdeal(rank, _minimalize(rank, vs))

    @staticmethod
    def unit(rank: int) -> "MonomialIdeal":
        return MonomialIdeal(rank, (tuple(0 for _ in range(rank)),))

    def to_obj(self) -> dict:
        return {"rank": self.rank, "generators": [list(g) for g in self.generators]}

    @staticmethod
    def from_obj(obj: object) -> "MonomialIdeal":
        if not isinstance(obj, dict):
            raise SchemaError("ideal document must be an object")
        rank = obj.get("rank")
        gens = obj.get("generators")
        if not isinstance(rank, int) or rank < 0:
            raise SchemaError("ideal.rank must be a nonnegative integer")
        if not isinstance(gens, list) or not gens:
            raise SchemaError("ideal.generators must be a nonempty list")
        for g in gens:
            if (
                not isinstance(g, list)
                or len(g) != rank
                or not all(isinstance(t, int) and t >= 0 for t in g)
            ):
                raise SchemaError("each generator must be a nonnegative integer vector")
        return MonomialIdeal.from_generators(rank, [tuple(g) for g in gens])


def _minimalize(rank: int, cands: Iterable[Sequence[int]]) -> tuple[Vec, ...]:
    """Componentwise-minimal elements of a candidate set, lex-sorted."""
    uniq = sorted(set(tuple(v) for v in cands))
    if len(uniq) <= _NP_THRESHOLD or rank == 0:
        return _minimalize_small(uniq)
    arr = np.array(uniq, dtype=np.int64)
    if arr.size and int(arr.max()) >= _NP_VALUE_CAP:
        return _minimalize_small(uniq)
    kept = _pareto_np(arr)
    return tuple(sorted(tuple(int(t) for t in row) for row in kept.tolist()))


def _minimalize_small(uniq: list[Vec]) -> tuple[Vec, ...]:
    kept: list[Vec] = []
    for v in sorted(uniq, key=lambda t: (sum(t), t)):
        if not any(all(k[i] <= v[i] for i in range(len(v))) for k in kept):
            kept.append(v)
    return tuple(sorted(kept))


def _fold_append(
    bits: list["np.ndarray"], kept: "np.ndarray", lo: int, hi: int, vmax: int
) -> None:
    """Append rows [lo, hi) of kept into the per-coordinate threshold bit
    tables: bits[j][t] packs the set {i : kept[i][j] <= t}.  Lets a block of
    candidates test domination against every folded row with k table lookups
    and bitwise ANDs instead of a dense compare.  lo and hi are byte-aligned.
    """
    m = hi - lo
    ar = np.arange(m)
    eq = np.empty((vmax + 1, m), dtype=np.uint8)
    for j in range(kept.shape[1]):
        eq[:, :] = 0
        eq[kept[lo:hi, j], ar] = 1
        np.maximum.accumulate(eq, axis=0, out=eq)
        bits[j][:, lo >> 3 : hi >> 3] = np.packbits(eq, axis=1)


def _bitset_kill(
    block: "np.ndarray",
    alive: "np.ndarray",
    bits: list["np.ndarray"],
    nbits: int,
    k: int,
) -> None:
    """Clear alive flags for rows dominated by a folded kept row, testing the
    folded prefix in geometrically growing byte ranges so early kept rows (the
    strongest dominators) are consulted at the smallest width."""
    lo = 0
    for bound in _STAGE_BOUNDS + (nbits,):
        hi = min(bound, nbits)
        if hi <= lo:
            continue
        lo8, hi8 = lo >> 3, (hi + 7) >> 3
        idx = np.flatnonzero(alive)
        if not idx.size:
            return
        chunk = max(256, 4_000_000 // (hi8 - lo8))
        for c0 in range(0, idx.size, chunk):
            ii = idx[c0 : c0 + chunk]
            sub = block[ii]
            acc = bits[0][sub[:, 0], lo8:hi8]
            for j in range(1, k):
                acc &= bits[j][sub[:, j], lo8:hi8]
            dom = acc.any(axis=1)
            if dom.any():
                alive[ii[dom]] = False
        lo = hi
        if hi == nbits:
            return


def _direct_kill(
    block: "np.ndarray", alive: "np.ndarray", pc: "np.ndarray"
) -> None:
    """Clear alive flags for rows dominated by some row of pc (dense compare)."""
    idx = np.flatnonzero(alive)
    if not idx.size or not pc.shape[0]:
        return
    chunk = max(256, 4_000_000 // max(1, pc.shape[0]))
    for c0 in range(0, idx.size, chunk):
        ii = idx[c0 : c0 + chunk]
        dom = (pc[None, :, :] <= block[ii][:, None, :]).all(2).any(1)
        if dom.any():
            alive[ii[dom]] = False


def _pareto_np(arr: "np.ndarray") -> "np.ndarray":
    """Minimal rows under componentwise <=, returned in (sum, lex) order.

    Rows are processed sum level by sum level; within a level only equal rows
    relate, so each level is deduplicated after screening instead of sorting
    the whole input up front.  Screening against the kept rows runs on packed
    bit tables (one per coordinate, indexed by threshold) when values are
    small, with a dense compare for the not-yet-folded tail.
    """
    n, k = arr.shape
    if k == 0:
        return arr[:1].copy()
    if n <= 1:
        return arr.copy()
    sums = arr.sum(axis=1)
    order = np.argsort(sums, kind="stable")
    arr = arr[order]
    sums = sums[order]
    starts = np.flatnonzero(np.r_[True, sums[1:] != sums[:-1]])
    ends = np.r_[starts[1:], n]
    kept = np.empty((n, k), dtype=arr.dtype)
    nk = 0
    nbits = 0
    vmax = int(arr.max())
    use_bits = vmax <= _BITSET_VMAX and (vmax + 1) * ((n + 7) >> 3) * k <= _BITSET_CELLS
    bits: list[np.ndarray] | None = None
    cap = 0
    for s0, s1 in zip(starts, ends):
        block = arr[s0:s1]
        if nk:
            alive = np.ones(block.shape[0], dtype=bool)
            if bits is not None:
                _bitset_kill(block, alive, bits, nbits, k)
                _direct_kill(block, alive, kept[nbits:nk])
            else:
                lo = 0
                for width in _SCREEN_WIDTHS + (nk,):
                    hi = min(width, nk)
                    if hi > lo:
                        _direct_kill(block, alive, kept[lo:hi])
                        lo = hi
                    if not alive.any() or hi == nk:
                        break
            block = np.unique(block[alive], axis=0)
        else:
            block = np.unique(block, axis=0)
        m = block.shape[0]
        if m:
            kept[nk : nk + m] = block
            nk += m
            if use_bits and nk - nbits >= 8:
                fold_to = nk & ~7
                need = fold_to >> 3
                if need > cap:
                    cap = max(1024, need * 2)
                    grown = [np.zeros((vmax + 1, cap), dtype=np.uint8) for _ in range(k)]
                    if bits is not None:
                        for j in range(k):
                            grown[j][:, : nbits >> 3] = bits[j][:, : nbits >> 3]
                    bits = grown
                _fold_append(bits, kept, nbits, fold_to, vmax)
                nbits = fold_to
    return kept[:nk].copy()


def ideal_product(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    """Minimal generators of the product (Minkowski sum of generator sets)."""
    if a.rank != b.rank:
        raise DimensionMismatch("ideals live in different ranks")
    rank = a.rank
    ga, gb = a.generators, b.generators
    if len(ga) * len(gb) > 4096:
        arr_a = np.array(ga, dtype=np.int64)
        arr_b = np.array(gb, dtype=np.int64)
        if int(arr_a.max(initial=0)) + int(arr_b.max(initial=0)) < _NP_VALUE_CAP:
            sums = (arr_a[:, None, :] + arr_b[None, :, :]).reshape(-1, rank)
            kept = _pareto_np(sums)
            gens = tuple(sorted(tuple(int(t) for t in row) for row in kept.tolist()))
            return MonomialIdeal(rank, gens)
    cands = [tuple(x + y for x, y in zip(u, v)) for u in ga for v in gb]
    return MonomialIdeal(rank, _minimalize(rank, cands))


def ideal_product_many(rank: int, ideals: Iterable[MonomialIdeal]) -> MonomialIdeal:
    """Product of many ideals, smallest pairs first to keep intermediates lean."""
    import heapq

    heap: list[tuple[int, int, MonomialIdeal]] = []
    tie = 0
    for i in ideals:
        if i.rank != rank:
            raise DimensionMismatch("ideals live in different ranks")
        heap.append((len(i.generators), tie, i))
        tie += 1
    if not heap:
        return MonomialIdeal.unit(rank)
    heapq.heapify(heap)
    while len(heap) > 1:
        _, _, x = heapq.heappop(heap)
        _, _, y = heapq.heappop(heap)
        p = ideal_product(x, y)
        heapq.heappush(heap, (len(p.generators), tie, p))
        tie += 1
    return heap[0][2]


def pullback_to_contraction(i: MonomialIdeal, s: Iterable[int]) -> MonomialIdeal:
    """Delete the listed coordinates (0-based) from every generator.

    A generator supported entirely inside s becomes the zero vector, turning
    the result into the unit ideal.
    """
    drop = set(int(t) for t in s)
    for t in drop:
        if not 0 <= t < i.rank:
            raise UnknownCoordinate(f"coordinate {t} out of range")
    keep = [j for j in range(i.rank) if j not in drop]
    rank = len(keep)
    if len(i.generators) > _NP_THRESHOLD:
        arr = np.array(i.generators, dtype=np.int64)[:, keep]
        if not arr.size or int(arr.max(initial=0)) < _NP_VALUE_CAP:
            kept = _pareto_np(arr)
            gens = tuple(sorted(tuple(int(t) for t in row) for row in kept.tolist()))
            return MonomialIdeal(rank, gens)
    gens_py = [tuple(g[j] for j in keep) for g in i.generators]
    return MonomialIdeal(rank, _minimalize(rank, gens_py))


Blocks = tuple[tuple[int, ...], ...]


def _block_canon(arr: "np.ndarray", blocks: Blocks) -> "np.ndarray":
    """Sort each row's entries within every block: the canonical orbit
    representative under the group permuting coordinates block-wise."""
    out = arr.copy()
    for b in blocks:
        if len(b) > 1:
            cols = list(b)
            out[:, cols] = np.sort(out[:, cols], axis=1)
    return out


def _expand_rows(arr: "np.ndarray", blocks: Blocks) -> "np.ndarray":
    """All distinct images of the rows under block-wise coordinate permutations."""
    out = arr
    for b in blocks:
        if len(b) <= 1:
            continue
        cols = list(b)
        pieces = []
        for p in permutations(range(len(cols))):
            img = out.copy()
            img[:, cols] = out[:, [cols[i] for i in p]]
            pieces.append(img)
        out = np.unique(np.concatenate(pieces), axis=0)
    return out


def _swap_support(s: frozenset, a: int, b: int) -> frozenset:
    ina, inb = a in s, b in s
    if ina == inb:
        return s
    t = set(s)
    t.discard(a if ina else b)
    t.add(b if ina else a)
    return frozenset(t)


def _young_blocks(supports: Sequence[frozenset], n: int) -> Blocks:
    """Partition the coordinates into interchangeability classes.

    Two coordinates land in one class when swapping them preserves the multiset
    of cut supports; the full symmetric group on each class then preserves it
    too, since transpositions inside a class generate it.
    """
    ms = Counter(supports)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(n):
        for b in range(a + 1, n):
            if find(a) == find(b):
                continue
            if Counter(_swap_support(s, a, b) for s in supports) == ms:
                parent[find(b)] = find(a)
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return tuple(tuple(sorted(g)) for g in sorted(groups.values()))


def _blocks_refine(old: Blocks, new: Blocks) -> bool:
    """True when every old block sits inside a single new block, i.e. the old
    block group is a subgroup of the new one."""
    where = {}
    for i, b in enumerate(new):
        for x in b:
            where[x] = i
    return all(len({where[x] for x in b}) == 1 for b in old)


def _support_images(support: frozenset, blocks: Blocks) -> list[tuple[int, ...]]:
    """Orbit of a support under block-wise permutations: independently choose,
    in each block, which positions the support occupies."""
    opts = []
    for b in blocks:
        m = sum(1 for x in b if x in support)
        if m:
            opts.append(list(combinations(b, m)))
    images = set()
    for pick in product(*opts):
        flat: list[int] = []
        for part in pick:
            flat.extend(part)
        images.add(tuple(sorted(flat)))
    return sorted(images)


def _embed_rows(tpl: "np.ndarray", support: Sequence[int], n: int) -> "np.ndarray":
    out = np.zeros((tpl.shape[0], n), dtype=np.int64)
    out[:, list(support)] = tpl
    return out


@lru_cache(maxsize=None)
def _cut_template_reps(size: int, r: int) -> "np.ndarray":
    """Sorted-row representatives of the minimal generators of the per-cut
    ideal: the product over all divisor tuples of r of the rescaled length
    ideals on one cut.

    The full product is invariant under permuting the cut's coordinates, and
    on sorted representatives componentwise domination decides orbit-wise
    domination, so the whole computation runs on representatives: divisor
    tuples are grouped into permutation orbits, each orbit's subproduct is
    expanded once row-wise, and orbit subproducts are merged smallest first
    with one side expanded back to full orbits.
    """
    divs = divisors(r)
    orbits: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for lam in product(divs, repeat=size):
        orbits.setdefault(tuple(sorted(lam)), []).append(lam)
    whole: Blocks = (tuple(range(size)),)
    stage: list[np.ndarray] = []
    for _, lams in sorted(orbits.items()):
        cur = np.zeros((1, size), dtype=np.int64)
        for lam in lams:
            fac = np.diag(np.array(lam, dtype=np.int64))
            cand = (cur[:, None, :] + fac[None, :, :]).reshape(-1, size)
            cur = _pareto_np(cand)
        stage.append(_pareto_np(_block_canon(cur, whole)))
    stage.sort(key=lambda a: a.shape[0])
    cur = stage[0]
    for nxt in stage[1:]:
        other = _expand_rows(nxt, whole)
        pieces = []
        step = max(1, 4_000_000 // max(1, other.shape[0]))
        for lo in range(0, cur.shape[0], step):
            part = (cur[lo : lo + step, None, :] + other[None, :, :]).reshape(-1, size)
            pieces.append(_pareto_np(_block_canon(part, whole)))
        cur = pieces[0] if len(pieces) == 1 else _pareto_np(np.concatenate(pieces))
    return cur


@lru_cache(maxsize=None)
def _cut_template(size: int, r: int) -> MonomialIdeal:
    """Per-cut ideal in rank `size`: product over divisor tuples of r.

    Depends on the cut only through its size, up to coordinate permutation,
    so templates are shared across cuts and graphs.
    """
    divs = divisors(r)
    if len(divs) ** size > MAX_DIVISOR_TUPLES:
        raise ValueError(
            f"cut of size {size} needs {len(divs) ** size} divisor tuples for r={r}"
        )
    # every divisor tuple can load the same coordinate, so values reach r*d**size
    if r * len(divs) ** size >= _NP_VALUE_CAP:
        factors = []
        for lam in product(divs, repeat=size):
            gens = [tuple(lam[j] if t == j else 0 for t in range(size)) for j in range(size)]
            factors.append(MonomialIdeal(size, tuple(sorted(gens))))
        return ideal_product_many(size, factors)
    full = _expand_rows(_cut_template_reps(size, r), (tuple(range(size)),))
    gens = tuple(sorted(tuple(int(t) for t in row) for row in full.tolist()))
    return MonomialIdeal(size, gens)


def richness_ideal(g: Graph, r: int) -> MonomialIdeal:
    """Product over all cuts and divisor tuples of the rescaled length ideals.

    Computed on the minimal chart: the length of edge e is the e-th basis
    vector, coordinates ordered by sorted edge id.

    The product runs cut by cut on canonical orbit representatives for the
    block symmetry of the cuts seen so far (rows sorted within each
    interchangeability class).  When a new cut only merges classes, the kept
    representatives feed the next product directly, with the new cut expanded
    over its old-class orbit; when it splits them, the representatives are
    expanded back to the full generator set first.  Equal-sum rows never
    dominate each other, so Pareto screening on representatives is exact.
    """
    check_r(r, allow_inf=False)
    g.require_connected()
    coords = g.sorted_edge_ids()
    pos = {e: j for j, e in enumerate(coords)}
    n = len(coords)
    cuts = g.cuts()
    if not cuts or n == 0:
        return MonomialIdeal.unit(n)
    sizes = {len(c) for c in cuts}
    divs = divisors(r)
    if any(len(divs) ** k > MAX_DIVISOR_TUPLES for k in sizes):
        raise ValueError(f"cut sizes {sorted(sizes)} too large for r={r}")
    value_bound = sum(r * len(divs) ** len(c) for c in cuts)
    if value_bound >= _NP_VALUE_CAP or n == 1:
        return _richness_ideal_generic(g, r, pos, n)
    # big cuts first: their expensive templates multiply while the frontier is
    # small, and the cheap pair templates land on compressed representatives
    supports = sorted(
        (frozenset(pos[e] for e in cut) for cut in cuts),
        key=lambda s: (-len(s), max(s), tuple(sorted(s))),
    )
    cache_key = (n, r, tuple(tuple(sorted(s)) for s in supports))
    hit = _richness_cache.get(cache_key)
    if hit is not None:
        return hit
    templates = {k: np.array(_cut_template(k, r).generators, dtype=np.int64) for k in sizes}
    cur = np.zeros((1, n), dtype=np.int64)
    old_blocks: Blocks = (tuple(range(n)),)
    seen: list[frozenset] = []
    for s in supports:
        seen.append(s)
        new_blocks = _young_blocks(seen, n)
        if _blocks_refine(old_blocks, new_blocks):
            base = cur
            images = _support_images(s, old_blocks)
        else:
            base = _expand_rows(cur, old_blocks)
            images = [tuple(sorted(s))]
        if base.shape[0] == 1 and not base.any() and tuple(sorted(s)) in new_blocks:
            # first cut on a fresh class: representatives of the template
            # suffice, the class symmetry restores the rest
            fac = _embed_rows(_cut_template_reps(len(s), r), tuple(sorted(s)), n)
        else:
            rows = [_embed_rows(templates[len(s)], img, n) for img in images]
            fac = rows[0] if len(rows) == 1 else np.concatenate(rows)
        pieces = []
        step = max(1, 4_000_000 // max(1, fac.shape[0]))
        for lo in range(0, base.shape[0], step):
            part = (base[lo : lo + step, None, :] + fac[None, :, :]).reshape(-1, n)
            pieces.append(_pareto_np(_block_canon(part, new_blocks)))
        cur = pieces[0] if len(pieces) == 1 else _pareto_np(np.concatenate(pieces))
        old_blocks = new_blocks
    full = _expand_rows(cur, old_blocks)
    gens = tuple(sorted(tuple(int(t) for t in row) for row in full.tolist()))
    out = MonomialIdeal(n, gens)
    if len(gens) <= _RICHNESS_CACHE_LIMIT:
        _richness_cache[cache_key] = out
    return out


def _richness_ideal_generic(
    g: Graph, r: int, pos: Mapping[int, int], n: int
) -> MonomialIdeal:
    parts = []
    for cut in g.cuts():
        template = _cut_template(len(cut), r)
        gens = []
        for tgen in template.generators:
            w = [0] * n
            for j, e in enumerate(sorted(cut)):
                w[pos[e]] = tgen[j]
            gens.append(tuple(w))
        parts.append(MonomialIdeal(n, tuple(sorted(gens))))
    return ideal_product_many(n, parts)


def newton_subdivision(i: MonomialIdeal) -> Fan:
    """Linearity domains of x -> min over generators of <m, x> on the orthant.

    One candidate cone per generator; only the full-dimensional ones are kept
    (a minimal generator need not be a vertex of the Newton polyhedron).
    """
    n = i.rank
    cones = []
    for m in i.generators:
        ineqs = [unit(n, j) for j in range(n)]
        for m2 in i.generators:
            if m2 is m:
                continue
            ineqs.append(tuple(a - b for a, b in zip(m2, m)))
        c = Cone.from_inequalities(n, ineqs)
        if c.dim() == n:
            cones.append(c)
    return Fan(n, cones)


# -- choice functions ---------------------------------------------------------


@dataclass(frozen=True)
class ChoiceFunction:
    """One chosen edge per cut; optional per-cut divisor-tuple argmin data.

    choices maps each cut (sorted edge-id tuple) to an edge of that cut.
    tuple_choices, when present, maps each cut to a map from divisor tuples
    (aligned with the cut's sorted edges) to the edge realizing the minimum.
    """

    choices: tuple[tuple[tuple[int, ...], int], ...]
    tuple_choices: tuple[tuple[tuple[int, ...], tuple[tuple[tuple[int, ...], int], ...]], ...] | None = None

    @staticmethod
    def build(
        g: Graph,
        mapping: Mapping[tuple[int, ...], int],
        tuple_mapping: Mapping[tuple[int, ...], Mapping[tuple[int, ...], int]] | None = None,
        r: int | None = None,
    ) -> "ChoiceFunction":
        cuts = g.cuts()
        if set(mapping.keys()) != set(cuts):
            raise InvalidChoice("choice function must be defined on exactly the cuts")
        for c, e in mapping.items():
            if e not in c:
                raise InvalidChoice(f"chosen edge {e} is not in cut {c}")
        tc = None
        if tuple_mapping is not None:
            if r is None:
                raise InvalidChoice("tuple choices need the r they were built for")
            rows = []
            for c in cuts:
                sub = tuple_mapping.get(c)
                if sub is None:
                    raise InvalidChoice(f"missing tuple choices for cut {c}")
                expect = set(product(divisors(r), repeat=len(c)))
                if set(sub.keys()) != expect:
                    raise InvalidChoice(f"tuple choices for cut {c} must cover all divisor tuples")
                for lam, e in sub.items():
                    if e not in c:
                        raise InvalidChoice(f"argmin edge {e} is not in cut {c}")
                rows.append((c, tuple(sorted(sub.items()))))
            tc = tuple(sorted(rows))
        return ChoiceFunction(tuple(sorted(mapping.items())), tc)

    def get(self, cut: tuple[int, ...]) -> int:
        for c, e in self.choices:
            if c == cut:
                return e
        raise InvalidChoice(f"no choice recorded for cut {cut}")


def all_choice_functions(g: Graph):
    """Iterate over every plain choice function of the graph's cuts."""
    cuts = g.cuts()
    for picks in product(*cuts):
        yield ChoiceFunction(tuple(zip(cuts, picks)))


def choice_cone(g: Graph, f: ChoiceFunction, r: int = 1) -> Cone:
    """{x >= 0 : the chosen edge is weighted-smallest in every cut}.

    For r = 1 the inequalities are x_f(c) <= x_e.  For r > 1 every recorded
    divisor tuple contributes lambda_argmin x_argmin <= lambda_e x_e.
    """
    check_r(r, allow_inf=False)
    coords = g.sorted_edge_ids()
    pos = {e: j for j, e in enumerate(coords)}
    n = len(coords)
    ineqs = [unit(n, j) for j in range(n)]
    if r == 1:
        for c, chosen in f.choices:
            for e in c:
                if e != chosen:
                    v = [0] * n
                    v[pos[e]] += 1
                    v[pos[chosen]] -= 1
                    ineqs.append(tuple(v))
    else:
        if f.tuple_choices is None:
            raise InvalidChoice("r > 1 choice cones need divisor-tuple argmin data")
        for c, rows in f.tuple_choices:
            for lam, h in rows:
                hj = c.index(h)
                for j, e in enumerate(c):
                    if e == h:
                        continue
                    v = [0] * n
                    v[pos[e]] += lam[j]
                    v[pos[h]] -= lam[hj]
                    ineqs.append(tuple(v))
    return Cone.from_inequalities(n, ineqs)


def _closure_of_choice(n_edges: int, pairs: Iterable[tuple[int, int]]) -> tuple[int, ...] | None:
    """Transitive closure as row bitmmasks; None when antisymmetry fails."""
    rows = [1 << i for i in range(n_edges)]
    for a, b in pairs:
        rows[a] |= 1 << b
    changed = True
    while changed:
        changed = False
        for i in range(n_edges):
            acc = rows[i]
            m = acc
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                acc |= rows[j]
            if acc != rows[i]:
                rows[i] = acc
                changed = True
    for i in range(n_edges):
        m = rows[i]
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            if j != i and rows[j] >> i & 1:
                return None
    return tuple(rows)


def choice_function_fan(g: Graph) -> Fan:
    """The r = 1 weakly rich fan out of full-dimensional choice cones.

    Choice functions are grouped by the transitive closure they generate:
    equal closures give equal cones, and a cone is full dimensional exactly
    when the closure is antisymmetric, so only distinct antisymmetric
    closures reach the double description engine.
    """
    g.require_connected()
    cuts = g.cuts()
    coords = g.sorted_edge_ids()
    pos = {e: j for j, e in enumerate(coords)}
    n = len(coords)
    if not cuts:
        return Fan(n, [Cone.from_inequalities(n, [unit(n, j) for j in range(n)])])
    seen: set[tuple[int, ...]] = set()
    cones = []
    for picks in product(*cuts):
        pairs = [
            (pos[chosen], pos[e])
            for c, chosen in zip(cuts, picks)
            for e in c
            if e != chosen
        ]
        closure = _closure_of_choice(n, pairs)
        if closure is None or closure in seen:
            continue
        seen.add(closure)
        ineqs = [unit(n, j) for j in range(n)]
        for a, b in {(a, b) for a, b in pairs}:
            v = [0] * n
            v[b] += 1
            v[a] -= 1
            ineqs.append(tuple(v))
        cone = Cone.from_inequalities(n, ineqs)
        assert cone.dim() == n, "antisymmetric closure must give a full cone"
        cones.append(cone)
    return Fan(n, cones)


def weakly_rich_fan(g: Graph, r: int) -> Fan:
    """The weakly rich subdivision of the orthant of edge lengths."""
    check_r(r, allow_inf=False)
    g.require_connected()
    if r == 1:
        return choice_function_fan(g)
    return newton_subdivision(richness_ideal(g, r))


# -- cut orders and choice monoids -------------------------------------------


@dataclass(frozen=True)
class CutOrder:
    """Per-component minima and the predecessor forest of a minimal order."""

    minima: tuple[int, ...]
    pred: tuple[tuple[int, int], ...]

    def to_obj(self) -> dict:
        return {
            "minima": list(self.minima),
            "pred": {str(e): p for e, p in self.pred},
        }


def cut_order_from_choice(g: Graph, f: ChoiceFunction) -> CutOrder:
    """E0 and the predecessor map of the order generated by a choice function.

    The generated preorder is minimal among cut-minimum orders exactly when
    its transitive closure is antisymmetric; a cyclic closure means the
    choice forces strictly more comparisons than necessary.
    """
    g.require_connected()
    cuts = g.cuts()
    if set(c for c, _ in f.choices) != set(cuts):
        raise InvalidChoice("choice function must be defined on exactly the cuts")
    coords = g.sorted_edge_ids()
    pos = {e: j for j, e in enumerate(coords)}
    n = len(coords)
    pairs = []
    for c, chosen in f.choices:
        if chosen not in c:
            raise InvalidChoice(f"chosen edge {chosen} is not in cut {c}")
        for e in c:
            if e != chosen:
                pairs.append((pos[chosen], pos[e]))
    closure = _closure_of_choice(n, pairs)
    if closure is None:
        raise NotMinimalOrder("choice generates a cyclic (non-minimal) preorder")
    minima = []
    pred: list[tuple[int, int]] = []
    for comp in g.blocks():
        comp_pos = [pos[e] for e in comp]
        mins = [
            j
            for j in comp_pos
            if not any(k != j and closure[k] >> j & 1 for k in comp_pos)
        ]
        assert len(mins) == 1, "minimal order must have a unique component minimum"
        minima.append(coords[mins[0]])
        for j in comp_pos:
            if j == mins[0]:
                continue
            below = [k for k in comp_pos if k != j and closure[k] >> j & 1]
            top = [k for k in below if all(closure[t] >> k & 1 for t in below)]
            assert len(top) == 1, "strict predecessors must have a unique maximum"
            pred.append((coords[j], coords[top[0]]))
    return CutOrder(tuple(sorted(minima)), tuple(sorted(pred)))


def choice_monoid(g: Graph, f: ChoiceFunction) -> SharpMonoid:
    """Monoid generated by N^E and the differences e - f(c) inside Z^E."""
    order = cut_order_from_choice(g, f)  # validates minimality
    coords = g.sorted_edge_ids()
    pos = {e: j for j, e in enumerate(coords)}
    n = len(coords)
    gens = [unit(n, j) for j in range(n)]
    for c, chosen in f.choices:
        for e in c:
            if e != chosen:
                v = [0] * n
                v[pos[e]] += 1
                v[pos[chosen]] -= 1
                gens.append(tuple(v))
    del order
    return SharpMonoid.from_rays(n, gens)


# -- reports ------------------------------------------------------------------


@dataclass(frozen=True)
class SmoothnessReport:
    """Unimodularity verdicts aligned with the fan's cone order."""

    verdicts: tuple[bool, ...]
    smooth: bool


def smoothness_report(fan: Fan) -> SmoothnessReport:
    verdicts = tuple(is_unimodular(c) for c in fan.cones)
    return SmoothnessReport(verdicts, all(verdicts))


def factors_through(fam: RealFamily, fan: Fan) -> bool:
    """Does the family's length map send its cone into one maximal cone?"""
    if fan.rank != len(fam.graph.edges):
        raise DimensionMismatch("fan rank must match the family's edge count")
    image = fam.image_cone()
    return any(c.contains_cone(image) for c in fan.cones)
