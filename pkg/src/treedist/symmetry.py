"""Ground-truth engine: canonical codes, automorphism enumeration, orbits.

Everything here is pure given immutable inputs, so different trees can be
processed in parallel without coordination.  fix_report computes orbits and
the exact automorphism count from canonical codes alone; enumerate_automorphisms
is a deliberately separate search path that lists explicit permutations, so
the two can be checked against each other.
"""

from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass
from itertools import count

from .errors import (
    BadParams,
    LimitExceeded,
    NotFoundWithinMax,
    PartialColoring,
    SearchBudgetExceeded,
)
from .tree_core import CenterKind, RootedView, Tree, center, root_at

UNCOLORED = -1

#: Default cap on explicitly enumerated automorphisms; the TREEDIST_BUDGET
#: environment variable overrides it.
DEFAULT_AUT_LIMIT = 10**6


def oracle_budget() -> int:
    raw = os.environ.get("TREEDIST_BUDGET")
    if raw is None:
        return DEFAULT_AUT_LIMIT
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_AUT_LIMIT


@dataclass(frozen=True)
class Coloring:
    """Vertex -> color map with colors in 0..num_colors-1; -1 marks uncolored."""

    num_colors: int
    colors: tuple[int, ...]

    def __post_init__(self):
        if self.num_colors < 1:
            raise BadParams("num_colors must be >= 1")
        for v, c in enumerate(self.colors):
            if c != UNCOLORED and not 0 <= c < self.num_colors:
                raise BadParams(f"vertex {v} has color {c}, not in 0..{self.num_colors - 1}")

    @property
    def is_total(self) -> bool:
        return UNCOLORED not in self.colors

    def to_json_dict(self) -> dict:
        return {"num_colors": self.num_colors, "colors": list(self.colors)}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Coloring":
        return cls(num_colors=int(data["num_colors"]), colors=tuple(int(c) for c in data["colors"]))


def canonical_codes(rv: RootedView, coloring: Coloring) -> list[bytes]:
    """Per-vertex canonical byte code of the colored subtree below each vertex.

    code(u) is built from u's own color and the bytewise-sorted codes of its
    children, so two vertices get equal codes exactly when their rooted
    colored subtrees are isomorphic.  Uncolored vertices participate with the
    sentinel color value num_colors.
    """
    codes: list[bytes] = [b""] * rv.tree.n
    sentinel = coloring.num_colors
    for u in reversed(rv.order):
        c = coloring.colors[u]
        if c == UNCOLORED:
            c = sentinel
        child_codes = sorted(codes[w] for w in rv.children[u])
        codes[u] = b"(" + c.to_bytes(4, "big") + b"".join(child_codes) + b")"
    return codes


def subtree_code(rv: RootedView, colors: list[int], num_colors: int, u: int) -> bytes:
    """Canonical code of u's subtree over a raw color array (partial allowed)."""
    post = rv.subtree(u)
    codes: dict[int, bytes] = {}
    for w in reversed(post):
        c = colors[w]
        if c == UNCOLORED:
            c = num_colors
        child_codes = sorted(codes[x] for x in rv.children[w])
        codes[w] = b"(" + c.to_bytes(4, "big") + b"".join(child_codes) + b")"
    return codes[u]


@dataclass(frozen=True)
class FixReport:
    """Orbit partition under color-preserving automorphisms.

    fixed[v] is True exactly when v's orbit has size 1; aut_count is the
    exact order of the color-preserving automorphism group.
    """

    orbit: tuple[int, ...]
    fixed: tuple[bool, ...]
    aut_count: int

    def fixed_set(self) -> set[int]:
        return {v for v, f in enumerate(self.fixed) if f}

    def unfixed_set(self) -> set[int]:
        return {v for v, f in enumerate(self.fixed) if not f}

    def to_json_dict(self) -> dict:
        return {
            "aut_count": self.aut_count,
            "orbit": list(self.orbit),
            "fixed": list(self.fixed),
        }


def _require_total(tree: Tree, coloring: Coloring) -> None:
    if len(coloring.colors) != tree.n:
        raise PartialColoring(f"coloring covers {len(coloring.colors)} of {tree.n} vertices")
    if not coloring.is_total:
        raise PartialColoring("coloring has uncolored vertices")


def fix_report(tree: Tree, coloring: Coloring) -> FixReport:
    """Orbits, fixed set and exact automorphism count for a total coloring.

    The tree is rooted at its center.  With an edge center the two halves may
    additionally be swapped when their colored canonical codes coincide; that
    swap merges the matched orbits and doubles the count.
    """
    _require_total(tree, coloring)
    loc = center(tree)
    rv = root_at(tree, loc)
    codes = canonical_codes(rv, coloring)

    aut = 1
    for u in range(tree.n):
        mult: dict[bytes, int] = {}
        for w in rv.children[u]:
            mult[codes[w]] = mult.get(codes[w], 0) + 1
        for m in mult.values():
            aut *= math.factorial(m)

    swap = loc.kind is CenterKind.EDGE and codes[rv.roots[0]] == codes[rv.roots[1]]
    if swap:
        aut *= 2

    orbit = [-1] * tree.n
    ids = count()
    if swap:
        shared = next(ids)
        orbit[rv.roots[0]] = shared
        orbit[rv.roots[1]] = shared
    else:
        for r in rv.roots:
            orbit[r] = next(ids)
    # depth order guarantees parents are labelled first; vertices merge when
    # their parents share an orbit and their codes coincide
    groups: dict[tuple[int, bytes], int] = {}
    for u in rv.order:
        if orbit[u] >= 0:
            continue
        key = (orbit[rv.parent[u]], codes[u])
        if key not in groups:
            groups[key] = next(ids)
        orbit[u] = groups[key]

    sizes: dict[int, int] = {}
    for o in orbit:
        sizes[o] = sizes.get(o, 0) + 1
    fixed = tuple(sizes[orbit[v]] == 1 for v in range(tree.n))
    return FixReport(orbit=tuple(orbit), fixed=fixed, aut_count=aut)


def enumerate_automorphisms(
    tree: Tree, coloring: Coloring, limit: int | None = None
) -> list[tuple[int, ...]]:
    """Explicit list of all color-preserving automorphisms as permutations.

    Independent of the canonical-code machinery: a backtracking search maps
    vertices in BFS order, and every produced permutation is re-verified to
    map edges to edges and preserve colors.  Raises LimitExceeded once more
    than `limit` permutations are found (default: the oracle budget).
    """
    _require_total(tree, coloring)
    if limit is None:
        limit = oracle_budget()
    n = tree.n
    cols = coloring.colors
    order: list[int] = []
    bfs_parent: list[int | None] = [None] * n
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    while queue:
        u = queue.popleft()
        order.append(u)
        for w in tree.adjacency[u]:
            if not seen[w]:
                seen[w] = True
                bfs_parent[w] = u
                queue.append(w)

    results: list[tuple[int, ...]] = []
    mapping = [-1] * n
    used = [False] * n

    def extend(i: int) -> None:
        if i == len(order):
            perm = tuple(mapping)
            for u in range(n):
                if cols[perm[u]] != cols[u]:
                    return
                for w in tree.adjacency[u]:
                    if perm[w] not in tree.adjacency[perm[u]]:
                        return
            results.append(perm)
            if len(results) > limit:
                raise LimitExceeded(f"more than {limit} automorphisms")
            return
        v = order[i]
        p = bfs_parent[v]
        if p is None:
            candidates = range(n)
        else:
            candidates = tree.adjacency[mapping[p]]
        dv, cv = tree.degree(v), cols[v]
        for w in candidates:
            if used[w] or tree.degree(w) != dv or cols[w] != cv:
                continue
            ok = True
            for x in tree.adjacency[v]:
                if mapping[x] >= 0 and mapping[x] not in tree.adjacency[w]:
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            used[w] = True
            extend(i + 1)
            mapping[v] = -1
            used[w] = False

    extend(0)
    return sorted(results)


def is_distinguishing(tree: Tree, coloring: Coloring) -> bool:
    """True iff only the identity preserves the coloring."""
    return fix_report(tree, coloring).aut_count == 1


def unfixed_vertices(tree: Tree, coloring: Coloring) -> set[int]:
    """Vertices moved by some color-preserving automorphism."""
    return fix_report(tree, coloring).unfixed_set()


def structural_codes(rv: RootedView) -> list[bytes]:
    """Per-vertex canonical code of the uncolored subtree shape below each vertex."""
    codes: list[bytes] = [b""] * rv.tree.n
    for u in reversed(rv.order):
        child_codes = sorted(codes[w] for w in rv.children[u])
        codes[u] = b"(" + b"".join(child_codes) + b")"
    return codes


def _distinguishing_class_count(rv: RootedView, root: int, d: int, cap: int) -> int:
    """Number of isomorphism classes of distinguishing d-colorings of the
    rooted subtree at `root`, capped at `cap` (a threshold-safe ceiling).

    A coloring of a rooted subtree is distinguishing when, within every
    isomorphism class of sibling subtrees, the colored versions hung below are
    pairwise non-isomorphic and each is itself distinguishing.  The count only
    ever feeds "are there at least m classes" questions with m <= cap-1, so
    capping keeps the integers small without changing any comparison.
    """
    struct = structural_codes(rv)
    memo: dict[bytes, int] = {}

    def classes(u: int) -> int:
        key = struct[u]
        hit = memo.get(key)
        if hit is not None:
            return hit
        mult: dict[bytes, int] = {}
        rep: dict[bytes, int] = {}
        for w in rv.children[u]:
            mult[struct[w]] = mult.get(struct[w], 0) + 1
            rep.setdefault(struct[w], w)
        total = d
        for code, m in mult.items():
            total *= math.comb(min(classes(rep[code]), cap), m)
            if total == 0:
                break
        total = min(total, cap)
        memo[key] = total
        return total

    return classes(root)


def distinguishing_number(tree: Tree, max_colors: int, size_guard: int = 24) -> int:
    """Smallest d <= max_colors admitting a distinguishing d-coloring.

    Decided exactly by counting distinguishing colored-subtree classes over
    sibling isomorphism classes, rooted at the center; an edge center needs
    two distinct colored halves when the halves are isomorphic as shapes.
    """
    if max_colors < 1:
        raise BadParams("max_colors must be >= 1")
    if tree.n > size_guard:
        raise SearchBudgetExceeded(f"n={tree.n} exceeds size guard {size_guard}")
    loc = center(tree)
    rv = root_at(tree, loc)
    cap = tree.n + 2
    for d in range(1, max_colors + 1):
        if loc.kind is CenterKind.VERTEX:
            ok = _distinguishing_class_count(rv, rv.roots[0], d, cap) >= 1
        else:
            a, b = rv.roots
            struct = structural_codes(rv)
            fa = _distinguishing_class_count(rv, a, d, cap)
            if struct[a] == struct[b]:
                ok = fa >= 2
            else:
                fb = _distinguishing_class_count(rv, b, d, cap)
                ok = fa >= 1 and fb >= 1
        if ok:
            return d
    raise NotFoundWithinMax(f"no distinguishing coloring with <= {max_colors} colors")
