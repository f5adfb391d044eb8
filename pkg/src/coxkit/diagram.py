"""Diagram combinatorics over generator subsets (bitmask encoded).

Adjacency means a spherical pair (finite label, including commuting pairs);
the noncommuting graph (labels >= 3) governs irreducibility.  Sphericity is
decided two independent ways: exact positive definiteness of the Gram form
(leading principal minors over Z[c]) and the classification of finite types;
the two verdicts are cross-checked in the test suite.

Also here: twist rigidity and elementary twists, pseudo-transpositions and
elementary reductions of the generating set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .coxgroup import (
    INF,
    CoxeterError,
    NotSphericalError,
    OrderIndeterminateError,
    bits,
    popcount,
)


# ---------------------------------------------------------------------------
# subset queries
# ---------------------------------------------------------------------------

def components(system, mask, noncommuting=False):
    """Connected components of a subset, ascending by least element.

    Edges are adjacency (finite label) by default, or labels >= 3 when
    `noncommuting` is set (the graph that detects irreducibility).
    """
    edge = system.noncommuting if noncommuting else system.adjacent
    remaining = mask
    out = []
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = [seed.bit_length() - 1]
        remaining &= ~seed
        while frontier:
            i = frontier.pop()
            for j in bits(remaining):
                if edge(i, j):
                    comp |= 1 << j
                    remaining &= ~(1 << j)
                    frontier.append(j)
        out.append(comp)
    return out


def perp(system, mask):
    """Generators outside the subset commuting with all of it."""
    out = 0
    for j in range(system.rank):
        if not (mask >> j) & 1:
            if all(system.matrix[i][j] == 2 for i in bits(mask)):
                out |= 1 << j
    return out


def is_irreducible(system, mask):
    """No splitting as K u K^perp: one noncommuting component (empty set: no)."""
    return mask != 0 and len(components(system, mask, noncommuting=True)) == 1


def is_2spherical(system, mask):
    idx = bits(mask)
    return all(system.matrix[i][j] is not INF
               for a, i in enumerate(idx) for j in idx[a + 1:])


def is_tree_2spherical(system, mask):
    """2-spherical with acyclic noncommuting graph."""
    if not is_2spherical(system, mask):
        return False
    idx = bits(mask)
    edges = sum(1 for a, i in enumerate(idx) for j in idx[a + 1:]
                if system.noncommuting(i, j))
    return edges == len(idx) - len(components(system, mask, noncommuting=True))


# ---------------------------------------------------------------------------
# sphericity, route 1: exact positive definiteness
# ---------------------------------------------------------------------------

def _principal_minor_sign(system, mask):
    """Sign of det of the doubled Gram form restricted to the subset."""
    cache = system.cache.setdefault("minor_sign", {})
    got = cache.get(mask)
    if got is None:
        idx = bits(mask)
        k = len(idx)
        gram2 = system.gram2
        # determinant by expansion along the last row, memoized on column sets
        memo = {0: system.ctx.one}

        def det(r, colmask):
            got = memo.get((r, colmask))
            if got is not None:
                return got
            row = gram2[idx[r - 1]]
            acc = system.ctx.zero
            sign_flip = False
            rest = colmask
            pos = 0
            for j in bits(colmask):
                entry = row[idx[j]]
                if not entry.is_zero():
                    sub = det(r - 1, colmask & ~(1 << j)) if r > 1 else system.ctx.one
                    term = entry * sub
                    acc = acc + term if (r - 1 + pos) % 2 == 0 else acc - term
                pos += 1
            memo[(r, colmask)] = acc
            return acc

        memo[(0, 0)] = system.ctx.one
        value = det(k, (1 << k) - 1)
        got = value.sign()
        cache[mask] = got
    return got


def is_spherical(system, mask):
    """Finite W_J, by positive definiteness of the Gram submatrix (exact)."""
    if mask == 0:
        return True
    cache = system.cache.setdefault("spherical", {})
    got = cache.get(mask)
    if got is None:
        got = True
        prefix = 0
        for i in bits(mask):
            prefix |= 1 << i
            if _principal_minor_sign(system, prefix) <= 0:
                got = False
                break
        cache[mask] = got
    return got


# ---------------------------------------------------------------------------
# sphericity, route 2: classification of finite types
# ---------------------------------------------------------------------------

_EXCEPTIONAL_ORDERS = {
    ("E", 6): 51840,
    ("E", 7): 2903040,
    ("E", 8): 696729600,
    ("F", 4): 1152,
    ("H", 3): 120,
    ("H", 4): 14400,
}


def _classify_component(system, comp):
    """Type of one irreducible diagram component, or None if not finite.

    Returns (letter, rank) or ("I2", label) for a rank-two dihedral type.
    """
    idx = bits(comp)
    n = len(idx)
    if n == 1:
        return ("A", 1)
    labels = {}
    degree = {i: 0 for i in idx}
    for a, i in enumerate(idx):
        for j in idx[a + 1:]:
            m = system.matrix[i][j]
            if m >= 3:
                if m is INF:
                    return None
                labels[(i, j)] = m
                degree[i] += 1
                degree[j] += 1
    if len(labels) != n - 1:
        return None  # a cycle: never finite
    if n == 2:
        m = next(iter(labels.values()))
        if m == 3:
            return ("A", 2)
        if m == 4:
            return ("B", 2)
        return ("I2", m)
    branch = [i for i in idx if degree[i] >= 3]
    if not branch:
        # a path: read off the label sequence end to end
        ends = [i for i in idx if degree[i] == 1]
        start = min(ends)
        seq = [start]
        while len(seq) < n:
            for j in idx:
                if j not in seq and system.noncommuting(seq[-1], j):
                    seq.append(j)
                    break
        edge_labels = [system.matrix[seq[a]][seq[a + 1]] for a in range(n - 1)]
        big = [(a, m) for a, m in enumerate(edge_labels) if m >= 4]
        if not big:
            return ("A", n)
        if len(big) > 1:
            return None
        pos, m = big[0]
        at_end = pos in (0, n - 2)
        if m == 4:
            if at_end:
                return ("B", n)
            if n == 4 and pos == 1:
                return ("F", 4)
            return None
        if m == 5 and at_end and n in (3, 4):
            return ("H", n)
        return None
    if len(branch) > 1 or degree[branch[0]] > 3 or any(m != 3 for m in labels.values()):
        return None
    # single trivalent node, all labels 3: D or E by arm lengths
    center = branch[0]
    arms = []
    for j in idx:
        if system.noncommuting(center, j):
            length = 1
            prev, cur = center, j
            while True:
                nxt = [k for k in idx
                       if k not in (prev, cur) and system.noncommuting(cur, k)]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", n)
    if arms == [1, 2, 2]:
        return ("E", 6)
    if arms == [1, 2, 3]:
        return ("E", 7)
    if arms == [1, 2, 4]:
        return ("E", 8)
    return None


def classify_type(system, mask):
    """Multiset of irreducible finite types, or NotSphericalError."""
    if mask == 0:
        return []
    out = []
    for comp in components(system, mask, noncommuting=True):
        t = _classify_component(system, comp)
        if t is None:
            raise NotSphericalError("subset %s is not spherical"
                                    % (system.names_of(mask),))
        out.append(t)
    return sorted(out, key=lambda t: (t[0], t[1]))


def is_spherical_by_table(system, mask):
    try:
        classify_type(system, mask)
        return True
    except NotSphericalError:
        return False


def _type_order(t):
    letter, n = t
    if letter == "A":
        return math.factorial(n + 1)
    if letter == "B":
        return (2 ** n) * math.factorial(n)
    if letter == "D":
        return (2 ** (n - 1)) * math.factorial(n)
    if letter == "I2":
        return 2 * n
    return _EXCEPTIONAL_ORDERS[(letter, n)]


def group_order(system, mask):
    """Order of the finite standard subgroup W_J, from the type table."""
    out = 1
    for t in classify_type(system, mask):
        out *= _type_order(t)
    return out


def spherical_subsets(system, within=None):
    """All spherical subsets of `within` (default: all of S), ascending."""
    base = system.full_mask() if within is None else within
    idx = bits(base)
    out = [0]
    for i in idx:
        out.extend(m | (1 << i) for m in out
                   if is_spherical(system, m | (1 << i)))
    return sorted(set(out))


def irreducible_spherical_subsets(system, within=None):
    return [m for m in spherical_subsets(system, within)
            if m and is_irreducible(system, m)]


def maximal_spherical_subsets(system, within):
    """Spherical subsets of `within` maximal under inclusion."""
    sph = [m for m in spherical_subsets(system, within) if m]
    return [m for m in sph
            if not any(m != o and m & o == m for o in sph)]


# ---------------------------------------------------------------------------
# twist rigidity and elementary twists
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TwistDatum:
    """An elementary twist: conjugate everything outside A by w_J."""

    J: int
    A: int
    B: int

    def validate(self, system):
        if not (is_irreducible(system, self.J) and is_spherical(system, self.J)):
            raise CoxeterError("twist subset must be irreducible spherical")
        rest = system.full_mask() & ~(self.J | perp(system, self.J))
        if self.A == 0 or self.B == 0 or (self.A | self.B) != rest or (self.A & self.B):
            raise CoxeterError("twist sides must partition the complement")
        for a in bits(self.A):
            for b in bits(self.B):
                if system.adjacent(a, b):
                    raise CoxeterError("twist sides must not be adjacent")


def weakly_separates(system, J, within=None):
    """J u J^perp disconnects the rest (inside `within` when given)."""
    ambient = system.full_mask() if within is None else within
    rest = ambient & ~(J | perp(system, J))
    return len(components(system, rest)) >= 2


def twist_rigid(system, within=None):
    """(verdict, witness): no irreducible spherical subset weakly separates.

    The witness on failure is a TwistDatum with A the component of the least
    remaining generator and B the rest.
    """
    ambient = system.full_mask() if within is None else within
    cache = system.cache.setdefault("twist_rigid", {})
    got = cache.get(ambient)
    if got is None:
        got = (True, None)
        for J in sorted(irreducible_spherical_subsets(system, ambient),
                        key=lambda m: (popcount(m), m)):
            rest = ambient & ~(J | perp(system, J))
            comps = components(system, rest)
            if len(comps) >= 2:
                got = (False, TwistDatum(J=J, A=comps[0], B=rest & ~comps[0]))
                break
        cache[ambient] = got
    return got


def enumerate_twists(system):
    """All twist data (J, A, B) with A a single component of the complement."""
    out = []
    for J in sorted(irreducible_spherical_subsets(system),
                    key=lambda m: (popcount(m), m)):
        rest = system.full_mask() & ~(J | perp(system, J))
        comps = components(system, rest)
        if len(comps) >= 2:
            for comp in comps:
                out.append(TwistDatum(J=J, A=comp, B=rest & ~comp))
    return out


@dataclass(frozen=True)
class GenSetResult:
    """A new Coxeter generating set: words over S, with its Coxeter matrix."""

    names: tuple
    words: tuple          # one word (tuple of indices into S) per new generator
    matrix: tuple         # labels, INF allowed
    system: object        # CoxeterSystem over `names` with `matrix`


def _matrix_from_reflections(system, roots):
    """Coxeter matrix of a set of reflections via exact pairwise wall data."""
    n = len(roots)
    matrix = [[1] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            m = system.reflection_product_order(roots[i], roots[j])
            if m == 1:
                raise CoxeterError("two proposed generators share a wall")
            matrix[i][j] = matrix[j][i] = m
    return matrix


def _normalize_root(root):
    return -root if root.is_negative() else root


def apply_twist(system, td):
    """The twisted generating set tau(S) and its Coxeter matrix.

    tau fixes A pointwise and conjugates everything else by the longest
    element of W_J.  Labels of the new matrix are computed semantically as
    element orders (reflection pairs decide infinity by wall parallelism).
    """
    from .coxgroup import build_system

    td.validate(system)
    w_j = system.longest_element(td.J)
    words = []
    roots = []
    for s in range(system.rank):
        if (td.A >> s) & 1:
            words.append((s,))
            roots.append(system.simple_root(s))
        else:
            words.append(system.normal_form(w_j + (s,) + w_j))
            roots.append(_normalize_root(system.act(w_j, system.simple_root(s))))
    matrix = _matrix_from_reflections(system, roots)
    labels = {}
    for i in range(system.rank):
        for j in range(i + 1, system.rank):
            labels[(system.gens[i], system.gens[j])] = matrix[i][j]
    twisted = build_system(system.gens, labels)
    return GenSetResult(names=system.gens, words=tuple(words),
                        matrix=tuple(tuple(row) for row in matrix),
                        system=twisted)


# ---------------------------------------------------------------------------
# pseudo-transpositions and elementary reductions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionDatum:
    """A pseudo-transposition tau with its subset J of type C_k or I2(2k)."""

    tau: int
    J: int
    kind: str             # "C" or "I2"
    k: int                # odd
    a: int                # the unique element of J not commuting with tau
    rho_word: tuple       # longest element of W_J
    tau_prime_word: tuple  # tau a tau


def pseudo_transpositions(system):
    """All (tau, J) satisfying the replacement conditions, canonical order.

    J must be irreducible spherical of type C_k (k odd, tau the end of the
    label-4 edge) or I2(2k) (k odd >= 3, both elements eligible), and every
    generator outside J is either not adjacent to tau or commutes with J.
    """
    out = []
    for J in sorted(irreducible_spherical_subsets(system),
                    key=lambda m: (popcount(m), m)):
        comp = _classify_component(system, J)
        if comp is None:
            continue
        letter, n = comp
        taus = []
        if letter == "B" and n >= 3 and n % 2 == 1:
            kind, k = "C", n
            for t in bits(J):
                partners = [u for u in bits(J) if system.noncommuting(t, u)]
                if len(partners) == 1 and system.matrix[t][partners[0]] == 4:
                    taus.append((t, partners[0]))
        elif letter == "I2" and n % 4 == 2 and n >= 6:
            kind, k = "I2", n // 2
            i, j = bits(J)
            taus = [(i, j), (j, i)]
        else:
            continue
        jp = perp(system, J)
        for tau, a in taus:
            outside_ok = all((not system.adjacent(s, tau)) or ((jp >> s) & 1)
                             for s in bits(system.full_mask() & ~J))
            if outside_ok:
                out.append(ReductionDatum(
                    tau=tau, J=J, kind=kind, k=k, a=a,
                    rho_word=system.longest_element(J),
                    tau_prime_word=(tau, a, tau)))
    return out


def is_reduced_genset(system):
    return not pseudo_transpositions(system)


def _fresh_name(base, taken):
    name = base
    while name in taken:
        name += "_"
    return name


def elementary_reduction(system, rd):
    """Replace tau by tau' = tau a tau and rho = w_J in the generating set.

    Returns the new generating set as words over S together with its Coxeter
    matrix, computed entrywise as exact element orders.  All new generators
    are checked to be involutions.
    """
    from .coxgroup import build_system

    keep = [s for s in range(system.rank) if s != rd.tau]
    names = [system.gens[s] for s in keep]
    words = [(s,) for s in keep]
    reflection_roots = [system.simple_root(s) for s in keep]

    tau_prime = system.normal_form(rd.tau_prime_word)
    names.append(_fresh_name(system.gens[rd.tau] + "_" + system.gens[rd.a]
                             + "_" + system.gens[rd.tau], set(names)))
    words.append(tau_prime)
    reflection_roots.append(_normalize_root(
        system.act((rd.tau,), system.simple_root(rd.a))))

    rho = system.normal_form(rd.rho_word)
    names.append(_fresh_name("rho", set(names)))
    words.append(rho)

    n = len(words)
    matrix = [[1] * n for _ in range(n)]
    rho_elem = system.element(rho)
    if not (rho_elem * rho_elem).is_identity():
        raise CoxeterError("longest element of the reduction subset is not an involution")
    for i in range(n - 1):
        for j in range(i + 1, n - 1):
            m = system.reflection_product_order(reflection_roots[i],
                                                reflection_roots[j])
            if m == 1:
                raise CoxeterError("reduced generators share a wall")
            matrix[i][j] = matrix[j][i] = m
    for i in range(n - 1):
        prod = system.element(words[i]) * rho_elem
        try:
            m = system.element_order(prod)
        except OrderIndeterminateError:
            raise
        matrix[i][n - 1] = matrix[n - 1][i] = m

    labels = {}
    for i in range(n):
        for j in range(i + 1, n):
            labels[(names[i], names[j])] = matrix[i][j]
    reduced = build_system(tuple(names), labels)
    for w in words:
        e = system.element(w)
        if not (e * e).is_identity():
            raise CoxeterError("reduced generator is not an involution")
    return GenSetResult(names=tuple(names), words=tuple(words),
                        matrix=tuple(tuple(row) for row in matrix),
                        system=reduced)
