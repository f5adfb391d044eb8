"""Coxeter systems and the Tits representation, with exact arithmetic.

A system carries its Coxeter matrix, the Gram form B(a_s, a_t) = -cos(pi/m_st)
(with -1 for the label "infinity"), and the simple roots.  Words are tuples of
generator indices.  Roots track their Gram image alongside their coordinates,
which makes a reflection an O(rank) operation.

The sign conventions follow the wall geometry of the Davis complex: stepping
from a chamber across a panel of type j moves away from the wall of a positive
root b exactly when <b, a_j> < 0, stays at the same distance when the pairing
vanishes, and moves closer when it is positive.
"""

from __future__ import annotations

import hashlib
import math
from fractions import Fraction

from .exactnum import field_init

INF = math.inf


class CoxeterError(ValueError):
    """Malformed Coxeter data or an operation applied out of its domain."""


class NotSphericalError(CoxeterError):
    """The operation needs a spherical (finite) standard subgroup."""


class SameWallError(CoxeterError):
    """Wall intersection asked for a root and itself (or its negative)."""


class OrderIndeterminateError(CoxeterError):
    """Order search hit its cap with no certificate of infinitude."""


def _lcm(a, b):
    return a * b // math.gcd(a, b)


class Root:
    """A vector in the root space, stored with its Gram image.

    coords[i] is the coefficient of the simple root a_i; gram_image[i] is
    B(v, a_i).  Both are exact field elements.
    """

    __slots__ = ("coords", "gram_image")

    def __init__(self, coords, gram_image):
        self.coords = coords
        self.gram_image = gram_image

    def pair_simple(self, i):
        return self.gram_image[i]

    def key(self):
        return tuple((x.num, x.den) for x in self.coords)

    def __eq__(self, other):
        return isinstance(other, Root) and self.coords == other.coords

    def __hash__(self):
        return hash(self.key())

    def is_negative(self):
        """True for a negative root (all coordinates <= 0, not all zero)."""
        for x in self.coords:
            s = x.sign()
            if s:
                return s < 0
        raise CoxeterError("zero vector is not a root")

    def __neg__(self):
        return Root(tuple(-x for x in self.coords),
                    tuple(-x for x in self.gram_image))


class GroupElement:
    """A group element as an exact matrix acting on the root space.

    rows[i][j] is the coefficient of a_i in the image of a_j, so columns are
    images of simple roots and matrices compose by ordinary multiplication.
    """

    __slots__ = ("system", "rows", "_word")

    def __init__(self, system, rows, word=None):
        self.system = system
        self.rows = rows
        self._word = word

    def key(self):
        return tuple(tuple((x.num, x.den) for x in row) for row in self.rows)

    def __eq__(self, other):
        return (isinstance(other, GroupElement) and self.system is other.system
                and self.rows == other.rows)

    def __hash__(self):
        return hash(self.key())

    def __mul__(self, other):
        sys_ = self.system
        n = sys_.rank
        zero = sys_.ctx.zero
        rows = []
        for i in range(n):
            arow = self.rows[i]
            out = []
            for j in range(n):
                acc = zero
                for k in range(n):
                    a = arow[k]
                    if not a.is_zero():
                        b = other.rows[k][j]
                        if not b.is_zero():
                            acc = acc + a * b
                out.append(acc)
            rows.append(tuple(out))
        return GroupElement(sys_, tuple(rows))

    def is_identity(self):
        return self == self.system.identity()

    def apply(self, root):
        n = self.system.rank
        coords = []
        for i in range(self.system.rank):
            acc = self.system.ctx.zero
            row = self.rows[i]
            for j in range(n):
                c = root.coords[j]
                if not c.is_zero() and not row[j].is_zero():
                    acc = acc + row[j] * c
            coords.append(acc)
        return self.system.root_from_coords(coords)

    def word(self):
        """A canonical reduced word for this element (computed on demand)."""
        if self._word is None:
            self._word = self.system.word_from_matrix(self)
        return self._word


class CoxeterSystem:
    """A validated Coxeter matrix over named generators, with Gram form."""

    def __init__(self, gens, labels):
        if not gens:
            raise CoxeterError("a Coxeter system needs at least one generator")
        if len(set(gens)) != len(gens):
            raise CoxeterError("duplicate generator names")
        self.gens = tuple(gens)
        self.rank = len(gens)
        self.index = {g: i for i, g in enumerate(self.gens)}
        n = self.rank
        matrix = [[2] * n for _ in range(n)]
        for i in range(n):
            matrix[i][i] = 1
        for (a, b), m in labels.items():
            i, j = self._pair_indices(a, b)
            if i == j:
                if m != 1:
                    raise CoxeterError("diagonal label for %r must be 1" % (a,))
                continue
            if m is not INF and (not isinstance(m, int) or m < 2):
                raise CoxeterError("label m(%s,%s)=%r: off-diagonal labels are "
                                   "integers >= 2 or infinity" % (a, b, m))
            matrix[i][j] = matrix[j][i] = m
        self.matrix = tuple(tuple(row) for row in matrix)

        N = 2
        for i in range(n):
            for j in range(i + 1, n):
                m = matrix[i][j]
                if m is not INF:
                    N = _lcm(N, m)
        self.ctx = field_init(N)

        ctx = self.ctx
        one = ctx.one
        minus_one = ctx.from_rational(-1)
        gram = [[None] * n for _ in range(n)]
        for i in range(n):
            gram[i][i] = one
            for j in range(i + 1, n):
                m = matrix[i][j]
                if m is INF:
                    v = minus_one
                elif m == 2:
                    v = ctx.zero
                else:
                    v = -(ctx.two_cos(1, m) * Fraction(1, 2))
                gram[i][j] = gram[j][i] = v
        self.gram = tuple(tuple(row) for row in gram)
        # doubled Gram (integer coefficients, denominator 1): used for exact
        # positive-definiteness so determinant work stays in Z[c]
        self.gram2 = tuple(tuple(x + x for x in row) for row in self.gram)

        self.simple_roots = tuple(
            Root(tuple(one if j == i else ctx.zero for j in range(n)),
                 tuple(gram[j][i] for j in range(n)))
            for i in range(n))
        self._identity = None
        self._reflection_mats = None
        self.cache = {}

    # -- basic queries -----------------------------------------------------------

    def _pair_indices(self, a, b):
        try:
            return self.index[a], self.index[b]
        except KeyError as exc:
            raise CoxeterError("unknown generator %r" % (exc.args[0],))

    def label(self, i, j):
        return self.matrix[i][j]

    def adjacent(self, i, j):
        """Spherical pair: distinct generators whose product has finite order."""
        return i != j and self.matrix[i][j] is not INF

    def noncommuting(self, i, j):
        return i != j and self.matrix[i][j] != 2

    def full_mask(self):
        return (1 << self.rank) - 1

    def mask_of(self, names):
        mask = 0
        for g in names:
            mask |= 1 << (g if isinstance(g, int) else self.index[g])
        return mask

    def names_of(self, mask):
        return tuple(self.gens[i] for i in bits(mask))

    def parse_word(self, letters):
        if isinstance(letters, str):
            letters = letters.split()
        return tuple(l if isinstance(l, int) else self.index[l] for l in letters)

    def word_names(self, word):
        return tuple(self.gens[i] for i in word)

    # -- roots and reflections -----------------------------------------------------

    def root_from_coords(self, coords):
        n = self.rank
        gram_image = []
        for i in range(n):
            acc = self.ctx.zero
            row = self.gram[i]
            for j in range(n):
                c = coords[j]
                if not c.is_zero():
                    g = row[j]
                    if not g.is_zero():
                        acc = acc + g * c
            gram_image.append(acc)
        return Root(tuple(coords), tuple(gram_image))

    def simple_root(self, i):
        return self.simple_roots[i]

    def reflect(self, root, s):
        """Image of a root under the simple reflection s."""
        c = root.gram_image[s]
        if c.is_zero():
            return root
        two_c = c + c
        alpha = self.simple_roots[s]
        coords = tuple(x - two_c * y for x, y in zip(root.coords, alpha.coords))
        gram_image = tuple(x - two_c * y
                           for x, y in zip(root.gram_image, alpha.gram_image))
        return Root(coords, gram_image)

    def act(self, word, root):
        """Apply the group element of `word` to a root: letters act rightmost first."""
        for s in reversed(word):
            root = self.reflect(root, s)
        return root

    def pairing(self, u, v):
        acc = self.ctx.zero
        for i in range(self.rank):
            c = u.coords[i]
            if not c.is_zero():
                g = v.gram_image[i]
                if not g.is_zero():
                    acc = acc + c * g
        return acc

    # -- matrices -----------------------------------------------------------------

    def identity(self):
        if self._identity is None:
            n = self.rank
            one, zero = self.ctx.one, self.ctx.zero
            rows = tuple(tuple(one if i == j else zero for j in range(n))
                         for i in range(n))
            self._identity = GroupElement(self, rows, word=())
        return self._identity

    def reflection_matrix(self, s):
        if self._reflection_mats is None:
            self._reflection_mats = [None] * self.rank
        if self._reflection_mats[s] is None:
            n = self.rank
            cols = [self.reflect(self.simple_roots[j], s) for j in range(n)]
            rows = tuple(tuple(cols[j].coords[i] for j in range(n))
                         for i in range(n))
            self._reflection_mats[s] = GroupElement(self, rows, word=(s,))
        return self._reflection_mats[s]

    def element(self, word):
        word = self.parse_word(word)
        mat = self.identity()
        for s in word:
            mat = mat * self.reflection_matrix(s)
        return GroupElement(self, mat.rows, word=word)

    def word_from_matrix(self, elem):
        """Recover the canonical reduced word of a matrix element.

        Right descents are visible directly: s is one iff column s (the image
        of a_s) is a negative root.  Peeling them yields a reduced word, which
        is then normalized.
        """
        out = []
        cur = elem
        guard = 0
        while not cur.is_identity():
            for s in range(self.rank):
                col = Root(tuple(cur.rows[i][s] for i in range(self.rank)), None)
                if col.is_negative():
                    out.append(s)
                    cur = cur * self.reflection_matrix(s)
                    break
            else:
                raise CoxeterError("matrix is not in the image of the group")
            guard += 1
            if guard > 100000:
                raise CoxeterError("descent peeling did not terminate")
        out.reverse()
        return self.normal_form(tuple(out))

    # -- words, lengths, normal forms ------------------------------------------------

    def reduce_word(self, word):
        """A reduced word for the same element (exchange-condition deletion)."""
        word = self.parse_word(word)
        red = []
        for s in word:
            betas = [self.simple_roots[s]]
            for t in reversed(red):
                betas.append(self.reflect(betas[-1], t))
            if red and betas[-1].is_negative():
                # delete the unique letter where the tracked root turns simple
                for pos in range(len(red) - 1, -1, -1):
                    beta_after = betas[len(red) - 1 - pos]
                    if beta_after == self.simple_roots[red[pos]]:
                        del red[pos]
                        break
                else:
                    raise AssertionError("exchange condition failed")
            else:
                red.append(s)
        return tuple(red)

    def length(self, word):
        return len(self.reduce_word(word))

    def is_reduced(self, word):
        word = self.parse_word(word)
        return len(self.reduce_word(word)) == len(word)

    def normal_form(self, word):
        """Lexicographically least reduced word: peel smallest left descents."""
        word = self.reduce_word(word)
        cache = self.cache.setdefault("normal_form", {})
        got = cache.get(word)
        if got is not None:
            return got
        out = []
        cur = list(word)
        while cur:
            for s in range(self.rank):
                root = self.simple_roots[s]
                for t in cur:
                    root = self.reflect(root, t)
                if root.is_negative():
                    out.append(s)
                    cur = list(self.reduce_word([s] + cur))
                    break
            else:
                raise AssertionError("nonempty reduced word without descent")
        nf = tuple(out)
        cache[word] = nf
        cache[nf] = nf
        return nf

    def longest_element(self, subset):
        """Reduced word of the longest element of the standard subgroup W_J."""
        from .diagram import is_spherical  # late import; diagram builds on us

        mask = subset if isinstance(subset, int) else self.mask_of(subset)
        if not is_spherical(self, mask):
            raise NotSphericalError("longest element needs a spherical subset")
        word = []
        while True:
            for s in bits(mask):
                root = self.simple_roots[s]
                for t in reversed(word):
                    root = self.reflect(root, t)
                if not root.is_negative():
                    word.append(s)
                    break
            else:
                return tuple(word)

    # -- walls ------------------------------------------------------------------------

    def walls_intersect(self, u, v):
        """Whether the walls of two unit roots cross: |B(u, v)| < 1, exactly."""
        if u == v or u == -v:
            raise SameWallError("roots define the same wall")
        p = self.pairing(u, v)
        return p.cmp_rational(-1) > 0 and p.cmp_rational(1) < 0

    def wall_distance(self, word, s):
        """Gallery distance from the chamber word.c0 to the wall of s.

        Folds the one-step increment along the word: the tracked root is the
        wall of s transported by the inverse of the growing prefix, and each
        letter moves the chamber away (+1), along (0), or toward (-1) the wall
        according to the sign of the pairing; crossing the wall itself keeps
        the distance at zero.
        """
        word = self.parse_word(word)
        beta = self.simple_roots[s]
        dist = 0
        for j in word:
            if beta == self.simple_roots[j]:
                continue  # the gallery crosses the tracked wall; distance stays
            p = beta.pair_simple(j)
            sgn = p.sign()
            if sgn < 0:
                dist += 1
            elif sgn > 0:
                dist -= 1
            beta = self.reflect(beta, j)
            if dist < 0:
                raise AssertionError("wall distance fold went negative")
        return dist

    def element_order(self, word, cap=None):
        """Order of the element, or INF with a certificate, within a cap.

        Certificates of infinite order: a unipotent power other than the
        identity, or a power whose trace exceeds the rank in absolute value
        (finite order forces all eigenvalues onto the unit circle).  If the
        cap is reached without either, raises OrderIndeterminateError.
        """
        elem = word if isinstance(word, GroupElement) else self.element(word)
        if cap is None:
            cap = self.default_order_cap()
        ident = self.identity()
        if elem == ident:
            return 1
        power = elem
        n = self.rank
        for k in range(1, cap + 1):
            if power == ident:
                return k
            tr = self.ctx.zero
            for i in range(n):
                tr = tr + power.rows[i][i]
            c_hi = tr.cmp_rational(n)
            if c_hi > 0 or tr.cmp_rational(-n) < 0:
                return INF
            # trace == rank for a finite-order element forces the identity,
            # so equality certifies a nontrivial unipotent part
            if c_hi == 0 and k <= 256 and self._is_unipotent(power):
                return INF
            power = power * elem
        raise OrderIndeterminateError(
            "order exceeds cap %d with no certificate of infinitude" % cap)

    def _is_unipotent(self, elem):
        n = self.rank
        ident = self.identity()
        diff_rows = tuple(tuple(a - b for a, b in zip(r1, r2))
                          for r1, r2 in zip(elem.rows, ident.rows))
        diff = GroupElement(self, diff_rows)
        power = diff
        for _ in range(n - 1):
            power = power * diff
        return all(x.is_zero() for row in power.rows for x in row)

    def default_order_cap(self):
        """Largest order of a maximal spherical standard subgroup (capped)."""
        from .diagram import maximal_spherical_subsets, group_order

        got = self.cache.get("order_cap")
        if got is None:
            got = 2
            for mask in maximal_spherical_subsets(self, self.full_mask()):
                got = max(got, group_order(self, mask))
            got = min(got, 10 ** 6)
            self.cache["order_cap"] = got
        return got

    def reflection_product_order(self, u, v):
        """Exact order of the product of the reflections in roots u and v."""
        if u == v or u == -v:
            return 1
        p = self.pairing(u, v)
        if p.cmp_rational(-1) <= 0 or p.cmp_rational(1) >= 0:
            return INF  # parallel walls generate an infinite dihedral group
        # finite dihedral: iterate the rotation on the pair of roots
        a, b = u, v
        for k in range(2, 10 ** 6):
            # reflect u in v repeatedly: rotation r = r_u r_v has order k iff
            # applying it k times fixes both roots
            a = self._reflect_in_root(self._reflect_in_root(a, u), v)
            b = self._reflect_in_root(self._reflect_in_root(b, u), v)
            if a == u and b == v:
                return k
        raise AssertionError("finite dihedral order search overran")

    def _reflect_in_root(self, x, mirror):
        c = self.pairing(x, mirror)
        two_c = c + c
        coords = tuple(a - two_c * b for a, b in zip(x.coords, mirror.coords))
        return self.root_from_coords(coords)

    # -- canonical text and digest ---------------------------------------------------

    def canonical_text(self):
        """Canonical description: gen order as given, label lines sorted."""
        lines = ["cox 1", "gen " + " ".join(self.gens)]
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                m = self.matrix[i][j]
                if m != 2:
                    lab = "inf" if m is INF else str(m)
                    lines.append("m %s %s %s" % (self.gens[i], self.gens[j], lab))
        return "\n".join(lines) + "\n"

    def digest(self):
        return hashlib.sha256(self.canonical_text().encode("utf-8")).hexdigest()

    def __repr__(self):
        return "CoxeterSystem(%s)" % (", ".join(self.gens),)


def bits(mask):
    """Indices of set bits, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask):
    return bin(mask).count("1")


def build_system(gens, labels=None):
    """Build a validated system from generator names and off-diagonal labels.

    `labels` maps unordered name pairs to an integer >= 2 or INF; omitted
    pairs commute.  Conflicting duplicate entries are rejected.
    """
    merged = {}
    for (a, b), m in (labels or {}).items():
        key = (a, b) if a <= b else (b, a)
        if key in merged and merged[key] != m:
            raise CoxeterError("conflicting labels for pair %r: %r vs %r"
                               % (key, merged[key], m))
        merged[key] = m
    return CoxeterSystem(tuple(gens), merged)
