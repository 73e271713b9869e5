"""Finite partial multiplication tables with identity and inverses.

The central object is :class:`Pree`: a finite carrier set, a total
involution ``inv``, a distinguished identity, and a partial product.
Whenever a product ``a*b = c`` is defined, the five companion products
obtained by reading the triangle ``a, b, c`` from its other corners are
required to be defined and consistent, and the restricted associative
law must hold: if ``a*b`` and ``b*c`` are both defined, then ``(a*b)*c``
is defined exactly when ``a*(b*c)`` is, with equal values.

The module also decides the short-cycle axioms used by everything
downstream: for every cycle ``a_1 .. a_n`` (n = 4 or 5) whose quotients
``b_i = inv(a_i) * a_{i+1}`` are all defined, at least one product
``b_i * b_{i+1}`` must be defined as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

UNDEF = -1


class PreeError(Exception):
    """Malformed pree input or misuse of a pree operation."""


class PresentationError(PreeError):
    """A presentation forces inconsistent table entries."""


@dataclass(frozen=True)
class Pree:
    """Immutable partial multiplication table over dense integer ids.

    ``names[i]`` is the display token of element ``i``; ``identity`` is the
    id of the identity element; ``inv`` is a total involution given as a
    tuple; ``table[a][b]`` is the product id or ``UNDEF``.
    """

    names: tuple[str, ...]
    identity: int
    inv: tuple[int, ...]
    table: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.names)

    def product(self, a: int, b: int) -> Optional[int]:
        """Table lookup: the id of ``a*b``, or None when undefined."""
        c = self.table[a][b]
        return None if c == UNDEF else c

    def defined(self, a: int, b: int) -> bool:
        return self.table[a][b] != UNDEF

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def name(self, a: int) -> str:
        return self.names[a]

    def id_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise PreeError("unknown element %r" % name) from None

    def elements(self) -> range:
        return range(len(self.names))

    def nonidentity(self) -> list[int]:
        return [a for a in self.elements() if a != self.identity]

    def defined_pairs(self) -> Iterator[tuple[int, int, int]]:
        """Yield every (a, b, c) with a*b = c defined, in id order."""
        for a in self.elements():
            row = self.table[a]
            for b in self.elements():
                if row[b] != UNDEF:
                    yield a, b, row[b]


@dataclass
class VerificationReport:
    """Outcome of a checker: problems fail it, notes are informational."""

    name: str
    problems: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def problem(self, msg: str) -> None:
        self.problems.append(msg)

    def note(self, msg: str) -> None:
        self.notes.append(msg)

    def render(self) -> str:
        lines = ["%s: %s" % (self.name, "pass" if self.ok else "FAIL")]
        for p in self.problems:
            lines.append("  problem: " + p)
        for n in self.notes:
            lines.append("  note: " + n)
        return "\n".join(lines)


@dataclass(frozen=True)
class AxiomWitness:
    """A failing short cycle: no consecutive quotient product is defined."""

    cycle: tuple[int, ...]
    quotients: tuple[int, ...]

    def render(self, p: Pree) -> str:
        cyc = " ".join(p.name(a) for a in self.cycle)
        quo = " ".join(p.name(b) for b in self.quotients)
        return "cycle [%s] quotients [%s]" % (cyc, quo)


# The six readings of one product triangle a*b = c.  Given (a, b, c) the
# companion entries are returned as further (x, y, z) triples meaning
# x*y = z.
def closure_products(p_inv: Sequence[int], a: int, b: int, c: int) -> list[tuple[int, int, int]]:
    ia, ib, ic = p_inv[a], p_inv[b], p_inv[c]
    return [
        (ia, c, b),
        (c, ib, a),
        (b, ic, ia),
        (ic, a, ib),
        (ib, ia, ic),
    ]


def load_pree(text: str) -> Pree:
    """Parse the line-oriented pree file format.

    Grammar (one directive per line, '#' starts a comment):

        elements: <name> <name> ...
        identity: <name>
        inverse: <name> <name>
        product: <a> <b> <c>      # meaning a*b = c

    The first ``elements:`` line must contain the identity.  Identity and
    inverse products are filled in automatically, and declared products
    are completed under the six-way triangle closure.  Conflicting
    *declared* products are a load error; conflicts that only appear
    during closure completion are left for validate_pree to report.
    """
    names: list[str] = []
    seen: dict[str, int] = {}
    first_elements_line: Optional[list[str]] = None
    identity_name: Optional[str] = None
    inverse_decls: list[tuple[int, str, str]] = []
    product_decls: list[tuple[int, str, str, str]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise PreeError("line %d: expected 'directive: args'" % lineno)
        head, rest = line.split(":", 1)
        head = head.strip()
        args = rest.split()
        if head == "elements":
            if not args:
                raise PreeError("line %d: empty elements line" % lineno)
            for nm in args:
                if nm in seen:
                    raise PreeError("line %d: duplicate element %r" % (lineno, nm))
                seen[nm] = len(names)
                names.append(nm)
            if first_elements_line is None:
                first_elements_line = args
        elif head == "identity":
            if len(args) != 1:
                raise PreeError("line %d: identity wants one name" % lineno)
            if identity_name is not None:
                raise PreeError("line %d: identity declared twice" % lineno)
            identity_name = args[0]
        elif head == "inverse":
            if len(args) != 2:
                raise PreeError("line %d: inverse wants two names" % lineno)
            inverse_decls.append((lineno, args[0], args[1]))
        elif head == "product":
            if len(args) != 3:
                raise PreeError("line %d: product wants three names" % lineno)
            product_decls.append((lineno, args[0], args[1], args[2]))
        else:
            raise PreeError("line %d: unknown directive %r" % (lineno, head))

    if not names:
        raise PreeError("no elements declared")
    if identity_name is None:
        raise PreeError("missing identity line")
    if identity_name not in seen:
        raise PreeError("identity %r is not a declared element" % identity_name)
    if first_elements_line is None or identity_name not in first_elements_line:
        raise PreeError("identity %r must appear in the first elements line" % identity_name)

    def eid(lineno: int, nm: str) -> int:
        if nm not in seen:
            raise PreeError("line %d: unknown element %r" % (lineno, nm))
        return seen[nm]

    n = len(names)
    one = seen[identity_name]

    inv = list(range(n))
    inv_fixed = [False] * n
    inv[one] = one
    inv_fixed[one] = True
    for lineno, na, nb in inverse_decls:
        a, b = eid(lineno, na), eid(lineno, nb)
        for x, y in ((a, b), (b, a)):
            if inv_fixed[x] and inv[x] != y:
                raise PreeError(
                    "line %d: inverse of %s declared as both %s and %s"
                    % (lineno, names[x], names[inv[x]], names[y])
                )
            inv[x] = y
            inv_fixed[x] = True

    table = [[UNDEF] * n for _ in range(n)]

    def set_declared(lineno: int, a: int, b: int, c: int) -> None:
        if table[a][b] != UNDEF and table[a][b] != c:
            raise PreeError(
                "line %d: product %s %s declared as both %s and %s"
                % (lineno, names[a], names[b], names[table[a][b]], names[c])
            )
        table[a][b] = c

    # Identity and inverse laws come first so that explicit contradictory
    # declarations are reported against them.
    for a in range(n):
        set_declared(0, one, a, a)
        set_declared(0, a, one, a)
    for a in range(n):
        set_declared(0, a, inv[a], one)
        set_declared(0, inv[a], a, one)
    for lineno, na, nb, nc in product_decls:
        set_declared(lineno, eid(lineno, na), eid(lineno, nb), eid(lineno, nc))

    # Closure completion.  Derived conflicts are not load errors: the first
    # value wins and validate_pree reports the inconsistency.
    changed = True
    while changed:
        changed = False
        for a in range(n):
            for b in range(n):
                c = table[a][b]
                if c == UNDEF:
                    continue
                for x, y, z in closure_products(inv, a, b, c):
                    if table[x][y] == UNDEF:
                        table[x][y] = z
                        changed = True

    return Pree(
        names=tuple(names),
        identity=one,
        inv=tuple(inv),
        table=tuple(tuple(row) for row in table),
    )


def dump_pree(p: Pree) -> str:
    """Serialize a pree; load_pree(dump_pree(p)) reproduces the tables."""
    lines = ["elements: " + " ".join(p.names)]
    lines.append("identity: " + p.name(p.identity))
    for a in p.elements():
        b = p.inv[a]
        if a < b:
            lines.append("inverse: %s %s" % (p.name(a), p.name(b)))
    for a, b, c in p.defined_pairs():
        lines.append("product: %s %s %s" % (p.name(a), p.name(b), p.name(c)))
    return "\n".join(lines) + "\n"


def validate_pree(p: Pree) -> VerificationReport:
    """Exhaustively check every structural invariant of the table."""
    r = VerificationReport("pree-structure")
    n = p.size
    one = p.identity

    if len(set(p.names)) != n:
        r.problem("duplicate element names")
    for nm in p.names:
        if not nm or any(ch.isspace() for ch in nm):
            r.problem("bad element name %r" % nm)

    if p.inv[one] != one:
        r.problem("inverse of identity is %s" % p.name(p.inv[one]))
    for a in p.elements():
        if p.inv[p.inv[a]] != a:
            r.problem("inverse not involutive at %s" % p.name(a))

    for a in p.elements():
        if p.table[one][a] != a:
            r.problem("identity law fails: 1*%s" % p.name(a))
        if p.table[a][one] != a:
            r.problem("identity law fails: %s*1" % p.name(a))
        if p.table[a][p.inv[a]] != one:
            r.problem("inverse law fails: %s*%s" % (p.name(a), p.name(p.inv[a])))
        if p.table[p.inv[a]][a] != one:
            r.problem("inverse law fails: %s*%s" % (p.name(p.inv[a]), p.name(a)))

    for a, b, c in p.defined_pairs():
        if c == one and b != p.inv[a]:
            r.problem(
                "inverse not unique: %s*%s = 1 but inv(%s) = %s"
                % (p.name(a), p.name(b), p.name(a), p.name(p.inv[a]))
            )
        for x, y, z in closure_products(p.inv, a, b, c):
            got = p.table[x][y]
            if got != z:
                r.problem(
                    "closure violation at %s*%s=%s: expected %s*%s=%s, table has %s"
                    % (
                        p.name(a), p.name(b), p.name(c),
                        p.name(x), p.name(y), p.name(z),
                        p.name(got) if got != UNDEF else "undefined",
                    )
                )

    for a in p.elements():
        for b in p.elements():
            ab = p.table[a][b]
            if ab == UNDEF:
                continue
            for c in p.elements():
                bc = p.table[b][c]
                if bc == UNDEF:
                    continue
                left = p.table[ab][c]
                right = p.table[a][bc]
                if (left == UNDEF) != (right == UNDEF):
                    r.problem(
                        "associativity definedness fails at (%s,%s,%s)"
                        % (p.name(a), p.name(b), p.name(c))
                    )
                elif left != UNDEF and left != right:
                    r.problem(
                        "associativity value fails at (%s,%s,%s): %s vs %s"
                        % (p.name(a), p.name(b), p.name(c), p.name(left), p.name(right))
                    )
    return r


def _cycle_fails(p: Pree, cycle: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Quotients of the cycle if it is a counterexample, else None.

    None is also returned when some quotient is undefined (the cycle is
    then outside the axiom's hypothesis).
    """
    n = len(cycle)
    quot = []
    for i in range(n):
        q = p.table[p.inv[cycle[i]]][cycle[(i + 1) % n]]
        if q == UNDEF:
            return None
        quot.append(q)
    for i in range(n):
        if p.table[quot[i]][quot[(i + 1) % n]] != UNDEF:
            return None
    return tuple(quot)


def check_axiom(p: Pree, n: int) -> Optional[AxiomWitness]:
    """Search all length-n cycles with defined quotients for a violation.

    Returns None when the axiom holds, otherwise the lexicographically
    first counterexample.  Any witness found is re-verified to be closed
    under rotation and traversal reversal (reversal inverts the
    quotients); a failure of that symmetry indicates a corrupt table and
    raises.
    """
    if n not in (4, 5):
        raise PreeError("cycle length must be 4 or 5, got %r" % n)

    size = p.size
    cycle = [0] * n

    def extend(i: int) -> Optional[tuple[int, ...]]:
        if i == n:
            quot = _cycle_fails(p, cycle)
            return quot
        for a in range(size):
            cycle[i] = a
            # prune: quotient into position i must be defined
            if i > 0 and p.table[p.inv[cycle[i - 1]]][a] == UNDEF:
                continue
            got = extend(i + 1)
            if got is not None:
                return got
        return None

    quot = extend(0)
    if quot is None:
        return None
    witness = AxiomWitness(cycle=tuple(cycle), quotients=quot)

    for r in range(1, n):
        rot = witness.cycle[r:] + witness.cycle[:r]
        if _cycle_fails(p, rot) is None:
            raise PreeError("witness not rotation-closed: %s" % witness.render(p))
    rev = tuple(reversed(witness.cycle))
    if _cycle_fails(p, rev) is None:
        raise PreeError("witness not reversal-closed: %s" % witness.render(p))
    return witness


def _parse_relator_token(tok: str) -> tuple[str, bool]:
    if tok.endswith("^-1"):
        return tok[: -len("^-1")], True
    return tok, False


def pree_from_presentation(
    generators: Iterable[str], relators: Iterable[str]
) -> tuple[Pree, VerificationReport]:
    """Turn a finite presentation into a pree, best effort.

    Each relator is a whitespace-separated word over the generators; a
    token ``x^-1`` denotes the inverse of ``x``.  Long relators are cut
    down with fresh abbreviation letters until every relator is a
    triangle, the triangle relators become table entries, and the table
    is closed and repaired to satisfy the associative law where one side
    forces the other.  Raises PresentationError when two distinct values
    are forced onto one product.  The report records whether the result
    satisfies the short-cycle axioms (it may not).
    """
    gens = list(generators)
    if len(set(gens)) != len(gens):
        raise PresentationError("duplicate generator")
    for g in gens:
        if not g or any(ch.isspace() for ch in g) or g == "1" or g.endswith("^-1"):
            raise PresentationError("bad generator name %r" % g)

    # Letters are kept as (base, inverted) pairs; a union-find over them
    # absorbs the length-1 and length-2 relators before any products exist.
    parent: dict[tuple[str, bool], tuple[str, bool]] = {}

    def find(x: tuple[str, bool]) -> tuple[str, bool]:
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    def union(x: tuple[str, bool], y: tuple[str, bool]) -> None:
        # merging x with y also merges their inverses
        rx, ry = find(x), find(y)
        if rx == ry:
            return
        parent[rx] = ry
        ix, iy = (rx[0], not rx[1]), (ry[0], not ry[1])
        union(ix, iy)

    def mk(base: str, invflag: bool) -> tuple[str, bool]:
        return find((base, invflag))

    words: list[list[tuple[str, bool]]] = []
    for rel in relators:
        toks = rel.split() if isinstance(rel, str) else list(rel)
        word = []
        for t in toks:
            base, invf = _parse_relator_token(t)
            if base == "1":
                continue
            if base not in gens:
                raise PresentationError("relator uses unknown generator %r" % base)
            word.append((base, invf))
        words.append(word)

    fresh_count = 0

    def fresh_name() -> str:
        nonlocal fresh_count
        while True:
            fresh_count += 1
            nm = "t%d" % fresh_count
            if nm not in gens:
                return nm

    def cyclic_reduce(word: list[tuple[str, bool]]) -> list[tuple[str, bool]]:
        w = [mk(*x) for x in word]
        changed = True
        while changed:
            changed = False
            i = 0
            while i + 1 < len(w):
                a, b = w[i], w[i + 1]
                if find(a) == find((b[0], not b[1])):
                    del w[i : i + 2]
                    changed = True
                else:
                    i += 1
            while len(w) >= 2 and find(w[0]) == find((w[-1][0], not w[-1][1])):
                w = w[1:-1]
                changed = True
        return w

    # Absorb short relators, then abbreviate the rest down to triangles.
    triangles: list[tuple[tuple[str, bool], tuple[str, bool], tuple[str, bool]]] = []
    pending = list(words)
    known_abbrev: dict[tuple[tuple[str, bool], tuple[str, bool]], tuple[str, bool]] = {}
    while pending:
        w = cyclic_reduce(pending.pop(0))
        if len(w) == 0:
            continue
        if len(w) == 1:
            raise PresentationError("relator forces a generator equal to the identity")
        if len(w) == 2:
            # a b = 1, so b is the inverse of a
            a, b = w
            union((b[0], b[1]), (a[0], not a[1]))
            continue
        if len(w) == 3:
            triangles.append((w[0], w[1], w[2]))
            continue
        key = (find(w[0]), find(w[1]))
        if key in known_abbrev:
            t = known_abbrev[key]
        else:
            t = (fresh_name(), False)
            known_abbrev[key] = t
            triangles.append((key[0], key[1], (t[0], not t[1])))
        pending.insert(0, [t] + w[2:])

    # Intern surviving letter classes as elements.
    letters: list[tuple[str, bool]] = []
    for g in gens:
        for invf in (False, True):
            rep = find((g, invf))
            if rep not in letters:
                letters.append(rep)
    for k in range(1, fresh_count + 1):
        for invf in (False, True):
            rep = find(("t%d" % k, invf))
            if rep not in letters:
                letters.append(rep)

    names = ["1"]
    ids: dict[tuple[str, bool], int] = {}
    for rep in letters:
        nm = rep[0] + ("^-1" if rep[1] else "")
        ids[rep] = len(names)
        names.append(nm)
    n = len(names)
    one = 0
    inv = [0] * n
    for rep, i in ids.items():
        j = ids.get(find((rep[0], not rep[1])))
        if j is None:
            raise PresentationError("incoherent inverse classes")
        inv[i] = j
        inv[j] = i

    table = [[UNDEF] * n for _ in range(n)]

    def lid(x: tuple[str, bool]) -> int:
        return ids[find(x)]

    def put(a: int, b: int, c: int) -> None:
        old = table[a][b]
        if old != UNDEF and old != c:
            raise PresentationError(
                "inconsistent products: %s * %s is both %s and %s"
                % (names[a], names[b], names[old], names[c])
            )
        table[a][b] = c

    for a in range(n):
        put(one, a, a)
        put(a, one, a)
        put(a, inv[a], one)
        put(inv[a], a, one)
    for x, y, z in triangles:
        # x y z = 1 reads as x*y = inv(z)
        put(lid(x), lid(y), inv[lid(z)])

    # Close and repair until stable.  One-sided associativity failures are
    # repaired by adding the forced entry; two-sided disagreement raises.
    changed = True
    while changed:
        changed = False
        for a in range(n):
            for b in range(n):
                c = table[a][b]
                if c == UNDEF:
                    continue
                for x, y, z in closure_products(inv, a, b, c):
                    old = table[x][y]
                    if old == UNDEF:
                        table[x][y] = z
                        changed = True
                    elif old != z:
                        raise PresentationError(
                            "closure clash: %s * %s is both %s and %s"
                            % (names[x], names[y], names[old], names[z])
                        )
        for a in range(n):
            for b in range(n):
                ab = table[a][b]
                if ab == UNDEF:
                    continue
                for c in range(n):
                    bc = table[b][c]
                    if bc == UNDEF:
                        continue
                    left = table[ab][c]
                    right = table[a][bc]
                    if left != UNDEF and right == UNDEF:
                        table[a][bc] = left
                        changed = True
                    elif right != UNDEF and left == UNDEF:
                        table[ab][c] = right
                        changed = True
                    elif left != UNDEF and left != right:
                        raise PresentationError(
                            "associativity clash at (%s,%s,%s)"
                            % (names[a], names[b], names[c])
                        )

    p = Pree(
        names=tuple(names),
        identity=one,
        inv=tuple(inv),
        table=tuple(tuple(row) for row in table),
    )
    report = validate_pree(p)
    report.name = "presentation-ingest"
    for m in (4, 5):
        w = check_axiom(p, m)
        if w is None:
            report.note("cycle axiom n=%d holds" % m)
        else:
            report.note("cycle axiom n=%d fails: %s" % (m, w.render(p)))
    return p, report
