"""Formulas, multisets, and sequents for modal logic, with a parser and printer.

The formula language is built from falsity, propositional atoms, implication
and box.  Negation, conjunction, disjunction, verum and diamond are sugar and
are expanded away at construction time; the AST only ever contains the four
core constructors.

Sequents use multisets on both sides.  Multisets are kept in a canonical
sorted order so that structural equality and hashing behave like genuine
multiset equality.
"""

from __future__ import annotations

from dataclasses import dataclass


# ---------------------------------------------------------------------------
# Formulas


class Formula:
    """Base class for formulas.  Instances are immutable and hashable."""

    __slots__ = ()

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Bottom(Formula):
    __slots__ = ()

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Box(Formula):
    inner: Formula

    def __str__(self):
        return format_formula(self)


BOT = Bottom()


def neg(a):
    """~A, sugar for A -> false."""
    return Implies(a, BOT)


TOP = neg(BOT)


def conj(a, b):
    """A & B, sugar for ~(A -> ~B)."""
    return neg(Implies(a, neg(b)))


def disj(a, b):
    """A | B, sugar for ~A -> B."""
    return Implies(neg(a), b)


def diamond(a):
    """<>A, sugar for ~[]~A."""
    return neg(Box(neg(a)))


def formula_size(f):
    """Number of AST nodes."""
    if isinstance(f, (Bottom, Atom)):
        return 1
    if isinstance(f, Box):
        return 1 + formula_size(f.inner)
    return 1 + formula_size(f.left) + formula_size(f.right)


_KEY_CACHE = {}


def formula_key(f):
    """A total order key for formulas, used to canonicalize multisets."""
    k = _KEY_CACHE.get(f)
    if k is None:
        if isinstance(f, Bottom):
            k = (0,)
        elif isinstance(f, Atom):
            k = (1, f.name)
        elif isinstance(f, Implies):
            k = (2, formula_key(f.left), formula_key(f.right))
        else:
            k = (3, formula_key(f.inner))
        _KEY_CACHE[f] = k
    return k


def subformulas(f):
    """The set of subformulas of a formula (including itself)."""
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in out:
            continue
        out.add(g)
        if isinstance(g, Implies):
            stack.append(g.left)
            stack.append(g.right)
        elif isinstance(g, Box):
            stack.append(g.inner)
    return frozenset(out)


def star_closure(formulas):
    """Close a set of formulas under subformulas and A |-> [](A -> []A).

    For each boxed member []A of the subformula closure, the formula
    [](A -> []A) and its subformulas are added as well.  The result is
    finite: the extra formulas are not themselves expanded again.
    """
    base = set()
    for f in formulas:
        base |= subformulas(f)
    out = set(base)
    for g in base:
        if isinstance(g, Box):
            out |= subformulas(Box(Implies(g.inner, g)))
    return frozenset(out)


def polarity(f, positive=True, pos=None, neg_=None):
    """Positive and negative subformula occurrences of a formula.

    Returns a pair of frozensets ``(pos, neg)``.  The formula itself is a
    positive occurrence; implication flips polarity on the left.
    """
    if pos is None:
        pos, neg_ = set(), set()
    (pos if positive else neg_).add(f)
    if isinstance(f, Implies):
        polarity(f.left, not positive, pos, neg_)
        polarity(f.right, positive, pos, neg_)
    elif isinstance(f, Box):
        polarity(f.inner, positive, pos, neg_)
    return frozenset(pos), frozenset(neg_)


def atom_polarities(f, positive=True, out=None):
    """Map each atom name occurring in ``f`` to the set of polarities
    ('+' / '-') with which it occurs."""
    if out is None:
        out = {}
    if isinstance(f, Atom):
        out.setdefault(f.name, set()).add('+' if positive else '-')
    elif isinstance(f, Implies):
        atom_polarities(f.left, not positive, out)
        atom_polarities(f.right, positive, out)
    elif isinstance(f, Box):
        atom_polarities(f.inner, positive, out)
    return out


# ---------------------------------------------------------------------------
# Multisets


class Multiset:
    """An immutable multiset of formulas with canonical ordering.

    Two multisets are equal iff they contain the same formulas with the
    same multiplicities, regardless of construction order.
    """

    __slots__ = ('_items',)

    def __init__(self, items=()):
        object.__setattr__(self, '_items',
                           tuple(sorted(items, key=formula_key)))

    @property
    def items(self):
        return self._items

    def __iter__(self):
        return iter(self._items)

    def __len__(self):
        return len(self._items)

    def __contains__(self, f):
        return f in self._items

    def __eq__(self, other):
        return isinstance(other, Multiset) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __repr__(self):
        return 'Multiset([%s])' % ', '.join(str(f) for f in self._items)

    def count(self, f):
        return self._items.count(f)

    def add(self, *formulas):
        return Multiset(self._items + tuple(formulas))

    def remove(self, f):
        """Remove one occurrence of ``f``; raises if absent."""
        items = list(self._items)
        items.remove(f)
        return Multiset(items)

    def union(self, other):
        return Multiset(self._items + tuple(other))

    def difference(self, other):
        """Counted multiset difference."""
        items = list(self._items)
        for f in other:
            if f in items:
                items.remove(f)
        return Multiset(items)

    def is_subset(self, other):
        """Counted inclusion."""
        for f in set(self._items):
            if self._items.count(f) > other.count(f):
                return False
        return True

    def distinct(self):
        """Distinct elements, in canonical order."""
        seen = []
        for f in self._items:
            if not seen or seen[-1] != f:
                seen.append(f)
        return tuple(seen)

    def to_set(self):
        return frozenset(self._items)

    def dedupe(self):
        """The underlying set, as a multiset with multiplicity one each."""
        return Multiset(self.distinct())


EMPTY = Multiset()


def mset(*formulas):
    return Multiset(formulas)


# ---------------------------------------------------------------------------
# Sequents


@dataclass(frozen=True)
class Sequent:
    ant: Multiset
    suc: Multiset

    def __str__(self):
        return format_sequent(self)

    def is_initial(self):
        """Initial in the atomic sense: falsity on the left, or an atom
        shared between the two sides."""
        if BOT in self.ant:
            return True
        return any(isinstance(f, Atom) and f in self.suc for f in self.ant)

    def boxed_ant(self):
        """The sub-multiset of boxed antecedent formulas."""
        return Multiset(f for f in self.ant if isinstance(f, Box))

    def formulas(self):
        for f in self.ant:
            yield f
        for f in self.suc:
            yield f


def seq(ant, suc):
    if not isinstance(ant, Multiset):
        ant = Multiset(ant)
    if not isinstance(suc, Multiset):
        suc = Multiset(suc)
    return Sequent(ant, suc)


def sequent_subformulas(s):
    out = set()
    for f in s.formulas():
        out |= subformulas(f)
    return frozenset(out)


def sequent_to_formula(s):
    """The formula reading of a sequent: conjunction of the antecedent
    implies disjunction of the succedent."""
    ant = list(s.ant)
    suc = list(s.suc)
    if suc:
        d = suc[0]
        for f in suc[1:]:
            d = disj(d, f)
    else:
        d = BOT
    if ant:
        c = ant[0]
        for f in ant[1:]:
            c = conj(c, f)
        return Implies(c, d)
    return d


# ---------------------------------------------------------------------------
# Printing


def format_formula(f):
    if isinstance(f, Bottom):
        return 'false'
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Box):
        return '[]' + _format_unary(f.inner)
    left = _format_unary(f.left)
    return '%s -> %s' % (left, format_formula(f.right))


def _format_unary(f):
    if isinstance(f, Implies):
        return '(%s)' % format_formula(f)
    return format_formula(f)


def format_sequent(s):
    return '%s => %s' % (', '.join(str(f) for f in s.ant),
                         ', '.join(str(f) for f in s.suc))


# ---------------------------------------------------------------------------
# Parsing


class ParseError(ValueError):
    pass


_SYMBOLS = ('=>', '->', '[]', '<>', '~', '&', '|', '(', ')', ',')


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(sym)
                i += len(sym)
                break
        else:
            if c.isalpha() and c.islower():
                j = i + 1
                while j < n and (text[j].islower() or text[j].isdigit()
                                 or text[j] == '_'):
                    j += 1
                tokens.append(text[i:j])
                i = j
            else:
                raise ParseError('unexpected character %r at position %d'
                                 % (c, i))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            raise ParseError('unexpected end of input')
        if expected is not None and tok != expected:
            raise ParseError('expected %r, found %r' % (expected, tok))
        self.pos += 1
        return tok

    def formula(self):
        left = self.or_expr()
        if self.peek() == '->':
            self.take()
            return Implies(left, self.formula())
        return left

    def or_expr(self):
        f = self.and_expr()
        while self.peek() == '|':
            self.take()
            f = disj(f, self.and_expr())
        return f

    def and_expr(self):
        f = self.unary()
        while self.peek() == '&':
            self.take()
            f = conj(f, self.unary())
        return f

    def unary(self):
        tok = self.peek()
        if tok == '~':
            self.take()
            return neg(self.unary())
        if tok == '[]':
            self.take()
            return Box(self.unary())
        if tok == '<>':
            self.take()
            return diamond(self.unary())
        if tok == '(':
            self.take()
            f = self.formula()
            self.take(')')
            return f
        if tok == 'false':
            self.take()
            return BOT
        if tok == 'true':
            self.take()
            return TOP
        if tok is not None and tok[0].isalpha():
            self.take()
            return Atom(tok)
        raise ParseError('unexpected token %r' % (tok,))


def parse_formula(text):
    p = _Parser(_tokenize(text))
    f = p.formula()
    if p.peek() is not None:
        raise ParseError('trailing input: %r' % (p.tokens[p.pos:],))
    return f


def parse_sequent(text):
    """Parse ``A, B => C, D``; either side may be empty."""
    parts = _split_toplevel(text)
    if len(parts) != 2:
        raise ParseError('a sequent needs exactly one =>')
    return Sequent(Multiset(_parse_list(parts[0])),
                   Multiset(_parse_list(parts[1])))


def _split_toplevel(text):
    tokens = _tokenize(text)
    parts, cur = [], []
    for tok in tokens:
        if tok == '=>':
            parts.append(cur)
            cur = []
        else:
            cur.append(tok)
    parts.append(cur)
    return parts


def _parse_list(tokens):
    if not tokens:
        return []
    groups, cur, depth = [], [], 0
    for tok in tokens:
        if tok == '(':
            depth += 1
        elif tok == ')':
            depth -= 1
        if tok == ',' and depth == 0:
            groups.append(cur)
            cur = []
        else:
            cur.append(tok)
    groups.append(cur)
    out = []
    for g in groups:
        p = _Parser(g)
        f = p.formula()
        if p.peek() is not None:
            raise ParseError('trailing input in list item: %r'
                             % (g[p.pos:],))
        out.append(f)
    return out
