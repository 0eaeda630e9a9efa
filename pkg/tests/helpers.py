"""Builders shared by the test modules: exhaustive formula enumeration,
exhaustive small-proof search, and grafting of lazy proofs."""

from functools import lru_cache

from grzproofs.calculus import Rule, System, applicable_instances
from grzproofs.proofs import eager, leaf, node
from grzproofs.syntax import Atom, Box, Implies, BOT

P = Atom('p')
Q = Atom('q')


@lru_cache(maxsize=None)
def formulas_of_size(n, atoms=(P, Q)):
    """All formulas with exactly ``n`` AST nodes over ``atoms``."""
    if n < 1:
        return ()
    if n == 1:
        return (BOT,) + tuple(atoms)
    out = [Box(f) for f in formulas_of_size(n - 1, atoms)]
    for i in range(1, n - 1):
        for a in formulas_of_size(i, atoms):
            for b in formulas_of_size(n - 1 - i, atoms):
                out.append(Implies(a, b))
    return tuple(out)


def formulas_up_to(n, atoms=(P, Q)):
    out = []
    for k in range(1, n + 1):
        out.extend(formulas_of_size(k, atoms))
    return out


def proof_size(p):
    """Number of rule nodes of a finite lazy proof."""
    return 1 + sum(proof_size(p.child(i)) for i in range(p.inst.arity))


def complete_proofs(goal, budget, system=System.GRZ_INF):
    """Every finite proof of ``goal`` with at most ``budget`` rule nodes,
    found by exhaustive backwards application of the cut-free rules."""
    if budget < 1:
        return
    for inst in applicable_instances(goal, system):
        if inst.arity == 0:
            yield leaf(inst)
        elif inst.arity == 1 and budget >= 2:
            for sub in complete_proofs(inst.premises[0], budget - 1, system):
                yield eager(inst, sub)
        elif inst.arity == 2 and budget >= 3:
            for lhs in complete_proofs(inst.premises[0], budget - 2, system):
                rest = budget - 1 - proof_size(lhs)
                for rhs in complete_proofs(inst.premises[1], rest, system):
                    yield eager(inst, lhs, rhs)


def graft(p, depth, repl):
    """A copy of lazy proof ``p`` in which, on every branch, the subtree
    hanging below the ``depth``-th box right premise is replaced by
    ``repl(sequent)``.  The replacement must prove the same sequent, so
    the original and the graft agree up to fragment depth ``depth``."""
    if depth <= 0:
        return repl(p.root)
    thunks = []
    for i in range(p.inst.arity):
        d = depth - 1 if (p.rule == Rule.BOX_INF and i == 1) else depth
        thunks.append(lambda i=i, d=d: graft(p.child(i), d, repl))
    return node(p.inst, *thunks)
