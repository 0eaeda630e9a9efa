"""Command-line interface: proving, checking, transforming, translating,
interpolating, countermodel search, corpus generation, and DOT export.

Exit codes: 0 success / valid / proved; 1 checked-and-negative (invalid
proof, countermodel verdict, no countermodel found); 2 usage or input
errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .syntax import (
    Atom, Box, Implies, BOT, Multiset, Sequent, EMPTY, mset,
    parse_formula, parse_sequent, ParseError,
)
from .calculus import Rule, System, ax_general, ax_bottom, imp_r, imp_l, \
    refl, box_grz
from .proofs import (
    WfProof, check_cyclic, check_wf, unravel, cyclic_from_wf, wf_from_cyclic,
    dump_proof, load_proof, proof_to_dot, cutfree_to_depth, local_height,
)
from .transforms import (
    wk_wf, build_cut, seq_to_inf, inf_to_seq, eliminate_cuts, slim,
    regularize, TransformError,
)
from .prover import decide, find_countermodel, Verdict, ProverError
from .interpolation import lyndon, NotATheoremError, InterpolationError


# ---------------------------------------------------------------------------
# Random proof corpus (finitary calculus with cut)


def _random_formula(rng, size):
    if size <= 1:
        return rng.choice([Atom('p'), Atom('q'), BOT])
    if rng.random() < 0.4:
        return Box(_random_formula(rng, size - 1))
    k = rng.randint(1, size - 1)
    return Implies(_random_formula(rng, k),
                   _random_formula(rng, size - k))


_THEOREM_POOL = ['p -> p', '[]p -> p', 'false -> q', 'q -> (p -> q)',
                 'p -> (q -> p)', '[]q -> q']


def _theorem_proofs():
    out = []
    for text in _THEOREM_POOL:
        f = parse_formula(text)
        v = decide(Sequent(EMPTY, mset(f)))
        out.append((f, inf_to_seq(unravel(v.proof))))
    return out


_theorem_cache = []


def random_wf_proof(rng, steps=6):
    """Generate a random finite proof in the finitary calculus with cut,
    by forward construction from axioms."""
    if not _theorem_cache:
        _theorem_cache.extend(_theorem_proofs())

    def rand_ms(max_len=2, size=2):
        return Multiset(_random_formula(rng, rng.randint(1, size))
                        for _ in range(rng.randint(0, max_len)))

    def rand_axiom():
        if rng.random() < 0.25:
            concl = Sequent(rand_ms().add(BOT), rand_ms())
            return WfProof(ax_bottom(concl))
        a = _random_formula(rng, rng.randint(1, 3))
        concl = Sequent(rand_ms().add(a), rand_ms().add(a))
        return WfProof(ax_general(concl, a))

    pool = [rand_axiom(), rand_axiom()]
    ops = ['imp_r', 'refl', 'imp_l', 'cut', 'box', 'axiom']
    weights = [2, 2, 2, 3, 3, 1]
    for _ in range(steps):
        op = rng.choices(ops, weights)[0]
        try:
            if op == 'axiom':
                pool.append(rand_axiom())
            elif op == 'imp_r':
                p = rng.choice(pool)
                a = _random_formula(rng, rng.randint(1, 2))
                p = wk_wf(p, mset(a), EMPTY)
                suc = p.root.suc
                if not suc:
                    continue
                b = rng.choice(list(suc))
                concl = Sequent(p.root.ant.remove(a),
                                suc.remove(b).add(Implies(a, b)))
                pool.append(WfProof(imp_r(concl, Implies(a, b)), (p,)))
            elif op == 'refl':
                p = rng.choice(pool)
                b = _random_formula(rng, rng.randint(1, 2))
                p = wk_wf(p, mset(b, Box(b)), EMPTY)
                concl = Sequent(p.root.ant.remove(b), p.root.suc)
                pool.append(WfProof(refl(concl, Box(b)), (p,)))
            elif op == 'imp_l':
                p1, p2 = rng.choice(pool), rng.choice(pool)
                a = _random_formula(rng, rng.randint(1, 2))
                b = _random_formula(rng, rng.randint(1, 2))
                g = p1.root.ant.union(p2.root.ant)
                d = p1.root.suc.union(p2.root.suc)
                left = wk_wf(p1, g.difference(p1.root.ant).add(b),
                             d.difference(p1.root.suc))
                right = wk_wf(p2, g.difference(p2.root.ant),
                              d.difference(p2.root.suc).add(a))
                concl = Sequent(g.add(Implies(a, b)), d)
                pool.append(WfProof(imp_l(concl, Implies(a, b)),
                                    (left, right)))
            elif op == 'cut':
                p1, p2 = rng.choice(pool), rng.choice(pool)
                a = _random_formula(rng, rng.randint(1, 2))
                pool.append(build_cut(wk_wf(p1, EMPTY, mset(a)),
                                      wk_wf(p2, mset(a), EMPTY), a))
            elif op == 'box':
                a, proof = rng.choice(_theorem_cache)
                pi = Multiset(Box(_random_formula(rng, rng.randint(1, 2)))
                              for _ in range(rng.randint(0, 2)))
                trace = Box(Implies(a, Box(a)))
                prem = wk_wf(proof, pi.add(trace), EMPTY)
                concl = Sequent(pi.union(rand_ms()),
                                rand_ms().add(Box(a)))
                inst = box_grz(concl, Box(a), pi)
                pool.append(WfProof(inst, (prem,)))
        except (TransformError, ValueError):
            continue
    return max(pool, key=lambda p: p.size())


# ---------------------------------------------------------------------------
# Verbs


def _read_proof(path):
    with open(path) as fp:
        return load_proof(fp)


def _write(text, output):
    if output:
        with open(output, 'w') as fp:
            fp.write(text)
    else:
        sys.stdout.write(text)


def _cmd_prove(args):
    goal = _parse_goal(args.goal)
    verdict = decide(goal, max_crossings=args.max_crossings,
                     max_model_size=args.max_model_size)
    if verdict.is_proof:
        _write(dump_proof(verdict.proof) + '\n', args.output)
        return 0
    model, world = verdict.countermodel
    payload = {'countermodel': model.describe(), 'world': world}
    _write(json.dumps(payload, indent=2) + '\n', args.output)
    return 1


def _parse_goal(text):
    if '=>' in text:
        return parse_sequent(text)
    return Sequent(EMPTY, mset(parse_formula(text)))


def _cmd_check(args):
    proof = _read_proof(args.proof)
    if proof.system.is_finitary and not proof.backlinks:
        report = check_wf(wf_from_cyclic(proof), proof.system)
    else:
        report = check_cyclic(proof)
    if report.ok:
        print('valid (%d nodes, system %s)'
              % (len(proof.nodes), proof.system.value))
        return 0
    print('invalid:')
    for v in report.violations:
        print('  - %s' % v)
    return 1


def _cmd_cutfree(args):
    proof = _read_proof(args.proof)
    if proof.system.is_finitary:
        lazy = seq_to_inf(wf_from_cyclic(proof))
    else:
        lazy = unravel(proof)
    out = regularize(slim(eliminate_cuts(lazy)),
                     max_crossings=args.max_crossings)
    _write(dump_proof(out) + '\n', args.output)
    return 0


def _cmd_slim(args):
    proof = _read_proof(args.proof)
    out = regularize(slim(unravel(proof)), max_crossings=args.max_crossings)
    _write(dump_proof(out) + '\n', args.output)
    return 0


def _cmd_regularize(args):
    proof = _read_proof(args.proof)
    out = regularize(unravel(proof), max_crossings=args.max_crossings)
    _write(dump_proof(out) + '\n', args.output)
    return 0


def _cmd_translate(args):
    proof = _read_proof(args.proof)
    if args.to == 'seq':
        wf = inf_to_seq(unravel(proof))
        out = cyclic_from_wf(wf, System.GRZ_SEQ_CUT
                             if _has_cut(wf) else System.GRZ_SEQ)
    else:
        lazy = seq_to_inf(wf_from_cyclic(proof))
        out = regularize(slim(eliminate_cuts(lazy)),
                         max_crossings=args.max_crossings)
    _write(dump_proof(out) + '\n', args.output)
    return 0


def _has_cut(wf):
    return wf.rule == Rule.CUT or any(_has_cut(c) for c in wf.children)


def _cmd_interpolate(args):
    try:
        result = lyndon(parse_formula(args.a), parse_formula(args.b),
                        max_model_size=args.max_model_size)
    except NotATheoremError as e:
        model, world = e.countermodel
        print('not a theorem; countermodel:')
        print(json.dumps({'countermodel': model.describe(), 'world': world},
                         indent=2))
        return 1
    print('interpolant: %s' % result.interpolant)
    print('left obligation:  %s   (proved)' % result.left_obligation)
    print('right obligation: %s   (proved)' % result.right_obligation)
    print('polarity inclusions: verified')
    return 0


def _cmd_countermodel(args):
    goal = _parse_goal(args.goal)
    found = find_countermodel(goal, args.max_model_size)
    if found is None:
        print('no countermodel up to %d worlds' % args.max_model_size)
        return 1
    model, world = found
    print(json.dumps({'countermodel': model.describe(), 'world': world},
                     indent=2))
    return 0


def _cmd_corpus(args):
    rng = random.Random(args.seed)
    proofs = []
    for _ in range(args.count):
        wf = random_wf_proof(rng, steps=args.steps)
        proofs.append(cyclic_from_wf(wf, System.GRZ_SEQ_CUT))
    payload = [  # one JSON proof object per entry
        json.loads(dump_proof(p)) for p in proofs
    ]
    _write(json.dumps(payload, indent=2) + '\n', args.output)
    return 0


def _cmd_export_dot(args):
    proof = _read_proof(args.proof)
    _write(proof_to_dot(proof), args.output)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog='grzproofs',
        description='Cyclic proofs, cut elimination and interpolation '
                    'for the modal logic Grz.')
    sub = ap.add_subparsers(dest='verb', required=True)

    def common(p, output=True):
        p.add_argument('--max-crossings', type=int, default=64)
        p.add_argument('--max-model-size', type=int, default=4)
        if output:
            p.add_argument('-o', '--output')

    p = sub.add_parser('prove', help='decide a formula or sequent')
    p.add_argument('goal')
    common(p)
    p.set_defaults(fn=_cmd_prove)

    p = sub.add_parser('check', help='validate a proof JSON file')
    p.add_argument('proof')
    common(p, output=False)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser('cutfree', help='eliminate cuts from a proof')
    p.add_argument('proof')
    common(p)
    p.set_defaults(fn=_cmd_cutfree)

    p = sub.add_parser('slim', help='slim and regularize a cyclic proof')
    p.add_argument('proof')
    common(p)
    p.set_defaults(fn=_cmd_slim)

    p = sub.add_parser('regularize', help='fold a cyclic proof minimally')
    p.add_argument('proof')
    common(p)
    p.set_defaults(fn=_cmd_regularize)

    p = sub.add_parser('translate',
                       help='translate between the finitary and '
                            'non-well-founded calculi')
    p.add_argument('proof')
    p.add_argument('--to', choices=['seq', 'inf'], required=True)
    common(p)
    p.set_defaults(fn=_cmd_translate)

    p = sub.add_parser('interpolate', help='Lyndon interpolant of A -> B')
    p.add_argument('a')
    p.add_argument('b')
    common(p, output=False)
    p.set_defaults(fn=_cmd_interpolate)

    p = sub.add_parser('countermodel', help='search for a finite countermodel')
    p.add_argument('goal')
    common(p, output=False)
    p.set_defaults(fn=_cmd_countermodel)

    p = sub.add_parser('corpus', help='generate random proofs with cut')
    p.add_argument('--count', type=int, default=10)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--steps', type=int, default=6)
    p.add_argument('-o', '--output')
    p.set_defaults(fn=_cmd_corpus)

    p = sub.add_parser('export-dot', help='render a proof as Graphviz DOT')
    p.add_argument('proof')
    p.add_argument('-o', '--output')
    p.set_defaults(fn=_cmd_export_dot)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, TransformError, InterpolationError, ProverError,
            OSError, ValueError) as e:
        print('error: %s' % e, file=sys.stderr)
        return 2


if __name__ == '__main__':
    sys.exit(main())
