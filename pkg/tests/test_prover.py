import pytest

from grzproofs.proofs import check_cyclic, unravel
from grzproofs.prover import (
    KripkeModel, decide, eval_formula, find_countermodel, truth_mask,
)
from grzproofs.syntax import (
    Atom, Box, EMPTY, Sequent, mset, parse_formula, parse_sequent,
)

P = Atom('p')

THEOREMS = [
    'p -> p',
    '[]p -> p',                           # reflexivity
    '[]p -> [][]p',                       # transitivity
    '[](p -> q) -> ([]p -> []q)',         # distribution
    '[]([](p -> []p) -> p) -> []p',       # the Grz axiom
    '[](p -> q) -> (<>p -> <>q)',
    '[]p | ~[]p',
    '((p -> q) -> p) -> p',
    '[]p -> p | q',
]

NON_THEOREMS = [
    'p -> []p',
    'p -> q',
    '<>p -> p',
    '[](p | q) -> ([]p | []q)',
    '<>p -> []<>p',                       # fails in Grz (no symmetry)
    '<>[]p -> []<>p' ,
]


def goal(text):
    return Sequent(EMPTY, mset(parse_formula(text)))


class TestDecide:
    @pytest.mark.parametrize('text', THEOREMS)
    def test_theorems_get_checkable_proofs(self, text):
        verdict = decide(goal(text))
        assert verdict.is_proof
        report = check_cyclic(verdict.proof)
        assert report.ok, report.violations
        root = verdict.proof.node(verdict.proof.root)
        assert root.sequent == goal(text)

    @pytest.mark.parametrize('text', NON_THEOREMS)
    def test_non_theorems_get_countermodels(self, text):
        verdict = decide(goal(text))
        assert not verdict.is_proof
        model, world = verdict.countermodel
        assert model.size <= 4
        assert not eval_formula(model, world, parse_formula(text))

    def test_sequent_goals(self):
        verdict = decide(parse_sequent('[]p, [](p -> q) => []q'))
        assert verdict.is_proof
        verdict = decide(parse_sequent('[]p => []q'))
        assert not verdict.is_proof

    def test_proof_and_countermodel_are_exclusive(self):
        v = decide(goal('p -> p'))
        assert v.proof is not None and v.countermodel is None
        v = decide(goal('p'))
        assert v.proof is None and v.countermodel is not None


class TestCountermodels:
    def test_none_for_theorems(self):
        assert find_countermodel(goal('[]p -> p')) is None

    def test_found_models_really_refute(self):
        for text in NON_THEOREMS:
            model, world = find_countermodel(goal(text))
            assert not eval_formula(model, world, parse_formula(text))

    def test_respects_the_size_bound(self):
        # []([]...) needs two worlds; cap the search below that.
        found = find_countermodel(goal('p -> []p'), max_size=4)
        assert found is not None
        assert found[0].size <= 4


class TestKripkeModel:
    def two_chain(self):
        # world 0 below world 1, p true only at world 0
        return KripkeModel(2, (0b11, 0b10), (('p', 0b01),))

    def test_rejects_non_reflexive_orders(self):
        with pytest.raises(ValueError):
            KripkeModel(2, (0b10, 0b10), ())

    def test_rejects_non_antisymmetric_orders(self):
        with pytest.raises(ValueError):
            KripkeModel(2, (0b11, 0b11), ())

    def test_eval_box_quantifies_over_successors(self):
        m = self.two_chain()
        assert eval_formula(m, 0, P)
        assert not eval_formula(m, 0, Box(P))
        assert eval_formula(m, 1, Box(parse_formula('~p')))

    def test_truth_mask_agrees_with_eval(self):
        m = self.two_chain()
        for text in ['p', '[]p', 'p -> []p', '<>p', 'false']:
            f = parse_formula(text)
            mask = truth_mask(m, f)
            for w in range(m.size):
                assert bool(mask >> w & 1) == eval_formula(m, w, f)

    def test_describe_is_serializable(self):
        import json
        json.dumps(self.two_chain().describe())
