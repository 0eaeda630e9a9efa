"""Bundled example proofs shipped with the package."""

from importlib import resources

from .proofs import load_proof


def grz_axiom_cyclic_proof():
    """The bundled 9-rule cyclic proof of  []([](p -> []p) -> p) => p,
    whose single back-link returns from the innermost box right premise to
    the root."""
    text = (resources.files('grzproofs') / 'data' / 'grz_axiom_cyclic.json'
            ).read_text()
    return load_proof(text)
