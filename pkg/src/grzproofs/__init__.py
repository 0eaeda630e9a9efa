"""Proof engineering for the modal logic Grz: cyclic and non-well-founded
sequent proofs, a decision procedure, syntactic cut elimination by
productive corecursion, and Lyndon interpolation."""

__version__ = '0.1.0'
