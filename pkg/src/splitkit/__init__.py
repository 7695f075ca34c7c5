"""Finite checks around Frobenius splittings, Weyl-group combinatorics and
sections of line bundles on partial Grothendieck alterations."""

__version__ = "0.1.0"
