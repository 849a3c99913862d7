"""Exact combinatorial checks behind amplification sup-norm bounds.

Modules:
    rootdata   root data, Weyl groups, the *-norm
    ksmall     K-smallness certification by exact LPs
    charring   Weyl characters, multiplicities, Levi shifts
    satake     type-A Satake transforms and amplifier selection
    buildings  delta profiles, sphere sizes, intersection counts
    acceptance the acceptance-criteria driver
"""

__version__ = "0.1.0"
