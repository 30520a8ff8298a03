"""avtri: a desk-scale trilinear map on abelian varieties with its attack suite.

Three interchangeable backends (elliptic curve, genus-2 Jacobian, synthetic
endomorphism-module model) sit behind one group/endomorphism abstraction;
on top of them live Weil pairings, CRT characteristic polynomials, the
trilinear-map protocol (setup / encode / evaluate) and implementations of
every discrete-log attack the construction is designed to resist.
"""

__version__ = "0.1.0"
