"""Exact reconstruction of depth-3 arithmetic circuits with top fan-in 2.

All arithmetic is over the rationals (fractions.Fraction); every equality
test in the library is exact.  The package is organized as:

    algebra        linear forms, exact rank / projections, incidence utilities
    poly           sparse multivariate polynomials, product-of-forms polys,
                   circuits and decompositions
    linfactor      extraction of all linear factors of an explicit polynomial
    brill          splitting criterion for products of linear forms and the
                   candidate-form constructor
    reconstructor  rebuilding forms and products of forms from projections
    lowrank        fixed-dimension circuit reconstruction (easy/medium/hard)
    lift           blackbox pipeline: slicing, exact interpolation, lifting
    gen            seeded instance generator with structural profiles
    formats        circuit / polynomial file formats
    cli            command line front end
"""

from sps2.poly import Polynomial, PiSigmaPoly, Sps2Circuit, Decomposition

__all__ = ["Polynomial", "PiSigmaPoly", "Sps2Circuit", "Decomposition"]
