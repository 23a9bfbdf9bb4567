"""ppforms - exact and numeric tools for positive (p,p)-forms.

This package builds complex differential forms of bidegree (p,p), multiplies
them exactly over the Gaussian rationals, and searches for violations of
positivity. It reproduces, as executable checks, the results on squares of
positive (2,2)-forms on C^4 and the (3,3)-form on C^6 whose square is negative.

Usage:
    Run as a module:
        python3 -m ppforms verify --suite all

    Or through the console script:
        ppforms check form.json --method dinew

Modules:
    scalars: Exact/float complex scalars
    combinatorics: Multi-indices, complements and signs
    exterior: Sparse exterior algebra on C^n
    ppmatrix: Matrix representations and product formulas
    positivity: Positivity searches, reductions and theorem checks
    gallery: Named forms with closed-form expected values
    suites: Acceptance suites
    cli: Command-line interface
"""

from .exterior import CoVector, Form, wedge
from .ppmatrix import Omega6Form, PPMatrixForm
from .scalars import ComplexScalar

__version__ = "1.0.0"
__all__ = ["ComplexScalar", "CoVector", "Form", "Omega6Form", "PPMatrixForm", "wedge"]
