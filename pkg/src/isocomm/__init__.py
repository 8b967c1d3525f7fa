"""Group presentations whose isomorphism and commensurability problems part ways.

Hall-group word problems, free products, mapping tori, the two presentation
families and the reductions between their decision problems.
"""

from .answers import OracleAnswer, Verdict
from .presentation import FinitePresentation, abelian_invariants, dumps, loads
from .words import Word, parse_word

__version__ = "0.1.0"
