"""Exact classical link invariants: linking numbers, Milnor mu-bar
invariants, Conway polynomials, and generators for Milnor's links and
iterated Whitehead doubles of the Hopf link."""

from .claims import CLAIMS, ClaimResult, run_claim
from .conway import (ConwayPolynomial, SeifertMatrix, congruence_check, conway,
                     conway_from_seifert, conway_skein, seifert_matrix)
from .diagram import (Crossing, DiagramError, LinkDiagram, ValidationReport, check,
                      linking_matrix, linking_number, make_crossing, mirror, validate)
from .families import (FamilySpec, cable, clasp_twist_family, corpus, generate,
                       parallel_for_sequence, whitehead_double)
from .formats import ParseError, parse, parse_gauss, serialize, to_gauss
from .magnus import MagnusSeries
from .milnor import MuValue, cochran_beta, mu_bar, mu_table, sato_levine
from .moves import MoveSpec, apply_move, connect_projection, move_sites, sublink
from .words import FreeWord, expand, lcs_weight, longitude, wirtinger

__version__ = "0.1.0"
