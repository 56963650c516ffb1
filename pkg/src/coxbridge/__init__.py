"""Wirtinger numbers and maximal rank Coxeter quotients of knot diagrams."""
from pathlib import Path

from .coxeter import GROUPS_BY_RANK, build_group, get_group
from .diagram import build_diagram, dt_to_gauss, parse_dt, parse_gauss, read_knot_file
from .fox import determinant, dihedral_mrcq, p_colorable
from .homsearch import analyze, propagate, search, verify
from .robust import build_robust_set, load_library, load_robust, save_robust
from .wirtinger import saturate, wirtinger_number

DATA_DIR = Path(__file__).parent / "data"
KNOTS_DIR = DATA_DIR / "knots"
ROBUST_DIR = DATA_DIR / "robust"

__version__ = "0.1.0"

__all__ = [
    "GROUPS_BY_RANK", "build_group", "get_group",
    "build_diagram", "dt_to_gauss", "parse_dt", "parse_gauss", "read_knot_file",
    "determinant", "dihedral_mrcq", "p_colorable",
    "analyze", "propagate", "search", "verify",
    "build_robust_set", "load_library", "load_robust", "save_robust",
    "saturate", "wirtinger_number",
    "DATA_DIR", "KNOTS_DIR", "ROBUST_DIR",
]
