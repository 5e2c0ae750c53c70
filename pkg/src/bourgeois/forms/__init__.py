"""Exterior calculus on coordinate charts with exact symbolic partials,
plus the grid scanners that verify contact and symplectic positivity."""

from .expr import (
    Const,
    Expr,
    Var,
    add,
    cos,
    cut,
    exp,
    mul,
    parse_expr,
    power,
    sin,
    var,
)
from .fields import Axis, Chart, FormField, d, top_density, wedge, wedge_power
from .models import (
    Model,
    builtin_model,
    cobordism_density,
    large_k_model,
    load_model,
    paper_page_model,
    paper_spine_model,
)
from .scan import (
    MinimalKReport,
    ReebReport,
    ScanReport,
    contact_density,
    minimal_positive_parameter,
    reeb_solve,
    scan_density,
    verify_contact_form,
)

__all__ = [
    "Axis",
    "Chart",
    "Const",
    "Expr",
    "FormField",
    "MinimalKReport",
    "Model",
    "ReebReport",
    "ScanReport",
    "Var",
    "add",
    "builtin_model",
    "cobordism_density",
    "contact_density",
    "cos",
    "cut",
    "d",
    "exp",
    "large_k_model",
    "load_model",
    "minimal_positive_parameter",
    "mul",
    "paper_page_model",
    "paper_spine_model",
    "parse_expr",
    "power",
    "reeb_solve",
    "scan_density",
    "sin",
    "top_density",
    "var",
    "verify_contact_form",
    "wedge",
    "wedge_power",
]
