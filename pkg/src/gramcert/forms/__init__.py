"""Homogeneous forms, sums of squares, and the named examples."""

from .form import Form, SosExpression, default_varnames, eval_at, even_substitute, sos_expand
from .named import (
    build_named,
    cone_quartic,
    eta0_field,
    f_rho,
    noncoercive_quartic,
    noncoercive_sextic,
    q_eta,
    q_form,
    s_eta,
    s_form,
    sosquartic,
)
from .parse import FormSyntaxError, parse_form, parse_form_lines, read_form_file

__all__ = [
    "Form",
    "FormSyntaxError",
    "SosExpression",
    "build_named",
    "cone_quartic",
    "default_varnames",
    "eta0_field",
    "eval_at",
    "even_substitute",
    "f_rho",
    "noncoercive_quartic",
    "noncoercive_sextic",
    "parse_form",
    "parse_form_lines",
    "q_eta",
    "q_form",
    "read_form_file",
    "s_eta",
    "s_form",
    "sos_expand",
    "sosquartic",
]
