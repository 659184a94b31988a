"""Concrete modular forms: eta-quotients, theta tables, Eisenstein series, example bases."""

from .eisenstein import (E_classical, E_normalized, L_neg, bernoulli_Bk, bernoulli_poly_at,
                         delta, eisenstein_pair, gen_bernoulli)
from .eta import (EtaQuotient, LiteralError, cusp_order, denominator_D, eta_multiplier_nu,
                  eta_quotient_series, eta_series, ghn_meta, parse_eta_literal)
from .examples import (EXAMPLES, ExampleData, example_basis, example_eigenforms, example_form,
                       fixtures_examples)
from .meta import FormMeta, UncoveredTransition, uv_meta_transition
from .theta import (THETA_EVEN, THETA_ODD, THETA_TABLE, ThetaEntry, theta_eta_side,
                    theta_series_build)

__all__ = [
    "E_classical", "E_normalized", "EXAMPLES", "EtaQuotient", "ExampleData", "FormMeta",
    "L_neg", "LiteralError", "THETA_EVEN", "THETA_ODD", "THETA_TABLE", "ThetaEntry",
    "UncoveredTransition", "bernoulli_Bk", "bernoulli_poly_at", "cusp_order", "delta",
    "denominator_D", "eisenstein_pair", "eta_multiplier_nu", "eta_quotient_series",
    "eta_series", "example_basis", "example_eigenforms", "example_form", "fixtures_examples",
    "gen_bernoulli", "ghn_meta", "parse_eta_literal", "theta_eta_side", "theta_series_build",
    "uv_meta_transition",
]
