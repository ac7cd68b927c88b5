"""Fourier spectra, noise sensitivity, and junta approximation of halfspaces.

The package is organized bottom-up:

- :mod:`hsf.fncore`: dense truth tables and the fast transform;
- :mod:`hsf.ltf`: canonical threshold functions, regularity, critical index;
- :mod:`hsf.noise`: exact / brute-force / Monte-Carlo noise sensitivity and
  the Gaussian comparison toolkit;
- :mod:`hsf.restriction`: restrictions, bias profiles, aggregation identities;
- :mod:`hsf.junta`: the junta extraction engine and its verdicts;
- :mod:`hsf.cli`: the ``hsf`` command with analyze / junta / sweep /
  gaussian / checks subcommands.
"""

from .errors import (
    CapExceededError,
    DegenerateLtfError,
    HsfError,
    InvalidInputError,
)
from .fncore import (
    BooleanFunction,
    FourierSpectrum,
    distance,
    from_text,
    from_values,
    is_junta_on,
    load_table,
    mean,
    random_function,
    save_table,
    synthesize,
    to_text,
    wht,
)
from .junta import (
    Diagnostics,
    HeadProjection,
    JuntaCase,
    JuntaReport,
    TheoremConfig,
    Verdict,
    best_junta_on,
    extract_junta,
    head_projection,
    junta_budget,
    premise_bound,
    theorem_verify,
)
from .ltf import (
    INFINITE_INDEX,
    HeadSplit,
    Ltf,
    RegularityProfile,
    canonicalize,
    critical_index,
    evaluate,
    head_split,
    linear_form,
    linear_form_table,
    load_ltf_file,
    parse_theta_law,
    random_ltf,
    regularity_profile,
    save_ltf_file,
    truth_table,
)
from .noise import (
    ConstantBoundCheck,
    McEstimate,
    NoiseParams,
    QuadrantComparison,
    TailRatioBand,
    bivariate_rectangle,
    boolean_pair_quadrant_mc,
    constant_bound_check,
    degree_weights,
    gaussian_cdf,
    gaussian_disagreement,
    gaussian_ns_bound,
    gaussian_ns_mc,
    gaussian_tail,
    hoeffding_radius,
    ns_bruteforce,
    ns_exact,
    ns_mc,
    regular_cdf_gap,
    tail_ratio,
    tail_ratio_check,
)
from .restriction import (
    BiasProfile,
    NsAggregation,
    Restriction,
    RestrictionEnergy,
    ThresholdCorollary,
    bias_profile,
    embed_junta,
    ns_aggregation_check,
    restrict,
    restriction_energy_identity,
)

__version__ = "0.1.0"

__all__ = [
    "BiasProfile",
    "BooleanFunction",
    "CapExceededError",
    "ConstantBoundCheck",
    "DegenerateLtfError",
    "Diagnostics",
    "FourierSpectrum",
    "HeadProjection",
    "HeadSplit",
    "HsfError",
    "INFINITE_INDEX",
    "InvalidInputError",
    "JuntaCase",
    "JuntaReport",
    "Ltf",
    "McEstimate",
    "NoiseParams",
    "NsAggregation",
    "QuadrantComparison",
    "RegularityProfile",
    "Restriction",
    "RestrictionEnergy",
    "TailRatioBand",
    "TheoremConfig",
    "ThresholdCorollary",
    "Verdict",
    "best_junta_on",
    "bias_profile",
    "bivariate_rectangle",
    "boolean_pair_quadrant_mc",
    "canonicalize",
    "constant_bound_check",
    "critical_index",
    "degree_weights",
    "distance",
    "embed_junta",
    "evaluate",
    "extract_junta",
    "from_text",
    "from_values",
    "gaussian_cdf",
    "gaussian_disagreement",
    "gaussian_ns_bound",
    "gaussian_ns_mc",
    "gaussian_tail",
    "head_projection",
    "head_split",
    "hoeffding_radius",
    "is_junta_on",
    "junta_budget",
    "linear_form",
    "linear_form_table",
    "load_ltf_file",
    "load_table",
    "mean",
    "ns_aggregation_check",
    "ns_bruteforce",
    "ns_exact",
    "ns_mc",
    "parse_theta_law",
    "premise_bound",
    "random_function",
    "random_ltf",
    "regular_cdf_gap",
    "regularity_profile",
    "restrict",
    "restriction_energy_identity",
    "save_ltf_file",
    "save_table",
    "synthesize",
    "tail_ratio",
    "tail_ratio_check",
    "theorem_verify",
    "to_text",
    "truth_table",
    "wht",
]
