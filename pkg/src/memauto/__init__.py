"""Memory automata over infinite alphabets: ν-automata, n-LaMA and HRA.

Exact membership with checkable run certificates, the LaMA→ν and HRA→LaMA
encodings, ν-automaton emptiness through a key/token abstraction, and the
3SAT / TQBF reductions.
"""

from memauto.automata import (
    AnyLetter,
    Hra,
    HraEps,
    HraObs,
    Lama,
    LamaObs,
    Mode,
    NuAutomaton,
    Read,
    Reset,
    Write,
    step_eps,
    step_obs_hra,
    step_obs_lama,
    step_obs_nu,
    successors,
    validate,
)
from memauto.core import (
    Configuration,
    Letter,
    MemoryContext,
    VariableId,
    apply_reset,
    format_word,
    fresh_letter,
    intern_letter,
    layer_injective,
    parse_word,
)
from memauto.corpus import double_exp_witness, example
from memauto.emptiness import canonicalize, decide_nonempty, decide_nonempty_randomized, fsm_successors
from memauto.encodings import hra_to_lama, is_well_formed, lama_to_nu, nu_to_lama, xi_rename, zeta_rename
from memauto.errors import DomainError, FormatError, LoadError, MemautoError, UsageError
from memauto.kernels import BACKEND
from memauto.membership import Run, check_certificate, decide_membership, enumerate_language
from memauto.reductions import (
    Cnf,
    Qbf,
    brute_force_qbf,
    brute_force_sat,
    parse_dimacs,
    parse_qdimacs,
    reduce_3sat,
    reduce_tqbf,
    tqbf_input_word,
)
from memauto.serialize import dump_automaton, load_automaton, to_dot

__version__ = "0.1.0"

__all__ = [
    "AnyLetter",
    "apply_reset",
    "BACKEND",
    "brute_force_qbf",
    "brute_force_sat",
    "canonicalize",
    "check_certificate",
    "Cnf",
    "Configuration",
    "decide_membership",
    "decide_nonempty",
    "decide_nonempty_randomized",
    "DomainError",
    "double_exp_witness",
    "dump_automaton",
    "enumerate_language",
    "example",
    "format_word",
    "FormatError",
    "fresh_letter",
    "fsm_successors",
    "Hra",
    "hra_to_lama",
    "HraEps",
    "HraObs",
    "intern_letter",
    "is_well_formed",
    "Lama",
    "lama_to_nu",
    "LamaObs",
    "layer_injective",
    "Letter",
    "load_automaton",
    "LoadError",
    "MemautoError",
    "MemoryContext",
    "Mode",
    "nu_to_lama",
    "NuAutomaton",
    "parse_dimacs",
    "parse_qdimacs",
    "parse_word",
    "Qbf",
    "Read",
    "reduce_3sat",
    "reduce_tqbf",
    "Reset",
    "Run",
    "step_eps",
    "step_obs_hra",
    "step_obs_lama",
    "step_obs_nu",
    "successors",
    "to_dot",
    "tqbf_input_word",
    "UsageError",
    "validate",
    "VariableId",
    "Write",
    "xi_rename",
    "zeta_rename",
]
