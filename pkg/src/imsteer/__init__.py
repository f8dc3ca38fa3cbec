"""Imaginarity steering toolkit for two-qubit states.

Core entry points:

- :mod:`imsteer.linalg` - small-matrix complex algebra
- :mod:`imsteer.states` - state families, Bloch parameterization, samplers
- :mod:`imsteer.imaginarity` - bases and imaginarity/coherence quantifiers
- :mod:`imsteer.steering` - conditional states and all steering criteria
- :mod:`imsteer.witness` - the 16 witness operators and their decompositions
- :mod:`imsteer.monogamy` - tripartite reductions and the 2 sqrt(2) trade-off
- :mod:`imsteer.cli` - the ``imsteer`` command
"""

from .imaginarity import (QubitBasis, complementarity_sum, coherence_measure,
                          imaginarity_measure, mub_triad,
                          robustness_closed_form, robustness_of_imaginarity,
                          von_neumann_entropy)
from .linalg import (hermitian_eigenvalues, partial_trace, psd_sqrt,
                     tensor_product, trace_norm)
from .monogamy import (MONOGAMY_BOUND, monogamy_scan, monogamy_sum,
                       reduced_pair, tripartite_conditional_imaginarity)
from .states import (BlochTwoQubit, TripartiteParams, XStateParams,
                     from_bloch, mems, qubit_from_bloch, sample_state,
                     sample_states, singlet, to_bloch, tripartite_state,
                     validate, werner, x_state)
from .steering import (CFFW_BOUND, ISI_BOUND, NAQC_BOUNDS, NAQI_BOUNDS,
                       ProjectiveMeasurement, UnsharpMeasurement, cffw_value,
                       condition_on, condition_on_unsharp, isi_closed,
                       isi_operational, isi_unsharp, isi_violated, naqc_value,
                       naqi_value, threshold_scan)
from .witness import (WitnessOperator, all_witnesses, build_witness,
                      projector_decomposition, select_witness,
                      witness_expectation)

__version__ = "0.1.0"
