"""Gamow states of the delta-shell potential and their decay observables."""

from .branching import (BranchingReport, ChannelSpec, branching_fractions,
                        channel_matrix_element, expected_event_counts, partial_decay_constant,
                        partial_width)
from .errors import (DegenerateChannelError, DegenerateRootError, DomainError, GamowError,
                     NumericalFailure, PoleProximityError, QuadratureError, RootCountError)
from .model import (ShellModel, free_eigenfunction, gamow_wavefunction, jost_coefficients,
                    matrix_element, s_matrix)
from .numerics import (QuadratureResult, QuadratureSpec, integrate_halfline,
                       integrate_halfline_k, substitute_wavenumber)
from .poles import (ResonancePole, SearchRegion, find_poles, locate_poles, residue_at_pole,
                    winding_number, zeldovich_norm)
from .widths import (LineshapeSample, WidthReport, decay_density_at_time,
                     differential_decay_constant, differential_width, gamow_energy_norm,
                     golden_rule_width, lineshape, sharp_width_approximation,
                     total_decay_constant, total_width, width_report)

__version__ = "0.1.0"
