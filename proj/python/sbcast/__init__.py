# Copyright 2026 The sbcast Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Selective-broadcast pulse compiler and randomized-benchmarking simulator.

Times are in ns. Clifford ids run 1..24 in decomposition-table order.
"""

import json

from ._core import (
    QubitModel,
    clifford_of_pulses,
    compose,
    exchange_swap,
    extract_populations,
    fit_exp_offset,
    fit_leakage,
    five_primitive_mask,
    inverse,
    jackknife_fidelity,
    leakage_model,
    log_spaced_lengths,
    mean_np_exact,
    mean_np_sampled,
    minimal_decomposition,
    pulse_count,
    pulse_names,
    run_rb,
    simulate_allxy,
    simulate_amp_calibration,
    t1_limit_fidelity,
)
from ._core import compile_json as _compile_json

__version__ = "0.1.0"


def compile_schedule(combo, scheme="compiled", round=0, four_pulse_pass="complete"):
    """Schedule for one Clifford round as a dict in the exported JSON layout."""
    return json.loads(_compile_json(list(combo), scheme, round, four_pulse_pass))


__all__ = [
    "QubitModel",
    "clifford_of_pulses",
    "compile_schedule",
    "compose",
    "exchange_swap",
    "extract_populations",
    "fit_exp_offset",
    "fit_leakage",
    "five_primitive_mask",
    "inverse",
    "jackknife_fidelity",
    "leakage_model",
    "log_spaced_lengths",
    "mean_np_exact",
    "mean_np_sampled",
    "minimal_decomposition",
    "pulse_count",
    "pulse_names",
    "run_rb",
    "simulate_allxy",
    "simulate_amp_calibration",
    "t1_limit_fidelity",
]
