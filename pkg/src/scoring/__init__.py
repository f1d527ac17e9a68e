"""
Merge strategies and scores.

Named presets live in ``src.scoring.registry``; import it directly, it
depends on the learning engine.
"""

from src.scoring.score_calculation import (
    ScoreCalculation,
    conjoin,
    edsm_score,
    local_to_global_compatibility,
    score_value,
)
from src.scoring.alergia import (
    IOAlergia,
    IOAlergiaEDSMOnPartition,
    IOAlergiaOnPartition,
    IOAlergiaWithEDSM,
    IOAlergiaWithParity,
    hoeffding_compat,
    ioalergia_compat,
    parity_compat,
)
from src.scoring.noisy import (
    NoisyDeterministicScore,
    binomial_tail,
    dominant_output_postprocess,
    get_main_output,
    noisy_nd_score,
)

__all__ = [
    "ScoreCalculation",
    "conjoin",
    "edsm_score",
    "local_to_global_compatibility",
    "score_value",
    "IOAlergia",
    "IOAlergiaEDSMOnPartition",
    "IOAlergiaOnPartition",
    "IOAlergiaWithEDSM",
    "IOAlergiaWithParity",
    "hoeffding_compat",
    "ioalergia_compat",
    "parity_compat",
    "NoisyDeterministicScore",
    "binomial_tail",
    "dominant_output_postprocess",
    "get_main_output",
    "noisy_nd_score",
]
