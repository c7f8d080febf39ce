from .presets import PRESETS, Preset, preset, preset_mln, preset_text
from .oracle import (
    conditioned_brute, evidence_wfomc, exact_distribution, histogram, mln_exact_distribution,
)
from .statistics import (
    EmpiricalDistribution, KsResult, count_vector, dkw_bound, indexed, ks_test, loglog_slope,
    model_index,
)
from .report import (
    distribution_frame, ks_frame, model_distribution_frame, scaling_frame, workflow_frame,
)

__all__ = [
    'PRESETS', 'Preset', 'preset', 'preset_mln', 'preset_text',
    'conditioned_brute', 'evidence_wfomc', 'exact_distribution', 'histogram',
    'mln_exact_distribution', 'EmpiricalDistribution', 'KsResult', 'count_vector',
    'dkw_bound', 'indexed', 'ks_test', 'loglog_slope', 'model_index',
    'distribution_frame', 'ks_frame', 'model_distribution_frame', 'scaling_frame',
    'workflow_frame',
]
