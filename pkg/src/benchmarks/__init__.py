"""
Benchmark problems and end-to-end runners
"""

from .specs import StaticBenchmarkSpec, DynamicBenchmarkSpec
from .static_problem import (
    dst1_matrix,
    build_static_system,
    static_load,
    sample_parameters,
    generate_static_data,
    run_static_training,
    run_static_benchmark,
    compare_distributions,
)
from .dynamic_problem import (
    HalfSineImpulse,
    build_dynamic_system,
    generate_dynamic_data,
    run_dynamic_training,
    run_dynamic_benchmark,
)
from .subspace_export import run_sample_subspace

__all__ = [
    'StaticBenchmarkSpec',
    'DynamicBenchmarkSpec',
    'dst1_matrix',
    'build_static_system',
    'static_load',
    'sample_parameters',
    'generate_static_data',
    'run_static_training',
    'run_static_benchmark',
    'compare_distributions',
    'HalfSineImpulse',
    'build_dynamic_system',
    'generate_dynamic_data',
    'run_dynamic_training',
    'run_dynamic_benchmark',
    'run_sample_subspace',
]
