"""Granger causality tests robust to delayed latent common inputs."""

from ._core import (
    CausalityTestResult,
    DegenerateError,
    DomainError,
    Error,
    InvalidArgumentError,
    LagConfig,
    MulticollinearityError,
    NoiseSpec,
    ReparameterizedNoise,
    SampleSizeError,
    SimModelSpec,
    StationarityError,
    StepwiseDecision,
    Term,
    TimeSeriesPair,
    TrailRecord,
    __version__,
    chi2_cdf,
    f_cdf,
    f_quantile,
    generate,
    noise_corr_test,
    normal_gc_test,
    partial_gc_measure,
    preset,
    proposed_gc_test,
    reparameterize,
    stepwise_decide,
    stepwise_decide_normal,
)

__all__ = [
    "CausalityTestResult",
    "DegenerateError",
    "DomainError",
    "Error",
    "InvalidArgumentError",
    "LagConfig",
    "MulticollinearityError",
    "NoiseSpec",
    "ReparameterizedNoise",
    "SampleSizeError",
    "SimModelSpec",
    "StationarityError",
    "StepwiseDecision",
    "Term",
    "TimeSeriesPair",
    "TrailRecord",
    "__version__",
    "chi2_cdf",
    "f_cdf",
    "f_quantile",
    "generate",
    "noise_corr_test",
    "normal_gc_test",
    "partial_gc_measure",
    "preset",
    "proposed_gc_test",
    "reparameterize",
    "stepwise_decide",
    "stepwise_decide_normal",
]
