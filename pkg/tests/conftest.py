import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo",
    max_examples=int(os.environ.get("PISO_HYPOTHESIS_EXAMPLES", "40")),
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repo")
