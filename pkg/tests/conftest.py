from __future__ import annotations

from hypothesis import HealthCheck, settings

# Exact bignum arithmetic has jittery per-example timing; keep runs
# reproducible and free of deadline flakes.
settings.register_profile(
    "exact",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")
