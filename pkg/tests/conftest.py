from hypothesis import HealthCheck, settings

# wall-clock deadlines are flaky on shared CI hosts; correctness only
settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")
