import os

from hypothesis import HealthCheck, settings

# Derandomized so repeated runs of the suite see the same examples.
settings.register_profile("repo", derandomize=True, deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))
