import hypothesis

# deterministic, time-limit-free property tests
hypothesis.settings.register_profile(
    "mildheat", deadline=None, max_examples=50, derandomize=True
)
hypothesis.settings.load_profile("mildheat")
