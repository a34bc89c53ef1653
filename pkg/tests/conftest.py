from hypothesis import settings

# numba compiles on first call, so per-example deadlines are meaningless here
settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")
