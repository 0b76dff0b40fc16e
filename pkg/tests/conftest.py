from hypothesis import settings

# Exact rational arithmetic makes example timings uneven.
settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")
