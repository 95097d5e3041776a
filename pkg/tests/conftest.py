import hypothesis.strategies as st
from hypothesis import settings

from supertrop import EPS, ghost, tangible

settings.register_profile("supertrop", deadline=None, derandomize=True)
settings.load_profile("supertrop")

# Small bounds and coarse denominators on purpose: value collisions are where
# the tangible/ghost bookkeeping actually gets exercised.
group_values = st.one_of(
    st.integers(-6, 6),
    st.fractions(min_value=-4, max_value=4, max_denominator=4),
)

scalars = st.one_of(
    st.just(EPS),
    group_values.map(tangible),
    group_values.map(ghost),
)
