from hypothesis import strategies as st

from cohh.coalgebra import cogenerators
from cohh.field import Field

fields = st.sampled_from([Field(0), Field(2), Field(3), Field(5)])
degree_sets = st.lists(st.integers(1, 4), min_size=1, max_size=3)


def cogen_space(degrees, D, prefix="g"):
    return cogenerators([(f"{prefix}{i}", d) for i, d in enumerate(degrees)], D)
