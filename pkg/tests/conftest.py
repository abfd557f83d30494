from hypothesis import strategies as st

from lexalg.order_calculus import (
    Constant,
    Eta,
    Explicit,
    Finite,
    OmegaMinus,
    OmegaPlus,
    Periodic,
    WeightedOrder,
    Zeta,
    make_sum,
)

sizes = st.integers(min_value=2, max_value=4)

primitives = st.one_of(
    st.builds(Finite, st.integers(min_value=1, max_value=3)),
    st.just(OmegaPlus()),
    st.just(OmegaMinus()),
    st.just(Zeta()),
    st.just(Eta()),
)

exprs = st.lists(primitives, min_size=1, max_size=5).map(make_sum)


@st.composite
def weighted_orders(draw, max_terms=4, periodic=True):
    prims = draw(st.lists(primitives, min_size=1, max_size=max_terms))
    weights = []
    for p in prims:
        if isinstance(p, Finite):
            weights.append(Explicit(tuple(draw(st.lists(sizes, min_size=p.k, max_size=p.k)))))
        elif isinstance(p, Eta) or not periodic or draw(st.booleans()):
            weights.append(Constant(draw(sizes)))
        else:
            weights.append(Periodic(tuple(draw(st.lists(sizes, min_size=1, max_size=3)))))
    return WeightedOrder(make_sum(prims), tuple(weights))
