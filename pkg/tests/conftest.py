import sys
from pathlib import Path

from gmpy2 import mpq
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from plsc.diagram import PersistenceDiagram  # noqa: E402

DENOMS = (1, 2, 3, 4, 6, 8)


@st.composite
def rationals(draw, lo=-50, hi=50):
    num = draw(st.integers(lo * 24, hi * 24))
    den = draw(st.sampled_from(DENOMS))
    return mpq(num, den)


@st.composite
def diagram_points(draw):
    birth = draw(rationals())
    width_num = draw(st.integers(1, 96))
    width_den = draw(st.sampled_from(DENOMS))
    return (birth, birth + mpq(width_num, width_den))


@st.composite
def diagrams(draw, min_points=0, max_points=8):
    pts = draw(st.lists(diagram_points(), min_size=min_points, max_size=max_points))
    return PersistenceDiagram(tuple(pts))
