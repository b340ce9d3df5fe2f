from __future__ import annotations

from contextlib import contextmanager

from hypothesis import settings
from hypothesis import strategies as st

from qhankel.poly import SymPoly

settings.register_profile("qhankel", max_examples=60, deadline=None)
settings.load_profile("qhankel")

PARAM_SETS = [(1, 0), (1, 2), (2, 1), (3, 2)]

small_coeffs = st.one_of(
    st.integers(-5, 5),
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
)


@st.composite
def sympolys(draw, max_terms=4, q_range=(-3, 3), a_max=2, x_max=2, with_x=True):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = (draw(st.integers(*q_range)), draw(st.integers(0, a_max)),
             draw(st.integers(0, x_max)) if with_x else 0)
        terms[e] = terms.get(e, 0) + draw(small_coeffs)
    return SymPoly(terms)


rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)
nonzero_rationals = rationals.filter(lambda v: v != 0)


# -- acceptance summary -----------------------------------------------------

_RESULTS: dict[int, list[tuple[str, bool, str]]] = {}
TITLES: dict[int, str] = {}


@contextmanager
def criterion(number: int, title: str, case: str = ""):
    """Record the outcome of one acceptance case, re-raising any failure."""
    TITLES[number] = title
    try:
        yield
    except BaseException as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        _RESULTS.setdefault(number, []).append((case, False, msg[:160]))
        print(f"AC{number:02d} FAIL {title} {case}: {msg[:160]}")
        raise
    _RESULTS.setdefault(number, []).append((case, True, ""))
    print(f"AC{number:02d} PASS {title} {case}")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_RESULTS):
        cases = _RESULTS[number]
        ok = all(passed for _, passed, _ in cases)
        line = f"AC{number:02d} {'PASS' if ok else 'FAIL'}  {TITLES[number]}"
        if not ok:
            failed = [c for c, passed, _ in cases if not passed]
            line += f"  (failing: {', '.join(failed)})"
        tr.write_line(line)
