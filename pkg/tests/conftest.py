from fractions import Fraction

from hypothesis import settings, strategies as st

from rotorlab.exact_arith import EisensteinRational

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

small_fraction = st.builds(
    Fraction,
    st.integers(min_value=-12, max_value=12),
    st.integers(min_value=1, max_value=9),
)
nonzero_fraction = small_fraction.filter(bool)
eis = st.builds(EisensteinRational, small_fraction, small_fraction)
nonzero_eis = eis.filter(bool)

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(number: int, passed: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
    print(line)
    ACCEPTANCE[number] = (passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
