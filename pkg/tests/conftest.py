import numpy as np
import pytest

from junta_lab.linalg import Unitary

_CRITERIA = {}
_DETAILS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion tag")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    num, title = getattr(report, "criterion", (None, None))
    if num is None:
        return
    ok, _ = _CRITERIA.get(num, (True, title))
    _CRITERIA[num] = (ok and report.outcome == "passed", title)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        rep.criterion = tuple(mark.args)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        ok, title = _CRITERIA[num]
        line = f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {title}"
        for d in _DETAILS.get(num, []):
            line += f"\n               {d}"
        terminalreporter.write_line(line)


@pytest.fixture
def detail(request):
    """Attach a measurement line to the criterion summary of this test."""
    mark = request.node.get_closest_marker("criterion")
    num = mark.args[0]

    def add(text):
        _DETAILS.setdefault(num, []).append(text)

    return add


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# small fixed unitaries shared by several modules
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.diag([1, -1]).astype(complex)
I2 = np.eye(2, dtype=complex)
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)


@pytest.fixture
def gates():
    return {k: Unitary(v) for k, v in dict(H=H, X=X, Y=Y, Z=Z, I=I2, CNOT=CNOT, SWAP=SWAP).items()}
