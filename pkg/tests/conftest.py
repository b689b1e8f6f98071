import pytest

from coxgrowth.coxeter import INF, CoxeterMatrix, polygon_matrix

_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, name): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, name = marker.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        verdict = "PASS" if rep.passed else "FAIL"
        prev = _RESULTS.get(number)
        if prev is None or prev[1] == "PASS":
            _RESULTS[number] = (name, verdict)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_RESULTS):
        name, verdict = _RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d} {name}: {verdict}")


def right_angled_two_inf() -> CoxeterMatrix:
    # rank 4, m12 = m23 = inf, everything else 2
    return CoxeterMatrix.from_pairs(4, {(0, 1): INF, (1, 2): INF})


def oracle_suite() -> list[tuple[str, CoxeterMatrix]]:
    suite = [
        ("tri(2,3,7)", polygon_matrix((2, 3, 7))),
        ("tri(2,4,5)", polygon_matrix((2, 4, 5))),
        ("tri(3,3,4)", polygon_matrix((3, 3, 4))),
        ("all-inf rank 3", polygon_matrix((INF, INF, INF))),
        ("right-angled rank 4", right_angled_two_inf()),
    ]
    suite += [(f"I2({m})", CoxeterMatrix.dihedral(m)) for m in range(3, 9)]
    suite.append(("I2(inf)", CoxeterMatrix.dihedral(INF)))
    return suite


def deformation_suite() -> list[tuple[str, CoxeterMatrix]]:
    """Matrices with inf entries and all finite labels below 6."""
    return [
        ("I2(inf)", CoxeterMatrix.dihedral(INF)),
        ("all-inf rank 3", polygon_matrix((INF, INF, INF))),
        ("poly(2,3,inf)", polygon_matrix((2, 3, INF))),
        ("poly(2,4,inf)", polygon_matrix((2, 4, INF))),
        ("poly(3,5,inf)", polygon_matrix((3, 5, INF))),
        ("right-angled rank 4", right_angled_two_inf()),
        ("square(2,3,2,3)", polygon_matrix((2, 3, 2, 3))),
    ]


def prism(n_edge=4) -> CoxeterMatrix:
    """Triangular prism: top/bottom faces 0, 1 (parallel), sides 2, 3, 4; edge 2-3 is contractible."""
    T, B, S1, S2, S3 = range(5)
    return CoxeterMatrix.from_pairs(5, {(T, B): INF, (T, S3): 3, (S1, S2): n_edge, (S1, S3): 3, (S2, S3): 3})
