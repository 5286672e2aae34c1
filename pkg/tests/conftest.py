import pytest

# acceptance id -> list of (nodeid, outcome, note)
_ACCEPTANCE: dict = {}

LABELS = {
    "AC-01": "Fueter monomials are hyperholomorphic (exact, < 60 s)",
    "AC-02": "commutator obstruction for zeta_j zeta_k; symmetrized pair is hyperholomorphic",
    "AC-03": "center dependence of the Cauchy product (exact)",
    "AC-04": "Gleason residual vanishes on 50 quaternion polynomials (exact)",
    "AC-05": "realization calculus: two expansion routes, inverse/product/sum, from_polynomial (< 120 s)",
    "AC-06": "Drury-Arveson adjoint pairing, contraction gap, evaluation identity (exact)",
    "AC-07": "Fock adjoint pairing on monomials and 20 random pairs (exact)",
    "AC-08": "reproducing property for DA and Fock kernels (exact)",
    "AC-09": "Blaschke factor: B_0 = zeta, B_xi(xi) small, Gram identity within 1e-6 (< 60 s)",
    "AC-10": "Frechet remainder decays linearly; non-hyperholomorphic witness flagged",
    "AC-11": "suite --seed 7 twice gives identical JSON",
}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("acceptance")
        if m:
            _ACCEPTANCE.setdefault(m.args[0], [])


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(id): acceptance criterion id")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("acceptance")
    if not m:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        note = ""
        if hasattr(rep, "wasxfail"):
            state = "deviation"
            note = rep.wasxfail
        else:
            state = rep.outcome
        extra = getattr(item, "acceptance_note", "")
        _ACCEPTANCE.setdefault(m.args[0], []).append((item.name, state, extra or note))


def pytest_terminal_summary(terminalreporter):
    if not any(_ACCEPTANCE.values()):
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for cid in sorted(_ACCEPTANCE):
        runs = _ACCEPTANCE[cid]
        if not runs:
            continue
        states = {s for _, s, _ in runs}
        if "failed" in states:
            verdict = "FAIL"
        elif "deviation" in states:
            verdict = "PASS*"
        elif states == {"passed"}:
            verdict = "PASS"
        else:
            verdict = "SKIP"
        notes = "; ".join(n for _, _, n in runs if n)
        line = f"{verdict:<6}{cid}  {LABELS.get(cid, '')}"
        if notes:
            line += f"  [{notes}]"
        tr.write_line(line)
    if any(s == "deviation" for runs in _ACCEPTANCE.values() for _, s, _ in runs):
        tr.write_line("PASS* = corrected statement verified exactly; the literal form is "
                      "refuted by a strict expected-failure test (see README)")
