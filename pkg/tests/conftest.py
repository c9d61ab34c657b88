"""Prints one pass/fail summary line per acceptance criterion."""

ACCEPTANCE_CRITERIA = {
    "test_criterion_1_rank_varieties": (1, "rank varieties"),
    "test_criterion_2_essential_variety": (2, "essential variety"),
    "test_criterion_3_orthogonal_group": (3, "orthogonal group and Procrustes"),
    "test_criterion_4_sl_pm": (4, "special linear group"),
    "test_criterion_5_fermat": (5, "Fermat hypersurfaces"),
    "test_criterion_6_transfer_identity": (6, "transfer identity across the catalog"),
    "test_criterion_7_algebraic_svd": (7, "algebraic SVD"),
    "test_criterion_8_quotient_invariance": (8, "quotient-map invariance"),
    "test_criterion_9_solver_oracle": (9, "solver matches brute-force oracle"),
}


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome, verdict in (("passed", "PASS"), ("failed", "FAIL"),
                             ("error", "FAIL"), ("skipped", "SKIP")):
        for rep in terminalreporter.stats.get(outcome, []):
            name = rep.location[2]
            if name in ACCEPTANCE_CRITERIA and rep.when in ("call", "setup"):
                number, title = ACCEPTANCE_CRITERIA[name]
                lines.append((number, f"criterion {number} ({title}): {verdict}"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
