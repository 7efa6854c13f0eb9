import re


def pytest_runtest_logreport(report):
    # one visible fail line per acceptance criterion; pass lines are
    # printed by the tests themselves (run with -s to see them)
    if report.when == "call" and report.failed:
        match = re.search(r"test_c(\d\d)_", report.nodeid)
        if match:
            print("\nACCEPTANCE %d FAIL: %s" % (int(match.group(1)), report.nodeid))
