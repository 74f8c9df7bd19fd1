from __future__ import annotations

from pathlib import Path

import pytest

from csysmod import CSystem, builtin_monad
from csysmod.nominal import gat_signature, lambda_signature, mltt72_signature, sig_module, sig_monad

DATA = Path(__file__).parent / "data"


def pair(name):
    if name == "lambda":
        sig = lambda_signature()
    elif name == "mltt72":
        sig = mltt72_signature()
    elif name == "gat_uu":
        sig = gat_signature([("U", 0), ("U'", 0)])
    else:
        return builtin_monad(name)
    monad = sig_monad(sig)
    return monad, sig_module(sig, monad)


def csystem(name) -> CSystem:
    return CSystem(*pair(name))


@pytest.fixture
def option_cs():
    return csystem("option")


@pytest.fixture
def lambda_cs():
    return csystem("lambda")


@pytest.fixture
def uu_cs():
    return csystem("gat_uu")


# -- acceptance result lines ---------------------------------------------------------

ACCEPTANCE: dict[int, str] = {}


def record(number: int, ok: bool, title: str, detail: str) -> None:
    line = f"ACCEPTANCE {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
