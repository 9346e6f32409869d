"""Smoke tests for the pnpoly extension module."""
import json
from fractions import Fraction

import pytest

pnpoly = pytest.importorskip("pnpoly")


def test_modular_residues():
    assert pnpoly.mo(71, 253, 5) == 2
    assert pnpoly.mo_plus(16, 55, 23) == 12
    assert pnpoly.crt([(1, 2), (2, 3)]) == 5
    with pytest.raises(ValueError):
        pnpoly.mo(1, 6, 9)


def test_primality_and_ap():
    assert pnpoly.is_probable_prime(2**127 - 1)
    assert not pnpoly.is_probable_prime(561)
    assert pnpoly.next_prime_in_ap(1, 30, 100) == 151


def test_expansion_and_coefficients():
    assert pnpoly.expand([2, 3]) == [1, -1, 1]
    assert pnpoly.expand([2, 3, 5]) == [1, 0, -1, -1, 0, 0, 1, 1, 0, -1]
    assert pnpoly.degree([2, 3, 5]) == 9
    for method in ("closed", "recursive", "oracle"):
        assert pnpoly.coeff([5, 11, 23], 71, method=method) == 1
        assert pnpoly.coeff([5, 7, 11, 13], 233, method=method) == -2


def test_heights():
    assert pnpoly.height([5, 7, 11, 13], method="region") == (2, 233)
    assert pnpoly.height([5, 7, 11, 13], method="dense") == (2, 233)
    assert pnpoly.height([5, 11, 23])[0] == 1


def test_profile_and_tables():
    prof = pnpoly.residue_profile([5, 11, 23])
    assert prof["generic"]
    assert prof["dims"][0]["boundaries"] == [0, 1, 2, 3]
    assert prof["dims"][2]["boundaries"] == [0, 12, 14, 21]

    case, perm = pnpoly.classify3(5, 11, 23)
    assert case == 1 and perm == (0, 1, 2)

    table = pnpoly.table3([5, 11, 23])
    assert table[2 * 16 + 1 * 4 + 1] == 1
    assert pnpoly.zero_by_prop([5, 11, 23], 2, 0)


def test_truncation_and_z():
    assert pnpoly.coeff_via_truncation(23, [5, 11], 71) == 1
    assert pnpoly.z_value([5, 11], 1, [0]) == Fraction(4, 5)


def test_bounds():
    b = pnpoly.bounds(4)
    assert b["pointwise_upper"] == Fraction(4)
    assert b["central_binom_lower"] == 2
    assert pnpoly.bounds(3)["pointwise_upper"] == Fraction(3, 2)


def test_constructions_roundtrip():
    cert = pnpoly.construct_height1(3)
    ok, failures = pnpoly.verify_certificate(cert)
    assert ok, failures
    data = json.loads(cert)
    assert data["kind"] == "height1"
    assert len(data["primes"]) == 3
